use std::collections::HashMap;

use rayon::prelude::*;

use super::system::extent;
use super::{ArrangementError, SphereSystem};
use crate::geom::{Point3, SphereOrPlane};

/// Smallest grid accepted by [`voxel_region_count`].
pub const MIN_RESOLUTION: usize = 32;
/// Resolution beyond which [`voxel_region_count_stable`] gives up.
pub const MAX_RESOLUTION: usize = 1024;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new() -> Self {
        Self { parent: Vec::new() }
    }

    fn make(&mut self) -> u32 {
        self.parent.push(self.parent.len() as u32);
        self.parent.len() as u32 - 1
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Counts complementary regions by labeling a voxel grid.
///
/// The box surrounds every sphere (and the plane feet) with a margin of
/// the smallest sphere diameter; `resolution` voxels span its longest
/// side. Each voxel center gets the side of every surface it lies on, and
/// 6-neighbors with equal sides are joined. A component counts only if it
/// holds a voxel farther than one voxel diagonal from every surface, which
/// discards slivers cut off at grid scale where surfaces meet. Voxels on
/// the box boundary with equal sides are joined as well, since they
/// connect outside the box.
pub fn voxel_region_count(sys: &SphereSystem, resolution: usize) -> Result<usize, ArrangementError> {
    if resolution < MIN_RESOLUTION {
        return Err(ArrangementError::InvalidResolution(resolution));
    }
    let (lo, hi) = extent(sys);
    let margin = sys
        .surfaces
        .iter()
        .filter_map(|s| match s {
            SphereOrPlane::Sphere { radius, .. } => Some(2.0 * radius),
            SphereOrPlane::Plane { .. } => None,
        })
        .fold(f64::INFINITY, f64::min);
    let margin = if margin.is_finite() { margin } else { (hi - lo).max_abs().max(1.0) };
    let lo = lo - Point3::new(margin, margin, margin);
    let hi = hi + Point3::new(margin, margin, margin);
    let size = hi - lo;
    let h = size.max_abs() / resolution as f64;
    let [nx, ny, nz] = [size.x, size.y, size.z].map(|s| ((s / h).ceil() as usize).max(1));
    let reach = h * 3f64.sqrt();
    let words = sys.len().div_ceil(64).max(1);

    let center =
        |i: usize, j: usize, k: usize| lo + Point3::new((i as f64 + 0.5) * h, (j as f64 + 0.5) * h, (k as f64 + 0.5) * h);
    // Side bits of every surface, plus whether the voxel is clear of all.
    let classify = |x: Point3, sig: &mut [u64]| {
        sig.fill(0);
        let mut clear = true;
        for (n, s) in sys.surfaces.iter().enumerate() {
            let d = s.signed_distance(x);
            if d > 0.0 {
                sig[n / 64] |= 1 << (n % 64);
            }
            clear &= d.abs() > reach;
        }
        clear
    };

    let area = nx * ny;
    let mut uf = UnionFind::new();
    let mut clear_node: Vec<bool> = Vec::new();
    let mut boundary: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut sig = vec![0u64; area * words];
    let mut prev_sig = vec![0u64; area * words];
    let mut clear = vec![false; area];
    let mut labels = vec![0u32; area];
    let mut prev = vec![0u32; area];
    let mut slice_uf = UnionFind::new();
    let mut global_of_root = vec![u32::MAX; area];
    for k in 0..nz {
        sig.par_chunks_mut(words).zip(clear.par_iter_mut()).enumerate().for_each(|(idx, (s, c))| {
            *c = classify(center(idx % nx, idx / nx, k), s);
        });
        slice_uf.parent.clear();
        for idx in 0..area {
            slice_uf.make();
            let (i, j) = (idx % nx, idx / nx);
            if i > 0 && at(&sig, words, idx - 1) == at(&sig, words, idx) {
                slice_uf.union(idx as u32, idx as u32 - 1);
            }
            if j > 0 && at(&sig, words, idx - nx) == at(&sig, words, idx) {
                slice_uf.union(idx as u32, (idx - nx) as u32);
            }
        }
        global_of_root.fill(u32::MAX);
        for idx in 0..area {
            let root = slice_uf.find(idx as u32) as usize;
            if global_of_root[root] == u32::MAX {
                clear_node.push(false);
                global_of_root[root] = uf.make();
            }
            let g = global_of_root[root];
            labels[idx] = g;
            clear_node[g as usize] |= clear[idx];
            if k > 0 && at(&prev_sig, words, idx) == at(&sig, words, idx) {
                uf.union(g, prev[idx]);
            }
            let (i, j) = (idx % nx, idx / nx);
            if i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 || k == nz - 1 {
                let key = at(&sig, words, idx);
                match boundary.get(key) {
                    Some(&b) => uf.union(g, b),
                    None => {
                        boundary.insert(key.to_vec(), g);
                    }
                }
            }
        }
        std::mem::swap(&mut prev, &mut labels);
        std::mem::swap(&mut prev_sig, &mut sig);
    }
    let mut counted = vec![false; clear_node.len()];
    for (node, &clear) in clear_node.iter().enumerate() {
        if clear {
            counted[uf.find(node as u32) as usize] = true;
        }
    }
    Ok(counted.iter().filter(|&&c| c).count())
}

fn at(v: &[u64], words: usize, idx: usize) -> &[u64] {
    &v[idx * words..(idx + 1) * words]
}

/// Result of [`voxel_region_count_stable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoxelCount {
    pub regions: usize,
    pub resolution: usize,
    /// Counts at each resolution tried, starting from the first.
    pub history: Vec<(usize, usize)>,
}

/// Doubles the resolution from `start` until two successive counts agree.
pub fn voxel_region_count_stable(
    sys: &SphereSystem,
    start: usize,
    max_resolution: usize,
) -> Result<VoxelCount, ArrangementError> {
    let mut history = Vec::new();
    let mut res = start.max(MIN_RESOLUTION);
    while res <= max_resolution {
        let count = voxel_region_count(sys, res)?;
        if let Some(&(_, last)) = history.last() {
            if last == count {
                history.push((res, count));
                return Ok(VoxelCount { regions: count, resolution: res, history });
            }
        }
        history.push((res, count));
        res *= 2;
    }
    Err(ArrangementError::Unresolved { history })
}
