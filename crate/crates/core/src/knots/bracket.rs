use rayon::prelude::*;

use super::{KnotDiagram, KnotError, LaurentPolynomial};

/// Largest diagram the state sum accepts.
pub const MAX_STATE_CROSSINGS: usize = 24;

/// Below this many crossings the state sum runs on one thread.
const PARALLEL_THRESHOLD: usize = 14;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Loop count of the smoothing selected by `state` (bit set = B-smoothing).
fn loops_of_state(pd: &[[usize; 4]], labels: usize, state: u32, parent: &mut Vec<usize>) -> usize {
    parent.clear();
    parent.extend(0..labels);
    let mut loops = labels;
    for (c, &[i, j, k, l]) in pd.iter().enumerate() {
        let pairs = if state >> c & 1 == 0 { [(i, j), (k, l)] } else { [(i, l), (j, k)] };
        for (a, b) in pairs {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra] = rb;
                loops -= 1;
            }
        }
    }
    loops
}

/// Histogram `counts[b][loops]` over a range of states, `b` the number of
/// B-smoothings.
fn tally(pd: &[[usize; 4]], labels: usize, states: std::ops::Range<u32>) -> Vec<Vec<u64>> {
    let c = pd.len();
    let mut counts = vec![vec![0u64; labels + 2]; c + 1];
    let mut parent = Vec::with_capacity(labels);
    for s in states {
        let loops = loops_of_state(pd, labels, s, &mut parent);
        counts[s.count_ones() as usize][loops] += 1;
    }
    counts
}

/// Kauffman bracket by the state sum
/// `Σ_s A^{a(s) − b(s)} (−A² − A⁻²)^{loops(s) − 1}`.
///
/// At a crossing `X[i, j, k, l]` the A-smoothing joins `i–j` and `k–l`,
/// the B-smoothing joins `i–l` and `j–k`.
pub fn kauffman_bracket(d: &KnotDiagram) -> Result<LaurentPolynomial, KnotError> {
    let c = d.crossing_count();
    if c > MAX_STATE_CROSSINGS {
        return Err(KnotError::StateExplosion { crossings: c });
    }
    d.validate()?;
    let (pd, labels) = d.dense_pd();
    let total = 1u32 << c;
    let counts = if c >= PARALLEL_THRESHOLD {
        let chunk = 1u32 << (c - 6);
        (0..64u32)
            .into_par_iter()
            .map(|k| tally(&pd, labels, k * chunk..(k + 1) * chunk))
            .reduce(
                || vec![vec![0u64; labels + 2]; c + 1],
                |mut acc, part| {
                    for (row, prow) in acc.iter_mut().zip(part) {
                        for (x, y) in row.iter_mut().zip(prow) {
                            *x += y;
                        }
                    }
                    acc
                },
            )
    } else {
        tally(&pd, labels, 0..total)
    };

    let delta = LaurentPolynomial::from_terms([(2, -1), (-2, -1)]);
    let mut out = LaurentPolynomial::zero();
    for (b, row) in counts.iter().enumerate() {
        for (loops, &n) in row.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let loops = loops + d.free_loops;
            let a = (c - b) as i32 - b as i32;
            let term = &LaurentPolynomial::monomial(n as i64, a) * &delta.pow(loops as u32 - 1);
            out = &out + &term;
        }
    }
    if c == 0 {
        // No crossings: the diagram is `free_loops` disjoint circles.
        out = delta.pow(d.free_loops.max(1) as u32 - 1);
    }
    Ok(out)
}

/// Writhe-normalized bracket `(−A³)^{−w} ⟨D⟩`; substituting `A = t^{−1/4}`
/// gives the Jones polynomial.
pub fn jones(d: &KnotDiagram) -> Result<LaurentPolynomial, KnotError> {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let factor = LaurentPolynomial::monomial(sign, (-3 * w) as i32);
    Ok(&factor * &kauffman_bracket(d)?)
}

/// `|V(−1)|`, the value of the normalized bracket at `A = e^{iπ/4}`.
pub fn determinant(d: &KnotDiagram) -> Result<u64, KnotError> {
    Ok(determinant_of_jones(&jones(d)?))
}

pub(crate) fn determinant_of_jones(j: &LaurentPolynomial) -> u64 {
    let (re, im) = j.eval_eighth_root();
    re.hypot(im).round() as u64
}
