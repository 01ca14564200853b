use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

/// A simplicial complex of dimension at most 2 on vertices `0..vertex_count`.
/// Simplices are stored with sorted vertex lists and the set is closed
/// under taking faces.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderComplex {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl OrderComplex {
    /// Builds the closure of the given simplices.
    pub fn new(vertex_count: usize, edges: &[[usize; 2]], triangles: &[[usize; 3]]) -> Self {
        let mut e: BTreeSet<[usize; 2]> = BTreeSet::new();
        let mut t: BTreeSet<[usize; 3]> = BTreeSet::new();
        let mut add_edge = |a: usize, b: usize| {
            assert!(a != b && a < vertex_count && b < vertex_count, "bad edge {a}-{b}");
            e.insert([a.min(b), a.max(b)]);
        };
        for &[a, b] in edges {
            add_edge(a, b);
        }
        for tri in triangles {
            let mut s = *tri;
            s.sort_unstable();
            assert!(s[0] != s[1] && s[1] != s[2], "bad triangle {tri:?}");
            add_edge(s[0], s[1]);
            add_edge(s[0], s[2]);
            add_edge(s[1], s[2]);
            t.insert(s);
        }
        Self { vertex_count, edges: e.into_iter().collect(), triangles: t.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    /// Simplex counts per dimension: `[vertices, edges, triangles]`.
    pub fn f_vector(&self) -> [usize; 3] {
        [self.vertex_count, self.edges.len(), self.triangles.len()]
    }

    /// Unreduced Euler characteristic `V − E + T`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

/// Reduced Betti numbers over the rationals. `b_neg1` is 1 exactly for the
/// empty complex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub b_neg1: u64,
    pub b0: u64,
    pub b1: u64,
    pub b2: u64,
}

impl BettiVector {
    /// `χ = 1 + Σ (−1)^i b̃_i`, which also covers the empty complex.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.b_neg1 as i64 + self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }
}

/// Reduced Betti numbers from boundary ranks.
pub fn homology_ranks(c: &OrderComplex) -> BettiVector {
    if c.is_empty() {
        return BettiVector { b_neg1: 1, ..Default::default() };
    }
    let d1: Vec<Vec<(usize, i64)>> = c.edges.iter().map(|&[a, b]| vec![(a, -1), (b, 1)]).collect();
    let edge_index: HashMap<[usize; 2], usize> = c.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let d2: Vec<Vec<(usize, i64)>> = c
        .triangles
        .iter()
        .map(|&[a, b, t]| vec![(edge_index[&[b, t]], 1), (edge_index[&[a, t]], -1), (edge_index[&[a, b]], 1)])
        .collect();
    let r1 = rational_rank(&d1);
    let r2 = rational_rank(&d2);
    let [v, e, t] = c.f_vector();
    BettiVector {
        b_neg1: 0,
        b0: (v - r1 - 1) as u64,
        b1: (e - r1 - r2) as u64,
        b2: (t - r2) as u64,
    }
}

/// Two Mersenne-sized primes. A rank mod p never exceeds the rank over Q,
/// and falls short only if p divides every nonzero minor of maximal size.
const PRIMES: [u64; 2] = [(1 << 61) - 1, 4_611_686_018_427_387_847];

/// Rank over Q of a sparse integer matrix given by columns of
/// `(row, value)` entries.
pub fn rational_rank(columns: &[Vec<(usize, i64)>]) -> usize {
    PRIMES.iter().map(|&p| rank_mod(columns, p)).max().unwrap_or(0)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Column reduction keyed on the largest row index of each column.
fn rank_mod(columns: &[Vec<(usize, i64)>], p: u64) -> usize {
    let to_field = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for col in columns {
        let mut cur: Vec<(usize, u64)> = {
            let mut m: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
            for &(r, v) in col {
                let e = m.entry(r).or_insert(0);
                *e = (*e + to_field(v)) % p;
            }
            m.into_iter().filter(|&(_, v)| v != 0).collect()
        };
        while let Some(&(low, lv)) = cur.last() {
            let Some(piv) = pivots.get(&low) else { break };
            // cur -= (lv / pv) · piv
            let pv = piv.last().expect("nonempty pivot").1;
            let f = mul_mod(lv, pow_mod(pv, p - 2, p), p);
            cur = axpy(&cur, piv, p - f, p);
        }
        if let Some(&(low, _)) = cur.last() {
            pivots.insert(low, cur);
        }
    }
    pivots.len()
}

/// `x + f·y` on sorted sparse vectors, dropping zeros.
fn axpy(x: &[(usize, u64)], y: &[(usize, u64)], f: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, mul_mod(f, y[j].1, p)));
            j += 1;
        } else {
            let v = (x[i].1 + mul_mod(f, y[j].1, p)) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
