//! Exterior powers on a fixed ordered basis. A monomial
//! `x_{s_1} ^ ... ^ x_{s_l}` with `s_1 < ... < s_l` is stored as a bitmask.

use std::collections::HashMap;

/// Monomials of every degree, each degree ordered lexicographically by
/// sorted index tuples.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    rank: usize,
    by_degree: Vec<Vec<u64>>,
    index: HashMap<u64, usize>,
}

fn combinations(rank: usize, l: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
    if l == 0 {
        out.push(acc);
        return;
    }
    for s in start..=rank - l {
        combinations(rank, l - 1, s + 1, acc | 1 << s, out);
    }
}

impl WedgeBasis {
    pub fn new(rank: usize) -> Self {
        assert!(rank < 64, "wedge basis rank {rank} too large");
        let mut by_degree = Vec::with_capacity(rank + 1);
        let mut index = HashMap::new();
        for l in 0..=rank {
            let mut monos = Vec::new();
            combinations(rank, l, 0, 0, &mut monos);
            for (k, &m) in monos.iter().enumerate() {
                index.insert(m, k);
            }
            by_degree.push(monos);
        }
        WedgeBasis {
            rank,
            by_degree,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn monomials(&self, l: usize) -> &[u64] {
        &self.by_degree[l]
    }

    pub fn dim(&self, l: usize) -> usize {
        self.by_degree.get(l).map_or(0, Vec::len)
    }

    /// Position of a monomial within its degree.
    pub fn position(&self, mono: u64) -> usize {
        self.index[&mono]
    }
}

/// Sparse element of the exterior algebra.
pub type Multivector = HashMap<u64, i64>;

/// `w ^ v` for a vector `v` given as `(basis index, coefficient)` pairs.
pub fn wedge_vector(w: &Multivector, v: &[(usize, i64)]) -> Multivector {
    let mut out = Multivector::new();
    for (&mono, &a) in w {
        for &(idx, b) in v {
            let bit = 1u64 << idx;
            if mono & bit != 0 {
                continue;
            }
            // moving x_idx left past every factor with a larger index
            let sign = if (mono >> idx).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
            let term = a
                .checked_mul(b)
                .and_then(|t| t.checked_mul(sign))
                .expect("wedge coefficient overflow");
            let slot = out.entry(mono | bit).or_insert(0);
            *slot = slot.checked_add(term).expect("wedge coefficient overflow");
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Product of vectors in order.
pub fn wedge_all<'a, I>(vectors: I) -> Multivector
where
    I: IntoIterator<Item = &'a [(usize, i64)]>,
{
    let mut w = Multivector::from([(0u64, 1i64)]);
    for v in vectors {
        w = wedge_vector(&w, v);
        if w.is_empty() {
            break;
        }
    }
    w
}

/// Indices of the set bits, ascending.
pub fn bits(mono: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mono.count_ones() as usize);
    let mut m = mono;
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        out.push(k);
        m &= m - 1;
    }
    out
}
