//! Sparse fraction-free row echelon forms over the rationals.
//!
//! Vectors are sorted lists of `(index, coefficient)` with no stored zeros.
//! Every stored row is primitive (content 1) with a positive leading entry,
//! so the rational span is represented without denominators.

use crate::int::Int;

pub type SparseVec = Vec<(usize, Int)>;

/// `a * x + b * y`, merging by index.
pub fn axpby(a: &Int, x: &[(usize, Int)], b: &Int, y: &[(usize, Int)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            let v = a * &x[i].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
        } else if take_y {
            let v = b * &y[j].1;
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = &(a * &x[i].1) + &(b * &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divide out the content and make the leading coefficient positive.
pub fn make_primitive(v: &mut SparseVec) {
    if v.is_empty() {
        return;
    }
    let mut g = Int::ZERO;
    for (_, c) in v.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if v[0].1.is_negative() {
        g = -&g;
    }
    if !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c = c.div_exact(&g);
        }
    }
}

/// Coefficient stored at `index`, if any.
pub fn entry(v: &[(usize, Int)], index: usize) -> Option<&Int> {
    v.binary_search_by_key(&index, |(k, _)| *k)
        .ok()
        .map(|p| &v[p].1)
}

/// Eliminate the entry of `v` at `index` using `pivot_row`, whose entry at
/// `index` must be nonzero.
fn eliminate(v: &SparseVec, index: usize, pivot_row: &SparseVec) -> SparseVec {
    let a = entry(v, index).expect("entry to eliminate");
    let b = entry(pivot_row, index).expect("pivot entry");
    let g = a.gcd(b);
    let mut out = axpby(&b.div_exact(&g), v, &-&a.div_exact(&g), pivot_row);
    make_primitive(&mut out);
    out
}

/// An incrementally built echelon basis of a subspace of `Q^dim`.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Option<SparseVec>>,
    rank: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: vec![None; dim],
            rank: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduce the leading entries of `v` while they sit on a pivot below `limit`.
    pub fn reduce_below(&self, mut v: SparseVec, limit: usize) -> SparseVec {
        make_primitive(&mut v);
        while let Some(&(lead, _)) = v.first() {
            if lead >= limit {
                break;
            }
            match &self.rows[lead] {
                Some(row) => v = eliminate(&v, lead, row),
                None => break,
            }
        }
        v
    }

    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_below(v, self.dim)
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    /// Store an already reduced vector. Returns `false` for the zero vector.
    pub fn push_reduced(&mut self, r: SparseVec) -> bool {
        match r.first() {
            None => false,
            Some(&(lead, _)) => {
                debug_assert!(self.rows[lead].is_none());
                self.rows[lead] = Some(r);
                self.rank += 1;
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(k, r)| r.as_ref().map(|_| k))
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.iter().filter_map(|r| r.as_ref())
    }

    /// Canonical reduced echelon rows (primitive, positive pivots, every
    /// pivot column cleared in all other rows), ordered by pivot.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = self.pivots().collect();
        let mut done: Vec<Option<SparseVec>> = vec![None; self.dim];
        for &p in pivots.iter().rev() {
            let mut row = self.rows[p].clone().expect("pivot row");
            loop {
                let next = row
                    .iter()
                    .skip(1)
                    .map(|(k, _)| *k)
                    .find(|k| done[*k].is_some());
                match next {
                    Some(q) => row = eliminate(&row, q, done[q].as_ref().unwrap()),
                    None => break,
                }
            }
            done[p] = Some(row);
        }
        pivots
            .into_iter()
            .map(|p| done[p].take().unwrap())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, c)| (k, Int::from(c))).collect()
    }

    #[test]
    fn rank_of_dependent_vectors() {
        let mut e = Echelon::new(3);
        assert!(e.insert(v(&[(0, 2), (1, 4)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn reduced_rows_are_canonical() {
        let mut a = Echelon::new(3);
        a.insert(v(&[(0, 1), (1, 1)]));
        a.insert(v(&[(0, 1), (2, 1)]));
        let mut b = Echelon::new(3);
        b.insert(v(&[(1, 1), (2, -1)]));
        b.insert(v(&[(0, 2), (1, 1), (2, 1)]));
        assert_eq!(a.reduced_rows(), b.reduced_rows());
        assert_eq!(
            a.reduced_rows(),
            vec![v(&[(0, 1), (2, 1)]), v(&[(1, 1), (2, -1)])]
        );
    }
}
