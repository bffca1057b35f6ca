use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::dense::IntMatrix;
use crate::error::LinalgError;

/// Row-style Hermite normal form `h = u * m`: nonzero rows first, strictly
/// increasing pivot columns, positive pivots, and entries above each pivot
/// reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut row = 0;
    for col in 0..m.ncols() {
        if row == m.nrows() {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below `row`
            let piv = (row..m.nrows())
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by_key(|&i| h.get(i, col).abs());
            let p = match piv {
                Some(p) => p,
                None => break,
            };
            h.swap_rows(row, p);
            u.swap_rows(row, p);
            let pv = h.get(row, col).clone();
            let mut done = true;
            for i in row + 1..m.nrows() {
                let x = h.get(i, col).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&pv);
                h.add_row_multiple(i, row, &-&q);
                u.add_row_multiple(i, row, &-q);
                if !h.get(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        if h.get(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let pv = h.get(row, col).clone();
        for i in 0..row {
            let q = h.get(i, col).div_floor(&pv);
            h.add_row_multiple(i, row, &-&q);
            u.add_row_multiple(i, row, &-q);
        }
        row += 1;
    }
    HermiteForm { h, u, rank: row }
}

/// A sublattice of `Z^n` given by generators, with exact membership tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    /// (pivot column, row) pairs of the Hermite basis.
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl Lattice {
    /// Lattice spanned by the rows of `generators`.
    pub fn from_rows(generators: &IntMatrix) -> Self {
        let hf = hermite_normal_form(generators);
        let basis = (0..hf.rank)
            .map(|i| {
                let r = hf.h.row(i).to_vec();
                let p = r
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero HNF row");
                (p, r)
            })
            .collect();
        Lattice {
            ambient: generators.ncols(),
            basis,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let mut w = v.to_vec();
        for (p, row) in &self.basis {
            let q = w[*p].div_floor(&row[*p]);
            if !q.is_zero() {
                for (x, r) in w.iter_mut().zip(row) {
                    *x -= &q * r;
                }
            }
        }
        Ok(w)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_form_shape() {
        let m = IntMatrix::from_rows(&[&[2, 3, 6], &[4, 1, 0], &[0, 5, 12]]);
        let hf = hermite_normal_form(&m);
        assert_eq!(hf.u.mul(&m).unwrap(), hf.h);
        assert!(hf.u.abs_determinant_is_one());
        assert_eq!(hf.rank, 2);
    }

    #[test]
    fn lattice_membership() {
        let gens = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let l = Lattice::from_rows(&gens);
        assert!(l.contains(&big(&[4, -6])).unwrap());
        assert!(!l.contains(&big(&[1, 0])).unwrap());
        assert_eq!(l.reduce(&big(&[5, 7])).unwrap(), big(&[1, 1]));
        assert!(l.contains(&big(&[1])).is_err());
    }
}
