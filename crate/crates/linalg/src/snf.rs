use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dense::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal with each
/// diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .into_iter()
            .filter(|x| !x.is_one())
            .collect()
    }

    /// Re-multiplies and checks every defining property.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let prod = match self.u.mul(m).and_then(|um| um.mul(&self.v)) {
            Ok(p) => p,
            Err(_) => return false,
        };
        if prod != self.d {
            return false;
        }
        for i in 0..self.d.nrows() {
            for j in 0..self.d.ncols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let f = self.invariant_factors();
        let n = self.d.nrows().min(self.d.ncols());
        if (f.len()..n).any(|i| !self.d.get(i, i).is_zero()) {
            return false;
        }
        if f.iter().any(|x| x.is_negative()) || f.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return false;
        }
        self.u.abs_determinant_is_one() && self.v.abs_determinant_is_one()
    }
}

struct Calc {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    /// Smallest nonzero |a_ij| with i, j >= t.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.nrows() {
            for j in t..self.a.ncols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let one = ax.is_one();
                    best = Some((i, j, ax));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smallest nonzero entry on row t / column t at or after the pivot.
    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut val = self.a.get(t, t).abs();
        for i in t + 1..self.a.nrows() {
            let x = self.a.get(i, t).abs();
            if !x.is_zero() && (val.is_zero() || x < val) {
                val = x;
                best = (i, t);
            }
        }
        for j in t + 1..self.a.ncols() {
            let x = self.a.get(t, j).abs();
            if !x.is_zero() && (val.is_zero() || x < val) {
                val = x;
                best = (t, j);
            }
        }
        best
    }

    fn step(&mut self, t: usize) -> bool {
        let (pi, pj) = match self.min_pivot(t) {
            Some(p) => p,
            None => return false,
        };
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        loop {
            let p = self.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..self.a.nrows() {
                let x = self.a.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.add_row(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..self.a.ncols() {
                let x = self.a.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.add_col(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (i, j) = self.min_in_cross(t);
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..self.a.nrows())
                .find(|&i| (t + 1..self.a.ncols()).any(|j| !(self.a.get(i, j) % &p).is_zero()));
            match bad {
                Some(i) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.a.get(t, t).is_negative() {
            self.a.negate_row(t);
            self.u.negate_row(t);
        }
        true
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut calc = Calc {
        a: m.clone(),
        u: IntMatrix::identity(m.nrows()),
        v: IntMatrix::identity(m.ncols()),
    };
    let n = m.nrows().min(m.ncols());
    for t in 0..n {
        if !calc.step(t) {
            break;
        }
    }
    let form = SmithForm {
        u: calc.u,
        d: calc.a,
        v: calc.v,
    };
    debug_assert!(form.verify(m), "Smith form failed verification");
    form
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(f: &SmithForm) -> Vec<i64> {
        f.invariant_factors()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn identity_is_its_own_form() {
        let m = IntMatrix::identity(4);
        let f = smith_normal_form(&m);
        assert_eq!(f.d, m);
        assert!(f.verify(&m));
    }

    #[test]
    fn two_by_two_example() {
        // d1 = gcd of entries = 2, d1 d2 = |det| = 8
        let m = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        let f = smith_normal_form(&m);
        assert_eq!(diag(&f), vec![2, 4]);
        assert!(f.verify(&m));
    }

    #[test]
    fn banana_boundary_has_rank_one() {
        let m = IntMatrix::from_rows(&[&[-1, -1], &[1, 1]]);
        let f = smith_normal_form(&m);
        assert_eq!(diag(&f), vec![1]);
        assert_eq!(f.d, IntMatrix::from_rows(&[&[1, 0], &[0, 0]]));
        assert!(f.verify(&m));
    }

    #[test]
    fn torsion_is_reported() {
        let m = IntMatrix::from_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 0]]);
        let f = smith_normal_form(&m);
        assert_eq!(diag(&f), vec![1, 6]);
        assert_eq!(f.torsion(), vec![BigInt::from(6)]);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).rank(), 0);
        let e = IntMatrix::zeros(0, 3);
        assert!(smith_normal_form(&e).verify(&e));
    }
}
