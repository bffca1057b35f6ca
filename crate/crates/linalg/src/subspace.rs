use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::echelon::{Echelon, SparseVec};
use crate::error::LinalgError;
use crate::int::Int;
use crate::sparse::SparseMatrix;

/// A subspace of `Q^n`, stored in canonical reduced echelon form.
///
/// Rows are primitive integer vectors with positive pivots, so two subspaces
/// are equal exactly when their stored rows are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
}

/// Scale a rational vector to a sparse integer vector with the same span.
pub fn clear_denominators(v: &[BigRational]) -> SparseVec {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, Int::from((x.numer() * &l) / x.denom())))
        .collect()
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| vec![(i, Int::ONE)]).collect(),
        }
    }

    fn from_echelon(ech: &Echelon) -> Self {
        Subspace {
            ambient: ech.dim(),
            rows: ech.reduced_rows(),
        }
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for r in &self.rows {
            e.push_reduced(r.clone());
        }
        e
    }

    /// Span of sparse integer vectors.
    pub fn span_sparse<I>(ambient: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = SparseVec>,
    {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            if let Some(&(k, _)) = v.last() {
                if k >= ambient {
                    return Err(LinalgError::DimensionMismatch {
                        expected: ambient,
                        found: k + 1,
                    });
                }
            }
            e.insert(v);
        }
        Ok(Subspace::from_echelon(&e))
    }

    pub fn span(ambient: usize, vectors: &[Vec<BigRational>]) -> Result<Self, LinalgError> {
        for v in vectors {
            if v.len() != ambient {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        Subspace::span_sparse(ambient, vectors.iter().map(|v| clear_denominators(v)))
    }

    pub fn span_int(ambient: usize, vectors: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let rat: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        Subspace::span(ambient, &rat)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn sparse_rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduced row echelon basis with pivots scaled to one.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| {
                let lead = r[0].1.to_bigint();
                let mut out = vec![BigRational::zero(); self.ambient];
                for (i, v) in r {
                    out[*i] = BigRational::new(v.to_bigint(), lead.clone());
                }
                out
            })
            .collect()
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r.clone());
        }
        Ok(Subspace::from_echelon(&e))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let p = self.rows.len();
        let mut cols: Vec<SparseVec> = self.rows.clone();
        cols.extend(
            other
                .rows
                .iter()
                .map(|r| r.iter().map(|(i, v)| (*i, -v)).collect()),
        );
        let m = SparseMatrix::from_columns(self.ambient, cols);
        let mut e = Echelon::new(self.ambient);
        for k in m.kernel() {
            let coeffs: SparseVec = k.into_iter().filter(|(i, _)| *i < p).collect();
            let v = m.select_columns(&(0..p).collect::<Vec<_>>()).apply(&coeffs);
            e.insert(v);
        }
        Ok(Subspace::from_echelon(&e))
    }

    pub fn contains_sparse(&self, v: SparseVec) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.contains_sparse(clear_denominators(v)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let e = other.echelon();
        self.ambient == other.ambient && self.rows.iter().all(|r| e.contains(r.clone()))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in Q^{}) {:?}",
            self.dim(),
            self.ambient,
            self.rows
        )
    }
}
