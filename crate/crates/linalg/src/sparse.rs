use std::collections::BTreeMap;

use crate::dense::{IntMatrix, RatMatrix};
use crate::echelon::{axpby, make_primitive, Echelon, SparseVec};
use crate::error::LinalgError;
use crate::int::Int;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        let mut acc: Vec<BTreeMap<usize, Int>> = vec![BTreeMap::new(); ncols];
        for (r, c, v) in triplets {
            assert!(
                r < nrows && c < ncols,
                "triplet ({r}, {c}) outside {nrows}x{ncols}"
            );
            let slot = acc[c].entry(r).or_insert(Int::ZERO);
            *slot = &*slot + &v;
        }
        let cols = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)
            && c.iter().all(|(k, v)| *k < nrows && !v.is_zero())));
        SparseMatrix { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        crate::echelon::entry(&self.cols[c], r)
            .cloned()
            .unwrap_or(Int::ZERO)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.cols.len(),
            cols: rows,
        }
    }

    /// Image of a sparse vector indexed by the columns.
    pub fn apply(&self, x: &[(usize, Int)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Int> = BTreeMap::new();
        for (j, a) in x {
            for (i, v) in &self.cols[*j] {
                let slot = acc.entry(*i).or_insert(Int::ZERO);
                *slot = &*slot + &(a * v);
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.ncols() != rhs.nrows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ncols(),
                found: rhs.nrows,
            });
        }
        let cols = rhs.cols.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix {
            nrows: self.nrows,
            cols,
        })
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: cols.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut order: Vec<usize> = (0..self.ncols()).collect();
        order.sort_by_key(|&j| self.cols[j].len());
        let mut ech = Echelon::new(self.nrows);
        for j in order {
            if !self.cols[j].is_empty() {
                ech.insert(self.cols[j].clone());
            }
            if ech.rank() == self.nrows {
                break;
            }
        }
        ech.rank()
    }

    /// Echelon basis of the column span.
    pub fn column_echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.nrows);
        for c in &self.cols {
            if !c.is_empty() {
                ech.insert(c.clone());
            }
        }
        ech
    }

    /// Primitive integer vectors spanning the rational kernel.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let n = self.nrows;
        let mut ech = Echelon::new(n + self.ncols());
        let mut kernel = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            let mut aug = col.clone();
            aug.push((n + j, Int::ONE));
            let r = ech.reduce_below(aug, n);
            match r.first() {
                Some(&(lead, _)) if lead < n => {
                    ech.push_reduced(r);
                }
                _ => {
                    let mut k: SparseVec = r.into_iter().map(|(i, v)| (i - n, v)).collect();
                    make_primitive(&mut k);
                    kernel.push(k);
                }
            }
        }
        kernel
    }

    pub fn kernel_basis(&self) -> RatMatrix {
        let ker = self.kernel();
        RatMatrix::from_sparse_columns(self.ncols(), &ker)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.to_bigint());
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> SparseMatrix {
        let cols = (0..m.ncols())
            .map(|j| {
                (0..m.nrows())
                    .filter_map(|i| {
                        let v = m.get(i, j);
                        (!num_traits::Zero::is_zero(v)).then(|| (i, Int::from(v)))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix {
            nrows: m.nrows(),
            cols,
        }
    }

    /// `self - rhs`.
    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.nrows != rhs.nrows || self.ncols() != rhs.ncols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.nrows * self.ncols(),
                found: rhs.nrows * rhs.ncols(),
            });
        }
        let cols = self
            .cols
            .iter()
            .zip(&rhs.cols)
            .map(|(a, b)| axpby(&Int::ONE, a, &Int::from(-1), b))
            .collect();
        Ok(SparseMatrix {
            nrows: self.nrows,
            cols,
        })
    }
}

/// `dim ker(d_out) - rank(d_in)` for `C_prev --d_in--> C --d_out--> C_next`.
///
/// Fails with a witness column when `d_out * d_in` is not zero.
pub fn cohomology_rank(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize, LinalgError> {
    if d_in.nrows() != d_out.ncols() {
        return Err(LinalgError::DimensionMismatch {
            expected: d_out.ncols(),
            found: d_in.nrows(),
        });
    }
    let comp = d_out.mul(d_in)?;
    if let Some(j) = (0..comp.ncols()).find(|&j| !comp.col(j).is_empty()) {
        return Err(LinalgError::NonzeroComposition { column: j });
    }
    let dim = d_out.ncols();
    Ok(dim - d_out.rank() - d_in.rank())
}

pub fn image_rank(m: &SparseMatrix) -> usize {
    m.rank()
}
