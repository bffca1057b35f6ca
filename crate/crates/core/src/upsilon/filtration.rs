use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use upsilon_linalg::{Echelon, SparseVec};

use super::cohomology::BigradedCohomology;
use super::complex::{build_complex, UpsilonComplex};
use crate::error::CoreError;
use crate::graph::{EdgeKind, EdgeMask, Multigraph};

/// `D_0 H^i ⊆ D_1 H^i ⊆ ... ⊆ D_i H^i = H^i` for every degree `i`.
///
/// `spans[(i, m, j)]` holds cocycles of cell `(i, m)` whose classes span the
/// weight-`m` part of `D_j H^i` (only for the operational construction).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeletionFiltration {
    dims: BTreeMap<(usize, usize), usize>,
    spans: BTreeMap<(usize, usize, usize), Vec<SparseVec>>,
}

impl DeletionFiltration {
    /// `dim D_j H^i`; zero outside the recorded range, `H^i` above it.
    pub fn dim(&self, i: usize, j: usize) -> usize {
        match self.dims.get(&(i, j)) {
            Some(&d) => d,
            None if j > i => self.dims.get(&(i, i)).copied().unwrap_or(0),
            None => 0,
        }
    }

    pub fn dims(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.dims
    }

    /// Cocycles spanning the weight-`m` part of `D_j H^i` modulo coboundaries.
    pub fn spanning_set(&self, i: usize, m: usize, j: usize) -> &[SparseVec] {
        self.spans.get(&(i, m, j)).map_or(&[], Vec::as_slice)
    }

    pub fn is_increasing(&self) -> bool {
        self.dims
            .iter()
            .all(|(&(i, j), &d)| j == 0 || self.dim(i, j - 1) <= d)
    }
}

pub fn deletion_filtration(g: &Multigraph) -> Result<DeletionFiltration, CoreError> {
    Ok(deletion_filtration_of(&build_complex(g)?))
}

/// Span-of-images filtration: `D_{i-k} H^i` is spanned by the images of
/// `H^{i-2k}` of every `G \ K` with `|K| = k`, `K` loop-free and `G \ K`
/// connected, under the composed deletion embeddings.
///
/// The image of that embedding is the subcomplex of summands `J ⊇ K`, with
/// identical bases and differential blocks, so its cocycles are the
/// kernel of the differential restricted to those summands.
pub fn deletion_filtration_of(c: &UpsilonComplex) -> DeletionFiltration {
    let g = c.graph();
    let loops: EdgeMask = (0..g.edge_count())
        .filter(|&k| g.edge_kind(k) == EdgeKind::Loop)
        .fold(0, |acc, k| acc | 1 << k);
    let removable: Vec<EdgeMask> = c.admissible_sets().filter(|k| k & loops == 0).collect();
    let cells: Vec<(usize, usize)> = c.cells().keys().copied().collect();
    let per_cell: Vec<((usize, usize), Vec<(usize, usize, Vec<SparseVec>)>)> = cells
        .par_iter()
        .map(|&(i, m)| {
            let base = c.coboundaries(i, m);
            let depth = i - m / 2;
            let cell = c.cell(i, m).expect("cell");
            let d = c.differential(i, m);
            let mut out = Vec::new();
            for j in 0..=i {
                let k = i - j;
                let gens: Vec<SparseVec> = if k == 0 {
                    c.cocycles(i, m)
                } else if k > depth {
                    Vec::new()
                } else {
                    let mut gens = Vec::new();
                    for &kmask in removable.iter().filter(|s| s.count_ones() as usize == k) {
                        let cols: Vec<usize> = cell
                            .summands
                            .iter()
                            .filter(|s| s.deleted & kmask == kmask)
                            .flat_map(|s| s.offset..s.offset + s.dim)
                            .collect();
                        if cols.is_empty() {
                            continue;
                        }
                        for v in d.select_columns(&cols).kernel() {
                            gens.push(v.into_iter().map(|(r, x)| (cols[r], x)).collect());
                        }
                    }
                    gens
                };
                let dim = class_dimension(&base, &gens);
                out.push((j, dim, gens));
            }
            ((i, m), out)
        })
        .collect();
    let mut f = DeletionFiltration::default();
    for ((i, m), rows) in per_cell {
        for (j, dim, gens) in rows {
            *f.dims.entry((i, j)).or_insert(0) += dim;
            f.spans.insert((i, m, j), gens);
        }
    }
    f
}

/// `dim (span(gens) + B) / B`.
pub(crate) fn class_dimension(base: &Echelon, gens: &[SparseVec]) -> usize {
    let mut e = base.clone();
    let before = e.rank();
    for v in gens {
        e.insert(v.clone());
    }
    e.rank() - before
}

/// `D_j H^i = sum of H^i_m over m <= 2j`.
pub fn grading_filtration(h: &BigradedCohomology) -> DeletionFiltration {
    let mut f = DeletionFiltration::default();
    for &(i, _) in h.ranks().keys() {
        for j in 0..=i {
            let dim = h
                .ranks()
                .iter()
                .filter(|(&(d, m), _)| d == i && m <= 2 * j)
                .map(|(_, r)| r)
                .sum();
            f.dims.insert((i, j), dim);
        }
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationEntry {
    pub i: usize,
    pub k: usize,
    pub dim: usize,
}

pub fn filtration_table(f: &DeletionFiltration) -> Vec<FiltrationEntry> {
    f.dims
        .iter()
        .map(|(&(i, k), &dim)| FiltrationEntry { i, k, dim })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::upsilon::cohomology;

    #[test]
    fn two_loops_normalization() {
        let f = deletion_filtration(&two_loops()).unwrap();
        for i in 1..=4 {
            assert_eq!(f.dim(i, i - 1), 0, "D_(i-1) H^{i}");
        }
        // product of two loop graphs: H^2 has rank 3
        assert_eq!(f.dim(2, 2), 3);
    }

    #[test]
    fn theta_h2() {
        let f = deletion_filtration(&theta()).unwrap();
        assert_eq!((f.dim(2, 0), f.dim(2, 1), f.dim(2, 2)), (0, 1, 3));
        assert!(f.is_increasing());
    }

    #[test]
    fn tree() {
        let f = deletion_filtration(&path2()).unwrap();
        assert_eq!(f.dim(0, 0), 1);
    }

    #[test]
    fn grading_examples() {
        let h = cohomology(&build_complex(&loop_graph()).unwrap());
        let f = grading_filtration(&h);
        for i in 0..=2 {
            for j in 0..=i {
                assert_eq!(f.dim(i, j), usize::from(j >= i));
            }
        }
        let h = cohomology(&build_complex(&banana()).unwrap());
        let f = grading_filtration(&h);
        assert_eq!((f.dim(2, 1), f.dim(2, 2)), (1, 2));
    }

    #[test]
    fn theta_filtrations_agree() {
        let c = build_complex(&theta()).unwrap();
        assert_eq!(
            deletion_filtration_of(&c).dims(),
            grading_filtration(&cohomology(&c)).dims()
        );
    }
}
