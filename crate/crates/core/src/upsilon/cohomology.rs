use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use upsilon_linalg::smith_normal_form;

use super::complex::UpsilonComplex;

/// Ranks over Q of `H^i` of the fixed-`m` subcomplexes, one entry per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedCohomology {
    ranks: BTreeMap<(usize, usize), usize>,
    torsion: Option<BTreeMap<(usize, usize), Vec<BigInt>>>,
}

pub fn cohomology(c: &UpsilonComplex) -> BigradedCohomology {
    let keys: Vec<(usize, usize)> = c.cells().keys().copied().collect();
    // warm the differential rank cache in parallel
    let _ = c.differential_rank(0, 0);
    let ranks = keys
        .par_iter()
        .map(|&(i, m)| {
            let incoming = if i == 0 {
                0
            } else {
                c.differential_rank(i - 1, m)
            };
            ((i, m), c.dim(i, m) - c.differential_rank(i, m) - incoming)
        })
        .collect();
    BigradedCohomology {
        ranks,
        torsion: None,
    }
}

/// Invariant factors greater than one of each incoming differential, i.e.
/// the torsion of `H^i_m` over the integers (cocycles form a saturated
/// sublattice, so all torsion comes from the coboundaries).
pub fn integral_torsion(c: &UpsilonComplex) -> BTreeMap<(usize, usize), Vec<BigInt>> {
    c.cells()
        .keys()
        .copied()
        .collect::<Vec<_>>()
        .par_iter()
        .filter_map(|&(i, m)| {
            let d = c.differential_ref(i.checked_sub(1)?, m)?;
            let factors: Vec<BigInt> = smith_normal_form(&d.to_dense())
                .invariant_factors()
                .into_iter()
                .filter(|f| !f.is_one())
                .collect();
            (!factors.is_empty()).then_some(((i, m), factors))
        })
        .collect()
}

impl BigradedCohomology {
    pub fn from_ranks(ranks: BTreeMap<(usize, usize), usize>) -> Self {
        BigradedCohomology {
            ranks,
            torsion: None,
        }
    }

    pub fn with_torsion(mut self, torsion: BTreeMap<(usize, usize), Vec<BigInt>>) -> Self {
        self.torsion = Some(torsion);
        self
    }

    pub fn torsion(&self) -> Option<&BTreeMap<(usize, usize), Vec<BigInt>>> {
        self.torsion.as_ref()
    }

    pub fn rank(&self, i: usize, m: usize) -> usize {
        self.ranks.get(&(i, m)).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.ranks
    }

    /// Nonzero entries only.
    pub fn nonzero(&self) -> BTreeMap<(usize, usize), usize> {
        self.ranks
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|(&k, &r)| (k, r))
            .collect()
    }

    pub fn betti(&self, i: usize) -> usize {
        self.ranks
            .iter()
            .filter(|((d, _), _)| *d == i)
            .map(|(_, r)| r)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .map(|(&(i, _), &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub i: usize,
    pub m: usize,
    pub rank: usize,
}

pub fn rank_table(h: &BigradedCohomology) -> Vec<RankEntry> {
    h.ranks
        .iter()
        .map(|(&(i, m), &rank)| RankEntry { i, m, rank })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::upsilon::build_complex;

    fn ranks(g: &crate::Multigraph) -> BTreeMap<(usize, usize), usize> {
        cohomology(&build_complex(g).unwrap()).nonzero()
    }

    #[test]
    fn loop_graph_weights() {
        let expected = BTreeMap::from([((0, 0), 1), ((1, 2), 1), ((2, 4), 1)]);
        assert_eq!(ranks(&loop_graph()), expected);
    }

    #[test]
    fn banana_table() {
        let expected = BTreeMap::from([((0, 0), 1), ((1, 2), 1), ((2, 2), 1), ((2, 4), 1)]);
        assert_eq!(ranks(&banana()), expected);
    }

    #[test]
    fn theta_table() {
        let h = cohomology(&build_complex(&theta()).unwrap());
        let expected = [
            ((0, 0), 1),
            ((1, 2), 2),
            ((2, 2), 1),
            ((2, 4), 2),
            ((3, 4), 0),
            ((4, 4), 1),
            ((3, 6), 2),
            ((4, 6), 1),
            ((4, 8), 1),
        ];
        for ((i, m), r) in expected {
            assert_eq!(h.rank(i, m), r, "H^{i}_{m}");
        }
        assert_eq!(h.nonzero().len(), 8);
        assert_eq!(h.euler_characteristic(), 3);
    }

    #[test]
    fn tree_and_torsion() {
        let h = cohomology(&build_complex(&path2()).unwrap());
        assert_eq!(h.nonzero(), BTreeMap::from([((0, 0), 1)]));
        assert!(integral_torsion(&build_complex(&theta()).unwrap()).is_empty());
    }
}
