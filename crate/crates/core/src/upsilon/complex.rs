use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use upsilon_linalg::{Echelon, Int, SparseMatrix, SparseVec};

use super::hh::{hh_space, HHSpace};
use super::wedge::{bits, wedge_all, Multivector, WedgeBasis};
use crate::error::{CoreError, GraphError};
use crate::graph::{EdgeMask, Multigraph};

/// Position of edge `k` of a graph after deleting the edges in `mask`
/// (`k` itself must survive).
pub(crate) fn position_after(mask: EdgeMask, k: usize) -> usize {
    k - (mask & ((1u64 << k) - 1)).count_ones() as usize
}

/// Data of `d_e: wedge^l H(G) -> wedge^(l-1) H(G \ e)` for a non-bridge `e`.
///
/// `d'_e` maps into `e ^ ker d'_e`; its factor in `ker d'_e` is the
/// projection `L(x) = x - <x, e> s f` of `x` along a basis cycle `f` with
/// `s = <f, e> = +-1`, read in the basis of `H(G \ e)`.
pub(crate) struct DeletionBlock {
    pairing: Vec<i64>,
    images: Vec<Vec<(usize, i64)>>,
}

impl DeletionBlock {
    pub(crate) fn new(src: &HHSpace, tgt: &HHSpace, edge: usize) -> Self {
        let b = src.betti();
        let bt = tgt.betti();
        debug_assert_eq!(bt + 1, b);
        let pairing = src.pairing_row(edge);
        let (f, s) = pairing[..b]
            .iter()
            .enumerate()
            .find(|(_, p)| p.abs() == 1)
            .map(|(i, &p)| (i, p))
            .expect("a non-bridge lies on a fundamental cycle with coefficient +-1");
        let fc = src.cycles()[f].coefficients();
        let to_src = |t: usize| if t >= edge { t + 1 } else { t };
        let mut images = Vec::with_capacity(2 * b);
        for (i, c) in src.cycles().iter().enumerate() {
            let scale = pairing[i] * s;
            let img = tgt
                .cocycle_edges()
                .iter()
                .enumerate()
                .map(|(h, &g)| {
                    let p = to_src(g);
                    (h, c.coefficient(p) - scale * fc[p])
                })
                .filter(|&(_, v)| v != 0)
                .collect();
            images.push(img);
        }
        for &g in src.cocycle_edges() {
            let img = if g == edge {
                Vec::new()
            } else {
                let p = if g > edge { g - 1 } else { g };
                tgt.cycles()
                    .iter()
                    .enumerate()
                    .map(|(h, c)| (bt + h, c.coefficient(p)))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            };
            images.push(img);
        }
        DeletionBlock { pairing, images }
    }

    /// `d_e(x_{s_0} ^ ... ^ x_{s_(l-1)}) = sum_j (-1)^j <x_{s_j}, e> L(x_{s_0}) ^ ..^.. L(x_{s_(l-1)})`
    /// with the `j`-th factor omitted.
    pub(crate) fn apply(&self, mono: u64) -> Multivector {
        let s = bits(mono);
        let mut out = Multivector::new();
        for (j, &sj) in s.iter().enumerate() {
            let p = self.pairing[sj];
            if p == 0 {
                continue;
            }
            let sign = if j % 2 == 0 { p } else { -p };
            let rest = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &si)| self.images[si].as_slice());
            for (m, c) in wedge_all(rest) {
                *out.entry(m).or_insert(0) += sign * c;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

fn wedge_power_matrix(
    block: &DeletionBlock,
    src: &WedgeBasis,
    tgt: &WedgeBasis,
    l: usize,
) -> SparseMatrix {
    let nrows = tgt.dim(l - 1);
    let triplets = src
        .monomials(l)
        .iter()
        .enumerate()
        .flat_map(|(col, &mono)| {
            block
                .apply(mono)
                .into_iter()
                .map(move |(m, c)| (tgt.position(m), col, Int::from(c)))
        });
    SparseMatrix::from_triplets(nrows, src.dim(l), triplets.collect::<Vec<_>>())
}

/// The matrix of `d_e: wedge^l H(G \ J) -> wedge^(l-1) H(G \ J \ e)` in the
/// lexicographic monomial bases. `edge` is a position in `g`.
pub fn edge_deletion_map(
    g: &Multigraph,
    deleted: EdgeMask,
    edge: usize,
    l: usize,
) -> Result<SparseMatrix, CoreError> {
    g.check_mask_size()?;
    if edge >= g.edge_count() || deleted >> edge & 1 == 1 {
        return Err(GraphError::UnknownEdge(format!("#{edge}")).into());
    }
    let gj = g.delete_mask(deleted);
    let src = hh_space(&gj)?;
    let e = position_after(deleted, edge);
    if gj.is_bridge(e) {
        return Err(CoreError::BridgeEdge(g.edge(edge).id.clone()));
    }
    let tgt = hh_space(&gj.delete_mask(1u64 << e))?;
    let block = DeletionBlock::new(&src, &tgt, e);
    let (ws, wt) = (WedgeBasis::new(src.rank()), WedgeBasis::new(tgt.rank()));
    if l == 0 || l > src.rank() {
        return Ok(SparseMatrix::zeros(wt.dim(l.saturating_sub(1)), ws.dim(l)));
    }
    Ok(wedge_power_matrix(&block, &ws, &wt, l))
}

/// A summand `wedge^l H(G \ J)` placed inside a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub deleted: EdgeMask,
    pub wedge_degree: usize,
    pub offset: usize,
    pub dim: usize,
}

/// All summands of cohomological degree `i` and grading `m`, ordered by
/// the bitmask of deleted edges.
#[derive(Clone, Debug, Default)]
pub struct Cell {
    pub summands: Vec<Summand>,
    pub dim: usize,
}

impl Cell {
    pub fn summand(&self, deleted: EdgeMask) -> Option<&Summand> {
        self.summands.iter().find(|s| s.deleted == deleted)
    }
}

/// Summands `(J, l)` over edge sets `J` with connected complement; the
/// summand sits in degree `i = 2|J| + l` and grading `m = 2|J| + 2l`.
pub struct UpsilonComplex {
    graph: Multigraph,
    spaces: BTreeMap<EdgeMask, HHSpace>,
    cells: BTreeMap<(usize, usize), Cell>,
    differentials: BTreeMap<(usize, usize), SparseMatrix>,
    ranks: OnceLock<BTreeMap<(usize, usize), usize>>,
}

pub fn build_complex(g: &Multigraph) -> Result<UpsilonComplex, CoreError> {
    g.require_connected()?;
    g.check_mask_size()?;
    let full = g.full_mask();
    let admissible: Vec<EdgeMask> = (0..=full)
        .filter(|&j| g.components_of_mask(full & !j) == 1)
        .collect();
    let spaces: BTreeMap<EdgeMask, HHSpace> = admissible
        .par_iter()
        .map(|&j| Ok((j, hh_space(&g.delete_mask(j))?)))
        .collect::<Result<_, GraphError>>()?;
    let max_rank = spaces.values().map(HHSpace::rank).max().unwrap_or(0);
    let wedges: Vec<WedgeBasis> = (0..=max_rank / 2).map(|b| WedgeBasis::new(2 * b)).collect();

    let mut cells: BTreeMap<(usize, usize), Cell> = BTreeMap::new();
    let mut place: HashMap<(EdgeMask, usize), ((usize, usize), usize)> = HashMap::new();
    for (&j, h) in &spaces {
        let k = j.count_ones() as usize;
        let w = &wedges[h.betti()];
        for l in 0..=h.rank() {
            let key = (2 * k + l, 2 * k + 2 * l);
            let cell = cells.entry(key).or_default();
            let dim = w.dim(l);
            place.insert((j, l), (key, cell.dim));
            cell.summands.push(Summand {
                deleted: j,
                wedge_degree: l,
                offset: cell.dim,
                dim,
            });
            cell.dim += dim;
        }
    }

    let pairs: Vec<(EdgeMask, usize)> = admissible
        .iter()
        .flat_map(|&j| (0..g.edge_count()).map(move |e| (j, e)))
        .filter(|&(j, e)| j >> e & 1 == 0 && spaces.contains_key(&(j | 1 << e)))
        .collect();
    let blocks: Vec<((usize, usize), Vec<(usize, usize, Int)>)> = pairs
        .par_iter()
        .flat_map_iter(|&(j, e)| {
            let (src, tgt) = (&spaces[&j], &spaces[&(j | 1 << e)]);
            let block = DeletionBlock::new(src, tgt, position_after(j, e));
            let (ws, wt) = (&wedges[src.betti()], &wedges[tgt.betti()]);
            let mut out = Vec::new();
            for l in 1..=src.rank() {
                let (key, col0) = place[&(j, l)];
                let Some(&(tkey, row0)) = place.get(&(j | 1 << e, l - 1)) else {
                    continue;
                };
                debug_assert_eq!((key.0 + 1, key.1), tkey);
                let trip: Vec<_> = ws
                    .monomials(l)
                    .iter()
                    .enumerate()
                    .flat_map(|(c, &mono)| {
                        block
                            .apply(mono)
                            .into_iter()
                            .map(move |(m, v)| (row0 + wt.position(m), col0 + c, Int::from(v)))
                    })
                    .collect();
                out.push((key, trip));
            }
            out
        })
        .collect();
    let mut triplets: BTreeMap<(usize, usize), Vec<(usize, usize, Int)>> = BTreeMap::new();
    for (key, t) in blocks {
        triplets.entry(key).or_default().extend(t);
    }
    let mut differentials = BTreeMap::new();
    for (&(i, m), cell) in &cells {
        if let Some(target) = cells.get(&(i + 1, m)) {
            let t = triplets.remove(&(i, m)).unwrap_or_default();
            differentials.insert((i, m), SparseMatrix::from_triplets(target.dim, cell.dim, t));
        }
    }
    let complex = UpsilonComplex {
        graph: g.clone(),
        spaces,
        cells,
        differentials,
        ranks: OnceLock::new(),
    };
    complex.assert_square_zero();
    Ok(complex)
}

impl UpsilonComplex {
    fn assert_square_zero(&self) {
        self.differentials.par_iter().for_each(|(&(i, m), d)| {
            if let Some(next) = self.differentials.get(&(i + 1, m)) {
                let dd = next.mul(d).expect("composable differentials");
                assert!(
                    dd.is_zero(),
                    "d^2 != 0 at (i={i}, m={m}): sign convention broken"
                );
            }
        });
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// `H(G \ J)` for an admissible `J`.
    pub fn space(&self, deleted: EdgeMask) -> Option<&HHSpace> {
        self.spaces.get(&deleted)
    }

    pub fn admissible_sets(&self) -> impl Iterator<Item = EdgeMask> + '_ {
        self.spaces.keys().copied()
    }

    pub fn cells(&self) -> &BTreeMap<(usize, usize), Cell> {
        &self.cells
    }

    pub fn cell(&self, i: usize, m: usize) -> Option<&Cell> {
        self.cells.get(&(i, m))
    }

    pub fn dim(&self, i: usize, m: usize) -> usize {
        self.cells.get(&(i, m)).map_or(0, |c| c.dim)
    }

    pub fn total_dim(&self) -> usize {
        self.cells.values().map(|c| c.dim).sum()
    }

    /// Degrees `m` present in the complex.
    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.cells.keys().map(|&(_, m)| m).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// `d: (i, m) -> (i + 1, m)`; a zero matrix where either side is empty.
    pub fn differential(&self, i: usize, m: usize) -> SparseMatrix {
        self.differentials
            .get(&(i, m))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(i + 1, m), self.dim(i, m)))
    }

    pub(crate) fn differential_ref(&self, i: usize, m: usize) -> Option<&SparseMatrix> {
        self.differentials.get(&(i, m))
    }

    /// Rank of `d: (i, m) -> (i + 1, m)`.
    pub fn differential_rank(&self, i: usize, m: usize) -> usize {
        let ranks = self.ranks.get_or_init(|| {
            self.differentials
                .par_iter()
                .map(|(&k, d)| (k, d.rank()))
                .collect()
        });
        ranks.get(&(i, m)).copied().unwrap_or(0)
    }

    /// Primitive integer vectors spanning the cocycles in cell `(i, m)`.
    pub fn cocycles(&self, i: usize, m: usize) -> Vec<SparseVec> {
        match self.differentials.get(&(i, m)) {
            Some(d) => d.kernel(),
            None => (0..self.dim(i, m)).map(|k| vec![(k, Int::ONE)]).collect(),
        }
    }

    /// Echelon basis of the coboundaries in cell `(i, m)`.
    pub fn coboundaries(&self, i: usize, m: usize) -> Echelon {
        match i
            .checked_sub(1)
            .and_then(|p| self.differentials.get(&(p, m)))
        {
            Some(d) => d.column_echelon(),
            None => Echelon::new(self.dim(i, m)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn dims(c: &UpsilonComplex) -> Vec<((usize, usize), usize)> {
        c.cells().iter().map(|(&k, v)| (k, v.dim)).collect()
    }

    #[test]
    fn theta_has_31_dimensions() {
        let c = build_complex(&theta()).unwrap();
        assert_eq!(c.total_dim(), 16 + 3 * 4 + 3);
        assert_eq!(c.admissible_sets().count(), 7);
    }

    #[test]
    fn loop_graph_cells() {
        let c = build_complex(&loop_graph()).unwrap();
        assert_eq!(
            dims(&c),
            vec![((0, 0), 1), ((1, 2), 2), ((2, 2), 1), ((2, 4), 1)]
        );
    }

    #[test]
    fn tree_is_a_point() {
        let c = build_complex(&path2()).unwrap();
        assert_eq!(dims(&c), vec![((0, 0), 1)]);
    }

    #[test]
    fn deletion_map_examples() {
        // loop graph: the cycle goes to 1
        let d = edge_deletion_map(&loop_graph(), 0, 0, 1).unwrap();
        assert_eq!(
            d.to_dense(),
            upsilon_linalg::IntMatrix::from_rows(&[&[1, 0]])
        );
        // theta, e1: the basis cycle e2 - e1 pairs to -1
        let d = edge_deletion_map(&theta(), 0, 0, 1).unwrap();
        assert_eq!(d.get(0, 0), Int::from(-1));
        assert!(matches!(
            edge_deletion_map(&path2(), 0, 0, 1),
            Err(CoreError::BridgeEdge(_))
        ));
        // the pure cocycle wedge lies in wedge(ker d'_e) and is killed
        let d = edge_deletion_map(&theta(), 0, 0, 2).unwrap();
        let top_cocycles = WedgeBasis::new(4).position(0b1100);
        assert!(d.col(top_cocycles).is_empty());
    }

    #[test]
    fn deletion_maps_anticommute() {
        let g = theta();
        for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
            for l in 2..=4 {
                let ab = edge_deletion_map(&g, 1 << b, a, l - 1)
                    .unwrap()
                    .mul(&edge_deletion_map(&g, 0, b, l).unwrap())
                    .unwrap();
                let ba = edge_deletion_map(&g, 1 << a, b, l - 1)
                    .unwrap()
                    .mul(&edge_deletion_map(&g, 0, a, l).unwrap())
                    .unwrap();
                let sum: Vec<_> = (0..ab.ncols()).map(|j| ab.col(j).clone()).collect();
                for j in 0..ab.ncols() {
                    let neg: Vec<_> = ba.col(j).iter().map(|(r, v)| (*r, -v)).collect();
                    assert_eq!(sum[j], neg, "d_{a} d_{b} + d_{b} d_{a} != 0 at l={l}");
                }
            }
        }
    }
}
