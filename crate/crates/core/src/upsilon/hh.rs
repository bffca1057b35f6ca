use upsilon_linalg::IntMatrix;

use crate::error::GraphError;
use crate::graph::{Cycle, Multigraph};

/// `H_1(G) + H^1(G)` for a connected graph `G`, with a fixed ordered basis:
/// the fundamental cycles `c_1..c_b` of the greedy spanning tree, then the
/// classes `[g_1]..[g_b]` of the non-tree edges.
///
/// The two halves are dual: `<c_i, [g_j]> = delta_ij`, so a cochain `f` has
/// cocycle coordinates `(<c_j, f>)_j`.
#[derive(Clone, Debug)]
pub struct HHSpace {
    graph: Multigraph,
    cycles: Vec<Cycle>,
    non_tree: Vec<usize>,
}

pub fn hh_space(g: &Multigraph) -> Result<HHSpace, GraphError> {
    let cycles = g.cycle_basis()?;
    let tree = g.spanning_tree();
    let non_tree = (0..g.edge_count()).filter(|&k| !tree[k]).collect();
    Ok(HHSpace {
        graph: g.clone(),
        cycles,
        non_tree,
    })
}

impl HHSpace {
    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn betti(&self) -> usize {
        self.cycles.len()
    }

    pub fn rank(&self) -> usize {
        2 * self.cycles.len()
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Positions of the non-tree edges, defining the cocycle basis.
    pub fn cocycle_edges(&self) -> &[usize] {
        &self.non_tree
    }

    /// The row `x -> <x, e>` on the basis; zero on the cocycle half.
    pub fn pairing_row(&self, edge: usize) -> Vec<i64> {
        let mut row: Vec<i64> = self.cycles.iter().map(|c| c.coefficient(edge)).collect();
        row.resize(self.rank(), 0);
        row
    }

    /// Coordinates of `[e]` in the cocycle half.
    pub fn edge_class(&self, edge: usize) -> Vec<i64> {
        self.cycles.iter().map(|c| c.coefficient(edge)).collect()
    }
}

/// `d'_e`: sends `theta + gamma` to `0 + <theta, e>[e]`.
pub fn d_prime(h: &HHSpace, id: &str) -> Result<IntMatrix, GraphError> {
    Ok(d_prime_at(h, h.graph.edge_index(id)?))
}

pub(crate) fn d_prime_at(h: &HHSpace, edge: usize) -> IntMatrix {
    let b = h.betti();
    let class = h.edge_class(edge);
    IntMatrix::from_fn(2 * b, 2 * b, |r, c| {
        if r >= b && c < b {
            (class[c] * class[r - b]).into()
        } else {
            0.into()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn ranks() {
        assert_eq!(hh_space(&path2()).unwrap().rank(), 0);
        assert_eq!(hh_space(&loop_graph()).unwrap().rank(), 2);
        assert_eq!(hh_space(&theta()).unwrap().rank(), 4);
        let disc = Multigraph::from_strs(&["a", "b"], &[]).unwrap();
        assert!(hh_space(&disc).is_err());
    }

    #[test]
    fn d_prime_examples() {
        let p = hh_space(&path2()).unwrap();
        assert!(d_prime(&p, "e1").unwrap().is_zero());
        let l = hh_space(&loop_graph()).unwrap();
        let n = d_prime(&l, "e").unwrap();
        assert_eq!(n, IntMatrix::from_rows(&[&[0, 0], &[1, 0]]));
        assert!(n.mul(&n).unwrap().is_zero());
        // banana: basis cycle e2 - e1, so <c, e1> = -1 and [e1] = -[e2]
        let bn = hh_space(&banana()).unwrap();
        assert_eq!(
            d_prime(&bn, "e1").unwrap(),
            IntMatrix::from_rows(&[&[0, 0], &[1, 0]])
        );
        assert!(d_prime(&bn, "zz").is_err());
    }
}
