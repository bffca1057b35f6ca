use num_bigint::BigInt;
use num_traits::Zero;
use upsilon_linalg::{IntMatrix, Lattice};

use super::{EdgeMask, Multigraph, UnionFind};
use crate::error::GraphError;

/// An integral 1-cycle: one coefficient per edge, zero boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    coeffs: Vec<i64>,
}

impl Cycle {
    pub fn from_coefficients(g: &Multigraph, coeffs: Vec<i64>) -> Option<Cycle> {
        let c = Cycle { coeffs };
        (c.coeffs.len() == g.edge_count() && c.is_closed(g)).then_some(c)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> i64 {
        self.coeffs[k]
    }

    /// `<c, e>`: the coefficient of edge `id` in this cycle.
    pub fn pairing(&self, g: &Multigraph, id: &str) -> Result<i64, GraphError> {
        Ok(self.coeffs[g.edge_index(id)?])
    }

    pub fn is_closed(&self, g: &Multigraph) -> bool {
        let mut b = vec![0i64; g.vertex_count()];
        for (e, c) in g.edges().iter().zip(&self.coeffs) {
            b[e.head] += c;
            b[e.tail] -= c;
        }
        b.iter().all(|&x| x == 0)
    }
}

/// A class in `H^1(G, Z) = Z^E / im d*`, stored by a representative cochain.
#[derive(Clone, Debug)]
pub struct CocycleClass {
    rep: Vec<BigInt>,
}

impl CocycleClass {
    pub fn from_representative(rep: Vec<BigInt>) -> Self {
        CocycleClass { rep }
    }

    /// The class `[e]` of the indicator cochain of edge `k`.
    pub fn of_edge(g: &Multigraph, k: usize) -> Self {
        let mut rep = vec![BigInt::zero(); g.edge_count()];
        rep[k] = BigInt::from(1);
        CocycleClass { rep }
    }

    pub fn representative(&self) -> &[BigInt] {
        &self.rep
    }

    /// Lattice of coboundaries `im d*` inside `Z^E`.
    pub fn coboundaries(g: &Multigraph) -> Lattice {
        Lattice::from_rows(&g.boundary_matrix())
    }

    /// Equality in `H^1`, decided by Hermite reduction modulo coboundaries.
    pub fn same_class(&self, other: &CocycleClass, coboundaries: &Lattice) -> bool {
        let diff: Vec<BigInt> = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(a, b)| a - b)
            .collect();
        coboundaries.contains(&diff).unwrap_or(false)
    }

    /// Evaluation against a cycle.
    pub fn pair(&self, c: &Cycle) -> BigInt {
        self.rep
            .iter()
            .zip(c.coefficients())
            .map(|(a, &b)| a * BigInt::from(b))
            .sum()
    }
}

impl Multigraph {
    /// Fundamental cycles of the non-tree edges of the greedy spanning tree,
    /// in edge order. Each has coefficient `+1` on its defining edge.
    pub fn cycle_basis(&self) -> Result<Vec<Cycle>, GraphError> {
        self.require_connected()?;
        let tree = self.spanning_tree();
        Ok(self.fundamental_cycles(&tree))
    }

    /// Fundamental cycles with respect to a given spanning tree.
    pub(crate) fn fundamental_cycles(&self, tree: &[bool]) -> Vec<Cycle> {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (k, e) in self.edges().iter().enumerate() {
            if tree[k] {
                adj[e.tail].push((e.head, k));
                adj[e.head].push((e.tail, k));
            }
        }
        // parent edge and depth from a BFS rooted at vertex 0
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        if n > 0 {
            depth[0] = 0;
            queue.push_back(0);
        }
        while let Some(u) = queue.pop_front() {
            for &(w, k) in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some((u, k));
                    queue.push_back(w);
                }
            }
        }
        let step_sign = |from: usize, k: usize| -> i64 {
            if self.edge(k).tail == from {
                1
            } else {
                -1
            }
        };
        let mut cycles = Vec::new();
        for (g, e) in self.edges().iter().enumerate() {
            if tree[g] {
                continue;
            }
            let mut coeffs = vec![0i64; self.edge_count()];
            coeffs[g] = 1;
            // walk head -> lca -> tail through the tree
            let (mut a, mut b) = (e.head, e.tail);
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, k) = parent[a].expect("tree parent");
                    coeffs[k] += step_sign(a, k);
                    a = p;
                } else {
                    let (p, k) = parent[b].expect("tree parent");
                    coeffs[k] -= step_sign(b, k);
                    b = p;
                }
            }
            let c = Cycle { coeffs };
            debug_assert!(c.is_closed(self));
            cycles.push(c);
        }
        cycles
    }

    /// All edge subsets whose spanning subgraph is connected, with their
    /// first Betti numbers.
    pub fn spanning_connected_subgraphs(&self) -> Result<SpanningSubgraphs<'_>, GraphError> {
        self.check_mask_size()?;
        Ok(SpanningSubgraphs {
            graph: self,
            next: 0,
            end: 1u64 << self.edge_count(),
        })
    }

    /// Number of spanning trees, from a reduced Laplacian determinant.
    pub fn spanning_tree_count(&self) -> Result<BigInt, GraphError> {
        self.require_connected()?;
        let n = self.vertex_count();
        let mut lap = vec![vec![0i64; n]; n];
        for e in self.edges() {
            if e.is_loop() {
                continue;
            }
            lap[e.tail][e.tail] += 1;
            lap[e.head][e.head] += 1;
            lap[e.tail][e.head] -= 1;
            lap[e.head][e.tail] -= 1;
        }
        let minor = IntMatrix::from_fn(n - 1, n - 1, |i, j| BigInt::from(lap[i + 1][j + 1]));
        Ok(minor.determinant().expect("square minor"))
    }
}

/// Iterator over connected spanning edge subsets, as `(mask, b1)`.
pub struct SpanningSubgraphs<'a> {
    graph: &'a Multigraph,
    next: u64,
    end: u64,
}

impl Iterator for SpanningSubgraphs<'_> {
    type Item = (EdgeMask, usize);

    fn next(&mut self) -> Option<Self::Item> {
        let g = self.graph;
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let mut uf = UnionFind::new(g.vertex_count());
            for (k, e) in g.edges().iter().enumerate() {
                if mask >> k & 1 == 1 {
                    uf.union(e.tail, e.head);
                }
            }
            if uf.components == 1 {
                let size = mask.count_ones() as usize;
                return Some((mask, size + 1 - g.vertex_count()));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn cycle_bases() {
        assert!(path2().cycle_basis().unwrap().is_empty());
        let l = loop_graph().cycle_basis().unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].coefficients(), &[1]);
        // tree {e1}: fundamental cycles e2 - e1 and e3 - e1
        let t = theta().cycle_basis().unwrap();
        assert_eq!(t[0].coefficients(), &[-1, 1, 0]);
        assert_eq!(t[1].coefficients(), &[-1, 0, 1]);
        let disc = Multigraph::from_strs(&["a", "b"], &[]).unwrap();
        assert_eq!(disc.cycle_basis(), Err(GraphError::Disconnected));
    }

    #[test]
    fn pairings() {
        let t = theta();
        let c = &t.cycle_basis().unwrap()[0];
        assert_eq!(c.pairing(&t, "e2").unwrap(), 1);
        assert_eq!(c.pairing(&t, "e1").unwrap(), -1);
        assert!(c.pairing(&t, "e9").is_err());
        let l = loop_graph();
        assert_eq!(l.cycle_basis().unwrap()[0].pairing(&l, "e").unwrap(), 1);
        // a bridge lies on no cycle
        let g = Multigraph::from_strs(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "a", "b"), ("br", "b", "c")],
        )
        .unwrap();
        for c in g.cycle_basis().unwrap() {
            assert_eq!(c.pairing(&g, "br").unwrap(), 0);
        }
    }

    #[test]
    fn spanning_subgraph_enumeration() {
        let t: Vec<_> = theta().spanning_connected_subgraphs().unwrap().collect();
        assert_eq!(t.len(), 7);
        let count = |b| t.iter().filter(|(_, x)| *x == b).count();
        assert_eq!((count(0), count(1), count(2)), (3, 3, 1));
        assert_eq!(banana().spanning_connected_subgraphs().unwrap().count(), 3);
        let p: Vec<_> = path2().spanning_connected_subgraphs().unwrap().collect();
        assert_eq!(p, vec![(0b11, 0)]);
    }

    #[test]
    fn tree_counts() {
        assert_eq!(theta().spanning_tree_count().unwrap(), BigInt::from(3));
        assert_eq!(loop_graph().spanning_tree_count().unwrap(), BigInt::from(1));
        assert_eq!(banana().spanning_tree_count().unwrap(), BigInt::from(2));
        let k4 = Multigraph::from_indices(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(k4.spanning_tree_count().unwrap(), BigInt::from(16));
    }

    #[test]
    fn cocycle_classes_modulo_coboundaries() {
        let t = theta();
        let lat = CocycleClass::coboundaries(&t);
        // [e1] + [e2] + [e3]... the coboundary of vertex b is e1 + e2 + e3
        let a = CocycleClass::from_representative(vec![1.into(), 0.into(), 0.into()]);
        let b = CocycleClass::from_representative(vec![0.into(), (-1).into(), (-1).into()]);
        assert!(a.same_class(&b, &lat));
        let c = CocycleClass::of_edge(&t, 1);
        assert!(!a.same_class(&c, &lat));
        // equal classes pair equally with every cycle
        for z in t.cycle_basis().unwrap() {
            assert_eq!(a.pair(&z), b.pair(&z));
        }
    }
}
