//! Oriented multigraphs and their integral (co)homology.
//!
//! Edge order is significant: spanning trees are chosen greedily in edge
//! order, which fixes every basis built downstream.

pub mod enumerate;
mod format;
mod homology;
pub mod random;

use std::collections::HashMap;

use num_bigint::BigInt;
use upsilon_linalg::IntMatrix;

use crate::error::GraphError;

pub use format::parse_graph;
pub use homology::{CocycleClass, Cycle, SpanningSubgraphs};

/// Bitmask of edge positions. Operations enumerating edge subsets require
/// fewer than 64 edges.
pub type EdgeMask = u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Loop,
    Bridge,
    Ordinary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    pub components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        self.components -= 1;
        true
    }
}

impl Multigraph {
    /// Build from vertex ids and `(edge id, tail id, head id)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex {
                    id: v.clone(),
                    index: i,
                });
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (k, (id, t, h)) in edges.into_iter().enumerate() {
            if seen.insert(id.clone(), k).is_some() {
                return Err(GraphError::DuplicateEdge { id, index: k });
            }
            let lookup = |v: &String| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::DanglingEndpoint {
                        edge: id.clone(),
                        vertex: v.clone(),
                        index: k,
                    })
            };
            let tail = lookup(&t)?;
            let head = lookup(&h)?;
            out.push(Edge { id, tail, head });
        }
        Ok(Multigraph {
            vertices,
            edges: out,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Multigraph::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(e, t, h)| (e.to_string(), t.to_string(), h.to_string())),
        )
    }

    /// Graph on vertices `v0..v{n-1}` with edges `e1..` given by endpoint indices.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Self {
        Multigraph {
            vertices: (0..n).map(|i| format!("v{i}")).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(k, &(t, h))| {
                    assert!(t < n && h < n);
                    Edge {
                        id: format!("e{}", k + 1),
                        tail: t,
                        head: h,
                    }
                })
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn edge_index(&self, id: &str) -> Result<usize, GraphError> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
    }

    pub fn full_mask(&self) -> EdgeMask {
        if self.edges.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }

    pub(crate) fn check_mask_size(&self) -> Result<(), GraphError> {
        if self.edges.len() > 63 {
            Err(GraphError::TooManyEdges(self.edges.len()))
        } else {
            Ok(())
        }
    }

    /// Number of connected components of the spanning subgraph on `mask`.
    pub fn components_of_mask(&self, mask: EdgeMask) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for (k, e) in self.edges.iter().enumerate() {
            if k < 64 && mask >> k & 1 == 1 {
                uf.union(e.tail, e.head);
            }
        }
        uf.components
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        uf.components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// First Betti number `|E| - |V| + #components`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    pub fn edge_kind(&self, k: usize) -> EdgeKind {
        let e = &self.edges[k];
        if e.is_loop() {
            return EdgeKind::Loop;
        }
        let mut uf = UnionFind::new(self.vertices.len());
        for (j, f) in self.edges.iter().enumerate() {
            if j != k {
                uf.union(f.tail, f.head);
            }
        }
        if uf.find(e.tail) == uf.find(e.head) {
            EdgeKind::Ordinary
        } else {
            EdgeKind::Bridge
        }
    }

    pub fn edge_kind_by_id(&self, id: &str) -> Result<EdgeKind, GraphError> {
        Ok(self.edge_kind(self.edge_index(id)?))
    }

    pub fn is_bridge(&self, k: usize) -> bool {
        self.edge_kind(k) == EdgeKind::Bridge
    }

    /// Remove an edge. The result may be disconnected.
    pub fn delete_edge(&self, id: &str) -> Result<Multigraph, GraphError> {
        let k = self.edge_index(id)?;
        let mut g = self.clone();
        g.edges.remove(k);
        Ok(g)
    }

    /// Remove all edges whose positions are set in `mask`.
    pub fn delete_mask(&self, mask: EdgeMask) -> Multigraph {
        Multigraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(k, _)| *k >= 64 || mask >> k & 1 == 0)
                .map(|(_, e)| e.clone())
                .collect(),
        }
    }

    /// Merge the endpoints of a non-loop edge into its tail vertex and drop
    /// the edge. Parallel mates of the edge become loops.
    pub fn contract_edge(&self, id: &str) -> Result<Multigraph, GraphError> {
        let k = self.edge_index(id)?;
        let e = &self.edges[k];
        if e.is_loop() {
            return Err(GraphError::ContractLoop(id.to_string()));
        }
        let (keep, gone) = (e.tail, e.head);
        let remap = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != gone)
            .map(|(_, v)| v.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, f)| Edge {
                id: f.id.clone(),
                tail: remap(f.tail),
                head: remap(f.head),
            })
            .collect();
        Ok(Multigraph { vertices, edges })
    }

    /// Reverse the listed edges.
    pub fn flip_orientation<S: AsRef<str>>(&self, ids: &[S]) -> Result<Multigraph, GraphError> {
        let mut g = self.clone();
        for id in ids {
            let k = self.edge_index(id.as_ref())?;
            let e = &mut g.edges[k];
            std::mem::swap(&mut e.tail, &mut e.head);
        }
        Ok(g)
    }

    /// Reverse the edges whose positions are set in `mask`.
    pub fn flip_mask(&self, mask: EdgeMask) -> Multigraph {
        let mut g = self.clone();
        for (k, e) in g.edges.iter_mut().enumerate() {
            if k < 64 && mask >> k & 1 == 1 {
                std::mem::swap(&mut e.tail, &mut e.head);
            }
        }
        g
    }

    /// Reorder vertices and edges: new vertex `i` is old vertex
    /// `vertex_order[i]`, new edge `k` is old edge `edge_order[k]`.
    pub fn permuted(&self, vertex_order: &[usize], edge_order: &[usize]) -> Multigraph {
        assert_eq!(vertex_order.len(), self.vertices.len());
        assert_eq!(edge_order.len(), self.edges.len());
        let mut inverse = vec![usize::MAX; vertex_order.len()];
        for (new, &old) in vertex_order.iter().enumerate() {
            inverse[old] = new;
        }
        Multigraph {
            vertices: vertex_order
                .iter()
                .map(|&v| self.vertices[v].clone())
                .collect(),
            edges: edge_order
                .iter()
                .map(|&k| {
                    let e = &self.edges[k];
                    Edge {
                        id: e.id.clone(),
                        tail: inverse[e.tail],
                        head: inverse[e.head],
                    }
                })
                .collect(),
        }
    }

    /// `|V| x |E|` incidence matrix: `+1` at the head, `-1` at the tail, zero
    /// column for a loop.
    pub fn boundary_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertices.len(), self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                m.set(e.head, k, BigInt::from(1));
                m.set(e.tail, k, BigInt::from(-1));
            }
        }
        m
    }

    /// Greedy spanning forest over edge order; `true` marks tree edges.
    pub fn spanning_tree(&self) -> Vec<bool> {
        let mut uf = UnionFind::new(self.vertices.len());
        self.edges
            .iter()
            .map(|e| uf.union(e.tail, e.head))
            .collect()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Multigraph;

    pub fn loop_graph() -> Multigraph {
        Multigraph::from_strs(&["v"], &[("e", "v", "v")]).unwrap()
    }

    pub fn theta() -> Multigraph {
        Multigraph::from_strs(
            &["a", "b"],
            &[("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")],
        )
        .unwrap()
    }

    pub fn banana() -> Multigraph {
        Multigraph::from_strs(&["a", "b"], &[("e1", "a", "b"), ("e2", "a", "b")]).unwrap()
    }

    pub fn path2() -> Multigraph {
        Multigraph::from_strs(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]).unwrap()
    }

    pub fn two_loops() -> Multigraph {
        Multigraph::from_strs(&["v"], &[("l1", "v", "v"), ("l2", "v", "v")]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn boundary_matrices() {
        assert_eq!(loop_graph().boundary_matrix(), IntMatrix::zeros(1, 1));
        let g = Multigraph::from_strs(&["a", "b"], &[("e", "a", "b")]).unwrap();
        assert_eq!(g.boundary_matrix(), IntMatrix::from_rows(&[&[-1], &[1]]));
        let b = banana().boundary_matrix();
        assert_eq!(b, IntMatrix::from_rows(&[&[-1, -1], &[1, 1]]));
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn edge_kinds() {
        assert_eq!(path2().edge_kind(0), EdgeKind::Bridge);
        assert_eq!(theta().edge_kind(1), EdgeKind::Ordinary);
        assert_eq!(loop_graph().edge_kind(0), EdgeKind::Loop);
        assert!(path2().edge_kind_by_id("zz").is_err());
    }

    #[test]
    fn contract_theta_edge_gives_two_loops() {
        let c = theta().contract_edge("e1").unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 2);
        assert!(c.edges().iter().all(Edge::is_loop));
        assert_eq!(c.edges()[0].id, "e2");
        assert_eq!(
            loop_graph().contract_edge("e"),
            Err(GraphError::ContractLoop("e".into()))
        );
    }

    #[test]
    fn delete_theta_edge_gives_banana() {
        let d = theta().delete_edge("e1").unwrap();
        assert_eq!(d.edge_count(), 2);
        assert_eq!(d.betti_number(), 1);
        assert_eq!(d.edges()[0].id, "e2");
        let p = path2().delete_edge("e1").unwrap();
        assert!(!p.is_connected());
    }

    #[test]
    fn flips() {
        let t = theta();
        assert_eq!(t.flip_orientation::<&str>(&[]).unwrap(), t);
        let all = ["e1", "e2", "e3"];
        assert_eq!(
            t.flip_orientation(&all)
                .unwrap()
                .flip_orientation(&all)
                .unwrap(),
            t
        );
        let f = t.flip_orientation(&["e1"]).unwrap();
        assert_eq!((f.edge(0).tail, f.edge(0).head), (1, 0));
        assert!(t.flip_orientation(&["nope"]).is_err());
    }

    #[test]
    fn duplicate_and_dangling_ids() {
        let err = Multigraph::from_strs(&["a", "a"], &[]).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateVertex { .. }));
        let err =
            Multigraph::from_strs(&["a", "b"], &[("e", "a", "b"), ("e", "b", "a")]).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { index: 1, .. }));
        let err = Multigraph::from_strs(&["a", "b"], &[("e", "a", "c")]).unwrap_err();
        assert_eq!(
            err,
            GraphError::DanglingEndpoint {
                edge: "e".into(),
                vertex: "c".into(),
                index: 0
            }
        );
    }
}
