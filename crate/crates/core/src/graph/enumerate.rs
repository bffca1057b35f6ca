//! Isomorphism classes of small connected multigraphs.

use std::collections::BTreeSet;

use super::Multigraph;

/// Canonical key of an unoriented multigraph: vertex count and the sorted
/// endpoint pairs under a lexicographically minimal relabeling.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub vertices: usize,
    pub edges: Vec<(u8, u8)>,
}

fn vertex_signature(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize, Vec<usize>)> {
    let mut degree = vec![0usize; n];
    let mut loops = vec![0usize; n];
    for &(a, b) in edges {
        if a == b {
            loops[a] += 1;
        } else {
            degree[a] += 1;
            degree[b] += 1;
        }
    }
    let mut neigh: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a != b {
            neigh[a].push(degree[b]);
            neigh[b].push(degree[a]);
        }
    }
    (0..n)
        .map(|v| {
            let mut nd = std::mem::take(&mut neigh[v]);
            nd.sort_unstable();
            (degree[v], loops[v], nd)
        })
        .collect()
}

/// Canonical form of `edges` on `n` vertices (orientation ignored).
///
/// Vertices are first grouped by an isomorphism-invariant signature; only
/// permutations inside each group are searched.
pub fn canonical_key(n: usize, edges: &[(usize, usize)]) -> CanonicalKey {
    let sig = vertex_signature(n, edges);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sig[a].cmp(&sig[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match groups.last_mut() {
            Some(g) if sig[g[0]] == sig[v] => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let mut best: Option<Vec<(u8, u8)>> = None;
    let mut position = vec![0usize; n];
    let mut current: Vec<Vec<usize>> = groups.clone();
    search(&mut current, 0, &mut position, edges, &mut best);
    CanonicalKey {
        vertices: n,
        edges: best.unwrap_or_default(),
    }
}

fn search(
    groups: &mut Vec<Vec<usize>>,
    gi: usize,
    position: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut Option<Vec<(u8, u8)>>,
) {
    if gi == groups.len() {
        let mut next = 0;
        for g in groups.iter() {
            for &v in g {
                position[v] = next;
                next += 1;
            }
        }
        let mut relabeled: Vec<(u8, u8)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (position[a] as u8, position[b] as u8);
                (x.min(y), x.max(y))
            })
            .collect();
        relabeled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            *best = Some(relabeled);
        }
        return;
    }
    permute(groups, gi, 0, position, edges, best);
}

fn permute(
    groups: &mut Vec<Vec<usize>>,
    gi: usize,
    k: usize,
    position: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut Option<Vec<(u8, u8)>>,
) {
    let len = groups[gi].len();
    if k == len {
        search(groups, gi + 1, position, edges, best);
        return;
    }
    for i in k..len {
        groups[gi].swap(k, i);
        permute(groups, gi, k + 1, position, edges, best);
        groups[gi].swap(k, i);
    }
}

impl Multigraph {
    pub fn canonical_key(&self) -> CanonicalKey {
        let edges: Vec<(usize, usize)> = self.edges().iter().map(|e| (e.tail, e.head)).collect();
        canonical_key(self.vertex_count(), &edges)
    }
}

impl CanonicalKey {
    /// A representative graph: vertices `v0..`, edges `e1..` oriented from
    /// the smaller to the larger canonical index, in sorted order.
    pub fn to_graph(&self) -> Multigraph {
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (a as usize, b as usize))
            .collect();
        Multigraph::from_indices(self.vertices, &edges)
    }
}

/// One representative of every isomorphism class of connected multigraphs
/// (loops and parallel edges allowed) with at most `max_edges` edges,
/// ordered by edge count and then by canonical key.
///
/// Every connected graph with at least one edge loses an edge and stays
/// connected (drop a cycle edge, or a leaf of a tree), so growing the
/// classes one edge at a time reaches all of them.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let mut levels: Vec<BTreeSet<CanonicalKey>> = Vec::new();
    let mut level = BTreeSet::new();
    level.insert(canonical_key(1, &[]));
    levels.push(level);
    for _ in 0..max_edges {
        let prev = levels.last().unwrap();
        let mut next = BTreeSet::new();
        for key in prev {
            let n = key.vertices;
            let base: Vec<(usize, usize)> = key
                .edges
                .iter()
                .map(|&(a, b)| (a as usize, b as usize))
                .collect();
            for a in 0..n {
                for b in a..n {
                    let mut e = base.clone();
                    e.push((a, b));
                    next.insert(canonical_key(n, &e));
                }
                let mut e = base.clone();
                e.push((a, n));
                next.insert(canonical_key(n + 1, &e));
            }
        }
        levels.push(next);
    }
    levels
        .into_iter()
        .flat_map(|l| l.into_iter().map(|k| k.to_graph()))
        .collect()
}
