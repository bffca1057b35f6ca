//! Seeded random connected multigraphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Multigraph;
use crate::error::GraphError;

/// A connected multigraph on `vertices` vertices with `edges` edges.
///
/// A uniformly attached random tree is extended by uniformly chosen extra
/// edges (loops and parallel edges allowed); edges are then shuffled and
/// randomly oriented. Identical arguments give identical graphs.
pub fn random_connected(
    vertices: usize,
    edges: usize,
    seed: u64,
) -> Result<Multigraph, GraphError> {
    if vertices == 0 || edges + 1 < vertices {
        return Err(GraphError::InvalidGeneratorParams { vertices, edges });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list: Vec<(usize, usize)> = (1..vertices).map(|v| (rng.gen_range(0..v), v)).collect();
    while list.len() < edges {
        let a = rng.gen_range(0..vertices);
        let b = rng.gen_range(0..vertices);
        list.push((a, b));
    }
    list.shuffle(&mut rng);
    for e in list.iter_mut() {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    Ok(Multigraph::from_indices(vertices, &list))
}
