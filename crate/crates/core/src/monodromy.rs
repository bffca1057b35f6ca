//! Log-monodromy operators on `H_1(G) + H^1(G)` and their relations.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use upsilon_linalg::IntMatrix;

use crate::error::CoreError;
use crate::graph::{CocycleClass, Multigraph};
use crate::upsilon::hh_space;

/// A nilpotent operator on the `hh_space` basis, attached to one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOperator {
    pub edge: String,
    pub matrix: IntMatrix,
}

impl NilpotentOperator {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Projection to `H_1`, pairing with `e`, then the class of `e` in `H^1`.
///
/// The class of `e` is written in the basis dual to the cycle basis, and the
/// expansion is confirmed modulo coboundaries.
pub fn log_monodromy(g: &Multigraph, id: &str) -> Result<NilpotentOperator, CoreError> {
    let k = g.edge_index(id)?;
    let h = hh_space(g)?;
    let b = h.betti();
    let class = CocycleClass::of_edge(g, k);
    let coords: Vec<BigInt> = h.cycles().iter().map(|c| class.pair(c)).collect();

    let mut rebuilt = vec![BigInt::zero(); g.edge_count()];
    for (j, &edge) in h.cocycle_edges().iter().enumerate() {
        rebuilt[edge] += &coords[j];
    }
    let rebuilt = CocycleClass::from_representative(rebuilt);
    if !rebuilt.same_class(&class, &CocycleClass::coboundaries(g)) {
        return Err(CoreError::Invariant(format!(
            "class of edge \"{id}\" is not spanned by the cocycle basis"
        )));
    }

    let projection: Vec<BigInt> = h
        .cycles()
        .iter()
        .map(|c| BigInt::from(c.coefficient(k)))
        .collect();
    let matrix = IntMatrix::from_fn(2 * b, 2 * b, |r, c| {
        if r >= b && c < b {
            &projection[c] * &coords[r - b]
        } else {
            BigInt::zero()
        }
    });
    Ok(NilpotentOperator {
        edge: id.to_string(),
        matrix,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeRelations {
    pub edge: String,
    pub bridge: bool,
    pub rank: usize,
    pub square_zero: bool,
    pub matches_d_prime: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub edges: Vec<EdgeRelations>,
    pub products_zero: bool,
    pub nonzero_products: Vec<(String, String)>,
    pub ok: bool,
}

pub fn verify_relations(g: &Multigraph) -> Result<RelationReport, CoreError> {
    let h = hh_space(g)?;
    let ops: Vec<NilpotentOperator> = g
        .edges()
        .iter()
        .map(|e| log_monodromy(g, &e.id))
        .collect::<Result<_, _>>()?;
    let mut edges = Vec::new();
    for (k, op) in ops.iter().enumerate() {
        let d = crate::upsilon::d_prime(&h, &op.edge)?;
        let square = op.matrix.mul(&op.matrix)?;
        edges.push(EdgeRelations {
            edge: op.edge.clone(),
            bridge: g.is_bridge(k),
            rank: op.rank(),
            square_zero: square.is_zero(),
            matches_d_prime: d == op.matrix,
        });
    }
    let mut nonzero_products = Vec::new();
    for a in &ops {
        for b in &ops {
            if !a.matrix.mul(&b.matrix)?.is_zero() {
                nonzero_products.push((a.edge.clone(), b.edge.clone()));
            }
        }
    }
    let products_zero = nonzero_products.is_empty();
    let ok = products_zero
        && edges
            .iter()
            .all(|e| e.square_zero && e.matches_d_prime && e.rank == usize::from(!e.bridge));
    Ok(RelationReport {
        edges,
        products_zero,
        nonzero_products,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn examples() {
        let l = log_monodromy(&loop_graph(), "e").unwrap();
        assert_eq!(l.rank(), 1);
        assert!(l.matrix.mul(&l.matrix).unwrap().is_zero());
        assert!(log_monodromy(&path2(), "e1").unwrap().is_zero());
        let b = banana();
        let n1 = log_monodromy(&b, "e1").unwrap();
        let n2 = log_monodromy(&b, "e2").unwrap();
        assert_eq!(n1.rank(), 1);
        assert!(n1.matrix.mul(&n2.matrix).unwrap().is_zero());
    }

    #[test]
    fn relations() {
        for g in [loop_graph(), theta(), banana(), path2(), two_loops()] {
            let r = verify_relations(&g).unwrap();
            assert!(r.ok, "{r:?}");
        }
        assert!(log_monodromy(&theta(), "nope").is_err());
    }
}
