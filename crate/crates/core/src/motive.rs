//! Grothendieck class of the graph, Tutte polynomial, mixed Poincare
//! polynomial and the consolidated weight/perverse report.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CoreError;
use crate::graph::enumerate::{canonical_key, CanonicalKey};
use crate::graph::{Multigraph, UnionFind};
use crate::pointcount::{count_points, find_generic_eta};
use crate::poly::{Poly, Poly2};
use crate::upsilon::{
    build_complex, cohomology, deletion_filtration_of, grading_filtration, BigradedCohomology,
    UpsilonComplex,
};

/// Largest edge count for which recursive computations memoize on a
/// canonical form.
pub const MEMO_EDGES: usize = 10;

/// `sum over connected spanning S of (L - 1)^(2 b1(S)) L^(b1(G) - b1(S))`.
pub fn motive_closed_form(g: &Multigraph) -> Result<Poly, CoreError> {
    g.require_connected()?;
    let b1 = g.betti_number();
    let term = |b: usize| Poly::from_i64(&[-1, 1]).pow(2 * b).shift(b1 - b);
    let counts = g
        .spanning_connected_subgraphs()?
        .fold(vec![0u64; b1 + 1], |mut acc, (_, b)| {
            acc[b] += 1;
            acc
        });
    Ok(counts
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (b, &n)| {
            acc.add(&term(b).mul(&Poly::from_i64(&[n as i64])))
        }))
}

/// Bare edge list used by the recursions.
#[derive(Clone)]
struct Small {
    n: usize,
    edges: Vec<(usize, usize)>,
}

enum Kind {
    Loop,
    Bridge,
    Ordinary,
}

impl Small {
    fn of(g: &Multigraph) -> Self {
        Small {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| (e.tail, e.head)).collect(),
        }
    }

    fn kind(&self, k: usize) -> Kind {
        let (a, b) = self.edges[k];
        if a == b {
            return Kind::Loop;
        }
        let mut ds = UnionFind::new(self.n);
        for (j, &(x, y)) in self.edges.iter().enumerate() {
            if j != k {
                ds.union(x, y);
            }
        }
        if ds.find(a) == ds.find(b) {
            Kind::Ordinary
        } else {
            Kind::Bridge
        }
    }

    fn delete(&self, k: usize) -> Small {
        let mut edges = self.edges.clone();
        edges.remove(k);
        Small { n: self.n, edges }
    }

    fn contract(&self, k: usize) -> Small {
        let (keep, gone) = self.edges[k];
        let remap = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, &(a, b))| (remap(a), remap(b)))
            .collect();
        Small {
            n: self.n - 1,
            edges,
        }
    }

    fn key(&self) -> Option<CanonicalKey> {
        (self.edges.len() <= MEMO_EDGES).then(|| canonical_key(self.n, &self.edges))
    }

    /// Prefer loops and bridges, which do not branch.
    fn pick(&self) -> (usize, Kind) {
        let mut ordinary = None;
        for k in 0..self.edges.len() {
            match self.kind(k) {
                Kind::Ordinary => {
                    ordinary.get_or_insert(k);
                }
                kind => return (k, kind),
            }
        }
        (ordinary.expect("nonempty edge list"), Kind::Ordinary)
    }
}

fn delcon_rec(g: &Small, memo: &mut HashMap<CanonicalKey, Poly>) -> Poly {
    if g.edges.is_empty() {
        return Poly::one();
    }
    let key = g.key();
    if let Some(p) = key.as_ref().and_then(|k| memo.get(k)) {
        return p.clone();
    }
    let (k, kind) = g.pick();
    let p = match kind {
        Kind::Loop => Poly::loop_factor().mul(&delcon_rec(&g.delete(k), memo)),
        Kind::Bridge => delcon_rec(&g.contract(k), memo),
        Kind::Ordinary => delcon_rec(&g.delete(k), memo)
            .shift(1)
            .add(&delcon_rec(&g.contract(k), memo)),
    };
    if let Some(k) = key {
        memo.insert(k, p.clone());
    }
    p
}

/// Deletion-contraction: loops multiply by `L^2 - L + 1`, bridges are
/// contracted, other edges give `L [G \ e] + [G / e]`.
pub fn motive_delcon(g: &Multigraph) -> Result<Poly, CoreError> {
    g.require_connected()?;
    Ok(delcon_rec(&Small::of(g), &mut HashMap::new()))
}

fn tutte_rec(g: &Small, memo: &mut HashMap<CanonicalKey, Poly2>) -> Poly2 {
    if g.edges.is_empty() {
        return Poly2::monomial(BigInt::one(), 0, 0);
    }
    let key = g.key();
    if let Some(p) = key.as_ref().and_then(|k| memo.get(k)) {
        return p.clone();
    }
    let (k, kind) = g.pick();
    let p = match kind {
        Kind::Loop => tutte_rec(&g.delete(k), memo).shift(0, 1),
        Kind::Bridge => tutte_rec(&g.contract(k), memo).shift(1, 0),
        Kind::Ordinary => tutte_rec(&g.delete(k), memo).add(&tutte_rec(&g.contract(k), memo)),
    };
    if let Some(k) = key {
        memo.insert(k, p.clone());
    }
    p
}

/// Tutte polynomial `T(x, y)`: bridges contribute `x`, loops `y`.
pub fn tutte(g: &Multigraph) -> Result<Poly2, CoreError> {
    g.require_connected()?;
    Ok(tutte_rec(&Small::of(g), &mut HashMap::new()))
}

/// `L^b1 T(1, (L^2 - L + 1) / L)` with denominators cleared termwise.
pub fn motive_from_tutte(g: &Multigraph) -> Result<Poly, CoreError> {
    let t = tutte(g)?;
    let b1 = g.betti_number();
    let mut out = Poly::zero();
    for (&(_, b), c) in t.terms() {
        debug_assert!(b <= b1);
        out = out.add(
            &Poly::loop_factor()
                .pow(b)
                .shift(b1 - b)
                .mul(&Poly::new(vec![c.clone()])),
        );
    }
    Ok(out)
}

/// Coefficient of `q^(m/2) t^i` is the rank of `H^i` in weight `m`.
pub fn mixed_poincare(h: &BigradedCohomology) -> Poly2 {
    let mut p = Poly2::zero();
    for (&(i, m), &r) in h.ranks() {
        if r > 0 {
            p.add_term(m / 2, i, BigInt::from(r));
        }
    }
    p
}

/// `q^(2 b1) P(q^-1, -1)` as a polynomial in `q`.
pub fn dual_specialization(p: &Poly2, b1: usize) -> Poly {
    let mut coeffs = vec![BigInt::zero(); 2 * b1 + 1];
    for (&(a, i), c) in p.terms() {
        assert!(a <= 2 * b1, "weight {} above 4 b1", 2 * a);
        let signed = if i % 2 == 0 { c.clone() } else { -c };
        coeffs[2 * b1 - a] += signed;
    }
    Poly::new(coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub lhs: Value,
    pub rhs: Value,
}

impl Check {
    fn new(name: &str, ok: bool, lhs: Value, rhs: Value) -> Self {
        Check {
            name: name.to_string(),
            ok,
            lhs,
            rhs,
        }
    }
}

/// `D_k`, `P_k` and `W_2k` on `H^i`; the latter two are read from the
/// grading.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FiltrationLabel {
    pub i: usize,
    pub k: usize,
    pub deletion: usize,
    pub perverse: usize,
    pub weight: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCount {
    pub q: u64,
    pub eta: Option<Vec<u64>>,
    pub count: Option<String>,
    pub motive_value: String,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PwReport {
    pub motive: Value,
    pub tutte: Value,
    pub mixed_poincare: Value,
    pub filtrations: Vec<FiltrationLabel>,
    pub point_counts: Vec<PointCount>,
    pub checks: Vec<Check>,
}

impl PwReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }
}

pub fn pw_report(g: &Multigraph, qs: &[u64]) -> Result<PwReport, CoreError> {
    let c = build_complex(g)?;
    pw_report_of(&c, qs)
}

pub fn pw_report_of(c: &UpsilonComplex, qs: &[u64]) -> Result<PwReport, CoreError> {
    let g = c.graph();
    let b1 = g.betti_number();
    let h = cohomology(c);
    let closed = motive_closed_form(g)?;
    let delcon = motive_delcon(g)?;
    let from_tutte = motive_from_tutte(g)?;
    let t = tutte(g)?;
    let p = mixed_poincare(&h);
    let trees = g.spanning_tree_count()?;
    let mut checks = Vec::new();

    let chi = BigInt::from(h.euler_characteristic());
    checks.push(Check::new(
        "euler_equals_spanning_trees",
        chi == trees,
        json!(chi.to_string()),
        json!(trees.to_string()),
    ));
    checks.push(Check::new(
        "motives_agree",
        closed == delcon && delcon == from_tutte,
        json!({ "closed": closed.to_json(), "delcon": delcon.to_json() }),
        json!({ "tutte": from_tutte.to_json() }),
    ));
    let dual = dual_specialization(&p, b1);
    checks.push(Check::new(
        "duality_identity",
        dual == closed,
        dual.to_json(),
        closed.to_json(),
    ));

    let deletion = deletion_filtration_of(c);
    let grading = grading_filtration(&h);
    let mut filtrations = Vec::new();
    let mut mismatches = Vec::new();
    for i in 0..=h.max_degree() {
        for k in 0..=i {
            let d = deletion.dim(i, k);
            let w = grading.dim(i, k);
            if d != w {
                mismatches.push(json!({ "i": i, "k": k, "deletion": d, "grading": w }));
            }
            filtrations.push(FiltrationLabel {
                i,
                k,
                deletion: d,
                perverse: w,
                weight: w,
            });
        }
    }
    checks.push(Check::new(
        "deletion_equals_grading",
        mismatches.is_empty(),
        Value::Array(mismatches),
        json!([]),
    ));

    let mut point_counts = Vec::new();
    for &q in qs {
        let value = closed.eval(&BigInt::from(q));
        let eta = match find_generic_eta(g, q) {
            Ok(eta) => eta,
            Err(CoreError::NoGenericEta(_)) => {
                point_counts.push(PointCount {
                    q,
                    eta: None,
                    count: None,
                    motive_value: value.to_string(),
                    status: "no_generic_eta".into(),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let count = count_points(g, &eta)?;
        checks.push(Check::new(
            &format!("point_count_q{q}"),
            count == value,
            json!(count.to_string()),
            json!(value.to_string()),
        ));
        point_counts.push(PointCount {
            q,
            eta: Some(eta.values),
            count: Some(count.to_string()),
            motive_value: value.to_string(),
            status: "counted".into(),
        });
    }

    Ok(PwReport {
        motive: closed.to_json(),
        tutte: t.to_json(),
        mixed_poincare: p.to_json(),
        filtrations,
        point_counts,
        checks,
    })
}

/// Motives of many graphs at once, by the three methods.
pub fn motive_triples(graphs: &[Multigraph]) -> Result<Vec<[Poly; 3]>, CoreError> {
    graphs
        .par_iter()
        .map(|g| {
            Ok([
                motive_closed_form(g)?,
                motive_delcon(g)?,
                motive_from_tutte(g)?,
            ])
        })
        .collect()
}
