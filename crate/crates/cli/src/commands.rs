use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, Context};
use num_bigint::BigInt;
use serde_json::{json, Value};
use upsilon_core::delcon::{bridge_identity, delcon_report, les};
use upsilon_core::graph::{parse_graph, random::random_connected};
use upsilon_core::monodromy::verify_relations;
use upsilon_core::motive::{motive_closed_form, motive_delcon, motive_from_tutte, pw_report_of};
use upsilon_core::pointcount::{count_points_with_ceiling, find_generic_eta, is_generic, FqEta};
use upsilon_core::poly::Poly;
use upsilon_core::upsilon::{
    build_complex, cohomology as compute_cohomology, deletion_filtration_of, filtration_table,
    grading_filtration, integral_torsion, rank_table,
};
use upsilon_core::{CoreError, EdgeKind, Multigraph};

use crate::{Method, Ring};

pub struct Outcome {
    pub command: &'static str,
    pub ok: bool,
    pub payload: Value,
    pub human: String,
}

pub enum Failure {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Invariant(_) | CoreError::Linalg(_) => Failure::Internal(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<upsilon_core::GraphError> for Failure {
    fn from(e: upsilon_core::GraphError) -> Self {
        Failure::Usage(e.into())
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn load(path: &Path) -> Result<Multigraph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Usage)?;
    parse_graph(&text)
        .with_context(|| format!("in {}", path.display()))
        .map_err(Failure::Usage)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cohomology(path: &Path, ring: Ring) -> Result<Outcome> {
    let g = load(path)?;
    let c = build_complex(&g)?;
    let mut h = compute_cohomology(&c);
    if ring == Ring::Integers {
        h = h.with_torsion(integral_torsion(&c));
    }
    let deletion = filtration_table(&deletion_filtration_of(&c));
    let grading = filtration_table(&grading_filtration(&h));
    let ranks = rank_table(&h);

    let mut human = String::new();
    writeln!(
        human,
        "H^i(Y_m) ranks over {}:",
        if ring == Ring::Integers { "Z" } else { "Q" }
    )
    .unwrap();
    for e in ranks.iter().filter(|e| e.rank > 0) {
        writeln!(human, "  (i={}, m={}): {}", e.i, e.m, e.rank).unwrap();
    }
    writeln!(human, "euler characteristic: {}", h.euler_characteristic()).unwrap();
    writeln!(human, "deletion filtration dim D_k H^i:").unwrap();
    for e in &deletion {
        writeln!(human, "  i={} k={}: {}", e.i, e.k, e.dim).unwrap();
    }

    let torsion: Value = match h.torsion() {
        Some(t) => {
            let entries: Vec<Value> = t
                .iter()
                .filter(|(_, f)| !f.is_empty())
                .map(|(&(i, m), f)| json!({ "i": i, "m": m, "factors": f.iter().map(|x| x.to_string()).collect::<Vec<_>>() }))
                .collect();
            if entries.is_empty() {
                writeln!(human, "no torsion").unwrap();
            } else {
                writeln!(human, "torsion: {entries:?}").unwrap();
            }
            Value::Array(entries)
        }
        None => Value::Null,
    };

    Ok(Outcome {
        command: "cohomology",
        ok: true,
        payload: json!({
            "ring": if ring == Ring::Integers { "integers" } else { "rationals" },
            "ranks": to_value(&ranks),
            "euler_characteristic": h.euler_characteristic(),
            "deletion_filtration": to_value(&deletion),
            "grading_filtration": to_value(&grading),
            "torsion": torsion,
        }),
        human,
    })
}

pub fn motive(path: &Path, method: Method) -> Result<Outcome> {
    let g = load(path)?;
    let mut results: Vec<(&str, Poly)> = Vec::new();
    if matches!(method, Method::Closed | Method::All) {
        results.push(("closed", motive_closed_form(&g)?));
    }
    if matches!(method, Method::Delcon | Method::All) {
        results.push(("delcon", motive_delcon(&g)?));
    }
    if matches!(method, Method::Tutte | Method::All) {
        results.push(("tutte", motive_from_tutte(&g)?));
    }
    let ok = results.windows(2).all(|w| w[0].1 == w[1].1);
    let mut human = String::new();
    for (name, p) in &results {
        writeln!(human, "{name}: {p}").unwrap();
    }
    if results.len() > 1 {
        writeln!(human, "agree: {}", pass(ok)).unwrap();
    }
    let polys: serde_json::Map<String, Value> = results
        .iter()
        .map(|(n, p)| (n.to_string(), p.to_json()))
        .collect();
    Ok(Outcome {
        command: "motive",
        ok,
        payload: json!({ "motives": polys, "agree": ok }),
        human,
    })
}

pub fn delcon(path: &Path, edge: &str) -> Result<Outcome> {
    let g = load(path)?;
    let seq = les(&g, edge)?;
    let report = delcon_report(&seq);
    let ok = report.short_exact
        && report.chain_maps
        && report.compositions_zero
        && report.exact
        && report.strictness.ok()
        && report.grading_strictness.ok();
    let mut human = String::new();
    writeln!(human, "deletion-contraction sequence for edge {edge}").unwrap();
    writeln!(human, "  i  m  dim(G\\e) dim(G) dim(G/e) rank a b c").unwrap();
    for r in &report.rows {
        writeln!(
            human,
            "  {} {} {} {} {} {} {} {}",
            r.i, r.m, r.deleted, r.full, r.contracted, r.rank_a, r.rank_b, r.rank_c
        )
        .unwrap();
    }
    for (name, v) in [
        ("short exact", report.short_exact),
        ("chain maps", report.chain_maps),
        ("compositions zero", report.compositions_zero),
        ("exact", report.exact),
        ("strict (deletion filtration)", report.strictness.ok()),
        (
            "strict (grading filtration)",
            report.grading_strictness.ok(),
        ),
    ] {
        writeln!(human, "{name}: {}", pass(v)).unwrap();
    }
    Ok(Outcome {
        command: "delcon",
        ok,
        payload: json!({ "report": to_value(&report) }),
        human,
    })
}

fn countable(g: &Multigraph, q: u64, ceiling: u128) -> bool {
    (q as u128)
        .checked_pow(2 * g.edge_count() as u32)
        .is_some_and(|s| s <= ceiling)
}

pub fn pw(path: &Path, qs: &[u64], ceiling: u128) -> Result<Outcome> {
    let g = load(path)?;
    if let Some(&q) = qs.iter().find(|&&q| !countable(&g, q, ceiling)) {
        return Err(Failure::Usage(anyhow!(
            "q = {q} needs {q}^{} points, above the ceiling {ceiling}",
            2 * g.edge_count()
        )));
    }
    let c = build_complex(&g)?;
    let report = pw_report_of(&c, qs)?;
    let mut human = String::new();
    writeln!(human, "motive: {}", motive_closed_form(&g)?).unwrap();
    for pc in &report.point_counts {
        match &pc.count {
            Some(n) => {
                writeln!(human, "q={}: count {n}, motive {}", pc.q, pc.motive_value).unwrap()
            }
            None => writeln!(human, "q={}: {}", pc.q, pc.status).unwrap(),
        }
    }
    for chk in &report.checks {
        writeln!(human, "{}: {}", chk.name, pass(chk.ok)).unwrap();
    }
    Ok(Outcome {
        command: "pw",
        ok: report.ok(),
        payload: json!({ "report": to_value(&report) }),
        human,
    })
}

pub fn count(path: &Path, q: u64, eta: Option<Vec<u64>>, ceiling: u128) -> Result<Outcome> {
    let g = load(path)?;
    let (eta, scanned) = match eta {
        Some(values) => {
            let eta = FqEta::new(&g, q, values)?;
            if !is_generic(&g, &eta) {
                return Err(CoreError::NonGenericEta(q).into());
            }
            (eta, false)
        }
        None => (find_generic_eta(&g, q)?, true),
    };
    let n = count_points_with_ceiling(&g, &eta, ceiling)?;
    let motive = motive_closed_form(&g)?.eval(&BigInt::from(q));
    let ok = n == motive;
    let assignments = BigInt::from(q - 1).pow(g.edge_count() as u32);
    let mut human = String::new();
    writeln!(
        human,
        "q = {q}, eta = {:?}{}",
        eta.values,
        if scanned { " (first generic)" } else { "" }
    )
    .unwrap();
    writeln!(human, "points / (q-1)^(|V|-1): {n}").unwrap();
    writeln!(human, "motive at q: {motive} ({})", pass(ok)).unwrap();
    Ok(Outcome {
        command: "count",
        ok,
        payload: json!({
            "q": q,
            "count": n.to_string(),
            "motive_value": motive.to_string(),
            "certificate": {
                "eta": eta.values,
                "generic": true,
                "scanned": scanned,
                "assignments_checked": assignments.to_string(),
            },
        }),
        human,
    })
}

pub fn check(path: &Path, ceiling: u128) -> Result<Outcome> {
    let g = load(path)?;
    let c = build_complex(&g)?;
    let qs: Vec<u64> = [3, 5, 7]
        .into_iter()
        .filter(|&q| countable(&g, q, ceiling))
        .collect();
    let report = pw_report_of(&c, &qs)?;
    let mut checks: Vec<(String, bool, Value)> = report
        .checks
        .iter()
        .map(|chk| {
            (
                chk.name.clone(),
                chk.ok,
                json!({ "lhs": chk.lhs, "rhs": chk.rhs }),
            )
        })
        .collect();

    for k in 0..g.edge_count() {
        let id = &g.edge(k).id;
        match g.edge_kind(k) {
            EdgeKind::Ordinary => {
                let r = delcon_report(&les(&g, id)?);
                let exact = r.short_exact && r.chain_maps && r.compositions_zero && r.exact;
                checks.push((format!("les_exact_{id}"), exact, Value::Null));
                checks.push((
                    format!("les_strict_deletion_{id}"),
                    r.strictness.ok(),
                    to_value(&r.strictness.failures),
                ));
                checks.push((
                    format!("les_strict_grading_{id}"),
                    r.grading_strictness.ok(),
                    to_value(&r.grading_strictness.failures),
                ));
            }
            EdgeKind::Bridge => {
                checks.push((
                    format!("bridge_contraction_{id}"),
                    bridge_identity(&g, id)?,
                    Value::Null,
                ));
            }
            EdgeKind::Loop => {}
        }
    }

    let relations = verify_relations(&g)?;
    checks.push((
        "monodromy_relations".into(),
        relations.ok,
        to_value(&relations),
    ));

    let flipped = g.flip_mask(g.full_mask());
    let same =
        compute_cohomology(&build_complex(&flipped)?).nonzero() == compute_cohomology(&c).nonzero();
    checks.push(("orientation_flip_invariance".into(), same, Value::Null));

    let ok = checks.iter().all(|(_, ok, _)| *ok);
    let mut human = String::new();
    for (name, v, _) in &checks {
        writeln!(human, "{name}: {}", pass(*v)).unwrap();
    }
    writeln!(
        human,
        "{}",
        if ok {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )
    .unwrap();
    let list: Vec<Value> = checks
        .into_iter()
        .map(|(name, ok, detail)| json!({ "name": name, "ok": ok, "detail": detail }))
        .collect();
    Ok(Outcome {
        command: "check",
        ok,
        payload: json!({ "checks": list, "point_counts": to_value(&report.point_counts) }),
        human,
    })
}

pub fn random(vertices: usize, edges: usize, seed: u64) -> Result<Outcome> {
    let g = random_connected(vertices, edges, seed)?;
    Ok(Outcome {
        command: "random",
        ok: true,
        payload: json!({ "graph": g.to_json() }),
        human: format!("{}\n", g.to_document()),
    })
}
