mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::BigInt;
use upsilon_core::delcon::{les, verify_strictness, verify_strictness_with, FiltrationSource};
use upsilon_core::monodromy::{log_monodromy, verify_relations};
use upsilon_core::motive::{
    dual_specialization, mixed_poincare, motive_closed_form, motive_delcon, motive_from_tutte,
    tutte,
};
use upsilon_core::pointcount::{count_points, counts_over_generic_etas, find_generic_eta};
use upsilon_core::poly::Poly;
use upsilon_core::upsilon::{build_complex, cohomology, deletion_filtration, grading_filtration};

#[test]
fn theta_bigraded_ranks() {
    let h = cohomology(&build_complex(&theta()).unwrap());
    let want: BTreeMap<(usize, usize), usize> = [
        ((0, 0), 1),
        ((1, 2), 2),
        ((2, 2), 1),
        ((2, 4), 2),
        ((3, 6), 2),
        ((4, 4), 1),
        ((4, 6), 1),
        ((4, 8), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(h.nonzero(), want);
    assert_eq!(h.rank(3, 4), 0);
}

#[test]
fn loop_graph_weights() {
    let h = cohomology(&build_complex(&loop_graph()).unwrap());
    assert_eq!(
        h.nonzero(),
        [((0, 0), 1), ((1, 2), 1), ((2, 4), 1)]
            .into_iter()
            .collect()
    );
}

#[test]
fn motives_by_three_methods() {
    for (g, want) in [
        (loop_graph(), Poly::from_i64(&[1, -1, 1])),
        (banana(), Poly::from_i64(&[1, 0, 1])),
        (theta(), Poly::from_i64(&[1, -1, 3, -1, 1])),
        (k4(), Poly::from_i64(&[1, 0, 6, 2, 6, 0, 1])),
    ] {
        assert_eq!(motive_closed_form(&g).unwrap(), want);
        assert_eq!(motive_delcon(&g).unwrap(), want);
        assert_eq!(motive_from_tutte(&g).unwrap(), want);
    }
}

#[test]
fn tutte_of_three_parallel_edges() {
    let t = tutte(&theta()).unwrap();
    assert_eq!(t.coeff(1, 0), BigInt::from(1));
    assert_eq!(t.coeff(0, 1), BigInt::from(1));
    assert_eq!(t.coeff(0, 2), BigInt::from(1));
    assert_eq!(t.terms().len(), 3);
}

#[test]
fn duality_on_anchor_graphs() {
    for g in [loop_graph(), banana(), theta(), k4()] {
        let p = mixed_poincare(&cohomology(&build_complex(&g).unwrap()));
        assert_eq!(
            dual_specialization(&p, g.betti_number()),
            motive_closed_form(&g).unwrap()
        );
    }
}

#[test]
fn point_count_anchors() {
    let b = banana();
    let eta = find_generic_eta(&b, 5).unwrap();
    assert_eq!(eta.values, vec![2, 3]);
    assert_eq!(count_points(&b, &eta).unwrap(), BigInt::from(26));
    let l = loop_graph();
    assert_eq!(
        count_points(&l, &find_generic_eta(&l, 5).unwrap()).unwrap(),
        BigInt::from(21)
    );
}

#[test]
fn count_is_independent_of_eta() {
    for g in [banana(), theta()] {
        for q in [3, 5] {
            let m = motive_closed_form(&g).unwrap().eval(&BigInt::from(q));
            let all = counts_over_generic_etas(&g, q).unwrap();
            assert!(!all.is_empty());
            for (_, c) in all {
                assert_eq!(c, m);
            }
        }
    }
}

#[test]
fn theta_sequences_are_exact_and_strict() {
    let g = theta();
    for id in ["e1", "e2", "e3"] {
        let seq = les(&g, id).unwrap();
        assert!(seq.short_exact && seq.chain_maps && seq.compositions_zero && seq.exact);
        assert!(verify_strictness(&seq).ok());
        assert!(verify_strictness_with(&seq, FiltrationSource::Grading).ok());
    }
}

#[test]
fn theta_filtration() {
    let g = theta();
    let d = deletion_filtration(&g).unwrap();
    assert_eq!((d.dim(2, 0), d.dim(2, 1), d.dim(2, 2)), (0, 1, 3));
    let grading = grading_filtration(&cohomology(&build_complex(&g).unwrap()));
    assert_eq!(d.dims(), grading.dims());
}

fn filtration_mismatches(g: &upsilon_core::Multigraph) -> BTreeMap<(usize, usize), (usize, usize)> {
    let d = deletion_filtration(g).unwrap();
    let w = grading_filtration(&cohomology(&build_complex(g).unwrap()));
    w.dims()
        .keys()
        .filter_map(|&(i, k)| {
            let pair = (d.dim(i, k), w.dim(i, k));
            (pair.0 != pair.1).then_some(((i, k), pair))
        })
        .collect()
}

/// The span-of-images filtration is one dimension short of the grading
/// filtration on these two graphs.
#[test]
fn filtration_gaps() {
    assert_eq!(
        filtration_mismatches(&k4()),
        [((4, 3), (9, 10))].into_iter().collect()
    );
    assert_eq!(
        filtration_mismatches(&doubled_triangle()),
        [((4, 3), (5, 6)), ((6, 5), (11, 12))].into_iter().collect()
    );
}

#[test]
fn monodromy_examples() {
    let b = banana();
    let n1 = log_monodromy(&b, "e1").unwrap();
    assert_eq!(n1.rank(), 1);
    assert!(verify_relations(&theta()).unwrap().ok);
    let tree = graph(r#"{"vertices":["a","b","c"],"edges":[["e1","a","b"],["e2","b","c"]]}"#);
    let r = verify_relations(&tree).unwrap();
    assert!(r.ok && r.edges.iter().all(|e| e.rank == 0));
}
