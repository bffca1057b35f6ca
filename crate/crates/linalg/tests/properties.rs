use num_bigint::BigInt;
use proptest::prelude::*;
use upsilon_linalg::{smith_normal_form, Int, IntMatrix, SparseMatrix, Subspace};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c)
            .prop_map(move |vals| IntMatrix::from_fn(r, c, |i, j| BigInt::from(vals[i * c + j])))
    })
}

fn sparse_vectors(n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_equals_transpose_rank(m in matrix(6, 7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn smith_form_verifies_and_agrees_on_rank(m in matrix(5, 5)) {
        let f = smith_normal_form(&m);
        prop_assert!(f.verify(&m));
        prop_assert_eq!(f.rank(), m.rank());
    }

    #[test]
    fn kernel_is_annihilated_and_has_full_dimension(m in matrix(5, 7)) {
        let s = SparseMatrix::from_dense(&m);
        let ker = s.kernel();
        prop_assert_eq!(ker.len() + s.rank(), m.ncols());
        for k in &ker {
            prop_assert!(s.apply(k).is_empty());
        }
        let dense = s.kernel_basis();
        let prod = upsilon_linalg::RatMatrix::from_int(&m).mul(&dense).unwrap();
        prop_assert!(prod.is_zero());
    }

    #[test]
    fn grassmann_dimension_formula(a in sparse_vectors(5, 4), b in sparse_vectors(5, 4)) {
        let sa = Subspace::span_int(5, &a).unwrap();
        let sb = Subspace::span_int(5, &b).unwrap();
        let sum = sa.sum(&sb).unwrap();
        let cap = sa.intersection(&sb).unwrap();
        prop_assert_eq!(cap.dim() + sum.dim(), sa.dim() + sb.dim());
        prop_assert!(cap.is_subspace_of(&sa) && cap.is_subspace_of(&sb));
        prop_assert!(sa.is_subspace_of(&sum) && sb.is_subspace_of(&sum));
    }

    #[test]
    fn span_is_independent_of_generator_order(a in sparse_vectors(4, 5)) {
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(Subspace::span_int(4, &a).unwrap(), Subspace::span_int(4, &rev).unwrap());
    }
}

#[test]
fn elimination_survives_coefficient_blowup() {
    // Hilbert-like integer matrix with large entries forces promotion.
    let n = 8;
    let big = BigInt::from(i64::MAX) * BigInt::from(3);
    let m = IntMatrix::from_fn(n, n, |i, j| {
        &big / BigInt::from((i + j + 1) as i64) + BigInt::from((i * j) as i64)
    });
    let s = SparseMatrix::from_dense(&m);
    assert_eq!(s.rank(), smith_normal_form(&m).rank());
    let x: Vec<(usize, Int)> = vec![(0, Int::from(1))];
    assert!(!s.apply(&x).is_empty());
}
