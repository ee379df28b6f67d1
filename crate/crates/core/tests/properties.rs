use proptest::prelude::*;

use octder::linalg::{column_space, nullspace, row_space, solve, Matrix, Solver, Subspace};
use octder::{FieldSpec, Scalar};

fn gf5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

fn arb_rational() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20)
        .prop_map(|(n, d)| Scalar::from_ratio(FieldSpec::RATIONALS, n, d).unwrap())
}

fn arb_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::RATIONALS),
        Just(gf5()),
        Just(FieldSpec::prime(7).unwrap())
    ]
}

fn arb_scalar_in(field: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-30i64..30, 1i64..7).prop_map(move |(n, d)| {
        if field.is_rationals() {
            Scalar::from_ratio(field, n, d).unwrap()
        } else {
            field.from_i64(n)
        }
    })
}

fn arb_matrix() -> impl Strategy<Value = Matrix> {
    (arb_field(), 1usize..5, 1usize..6).prop_flat_map(|(field, rows, cols)| {
        // small entries in a narrow range produce plenty of rank deficiency
        proptest::collection::vec(-2i64..3, rows * cols)
            .prop_map(move |entries| Matrix::from_i64(field, rows, cols, &entries).unwrap())
    })
}

fn arb_spanning_set() -> impl Strategy<Value = (FieldSpec, Vec<Vec<Scalar>>)> {
    (arb_field(), 0usize..5).prop_flat_map(|(field, count)| {
        proptest::collection::vec(proptest::collection::vec(-2i64..3, 4), count).prop_map(
            move |rows| {
                let vecs = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| field.from_i64(v)).collect())
                    .collect();
                (field, vecs)
            },
        )
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.canonical().canonical(), a.canonical());
        prop_assert_eq!(a.canonical(), a);
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![3u64, 5, 7, 11, 65537]),
                          x in any::<i64>(), y in any::<i64>(), z in any::<i64>()) {
        let f = FieldSpec::prime(p).unwrap();
        let (a, b, c) = (f.from_i64(x), f.from_i64(y), f.from_i64(z));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!(a.residue().unwrap() < p);
    }

    #[test]
    fn rank_nullity(m in arb_matrix()) {
        let ns = nullspace(&m);
        prop_assert_eq!(m.rank() + ns.dim(), m.cols());
        for v in ns.basis_vectors() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rref_is_canonical(m in arb_matrix()) {
        let ech = m.rref();
        prop_assert_eq!(ech.matrix.rref().matrix, ech.matrix.clone());
        for (r, &p) in ech.pivots.iter().enumerate() {
            prop_assert!(ech.matrix.get(r, p).is_one());
            for other in 0..m.rows() {
                if other != r {
                    prop_assert!(ech.matrix.get(other, p).is_zero());
                }
            }
        }
        prop_assert!(ech.pivots.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(row_space(&m), row_space(&ech.matrix));
    }

    #[test]
    fn solve_is_sound(m in arb_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
        let field = m.field();
        let b: Vec<Scalar> = seed.iter().take(m.rows()).map(|&v| field.from_i64(v)).collect();
        prop_assume!(b.len() == m.rows());
        let rhs = Matrix::new(field, m.rows(), 1, b.clone()).unwrap();
        match solve(&m, &b).unwrap() {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b.clone()),
            None => prop_assert!(m.hstack(&rhs).unwrap().rank() > m.rank()),
        }
        prop_assert_eq!(Solver::new(&m).solve(&b).unwrap(), solve(&m, &b).unwrap());
    }

    #[test]
    fn subspace_equality_ignores_presentation((field, vecs) in arb_spanning_set(),
                                              scale in 1i64..4) {
        let s = Subspace::span(field, 4, &vecs).unwrap();
        let mut shuffled: Vec<Vec<Scalar>> = vecs
            .iter()
            .map(|v| v.iter().map(|x| x * &field.from_i64(scale)).collect())
            .collect();
        shuffled.reverse();
        let t = Subspace::span(field, 4, &shuffled).unwrap();
        // scale is a unit in Q, GF(5) and GF(7)
        prop_assert!(s.equals(&t).unwrap());
        prop_assert!(s.is_subspace_of(&t).unwrap() && t.is_subspace_of(&s).unwrap());
        for v in &vecs {
            prop_assert!(s.contains(v).unwrap());
        }
    }

    #[test]
    fn annihilator_is_an_inclusion_reversing_involution(
        (field, vecs) in arb_spanning_set(),
        extra in proptest::collection::vec(-2i64..3, 4),
    ) {
        let s = Subspace::span(field, 4, &vecs).unwrap();
        let ann = s.annihilator();
        prop_assert_eq!(ann.dim(), 4 - s.dim());
        prop_assert_eq!(ann.annihilator(), s.clone());
        let mut bigger_vecs = vecs.clone();
        bigger_vecs.push(extra.iter().map(|&v| field.from_i64(v)).collect());
        let bigger = Subspace::span(field, 4, &bigger_vecs).unwrap();
        prop_assert!(s.is_subspace_of(&bigger).unwrap());
        prop_assert!(bigger.annihilator().is_subspace_of(&ann).unwrap());
    }

    #[test]
    fn column_space_is_row_space_of_transpose(m in arb_matrix()) {
        prop_assert_eq!(column_space(&m), row_space(&m.transpose()));
        prop_assert_eq!(column_space(&m).dim(), row_space(&m).dim());
    }

    #[test]
    fn scalars_round_trip_through_display(
        (field, s) in arb_field().prop_flat_map(|f| (Just(f), arb_scalar_in(f)))
    ) {
        prop_assert_eq!(Scalar::parse(field, &s.to_string()).unwrap(), s);
    }
}
