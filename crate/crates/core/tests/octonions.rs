use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use octder::derivation::{pattern_map, pattern_unit_map, PATTERN_PARAMETERS};
use octder::sampling::{random_derivation, random_element, random_linear_map};
use octder::{
    build_octonion, derivation_space, is_derivation, killing_form_rank, lie_closure_check,
    pattern_space, table_consistency_check, verify_pattern, AlgebraElement, FieldSpec, Scalar,
};

fn fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::RATIONALS,
        FieldSpec::prime(3).unwrap(),
        FieldSpec::prime(5).unwrap(),
        FieldSpec::prime(7).unwrap(),
        FieldSpec::prime(11).unwrap(),
    ]
}

#[test]
fn unit_bilinearity_and_alternativity_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for field in [FieldSpec::RATIONALS, FieldSpec::prime(5).unwrap()] {
        let o = build_octonion(field);
        let one = o.basis(0);
        for _ in 0..200 {
            let x = random_element(field, 8, &mut rng, -9..=9);
            let y = random_element(field, 8, &mut rng, -9..=9);
            let z = random_element(field, 8, &mut rng, -9..=9);
            let s = field.from_i64(-4);
            assert_eq!(o.multiply(&one, &x).unwrap(), x);
            assert_eq!(o.multiply(&x, &one).unwrap(), x);
            assert_eq!(
                o.multiply(&x.add(&z), &y).unwrap(),
                o.multiply(&x, &y)
                    .unwrap()
                    .add(&o.multiply(&z, &y).unwrap())
            );
            assert_eq!(
                o.multiply(&x, &y.scale(&s)).unwrap(),
                o.multiply(&x, &y).unwrap().scale(&s)
            );
            assert!(o.associator(&x, &x, &y).unwrap().is_zero());
            assert!(o.associator(&y, &x, &x).unwrap().is_zero());
            assert!(o.associator(&x, &y, &x).unwrap().is_zero());
        }
    }
}

#[test]
fn octonions_are_not_associative() {
    let o = build_octonion(FieldSpec::RATIONALS);
    let a = o.associator(&o.basis(1), &o.basis(2), &o.basis(4)).unwrap();
    assert!(!a.is_zero());
}

#[test]
fn table_checks_hold_in_every_field() {
    for field in fields() {
        let o = build_octonion(field);
        assert!(table_consistency_check(&o), "{field}");
        assert!(o.check_alternative(), "{field}");
        assert!(o.check_anticommutative_imaginaries(), "{field}");
    }
}

#[test]
fn imaginary_units_square_to_minus_one() {
    for field in fields() {
        let o = build_octonion(field);
        let minus_one = AlgebraElement::basis(field, 8, 0).scale(&field.from_i64(-1));
        for i in 1..8 {
            assert_eq!(o.basis_product(i, i), minus_one);
        }
    }
}

#[test]
fn derivation_algebra_has_dimension_fourteen() {
    for field in fields() {
        let o = build_octonion(field);
        let db = derivation_space(&o);
        assert_eq!(db.dim(), 14, "{field}");
        assert!(verify_pattern(&o), "{field}");
        assert!(lie_closure_check(&db), "{field}");
    }
}

#[test]
fn derivations_are_skew_traceless_and_kill_the_unit() {
    let field = FieldSpec::RATIONALS;
    let o = build_octonion(field);
    let db = derivation_space(&o);
    for d in db.maps() {
        assert!(d.image_of_basis(0).is_zero());
        for i in 0..8 {
            assert!(d.entry(i, i).is_zero());
            for j in 0..8 {
                assert_eq!(d.entry(i, j), &-d.entry(j, i));
            }
        }
        assert!(d.trace().is_zero());
    }
}

#[test]
fn pattern_parameters_give_the_canonical_basis() {
    let field = FieldSpec::RATIONALS;
    let o = build_octonion(field);
    let db = derivation_space(&o);
    assert_eq!(PATTERN_PARAMETERS.len(), db.dim());
    for (p, d) in db.maps().iter().enumerate() {
        assert_eq!(d, &pattern_unit_map(field, p), "{}", PATTERN_PARAMETERS[p]);
    }
}

#[test]
fn is_derivation_matches_pattern_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for field in [FieldSpec::RATIONALS, FieldSpec::prime(7).unwrap()] {
        let o = build_octonion(field);
        let space = pattern_space(field);
        for _ in 0..200 {
            let params: [Scalar; 14] =
                std::array::from_fn(|_| field.from_i64(rand::Rng::random_range(&mut rng, -9..=9)));
            let d = pattern_map(field, &params);
            assert!(is_derivation(&o, &d));
            assert!(space.contains(&d.vectorize()).unwrap());

            let noise = random_linear_map(field, 8, &mut rng, -1..=1);
            let t = d.add(&noise).unwrap();
            assert_eq!(
                is_derivation(&o, &t),
                space.contains(&t.vectorize()).unwrap()
            );
        }
    }
}

#[test]
fn leibniz_rule_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for field in [FieldSpec::RATIONALS, FieldSpec::prime(11).unwrap()] {
        let o = build_octonion(field);
        let db = derivation_space(&o);
        for _ in 0..200 {
            let d = random_derivation(&db, &mut rng, -9..=9);
            let x = random_element(field, 8, &mut rng, -9..=9);
            let y = random_element(field, 8, &mut rng, -9..=9);
            let lhs = d.apply(&o.multiply(&x, &y).unwrap()).unwrap();
            let rhs = o
                .multiply(&d.apply(&x).unwrap(), &y)
                .unwrap()
                .add(&o.multiply(&x, &d.apply(&y).unwrap()).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn killing_form_rank_by_field() {
    for (field, rank) in [
        (FieldSpec::RATIONALS, 14),
        (FieldSpec::prime(3).unwrap(), 7),
        (FieldSpec::prime(5).unwrap(), 14),
        (FieldSpec::prime(7).unwrap(), 14),
        (FieldSpec::prime(11).unwrap(), 14),
    ] {
        let db = derivation_space(&build_octonion(field));
        assert_eq!(killing_form_rank(&db).unwrap(), rank, "{field}");
    }
}
