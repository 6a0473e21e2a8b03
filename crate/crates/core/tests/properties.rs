mod common;

use biserial::algebra::{enumerate_basis, oracle_quotient_dimension, weak_symmetry_report};
use biserial::field::{FieldSpec, Matrix, Scalar};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(7).unwrap()),
        Just(FieldSpec::prime(65_521).unwrap()),
    ]
}

fn scalar(field: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-40i64..40, 1i64..9).prop_map(move |(n, d)| {
        Scalar::parse(&format!("{n}/{d}"), field).unwrap_or_else(|_| Scalar::from_i64(n, field))
    })
}

fn field_and_scalars(k: usize) -> impl Strategy<Value = (FieldSpec, Vec<Scalar>)> {
    field_strategy().prop_flat_map(move |f| (Just(f), proptest::collection::vec(scalar(f), k)))
}

proptest! {
    #[test]
    fn field_axioms((f, xs) in field_and_scalars(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a + &Scalar::zero(f), a.clone());
        prop_assert!((a + &(-a)).is_zero());
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn display_parse_round_trip((f, xs) in field_and_scalars(1)) {
        prop_assert_eq!(Scalar::parse(&xs[0].to_string(), f).unwrap(), xs[0].clone());
    }

    #[test]
    fn nullspace_is_kernel_of_full_dimension(
        (f, entries) in field_and_scalars(20),
        cols in 1usize..=5,
    ) {
        let rows: Vec<Vec<Scalar>> = entries.chunks(cols).filter(|r| r.len() == cols).map(<[Scalar]>::to_vec).collect();
        let m = Matrix::new(f, cols, rows).unwrap();
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        let basis = Matrix::new(f, cols, kernel.clone()).unwrap();
        prop_assert_eq!(basis.rank(), kernel.len());
    }
}

#[test]
fn random_presentations_over_prime_fields() {
    let mut rng = common::rng(17);
    for p in [2u64, 3, 5] {
        let field = FieldSpec::prime(p).unwrap();
        for _ in 0..20 {
            let pres = common::random_presentation(&mut rng, field);
            let t = enumerate_basis(&pres);
            assert_eq!(t.dimension(), pres.dimension());
            assert!(weak_symmetry_report(&t).holds());
            if common::socle_level(&pres) {
                assert!(t.verify_relations().passed());
            }
        }
    }
}

/// Where every deformation reaches the socle, the Gröbner count, the formula
/// and associativity all agree.
#[test]
fn socle_level_corpus_members_are_certified() {
    let mut rng = common::rng(3);
    let mut checked = 0;
    for p in common::random_corpus().into_iter().filter(common::socle_level) {
        if p.dimension() > 40 {
            continue;
        }
        let t = enumerate_basis(&p);
        assert_eq!(common::associativity_failures(&t, 2_000, &mut rng), 0);
        assert_eq!(oracle_quotient_dimension(&p, None).unwrap().dimension, p.dimension());
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} socle-level instances");
}

/// The other side: a deformation below the socle followed by a monomial
/// relation forces an extra path into the ideal.
#[test]
fn sub_socle_deformation_collapses() {
    use biserial::cli::examples::builtin_presentation;
    let mut doc = builtin_presentation("ex3.5:m=2").unwrap();
    doc.r.insert("alpha".into(), 1);
    doc.d.insert("beta".into(), "0".into());
    let p = doc.to_presentation().unwrap();
    assert_eq!(p.dimension(), 8);
    assert_eq!(p.sub_socle_deformations().len(), 1);
    assert_eq!(oracle_quotient_dimension(&p, None).unwrap().dimension, 6);
}
