use std::collections::HashMap;

use num_rational::BigRational;
use proptest::prelude::*;
use symid_core::polycore::{rational, ExactRational, Monomial, SparsePolynomial, VarTable};

fn table() -> VarTable {
    VarTable::new(["a", "b", "c", "d"])
}

fn poly() -> impl Strategy<Value = SparsePolynomial> {
    let term = (prop::collection::vec(0u32..=2, 4), -5i64..=5, 1i64..=3);
    prop::collection::vec(term, 0..6).prop_map(|terms| {
        SparsePolynomial::from_terms(
            &table(),
            terms
                .into_iter()
                .map(|(e, n, d)| (Monomial::new(e), BigRational::new(n.into(), d.into()))),
        )
    })
}

fn point() -> impl Strategy<Value = HashMap<String, ExactRational>> {
    prop::collection::vec(-4i64..=4, 4).prop_map(|vals| {
        ["a", "b", "c", "d"]
            .iter()
            .zip(vals)
            .map(|(n, v)| (n.to_string(), rational(v)))
            .collect()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SparsePolynomial::one(&table()), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), at in point()) {
        let ea = a.evaluate(&at).unwrap();
        let eb = b.evaluate(&at).unwrap();
        prop_assert_eq!((&a * &b).evaluate(&at).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).evaluate(&at).unwrap(), ea + eb);
    }

    #[test]
    fn normalization_is_idempotent(a in poly()) {
        let once = a.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert_eq!(once.render(), a.render());
        prop_assert!(a.terms().all(|(_, c)| *c != rational(0)));
    }

    #[test]
    fn exact_division_recovers_factor(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), Some(a));
    }

    #[test]
    fn division_identity(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn derivative_product_rule(a in poly(), b in poly(), v in 0usize..4) {
        let lhs = (&a * &b).derivative(v);
        let rhs = &(&a.derivative(v) * &b) + &(&a * &b.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn mismatched_tables_are_rejected() {
    let a = SparsePolynomial::var(&VarTable::new(["x"]), 0);
    let b = SparsePolynomial::var(&VarTable::new(["y"]), 0);
    assert!(a.checked_add(&b).is_err());
    assert!(a.checked_mul(&b).is_err());
}

#[test]
fn canonical_rendering() {
    let v = VarTable::new(["x1", "x2"]);
    let x1 = SparsePolynomial::var(&v, 0);
    let x2 = SparsePolynomial::var(&v, 1);
    assert_eq!((&x1 + &x2).pow(2).render(), "x1^2 + 2*x1*x2 + x2^2");
    assert_eq!(SparsePolynomial::zero(&v).render(), "0");
}
