use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use pcf_moments::exactnum::{parse_rational, quad_sign, rat, QuadElem, QuadField, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// A few squarefree radicands, a non-integer one, and two perfect squares.
fn field() -> impl Strategy<Value = Arc<QuadField>> {
    prop::sample::select(vec![
        (2, 1),
        (5, 1),
        (7, 1),
        (252, 1),
        (3, 5),
        (64, 9),
        (4, 1),
    ])
    .prop_map(|(n, d)| QuadField::new(rat(n, d)).unwrap())
}

fn elems(k: usize) -> impl Strategy<Value = Vec<QuadElem>> {
    (
        field(),
        prop::collection::vec((small_rational(), small_rational()), k),
    )
        .prop_map(|(f, parts)| {
            parts
                .into_iter()
                .map(|(p, r)| QuadElem::new(&f, p, r))
                .collect()
        })
}

/// Sign read off a decimal string.
fn decimal_sign(s: &str) -> Ordering {
    if s.starts_with('-') {
        Ordering::Less
    } else if s.bytes().any(|b| (b'1'..=b'9').contains(&b)) {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

proptest! {
    #[test]
    fn addition_and_multiplication_associate(v in elems(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(&(x + y) + z, x + &(y + z));
        prop_assert_eq!(&(x * y) * z, x * &(y * z));
    }

    #[test]
    fn multiplication_distributes(v in elems(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(x * &(y + z), &(x * y) + &(x * z));
    }

    #[test]
    fn inverse_round_trips(v in elems(1)) {
        let x = &v[0];
        prop_assume!(!x.is_zero());
        prop_assert_eq!(x * &x.recip().unwrap(), QuadElem::one(x.field()));
        prop_assert_eq!(x / x, QuadElem::one(x.field()));
    }

    #[test]
    fn sign_is_multiplicative(v in elems(2)) {
        let (x, y) = (&v[0], &v[1]);
        prop_assert_eq!(quad_sign(&(x * y)), quad_sign(x) * quad_sign(y));
    }

    #[test]
    fn sign_matches_decimal(v in elems(1)) {
        let x = &v[0];
        // nonzero x has |x| = |norm(x)| / |conj(x)|, far above 1e-30 at these sizes
        prop_assert_eq!(x.sign(), decimal_sign(&x.to_decimal(30)));
    }

    #[test]
    fn decimal_is_within_half_ulp(v in elems(1), digits in 1usize..20) {
        let x = &v[0];
        let shown = QuadElem::from_rational(x.field(), parse_rational(&x.to_decimal(digits)).unwrap());
        let half_ulp = Rational::new(BigInt::from(1), BigInt::from(2) * BigInt::from(10).pow(digits as u32));
        let gap = (&shown - x).abs();
        prop_assert!(gap <= QuadElem::from_rational(x.field(), half_ulp));
    }

    #[test]
    fn degenerate_fields_have_no_surd(p in small_rational(), r in small_rational()) {
        let f = QuadField::new(rat(64, 9)).unwrap();
        let x = QuadElem::new(&f, p, r);
        prop_assert!(x.as_rational().is_some());
        prop_assert!((&x * &x).as_rational().is_some());
    }

    #[test]
    fn display_round_trips(v in elems(1)) {
        let x = &v[0];
        prop_assert_eq!(QuadElem::parse(x.field(), &x.to_string()).unwrap(), x.clone());
    }

    #[test]
    fn norm_is_multiplicative(v in elems(2)) {
        let (x, y) = (&v[0], &v[1]);
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
    }
}
