//! Randomized algebraic properties of the exact scalar arithmetic.

use std::collections::BTreeMap;

use lamdet::scalar::{parse, var, Monomial, Poly, Scalar};
use num::{BigInt, BigRational};
use proptest::prelude::*;

/// Small random polynomials in x, y with rational coefficients.
fn poly_strategy() -> impl Strategy<Value = Poly> {
    let term = (
        -6i64..7,
        1i64..4,
        0u32..3,
        0u32..3,
    );
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        let x = var("px");
        let y = var("py");
        let mut acc = Poly::zero();
        for (num, den, ex, ey) in terms {
            let m = Monomial::var(x, ex).mul(&Monomial::var(y, ey));
            let c = BigRational::new(BigInt::from(num), BigInt::from(den));
            acc = acc.add(&Poly::term(m, c));
        }
        acc
    })
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (poly_strategy(), poly_strategy()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Scalar::from_polys(n, d).ok()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in scalar_strategy(), g in poly_strategy()) {
        // multiplying numerator and denominator by a common factor does
        // not change the canonical representative
        prop_assume!(!g.is_zero());
        let blown = Scalar::from_polys(a.numerator().mul(&g), a.denominator().mul(&g)).unwrap();
        prop_assert_eq!(&blown, &a);
        // and rebuilding from the canonical parts is the identity
        let rebuilt = Scalar::from_polys(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn substitution_commutes_with_arithmetic(
        a in scalar_strategy(),
        b in scalar_strategy(),
        xn in -5i64..6,
        xd in 1i64..4,
    ) {
        let mut bindings = BTreeMap::new();
        bindings.insert(var("px"), Scalar::ratio(xn, xd));
        let sa = a.substitute(&bindings);
        let sb = b.substitute(&bindings);
        let (sa, sb) = match (sa, sb) {
            (Ok(sa), Ok(sb)) => (sa, sb),
            _ => return Ok(()), // substitution hit a pole
        };
        if let Ok(sum) = a.add(&b).substitute(&bindings) {
            prop_assert_eq!(sum, sa.add(&sb));
        }
        if let Ok(prod) = a.mul(&b).substitute(&bindings) {
            prop_assert_eq!(prod, sa.mul(&sb));
        }
        if !b.is_zero() {
            if let (Ok(quot), false) = (a.div(&b), sb.is_zero()) {
                if let Ok(sq) = quot.substitute(&bindings) {
                    prop_assert_eq!(sq, sa.div(&sb).unwrap());
                }
            }
        }
    }

    #[test]
    fn print_parse_round_trip(a in scalar_strategy()) {
        let text = a.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn powers_match_repeated_multiplication(a in scalar_strategy(), e in 0i64..5) {
        let mut by_mul = Scalar::one();
        for _ in 0..e {
            by_mul = by_mul.mul(&a);
        }
        prop_assert_eq!(a.pow(e).unwrap(), by_mul);
    }
}
