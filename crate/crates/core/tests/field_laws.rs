use blackbox_core::field::{eval_at, rat, Poly, RatFunc};
use proptest::prelude::*;

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (
        prop::collection::vec(-5i64..=5, 1..4),
        prop::collection::vec(-5i64..=5, 1..3),
    )
        .prop_filter_map("nonzero denominator", |(n, d)| {
            let den = RatFunc::from_poly(Poly::from_ints(&d));
            RatFunc::from_poly(Poly::from_ints(&n)).try_div(&den).ok()
        })
}

proptest! {
    #[test]
    fn ring_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RatFunc::zero());
        prop_assert_eq!(&a * &RatFunc::one(), a.clone());
    }

    #[test]
    fn inverses(a in ratfunc()) {
        match a.inv() {
            Ok(inv) => prop_assert!((&a * &inv).is_one()),
            Err(_) => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn display_parses_back(a in ratfunc()) {
        let back: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), n in 1i64..20, d in 1i64..7) {
        let sigma = rat(n, d);
        if let (Ok(x), Ok(y)) = (eval_at(&a, &sigma), eval_at(&b, &sigma)) {
            prop_assert_eq!(eval_at(&(&a + &b), &sigma).unwrap(), &x + &y);
            if let Ok(p) = eval_at(&(&a * &b), &sigma) {
                prop_assert_eq!(p, &x * &y);
            }
        }
    }

    #[test]
    fn canonical_under_common_factors(a in ratfunc(), k in 1i64..5) {
        let f = RatFunc::from_poly(Poly::from_ints(&[k, 1]));
        let scaled = (&a * &f).try_div(&f).unwrap();
        prop_assert_eq!(scaled.num(), a.num());
        prop_assert_eq!(scaled.den(), a.den());
    }
}
