use proptest::prelude::*;
use superharm::{Monomial, Parity, Polynomial, Rational, SuperspaceConfig};

fn cfg() -> SuperspaceConfig {
    SuperspaceConfig::new(2, 2)
}

/// A random polynomial of one fermionic parity.
fn arb_poly(parity: Option<Parity>) -> impl Strategy<Value = Polynomial> {
    let term = (
        prop::collection::vec(0u32..3, 2),
        prop::collection::btree_set(1usize..5, 0..4),
        -5i64..6,
        1i64..4,
    );
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        let mut p = Polynomial::zero(cfg());
        for (exps, thetas, num, den) in terms {
            let thetas: Vec<usize> = thetas.into_iter().collect();
            if let Some(want) = parity {
                if Parity::from_count(thetas.len()) != want {
                    continue;
                }
            }
            let mono = Monomial::from_parts(exps, &thetas).unwrap();
            p.add_term(mono, Rational::new(num, den));
        }
        p
    })
}

fn arb_parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

proptest! {
    #[test]
    fn associativity(a in arb_poly(None), b in arb_poly(None), c in arb_poly(None)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributivity(a in arb_poly(None), b in arb_poly(None), c in arb_poly(None)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn graded_commutativity(
        (pa, a) in arb_parity().prop_flat_map(|p| (Just(p), arb_poly(Some(p)))),
        (pb, b) in arb_parity().prop_flat_map(|p| (Just(p), arb_poly(Some(p)))),
    ) {
        let sign = Rational::from_integer(pa.koszul_sign(pb));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign));
    }

    #[test]
    fn odd_elements_square_to_zero(a in arb_poly(Some(Parity::Odd))) {
        // holds for odd monomials, and for sums since cross terms anticommute
        prop_assert!((&a * &a).is_zero());
    }

    #[test]
    fn components_resum(a in arb_poly(None)) {
        let total = a.degrees().into_iter().fold(Polynomial::zero(cfg()), |acc, k| &acc + &a.homogeneous_component(k));
        prop_assert_eq!(total, a);
    }
}
