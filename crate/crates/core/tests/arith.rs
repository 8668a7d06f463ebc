use proptest::prelude::*;
use qdesing::arith::{BiPoly, GroebnerBasis, PolyQ, PolyX, RatFuncQ};

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 0..5).prop_map(|t| BiPoly::from_triples(&t))
}

fn polyq() -> impl Strategy<Value = PolyQ> {
    bipoly().prop_map(|p| p.coeff_x(0))
}

fn ratq() -> impl Strategy<Value = RatFuncQ> {
    (polyq(), polyq()).prop_filter_map("nonzero denominator", |(a, b)| RatFuncQ::new(a, b).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratq(), b in ratq(), c in ratq()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn gcd_divides_both(a in polyq(), b in polyq(), c in polyq()) {
        let (x, y) = (&a * &c, &b * &c);
        let g = x.gcd(&y);
        if !g.is_zero() {
            prop_assert!(g.divides(&x) && g.divides(&y));
            if !c.is_zero() {
                prop_assert!(c.divides(&g));
            }
        }
    }

    #[test]
    fn bipoly_exact_division(a in bipoly(), b in bipoly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn sigma_composes(p in bipoly(), j in -3i64..=3, k in -3i64..=3) {
        let x = p.to_polyx();
        prop_assert_eq!(x.sigma_pow(j).sigma_pow(k), x.sigma_pow(j + k));
    }

    #[test]
    fn polyx_divrem(a in bipoly(), b in bipoly()) {
        prop_assume!(!b.is_zero());
        let (a, b) = (a.to_polyx(), b.to_polyx());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.deg() < b.deg());
    }

    #[test]
    fn groebner_membership(a in bipoly(), b in bipoly(), h in bipoly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let gb = GroebnerBasis::compute(&[a.clone(), b.clone()]);
        prop_assert!(gb.verify_cofactors());
        prop_assert!(gb.contains(&(&(&h * &a) + &b)));
    }
}

#[test]
fn xgcd_bezout() {
    let f = BiPoly::from_triples(&[(1, 0, 2), (-1, 1, 0)]).to_polyx();
    let g = BiPoly::from_triples(&[(1, 0, 1), (1, 0, 0)]).to_polyx();
    let (d, s, t) = f.xgcd(&g);
    assert_eq!(&(&s * &f) + &(&t * &g), d);
    assert!(d.is_one() || d.degree() == Some(0));
}

#[test]
fn laurent_detection() {
    let q = RatFuncQ::q();
    assert!(RatFuncQ::q_pow(-3).is_laurent());
    assert!(!(&RatFuncQ::one() / &(&q - &RatFuncQ::one())).is_laurent());
    assert_eq!(PolyX::x().sigma_pow(2), PolyX::monomial(RatFuncQ::q_pow(2), 1));
}
