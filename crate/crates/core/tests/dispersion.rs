use proptest::prelude::*;
use qdesing::arith::{BiPoly, RatFuncQ};
use qdesing::dispersion::{dispersion_factored, dispersion_irreducible, dispersion_resultant, FactoredPoly};
use qdesing::Error;

fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
    BiPoly::from_triples(t)
}

/// `x^2 - c q^k` with `c` not a square is irreducible over `Q(q)`.
fn quadratic() -> impl Strategy<Value = BiPoly> {
    (prop::sample::select(vec![2i64, 3, 5, 7]), 0u32..4).prop_map(|(c, k)| bp(&[(1, 0, 2), (-c, k, 0)]))
}

fn linear() -> impl Strategy<Value = BiPoly> {
    (1i64..4, 0u32..3, prop::sample::select(vec![-2i64, -1, 1, 3]), 0u32..3)
        .prop_map(|(a, i, b, j)| bp(&[(a, i, 1), (b, j, 0)]))
}

#[test]
fn shifted_quadratic() {
    let f = bp(&[(1, 1, 2), (-1, 0, 0)]);
    let g = bp(&[(1, 5, 2), (-1, 0, 0)]);
    assert_eq!(dispersion_irreducible(&f, &g).unwrap(), 2);
    let r = dispersion_resultant(&f.to_polyx(), &g.to_polyx()).unwrap();
    assert_eq!(r.value, 2);
    let (alpha, gcd) = r.witness.unwrap();
    assert_eq!(alpha, 2);
    assert_eq!(gcd.degree(), Some(2));
}

#[test]
fn no_common_shift() {
    let f = bp(&[(1, 0, 1), (1, 0, 0)]);
    let g = bp(&[(1, 0, 1), (2, 0, 0)]);
    assert_eq!(dispersion_resultant(&f.to_polyx(), &g.to_polyx()).unwrap().value, 0);
}

#[test]
fn vanishing_at_zero_is_rejected() {
    let f = bp(&[(1, 0, 2), (1, 0, 1)]);
    let g = bp(&[(1, 0, 1), (1, 0, 0)]);
    assert!(matches!(dispersion_resultant(&f.to_polyx(), &g.to_polyx()), Err(Error::VanishesAtZero)));
}

#[test]
fn factored_unit_collects_constants() {
    let f = FactoredPoly::new(RatFuncQ::one(), vec![(bp(&[(2, 1, 1), (4, 0, 0)]), 2), (bp(&[(3, 2, 0)]), 1)]).unwrap();
    assert_eq!(f.factors.len(), 1);
    assert_eq!(f.deg_x(), 2);
    let direct = &bp(&[(2, 1, 1), (4, 0, 0)]).pow(2) * &bp(&[(3, 2, 0)]);
    assert_eq!(f.expand(), direct.to_polyx());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn shift_is_recovered(f in prop_oneof![quadratic(), linear()], a in 0u32..5) {
        let g = f.shift_x(a);
        prop_assert_eq!(dispersion_irreducible(&f, &g).unwrap(), a as u64);
        prop_assert_eq!(dispersion_resultant(&f.to_polyx(), &g.to_polyx()).unwrap().value, a as u64);
    }

    #[test]
    fn factored_matches_resultant(
        fs in prop::collection::vec(prop_oneof![quadratic(), linear()], 1..3),
        gs in prop::collection::vec(prop_oneof![quadratic(), linear()], 0..2),
        shifts in prop::collection::vec(0u32..4, 2),
    ) {
        let mut gs = gs;
        for (f, a) in fs.iter().zip(&shifts) {
            gs.push(f.shift_x(*a));
        }
        let one = RatFuncQ::one();
        let ff = FactoredPoly::new(one.clone(), fs.into_iter().map(|b| (b, 1)).collect()).unwrap();
        let gg = FactoredPoly::new(one, gs.into_iter().map(|b| (b, 1)).collect()).unwrap();
        let a = dispersion_factored(&ff, &gg).unwrap().value;
        let b = dispersion_resultant(&ff.expand(), &gg.expand()).unwrap().value;
        prop_assert_eq!(a, b);
    }
}
