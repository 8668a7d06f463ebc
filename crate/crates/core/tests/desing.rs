use qdesing::arith::{PolyX, RatFuncQ, RatFuncX};
use qdesing::desing::{
    coefficient_ideal, desingularize, order_bound, order_bound_details, proper_quotient_form, same_module,
    shifted_generators, submodule_basis, weyl_closure, Side,
};
use qdesing::qweyl::{right_divide, right_divisible};
use qdesing::{text, Error, QWeylOp, RatOp};

fn op(src: &str) -> QWeylOp {
    text::parse_operator(&format!("kind: operator\nvars: q, x\n{src}\n")).unwrap()
}

fn px(src: &str) -> PolyX {
    text::parse_poly_expr(src).unwrap().to_polyx()
}

const P: &str = "q^2*x*(q^2 - x)*D - (1 - x)*(1 - q*x)";
const L: &str = "q^12*x*D^3 + q^6*(q^5*x + q^4*x + q^3*x - q*x - x - 1)*D^2 \
    + (q - 1)*q^2*(q + 1)*(q^2 + q + 1)*(q^3*x + q*x - x - 1)*D \
    + (q - 1)^2*(q + 1)*(q^2 + q + 1)*(q*x - 1)";

#[test]
fn bound_details() {
    let b = order_bound_details(&op(P), None).unwrap();
    assert_eq!((b.bound, b.order, b.x_power), (4, 1, 1));
    assert_eq!(b.dispersion.value, 3);
}

#[test]
fn factored_leading_coefficient_gives_same_bound() {
    let f = text::parse_factored("kind: factored-poly\nvars: q, x\n-q^2*x*(x - q^2)\n").unwrap();
    assert_eq!(order_bound(&op(P), Some(&f)).unwrap(), 4);
    let wrong = text::parse_factored("kind: factored-poly\nvars: q, x\nx*(x - q^2)\n").unwrap();
    assert!(matches!(order_bound(&op(P), Some(&wrong)), Err(Error::Precondition(_))));
}

#[test]
fn quotient_of_desingularized_operator() {
    let p = op(P);
    let l = op(L);
    let (q, r) = right_divide(&RatOp::from_op(l), &p).unwrap();
    assert!(r.is_zero());
    let den = px("x - 1");
    let frac = |n: &str| RatFuncX::new(px(n), den.clone()).unwrap();
    let want = RatOp::from_fracs(&[frac("q^5 - q^3 - q^2 + 1"), frac("q^6 + q^5 - q^3 - q^2"), frac("q^6")]);
    assert!(q.add(&want).is_zero() || q.sub(&want).is_zero(), "quotient {q}");
}

#[test]
fn closure_elements_are_left_multiples() {
    let p = op(P);
    for g in &submodule_basis(&p, 4).unwrap().generators {
        assert!(right_divisible(g, &p).unwrap(), "{g}");
    }
}

#[test]
fn submodule_is_spanned_by_operator_and_desingularization() {
    let p = op(P);
    let basis = submodule_basis(&p, 3).unwrap().generators;
    assert_eq!(basis.len(), 3);
    assert!(same_module(&basis, &shifted_generators(&[p.clone(), op(L)], 3), 3));
    assert!(!same_module(&basis, &shifted_generators(&[p], 3), 3));
}

#[test]
fn ideal_sources_carry_generators() {
    let ideal = coefficient_ideal(&op(P), 3).unwrap();
    assert_eq!(ideal.generators.len(), 1);
    assert_eq!(ideal.sources[0].order(), 3);
    assert_eq!(ideal.sources[0].lc(), ideal.generators[0].to_polyx());
}

#[test]
fn closure_uses_order_bound() {
    assert_eq!(weyl_closure(&op(P)).unwrap().k, 4);
}

#[test]
fn proper_form_rejects_non_members() {
    assert!(proper_quotient_form(&op("D^3 + x"), &op(P)).is_err());
}

#[test]
fn trailing_side_mirrors() {
    let p = op(P);
    let lead = desingularize(&p.mirror().unwrap(), Side::Leading, None).unwrap();
    let trail = desingularize(&p, Side::Trailing, None).unwrap();
    assert_eq!(trail.operator.mirror().unwrap().primitive_normalize(), lead.operator);
    assert!(right_divisible(&trail.operator, &p).unwrap());
    assert_eq!(trail.coefficient.to_polyx(), trail.operator.tc());
}

#[test]
fn twist_tightness() {
    let p = op("q^2*x^2*(q*x^2 - 1)*D^2 \
        - (q*x - 1)*(q*x + 1)*(q^4*x^4 - q^3*x^3 - q^3*x^2 - q*x^2 - q*x + 1)*D \
        + q^2*x^2*(q^3*x^2 - 1)");
    let r = desingularize(&p, Side::Leading, None).unwrap();
    assert_eq!(r.bound, 3);
    assert_eq!(r.operator.order(), 3);
    let degs: Vec<u32> = r.tightness.values().map(|g| g.deg_x().unwrap()).collect();
    assert_eq!(degs, vec![4, 2]);
    assert!(right_divisible(&r.operator, &p).unwrap());
}

#[test]
fn preconditions() {
    assert!(matches!(desingularize(&op("x*D"), Side::Leading, None), Err(Error::ZeroTrailing)));
    assert!(matches!(desingularize(&op("x + 1"), Side::Leading, None), Err(Error::OrderTooSmall(0))));
    assert!(matches!(submodule_basis(&op(P), 0), Err(Error::CapBelowOrder { k: 0, r: 1 })));
    let _ = RatFuncQ::one();
}
