//! q-dispersion: the largest `α ≥ 0` such that `f(q^α x)` and `g(x)` have a
//! nontrivial common factor.

use std::collections::BTreeSet;

use crate::arith::resultant::shift_resultant;
use crate::arith::{BiPoly, PolyQ, PolyX, RatFuncQ};
use crate::error::{Error, Result};

/// A polynomial given as `unit * Π base_i^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: RatFuncQ,
    pub factors: Vec<(BiPoly, u32)>,
}

impl FactoredPoly {
    /// Normalises the bases to primitive form and moves factors of
    /// `x`-degree zero into the unit.
    pub fn new(unit: RatFuncQ, factors: Vec<(BiPoly, u32)>) -> Result<Self> {
        let mut unit = unit;
        let mut out: Vec<(BiPoly, u32)> = Vec::new();
        for (b, e) in factors {
            if b.is_zero() {
                return Err(Error::Precondition("zero factor".into()));
            }
            if e == 0 {
                continue;
            }
            let p = b.primitive();
            let c = b.to_polyx().lc() / p.to_polyx().lc();
            let c = c.pow(e as i64)?;
            if p.deg_x() == Some(0) {
                unit = &unit * &RatFuncQ::from_poly(p.coeff_x(0).pow(e)) * c;
                continue;
            }
            unit = &unit * &c;
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some(slot) => slot.1 += e,
                None => out.push((p, e)),
            }
        }
        Ok(FactoredPoly { unit, factors: out })
    }

    pub fn expand(&self) -> PolyX {
        let mut acc = PolyX::constant(self.unit.clone());
        for (b, e) in &self.factors {
            acc = &acc * &b.to_polyx().pow(*e);
        }
        acc
    }

    pub fn deg_x(&self) -> usize {
        self.factors.iter().map(|(b, e)| b.deg_x().unwrap_or(0) as usize * *e as usize).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DispersionResult {
    pub value: u64,
    /// `(α, gcd(f(q^α x), g(x)))` when the value is positive.
    pub witness: Option<(u64, PolyX)>,
}

impl DispersionResult {
    fn zero() -> Self {
        DispersionResult { value: 0, witness: None }
    }
}

/// `gcd(f(q^α x), g(x))`, monic.
pub fn shifted_gcd(f: &PolyX, g: &PolyX, alpha: u64) -> PolyX {
    f.subst_scale(&RatFuncQ::q_pow(alpha as i64)).gcd(g)
}

/// Dispersion of two irreducible primitive polynomials: `α` if `f(q^α x)`
/// is associate to `g`, else 0.
///
/// Comparing the extreme coefficients forces `q^{dα} = a_0 b_d / (b_0 a_d)`;
/// the single candidate is then confirmed by `b_0 f(q^α x) - a_0 g(x) = 0`.
pub fn dispersion_irreducible(f: &BiPoly, g: &BiPoly) -> Result<u64> {
    let (Some(d), Some(e)) = (f.deg_x(), g.deg_x()) else {
        return Err(Error::ConstantInX);
    };
    if d == 0 || e == 0 {
        return Err(Error::ConstantInX);
    }
    let a0 = f.coeff_x(0);
    if a0.is_zero() {
        return Err(Error::VanishesAtZero);
    }
    let b0 = g.coeff_x(0);
    if d != e || b0.is_zero() {
        return Ok(0);
    }
    let (ad, bd) = (f.coeff_x(d), g.coeff_x(d));
    let ratio = RatFuncQ::new(&a0 * &bd, &b0 * &ad)?;
    if !ratio.is_polynomial() || !ratio.num().is_monomial() || !num_traits::One::is_one(&ratio.num().lc()) {
        return Ok(0);
    }
    let m = ratio.num().degree().unwrap_or(0);
    if m % d as usize != 0 {
        return Ok(0);
    }
    let alpha = (m / d as usize) as u32;
    let shifted = f.shift_x(alpha);
    let lhs = &shifted * &BiPoly::from_polyq_x(&[b0]);
    let rhs = g * &BiPoly::from_polyq_x(&[a0]);
    Ok(if lhs == rhs { alpha as u64 } else { 0 })
}

/// Dispersion from factorizations into irreducible factors: the maximum of
/// the pairwise dispersions, and 0.
pub fn dispersion_factored(f: &FactoredPoly, g: &FactoredPoly) -> Result<DispersionResult> {
    if f.factors.iter().any(|(b, _)| b.coeff_x(0).is_zero()) {
        return Err(Error::VanishesAtZero);
    }
    if f.deg_x() < 1 || g.deg_x() < 1 {
        return Ok(DispersionResult::zero());
    }
    let mut best = DispersionResult::zero();
    for (fb, _) in &f.factors {
        for (gb, _) in &g.factors {
            if gb.coeff_x(0).is_zero() {
                continue;
            }
            let a = dispersion_irreducible(fb, gb)?;
            if a > best.value {
                best = DispersionResult {
                    value: a,
                    witness: Some((a, gb.to_polyx().monic())),
                };
            }
        }
    }
    Ok(best)
}

/// The cleared coefficients `r_i(q)` of `R(z) = res_x(f(z x), g(x))` (up to
/// a unit and a power of `z`) and the candidate shifts read off from their
/// `q`-degrees: every `α ≥ 1` with `R(q^α) = 0` makes two terms
/// `r_i q^{α i}` of top degree cancel, so `α = (deg r_i - deg r_j)/(j - i)`.
pub fn resultant_candidates(f: &PolyX, g: &PolyX) -> (Vec<PolyQ>, Vec<u64>) {
    let fc = BiPoly::primitive_from_polyx(f);
    let gc = BiPoly::primitive_from_polyx(g);
    let coeffs = |p: &BiPoly| -> Vec<PolyQ> { (0..=p.deg_x().unwrap_or(0)).map(|j| p.coeff_x(j)).collect() };
    let r = shift_resultant(&coeffs(&fc), &coeffs(&gc));
    let degs: Vec<(usize, usize)> = r.iter().enumerate().filter_map(|(i, c)| c.degree().map(|d| (i, d))).collect();
    let mut cands = BTreeSet::new();
    for (a, &(i, di)) in degs.iter().enumerate() {
        for &(j, dj) in &degs[a + 1..] {
            if di > dj && (di - dj) % (j - i) == 0 {
                cands.insert(((di - dj) / (j - i)) as u64);
            }
        }
    }
    (r, cands.into_iter().collect())
}

/// `R(q^α)` for coefficients `r_i` of `R`.
pub fn eval_at_q_power(r: &[PolyQ], alpha: u64) -> PolyQ {
    let mut acc = PolyQ::zero();
    for (i, c) in r.iter().enumerate() {
        acc = &acc + &c.shift(alpha as usize * i);
    }
    acc
}

/// Dispersion of arbitrary polynomials through the shift resultant.
/// Candidates are tried from the largest down; each is screened by
/// `R(q^α) = 0` and confirmed by an explicit gcd.
pub fn dispersion_resultant(f: &PolyX, g: &PolyX) -> Result<DispersionResult> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::Precondition("dispersion of the zero polynomial".into()));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::VanishesAtZero);
    }
    if f.degree() == Some(0) || g.degree() == Some(0) {
        return Ok(DispersionResult::zero());
    }
    let (r, cands) = resultant_candidates(f, g);
    for &a in cands.iter().rev() {
        if !eval_at_q_power(&r, a).is_zero() {
            continue;
        }
        let h = shifted_gcd(f, g, a);
        if h.degree().unwrap_or(0) > 0 {
            return Ok(DispersionResult {
                value: a,
                witness: Some((a, h)),
            });
        }
    }
    Ok(DispersionResult::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_triples(t)
    }

    #[test]
    fn irreducible_examples() {
        let f = bp(&[(1, 1, 2), (-1, 0, 0)]);
        let g = bp(&[(1, 5, 2), (-1, 0, 0)]);
        assert_eq!(dispersion_irreducible(&f, &g).unwrap(), 2);
        assert_eq!(dispersion_irreducible(&f, &f).unwrap(), 0);
        let f = bp(&[(1, 0, 1), (1, 0, 0)]);
        let g = bp(&[(1, 2, 1), (1, 0, 0)]);
        assert_eq!(dispersion_irreducible(&f, &g).unwrap(), 2);
        assert!(matches!(dispersion_irreducible(&bp(&[(1, 0, 1)]), &g), Err(Error::VanishesAtZero)));
    }

    #[test]
    fn resultant_path_small() {
        let f = bp(&[(1, 1, 2), (-1, 0, 0)]).to_polyx();
        let g = bp(&[(1, 5, 2), (-1, 0, 0)]).to_polyx();
        assert_eq!(dispersion_resultant(&f, &g).unwrap().value, 2);
        assert_eq!(dispersion_resultant(&f, &PolyX::one()).unwrap().value, 0);
    }
}
