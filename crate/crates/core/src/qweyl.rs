//! The first q-Weyl algebra `K(q)[x][D]` with `D x = q x D`, and operators
//! with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{BiPoly, PolyQ, PolyX, RatFuncQ, RatFuncX};
use crate::error::{Error, Result};

/// `Σ ℓ_i D^i` with polynomial coefficients over `K(q)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QWeylOp {
    coeffs: Vec<PolyX>,
}

/// `σ^k` on `K(q)[x]`: the coefficient of `x^j` is multiplied by `q^(k j)`.
pub fn sigma_pow(f: &PolyX, k: i64) -> PolyX {
    f.sigma_pow(k)
}

impl QWeylOp {
    pub fn new(mut coeffs: Vec<PolyX>) -> Self {
        while coeffs.last().is_some_and(PolyX::is_zero) {
            coeffs.pop();
        }
        QWeylOp { coeffs }
    }

    pub fn zero() -> Self {
        QWeylOp::default()
    }

    pub fn one() -> Self {
        Self::from_poly(PolyX::one())
    }

    /// The shift operator `D`.
    pub fn d() -> Self {
        Self::new(vec![PolyX::zero(), PolyX::one()])
    }

    pub fn from_poly(p: PolyX) -> Self {
        Self::new(vec![p])
    }

    /// Coefficients given as bivariate polynomials in `q, x`.
    pub fn from_bipolys(cs: &[BiPoly]) -> Self {
        Self::new(cs.iter().map(BiPoly::to_polyx).collect())
    }

    /// Coefficients as bivariate polynomials, if they all lie in `Q[q][x]`.
    pub fn to_bipolys(&self) -> Option<Vec<BiPoly>> {
        self.coeffs.iter().map(BiPoly::try_from_polyx).collect()
    }

    pub fn coeffs(&self) -> &[PolyX] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PolyX {
        self.coeffs.get(i).cloned().unwrap_or_else(PolyX::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in `D`; the zero operator has order `-1`.
    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> PolyX {
        self.coeffs.last().cloned().unwrap_or_else(PolyX::zero)
    }

    /// `ℓ_0`.
    pub fn tc(&self) -> PolyX {
        self.coeff(0)
    }

    /// Left multiplication by a polynomial.
    pub fn lmul_poly(&self, p: &PolyX) -> Self {
        Self::new(self.coeffs.iter().map(|c| p * c).collect())
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// `D^k * self`.
    pub fn shift_left(&self, k: usize) -> Self {
        let mut cs = vec![PolyX::zero(); k];
        cs.extend(self.coeffs.iter().map(|c| c.sigma_pow(k as i64)));
        Self::new(cs)
    }

    /// Noncommutative product `self * o`.
    pub fn mul(&self, o: &QWeylOp) -> QWeylOp {
        if self.is_zero() || o.is_zero() {
            return QWeylOp::zero();
        }
        let mut out = vec![PolyX::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * &b.sigma_pow(i as i64));
                }
            }
        }
        QWeylOp::new(out)
    }

    pub fn add(&self, o: &QWeylOp) -> QWeylOp {
        let n = self.coeffs.len().max(o.coeffs.len());
        QWeylOp::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QWeylOp {
        QWeylOp::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &QWeylOp) -> QWeylOp {
        self.add(&o.neg())
    }

    /// `D^{-t} P`, where `t` is the lowest index with `ℓ_t ≠ 0`.
    pub fn normalize_trailing(&self) -> Result<QWeylOp> {
        let t = self.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroOperator)?;
        Ok(QWeylOp::new(self.coeffs[t..].iter().map(|c| c.sigma_pow(-(t as i64))).collect()))
    }

    /// Reflect the operator so that its trailing coefficient becomes the
    /// leading one: coefficient `j` is `ℓ_{r-j}(1/q, q^r x)`.
    ///
    /// This is `D^{-r} P` rewritten in `D^{-1}`, followed by `q -> 1/q`, which
    /// turns `D^{-1}` back into a shift with commutation `D x = q x D`. The map
    /// is an involution and respects left ideals, so desingularizing the
    /// mirror image desingularizes the trailing coefficient.
    pub fn mirror(&self) -> Result<QWeylOp> {
        if self.is_zero() {
            return Err(Error::ZeroOperator);
        }
        if self.tc().is_zero() {
            return Err(Error::ZeroTrailing);
        }
        let r = self.order();
        Ok(QWeylOp::new(
            self.coeffs.iter().rev().map(|c| c.sigma_pow(-r).subst_inv_q()).collect(),
        ))
    }

    /// Unique representative up to units of `K(q)`: coefficients in `Z[q][x]`
    /// with trivial content in `Q[q]`, integer content 1, and a positive
    /// leading term (lex, `x` before `q`) of the leading coefficient.
    pub fn primitive_normalize(&self) -> QWeylOp {
        if self.is_zero() {
            return QWeylOp::zero();
        }
        let mut den = PolyQ::one();
        for c in &self.coeffs {
            for a in c.coeffs() {
                den = den.lcm(a.den());
            }
        }
        let cleared: Vec<Vec<PolyQ>> = self
            .coeffs
            .iter()
            .map(|c| c.coeffs().iter().map(|a| a.num() * &den.exact_div(a.den())).collect())
            .collect();
        let mut content = PolyQ::zero();
        for c in cleared.iter().flatten() {
            if !c.is_zero() {
                content = content.gcd(c);
                if content.is_one() {
                    break;
                }
            }
        }
        let polys: Vec<BiPoly> = cleared
            .iter()
            .map(|c| BiPoly::from_polyq_x(&c.iter().map(|a| a.exact_div(&content)).collect::<Vec<_>>()))
            .collect();
        let mut num = BigInt::zero();
        let mut dens = BigInt::one();
        for p in &polys {
            for (_, c) in p.terms() {
                num = num.gcd(c.numer());
                dens = dens.lcm(c.denom());
            }
        }
        let mut k = BigRational::new(dens, num);
        if polys.last().unwrap().lc().is_negative() {
            k = -k;
        }
        QWeylOp::new(polys.iter().map(|p| p.scale(&k).to_polyx()).collect())
    }

    /// Substitute `x -> q^i x` in every coefficient (operator conjugation by `D^i`).
    pub fn sigma_coeffs(&self, k: i64) -> QWeylOp {
        QWeylOp::new(self.coeffs.iter().map(|c| c.sigma_pow(k)).collect())
    }

    /// `x`-primitive: `x` does not divide every coefficient.
    pub fn is_x_primitive(&self) -> bool {
        self.coeffs.iter().any(|c| !c.is_zero() && c.x_valuation() == Some(0))
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            s.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest.trim_start());
        } else {
            s.push_str(" + ");
            s.push_str(&t);
        }
    }
    s
}

/// Render a coefficient times `D^i`; `coef` is the coefficient's own text
/// and `single` tells whether it is a single signed term.
pub(crate) fn d_term(coef: &str, single: bool, i: usize) -> String {
    let d = match i {
        0 => String::new(),
        1 => "D".to_string(),
        _ => format!("D^{i}"),
    };
    if i == 0 {
        return coef.to_string();
    }
    if single {
        match coef {
            "1" => d,
            "-1" => format!("-{d}"),
            _ => format!("{coef}*{d}"),
        }
    } else {
        format!("({coef})*{d}")
    }
}

impl QWeylOp {
    /// Text form using `xname` for the second variable.
    pub fn display_with(&self, xname: &str) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (s, single) = match BiPoly::try_from_polyx(c) {
                Some(b) => (b.display_with(xname), b.num_terms() == 1),
                None => (c.to_string(), false),
            };
            terms.push(d_term(&s, single, i));
        }
        join_terms(terms)
    }
}

impl fmt::Display for QWeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl fmt::Debug for QWeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QWeylOp({self})")
    }
}

/// Operator with rational coefficients, stored as `(1/den) * num` with a
/// monic common denominator coprime to the content of `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatOp {
    num: QWeylOp,
    den: PolyX,
}

impl RatOp {
    pub fn zero() -> Self {
        RatOp::from_op(QWeylOp::zero())
    }

    pub fn from_op(p: QWeylOp) -> Self {
        RatOp { num: p, den: PolyX::one() }
    }

    pub fn new(num: QWeylOp, den: PolyX) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatOp::zero());
        }
        let mut g = den.clone();
        for c in num.coeffs() {
            if g.is_constant() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        let g = if g.is_constant() { PolyX::one() } else { g };
        let den = den.div_exact(&g).expect("gcd divides");
        let num = QWeylOp::new(num.coeffs().iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect());
        let inv = den.lc().inv()?;
        Ok(RatOp {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn num(&self) -> &QWeylOp {
        &self.num
    }

    pub fn den(&self) -> &PolyX {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn order(&self) -> i64 {
        self.num.order()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying polynomial operator when the denominator is trivial.
    pub fn as_op(&self) -> Option<&QWeylOp> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn to_fracs(&self) -> Vec<RatFuncX> {
        self.num
            .coeffs()
            .iter()
            .map(|c| RatFuncX::new(c.clone(), self.den.clone()).expect("nonzero denominator"))
            .collect()
    }

    pub fn from_fracs(fs: &[RatFuncX]) -> RatOp {
        let mut den = PolyX::one();
        for f in fs {
            if !f.is_zero() && !f.den().is_one() {
                let g = den.gcd(f.den());
                den = &den.div_exact(&g).unwrap() * f.den();
            }
        }
        let num: Vec<PolyX> = fs
            .iter()
            .map(|f| {
                if f.is_zero() {
                    PolyX::zero()
                } else {
                    f.num() * &den.div_exact(f.den()).unwrap()
                }
            })
            .collect();
        RatOp::new(QWeylOp::new(num), den).expect("nonzero denominator")
    }

    pub fn mul(&self, o: &RatOp) -> RatOp {
        RatOp::from_fracs(&frac_mul(&self.to_fracs(), &o.to_fracs()))
    }

    pub fn add(&self, o: &RatOp) -> RatOp {
        let (a, b) = (self.to_fracs(), o.to_fracs());
        let n = a.len().max(b.len());
        let z = RatFuncX::zero();
        RatOp::from_fracs(
            &(0..n)
                .map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z)))
                .collect::<Vec<_>>(),
        )
    }

    pub fn neg(&self) -> RatOp {
        RatOp {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatOp) -> RatOp {
        self.add(&o.neg())
    }
}

impl From<QWeylOp> for RatOp {
    fn from(p: QWeylOp) -> Self {
        RatOp::from_op(p)
    }
}

impl fmt::Display for RatOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "(1/({}))*({})", self.den, self.num)
        }
    }
}

impl fmt::Debug for RatOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatOp({self})")
    }
}

pub(crate) fn frac_mul(a: &[RatFuncX], b: &[RatFuncX]) -> Vec<RatFuncX> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFuncX::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(&y.sigma_pow(i as i64)));
            }
        }
    }
    out
}

/// `Q * P` for a rational left factor.
pub fn op_mul(q: &RatOp, p: &RatOp) -> RatOp {
    q.mul(p)
}

/// Right division `T = Q P + R` with `ord R < ord P`.
pub fn right_divide(t: &RatOp, p: &QWeylOp) -> Result<(RatOp, RatOp)> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let r = p.order() as usize;
    let pf: Vec<RatFuncX> = p.coeffs().iter().map(|c| RatFuncX::from_poly(c.clone())).collect();
    let mut rem = t.to_fracs();
    let deg = rem.len();
    if deg <= r {
        return Ok((RatOp::zero(), t.clone()));
    }
    let mut quo = vec![RatFuncX::zero(); deg - r];
    for m in (r..deg).rev() {
        if rem[m].is_zero() {
            continue;
        }
        let s = (m - r) as i64;
        let c = rem[m].div(&pf[r].sigma_pow(s)).expect("nonzero leading coefficient");
        for (j, pj) in pf.iter().enumerate() {
            if !pj.is_zero() {
                let k = m - r + j;
                rem[k] = rem[k].sub(&c.mul(&pj.sigma_pow(s)));
            }
        }
        quo[m - r] = c;
    }
    rem.truncate(r);
    Ok((RatOp::from_fracs(&quo), RatOp::from_fracs(&rem)))
}

/// Whether `t` lies in the left ideal generated by `p` over `K(q, x)[D]`.
pub fn right_divisible(t: &QWeylOp, p: &QWeylOp) -> Result<bool> {
    Ok(right_divide(&RatOp::from_op(t.clone()), p)?.1.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_triples(t)
    }

    fn op(cs: &[BiPoly]) -> QWeylOp {
        QWeylOp::from_bipolys(cs)
    }

    /// `q^2 x (q^2 - x) D - (1 - x)(1 - q x)`
    fn ex_p() -> QWeylOp {
        op(&[
            &bp(&[(1, 0, 1), (-1, 0, 0)]) * &bp(&[(-1, 1, 1), (1, 0, 0)]),
            bp(&[(1, 4, 1), (-1, 2, 2)]),
        ])
    }

    #[test]
    fn commutation() {
        let x = QWeylOp::from_poly(PolyX::x());
        assert_eq!(QWeylOp::d().mul(&x), op(&[BiPoly::zero(), bp(&[(1, 1, 1)])]));
    }

    #[test]
    fn intro_factorization() {
        let p = op(&[bp(&[(-1, 1, 1), (1, 0, 0)]), bp(&[(1, 0, 1), (-1, 0, 0)])]);
        let left = RatOp::new(op(&[bp(&[(-1, 1, 0)]), BiPoly::one()]), bp(&[(1, 1, 1), (-1, 0, 0)]).to_polyx()).unwrap();
        let prod = op_mul(&left, &RatOp::from_op(p));
        let expected = op(&[bp(&[(1, 1, 0)]), bp(&[(-1, 1, 0), (-1, 0, 0)]), BiPoly::one()]);
        assert_eq!(prod.as_op(), Some(&expected));
    }

    #[test]
    fn division_by_self() {
        let p = ex_p();
        let (q, r) = right_divide(&RatOp::from_op(p.clone()), &p).unwrap();
        assert_eq!(q.as_op(), Some(&QWeylOp::one()));
        assert!(r.is_zero());
    }

    #[test]
    fn trailing_normalization() {
        let qx = op(&[BiPoly::zero(), bp(&[(1, 1, 1)])]);
        assert_eq!(qx.normalize_trailing().unwrap(), QWeylOp::from_poly(PolyX::x()));
        assert!(QWeylOp::zero().normalize_trailing().is_err());
    }

    #[test]
    fn mirror_is_involution() {
        let p = ex_p();
        assert_eq!(p.mirror().unwrap().mirror().unwrap(), p);
        let dm1 = op(&[bp(&[(-1, 0, 0)]), BiPoly::one()]);
        assert_eq!(dm1.mirror().unwrap().primitive_normalize(), dm1);
    }

    #[test]
    fn normalization_removes_units() {
        let p = op(&[bp(&[(-1, 0, 0)]), BiPoly::one()]);
        let scaled = p.scale(&RatFuncQ::new(PolyQ::one(), PolyQ::from_ints(&[-1, 1])).unwrap());
        assert_eq!(scaled.primitive_normalize(), p);
        assert_eq!(p.scale(&RatFuncQ::q_pow(3)).primitive_normalize(), p);
    }

    #[test]
    fn display_form() {
        assert_eq!(ex_p().to_string(), "(-q^2*x^2 + q^4*x)*D - q*x^2 + q*x + x - 1");
    }
}
