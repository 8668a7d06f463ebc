//! Polynomials in `x` over `K(q)`, and their fractions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polyq::{forward_owned, pow_str, PolyQ};
use super::ratfunc::RatFuncQ;
use crate::error::{Error, Result};

/// Element of `K(q)[x]`, dense in `x`. The leading entry is nonzero unless
/// the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<RatFuncQ>,
}

impl PolyX {
    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFuncQ::one())
    }

    pub fn x() -> Self {
        Self::monomial(RatFuncQ::one(), 1)
    }

    pub fn constant(c: RatFuncQ) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: RatFuncQ, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![RatFuncQ::zero(); e + 1];
        coeffs[e] = c;
        PolyX { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFuncQ>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn coeffs(&self) -> &[RatFuncQ] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RatFuncQ {
        self.coeffs.get(j).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> RatFuncQ {
        self.coeffs.last().cloned().unwrap_or_else(RatFuncQ::zero)
    }

    /// Multiplicity of `x` as a factor.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyX {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![RatFuncQ::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyX { coeffs }
    }

    /// Divide out the largest power of `x`; returns `(e, self / x^e)`.
    pub fn strip_x(&self) -> (usize, PolyX) {
        match self.x_valuation() {
            None => (0, self.clone()),
            Some(v) => (v, PolyX::from_coeffs(self.coeffs[v..].to_vec())),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// `f(x) -> f(c x)`.
    pub fn subst_scale(&self, c: &RatFuncQ) -> Self {
        let mut pw = RatFuncQ::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        PolyX::from_coeffs(out)
    }

    /// The q-shift `sigma^k`: the coefficient of `x^j` is multiplied by `q^(k j)`.
    pub fn sigma_pow(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        PolyX::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, a)| a * &RatFuncQ::q_pow(k * j as i64))
                .collect(),
        )
    }

    /// Substitution `q -> 1/q` in every coefficient.
    pub fn subst_inv_q(&self) -> Self {
        PolyX {
            coeffs: self.coeffs.iter().map(RatFuncQ::subst_inv_q).collect(),
        }
    }

    pub fn eval(&self, at: &RatFuncQ) -> RatFuncQ {
        let mut acc = RatFuncQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn divrem(&self, d: &PolyX) -> Result<(PolyX, PolyX)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((PolyX::zero(), self.clone()));
        }
        let inv_lc = d.lc().inv()?;
        if dd == 0 {
            return Ok((self.scale(&inv_lc), PolyX::zero()));
        }
        let mut r = self.coeffs.clone();
        let mut quot = vec![RatFuncQ::zero(); r.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &r[i + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[i + j] = &r[i + j] - &(&c * dc);
                }
            }
            quot[i] = c;
        }
        r.truncate(dd);
        Ok((PolyX::from_coeffs(quot), PolyX::from_coeffs(r)))
    }

    pub fn rem(&self, d: &PolyX) -> Result<PolyX> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &PolyX) -> Option<PolyX> {
        let (quo, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(quo)
    }

    pub fn divides(&self, other: &PolyX) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd over `K(q)`; `gcd(0, 0) = 0`.
    /// Monic gcd, computed by a primitive pseudo-remainder sequence over
    /// `Q[q][x]` to keep coefficient growth in check.
    pub fn gcd(&self, other: &PolyX) -> PolyX {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() { other.monic() } else { self.monic() };
        }
        if self.is_constant() || other.is_constant() {
            return PolyX::one();
        }
        let (mut a, mut b) = (primitive_part(&cleared(self)), primitive_part(&cleared(other)));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = primitive_part(&pseudo_rem(&a, &b));
            a = std::mem::replace(&mut b, r);
        }
        if b.len() == 1 {
            return PolyX::one();
        }
        PolyX::from_coeffs(a.into_iter().map(RatFuncQ::from_poly).collect()).monic()
    }

    /// Monic gcd together with Bezout cofactors: `s*self + t*other = g`.
    pub fn xgcd(&self, other: &PolyX) -> (PolyX, PolyX, PolyX) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyX::one(), PolyX::zero());
        let (mut t0, mut t1) = (PolyX::zero(), PolyX::one());
        while !r1.is_zero() {
            let (quo, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&quo * &s1);
            let t = &t0 - &(&quo * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn pow(&self, n: u32) -> PolyX {
        let mut acc = PolyX::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

/// Coefficients of an associate of `p` in `Q[q][x]`.
fn cleared(p: &PolyX) -> Vec<PolyQ> {
    let mut den = PolyQ::one();
    for c in p.coeffs() {
        den = den.lcm(c.den());
    }
    p.coeffs().iter().map(|c| c.num() * &den.exact_div(c.den())).collect()
}

/// Divide out the content in `Q[q]`; trailing zeros are dropped, so the
/// zero polynomial becomes the empty vector.
fn primitive_part(p: &[PolyQ]) -> Vec<PolyQ> {
    let n = p.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    let mut g = PolyQ::zero();
    for c in &p[..n] {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    let out: Vec<PolyQ> = p[..n].iter().map(|c| c.exact_div(&g)).collect();
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for c in out.iter().flat_map(PolyQ::coeffs) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return out;
    }
    let k = BigRational::new(den, num);
    out.iter().map(|c| c.scale(&k)).collect()
}

/// `lc(b)^(deg a - deg b + 1) a mod b` for `deg a >= deg b >= 0`.
fn pseudo_rem(a: &[PolyQ], b: &[PolyQ]) -> Vec<PolyQ> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let top = r.pop().expect("nonempty");
        let shift = r.len() + 1 - b.len();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        if !top.is_zero() {
            for (j, bj) in b[..b.len() - 1].iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&top * bj);
            }
        }
        while r.last().is_some_and(PolyQ::is_zero) {
            r.pop();
        }
    }
    r
}

impl Add for &PolyX {
    type Output = PolyX;
    fn add(self, o: &PolyX) -> PolyX {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut c = long.coeffs.clone();
        for (i, v) in short.coeffs.iter().enumerate() {
            c[i] = &c[i] + v;
        }
        PolyX::from_coeffs(c)
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &PolyX {
    type Output = PolyX;
    fn sub(self, o: &PolyX) -> PolyX {
        self + &(-o)
    }
}

impl Mul for &PolyX {
    type Output = PolyX;
    fn mul(self, o: &PolyX) -> PolyX {
        if self.is_zero() || o.is_zero() {
            return PolyX::zero();
        }
        let mut c = vec![RatFuncQ::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        PolyX::from_coeffs(c)
    }
}

forward_owned!(PolyX, Add add, Sub sub, Mul mul);

impl Neg for PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        -&self
    }
}

impl From<RatFuncQ> for PolyX {
    fn from(c: RatFuncQ) -> Self {
        PolyX::constant(c)
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let xs = pow_str("x", j);
            match (xs.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{xs}")?,
                (false, false) => write!(f, "({c})*{xs}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyX({self})")
    }
}

/// Element of `K(q, x)`: reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFuncX {
    num: PolyX,
    den: PolyX,
}

impl RatFuncX {
    pub fn zero() -> Self {
        RatFuncX {
            num: PolyX::zero(),
            den: PolyX::one(),
        }
    }

    pub fn from_poly(p: PolyX) -> Self {
        RatFuncX {
            num: p,
            den: PolyX::one(),
        }
    }

    pub fn new(num: PolyX, den: PolyX) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let inv = den.lc().inv()?;
        Ok(RatFuncX {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn num(&self) -> &PolyX {
        &self.num
    }

    pub fn den(&self) -> &PolyX {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatFuncX) -> RatFuncX {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFuncX::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&o.den);
        let sd = self.den.div_exact(&g).unwrap();
        let od = o.den.div_exact(&g).unwrap();
        RatFuncX::new(&(&self.num * &od) + &(&o.num * &sd), &sd * &o.den).unwrap()
    }

    pub fn neg(&self) -> RatFuncX {
        RatFuncX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFuncX) -> RatFuncX {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFuncX) -> RatFuncX {
        if self.is_zero() || o.is_zero() {
            return RatFuncX::zero();
        }
        RatFuncX::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &RatFuncX) -> Result<RatFuncX> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFuncX::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn sigma_pow(&self, k: i64) -> RatFuncX {
        RatFuncX::new(self.num.sigma_pow(k), self.den.sigma_pow(k)).unwrap()
    }

    /// Split into polynomial part and proper fraction.
    pub fn poly_part(&self) -> (PolyX, RatFuncX) {
        let (quo, r) = self.num.divrem(&self.den).unwrap();
        (
            quo,
            RatFuncX {
                num: r,
                den: self.den.clone(),
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::polyq::PolyQ;

    fn qx(c: &[&[i64]]) -> PolyX {
        PolyX::from_coeffs(c.iter().map(|cs| RatFuncQ::from_poly(PolyQ::from_ints(cs))).collect())
    }

    #[test]
    fn gcd_examples() {
        // gcd((x-1)(qx-1), x-1) = x-1
        let a = &qx(&[&[-1], &[1]]) * &qx(&[&[-1], &[0, 1]]);
        assert_eq!(a.gcd(&qx(&[&[-1], &[1]])), qx(&[&[-1], &[1]]));
        // gcd(x+1, q^2 x + 1) = 1
        assert!(qx(&[&[1], &[1]]).gcd(&qx(&[&[1], &[0, 0, 1]])).is_one());
        // gcd(f, f) = monic f
        let f = qx(&[&[3], &[0, 2], &[0, 0, 5]]);
        assert_eq!(f.gcd(&f), f.monic());
        assert!(PolyX::zero().gcd(&PolyX::zero()).is_zero());
    }

    #[test]
    fn sigma_examples() {
        let x2 = PolyX::monomial(RatFuncQ::one(), 2);
        assert_eq!(x2.sigma_pow(1), PolyX::monomial(RatFuncQ::q_pow(2), 2));
        // sigma^2(q^2 - x) = q^2 - q^2 x
        let f = qx(&[&[0, 0, 1], &[-1]]);
        assert_eq!(f.sigma_pow(2), qx(&[&[0, 0, 1], &[0, 0, -1]]));
        assert_eq!(f.sigma_pow(3).sigma_pow(-3), f);
    }

    #[test]
    fn xgcd_bezout() {
        let a = qx(&[&[1], &[2], &[0, 1]]);
        let b = qx(&[&[-1], &[0, 1]]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
