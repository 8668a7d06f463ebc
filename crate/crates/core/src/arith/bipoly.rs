//! Sparse bivariate polynomials in `Q[q, x]`.
//!
//! In recurrence contexts the second variable stands for `q^n`; the type does
//! not care which reading is in force.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polyq::{forward_owned, pow_str, write_rat_term, PolyQ};
use super::polyx::PolyX;
use super::ratfunc::RatFuncQ;

/// Exponent pair. The derived order compares the `x` exponent first, which is
/// the lexicographic term order with `q < x`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono {
    pub x: u32,
    pub q: u32,
}

impl Mono {
    pub fn new(q: u32, x: u32) -> Self {
        Mono { x, q }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.x <= o.x && self.q <= o.q
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono {
            x: self.x.max(o.x),
            q: self.q.max(o.q),
        }
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono {
            x: self.x + o.x,
            q: self.q + o.q,
        }
    }

    /// `self / o`; the caller guarantees `o | self`.
    pub fn div(&self, o: &Mono) -> Mono {
        Mono {
            x: self.x - o.x,
            q: self.q - o.q,
        }
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        (self.x == 0 || o.x == 0) && (self.q == 0 || o.q == 0)
    }
}

/// Element of `Q[q, x]`. No zero terms are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Mono::default())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn q() -> Self {
        Self::term(BigRational::one(), Mono::new(1, 0))
    }

    pub fn x() -> Self {
        Self::term(BigRational::one(), Mono::new(0, 1))
    }

    pub fn term(c: BigRational, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BiPoly { terms }
    }

    /// `c * q^eq * x^ex`
    pub fn monomial(c: i64, eq: u32, ex: u32) -> Self {
        Self::term(BigRational::from_integer(BigInt::from(c)), Mono::new(eq, ex))
    }

    /// Build from `(coefficient, e_q, e_x)` triples; repeated exponents add up.
    pub fn from_triples(ts: &[(i64, u32, u32)]) -> Self {
        let mut p = BiPoly::zero();
        for &(c, eq, ex) in ts {
            p.add_term(Mono::new(eq, ex), &BigRational::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Mono::default()).is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.x == 0 && m.q == 0)
    }

    /// Single term `c q^b x^a`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading monomial for lex with `q < x`.
    pub fn lm(&self) -> Option<Mono> {
        self.terms.keys().next_back().copied()
    }

    pub fn lc(&self) -> BigRational {
        self.terms.values().next_back().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn deg_q(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.q).max()
    }

    pub fn min_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).min()
    }

    pub fn min_q(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.q).min()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = BiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of `x^j` as a polynomial in `q`.
    pub fn coeff_x(&self, j: u32) -> PolyQ {
        let mut c = Vec::new();
        for (m, a) in self.terms.range(Mono::new(0, j)..=Mono::new(u32::MAX, j)) {
            let i = m.q as usize;
            if c.len() <= i {
                c.resize(i + 1, BigRational::zero());
            }
            c[i] = a.clone();
        }
        PolyQ::from_coeffs(c)
    }

    pub fn from_polyq_x(coeffs: &[PolyQ]) -> Self {
        let mut p = BiPoly::zero();
        for (j, c) in coeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    p.terms.insert(Mono::new(i as u32, j as u32), a.clone());
                }
            }
        }
        p
    }

    /// View as a polynomial in `x` over `K(q)`.
    pub fn to_polyx(&self) -> PolyX {
        match self.deg_x() {
            None => PolyX::zero(),
            Some(d) => PolyX::from_coeffs((0..=d).map(|j| RatFuncQ::from_poly(self.coeff_x(j))).collect()),
        }
    }

    /// Exact conversion from `K(q)[x]`; `None` if some coefficient is not a polynomial.
    pub fn try_from_polyx(p: &PolyX) -> Option<BiPoly> {
        let mut cs = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            if !c.is_polynomial() {
                return None;
            }
            cs.push(c.num().clone());
        }
        Some(BiPoly::from_polyq_x(&cs))
    }

    /// Clear all denominators of `p` and remove the rational content,
    /// giving the primitive associate of `p` in `Q[q][x]` (positive lead,
    /// integer coefficients, content 1 in `Q[q]`).
    pub fn primitive_from_polyx(p: &PolyX) -> BiPoly {
        let mut den = PolyQ::one();
        for c in p.coeffs() {
            den = den.lcm(c.den());
        }
        let cs: Vec<PolyQ> = p.coeffs().iter().map(|c| &c.num().clone() * &den.exact_div(c.den())).collect();
        BiPoly::from_polyq_x(&cs).primitive()
    }

    /// Content in `Q[q]`: monic gcd of the `x`-coefficients.
    pub fn content_q(&self) -> PolyQ {
        let mut g = PolyQ::zero();
        if let Some(d) = self.deg_x() {
            for j in 0..=d {
                let c = self.coeff_x(j);
                if !c.is_zero() {
                    g = g.gcd(&c);
                    if g.is_one() {
                        break;
                    }
                }
            }
        }
        g
    }

    /// Rational content normalisation: integer coefficients with gcd 1 and
    /// positive leading coefficient.
    pub fn normalize(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut k = BigRational::new(den, num);
        if self.lc().is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    /// Divide by the content in `Q[q]` and normalise.
    pub fn primitive(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let c = self.content_q();
        if c.is_constant() {
            return self.normalize();
        }
        let d = self.deg_x().unwrap();
        let cs: Vec<PolyQ> = (0..=d).map(|j| self.coeff_x(j).exact_div(&c)).collect();
        BiPoly::from_polyq_x(&cs).normalize()
    }

    /// Exact quotient in `Q[q, x]`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let mut r = self.clone();
        let mut quo = BiPoly::zero();
        let dl = d.lm().unwrap();
        let dc = d.lc();
        while let Some(m) = r.lm() {
            if !dl.divides(&m) {
                return None;
            }
            let t = Mono::div(&m, &dl);
            let c = r.lc() / &dc;
            let sub = d.mul_mono(&t).scale(&c);
            r = &r - &sub;
            quo.add_term(t, &c);
        }
        Some(quo)
    }

    pub fn divides(&self, o: &BiPoly) -> bool {
        o.div_exact(self).is_some()
    }

    /// Gcd in `Q[q, x]`: gcd over `K(q)[x]` of the primitive parts times the
    /// gcd of the contents, normalised. `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let cg = self.content_q().gcd(&o.content_q());
        let g = self.to_polyx().gcd(&o.to_polyx());
        let g = BiPoly::primitive_from_polyx(&g);
        let cs = BiPoly::from_polyq_x(&[cg]);
        (&g * &cs).normalize()
    }

    pub fn lcm(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let g = self.gcd(o);
        (&self.div_exact(&g).expect("gcd divides") * o).normalize()
    }

    /// Largest monomial `q^b x^a` dividing `self`, as `(b, a)`.
    pub fn monomial_part(&self) -> (u32, u32) {
        (self.min_q().unwrap_or(0), self.min_x().unwrap_or(0))
    }

    /// `self / q^b x^a`.
    pub fn div_mono(&self, m: &Mono) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.div(m), a.clone())).collect(),
        }
    }

    /// `f(q, x) -> f(q, q^k x)` for `k >= 0`.
    pub fn shift_x(&self, k: u32) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, a) in &self.terms {
            out.add_term(Mono::new(m.q + k * m.x, m.x), a);
        }
        out
    }

    /// Evaluate at `x = value`, returning an element of `K(q)`.
    pub fn eval_x(&self, value: &RatFuncQ) -> RatFuncQ {
        self.to_polyx().eval(value)
    }

    /// Evaluate at `x = q^n` for an arbitrary integer `n`.
    pub fn eval_qpow(&self, n: i64) -> RatFuncQ {
        let mut num = BTreeMap::<i64, BigRational>::new();
        for (m, a) in &self.terms {
            *num.entry(m.q as i64 + n * m.x as i64).or_insert_with(BigRational::zero) += a;
        }
        let lo = num.keys().next().copied().unwrap_or(0).min(0);
        let hi = num.keys().next_back().copied().unwrap_or(0);
        let mut cs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, a) in num {
            cs[(e - lo) as usize] += a;
        }
        RatFuncQ::from_poly(PolyQ::from_coeffs(cs)) * RatFuncQ::q_pow(lo)
    }

    /// Evaluate `q` at a rational number, giving a polynomial in `x` as a
    /// map from exponent to coefficient.
    pub fn eval_q(&self, q: &BigRational) -> BTreeMap<u32, BigRational> {
        let mut out = BTreeMap::new();
        for (m, a) in &self.terms {
            let v = a * num_traits::pow::pow(q.clone(), m.q as usize);
            let e = out.entry(m.x).or_insert_with(BigRational::zero);
            *e += v;
        }
        out.retain(|_, v: &mut BigRational| !v.is_zero());
        out
    }

    /// Swap the roles of `q` and `x`.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, a)| (Mono { x: m.q, q: m.x }, a.clone())).collect(),
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c);
        }
        r
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, &-c);
        }
        r
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        r
    }
}

forward_owned!(BiPoly, Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

/// Monomial string such as `q^12*x^2`, with a custom name for the second variable.
pub(crate) fn mono_str(m: &Mono, xname: &str) -> String {
    let qs = pow_str("q", m.q as usize);
    let xs = pow_str(xname, m.x as usize);
    match (qs.is_empty(), xs.is_empty()) {
        (true, _) => xs,
        (false, true) => qs,
        (false, false) => format!("{qs}*{xs}"),
    }
}

impl BiPoly {
    /// Render with a chosen spelling for the second variable (e.g. `q^n`).
    pub fn display_with(&self, xname: &str) -> String {
        struct W<'a>(&'a BiPoly, &'a str);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_zero() {
                    return write!(f, "0");
                }
                for (i, (m, c)) in self.0.terms.iter().rev().enumerate() {
                    write_rat_term(f, i == 0, c, &mono_str(m, self.1))?;
                }
                Ok(())
            }
        }
        W(self, xname).to_string()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
