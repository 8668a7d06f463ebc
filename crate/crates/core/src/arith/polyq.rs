//! Dense univariate polynomials over the rationals in the variable `q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Element of `Q[q]`. Index `i` of the coefficient vector holds the
/// coefficient of `q^i`; the last entry is nonzero unless the vector is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `c * q^e`
    pub fn monomial(c: BigRational, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = c;
        PolyQ { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
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

    /// Degree in `q`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True for `c * q^e` with `c != 0`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    /// Divide by `q^e`; the caller guarantees divisibility.
    pub fn unshift(&self, e: usize) -> Self {
        debug_assert!(self.valuation().is_none_or(|v| v >= e));
        PolyQ::from_coeffs(self.coeffs.iter().skip(e).cloned().collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Euclidean division over `Q`. Panics on division by zero.
    pub fn divrem(&self, d: &PolyQ) -> (PolyQ, PolyQ) {
        assert!(!d.is_zero(), "PolyQ division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (PolyQ::zero(), self.clone());
        }
        if dd == 0 {
            let inv = d.coeffs[0].recip();
            return (self.scale(&inv), PolyQ::zero());
        }
        let inv_lc = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); r.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &r[i + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        r.truncate(dd);
        (PolyQ::from_coeffs(quot), PolyQ::from_coeffs(r))
    }

    pub fn rem(&self, d: &PolyQ) -> PolyQ {
        self.divrem(d).1
    }

    /// Division known to be exact.
    pub fn exact_div(&self, d: &PolyQ) -> PolyQ {
        let (quo, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact PolyQ division");
        quo
    }

    pub fn divides(&self, other: &PolyQ) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return PolyQ::one();
        }
        // powers of q are the common case for denominators
        if self.is_monomial() || other.is_monomial() {
            let v = self.valuation().unwrap().min(other.valuation().unwrap());
            let (m, o) = if self.is_monomial() { (self, other) } else { (other, self) };
            let v = v.min(m.degree().unwrap()).min(o.valuation().unwrap());
            return PolyQ::monomial(BigRational::one(), v);
        }
        let ints = |p: &PolyQ| p.primitive_int().to_ints().expect("integral");
        let (mut a, mut b) = (ints(self), ints(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        // primitive pseudo-remainder sequence over Z
        while b.len() > 1 {
            let r = int_primitive(int_pseudo_rem(&a, &b));
            a = std::mem::replace(&mut b, r);
        }
        if b.len() == 1 {
            return PolyQ::one();
        }
        PolyQ::from_coeffs(a.into_iter().map(BigRational::from_integer).collect()).monic()
    }

    pub fn lcm(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::zero();
        }
        let g = self.gcd(other);
        (&self.exact_div(&g) * other).monic()
    }

    /// Least common multiple of the coefficient denominators and gcd of the
    /// numerators: `self = content * primitive` with `primitive` having
    /// coprime integer coefficients and positive leading coefficient.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = BigRational::new(num, den);
        if self.lc().is_negative() {
            content = -content;
        }
        content
    }

    /// `(n, d)` with `self = n / d` and `n` integral.
    fn scaled_ints(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.coeffs.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let n = self.coeffs.iter().map(|c| c.numer() * (&d / c.denom())).collect();
        (n, d)
    }

    /// Integer-coefficient primitive associate with positive leading coefficient.
    pub fn primitive_int(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Substitution `q -> 1/q`, returned as `(p, e)` meaning `p(q) / q^e`
    /// where `e = deg(self)` and `p` is the reversed polynomial.
    pub fn reverse(&self) -> (PolyQ, usize) {
        let d = self.degree().unwrap_or(0);
        let mut c = self.coeffs.clone();
        c.reverse();
        (PolyQ::from_coeffs(c), d)
    }

    /// Coefficients as integers; `None` if some coefficient is not integral.
    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn from_bigints(cs: Vec<BigInt>) -> Self {
        Self::from_coeffs(cs.into_iter().map(BigRational::from_integer).collect())
    }
}

/// `lc(b)^(deg a - deg b + 1) a mod b` over `Z`, without trailing zeros.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let top = r.pop().expect("nonempty");
        let shift = r.len() + 1 - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b[..b.len() - 1].iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn int_primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, o: &PolyQ) -> PolyQ {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut c = long.coeffs.clone();
        for (i, v) in short.coeffs.iter().enumerate() {
            c[i] += v;
        }
        PolyQ::from_coeffs(c)
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, BigRational::zero());
        for (i, v) in o.coeffs.iter().enumerate() {
            c[i] -= v;
        }
        PolyQ::from_coeffs(c)
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, o: &PolyQ) -> PolyQ {
        if self.is_zero() || o.is_zero() {
            return PolyQ::zero();
        }
        // integer convolution over a common denominator
        let (a, da) = self.scaled_ints();
        let (b, db) = o.scaled_ints();
        let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        let d = da * db;
        PolyQ::from_coeffs(c.into_iter().map(|n| BigRational::new(n, d.clone())).collect())
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { (&self).$m(o) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(PolyQ, Add add, Sub sub, Mul mul);

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -&self
    }
}

/// Writes a sum of terms `c*q^e` in descending order, e.g. `2*q^3 - q + 1`.
pub(crate) fn write_rat_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigRational,
    mono: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if mono.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{a}*{mono}")
    }
}

pub(crate) fn pow_str(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_rat_term(f, first, c, &pow_str("q", e))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}
