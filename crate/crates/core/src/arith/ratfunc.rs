//! The coefficient field `K(q)` with `K = Q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polyq::{forward_owned, PolyQ};
use crate::error::{Error, Result};

/// Reduced fraction `num / den` of polynomials in `q`.
///
/// The representation is canonical: `gcd(num, den) = 1`, `den` is monic and
/// zero is `0/1`, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: PolyQ,
    den: PolyQ,
}

impl RatFuncQ {
    pub fn zero() -> Self {
        RatFuncQ {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyQ::one())
    }

    pub fn q() -> Self {
        Self::from_poly(PolyQ::q())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(PolyQ::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    pub fn from_poly(num: PolyQ) -> Self {
        RatFuncQ {
            num,
            den: PolyQ::one(),
        }
    }

    /// `num / den`, reduced. Errors if `den` is zero.
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.lc().recip();
            return RatFuncQ {
                num: num.scale(&inv),
                den: PolyQ::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let inv = den.lc().recip();
        RatFuncQ {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        let m = PolyQ::monomial(BigRational::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_poly(m)
        } else {
            RatFuncQ {
                num: PolyQ::one(),
                den: m,
            }
        }
    }

    pub fn num(&self) -> &PolyQ {
        &self.num
    }

    pub fn den(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Denominator is a power of `q`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFuncQ) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs() as u32;
        Ok(RatFuncQ {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFuncQ {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitution `q -> 1/q`.
    pub fn subst_inv_q(&self) -> Self {
        let (n, dn) = self.num.reverse();
        let (d, dd) = self.den.reverse();
        // n(1/q)/d(1/q) = (rev_n / q^dn) / (rev_d / q^dd)
        let (n, d) = if dn >= dd {
            (n, d.shift(dn - dd))
        } else {
            (n.shift(dd - dn), d)
        };
        Self::reduce(n, d)
    }

    /// Evaluate at a rational point; `None` if the denominator vanishes.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        let c = self.as_constant()?;
        c.is_integer().then(|| c.to_integer())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, o: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFuncQ::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFuncQ {
                num: &(&self.num * &o.den) + &o.num,
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return RatFuncQ {
                num: &(&o.num * &self.den) + &self.num,
                den: self.den.clone(),
            };
        }
        let g = self.den.gcd(&o.den);
        let sd = self.den.exact_div(&g);
        let od = o.den.exact_div(&g);
        let num = &(&self.num * &od) + &(&o.num * &sd);
        RatFuncQ::reduce(num, &sd * &o.den)
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, o: &RatFuncQ) -> RatFuncQ {
        self + &(-o)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, o: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || o.is_zero() {
            return RatFuncQ::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFuncQ::from_poly(&self.num * &o.num);
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = o.den.exact_div(&g1);
        let n2 = o.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        let den = &d1 * &d2;
        let inv = den.lc().recip();
        RatFuncQ {
            num: (&n1 * &n2).scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    /// Panics on division by zero; use [`RatFuncQ::checked_div`] otherwise.
    fn div(self, o: &RatFuncQ) -> RatFuncQ {
        self.checked_div(o).expect("RatFuncQ division by zero")
    }
}

forward_owned!(RatFuncQ, Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -&self
    }
}

impl From<PolyQ> for RatFuncQ {
    fn from(p: PolyQ) -> Self {
        RatFuncQ::from_poly(p)
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFuncQ({self})")
    }
}
