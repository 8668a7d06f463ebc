//! Resultants: a generic Sylvester determinant, and a power-sum construction
//! of `res_x(f(z x), g(x))` used by the dispersion candidate search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::polyq::PolyQ;

/// Commutative ring with exact division, enough for fraction-free elimination.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `self / o`, where the caller knows the division is exact.
    fn div_exact(&self, o: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Ring for PolyQ {
    fn zero() -> Self {
        PolyQ::zero()
    }
    fn one() -> Self {
        PolyQ::one()
    }
    fn is_zero(&self) -> bool {
        PolyQ::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o)
    }
}

impl Ring for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Self {
        BiPoly::div_exact(self, o).expect("exact division")
    }
}

fn trim<R: Ring>(p: &[R]) -> &[R] {
    let mut n = p.len();
    while n > 0 && p[n - 1].is_zero() {
        n -= 1;
    }
    &p[..n]
}

/// Sylvester resultant of `f` and `g` (coefficient lists, lowest degree
/// first) with the rows of `f` on top, so that `res(x - a, x - b) = a - b`.
pub fn resultant<R: Ring>(f: &[R], g: &[R]) -> R {
    let (f, g) = (trim(f), trim(g));
    if f.is_empty() || g.is_empty() {
        return R::zero();
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return R::one();
    }
    let mut a = vec![vec![R::zero(); size]; size];
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            a[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            a[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(a)
}

fn bareiss_det<R: Ring>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    let mut prev = R::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return R::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Dense polynomial in `q` with integer coefficients, lowest degree first.
type ZPoly = Vec<BigInt>;

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zadd_assign(a: &mut ZPoly, b: &ZPoly, sign: i8) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        if sign >= 0 {
            *x += y;
        } else {
            *x -= y;
        }
    }
}

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zscale(a: &ZPoly, k: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c * k).collect())
}

fn to_zpoly(p: &PolyQ) -> ZPoly {
    p.to_ints().expect("integer coefficients")
}

/// Scaled power sums `a_d^k * p_k(roots)` for `k = 1..=n` of a polynomial
/// with coefficients `a` (lowest degree first, integer polynomials in `q`).
fn scaled_power_sums(a: &[ZPoly], n: usize) -> Vec<ZPoly> {
    let d = a.len() - 1;
    let ad = &a[d];
    // powers of a_d
    let mut adp: Vec<ZPoly> = vec![vec![BigInt::one()]];
    for i in 1..=d.max(1) {
        adp.push(zmul(&adp[i - 1], ad));
    }
    let mut p: Vec<ZPoly> = vec![Vec::new(); n + 1];
    for k in 1..=n {
        let mut s: ZPoly = Vec::new();
        for i in 1..=(k - 1).min(d) {
            let t = zmul(&zmul(&a[d - i], &adp[i - 1]), &p[k - i]);
            zadd_assign(&mut s, &t, -1);
        }
        if k <= d {
            let t = zscale(&zmul(&a[d - k], &adp[k - 1]), &BigInt::from(k));
            zadd_assign(&mut s, &t, -1);
        }
        p[k] = ztrim(s);
    }
    p
}

/// Coefficients `r_0, …, r_D` (in `z`) of a polynomial in `Q[q][z]` that
/// agrees with `res_x(f(z x), g(x))` up to a nonzero factor in `Q(q)` and a
/// power of `z`.
///
/// Both inputs are given by their `x`-coefficients in `Q[q]`; powers of `x`
/// dividing either input only contribute powers of `z` and are stripped.
/// The roots of the result are the quotients `α / β` of roots `α` of `f` and
/// nonzero roots `β` of `g`, computed through power sums and Newton's
/// identities, which avoids expanding a large bivariate determinant.
pub fn shift_resultant(f: &[PolyQ], g: &[PolyQ]) -> Vec<PolyQ> {
    let strip = |p: &[PolyQ]| -> Vec<ZPoly> {
        let p = trim(p);
        let v = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let mut den = BigInt::one();
        for c in p {
            for r in c.coeffs() {
                den = den.lcm(r.denom());
            }
        }
        let k = BigRational::from_integer(den);
        p[v..].iter().map(|c| to_zpoly(&c.scale(&k))).collect()
    };
    let (a, b) = (strip(f), strip(g));
    if a.len() <= 1 || b.len() <= 1 {
        return vec![PolyQ::one()];
    }
    let (d, e) = (a.len() - 1, b.len() - 1);
    let big_d = d * e;
    let brev: Vec<ZPoly> = b.iter().rev().cloned().collect();
    let pf = scaled_power_sums(&a, big_d);
    let pg = scaled_power_sums(&brev, big_d);
    let s: Vec<ZPoly> = (0..=big_d).map(|k| if k == 0 { Vec::new() } else { zmul(&pf[k], &pg[k]) }).collect();
    // Newton: k E_k = Σ_{i=1..k} (-1)^{i-1} E_{k-i} S_i
    let mut el: Vec<ZPoly> = vec![vec![BigInt::one()]];
    for k in 1..=big_d {
        let mut acc: ZPoly = Vec::new();
        for i in 1..=k {
            let t = zmul(&el[k - i], &s[i]);
            zadd_assign(&mut acc, &t, if i % 2 == 1 { 1 } else { -1 });
        }
        let kk = BigInt::from(k);
        let acc = ztrim(
            acc.into_iter()
                .map(|c| {
                    let (quo, rem) = c.div_rem(&kk);
                    debug_assert!(rem.is_zero());
                    quo
                })
                .collect(),
        );
        el.push(acc);
    }
    // r_{D-k} = (-1)^k E_k u^{D-k}, u = a_d * b_0
    let u = zmul(&a[d], &b[0]);
    let mut upow: Vec<ZPoly> = vec![vec![BigInt::one()]];
    for i in 1..=big_d {
        upow.push(zmul(&upow[i - 1], &u));
    }
    let mut r = vec![PolyQ::zero(); big_d + 1];
    for (k, ek) in el.iter().enumerate() {
        let mut c = zmul(ek, &upow[big_d - k]);
        if k % 2 == 1 {
            c = c.into_iter().map(|x| -x).collect();
        }
        r[big_d - k] = PolyQ::from_bigints(c);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(cs: &[i64]) -> PolyQ {
        PolyQ::from_ints(cs)
    }

    #[test]
    fn linear_resultant_sign() {
        let a = BigRational::from_integer(3.into());
        let b = BigRational::from_integer(7.into());
        let f = vec![-a.clone(), <BigRational as One>::one()];
        let g = vec![-b.clone(), <BigRational as One>::one()];
        assert_eq!(resultant(&f, &g), a - b);
    }

    #[test]
    fn vanishes_on_common_root() {
        let r = |v: i64| BigRational::from_integer(v.into());
        // (x-1)(x-2), (x-2)(x-3), (x-1)(x-4)
        let f = vec![r(2), r(-3), r(1)];
        let g = vec![r(6), r(-5), r(1)];
        let h = vec![r(4), r(-5), r(1)];
        assert!(Ring::is_zero(&resultant(&f, &g)));
        assert!(!Ring::is_zero(&resultant(&g, &h)));
    }

    #[test]
    fn power_sum_matches_sylvester() {
        // f = q x^2 - 1, g = (x + q)(2x - 1)
        let f = vec![q(&[-1]), q(&[]), q(&[0, 1])];
        let g = vec![q(&[0, -1]), q(&[-1, 2]), q(&[2])];
        let ps = shift_resultant(&f, &g);
        // Sylvester over Q[q][z], with z as the second variable of BiPoly
        let fz: Vec<BiPoly> = f
            .iter()
            .enumerate()
            .map(|(j, c)| &BiPoly::from_polyq_x(std::slice::from_ref(c)) * &BiPoly::monomial(1, 0, j as u32))
            .collect();
        let gz: Vec<BiPoly> = g.iter().map(|c| BiPoly::from_polyq_x(std::slice::from_ref(c))).collect();
        let sy = resultant(&fz, &gz);
        let sy: Vec<PolyQ> = (0..=4).map(|j| sy.coeff_x(j)).collect();
        let (a, b) = (&ps[4], &sy[4]);
        for j in 0..=4 {
            assert_eq!(&ps[j] * b, &sy[j] * a);
        }
    }

    #[test]
    fn shift_root_of_quadratic() {
        // f = q x^2 - 1 and g = q^5 x^2 - 1: root quotients are ±q^2
        let f = vec![q(&[-1]), q(&[]), q(&[0, 1])];
        let g = vec![q(&[-1]), q(&[]), q(&[0, 0, 0, 0, 0, 1])];
        let r = shift_resultant(&f, &g);
        let at = |z: &PolyQ| {
            let mut acc = PolyQ::zero();
            for c in r.iter().rev() {
                acc = &(&acc * z) + c;
            }
            acc
        };
        assert!(at(&q(&[0, 0, 1])).is_zero());
        assert!(!at(&q(&[0, 1])).is_zero());
    }
}
