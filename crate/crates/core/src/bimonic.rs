//! Inhomogeneous q-recurrences in `y = q^n`, the search for bimonic
//! combinations of their shifts, and exact unrolling of sequences.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;

use crate::arith::linsolve::kernel;
use crate::arith::{BiPoly, Mono, PolyQ, RatFuncQ};
use crate::error::{Error, Result};
use crate::qweyl::QWeylOp;

/// `R(n) = p_{-1}(q, y) + Σ_{i=0}^{r} p_i(q, y) f(n+i)` with `y = q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InhomRec {
    /// `coeffs[0]` is `p_{-1}`, `coeffs[i + 1]` is `p_i`.
    coeffs: Vec<BiPoly>,
}

/// `c` together with the exponents of the removed monomial `q^b y^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetFactor {
    pub c: BiPoly,
    pub a: u32,
    pub b: u32,
}

/// Largest monomial factor and the remaining cofactor.
fn split_monomial(p: &BiPoly) -> (Mono, BiPoly) {
    let (b, a) = p.monomial_part();
    let m = Mono::new(b, a);
    (m, p.div_mono(&m))
}

fn y_pow(k: u32) -> BiPoly {
    BiPoly::monomial(1, 0, k)
}

fn polyq_times(c: &PolyQ, p: &BiPoly) -> BiPoly {
    &BiPoly::from_polyq_x(std::slice::from_ref(c)) * p
}

impl InhomRec {
    /// Build from the inhomogeneous part and `p_0, …, p_r`; trailing zero
    /// coefficients are dropped.
    pub fn new(inhom: BiPoly, mut hom: Vec<BiPoly>) -> Result<Self> {
        while hom.last().is_some_and(BiPoly::is_zero) {
            hom.pop();
        }
        if hom.is_empty() {
            return Err(Error::ZeroOperator);
        }
        let mut coeffs = vec![inhom];
        coeffs.extend(hom);
        Ok(InhomRec { coeffs })
    }

    pub fn homogeneous(hom: Vec<BiPoly>) -> Result<Self> {
        Self::new(BiPoly::zero(), hom)
    }

    /// The recurrence annihilated by an operator, reading `x` as `q^n`.
    pub fn from_operator(op: &QWeylOp) -> Result<Self> {
        let cs = op.to_bipolys().ok_or(Error::NotPolynomial)?;
        Self::homogeneous(cs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 2
    }

    pub fn inhom(&self) -> &BiPoly {
        &self.coeffs[0]
    }

    /// `p_i` for `0 <= i <= r`.
    pub fn coeff(&self, i: usize) -> &BiPoly {
        &self.coeffs[i + 1]
    }

    pub fn hom(&self) -> &[BiPoly] {
        &self.coeffs[1..]
    }

    /// `p_{-1}, p_0, …, p_r`.
    pub fn all(&self) -> &[BiPoly] {
        &self.coeffs
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inhom().is_zero()
    }

    /// The homogeneous part as an operator in `K(q)[x][D]`.
    pub fn operator(&self) -> QWeylOp {
        QWeylOp::from_bipolys(self.hom())
    }

    /// `R(n + i)` as a recurrence in `g(n) = f(n + i)`.
    pub fn shift(&self, i: u32) -> InhomRec {
        InhomRec {
            coeffs: self.coeffs.iter().map(|p| p.shift_x(i)).collect(),
        }
    }

    /// Substitute `f(n) -> f(n) / m(q, q^n)` and clear denominators; the
    /// common gcd of all coefficients is divided out.
    pub fn substitute_multiplier(&self, m: &BiPoly) -> Result<InhomRec> {
        if m.is_zero() {
            return Err(Error::Precondition("zero multiplier".into()));
        }
        let r = self.order();
        let shifted: Vec<BiPoly> = (0..=r).map(|j| m.shift_x(j as u32)).collect();
        let mut coeffs = Vec::with_capacity(r + 2);
        let all: BiPoly = shifted.iter().fold(BiPoly::one(), |acc, s| &acc * s);
        coeffs.push(self.inhom() * &all);
        for i in 0..=r {
            let mut c = self.coeff(i).clone();
            for (j, s) in shifted.iter().enumerate() {
                if j != i {
                    c = &c * s;
                }
            }
            coeffs.push(c);
        }
        Ok(InhomRec { coeffs: divide_common(coeffs) })
    }

    /// `lcm(p_0, p_r)` with its monomial factor `q^b y^a` removed.
    pub fn target_factor(&self) -> Result<TargetFactor> {
        let (p0, pr) = (self.coeff(0), self.coeff(self.order()));
        if p0.is_zero() {
            return Err(Error::ZeroTrailing);
        }
        let l = p0.lcm(pr);
        let (m, c) = split_monomial(&l);
        Ok(TargetFactor { c, a: m.x, b: m.q })
    }

    /// `R(n)` for a sequence given by `f`, which must know `f(n..=n+r)`.
    pub fn residual(&self, f: &dyn Fn(i64) -> Option<RatFuncQ>, n: i64) -> Result<RatFuncQ> {
        let mut acc = self.inhom().eval_qpow(n);
        for i in 0..=self.order() {
            let v = f(n + i as i64).ok_or(Error::MissingInitial(n + i as i64))?;
            acc = &acc + &(&self.coeff(i).eval_qpow(n) * &v);
        }
        Ok(acc)
    }

    pub fn support_profile(&self) -> Vec<(i64, Vec<u32>)> {
        support_profile(&self.coeffs, -1)
    }
}

fn divide_common(coeffs: Vec<BiPoly>) -> Vec<BiPoly> {
    let g = coeffs.iter().fold(BiPoly::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return coeffs;
    }
    coeffs.iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect()
}

/// For each coefficient, the exponents of `y` that occur, indexed from
/// `first_index`.
pub fn support_profile(coeffs: &[BiPoly], first_index: i64) -> Vec<(i64, Vec<u32>)> {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut ys: Vec<u32> = p.terms().map(|(m, _)| m.x).collect();
            ys.sort_unstable();
            ys.dedup();
            (first_index + k as i64, ys)
        })
        .collect()
}

/// `Σ_i u_i(q, y) R(n+i) = c (ℓ_{-1} + Σ_i ℓ_i f(n+i))` with `ℓ_0` and
/// `ℓ_{r+s}` monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimonicResult {
    pub s: usize,
    pub multipliers: Vec<BiPoly>,
    /// `ℓ_{-1}`.
    pub inhom: BiPoly,
    /// `ℓ_0, …, ℓ_{r+s}`.
    pub coeffs: Vec<BiPoly>,
    pub c: BiPoly,
    /// `(a, b)` with `ℓ_{r+s} = ±q^b y^a` up to a rational constant.
    pub lead: (u32, u32),
    /// `(a, b)` with `ℓ_0 = ±q^b y^a` up to a rational constant.
    pub trail: (u32, u32),
}

impl BimonicResult {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn recurrence(&self) -> InhomRec {
        InhomRec::new(self.inhom.clone(), self.coeffs.clone()).expect("nonzero leading coefficient")
    }

    /// Re-expand `Σ u_i R(n+i)` and compare with `c` times the result.
    pub fn verify_identity(&self, rec: &InhomRec) -> bool {
        let (lhs_inh, lhs) = combine(rec, &self.multipliers);
        lhs_inh == &self.c * &self.inhom
            && lhs.len() == self.coeffs.len()
            && lhs.iter().zip(&self.coeffs).all(|(a, l)| *a == &self.c * l)
    }

    pub fn is_bimonic(&self) -> bool {
        self.coeffs.first().is_some_and(BiPoly::is_monomial) && self.coeffs.last().is_some_and(BiPoly::is_monomial)
    }

    /// Support of `ℓ_{-1}, …, ℓ_{r+s}`.
    pub fn support_profile(&self) -> Vec<(i64, Vec<u32>)> {
        let mut all = vec![self.inhom.clone()];
        all.extend(self.coeffs.iter().cloned());
        support_profile(&all, -1)
    }

    pub fn multiplier_support(&self) -> Vec<(i64, Vec<u32>)> {
        support_profile(&self.multipliers, 0)
    }
}

/// `Σ_i u_i R(n+i)` as `(a_{-1}, [a_0, …, a_{r+s}])`.
fn combine(rec: &InhomRec, u: &[BiPoly]) -> (BiPoly, Vec<BiPoly>) {
    let r = rec.order();
    let s = u.len() - 1;
    let mut inh = BiPoly::zero();
    let mut out = vec![BiPoly::zero(); r + s + 1];
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        let sh = rec.shift(i as u32);
        inh = &inh + &(ui * sh.inhom());
        for k in 0..=r {
            out[i + k] = &out[i + k] + &(ui * sh.coeff(k));
        }
    }
    (inh, out)
}

/// The range of unknowns multiplying `R(n+i)` in the ansatz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// `Σ_{j=lo}^{hi} c_j y^j` with free `c_j`.
    Free { lo: i64, hi: i64 },
    /// `κ · y^shift · base` with a single free `κ`.
    Prescribed { shift: i64, base: BiPoly },
}

impl Window {
    fn min_exp(&self) -> i64 {
        match self {
            Window::Free { lo, .. } => *lo,
            Window::Prescribed { shift, .. } => *shift,
        }
    }
}

/// Clear denominators of a vector over `K(q)` and remove its content; the
/// first nonzero entry gets a positive leading coefficient.
fn clear_vector(v: &[RatFuncQ]) -> Vec<PolyQ> {
    let den = v.iter().fold(PolyQ::one(), |d, x| d.lcm(x.den()));
    let mut out: Vec<PolyQ> = v.iter().map(|x| x.num() * &den.exact_div(x.den())).collect();
    let g = out.iter().fold(PolyQ::zero(), |g, x| g.gcd(x));
    if !g.is_zero() {
        out = out.iter().map(|x| x.exact_div(&g)).collect();
    }
    if let Some(f) = out.iter().find(|x| !x.is_zero()) {
        if f.lc().is_negative() {
            out = out.iter().map(|x| -x).collect();
        }
    }
    out
}

/// One attempt of the linear-algebra ansatz for a fixed `s` and fixed
/// windows (one per `i = 0..=s`): the unknowns are determined by requiring
/// every coefficient of `Σ u_i R(n+i)` to be divisible by `c`. Returns the
/// first kernel vector whose result has monomial extreme coefficients.
pub fn bimonic_guess(rec: &InhomRec, c: &BiPoly, s: usize, windows: &[Window]) -> Result<Option<BimonicResult>> {
    if windows.len() != s + 1 {
        return Err(Error::Precondition(format!("expected {} windows, got {}", s + 1, windows.len())));
    }
    if c.is_zero() {
        return Err(Error::Precondition("zero target factor".into()));
    }
    let r = rec.order();
    let lift = (-windows.iter().map(Window::min_exp).min().unwrap_or(0)).max(0);
    // columns: (i, multiplier)
    let mut cols: Vec<(usize, BiPoly)> = Vec::new();
    for (i, w) in windows.iter().enumerate() {
        match w {
            Window::Free { lo, hi } => {
                for j in *lo..=*hi {
                    cols.push((i, y_pow((j + lift) as u32)));
                }
            }
            Window::Prescribed { shift, base } => cols.push((i, base * &y_pow((shift + lift) as u32))),
        }
    }
    if cols.is_empty() {
        return Ok(None);
    }
    let shifted: Vec<InhomRec> = (0..=s).map(|i| rec.shift(i as u32)).collect();
    let cx = c.to_polyx();
    let dc = cx.degree().unwrap_or(0);
    let nrows = (r + s + 2) * dc;
    let mut m = vec![vec![RatFuncQ::zero(); cols.len()]; nrows];
    for (col, (i, mult)) in cols.iter().enumerate() {
        let sh = &shifted[*i];
        for t in 0..r + s + 2 {
            let p = if t == 0 {
                sh.inhom()
            } else if t > *i && t - 1 - i <= r {
                sh.coeff(t - 1 - i)
            } else {
                continue;
            };
            if p.is_zero() || dc == 0 {
                continue;
            }
            let rem = (mult * p).to_polyx().rem(&cx)?;
            for k in 0..dc {
                m[t * dc + k][col] = rem.coeff(k);
            }
        }
    }
    for v in kernel(&m, cols.len()) {
        let cleared = clear_vector(&v);
        let mut u = vec![BiPoly::zero(); s + 1];
        for ((i, mult), k) in cols.iter().zip(&cleared) {
            if !k.is_zero() {
                u[*i] = &u[*i] + &polyq_times(k, mult);
            }
        }
        if u[0].is_zero() || u[s].is_zero() {
            continue;
        }
        let ymin = u.iter().filter_map(BiPoly::min_x).min().unwrap_or(0);
        if ymin > 0 {
            let d = Mono::new(0, ymin);
            u = u.iter().map(|p| p.div_mono(&d)).collect();
        }
        let (a_inh, a) = combine(rec, &u);
        let div = |p: &BiPoly| p.div_exact(c).ok_or_else(|| Error::Precondition("combination not divisible by c".into()));
        let inhom = div(&a_inh)?;
        let coeffs = a.iter().map(div).collect::<Result<Vec<_>>>()?;
        let (l0, lt) = (&coeffs[0], &coeffs[r + s]);
        if !(l0.is_monomial() && lt.is_monomial()) {
            continue;
        }
        let (tm, lm) = (l0.lm().unwrap(), lt.lm().unwrap());
        return Ok(Some(BimonicResult {
            s,
            multipliers: u,
            inhom,
            coeffs,
            c: c.clone(),
            lead: (lm.x, lm.q),
            trail: (tm.x, tm.q),
        }));
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub smax: usize,
    /// Largest widening of the free windows.
    pub width_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { smax: 12, width_cap: 2 }
    }
}

/// Try `s = 0, 1, …, smax`. The multipliers of `R(n)` and `R(n+s)` are fixed
/// up to a constant by requiring `ℓ_0` and `ℓ_{r+s}` to be monomials: they
/// are `c / p̂_0` and `c / p̂_r(q, q^s y)` times a power of `y`, where `p̂`
/// denotes a coefficient with its monomial factor removed. The multipliers
/// in between range over windows spanning both ends, widened step by step.
pub fn bimonic_search(rec: &InhomRec, opts: SearchOptions) -> Result<Option<BimonicResult>> {
    let r = rec.order();
    let tf = rec.target_factor()?;
    let c = tf.c;
    let (_, h0) = split_monomial(rec.coeff(0));
    let Some(base0) = c.div_exact(&h0) else {
        return Ok(None);
    };
    let deg0 = base0.deg_x().unwrap_or(0) as i64;
    let reach = rec.all().iter().filter_map(BiPoly::deg_x).max().unwrap_or(0) as i64 + c.deg_x().unwrap_or(0) as i64;
    let mut offsets = vec![0i64];
    for e in 1..=reach {
        offsets.push(-e);
        offsets.push(e);
    }
    for s in 0..=opts.smax {
        let (_, hs) = split_monomial(&rec.coeff(r).shift_x(s as u32));
        let Some(base_s) = c.div_exact(&hs) else {
            continue;
        };
        if s == 0 {
            if base0.normalize() != base_s.normalize() {
                continue;
            }
            let w = [Window::Prescribed { shift: 0, base: base0.clone() }];
            if let Some(res) = bimonic_guess(rec, &c, 0, &w)? {
                return Ok(Some(res));
            }
            continue;
        }
        let degs = base_s.deg_x().unwrap_or(0) as i64;
        let widths = if s == 1 { 0 } else { opts.width_cap };
        for w in 0..=widths as i64 {
            for &es in &offsets {
                let mut windows = vec![Window::Prescribed { shift: 0, base: base0.clone() }];
                let lo = 0.min(es) - w;
                let hi = deg0.max(es + degs) + w;
                for _ in 1..s {
                    windows.push(Window::Free { lo, hi });
                }
                windows.push(Window::Prescribed { shift: es, base: base_s.clone() });
                if let Some(res) = bimonic_guess(rec, &c, s, &windows)? {
                    return Ok(Some(res));
                }
            }
        }
    }
    Ok(None)
}

/// Exact values `f(n)` with, per entry, whether it is a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentSeq {
    pub entries: BTreeMap<i64, RatFuncQ>,
    /// Largest interval around the initial values on which every entry is a
    /// Laurent polynomial.
    pub certified_range: Option<(i64, i64)>,
}

impl LaurentSeq {
    pub fn get(&self, n: i64) -> Option<&RatFuncQ> {
        self.entries.get(&n)
    }

    pub fn is_laurent(&self, n: i64) -> bool {
        self.entries.get(&n).is_some_and(RatFuncQ::is_laurent)
    }

    pub fn all_laurent(&self) -> bool {
        self.entries.values().all(RatFuncQ::is_laurent)
    }
}

/// Extend `initial` to every `n` in `from..=to`: forward with the leading
/// coefficient as pivot, backward with the trailing one. The initial values
/// must contain `r` consecutive indices.
pub fn unroll(rec: &InhomRec, initial: &BTreeMap<i64, RatFuncQ>, from: i64, to: i64) -> Result<LaurentSeq> {
    let r = rec.order() as i64;
    let (&lo, _) = initial.iter().next().ok_or(Error::MissingInitial(from))?;
    for n in lo..lo + r {
        if !initial.contains_key(&n) {
            return Err(Error::MissingInitial(n));
        }
    }
    let mut f = initial.clone();
    let mut top = lo + r - 1;
    while f.contains_key(&(top + 1)) {
        top += 1;
    }
    // forward: f(n+r) from R(n)
    let mut m = top + 1;
    while m <= to {
        let n = m - r;
        let pivot = rec.coeff(r as usize).eval_qpow(n);
        if pivot.is_zero() {
            return Err(Error::SingularAt { index: r, n });
        }
        let mut acc = rec.inhom().eval_qpow(n);
        for i in 0..r {
            acc = &acc + &(&rec.coeff(i as usize).eval_qpow(n) * &f[&(n + i)]);
        }
        f.insert(m, -(&acc / &pivot));
        m += 1;
    }
    // backward: f(n) from R(n)
    let mut n = lo - 1;
    while n >= from {
        if !f.contains_key(&n) {
            let pivot = rec.coeff(0).eval_qpow(n);
            if pivot.is_zero() {
                return Err(Error::SingularAt { index: 0, n });
            }
            let mut acc = rec.inhom().eval_qpow(n);
            for i in 1..=r {
                let v = f.get(&(n + i)).ok_or(Error::MissingInitial(n + i))?;
                acc = &acc + &(&rec.coeff(i as usize).eval_qpow(n) * v);
            }
            f.insert(n, -(&acc / &pivot));
        }
        n -= 1;
    }
    let entries: BTreeMap<i64, RatFuncQ> = f.into_iter().filter(|(k, _)| *k >= from.min(lo) && *k <= to.max(top)).collect();
    let laurent = |k: i64| entries.get(&k).is_some_and(RatFuncQ::is_laurent);
    let certified_range = if (lo..lo + r).all(laurent) {
        let mut a = lo;
        while laurent(a - 1) {
            a -= 1;
        }
        let mut b = lo + r - 1;
        while laurent(b + 1) {
            b += 1;
        }
        Some((a, b))
    } else {
        None
    };
    Ok(LaurentSeq { entries, certified_range })
}

/// `(a; q)_k = Π_{j=0}^{k-1} (1 - a q^j)`.
pub fn q_pochhammer(a: &RatFuncQ, k: u32) -> RatFuncQ {
    let mut acc = RatFuncQ::one();
    let mut t = a.clone();
    let q = RatFuncQ::q();
    for _ in 0..k {
        acc = &acc * &(&RatFuncQ::one() - &t);
        if acc.is_zero() {
            break;
        }
        t = &t * &q;
    }
    acc
}

/// Colored Jones polynomial of the twist knot with `p` twists, by its double
/// sum over `0 <= j <= k <= n`.
pub fn colored_jones_twist(p: i64, n: u32) -> RatFuncQ {
    let n_i = n as i64;
    let mut total = RatFuncQ::zero();
    for k in 0..=n {
        let pa = q_pochhammer(&RatFuncQ::q_pow(1 - n_i), k);
        if pa.is_zero() {
            continue;
        }
        let pb = q_pochhammer(&RatFuncQ::q_pow(1 + n_i), k);
        let outer = &pa * &pb;
        let k_i = k as i64;
        for j in 0..=k {
            let j_i = j as i64;
            let e = k_i + p * j_i * (j_i + 1) + j_i * (j_i - 1) / 2;
            let sign = if j % 2 == 0 { -1 } else { 1 };
            let w = &RatFuncQ::q_pow(e).scale(&BigRational::from_integer(sign.into())) * &(&RatFuncQ::q_pow(2 * j_i + 1) - &RatFuncQ::one());
            let num = &(&w * &outer) * &q_pochhammer(&RatFuncQ::q_pow(k_i - j_i + 1), j);
            let den = q_pochhammer(&RatFuncQ::q(), k + j + 1);
            total = &total + &(&num / &den);
        }
    }
    total
}

/// `ℓ_{i,j} = sign · q^{αj + βi + γ} ℓ_{S-i, J-j}` on the homogeneous part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palindromy {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub sign: i8,
    /// `(S, J)`.
    pub span: (usize, u32),
    /// `(α, γ, sign, J')` with `ℓ_{-1,j} = sign · q^{αj + γ} ℓ_{-1,J'-j}`.
    pub inhom: Option<(i64, i64, i8, u32)>,
}

/// `Some((sign, e))` with `a = sign · q^e · b`.
fn monomial_ratio(a: &PolyQ, b: &PolyQ) -> Option<(i8, i64)> {
    let (va, vb) = (a.valuation()?, b.valuation()?);
    let (a0, b0) = (a.unshift(va), b.unshift(vb));
    let e = va as i64 - vb as i64;
    if a0 == b0 {
        Some((1, e))
    } else if a0 == -&b0 {
        Some((-1, e))
    } else {
        None
    }
}

/// Integer solution of `e = Σ_k x_k · row_k` for the given rows, with free
/// unknowns set to zero.
fn affine_fit(rows: &[(Vec<i64>, i64)], nvars: usize) -> Option<Vec<i64>> {
    let mut m: Vec<Vec<RatFuncQ>> = rows
        .iter()
        .map(|(a, e)| a.iter().chain(std::iter::once(e)).map(|&v| RatFuncQ::from_int(v)).collect())
        .collect();
    let pivots = crate::arith::linsolve::rref(&mut m, nvars + 1);
    if pivots.contains(&nvars) {
        return None;
    }
    let mut x = vec![0i64; nvars];
    for (r, &pc) in pivots.iter().enumerate() {
        let v = m[r][nvars].as_integer()?;
        x[pc] = i64::try_from(v).ok()?;
    }
    Some(x)
}

fn coefficient_grid(p: &BiPoly) -> BTreeMap<u32, PolyQ> {
    let mut out = BTreeMap::new();
    if let Some(d) = p.deg_x() {
        for j in 0..=d {
            let c = p.coeff_x(j);
            if !c.is_zero() {
                out.insert(j, c);
            }
        }
    }
    out
}

/// Search for palindromic symmetry of the coefficients of a recurrence
/// written as `Σ_j ℓ_{-1,j} y^j + Σ_{i,j} ℓ_{i,j} y^j f(n+i)`.
pub fn palindromy_check(b: &BimonicResult) -> Option<Palindromy> {
    let grids: Vec<BTreeMap<u32, PolyQ>> = b.coeffs.iter().map(coefficient_grid).collect();
    let s_top = b.coeffs.len() - 1;
    let lo = grids.iter().filter_map(|g| g.keys().next().copied()).min()?;
    let hi = grids.iter().filter_map(|g| g.keys().next_back().copied()).max()?;
    let jspan = lo + hi;
    let mut rows = Vec::new();
    let mut sign = 0i8;
    for (i, g) in grids.iter().enumerate() {
        for (&j, a) in g {
            let partner = grids[s_top - i].get(&(jspan - j))?;
            let (sg, e) = monomial_ratio(a, partner)?;
            if sign != 0 && sg != sign {
                return None;
            }
            sign = sg;
            rows.push((vec![j as i64, i as i64, 1], e));
        }
        // every partner must be present too
        if grids[s_top - i].keys().any(|&j| j > jspan || !g.contains_key(&(jspan - j))) {
            return None;
        }
    }
    let x = affine_fit(&rows, 3)?;
    let inhom = {
        let g = coefficient_grid(&b.inhom);
        match (g.keys().next(), g.keys().next_back()) {
            (Some(&l), Some(&h)) => {
                let span = l + h;
                let mut rows = Vec::new();
                let mut sg0 = 0i8;
                let mut ok = true;
                for (&j, a) in &g {
                    match g.get(&(span - j)).and_then(|p| monomial_ratio(a, p)) {
                        Some((sg, e)) if sg0 == 0 || sg == sg0 => {
                            sg0 = sg;
                            rows.push((vec![j as i64, 1], e));
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    affine_fit(&rows, 2).map(|v| (v[0], v[1], sg0, span))
                } else {
                    None
                }
            }
            _ => None,
        }
    };
    Some(Palindromy {
        alpha: x[0],
        beta: x[1],
        gamma: x[2],
        sign,
        span: (s_top, jspan),
        inhom,
    })
}

/// Evaluate every coefficient at a rational `q`: `table[i + 1][j]` is the
/// coefficient of `y^j` in `ℓ_i` (row 0 is `ℓ_{-1}`).
pub fn evaluate_at(b: &BimonicResult, q: &BigRational) -> Vec<BTreeMap<u32, BigRational>> {
    std::iter::once(&b.inhom).chain(&b.coeffs).map(|p| p.eval_q(q)).collect()
}
