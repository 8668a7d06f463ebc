//! Order bounds, the submodules `M_k` of the contraction ideal, coefficient
//! ideals `I_k`, and desingularized operators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{BiPoly, GroebnerBasis, PolyMatrix, PolyX};
use crate::dispersion::{dispersion_resultant, DispersionResult, FactoredPoly};
use crate::error::{Error, Result};
use crate::qweyl::{right_divide, QWeylOp, RatOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Side {
    #[default]
    Leading,
    Trailing,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leading" => Ok(Side::Leading),
            "trailing" => Ok(Side::Trailing),
            _ => Err(Error::Precondition(format!("unknown side `{s}`"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Leading => "leading",
            Side::Trailing => "trailing",
        })
    }
}

/// Details of an order bound computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBound {
    pub bound: usize,
    pub order: usize,
    /// Power of `x` stripped from the leading coefficient.
    pub x_power: usize,
    pub dispersion: DispersionResult,
}

/// Generators of `M_k` over `K(q)[x]`, one per order `r..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleBasis {
    pub k: usize,
    pub generators: Vec<QWeylOp>,
}

/// Generators of `I_k`, with the operators of `M_k` they come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffIdeal {
    pub k: usize,
    pub generators: Vec<BiPoly>,
    pub sources: Vec<QWeylOp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesingReport {
    pub input: QWeylOp,
    pub side: Side,
    pub bound: usize,
    pub operator: QWeylOp,
    /// The extreme coefficient of `operator` on the requested side.
    pub coefficient: BiPoly,
    /// Minimal-degree generator of `I_k` for each `k` from the order up to the bound
    /// (computed on the mirrored operator for the trailing side).
    pub tightness: BTreeMap<usize, BiPoly>,
}

fn check_operator(p: &QWeylOp) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    if p.order() < 1 {
        return Err(Error::OrderTooSmall(p.order()));
    }
    if p.tc().is_zero() {
        return Err(Error::ZeroTrailing);
    }
    Ok(p.order() as usize)
}

/// `r + dis(ℓ̃_r, ℓ_0)` with `ℓ_r = x^e ℓ̃_r`.
///
/// When a factorization of `ℓ_r` is supplied, the dispersion is taken factor by
/// factor against `ℓ_0` (powers of `x` are skipped); otherwise `ℓ̃_r` is used
/// as a whole.
pub fn order_bound_details(p: &QWeylOp, lc_factors: Option<&FactoredPoly>) -> Result<OrderBound> {
    let r = check_operator(p)?;
    let (e, stripped) = p.lc().strip_x();
    let l0 = p.tc();
    let dispersion = match lc_factors {
        None => dispersion_resultant(&stripped, &l0)?,
        Some(fp) => {
            if fp.expand() != p.lc() {
                return Err(Error::Precondition("factorization does not match the leading coefficient".into()));
            }
            let mut best = DispersionResult { value: 0, witness: None };
            for (b, _) in &fp.factors {
                let (_, f) = b.to_polyx().strip_x();
                if f.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let d = dispersion_resultant(&f, &l0)?;
                if d.value > best.value {
                    best = d;
                }
            }
            best
        }
    };
    Ok(OrderBound {
        bound: r + dispersion.value as usize,
        order: r,
        x_power: e,
        dispersion,
    })
}

pub fn order_bound(p: &QWeylOp, lc_factors: Option<&FactoredPoly>) -> Result<usize> {
    Ok(order_bound_details(p, lc_factors)?.bound)
}

/// Rows `0..=k`: the remainders of `D^j` under right division by `P`, all
/// multiplied by the common denominator `Π_{i=0}^{k-r} σ^i(ℓ_r)`.
///
/// `T = Σ v_j D^j` lies in `Cont(P)` exactly when `v` is in the left kernel.
fn remainder_matrix(p: &QWeylOp, k: usize) -> PolyMatrix {
    let r = p.order() as usize;
    let l = p.coeffs();
    let lr = &l[r];
    let unit = |j: usize| -> Vec<PolyX> { (0..r).map(|m| if m == j { PolyX::one() } else { PolyX::zero() }).collect() };
    let mut nums: Vec<Vec<PolyX>> = (0..r).map(unit).collect();
    let mut v = unit(r - 1);
    for _ in r..=k {
        let sv: Vec<PolyX> = v.iter().map(|c| c.sigma_pow(1)).collect();
        let top = &sv[r - 1];
        let next: Vec<PolyX> = (0..r)
            .map(|m| {
                let a = if m == 0 { PolyX::zero() } else { lr * &sv[m - 1] };
                &a - &(top * &l[m])
            })
            .collect();
        nums.push(next.clone());
        v = next;
    }
    let sig: Vec<PolyX> = (0..=k - r).map(|i| lr.sigma_pow(i as i64)).collect();
    let rows = nums
        .into_iter()
        .enumerate()
        .map(|(j, row)| {
            let lo = if j < r { 0 } else { j - r + 1 };
            let mut f = PolyX::one();
            for s in &sig[lo.min(sig.len())..] {
                f = &f * s;
            }
            row.iter().map(|c| c * &f).collect()
        })
        .collect();
    PolyMatrix::from_rows(rows)
}

/// Triangular basis of `M_k`: row `i` has order `k - i` and its leading
/// coefficient is the monic Hermite pivot.
fn triangular_basis(p: &QWeylOp, k: usize) -> Result<Vec<QWeylOp>> {
    let r = check_operator(p)?;
    if k < r {
        return Err(Error::CapBelowOrder { k, r });
    }
    let n = remainder_matrix(p, k);
    let kernel = n.left_kernel();
    debug_assert_eq!(kernel.len(), k + 1 - r);
    let reversed = PolyMatrix::from_rows(kernel.into_iter().map(|row| row.into_iter().rev().collect()).collect());
    let (h, _) = reversed.hnf_with_transform();
    Ok((0..h.rows())
        .filter(|&i| !h.row_is_zero(i))
        .map(|i| QWeylOp::new(h.row(i).iter().rev().cloned().collect()))
        .collect())
}

/// A free `K(q)[x]`-basis of `M_k = {T ∈ Cont(P) : ord T ≤ k}`, primitive
/// normalized and sorted by order.
pub fn submodule_basis(p: &QWeylOp, k: usize) -> Result<SubmoduleBasis> {
    let mut generators: Vec<QWeylOp> = triangular_basis(p, k)?.iter().map(QWeylOp::primitive_normalize).collect();
    generators.sort_by_key(|g| (g.order(), g.lc().deg()));
    Ok(SubmoduleBasis { k, generators })
}

/// Generators in `Q[q][x]` of the `k`-th coefficient ideal. The triangular
/// basis has exactly one element of order `k`, so `I_k` is principal over
/// `K(q)[x]`; its generator is that element's leading coefficient after the
/// whole operator has been made primitive.
pub fn coefficient_ideal(p: &QWeylOp, k: usize) -> Result<CoeffIdeal> {
    let basis = triangular_basis(p, k)?;
    let top = basis
        .iter()
        .find(|t| t.order() == k as i64)
        .expect("an element of order k exists")
        .primitive_normalize();
    let g = BiPoly::try_from_polyx(&top.lc()).expect("primitive operators have polynomial coefficients");
    Ok(CoeffIdeal {
        k,
        generators: vec![g],
        sources: vec![top],
    })
}

/// Generators of the q-Weyl closure: `M_b` for the order bound `b`.
pub fn weyl_closure(p: &QWeylOp) -> Result<SubmoduleBasis> {
    let b = order_bound(p, None)?;
    submodule_basis(p, b)
}

/// The element of the reduced lex Gröbner basis of minimal `x`-degree, and
/// the operator assembled from the cofactors so that its `D^k` coefficient
/// is that element.
fn minimal_element(ideal: &CoeffIdeal) -> (BiPoly, QWeylOp) {
    let gb = GroebnerBasis::compute(&ideal.generators);
    let (idx, g) = gb.min_deg_x().expect("nonzero ideal");
    let mut l = QWeylOp::zero();
    for (h, t) in gb.cofactors[idx].iter().zip(&ideal.sources) {
        if !h.is_zero() {
            l = l.add(&t.lmul_poly(&h.to_polyx()));
        }
    }
    (g.clone(), l)
}

/// Desingularize the leading (or, through [`QWeylOp::mirror`], trailing)
/// coefficient of `P`.
///
/// The coefficient ideals are computed for every order from `r` up to the
/// order bound `b`; the result has the smallest order at which the minimal
/// `x`-degree of `I_b` is already attained.
pub fn desingularize(p: &QWeylOp, side: Side, lc_factors: Option<&FactoredPoly>) -> Result<DesingReport> {
    check_operator(p)?;
    let work = match side {
        Side::Leading => p.clone(),
        Side::Trailing => p.mirror()?,
    };
    let factors = match side {
        Side::Leading => lc_factors,
        Side::Trailing => None,
    };
    let b = order_bound(&work, factors)?;
    let r = work.order() as usize;
    let mut mins: BTreeMap<usize, (BiPoly, QWeylOp)> = BTreeMap::new();
    for k in r..=b {
        mins.insert(k, minimal_element(&coefficient_ideal(&work, k)?));
    }
    let target = mins[&b].0.deg_x();
    let (&k, (_, l)) = mins.iter().find(|(_, (g, _))| g.deg_x() == target).unwrap();
    debug_assert!(k <= b);
    let mut op = proper_quotient_form(l, &work)?.primitive_normalize();
    if side == Side::Trailing {
        op = op.mirror()?.primitive_normalize();
    }
    let coefficient = match side {
        Side::Leading => op.lc(),
        Side::Trailing => op.tc(),
    };
    Ok(DesingReport {
        input: p.clone(),
        side,
        bound: b,
        coefficient: BiPoly::try_from_polyx(&coefficient).expect("polynomial coefficient"),
        operator: op,
        tightness: mins.into_iter().map(|(k, (g, _))| (k, g)).collect(),
    })
}

/// Canonical representative of `L + M_{k-1}` for `L = Q P` of order `k`:
/// the polynomial parts of the coefficients `Q_i`, `i < k - r`, are removed by
/// subtracting `poly(Q_i) D^i P`, leaving proper fractions below the top.
pub fn proper_quotient_form(l: &QWeylOp, p: &QWeylOp) -> Result<QWeylOp> {
    let (q, rem) = right_divide(&RatOp::from_op(l.clone()), p)?;
    if !rem.is_zero() {
        return Err(Error::Precondition("operator is not in the contraction ideal".into()));
    }
    let fracs = q.to_fracs();
    let mut out = l.clone();
    for (i, f) in fracs.iter().enumerate().take(fracs.len().saturating_sub(1)) {
        let (poly, _) = f.poly_part();
        if !poly.is_zero() {
            out = out.sub(&p.shift_left(i).lmul_poly(&poly));
        }
    }
    Ok(out)
}

/// Reduce `t` against generators by repeatedly cancelling its leading term
/// with a `K(q)[x]`-multiple of a generator of the same order; returns the
/// remainder (zero when `t` lies in their span).
pub fn module_reduce(t: &QWeylOp, gens: &[QWeylOp]) -> QWeylOp {
    let mut t = t.clone();
    'outer: while !t.is_zero() {
        let m = t.order();
        for g in gens.iter().filter(|g| g.order() == m) {
            if let Some(c) = t.lc().div_exact(&g.lc()) {
                t = t.sub(&g.lmul_poly(&c));
                continue 'outer;
            }
        }
        break;
    }
    t
}

/// Whether two families of operators of order at most `k` span the same
/// `K(q)[x]`-module, decided by comparing Hermite forms of their
/// coefficient vectors.
pub fn same_module(a: &[QWeylOp], b: &[QWeylOp], k: usize) -> bool {
    let hermite = |ops: &[QWeylOp]| -> Option<Vec<Vec<PolyX>>> {
        let mut rows = Vec::new();
        for op in ops.iter().filter(|o| !o.is_zero()) {
            if op.order() > k as i64 {
                return None;
            }
            let c = op.coeffs();
            rows.push((0..=k).rev().map(|i| c.get(i).cloned().unwrap_or_else(PolyX::zero)).collect());
        }
        if rows.is_empty() {
            return Some(Vec::new());
        }
        let (h, _) = PolyMatrix::from_rows(rows).hnf_with_transform();
        Some((0..h.rows()).filter(|&i| !h.row_is_zero(i)).map(|i| h.row(i).to_vec()).collect())
    };
    match (hermite(a), hermite(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// All operators `D^i G` of order at most `k`, for the given generators.
pub fn shifted_generators(gens: &[QWeylOp], k: usize) -> Vec<QWeylOp> {
    let mut out = Vec::new();
    for g in gens {
        let mut i = 0;
        while g.order() + i as i64 <= k as i64 {
            out.push(g.shift_left(i));
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(t: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_triples(t)
    }

    #[test]
    fn intro_operator() {
        let p = QWeylOp::from_bipolys(&[bp(&[(-1, 1, 1), (1, 0, 0)]), bp(&[(1, 0, 1), (-1, 0, 0)])]);
        let rep = desingularize(&p, Side::Leading, None).unwrap();
        let expected = QWeylOp::from_bipolys(&[bp(&[(1, 1, 0)]), bp(&[(-1, 1, 0), (-1, 0, 0)]), BiPoly::one()]);
        assert_eq!(rep.operator, expected);
        assert_eq!(rep.bound, 2);
    }

    #[test]
    fn first_order_constant_lc() {
        let p = QWeylOp::from_bipolys(&[bp(&[(-1, 0, 0)]), BiPoly::one()]);
        assert_eq!(order_bound(&p, None).unwrap(), 1);
        let b = weyl_closure(&p).unwrap();
        assert_eq!(b.generators, vec![p]);
    }

    #[test]
    fn cap_below_order() {
        let p = QWeylOp::from_bipolys(&[bp(&[(-1, 0, 0)]), BiPoly::one(), BiPoly::one()]);
        assert!(matches!(submodule_basis(&p, 1), Err(Error::CapBelowOrder { .. })));
    }
}
