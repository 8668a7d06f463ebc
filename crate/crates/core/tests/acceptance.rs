//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the external-data criterion prints SKIP when `QDESING_DATA` is unset.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use qdesing::arith::{BiPoly, GroebnerBasis, Mono, PolyMatrix, PolyX, RatFuncQ};
use qdesing::bimonic::{
    bimonic_search, colored_jones_twist, evaluate_at, palindromy_check, q_pochhammer, unroll, BimonicResult, InhomRec,
    SearchOptions,
};
use qdesing::desing::{
    coefficient_ideal, desingularize, module_reduce, order_bound, same_module, shifted_generators, submodule_basis, Side,
};
use qdesing::dispersion::{dispersion_factored, dispersion_resultant, FactoredPoly};
use qdesing::fixtures::ideal_generator;
use qdesing::qweyl::right_divide;
use qdesing::{text, QWeylOp, RatOp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;
type Suite = (&'static str, fn(&mut Gen) -> Result<(), String>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn op(src: &str) -> QWeylOp {
    text::parse_operator(&format!("kind: operator\nvars: q, x\n{src}\n")).expect("valid operator")
}

fn poly(src: &str) -> BiPoly {
    text::parse_poly_expr(src).expect("valid polynomial")
}

fn factored(src: &str) -> FactoredPoly {
    text::parse_factored(&format!("kind: factored-poly\nvars: q, x\n{src}\n")).expect("valid factorization")
}

fn show(p: &QWeylOp) -> String {
    p.display_with("x")
}

fn associate(a: &BiPoly, b: &BiPoly) -> bool {
    a.to_polyx().monic() == b.to_polyx().monic()
}

// ---------------------------------------------------------------- 1

fn dispersion_golden() -> Outcome {
    let cases = [
        ("(q*x^2 - 1)", "(q^5*x^2 - 1)", 2),
        ("(x + 1)*(4*x + q)", "(q^2*x + 1)*(q^3*x + q + 1)", 2),
        ("(q*x - 1)*(q*x + 1)*(q*x^2 - 1)", "q^9*x^7*(q^2*x - 1)*(q^2*x + 1)*(q^5*x^2 - 1)", 2),
        (
            "5*(q*x + 1)*(x - 3*q)*(x + 2)*(x^3 - q*x + 1)*(2*q*x^3 + 5)",
            "5*(q^5*x + 1)*(q^4*x - 3*q)*(q^4*x + 2)*(q^12*x^3 - q^5*x + 1)*(2*q^13*x^3 + 5)",
            4,
        ),
    ];
    for (f, g, want) in cases {
        let (f, g) = (factored(f), factored(g));
        let a = dispersion_factored(&f, &g).map_err(|e| e.to_string())?.value;
        let b = dispersion_resultant(&f.expand(), &g.expand()).map_err(|e| e.to_string())?.value;
        ensure(a == want && b == want, || format!("expected {want}, factored {a}, resultant {b}"))?;
    }
    Ok("4 pairs, factored and resultant paths".into())
}

// ---------------------------------------------------------------- 2

fn intro_desing() -> Outcome {
    let p = op("(x - 1)*D - q*x + 1");
    let got = desingularize(&p, Side::Leading, None).map_err(|e| e.to_string())?.operator;
    let want = op("D^2 - (q + 1)*D + q");
    ensure(got == want, || format!("got {}", show(&got)))?;
    Ok(show(&got))
}

// ---------------------------------------------------------------- 3

const EX_P: &str = "q^2*x*(q^2 - x)*D - (1 - x)*(1 - q*x)";
const EX_L: &str = "q^12*x*D^3 + q^6*(q^5*x + q^4*x + q^3*x - q*x - x - 1)*D^2 \
    + (q - 1)*q^2*(q + 1)*(q^2 + q + 1)*(q^3*x + q*x - x - 1)*D \
    + (q - 1)^2*(q + 1)*(q^2 + q + 1)*(q*x - 1)";

fn removable_chain() -> Outcome {
    let p = op(EX_P);
    let err = |e: qdesing::Error| e.to_string();
    let b = order_bound(&p, None).map_err(err)?;
    ensure(b == 4, || format!("order bound {b}"))?;
    let i3 = ideal_generator(&p, 3).map_err(err)?;
    ensure(i3 == poly("q^12*x"), || format!("I_3 generator {i3}"))?;
    let i4 = ideal_generator(&p, 4).map_err(err)?;
    ensure(i4 == poly("q^18*x"), || format!("I_4 generator {i4}"))?;
    let l = desingularize(&p, Side::Leading, None).map_err(err)?.operator;
    let want = op(EX_L);
    ensure(l == want, || format!("desingularized {}", show(&l)))?;

    let basis = submodule_basis(&p, 3).map_err(err)?.generators;
    let gens = shifted_generators(&[p.clone(), want.clone()], 3);
    for g in &gens {
        let r = module_reduce(g, &basis);
        ensure(r.is_zero(), || format!("{} does not reduce to zero over the basis", show(g)))?;
    }
    for g in &basis {
        let r = module_reduce(g, &gens);
        ensure(r.is_zero(), || format!("{} does not reduce to zero over P, L", show(g)))?;
    }
    ensure(same_module(&basis, &gens, 3), || "Hermite forms differ".into())?;
    Ok("bound 4, I_3 = <q^12*x>, I_4 = <q^18*x>, L exact, M_3 = <P, L>".into())
}

// ---------------------------------------------------------------- 4

const TWIST_P: &str = "q^2*x^2*(q*x^2 - 1)*D^2 \
    - (q*x - 1)*(q*x + 1)*(q^4*x^4 - q^3*x^3 - q^3*x^2 - q*x^2 - q*x + 1)*D \
    + q^2*x^2*(q^3*x^2 - 1)";
const TWIST_L: &str = "q^4*x^2*D^3 \
    - (q^9*x^4 - q^7*x^3 - q^5*x^3 - q^5*x^2 - q^4*x^2 - q^2*x + 1)*D^2 \
    - q^4*x*(q^4*x^4 - q^3*x^3 - q^3*x^2 - q^2*x^2 - q^2*x - x + q)*D \
    + q^7*x^3";

fn twist_operator() -> Outcome {
    let p = op(TWIST_P);
    let err = |e: qdesing::Error| e.to_string();
    let b = order_bound(&p, None).map_err(err)?;
    ensure(b == 3, || format!("order bound {b}"))?;
    let i3 = ideal_generator(&p, 3).map_err(err)?;
    ensure(associate(&i3, &poly("x^2")), || format!("I_3 generator {i3}"))?;
    let l = desingularize(&p, Side::Leading, None).map_err(err)?.operator;
    ensure(l == op(TWIST_L), || format!("desingularized {}", show(&l)))?;
    let i2 = ideal_generator(&p, 2).map_err(err)?;
    ensure(i2.deg_x().unwrap_or(0) > 2, || format!("I_2 generator {i2} is not larger than x^2"))?;
    ensure(i2 == poly("q^3*x^4 - q^2*x^2"), || format!("I_2 generator changed: {i2}"))?;
    Ok(format!("bound 3, I_3 = <x^2>, L exact, I_2 = <{i2}>"))
}

// ---------------------------------------------------------------- 5

const TWIST_REC: &str = "kind: recurrence\nvars: q, n\n\
q^(2*n+2)*(q^(n+2) - 1)*(q^(2*n+1) - 1)*f(n+2)\n\
+ (q^(n+1) - 1)^2*(q^(n+1) + 1)*(q^(n+1) + q^(2*n+1) + q^(2*n+3) + q^(3*n+3) - q^(4*n+4) - 1)*f(n+1)\n\
+ q^(2*n+2)*(q^n - 1)*(q^(2*n+3) - 1)*f(n)\n\
= q^(n+1)*(q^(n+1) + 1)*(q^(2*n+1) - 1)*(q^(2*n+3) - 1)\n";

fn twist_rec() -> InhomRec {
    text::parse_recurrence(TWIST_REC).expect("valid recurrence")
}

fn jones(n: i64) -> Option<RatFuncQ> {
    (n >= 0).then(|| colored_jones_twist(-1, n as u32))
}

fn oracle() -> Outcome {
    let rec = twist_rec();
    for n in 0..=8 {
        let r = rec.residual(&jones, n).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("residual at n = {n}: {r}"))?;
        let v = jones(n).unwrap();
        ensure(v.is_laurent(), || format!("J({n}) = {v} is not a Laurent polynomial"))?;
    }
    Ok("residual zero and Laurent for n = 0..8".into())
}

// ---------------------------------------------------------------- 6

fn normalized_search() -> Result<(InhomRec, BimonicResult), String> {
    let norm = twist_rec().substitute_multiplier(&poly("y - 1")).map_err(|e| e.to_string())?;
    let res = bimonic_search(&norm, SearchOptions::default())
        .map_err(|e| e.to_string())?
        .ok_or("no bimonic recurrence up to s = 12")?;
    Ok((norm, res))
}

fn unit_monomial(p: &BiPoly) -> bool {
    p.is_monomial() && p.lc().abs().is_one()
}

fn bimonic_twist() -> Outcome {
    let (norm, res) = normalized_search()?;
    let (l0, ltop) = (&res.coeffs[0], res.coeffs.last().unwrap());
    ensure(unit_monomial(l0) && unit_monomial(ltop), || format!("extreme coefficients {l0}, {ltop}"))?;
    ensure(res.verify_identity(&norm), || "combination identity fails".into())?;
    let f = |k: i64| &(&RatFuncQ::q_pow(k) - &RatFuncQ::one()) * &colored_jones_twist(-1, k as u32);
    let rec = res.recurrence();
    let init: BTreeMap<i64, RatFuncQ> = (1..=rec.order() as i64).map(|k| (k, f(k))).collect();
    let seq = unroll(&rec, &init, -10, 10).map_err(|e| e.to_string())?;
    for n in -10..=10 {
        ensure(seq.is_laurent(n), || format!("f({n}) = {:?} is not Laurent", seq.get(n)))?;
    }
    for n in 0..=10 {
        ensure(seq.get(n) == Some(&f(n)), || format!("unrolled f({n}) differs from the oracle"))?;
    }
    Ok(format!(
        "s = {}, order {}, l_0 = {}, l_top = {}, Laurent on -10..10",
        res.s,
        res.order(),
        l0.display_with("y"),
        ltop.display_with("y")
    ))
}

// ---------------------------------------------------------------- 7

fn unnormalized_fails() -> Outcome {
    let r = bimonic_search(&twist_rec(), SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.is_none(), || format!("unexpected bimonic recurrence with s = {}", r.as_ref().unwrap().s))?;
    Ok("no bimonic recurrence for s <= 12 (bounded-search evidence)".into())
}

// ---------------------------------------------------------------- 8

struct Gen(ChaCha8Rng);

impl Gen {
    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    fn bipoly(&mut self, dq: u32, dx: u32) -> BiPoly {
        let mut t = Vec::new();
        for _ in 0..self.int(1, 4) {
            t.push((self.int(-3, 3), self.int(0, dq as i64) as u32, self.int(0, dx as i64) as u32));
        }
        BiPoly::from_triples(&t)
    }

    fn nonzero(&mut self, dq: u32, dx: u32) -> BiPoly {
        loop {
            let p = self.bipoly(dq, dx);
            if !p.is_zero() {
                return p;
            }
        }
    }

    fn op(&mut self, order: usize) -> QWeylOp {
        let mut cs: Vec<BiPoly> = (0..order).map(|_| self.bipoly(2, 2)).collect();
        cs.push(self.nonzero(2, 2));
        QWeylOp::from_bipolys(&cs)
    }

    fn x_primitive_op(&mut self, order: usize) -> QWeylOp {
        loop {
            let p = self.op(order);
            if p.is_x_primitive() {
                return p;
            }
        }
    }

    fn polyx(&mut self) -> PolyX {
        self.bipoly(1, 2).to_polyx()
    }

    fn ratq(&mut self) -> RatFuncQ {
        let e = self.int(-4, 4);
        let c = loop {
            let c = self.int(-3, 3);
            if c != 0 {
                break c;
            }
        };
        RatFuncQ::q_pow(e).scale(&BigRational::from_integer(BigInt::from(c)))
    }
}

fn lc_law(g: &mut Gen) -> Result<(), String> {
    for _ in 0..200 {
        let (ra, rb) = (g.int(0, 2) as usize, g.int(0, 2) as usize);
        let (a, b) = (g.op(ra), g.op(rb));
        let lhs = a.mul(&b).lc();
        let rhs = &a.lc() * &b.lc().sigma_pow(a.order());
        ensure(lhs == rhs, || format!("lc law fails for {} and {}", show(&a), show(&b)))?;
    }
    Ok(())
}

fn gauss(g: &mut Gen) -> Result<(), String> {
    for _ in 0..100 {
        let (ra, rb) = (g.int(0, 2) as usize, g.int(0, 2) as usize);
        let (a, b) = (g.x_primitive_op(ra), g.x_primitive_op(rb));
        ensure(a.mul(&b).is_x_primitive(), || format!("product of {} and {} not x-primitive", show(&a), show(&b)))?;
    }
    Ok(())
}

fn division(g: &mut Gen) -> Result<(), String> {
    for _ in 0..200 {
        let (rp, rq) = (g.int(1, 2) as usize, g.int(0, 2) as usize);
        let p = g.op(rp);
        let quo = g.op(rq);
        let rem = if p.order() > 1 && g.int(0, 1) == 1 { g.op(1) } else { g.op(0) };
        let t = quo.mul(&p).add(&rem);
        let (q2, r2) = right_divide(&RatOp::from_op(t.clone()), &p).map_err(|e| e.to_string())?;
        ensure(q2.sub(&RatOp::from_op(quo.clone())).is_zero(), || format!("quotient of {} by {}", show(&t), show(&p)))?;
        ensure(r2.sub(&RatOp::from_op(rem.clone())).is_zero(), || format!("remainder of {} by {}", show(&t), show(&p)))?;
        ensure(q2.mul(&RatOp::from_op(p.clone())).add(&r2).sub(&RatOp::from_op(t)).is_zero(), || "round trip".into())?;
    }
    Ok(())
}

fn hnf(g: &mut Gen) -> Result<(), String> {
    for _ in 0..100 {
        let (r, c) = (g.int(1, 3) as usize, g.int(1, 3) as usize);
        let m = PolyMatrix::from_rows((0..r).map(|_| (0..c).map(|_| g.polyx()).collect()).collect());
        let (h, u) = m.hnf_with_transform();
        ensure(u.mul(&m) == h, || format!("U*M != H for {m:?}"))?;
        let det = u.det();
        ensure(!det.is_zero() && det.degree() == Some(0), || format!("transform not unimodular for {m:?}"))?;
        let mut col = 0;
        for i in 0..h.rows() {
            if h.row_is_zero(i) {
                ensure((i..h.rows()).all(|k| h.row_is_zero(k)), || "zero rows not last".into())?;
                break;
            }
            let pc = (0..h.cols()).find(|&j| !h.get(i, j).is_zero()).unwrap();
            ensure(pc >= col, || "pivots not increasing".into())?;
            col = pc + 1;
            ensure(h.get(i, pc).lc().is_one(), || "pivot not monic".into())?;
            for k in 0..i {
                ensure(h.get(k, pc).deg() < h.get(i, pc).deg(), || "entry above pivot not reduced".into())?;
            }
        }
    }
    Ok(())
}

fn groebner(g: &mut Gen) -> Result<(), String> {
    for _ in 0..50 {
        let input: Vec<BiPoly> = (0..g.int(1, 3)).map(|_| g.nonzero(2, 2)).collect();
        let gb = GroebnerBasis::compute(&input);
        for (b, cof) in gb.basis.iter().zip(&gb.cofactors) {
            let mut acc = BiPoly::zero();
            for (h, f) in cof.iter().zip(&input) {
                acc = &acc + &(h * f);
            }
            ensure(acc == *b, || format!("cofactors do not re-expand for {input:?}"))?;
        }
        for f in &input {
            ensure(gb.contains(f), || "input not in its own ideal".into())?;
        }
        ensure(gb.verify_buchberger(), || "S-pairs do not reduce to zero".into())?;
    }
    Ok(())
}

/// Irreducible factors over `K(q)`: linear `a x + b`, and `x^2 - c q^k`
/// with `c` squarefree and not 1.
fn random_factor(g: &mut Gen) -> BiPoly {
    if g.int(0, 2) == 0 {
        let c = [2, 3, 5, 6, 7][g.int(0, 4) as usize];
        BiPoly::from_triples(&[(1, 0, 2), (-c, g.int(0, 3) as u32, 0)])
    } else {
        loop {
            let a = g.nonzero(2, 0);
            let b = g.nonzero(2, 0);
            let p = &a.mul_mono(&Mono::new(0, 1)) + &b;
            if p.deg_x() == Some(1) {
                return p;
            }
        }
    }
}

fn dispersion_agreement(g: &mut Gen) -> Result<(), String> {
    for _ in 0..50 {
        let fs: Vec<BiPoly> = (0..g.int(1, 3)).map(|_| random_factor(g)).collect();
        let mut gs: Vec<BiPoly> = (0..g.int(0, 2)).map(|_| random_factor(g)).collect();
        for f in &fs {
            if g.int(0, 1) == 1 {
                gs.push(f.shift_x(g.int(0, 4) as u32));
            }
        }
        if gs.is_empty() {
            gs.push(random_factor(g));
        }
        let one = RatFuncQ::one();
        let ff = FactoredPoly::new(one.clone(), fs.iter().map(|b| (b.clone(), 1)).collect()).map_err(|e| e.to_string())?;
        let gg = FactoredPoly::new(one, gs.iter().map(|b| (b.clone(), 1)).collect()).map_err(|e| e.to_string())?;
        let a = dispersion_factored(&ff, &gg).map_err(|e| e.to_string())?.value;
        let b = dispersion_resultant(&ff.expand(), &gg.expand()).map_err(|e| e.to_string())?.value;
        ensure(a == b, || format!("factored {a} vs resultant {b} for {fs:?} / {gs:?}"))?;
    }
    Ok(())
}

fn pochhammer(g: &mut Gen) -> Result<(), String> {
    let q = RatFuncQ::q();
    for _ in 0..100 {
        let a = g.ratq();
        let (m, k) = (g.int(0, 6) as u32, g.int(0, 6) as u32);
        let step = &q_pochhammer(&a, k) * &(&RatFuncQ::one() - &(&a * &q.pow(k as i64).unwrap()));
        ensure(q_pochhammer(&a, k + 1) == step, || format!("step fails for a = {a}, k = {k}"))?;
        let split = &q_pochhammer(&a, m) * &q_pochhammer(&(&a * &q.pow(m as i64).unwrap()), k);
        ensure(q_pochhammer(&a, m + k) == split, || format!("split fails for a = {a}, m = {m}, k = {k}"))?;
    }
    Ok(())
}

fn properties() -> Outcome {
    let mut g = Gen(ChaCha8Rng::seed_from_u64(20240611));
    let suites: [Suite; 7] = [
        ("lc law x200", lc_law),
        ("Gauss x100", gauss),
        ("division x200", division),
        ("HNF x100", hnf),
        ("Groebner x50", groebner),
        ("dispersion x50", dispersion_agreement),
        ("q-Pochhammer x100", pochhammer),
    ];
    let mut done = Vec::new();
    for (name, f) in suites {
        f(&mut g).map_err(|e| format!("{name}: {e}"))?;
        done.push(name);
    }
    Ok(done.join(", "))
}

// ---------------------------------------------------------------- 9

/// Table cells `(i, j, c, e)`: the coefficient of `q^{jn} f(n+i)` is
/// `c * 2^e` at `q = 2`; `i = -1` is the inhomogeneous part.
const PRETZ_TABLE: &[(i64, i64, i64, u32)] = &[
    (3, 0, -1, 4),
    (4, 0, 1, 3),
    (2, 1, -1, 12),
    (3, 1, 18, 7),
    (4, 1, -1, 1),
    (5, 1, 1, 0),
    (-1, 2, 1, 9),
    (2, 2, 33, 10),
    (3, 2, 13, 7),
    (4, 2, 24, 5),
    (-1, 3, 153, 8),
    (1, 3, 1, 16),
    (2, 3, 5, 12),
    (3, 3, 177, 9),
    (4, 3, 3, 9),
    (-1, 4, 93, 11),
    (1, 4, -1, 17),
    (2, 4, 89, 13),
    (3, 4, 3, 14),
    (4, 4, 3, 13),
    (1, 5, 3, 17),
    (2, 5, 3, 17),
    (3, 5, 89, 15),
    (4, 5, -1, 18),
    (-1, 6, -93, 16),
    (1, 6, 3, 18),
    (2, 6, 177, 17),
    (3, 6, 5, 19),
    (4, 6, 1, 22),
    (-1, 7, -153, 18),
    (1, 7, 24, 19),
    (2, 7, 13, 20),
    (3, 7, 33, 22),
    (-1, 8, -1, 24),
    (0, 8, 1, 20),
    (1, 8, -1, 20),
    (2, 8, 18, 25),
    (3, 8, -1, 29),
    (1, 9, 1, 27),
    (2, 9, -1, 27),
];

fn read_doc(dir: &Path, name: &str) -> Result<Option<String>, String> {
    let p = dir.join(name);
    if !p.exists() {
        return Ok(None);
    }
    std::fs::read_to_string(&p).map(Some).map_err(|e| format!("{}: {e}", p.display()))
}

/// Values at `q = 2`, scaled so that the top coefficient is `q^n`.
fn table_at_two(b: &BimonicResult) -> BTreeMap<(i64, i64), BigRational> {
    let two = BigRational::from_integer(BigInt::from(2));
    let rows = evaluate_at(b, &two);
    let top = b.coeffs.last().unwrap();
    let (mono, c) = top.terms().next().unwrap();
    let scale = c * two.pow(mono.q as i32);
    let shift = 1 - mono.x as i64;
    let mut out = BTreeMap::new();
    for (row, vals) in rows.iter().enumerate() {
        for (j, v) in vals {
            if !v.is_zero() {
                out.insert((row as i64 - 1, *j as i64 + shift), v / &scale);
            }
        }
    }
    out
}

fn external_data() -> Option<Outcome> {
    let dir = PathBuf::from(std::env::var_os("QDESING_DATA")?);
    Some(external_checks(&dir))
}

fn external_checks(dir: &Path) -> Outcome {
    let mut done = Vec::new();
    let table1 = [("twist_2.op", 5, "q^3*x^2 - 1"), ("pretz_m2.op", 5, "q^3*x^2 - 1"), ("pretz_2.op", 10, "q^4*x - 1")];
    for (file, bound, gen) in table1 {
        let Some(src) = read_doc(dir, file)? else { continue };
        let p = text::parse_operator(&src).map_err(|e| format!("{file}: {e}"))?;
        let b = order_bound(&p, None).map_err(|e| e.to_string())?;
        ensure(b == bound, || format!("{file}: order bound {b}, expected {bound}"))?;
        let g = ideal_generator(&p, b - 1).map_err(|e| e.to_string())?;
        ensure(associate(&g, &poly(gen)), || format!("{file}: I_(b-1) generator {g}"))?;
        let top = coefficient_ideal(&p, b).map_err(|e| e.to_string())?;
        let gb = GroebnerBasis::compute(&top.generators);
        ensure(gb.min_deg_x().unwrap().1.deg_x() == Some(0), || format!("{file}: I_b is not the unit ideal"))?;
        done.push(file);
    }
    if let Some(src) = read_doc(dir, "pretz_m2.rec")? {
        let rec = text::parse_recurrence(&src).map_err(|e| e.to_string())?;
        let res = bimonic_search(&rec, SearchOptions::default())
            .map_err(|e| e.to_string())?
            .ok_or("pretz_m2.rec: no bimonic recurrence up to s = 12")?;
        let got = table_at_two(&res);
        let want: BTreeMap<(i64, i64), BigRational> = PRETZ_TABLE
            .iter()
            .map(|&(i, j, c, e)| ((i, j), BigRational::from_integer(BigInt::from(c) << e as usize)))
            .collect();
        ensure(got == want, || format!("pretz_m2.rec: table at q = 2 differs: {got:?}"))?;
        let pal = palindromy_check(&res).ok_or("pretz_m2.rec: no palindromy")?;
        ensure((pal.alpha, pal.beta, pal.gamma) == (5, -1, -20), || {
            format!("pretz_m2.rec: palindromy ({}, {}, {})", pal.alpha, pal.beta, pal.gamma)
        })?;
        done.push("pretz_m2.rec");
        if let Some(vals) = read_doc(dir, "pretz_m2.init")? {
            let init = text::parse_values(&vals).map_err(|e| e.to_string())?;
            let seq = unroll(&res.recurrence(), &init, -8, 8).map_err(|e| e.to_string())?;
            for n in 0..=8i64 {
                let (a, b) = (seq.get(n).unwrap(), seq.get(-n).unwrap());
                ensure(*a == -(&RatFuncQ::q_pow(n) * b), || format!("f({n}) != -q^{n} f(-{n})"))?;
            }
            done.push("pretz_m2.init");
        }
    }
    ensure(!done.is_empty(), || format!("no dataset files found in {}", dir.display()))?;
    Ok(done.join(", "))
}

// ----------------------------------------------------------------

macro_rules! report {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("stdout")
    };
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 8] = [
        ("dispersion golden set", dispersion_golden),
        ("intro desingularization", intro_desing),
        ("removable first-order chain", removable_chain),
        ("twist knot operator", twist_operator),
        ("colored Jones oracle", oracle),
        ("bimonic twist recurrence", bimonic_twist),
        ("unnormalized twist recurrence", unnormalized_fails),
        ("property suites", properties),
    ];
    // written around the test harness capture so the lines show up in `cargo test`
    let mut out = std::io::stdout().lock();
    writeln!(out).expect("stdout");
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => report!(out, "PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                report!(out, "FAIL {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    match external_data() {
        None => report!(out, "SKIP 9 external datasets: QDESING_DATA not set"),
        Some(Ok(detail)) => report!(out, "PASS 9 external datasets: {detail}"),
        Some(Err(why)) => {
            report!(out, "FAIL 9 external datasets: {why}");
            failed.push(9);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
