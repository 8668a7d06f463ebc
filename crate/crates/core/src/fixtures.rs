//! Bundled golden examples and a runner that checks them.
//!
//! Every fixture is a text document (see [`crate::text`]) together with the
//! values it is expected to produce. [`run_all`] evaluates all of them and
//! reports one [`Check`] per expectation.

use crate::arith::{BiPoly, GroebnerBasis};
use crate::bimonic::{bimonic_search, colored_jones_twist, SearchOptions};
use crate::desing::{coefficient_ideal, desingularize, order_bound, same_module, shifted_generators, submodule_basis, Side};
use crate::dispersion::{dispersion_factored, dispersion_resultant};
use crate::error::Result;
use crate::text;
use crate::QWeylOp;

#[derive(Clone, Debug)]
pub enum Expect {
    /// q-dispersion against a second factored polynomial, by both methods.
    Dispersion { other: &'static str, value: u64 },
    Bound(usize),
    /// Minimal generator of `I_k`. With `exact` the representative must
    /// match term by term, otherwise up to a unit of `K(q)`.
    Ideal { k: usize, generator: &'static str, exact: bool },
    Desing { side: Side, operator: &'static str },
    /// `M_k` is spanned by the `D`-shifts of the given operators.
    SameModule { k: usize, generators: &'static [&'static str] },
    RoundTrip,
    /// The twist-knot colored Jones values satisfy the recurrence for `n = 0..=upto`.
    Oracle { p: i64, upto: i64 },
    /// Dividing the unknown by `multiplier` turns the recurrence's
    /// homogeneous part into `operator` (up to a unit).
    Substitution { multiplier: &'static str, operator: &'static str },
    /// After the substitution a bimonic recurrence is found with `s <= smax`.
    Bimonic { multiplier: &'static str, smax: usize },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub text: &'static str,
    pub expect: Vec<Expect>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub fixture: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

const INTRO: &str = "kind: operator\nvars: q, x\n(x - 1)*D - q*x + 1\n";

const REMOVABLE: &str = "kind: operator\nvars: q, x\nq^2*x*(q^2 - x)*D - (1 - x)*(1 - q*x)\n";

const REMOVABLE_L: &str = "kind: operator\nvars: q, x\n\
q^12*x*D^3 + q^6*(q^5*x + q^4*x + q^3*x - q*x - x - 1)*D^2\n\
+ (q - 1)*q^2*(q + 1)*(q^2 + q + 1)*(q^3*x + q*x - x - 1)*D\n\
+ (q - 1)^2*(q + 1)*(q^2 + q + 1)*(q*x - 1)\n";

const TWIST: &str = "kind: operator\nvars: q, x\n\
q^2*x^2*(q*x^2 - 1)*D^2\n\
- (q*x - 1)*(q*x + 1)*(q^4*x^4 - q^3*x^3 - q^3*x^2 - q*x^2 - q*x + 1)*D\n\
+ q^2*x^2*(q^3*x^2 - 1)\n";

const TWIST_L: &str = "kind: operator\nvars: q, x\n\
q^4*x^2*D^3\n\
- (q^9*x^4 - q^7*x^3 - q^5*x^3 - q^5*x^2 - q^4*x^2 - q^2*x + 1)*D^2\n\
- q^4*x*(q^4*x^4 - q^3*x^3 - q^3*x^2 - q^2*x^2 - q^2*x - x + q)*D\n\
+ q^7*x^3\n";

const TWIST_REC: &str = "kind: recurrence\nvars: q, n\n\
q^(2*n+2)*(q^(n+2) - 1)*(q^(2*n+1) - 1)*f(n+2)\n\
+ (q^(n+1) - 1)^2*(q^(n+1) + 1)*(q^(n+1) + q^(2*n+1) + q^(2*n+3) + q^(3*n+3) - q^(4*n+4) - 1)*f(n+1)\n\
+ q^(2*n+2)*(q^n - 1)*(q^(2*n+3) - 1)*f(n)\n\
= q^(n+1)*(q^(n+1) + 1)*(q^(2*n+1) - 1)*(q^(2*n+3) - 1)\n";

/// The bundled fixtures.
pub fn all() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "intro",
            source: "first-order operator whose leading factor x - 1 is removable at order two",
            text: INTRO,
            expect: vec![
                Expect::RoundTrip,
                Expect::Bound(2),
                Expect::Desing {
                    side: Side::Leading,
                    operator: "kind: operator\nvars: q, x\nD^2 - (q + 1)*D + q\n",
                },
            ],
        },
        Fixture {
            name: "disp-quadratic",
            source: "irreducible quadratics related by x -> q^2 x",
            text: "kind: factored-poly\nvars: q, x\n(q*x^2 - 1)\n",
            expect: vec![
                Expect::RoundTrip,
                Expect::Dispersion {
                    other: "kind: factored-poly\nvars: q, x\n(q^5*x^2 - 1)\n",
                    value: 2,
                },
            ],
        },
        Fixture {
            name: "disp-linear",
            source: "products of linear factors with one shifted pair",
            text: "kind: factored-poly\nvars: q, x\n(x + 1)*(4*x + q)\n",
            expect: vec![
                Expect::RoundTrip,
                Expect::Dispersion {
                    other: "kind: factored-poly\nvars: q, x\n(q^2*x + 1)*(q^3*x + q + 1)\n",
                    value: 2,
                },
            ],
        },
        Fixture {
            name: "disp-mixed",
            source: "mixed linear and quadratic factors, second polynomial carrying a power of x",
            text: "kind: factored-poly\nvars: q, x\n(q*x - 1)*(q*x + 1)*(q*x^2 - 1)\n",
            expect: vec![
                Expect::RoundTrip,
                Expect::Dispersion {
                    other: "kind: factored-poly\nvars: q, x\nq^9*x^7*(q^2*x - 1)*(q^2*x + 1)*(q^5*x^2 - 1)\n",
                    value: 2,
                },
            ],
        },
        Fixture {
            name: "disp-degree-nine",
            source: "degree nine polynomial against its own q^4 shift",
            text: "kind: factored-poly\nvars: q, x\n5*(q*x + 1)*(x - 3*q)*(x + 2)*(x^3 - q*x + 1)*(2*q*x^3 + 5)\n",
            expect: vec![
                Expect::RoundTrip,
                Expect::Dispersion {
                    other: "kind: factored-poly\nvars: q, x\n\
5*(q^5*x + 1)*(q^4*x - 3*q)*(q^4*x + 2)*(q^12*x^3 - q^5*x + 1)*(2*q^13*x^3 + 5)\n",
                    value: 4,
                },
            ],
        },
        Fixture {
            name: "removable-first-order",
            source: "first-order operator with removable leading factor q^2 - x, desingularized at order three",
            text: REMOVABLE,
            expect: vec![
                Expect::RoundTrip,
                Expect::Bound(4),
                Expect::Ideal {
                    k: 3,
                    generator: "q^12*x",
                    exact: true,
                },
                Expect::Ideal {
                    k: 4,
                    generator: "q^18*x",
                    exact: true,
                },
                Expect::Desing {
                    side: Side::Leading,
                    operator: REMOVABLE_L,
                },
                Expect::SameModule {
                    k: 3,
                    generators: &[REMOVABLE, REMOVABLE_L],
                },
            ],
        },
        Fixture {
            name: "twist-operator",
            source: "normalized twist knot (p = -1) colored Jones operator and its desingularization",
            text: TWIST,
            expect: vec![
                Expect::RoundTrip,
                Expect::Bound(3),
                Expect::Ideal {
                    k: 3,
                    generator: "x^2",
                    exact: false,
                },
                Expect::Desing {
                    side: Side::Leading,
                    operator: TWIST_L,
                },
            ],
        },
        Fixture {
            name: "twist-recurrence",
            source: "inhomogeneous recurrence of the twist knot (p = -1) colored Jones polynomial",
            text: TWIST_REC,
            expect: vec![
                Expect::RoundTrip,
                Expect::Oracle { p: -1, upto: 8 },
                Expect::Substitution {
                    multiplier: "y - 1",
                    operator: TWIST,
                },
                Expect::Bimonic {
                    multiplier: "y - 1",
                    smax: 12,
                },
            ],
        },
    ]
}

pub fn find(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

fn label(e: &Expect) -> String {
    match e {
        Expect::Dispersion { value, .. } => format!("dispersion = {value}"),
        Expect::Bound(b) => format!("order bound = {b}"),
        Expect::Ideal { k, generator, .. } => format!("I_{k} = <{generator}>"),
        Expect::Desing { side, .. } => format!("desingularized ({side})"),
        Expect::SameModule { k, .. } => format!("M_{k} spanned by generators"),
        Expect::RoundTrip => "round trip".into(),
        Expect::Oracle { upto, .. } => format!("oracle satisfies recurrence for n <= {upto}"),
        Expect::Substitution { multiplier, .. } => format!("substitution f -> f/({multiplier})"),
        Expect::Bimonic { smax, .. } => format!("bimonic with s <= {smax}"),
    }
}

fn op(text: &str) -> Result<QWeylOp> {
    text::parse_operator(text)
}

/// `Ok(None)` on success, `Ok(Some(why))` on a mismatch.
fn evaluate(f: &Fixture, e: &Expect) -> Result<Option<String>> {
    let fail = |s: String| Ok(Some(s));
    match e {
        Expect::RoundTrip => {
            let doc = text::parse(f.text)?;
            let printed = text::print(&doc);
            let again = text::parse(&printed)?;
            if again != doc {
                return fail(format!("reparsed document differs:\n{printed}"));
            }
            if text::print(&again) != printed {
                return fail("printing is not stable".into());
            }
        }
        Expect::Dispersion { other, value } => {
            let a = text::parse_factored(f.text)?;
            let b = text::parse_factored(other)?;
            let fac = dispersion_factored(&a, &b)?.value;
            let res = dispersion_resultant(&a.expand(), &b.expand())?.value;
            if fac != *value || res != *value {
                return fail(format!("factored {fac}, resultant {res}"));
            }
        }
        Expect::Bound(b) => {
            let got = order_bound(&op(f.text)?, None)?;
            if got != *b {
                return fail(format!("got {got}"));
            }
        }
        Expect::Ideal { k, generator, exact } => {
            let g = ideal_generator(&op(f.text)?, *k)?;
            let want = text::parse_poly_expr(generator)?;
            let ok = if *exact {
                g == want
            } else {
                g.to_polyx().monic() == want.to_polyx().monic()
            };
            if !ok {
                return fail(format!("got {g}"));
            }
        }
        Expect::Desing { side, operator } => {
            let got = desingularize(&op(f.text)?, *side, None)?.operator;
            let want = op(operator)?.primitive_normalize();
            if got != want {
                return fail(format!("got {}", got.display_with("x")));
            }
        }
        Expect::SameModule { k, generators } => {
            let basis = submodule_basis(&op(f.text)?, *k)?.generators;
            let gens = generators.iter().map(|t| op(t)).collect::<Result<Vec<_>>>()?;
            if !same_module(&basis, &shifted_generators(&gens, *k), *k) {
                return fail("modules differ".into());
            }
        }
        Expect::Oracle { p, upto } => {
            let rec = text::parse_recurrence(f.text)?;
            let jones = |n: i64| (n >= 0).then(|| colored_jones_twist(*p, n as u32));
            for n in 0..=*upto {
                let r = rec.residual(&jones, n)?;
                if !r.is_zero() {
                    return fail(format!("residual at n = {n}: {r}"));
                }
            }
            for n in 0..=*upto {
                if !jones(n).expect("n >= 0").den().is_monomial() {
                    return fail(format!("value at n = {n} is not a Laurent polynomial"));
                }
            }
        }
        Expect::Substitution { multiplier, operator } => {
            let rec = text::parse_recurrence(f.text)?;
            let sub = rec.substitute_multiplier(&text::parse_poly_expr(multiplier)?)?;
            let hom = QWeylOp::from_bipolys(sub.hom()).primitive_normalize();
            let want = op(operator)?.primitive_normalize();
            if hom != want {
                return fail(format!("got {}", hom.display_with("x")));
            }
        }
        Expect::Bimonic { multiplier, smax } => {
            let rec = text::parse_recurrence(f.text)?;
            let sub = rec.substitute_multiplier(&text::parse_poly_expr(multiplier)?)?;
            let opts = SearchOptions {
                smax: *smax,
                ..SearchOptions::default()
            };
            match bimonic_search(&sub, opts)? {
                None => return fail(format!("no solution up to s = {smax}")),
                Some(b) => {
                    if !b.is_bimonic() || !b.verify_identity(&sub) {
                        return fail("result is not a valid bimonic recurrence".into());
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn run(f: &Fixture) -> Vec<Check> {
    f.expect
        .iter()
        .map(|e| {
            let (passed, detail) = match evaluate(f, e) {
                Ok(None) => (true, String::new()),
                Ok(Some(why)) => (false, why),
                Err(err) => (false, format!("error: {err}")),
            };
            Check {
                fixture: f.name.to_string(),
                check: label(e),
                passed,
                detail,
            }
        })
        .collect()
}

pub fn run_labels(f: &Fixture) -> Vec<String> {
    f.expect.iter().map(label).collect()
}

pub fn run_all() -> Vec<Check> {
    all().iter().flat_map(run).collect()
}

/// The single minimal generator of `I_k` in the form stored by fixtures.
pub fn ideal_generator(p: &QWeylOp, k: usize) -> Result<BiPoly> {
    let ideal = coefficient_ideal(p, k)?;
    let gb = GroebnerBasis::compute(&ideal.generators);
    Ok(gb.min_deg_x().expect("nonzero ideal").1.clone())
}
