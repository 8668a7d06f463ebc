//! Serializable command results and their human-readable rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qdesing::arith::BiPoly;
use qdesing::bimonic::{BimonicResult, LaurentSeq, Palindromy};
use qdesing::desing::{CoeffIdeal, DesingReport, OrderBound, SubmoduleBasis};
use qdesing::dispersion::DispersionResult;
use qdesing::fixtures::Check;
use qdesing::text;
use serde::Serialize;

#[derive(Serialize)]
pub struct Witness {
    pub alpha: u64,
    pub gcd: String,
}

#[derive(Serialize)]
pub struct Dispersion {
    pub value: u64,
    pub witness: Option<Witness>,
    pub method: &'static str,
}

impl Dispersion {
    pub fn new(d: &DispersionResult, method: &'static str) -> Self {
        Dispersion {
            value: d.value,
            witness: d.witness.as_ref().map(|(a, g)| Witness {
                alpha: *a,
                gcd: g.to_string(),
            }),
            method,
        }
    }
}

#[derive(Serialize)]
pub struct Bound {
    pub bound: usize,
    pub order: usize,
    pub x_power: usize,
    pub dispersion: Dispersion,
}

impl From<&OrderBound> for Bound {
    fn from(b: &OrderBound) -> Self {
        Bound {
            bound: b.bound,
            order: b.order,
            x_power: b.x_power,
            dispersion: Dispersion::new(&b.dispersion, "resultant"),
        }
    }
}

#[derive(Serialize)]
pub struct Closure {
    pub k: usize,
    pub generators: Vec<String>,
}

impl From<&SubmoduleBasis> for Closure {
    fn from(b: &SubmoduleBasis) -> Self {
        Closure {
            k: b.k,
            generators: b.generators.iter().map(|g| g.display_with("x")).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Ideal {
    pub k: usize,
    pub generators: Vec<String>,
    /// Element of minimal `x`-degree of the reduced Gröbner basis.
    pub minimal: String,
    pub sources: Vec<String>,
}

impl Ideal {
    pub fn new(i: &CoeffIdeal, minimal: &BiPoly) -> Self {
        Ideal {
            k: i.k,
            generators: i.generators.iter().map(ToString::to_string).collect(),
            minimal: minimal.to_string(),
            sources: i.sources.iter().map(|s| s.display_with("x")).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Desing {
    pub input: String,
    pub side: String,
    pub bound: usize,
    pub order: i64,
    pub operator: String,
    pub coefficient: String,
    pub tightness: BTreeMap<usize, String>,
}

impl From<&DesingReport> for Desing {
    fn from(r: &DesingReport) -> Self {
        Desing {
            input: r.input.display_with("x"),
            side: r.side.to_string(),
            bound: r.bound,
            order: r.operator.order(),
            operator: r.operator.display_with("x"),
            coefficient: r.coefficient.to_string(),
            tightness: r.tightness.iter().map(|(k, g)| (*k, g.to_string())).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct PalindromyOut {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub sign: i8,
    pub inhom: Option<InhomPalindromy>,
}

#[derive(Serialize)]
pub struct InhomPalindromy {
    pub alpha: i64,
    pub gamma: i64,
    pub sign: i8,
    pub span: u32,
}

impl From<&Palindromy> for PalindromyOut {
    fn from(p: &Palindromy) -> Self {
        PalindromyOut {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
            sign: p.sign,
            inhom: p.inhom.map(|(alpha, gamma, sign, span)| InhomPalindromy { alpha, gamma, sign, span }),
        }
    }
}

#[derive(Serialize)]
pub struct Bimonic {
    pub s: usize,
    pub order: usize,
    pub c: String,
    pub multipliers: Vec<String>,
    pub inhom: String,
    pub coeffs: Vec<String>,
    pub lead: (u32, u32),
    pub trail: (u32, u32),
    pub identity_verified: bool,
    pub palindromy: Option<PalindromyOut>,
    /// The result as a `recurrence` document.
    pub recurrence: String,
}

impl Bimonic {
    pub fn new(b: &BimonicResult, verified: bool, pal: Option<&Palindromy>) -> Self {
        Bimonic {
            s: b.s,
            order: b.order(),
            c: text::bipoly_in_n(&b.c),
            multipliers: b.multipliers.iter().map(text::bipoly_in_n).collect(),
            inhom: text::bipoly_in_n(&b.inhom),
            coeffs: b.coeffs.iter().map(text::bipoly_in_n).collect(),
            lead: b.lead,
            trail: b.trail,
            identity_verified: verified,
            palindromy: pal.map(PalindromyOut::from),
            recurrence: text::print(&text::Doc::Recurrence(b.recurrence())),
        }
    }
}

#[derive(Serialize)]
pub struct Entry {
    pub n: i64,
    pub value: String,
    pub laurent: bool,
}

#[derive(Serialize)]
pub struct Unroll {
    pub entries: Vec<Entry>,
    pub certified_range: Option<(i64, i64)>,
    pub all_laurent: bool,
}

impl From<&LaurentSeq> for Unroll {
    fn from(s: &LaurentSeq) -> Self {
        Unroll {
            entries: s
                .entries
                .iter()
                .map(|(n, v)| Entry {
                    n: *n,
                    value: v.to_string(),
                    laurent: v.is_laurent(),
                })
                .collect(),
            certified_range: s.certified_range,
            all_laurent: s.all_laurent(),
        }
    }
}

#[derive(Serialize)]
pub struct SupportRow {
    pub coeff_index: i64,
    pub y_exponents: Vec<u32>,
}

#[derive(Serialize)]
pub struct Support {
    pub rows: Vec<SupportRow>,
    pub csv: Option<String>,
}

impl Support {
    pub fn new(profile: &[(i64, Vec<u32>)], csv: Option<String>) -> Self {
        Support {
            rows: profile
                .iter()
                .map(|(i, e)| SupportRow {
                    coeff_index: *i,
                    y_exponents: e.clone(),
                })
                .collect(),
            csv,
        }
    }

    pub fn csv_text(profile: &[(i64, Vec<u32>)]) -> String {
        let mut s = String::from("coeff_index,y_exponent\n");
        for (i, es) in profile {
            for e in es {
                let _ = writeln!(s, "{i},{e}");
            }
        }
        s
    }
}

#[derive(Serialize)]
pub struct CheckOut {
    pub fixture: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Serialize)]
pub struct Fixtures {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckOut>,
}

impl Fixtures {
    pub fn new(checks: &[Check]) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Fixtures {
            passed,
            failed: checks.len() - passed,
            checks: checks
                .iter()
                .map(|c| CheckOut {
                    fixture: c.fixture.clone(),
                    check: c.check.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct FixtureInfo {
    pub name: String,
    pub source: String,
    pub checks: Vec<String>,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
}

#[derive(Serialize)]
pub struct ErrorOut {
    pub error: ErrorBody,
}

/// Human-readable rendering: `key  value` lines with aligned keys, lists
/// indented below their key.
pub fn pretty(v: &serde_json::Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &serde_json::Value) -> Option<String> {
    match v {
        serde_json::Value::Null => Some("-".into()),
        serde_json::Value::Bool(b) => Some(b.to_string()),
        serde_json::Value::Number(n) => Some(n.to_string()),
        serde_json::Value::String(s) if !s.contains('\n') => Some(s.clone()),
        serde_json::Value::Array(a) if a.iter().all(|x| x.is_number()) => {
            Some(format!("({})", a.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &serde_json::Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        serde_json::Value::Object(m) => {
            let width = m.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k:width$}  {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, indent + 2, out);
                    }
                }
            }
        }
        serde_json::Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{s}");
                    }
                    None => {
                        render(x, indent, out);
                        if x.is_object() {
                            out.push('\n');
                        }
                    }
                }
            }
        }
        serde_json::Value::String(s) => {
            for line in s.lines() {
                let _ = writeln!(out, "{pad}{line}");
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{other}");
        }
    }
}
