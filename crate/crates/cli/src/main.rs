mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use qdesing::bimonic::{bimonic_search, palindromy_check, support_profile, unroll, InhomRec, SearchOptions};
use qdesing::desing::{self, Side};
use qdesing::dispersion::{dispersion_factored, dispersion_resultant};
use qdesing::{fixtures, text, Error};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qdesing", version, about = "Desingularization of q-difference operators")]
struct Cli {
    /// Aligned plain-text output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// q-dispersion of two polynomials (factored-poly documents).
    Disp {
        f: PathBuf,
        g: PathBuf,
        /// Trust the given factors to be irreducible and compare them pairwise.
        #[arg(long)]
        factored: bool,
        /// Use the shift resultant (the default unless --factored is given).
        #[arg(long)]
        resultant: bool,
    },
    /// Order bound for desingularizing the leading coefficient.
    Bound {
        op: PathBuf,
        /// Factorization of the leading coefficient (factored-poly document).
        #[arg(long)]
        lc_factors: Option<PathBuf>,
    },
    /// Basis of the operators of order at most k in the closure (k defaults to the order bound).
    Closure {
        op: PathBuf,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Generators of the k-th coefficient ideal.
    Ideal {
        op: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Desingularize the leading or trailing coefficient.
    Desing {
        op: PathBuf,
        #[arg(long, default_value = "leading")]
        side: Side,
        #[arg(long)]
        lc_factors: Option<PathBuf>,
    },
    /// Search for a recurrence with monomial extreme coefficients.
    Bimonic {
        rec: PathBuf,
        /// Replace f(n) by f(n)/m(q, y), y = q^n, before searching.
        #[arg(long)]
        subst: Option<String>,
        #[arg(long, default_value_t = 12)]
        smax: usize,
        #[arg(long, default_value_t = 2)]
        width: usize,
        /// Also write the resulting recurrence document to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Extend initial values in both directions.
    Unroll {
        rec: PathBuf,
        #[arg(long)]
        init: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        /// Fail unless every value is a Laurent polynomial.
        #[arg(long)]
        check_laurent: bool,
    },
    /// Support of the coefficients in the (q^n)-grading.
    Support {
        rec: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        subst: Option<String>,
        /// Report the support of the bimonic recurrence found from the input.
        #[arg(long)]
        bimonic: bool,
        #[arg(long, default_value_t = 12)]
        smax: usize,
    },
    /// Bundled golden examples.
    Fixtures {
        #[command(subcommand)]
        cmd: FixtureCmd,
    },
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// Run every check, or those of one fixture.
    Run { name: Option<String> },
    List,
    /// Print the document of a fixture.
    Show { name: String },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    body: report::ErrorBody,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            body: report::ErrorBody {
                kind,
                message: message.into(),
                line: None,
                col: None,
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match &e {
            Error::Parse { line, col, msg } => Failure {
                code: 2,
                body: report::ErrorBody {
                    kind: "parse",
                    message: msg.clone(),
                    line: Some(*line),
                    col: Some(*col),
                },
            },
            _ => Failure::new(3, "precondition", e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(inner) => inner.clone().into(),
            None => Failure::new(1, "io", format!("{e:#}")),
        }
    }
}

type Out = Result<serde_json::Value, Failure>;

fn read(p: &Path) -> anyhow::Result<String> {
    fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
}

fn json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn load_rec(path: &Path, subst: Option<&str>) -> Result<InhomRec, Failure> {
    let rec = text::parse_recurrence(&read(path)?)?;
    Ok(match subst {
        Some(m) => rec.substitute_multiplier(&text::parse_poly_expr(m)?)?,
        None => rec,
    })
}

fn search(rec: &InhomRec, smax: usize, width: usize) -> Result<qdesing::bimonic::BimonicResult, Failure> {
    let opts = SearchOptions { smax, width_cap: width };
    bimonic_search(rec, opts)?.ok_or_else(|| Failure::new(4, "no-solution", format!("no solution up to s = {smax}")))
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Disp {
            f,
            g,
            factored,
            resultant,
        } => {
            let a = text::parse_factored(&read(&f)?)?;
            let b = text::parse_factored(&read(&g)?)?;
            if factored && !resultant {
                return Ok(json(&report::Dispersion::new(&dispersion_factored(&a, &b)?, "factored")));
            }
            let r = dispersion_resultant(&a.expand(), &b.expand())?;
            if factored {
                let fac = dispersion_factored(&a, &b)?;
                if fac.value != r.value {
                    return Err(Failure::new(
                        1,
                        "mismatch",
                        format!("factored dispersion {} differs from resultant dispersion {}", fac.value, r.value),
                    ));
                }
            }
            Ok(json(&report::Dispersion::new(&r, "resultant")))
        }
        Cmd::Bound { op, lc_factors } => {
            let p = text::parse_operator(&read(&op)?)?;
            let fac = match lc_factors {
                Some(path) => Some(text::parse_factored(&read(&path)?)?),
                None => None,
            };
            Ok(json(&report::Bound::from(&desing::order_bound_details(&p, fac.as_ref())?)))
        }
        Cmd::Closure { op, k } => {
            let p = text::parse_operator(&read(&op)?)?;
            let basis = match k {
                Some(k) => desing::submodule_basis(&p, k)?,
                None => desing::weyl_closure(&p)?,
            };
            Ok(json(&report::Closure::from(&basis)))
        }
        Cmd::Ideal { op, k } => {
            let p = text::parse_operator(&read(&op)?)?;
            let ideal = desing::coefficient_ideal(&p, k)?;
            let min = fixtures::ideal_generator(&p, k)?;
            Ok(json(&report::Ideal::new(&ideal, &min)))
        }
        Cmd::Desing { op, side, lc_factors } => {
            let p = text::parse_operator(&read(&op)?)?;
            let fac = match lc_factors {
                Some(path) => Some(text::parse_factored(&read(&path)?)?),
                None => None,
            };
            Ok(json(&report::Desing::from(&desing::desingularize(&p, side, fac.as_ref())?)))
        }
        Cmd::Bimonic {
            rec,
            subst,
            smax,
            width,
            output,
        } => {
            let rec = load_rec(&rec, subst.as_deref())?;
            let b = search(&rec, smax, width)?;
            let pal = palindromy_check(&b);
            let out = report::Bimonic::new(&b, b.verify_identity(&rec), pal.as_ref());
            if let Some(path) = output {
                fs::write(&path, &out.recurrence)
                    .with_context(|| format!("cannot write {}", path.display()))
                    .map_err(Failure::from)?;
            }
            Ok(json(&out))
        }
        Cmd::Unroll {
            rec,
            init,
            from,
            to,
            check_laurent,
        } => {
            let rec = load_rec(&rec, None)?;
            let vals = text::parse_values(&read(&init)?)?;
            let seq = unroll(&rec, &vals, from, to)?;
            if check_laurent && !seq.all_laurent() {
                let bad: Vec<String> =
                    seq.entries.keys().filter(|&&n| !seq.is_laurent(n)).map(ToString::to_string).collect();
                return Err(Failure::new(1, "not-laurent", format!("non-Laurent values at n = {}", bad.join(", "))));
            }
            Ok(json(&report::Unroll::from(&seq)))
        }
        Cmd::Support {
            rec,
            csv,
            subst,
            bimonic,
            smax,
        } => {
            let rec = load_rec(&rec, subst.as_deref())?;
            let profile = if bimonic {
                search(&rec, smax, SearchOptions::default().width_cap)?.support_profile()
            } else {
                support_profile(rec.all(), -1)
            };
            let path = match csv {
                Some(path) => {
                    fs::write(&path, report::Support::csv_text(&profile))
                        .with_context(|| format!("cannot write {}", path.display()))
                        .map_err(Failure::from)?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            Ok(json(&report::Support::new(&profile, path)))
        }
        Cmd::Fixtures { cmd } => match cmd {
            FixtureCmd::List => Ok(json(
                &fixtures::all()
                    .iter()
                    .map(|f| report::FixtureInfo {
                        name: f.name.into(),
                        source: f.source.into(),
                        checks: fixtures::run_labels(f),
                    })
                    .collect::<Vec<_>>(),
            )),
            FixtureCmd::Show { name } => {
                let f = fixtures::find(&name).ok_or_else(|| Failure::new(3, "precondition", format!("unknown fixture `{name}`")))?;
                Ok(serde_json::Value::String(f.text.to_string()))
            }
            FixtureCmd::Run { name } => {
                let checks = match name {
                    Some(n) => {
                        let f = fixtures::find(&n).ok_or_else(|| Failure::new(3, "precondition", format!("unknown fixture `{n}`")))?;
                        fixtures::run(&f)
                    }
                    None => fixtures::run_all(),
                };
                let out = report::Fixtures::new(&checks);
                if out.failed > 0 {
                    return Err(Failure {
                        code: 1,
                        body: report::ErrorBody {
                            kind: "fixtures-failed",
                            message: serde_json::to_string(&out).expect("serializable"),
                            line: None,
                            col: None,
                        },
                    });
                }
                Ok(json(&out))
            }
        },
    }
}

fn emit(v: &serde_json::Value, pretty: bool) -> String {
    match (pretty, v) {
        (_, serde_json::Value::String(s)) => s.clone(),
        (true, _) => report::pretty(v),
        (false, _) => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(v) => {
            print!("{}", emit(&v, cli.pretty));
            ExitCode::SUCCESS
        }
        Err(f) => {
            let out = report::ErrorOut { error: f.body };
            eprintln!("{}", serde_json::to_string(&out).expect("serializable"));
            ExitCode::from(f.code)
        }
    }
}
