//! Command-line front end. Exit codes: 0 success (or shannon-type / all
//! checks passed), 1 negative verdict, 2 error. Errors are written to stderr
//! as `{"code": .., "message": .., "position": ..}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::catalog::{self, NamedInequality};
use crate::entropy::JointDistribution;
use crate::expr::InfExpr;
use crate::parse::{parse_expr, parse_ground};
use crate::point::EntropyPoint;
use crate::print::{print_expr, print_h_form, Style};
use crate::rational::{format_rat, parse_rat, rat, Rat};
use crate::selfdual::{is_self_dual, ConditionOrder, SelfDualSearch, SelfDualVerdict};
use crate::shannon::{elemental_inequalities, is_shannon_type, ShannonVerdict};
use crate::theorem::verify_with_halving;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "infodual", version, about = "Formal duals, balancing and Shannon certificates for information inequalities")]
struct Cli {
    /// Refuse to infer the ground set from the expression; require --ground.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    /// Raw entropy terms.
    H,
    /// Mutual-information terms where possible.
    I,
}

impl From<Form> for Style {
    fn from(f: Form) -> Style {
        match f {
            Form::H => Style::HForm,
            Form::I => Style::IForm,
        }
    }
}

#[derive(clap::Args, Debug)]
struct ExprArgs {
    /// Expression, e.g. "I(A;B|C) - H(A)".
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    /// Ground set as comma-separated labels. Duals depend on it: I(A;B|C)
    /// dualizes differently on A,B,C and on A,B,C,D.
    #[arg(long)]
    ground: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the formal dual of an expression.
    Dual {
        #[command(flatten)]
        input: ExprArgs,
        #[arg(long, value_enum, default_value = "i")]
        form: Form,
    },
    /// Print the balanced version and the per-variable residuals.
    Balance {
        #[command(flatten)]
        input: ExprArgs,
        #[arg(long, value_enum, default_value = "i")]
        form: Form,
    },
    /// Decide whether `expr >= 0` is a Shannon-type inequality.
    Check {
        #[command(flatten)]
        input: ExprArgs,
    },
    /// Search for a self-duality certificate.
    Selfdual {
        #[command(flatten)]
        input: ExprArgs,
        /// Largest image size per variable.
        #[arg(long, default_value_t = 1)]
        max_image: usize,
        /// Only look for instances, not conditional versions.
        #[arg(long)]
        no_conditional: bool,
    },
    /// Evaluate an expression on a distribution file.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        dist: PathBuf,
    },
    /// Entropy of one subset, or the full entropic vector as JSON.
    Entropy {
        #[arg(long)]
        dist: PathBuf,
        /// Comma-separated labels.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Check that the dual of MMRV fails on the five-variable counterexample.
    VerifyTheorem {
        /// Epsilon as p/q; the ratio test compares against eps/2.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List the named inequalities.
    Catalog {
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "i")]
        form: Form,
        #[arg(long)]
        json: bool,
    },
}

fn load_expr(input: &ExprArgs, strict: bool) -> Result<InfExpr> {
    match &input.ground {
        Some(g) => {
            let ground = parse_ground(g)?;
            parse_expr(&input.expr, Some(&ground))
        }
        None if strict => Err(Error::Precondition("--strict requires an explicit --ground".into())),
        None => parse_expr(&input.expr, None),
    }
}

fn read_dist(path: &PathBuf) -> Result<JointDistribution> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    JointDistribution::from_json(&text)
}

/// JSON object keyed by subset (`"ACD"`) with `"p/q"` values.
pub fn coefficient_map(c: &InfExpr) -> Value {
    let mut m = Map::new();
    for (s, r) in c.terms() {
        m.insert(c.ground().subset_key(s), Value::String(format_rat(r)));
    }
    Value::Object(m)
}

fn point_map(h: &EntropyPoint<Rat>) -> Value {
    let mut m = Map::new();
    for s in h.ground().nonempty_subsets() {
        m.insert(h.ground().subset_key(s), Value::String(format_rat(h.get(s))));
    }
    Value::Object(m)
}

pub fn shannon_json(c: &InfExpr) -> (bool, Value) {
    let cert = is_shannon_type(c);
    let shannon = cert.verdict == ShannonVerdict::ShannonType;
    let elementals = elemental_inequalities(c.ground());
    let (multipliers, used) = match &cert.multipliers {
        Some(y) => {
            let mut mult = Map::new();
            let mut used = Map::new();
            for (k, v) in y {
                mult.insert(k.to_string(), Value::String(format_rat(v)));
                used.insert(k.to_string(), Value::String(print_expr(&elementals[*k].expr, Style::IForm)));
            }
            (Value::Object(mult), Value::Object(used))
        }
        None => (Value::Null, Value::Null),
    };
    let value = json!({
        "verdict": if shannon { "shannon-type" } else { "not-shannon-type" },
        "multipliers": multipliers,
        "elementals": used,
        "separator": cert.separator.as_ref().map(point_map),
        "verified": cert.verify(c).is_ok(),
    });
    (shannon, value)
}

fn catalog_json(e: &NamedInequality) -> Value {
    json!({
        "name": e.name,
        "ground": e.ground().labels(),
        "expr": print_h_form(&e.expr),
        "coefficients": coefficient_map(&e.expr),
        "provenance": e.provenance,
    })
}

fn run_command(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Precondition(format!("write failed: {e}"));
    match cli.command {
        Command::Dual { input, form } => {
            let c = load_expr(&input, cli.strict)?;
            writeln!(out, "{}", print_expr(&c.dual(), form.into())).map_err(io)?;
        }
        Command::Balance { input, form } => {
            let c = load_expr(&input, cli.strict)?;
            writeln!(out, "{}", print_expr(&c.balance(), form.into())).map_err(io)?;
            for (label, r) in c.ground().labels().iter().zip(c.residuals()) {
                writeln!(out, "r({label}) = {}", format_rat(&r)).map_err(io)?;
            }
        }
        Command::Check { input } => {
            let c = load_expr(&input, cli.strict)?;
            let (shannon, value) = shannon_json(&c);
            writeln!(out, "{}", value["verdict"].as_str().unwrap_or_default()).map_err(io)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json")).map_err(io)?;
            return Ok(if shannon { EXIT_OK } else { EXIT_NEGATIVE });
        }
        Command::Selfdual { input, max_image, no_conditional } => {
            let c = load_expr(&input, cli.strict)?;
            let cert = is_self_dual(&c, &SelfDualSearch { max_image, allow_conditional: !no_conditional });
            let verdict = match cert.verdict {
                SelfDualVerdict::Instance => "instance",
                SelfDualVerdict::ConditionalVersion => "conditional-version",
                SelfDualVerdict::NotFound => "not-found",
            };
            let substitution = cert.substitution.as_ref().map(|s| {
                let mut m = Map::new();
                for (l, img) in s.pairs() {
                    m.insert(l, json!(img));
                }
                Value::Object(m)
            });
            let order = cert.order.map(|o| match o {
                ConditionOrder::ConditionFirst => "condition-first",
                ConditionOrder::SubstituteFirst => "substitute-first",
            });
            let value = json!({
                "verdict": verdict,
                "substitution": substitution,
                "fresh": cert.fresh,
                "order": order,
                "dual": print_expr(&c.dual(), Style::IForm),
                "verified": cert.verdict != SelfDualVerdict::NotFound && cert.verify(&c),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json")).map_err(io)?;
        }
        Command::Eval { expr, dist } => {
            let d = read_dist(&dist)?;
            let c = parse_expr(&expr, Some(d.ground()))?;
            let report = d.evaluate(&c)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json")).map_err(io)?;
        }
        Command::Entropy { dist, subset } => {
            let d = read_dist(&dist)?;
            match subset {
                Some(s) => {
                    let labels: Vec<&str> = s.split(',').map(str::trim).filter(|l| !l.is_empty()).collect();
                    let mask = d.ground().subset_of(&labels)?;
                    writeln!(out, "{}", d.entropy(mask)?).map_err(io)?;
                }
                None => {
                    let h = d.entropic_vector();
                    let mut m = Map::new();
                    for s in d.ground().nonempty_subsets() {
                        m.insert(d.ground().subset_key(s), json!(h.get(s)));
                    }
                    writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(m)).expect("json")).map_err(io)?;
                }
            }
        }
        Command::VerifyTheorem { eps, json } => {
            let eps = match eps {
                Some(e) => parse_rat(&e)?,
                None => rat(1, 100),
            };
            let report = verify_with_halving(&eps)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json")).map_err(io)?;
            } else {
                writeln!(out, "eps = {}, eps/2 = {}", report.epsilon, report.epsilon_half).map_err(io)?;
                for t in &report.zero_terms {
                    writeln!(out, "  {} = {:e}", t.name, t.value).map_err(io)?;
                }
                writeln!(out, "  I(C;D|E) = {:e}", report.icd_e).map_err(io)?;
                writeln!(out, "  I(A;B|CD) = {:e}", report.iab_cd).map_err(io)?;
                writeln!(out, "  dual(mmrv) on D(eps) = {:e}", report.total).map_err(io)?;
                for c in &report.checks {
                    let status = match (c.passed, c.asserted) {
                        (true, true) => "PASS",
                        (false, true) => "FAIL",
                        (true, false) => "info",
                        (false, false) => "info (not asserted)",
                    };
                    writeln!(out, "{status} {}: {}", c.name, c.detail).map_err(io)?;
                }
                writeln!(out, "{}", if report.all_passed { "all checks passed" } else { "some checks failed" })
                    .map_err(io)?;
            }
            return Ok(if report.all_passed { EXIT_OK } else { EXIT_NEGATIVE });
        }
        Command::Catalog { name, form, json } => {
            let entries: Vec<NamedInequality> = match name {
                Some(n) => vec![catalog::find(&n)
                    .ok_or_else(|| Error::Precondition(format!("no catalog entry named `{n}`")))?],
                None => catalog::catalog(),
            };
            if json {
                let values: Vec<Value> = entries.iter().map(catalog_json).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&values).expect("json")).map_err(io)?;
            } else {
                for e in &entries {
                    writeln!(out, "{} [{}]: {} >= 0", e.name, e.ground(), print_expr(&e.expr, form.into()))
                        .map_err(io)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn error_json(code: &str, message: &str, position: Option<usize>) -> Value {
    let mut v = json!({ "code": code, "message": message });
    if let Some(p) = position {
        v["position"] = json!(p);
    }
    v
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            let _ = writeln!(err, "{}", error_json("usage", first, None));
            return EXIT_ERROR;
        }
    };
    match run_command(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(e.code(), &e.to_string(), e.position()));
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["infodual"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dual_of_basic_inequality_depends_on_ground() {
        let (code, out, _) = call(&["dual", "--expr", "I(A;B|C)", "--ground", "A,B,C,D"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "I(A;B|D)");
        let (_, out3, _) = call(&["dual", "--expr", "I(A;B|C)"]);
        assert_ne!(out3.trim(), "I(A;B|D)");
    }

    #[test]
    fn strict_mode_requires_ground() {
        let (code, _, err) = call(&["--strict", "dual", "--expr", "I(A;B|C)"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"precondition\""));
    }

    #[test]
    fn balance_prints_residuals() {
        let (code, out, _) = call(&["balance", "--expr", "H(X1)", "--ground", "X1,X2", "--form", "h"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines, vec!["H(X1) + H(X2) - H(X1,X2)", "r(X1) = 1", "r(X2) = 0"]);
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(call(&["check", "--expr", "I(A;B)"]).0, 0);
        let (code, out, _) = call(&["check", "--expr", "-H(A)"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("not-shannon-type"));
        assert!(out.contains("\"separator\""));
        let (code, _, err) = call(&["check", "--expr", "I(A;B"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["code"], "syntax");
        assert_eq!(v["position"], 5);
    }

    #[test]
    fn usage_errors_are_json() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["code"], "usage");
    }

    #[test]
    fn selfdual_reports_witness() {
        let (code, out, _) = call(&["selfdual", "--expr", "I(A;B|C)", "--ground", "A,B,C,D"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "instance");
        assert_eq!(v["substitution"]["C"], json!(["D"]));
        assert_eq!(v["verified"], true);
    }

    #[test]
    fn catalog_lookup() {
        let (code, out, _) = call(&["catalog", "--name", "ingleton"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "ingleton [A,B,C,D]: I(A;B|C) + I(A;B|D) + I(C;D) - I(A;B) >= 0");
        assert_eq!(call(&["catalog", "--name", "nope"]).0, 2);
        let (_, out, _) = call(&["catalog", "--json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 5);
    }

    #[test]
    fn verify_theorem_default() {
        let (code, out, _) = call(&["verify-theorem"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("all checks passed"));
        assert_eq!(call(&["verify-theorem", "--eps", "1/4"]).0, 2);
    }
}
