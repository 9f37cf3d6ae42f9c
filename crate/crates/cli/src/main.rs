//! Command-line front end for the determinant calculus: single polynomials,
//! (quasi) Casoratian and Wronskian determinants, set reductions, the six
//! invariance checks and their sweeps, Christoffel-transform diagnostics,
//! scaling-limit convergence, and structural family identities.
//!
//! Exit codes: 0 pass (including skipped-degenerate), 1 verification
//! failure, 2 usage error, 3 internal inconsistency (two routes that must
//! agree disagreed, i.e. a bug in the calculator).

use casorat::builders::{
    casorati_charlier, quasi_casorati_hahn, quasi_casorati_meixner, quasi_wronskian_jacobi,
    quasi_wronskian_laguerre, wronskian_hermite,
};
use casorat::christoffel::{
    proportionality_check_charlier, proportionality_check_meixner, ratio_identity_check,
};
use casorat::families::{family_identity_check, family_poly, FamilyId, ParamSet};
use casorat::limits::{default_scales, verify_limit, LimitKind};
use casorat::report::{Status, VerificationReport};
use casorat::sets::parse_set_lenient;
use casorat::verify::{sweep_range, verify_invariance, TheoremId};
use casorat::{Error, FiniteSet, GaussianRational, Polynomial, Rational, SetTuple};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "casorat", version, about = "exact Casoratian/Wronskian calculus for classical families")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one polynomial of a classical family.
    Poly {
        /// charlier, hermite, meixner, hahn, dual-hahn, laguerre, or jacobi
        family: String,
        /// Degree of the polynomial.
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Build the determinant of one family over a set tuple.
    Caso {
        /// charlier, hermite, meixner, laguerre, hahn, or jacobi
        builder: String,
        #[command(flatten)]
        sets: SetArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Involution, weight, split index, reduction, and Vandermonde of a set.
    Sets {
        /// The set, e.g. "{1,4,5}".
        #[arg(long = "F")]
        f: String,
    },
    /// Check one invariance statement on one set tuple.
    Verify {
        /// charlier, hermite, meixner, laguerre, hahn, or jacobi
        theorem: String,
        #[command(flatten)]
        sets: SetArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run one invariance statement over every tuple within bounds.
    Sweep {
        /// charlier, hermite, meixner, laguerre, hahn, or jacobi
        theorem: String,
        /// Largest element admitted into the subsets.
        #[arg(long)]
        max_elem: u64,
        /// Largest subset size per component; empty components are skipped.
        #[arg(long)]
        max_size: usize,
        /// Smallest element admitted into the subsets.
        #[arg(long, default_value_t = 0)]
        min_elem: u64,
        /// JSON file holding a list of parameter maps, e.g. [{"a":"2"},{"a":"-3/2"}];
        /// overrides the inline parameters.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Christoffel-transform diagnostics: proportionality and the ratio law.
    Christoffel {
        /// charlier or meixner
        kind: String,
        #[command(flatten)]
        sets: SetArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Largest transformed degree to check.
        #[arg(long)]
        n_max: u64,
    },
    /// Convergence of one discrete-to-continuous scaling limit.
    Limits {
        /// charlier-to-hermite, meixner-to-laguerre, hahn-to-jacobi,
        /// hahn-degenerate, wronskian-ch, or wronskian-ml
        which: String,
        /// Comma-separated increasing rational scale points (default 10,100,1000,10000).
        #[arg(long, value_delimiter = ',')]
        scales: Vec<String>,
    },
    /// Structural identities: recurrences, difference equations, ladders, dualities.
    Identities {
        /// charlier, hermite, meixner, hahn, dual-hahn, laguerre, or jacobi
        family: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Largest degree fed into the identities.
        #[arg(long)]
        n_max: u64,
    },
}

#[derive(Args)]
struct SetArgs {
    /// First (or only) set component, e.g. "{1,2}".
    #[arg(long = "F")]
    f: String,

    /// Second component where the builder or theorem takes a pair or trio.
    #[arg(long = "F2")]
    f2: Option<String>,

    /// Third component where the builder or theorem takes a trio.
    #[arg(long = "F3")]
    f3: Option<String>,
}

#[derive(Args)]
struct ParamArgs {
    /// Charlier/Meixner parameter, a rational like "2" or "-3/2".
    #[arg(long)]
    a: Option<String>,
    /// Second Meixner parameter.
    #[arg(long)]
    c: Option<String>,
    /// First Hahn/Laguerre/Jacobi parameter.
    #[arg(long)]
    alpha: Option<String>,
    /// Second Hahn/Jacobi parameter.
    #[arg(long)]
    beta: Option<String>,
    /// Hahn truncation parameter.
    #[arg(long = "N")]
    big_n: Option<String>,
}

fn parse_rational(text: &str) -> Result<Rational, Error> {
    Rational::from_str(text.trim())
        .map_err(|e| Error::Parse(format!("bad rational '{text}': {e}")))
}

fn parse_param(text: &str) -> Result<GaussianRational, Error> {
    Ok(GaussianRational::from_rational(parse_rational(text)?))
}

impl ParamArgs {
    fn to_param_set(&self) -> Result<ParamSet, Error> {
        let mut params = ParamSet::new();
        for (name, value) in [
            ("a", &self.a),
            ("c", &self.c),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("N", &self.big_n),
        ] {
            if let Some(text) = value {
                params = params.with(name, parse_param(text)?);
            }
        }
        Ok(params)
    }
}

impl SetArgs {
    fn component(text: &str) -> Result<FiniteSet, Error> {
        let (set, warnings) = parse_set_lenient(text)?;
        for w in warnings {
            eprintln!("note: {w}");
        }
        Ok(set)
    }

    /// Exactly `arity` components, in order; extra or missing ones are a
    /// usage error.
    fn tuple(&self, arity: usize) -> Result<SetTuple, Error> {
        let mut comps = vec![Self::component(&self.f)?];
        for (given, flag) in [(&self.f2, "--F2"), (&self.f3, "--F3")] {
            match given {
                Some(text) if comps.len() < arity => comps.push(Self::component(text)?),
                Some(_) => {
                    return Err(Error::InvalidParams(format!("{flag} given but only {arity} component(s) expected")))
                }
                None if comps.len() < arity => {
                    return Err(Error::InvalidParams(format!("{flag} is required here")))
                }
                None => {}
            }
        }
        Ok(SetTuple::new(comps))
    }
}

fn emit(cli: &Cli, payload: String) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, payload + "\n")
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display()))),
        None => {
            // A consumer like `head` may close the pipe early; that is not
            // an error worth reporting, let alone a panic.
            use std::io::Write;
            match writeln!(std::io::stdout(), "{payload}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
                Err(e) => Err(Error::InvalidParams(format!("cannot write to stdout: {e}"))),
                Ok(()) => Ok(()),
            }
        }
    }
}

fn report_payload(cli: &Cli, report: &VerificationReport) -> String {
    if cli.json {
        report.to_json()
    } else {
        report.to_string().trim_end().to_string()
    }
}

fn reports_exit(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

/// Description of one built determinant for output.
fn poly_fields(label: &str, p: &Polynomial, degenerate: bool, json: bool) -> String {
    let degree = p.degree().map_or("-".to_string(), |d| d.to_string());
    let leading = p.leading_coefficient().map_or("0".to_string(), |c| c.to_string());
    if json {
        serde_json::json!({
            "builder": label,
            "poly": p.to_string(),
            "degree": p.degree(),
            "leading": leading,
            "degenerate": degenerate,
        })
        .to_string()
    } else {
        format!("poly = {p}\ndegree = {degree}\nleading = {leading}\ndegenerate = {degenerate}")
    }
}

fn load_grid(path: &PathBuf) -> Result<Vec<ParamSet>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
    let raw: Vec<std::collections::BTreeMap<String, String>> = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("grid file must be a JSON list of string maps: {e}")))?;
    let mut grid = Vec::with_capacity(raw.len());
    for map in raw {
        let mut params = ParamSet::new();
        for (name, value) in map {
            params = params.with(&name, parse_param(&value)?);
        }
        grid.push(params);
    }
    Ok(grid)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Poly { family, n, params } => {
            let id = FamilyId::from_str(family)?;
            let p = family_poly(id, *n, &params.to_param_set()?)?;
            let payload = if cli.json {
                serde_json::json!({
                    "family": id.to_string(),
                    "n": n,
                    "poly": p.to_string(),
                    "degree": p.degree(),
                })
                .to_string()
            } else {
                p.to_string()
            };
            emit(cli, payload)?;
            Ok(0)
        }
        Command::Caso { builder, sets, params } => {
            let p = params.to_param_set()?;
            let (poly, degenerate) = match builder.as_str() {
                "charlier" => {
                    let t = sets.tuple(1)?;
                    (casorati_charlier(&t.components()[0], p.get("a")?)?, false)
                }
                "hermite" => {
                    let t = sets.tuple(1)?;
                    (wronskian_hermite(&t.components()[0]), false)
                }
                "meixner" => {
                    let t = sets.tuple(2)?;
                    let [f1, f2] = [&t.components()[0], &t.components()[1]];
                    (quasi_casorati_meixner(f1, f2, p.get("a")?, p.get("c")?)?, false)
                }
                "laguerre" => {
                    let t = sets.tuple(2)?;
                    let [f1, f2] = [&t.components()[0], &t.components()[1]];
                    (quasi_wronskian_laguerre(f1, f2, p.get("alpha")?), false)
                }
                "hahn" => {
                    let t = sets.tuple(3)?;
                    let [f1, f2, f3] = [&t.components()[0], &t.components()[1], &t.components()[2]];
                    let built =
                        quasi_casorati_hahn(f1, f2, f3, p.get("alpha")?, p.get("beta")?, p.get("N")?)?;
                    (built.raw, built.degenerate)
                }
                "jacobi" => {
                    let t = sets.tuple(2)?;
                    let [f1, f2] = [&t.components()[0], &t.components()[1]];
                    let built = quasi_wronskian_jacobi(f1, f2, p.get("alpha")?, p.get("beta")?)?;
                    (built.raw, built.degenerate)
                }
                other => return Err(Error::Parse(format!("unknown builder '{other}'"))),
            };
            emit(cli, poly_fields(builder, &poly, degenerate, cli.json))?;
            Ok(0)
        }
        Command::Sets { f } => {
            let set = SetArgs::component(f)?;
            let involute = set.involute();
            let weight = set.weight();
            let s_index = set.s_index().ok();
            let down = set.downarrow();
            let vandermonde = set.vandermonde();
            let payload = if cli.json {
                serde_json::json!({
                    "F": set.to_string(),
                    "involute": involute.to_string(),
                    "weight": weight,
                    "s": s_index,
                    "down": down.to_string(),
                    "vandermonde": vandermonde.to_string(),
                })
                .to_string()
            } else {
                let s_text = s_index.map_or("-".to_string(), |s| s.to_string());
                format!(
                    "F = {set}\nI(F) = {involute}\nw_F = {weight}\ns_F = {s_text}\nF_down = {down}\nV_F = {vandermonde}"
                )
            };
            emit(cli, payload)?;
            Ok(0)
        }
        Command::Verify { theorem, sets, params } => {
            let t = TheoremId::from_str(theorem)?;
            let tuple = sets.tuple(t.arity())?;
            let report = verify_invariance(t, &tuple, &params.to_param_set()?)?;
            emit(cli, report_payload(cli, &report))?;
            Ok(reports_exit(&[report]))
        }
        Command::Sweep { theorem, max_elem, max_size, min_elem, grid, params } => {
            let t = TheoremId::from_str(theorem)?;
            let grid = match grid {
                Some(path) => load_grid(path)?,
                None => vec![params.to_param_set()?],
            };
            let summary = sweep_range(t, *min_elem, *max_elem, *max_size, &grid)?;
            let payload = if cli.json {
                serde_json::to_string_pretty(&summary).expect("summary serializes")
            } else {
                let mut text = summary.to_string();
                for failure in &summary.failures {
                    text.push_str(&format!("\n  fail: {failure}"));
                }
                text
            };
            emit(cli, payload)?;
            Ok(if summary.is_clean() { 0 } else { 1 })
        }
        Command::Christoffel { kind, sets, params, n_max } => {
            let p = params.to_param_set()?;
            let mut reports = Vec::new();
            match kind.as_str() {
                "charlier" => {
                    let t = sets.tuple(1)?;
                    let set = &t.components()[0];
                    let a = p.get("a")?;
                    reports.push(proportionality_check_charlier(set, a, *n_max)?);
                    if set.is_positive() {
                        reports.push(ratio_identity_check(set, a, *n_max)?);
                    } else {
                        eprintln!("note: ratio law skipped, it needs min F >= 1");
                    }
                }
                "meixner" => {
                    let t = sets.tuple(2)?;
                    let [f1, f2] = [&t.components()[0], &t.components()[1]];
                    reports.push(proportionality_check_meixner(f1, f2, p.get("a")?, p.get("c")?, *n_max)?);
                }
                other => return Err(Error::Parse(format!("unknown transform kind '{other}'"))),
            }
            let payload = if cli.json {
                let items: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| serde_json::from_str(&r.to_json()).expect("report JSON is valid"))
                    .collect();
                serde_json::to_string_pretty(&items).expect("reports serialize")
            } else {
                reports.iter().map(|r| r.to_string().trim_end().to_string()).collect::<Vec<_>>().join("\n")
            };
            emit(cli, payload)?;
            Ok(reports_exit(&reports))
        }
        Command::Limits { which, scales } => {
            let kind = LimitKind::from_str(which)?;
            let points = if scales.is_empty() {
                default_scales()
            } else {
                scales.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?
            };
            let report = verify_limit(kind, &points)?;
            emit(cli, report_payload(cli, &report))?;
            Ok(reports_exit(&[report]))
        }
        Command::Identities { family, params, n_max } => {
            let id = FamilyId::from_str(family)?;
            let report = family_identity_check(id, &params.to_param_set()?, *n_max)?;
            emit(cli, report_payload(cli, &report))?;
            Ok(reports_exit(&[report]))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InternalInconsistency(_) => 3,
                Error::Parse(_)
                | Error::InvalidParams(_)
                | Error::InvalidSet(_)
                | Error::EmptyComponent(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
