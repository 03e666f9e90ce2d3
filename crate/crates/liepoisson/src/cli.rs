//! Command-line front end. `run` is the whole program minus process exit,
//! so integration tests can drive it with in-memory streams.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factorization::{self, RANK_REL};
use crate::group_case::{DensityReport, LeafCoordinates};
use crate::json::MatrixJson;
use crate::lie_core::SpaceInstance;
use crate::linalg::{frob, Mat, C64};
use crate::verify::{run_suite, Overrides, Suite};
use crate::weyl;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Reconstruction tolerance for `factor`, before `LIEPOISSON_TOL_SCALE`.
pub const FACTOR_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "liepoisson", version, about = "Poisson structures on symmetric spaces: factorizations, leaf coordinates, verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a matrix given as matrix JSON.
    Factor(FactorArgs),
    /// Reduced-word coordinates on a leaf of SU(n).
    Leaf(LeafArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FactorKind {
    Iwasawa,
    Birkhoff,
    BruhatCell,
    CartanEmbed,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(value_enum)]
    pub kind: FactorKind,
    /// `grass:p,q` or `group:n`; defaults to the instance recorded in the input.
    #[arg(long)]
    pub instance: Option<String>,
    /// Matrix JSON file, `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LeafKind {
    Coords,
    Form,
    Density,
    Momentum,
}

#[derive(Debug, Args)]
pub struct LeafArgs {
    #[arg(value_enum)]
    pub kind: LeafKind,
    #[arg(long)]
    pub n: usize,
    /// Reduced word, e.g. "1 2 1" (empty for the identity leaf).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub word: String,
    /// Comma-separated complex numbers, e.g. "1+0i,-2.5i".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub zeta: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub instance: String,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    /// Per-check tolerance, `name=value`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Outcome of a command: JSON payload plus exit code.
struct Outcome {
    payload: Value,
    code: i32,
}

/// Parses `"a+bi"`, `"-2i"`, `"3"`; comma-separated lists go through [`parse_complex_list`].
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<C64>().map_err(|_| Error::Parse(format!("bad complex literal '{s}'")))
}

pub fn parse_complex_list(s: &str) -> Result<Vec<C64>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(parse_complex).collect()
}

/// Per-check overrides from `name=value` strings.
pub fn parse_tol_overrides(items: &[String], base: Overrides) -> Result<Overrides> {
    let mut o = base;
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("tolerance override '{item}' is not name=value")))?;
        let v: f64 = value
            .trim()
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite() && *v >= 0.0)
            .ok_or_else(|| Error::Parse(format!("bad tolerance in '{item}'")))?;
        o.per_check.insert(name.trim().to_string(), v);
    }
    Ok(o)
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Resolves the instance and the stored matrix from flag and file.
fn load_matrix(flag: Option<&str>, text: &str) -> Result<(SpaceInstance, Mat)> {
    let mj = MatrixJson::parse(text)?;
    let from_file = mj.instance()?;
    let inst = match (flag, from_file) {
        (Some(f), Some(file)) => {
            let f: SpaceInstance = f.parse()?;
            if f != file {
                return Err(Error::Instance(format!("--instance {f} disagrees with input ({file})")));
            }
            f
        }
        (Some(f), None) => f.parse()?,
        (None, Some(file)) => file,
        (None, None) => return Err(Error::Instance("plain matrix input needs --instance".into())),
    };
    let m = mj.to_matrix()?;
    if m.nrows() != inst.n_total || m.ncols() != inst.n_total {
        return Err(Error::Shape(format!("expected {0}x{0} matrix for {inst}", inst.n_total)));
    }
    Ok((inst, m))
}

fn rel_residual(approx: &Mat, exact: &Mat) -> f64 {
    frob(&(approx - exact)) / frob(exact).max(1.0)
}

fn cells_json(cells: &[weyl::WeylElement]) -> Value {
    json!(cells.iter().map(|w| w.word_string()).collect::<Vec<_>>())
}

fn cmd_factor(a: &FactorArgs, overrides: &Overrides) -> Result<Outcome> {
    let (inst, g) = load_matrix(a.instance.as_deref(), &read_input(&a.input)?)?;
    let enc = |m: &Mat| serde_json::to_value(MatrixJson::from_instance(&inst, m)).unwrap_or(Value::Null);
    let tol = FACTOR_TOL * overrides.scale;
    let (payload, residual) = match a.kind {
        FactorKind::Iwasawa => {
            let f = factorization::iwasawa(&inst, &g)?;
            let r = rel_residual(&f.product(), &g);
            (json!({"l": enc(&f.l), "a": enc(&f.a), "u": enc(&f.u), "a0": enc(&f.a0), "a1": enc(&f.a1)}), Some(r))
        }
        FactorKind::Birkhoff => {
            let f = factorization::birkhoff(&inst, &g)?;
            let r = rel_residual(&f.product(), &g);
            (
                json!({"cells": cells_json(&f.w), "l": enc(&f.l), "m": enc(&f.m), "a": enc(&f.a), "u_plus": enc(&f.u_plus)}),
                Some(r),
            )
        }
        FactorKind::BruhatCell => {
            let cells = factorization::bruhat_cells(&inst, &g)?;
            let perms: Vec<Vec<usize>> = inst
                .split_blocks(&g)
                .iter()
                .map(factorization::bruhat_perm)
                .collect::<Result<_>>()?;
            (json!({"cells": cells_json(&cells), "perms": perms, "rank_rel": RANK_REL}), None)
        }
        FactorKind::CartanEmbed => {
            let image = factorization::cartan_embed(&inst, &g);
            let layer = factorization::layer_of(&inst, &g).ok();
            (json!({"image": enc(&image), "layer": layer.map(|c| cells_json(&c))}), None)
        }
    };
    let mut payload = payload;
    payload["instance"] = json!(inst.to_string());
    let code = match residual {
        Some(r) => {
            payload["residual"] = json!(r);
            payload["tol"] = json!(tol);
            if r <= tol { EXIT_PASS } else { EXIT_FAIL }
        }
        None => EXIT_PASS,
    };
    Ok(Outcome { payload, code })
}

fn cmd_leaf(a: &LeafArgs) -> Result<Outcome> {
    let word = weyl::parse_word(&a.word)?;
    let zeta = parse_complex_list(&a.zeta)?;
    let coords = LeafCoordinates::new(a.n, word, zeta)?;
    let mut report = DensityReport::compute(&coords)?;
    if a.kind != LeafKind::Coords {
        report.l = None;
    }
    if a.kind != LeafKind::Momentum {
        report.momentum = None;
    }
    Ok(Outcome { payload: serde_json::to_value(report)?, code: EXIT_PASS })
}

fn cmd_verify(a: &VerifyArgs, overrides: Overrides) -> Result<Outcome> {
    let suite: Suite = a.suite.parse()?;
    let inst: SpaceInstance = a.instance.parse()?;
    let overrides = parse_tol_overrides(&a.tol, overrides)?;
    let report = run_suite(suite, &inst, a.samples, a.seed, &overrides);
    let code = if report.pass { EXIT_PASS } else { EXIT_FAIL };
    Ok(Outcome { payload: serde_json::to_value(&report)?, code })
}

fn emit(payload: &Value, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let text = serde_json::to_string_pretty(payload)?;
    match path {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_PASS
            };
        }
    };
    let overrides = match Overrides::from_env() {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let (result, path) = match &cli.command {
        Command::Factor(a) => (cmd_factor(a, &overrides), a.output.as_ref()),
        Command::Leaf(a) => (cmd_leaf(a), a.output.as_ref()),
        Command::Verify(a) => (cmd_verify(a, overrides), a.output.as_ref()),
    };
    match result {
        Ok(o) => {
            if let Err(e) = emit(&o.payload, path, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if o.code == EXIT_FAIL {
                let _ = writeln!(err, "check failed");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1+0i").unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse_complex("3+4i").unwrap(), C64::new(3.0, 4.0));
        assert_eq!(parse_complex("-2.5i").unwrap(), C64::new(0.0, -2.5));
        assert_eq!(parse_complex(" 2 ").unwrap(), C64::new(2.0, 0.0));
        assert_eq!(parse_complex("1e-3-2i").unwrap(), C64::new(1e-3, -2.0));
        assert!(parse_complex("x").is_err());
        assert_eq!(parse_complex_list("1+0i, 0-1i").unwrap().len(), 2);
        assert!(parse_complex_list("").unwrap().is_empty());
    }

    #[test]
    fn tol_overrides() {
        let o = parse_tol_overrides(&["closedness=2e-4".into()], Overrides::default()).unwrap();
        assert_eq!(o.per_check["closedness"], 2e-4);
        assert!(parse_tol_overrides(&["closedness".into()], Overrides::default()).is_err());
        assert!(parse_tol_overrides(&["a=-1".into()], Overrides::default()).is_err());
    }

    #[test]
    fn instance_flag_roundtrips() {
        for s in ["grass:2,1", "group:3"] {
            let i: SpaceInstance = s.parse().unwrap();
            assert_eq!(i.to_string(), s);
        }
        let i: SpaceInstance = " GRASS: 1 , 1".parse().unwrap();
        assert_eq!(i.to_string(), "grass:1,1");
    }
}
