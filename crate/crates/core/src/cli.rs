//! Command-line front end: argument definitions, command dispatch and
//! output formatting. `run` is pure apart from the optional table cache, so
//! it can be driven directly from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::appendix::{verify_no_go, DeformationSpec};
use crate::cato_a::{weights_below, Dim};
use crate::clifford::{classify_x_over, SimpleX, SimpleXJson};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, parse_poly};
use crate::pbw::cc_equal;
use crate::selftest::{self, DEFAULT_SEED};
use crate::skew::{
    block_matrices, ch_simple_skew, ch_verma_skew, dim_simple_skew, simples_over_four_setups,
    BlockData,
};
use crate::symgrp::{char_value, CharTableCache, IrrepLabel, StabIrrep, DEFAULT_TABLE_CAP};
use crate::weightlat::{stabilizer, GammaSpec, Weight};

pub const CACHE_ENV: &str = "SKEW_O_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    /// simple module V(x)
    #[value(name = "V")]
    Simple,
    /// Verma module Z(x)
    #[value(name = "Z")]
    Verma,
}

#[derive(Debug, Parser)]
#[command(
    name = "skew-o",
    version,
    about = "Category O computations for skew group rings over U(sl2)^n"
)]
pub struct Cli {
    /// Group specification, e.g. "S:2", "C:3", "S:2,1;C:3", "1:2".
    #[arg(long, global = true)]
    pub gamma: Option<String>,
    /// Weight, comma-separated rationals, e.g. "3,0,-1/2".
    #[arg(long, global = true)]
    pub weight: Option<String>,
    /// Stabilizer irrep labels separated by ';', e.g. "1,1" or "2;j=1".
    #[arg(long, global = true)]
    pub irrep: Option<String>,
    /// Character evaluation depth.
    #[arg(long, global = true, default_value_t = 12)]
    pub depth: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Character-table cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simple objects of X over the orbit of a weight.
    Simples,
    /// The block of a simple object: order, matrices and linkage graph.
    Block,
    /// Decomposition, duality and Cartan matrices of a block.
    Matrices,
    /// Weight multiplicities of V(x) or Z(x) down to the given depth.
    Char {
        #[arg(long, value_enum, default_value_t = ModuleKind::Simple)]
        module: ModuleKind,
    },
    /// Compare the central characters of two weights.
    Cc {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Normal form of an expression in the skew PBW algebra.
    Pbw {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Verify that the deformed cross relations force all parameters to zero.
    Appendix {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Coefficients of f(Ω), lowest degree first, e.g. "0,1" or "t0,t1".
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        f: String,
    },
    /// Run the seeded invariant suites.
    Selftest,
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

enum Output {
    Pass(String),
    Fail(String, Value),
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(Output::Pass(s)) => Outcome {
            code: EXIT_OK,
            stdout: s,
            stderr: String::new(),
        },
        Ok(Output::Fail(s, why)) => Outcome {
            code: EXIT_VERIFICATION_FAILED,
            stdout: s,
            stderr: json!({"error": "verification_failed", "details": why}).to_string() + "\n",
        },
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: error_json(&e).to_string() + "\n",
        },
    }
}

pub fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::RankMismatch { .. } => "rank_mismatch",
        Error::Parse { .. } => "parse",
        Error::InvalidGamma(_) => "invalid_gamma",
        Error::NotInGroup(_) => "not_in_group",
        Error::SizeMismatch(..) => "size_mismatch",
        Error::NotSubgroup(_) => "not_subgroup",
        Error::NotPointed => "not_pointed",
        Error::InvalidIrrep(_) => "invalid_irrep",
        Error::UnboundParameters(_) => "unbound_parameters",
        Error::SizeCap(_) => "size_cap",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Consistency(_) => "consistency",
        Error::Io(_) => "io",
    };
    let mut v = json!({"error": kind, "message": e.to_string()});
    if let Error::Parse {
        pos,
        expected,
        found,
    } = e
    {
        v["pos"] = json!(pos);
        v["expected"] = json!(expected);
        v["found"] = json!(found);
    }
    v
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required for this command")))
}

fn gamma_and_weight(cli: &Cli) -> Result<(GammaSpec, Weight)> {
    let weight = Weight::parse(required(&cli.weight, "weight")?)?;
    let gamma = match &cli.gamma {
        Some(g) => GammaSpec::parse(g)?,
        None => GammaSpec::trivial(weight.rank()),
    };
    weight.check_rank(gamma.rank())?;
    Ok((gamma, weight))
}

fn parse_irrep(s: &str) -> Result<StabIrrep> {
    Ok(StabIrrep(
        s.split(';').map(IrrepLabel::parse).collect::<Result<_>>()?,
    ))
}

fn simple_from_cli(cli: &Cli, gamma: &GammaSpec, weight: &Weight) -> Result<SimpleX> {
    let irrep = match &cli.irrep {
        Some(s) => parse_irrep(s)?,
        None => StabIrrep::trivial(&stabilizer(weight, gamma)),
    };
    SimpleX::from_weight(gamma, weight, &irrep)
}

/// Loads (and if needed rebuilds) the cached character tables for the
/// symmetric factors of `gamma`, cross-checking them against direct
/// evaluation.
fn warm_cache(cli: &Cli, gamma: &GammaSpec) -> Result<()> {
    let Some(dir) = &cli.cache_dir else {
        return Ok(());
    };
    let cache = CharTableCache::new(dir);
    let mut sizes: Vec<usize> = gamma
        .young_parts()
        .into_iter()
        .map(|(_, k)| k)
        .filter(|k| *k <= DEFAULT_TABLE_CAP)
        .collect();
    sizes.sort_unstable();
    sizes.dedup();
    for n in sizes {
        let table = cache.get(n)?;
        for (i, lam) in table.partitions.iter().enumerate() {
            for (j, mu) in table.classes.iter().enumerate() {
                if table.values[i][j] != char_value(lam, mu)? {
                    return Err(Error::Consistency(format!(
                        "cached character table for n={n} disagrees"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::InvalidArgument(
        format!("format {format:?} is not available for {command}").to_lowercase(),
    )
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Simples => cmd_simples(cli),
        Command::Block => cmd_block(cli, false),
        Command::Matrices => cmd_block(cli, true),
        Command::Char { module } => cmd_char(cli, *module),
        Command::Cc { mu } => cmd_cc(cli, mu),
        Command::Pbw { n, expr } => cmd_pbw(cli, *n, expr),
        Command::Appendix { n, f } => cmd_appendix(cli, *n, f),
        Command::Selftest => cmd_selftest(cli),
    }
}

#[derive(Serialize)]
struct SimpleEntry {
    #[serde(flatten)]
    x: SimpleXJson,
    orbit_size: u64,
    #[serde(rename = "dimM")]
    dim_m: u64,
}

fn cmd_simples(cli: &Cli) -> Result<Output> {
    let (gamma, weight) = gamma_and_weight(cli)?;
    warm_cache(cli, &gamma)?;
    let xs = classify_x_over(&weight, &gamma)?;
    let entries: Vec<SimpleEntry> = xs
        .iter()
        .map(|x| SimpleEntry {
            x: x.to_json(),
            orbit_size: x.orbit_size(&gamma),
            dim_m: x.dim_m(&gamma),
        })
        .collect();
    let out = match cli.format {
        Format::Json => {
            let mut v = json!({"gamma": gamma.to_string(), "weight": weight, "simples": entries});
            if gamma.blocks().len() > 1 {
                let lambdas: Vec<Weight> = gamma
                    .block_ranges()
                    .into_iter()
                    .map(|(s, w)| weight.slice(s, w))
                    .collect();
                v["four_setups"] =
                    serde_json::to_value(simples_over_four_setups(&gamma, &lambdas)?)
                        .expect("serializes");
            }
            to_json_string(&v)
        }
        Format::Text => xs
            .iter()
            .zip(&entries)
            .map(|(x, e)| format!("{x} orbit_size={} dimM={}\n", e.orbit_size, e.dim_m))
            .collect(),
        Format::Csv => {
            let mut s = String::from("orbit_rep,stab,irrep,orbit_size,dimM\n");
            for e in &entries {
                let rep: Vec<String> = e.x.orbit_rep.to_strings();
                writeln!(
                    s,
                    "\"{}\",\"{}\",\"{}\",{},{}",
                    rep.join(","),
                    e.x.stab,
                    e.x.irrep.join(";"),
                    e.orbit_size,
                    e.dim_m
                )
                .expect("write to string");
            }
            s
        }
        Format::Dot => return Err(unsupported(cli.format, "simples")),
    };
    Ok(Output::Pass(out))
}

fn matrix_text(name: &str, m: &[Vec<i64>]) -> String {
    let mut s = format!("{name}:\n");
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn matrix_csv(name: &str, m: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            writeln!(s, "{name},{i},{j},{x}").expect("write to string");
        }
    }
    s
}

fn block_checks(b: &BlockData) -> Value {
    let sym = crate::linalg::is_symmetric(&b.cprime);
    json!({"symmetric_Cprime": sym})
}

fn cmd_block(cli: &Cli, matrices_only: bool) -> Result<Output> {
    let (gamma, weight) = gamma_and_weight(cli)?;
    warm_cache(cli, &gamma)?;
    let x = simple_from_cli(cli, &gamma, &weight)?;
    let b = block_matrices(&x, &gamma)?;
    let mats = [("D", &b.d), ("F", &b.f), ("C", &b.c), ("Cprime", &b.cprime)];
    let out = match cli.format {
        Format::Json if matrices_only => to_json_string(&json!({
            "D": b.d, "F": b.f, "C": b.c, "Cprime": b.cprime,
            "symmetric_Cprime": crate::linalg::is_symmetric(&b.cprime),
        })),
        Format::Json => to_json_string(&b.to_json()),
        Format::Dot if !matrices_only => b.to_dot(),
        Format::Dot => return Err(unsupported(cli.format, "matrices")),
        Format::Text => {
            let mut s = String::new();
            if !matrices_only {
                for (i, y) in b.order.iter().enumerate() {
                    writeln!(s, "{i}: {y}").expect("write to string");
                }
            }
            for (name, m) in mats {
                s.push_str(&matrix_text(name, m));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("matrix,row,col,value\n");
            for (name, m) in mats {
                s.push_str(&matrix_csv(name, m));
            }
            s
        }
    };
    if crate::linalg::is_symmetric(&b.cprime) {
        Ok(Output::Pass(out))
    } else {
        Ok(Output::Fail(out, block_checks(&b)))
    }
}

#[derive(Serialize)]
struct WeightLine {
    weight: Weight,
    dim: i64,
}

fn cmd_char(cli: &Cli, module: ModuleKind) -> Result<Output> {
    let (gamma, weight) = gamma_and_weight(cli)?;
    warm_cache(cli, &gamma)?;
    let x = simple_from_cli(cli, &gamma, &weight)?;
    let (name, ch, total) = match module {
        ModuleKind::Simple => (
            "V",
            ch_simple_skew(&x, &gamma),
            dim_simple_skew(&x, &gamma)?,
        ),
        ModuleKind::Verma => ("Z", ch_verma_skew(&x, &gamma), Dim::Infinite),
    };
    let mut weights: Vec<Weight> = x
        .orbit(&gamma)
        .iter()
        .flat_map(|top| weights_below(top, cli.depth))
        .collect();
    weights.sort_by(|a, b| b.sum().cmp(&a.sum()).then(b.cmp(a)));
    weights.dedup();
    let lines: Vec<WeightLine> = weights
        .into_iter()
        .map(|w| ch.weight_dim(&w).map(|dim| WeightLine { weight: w, dim }))
        .collect::<Result<_>>()?;
    let out = match cli.format {
        Format::Json => to_json_string(&json!({
            "module": name,
            "x": x.to_json(),
            "depth": cli.depth,
            "character": ch.to_json(),
            "weights": lines,
            "dim": total,
        })),
        Format::Text => {
            let mut s = format!("{name}({x}) dim={total}\n");
            for l in &lines {
                writeln!(s, "({}) {}", l.weight, l.dim).expect("write to string");
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("weight,dim\n");
            for l in &lines {
                writeln!(s, "\"{}\",{}", l.weight, l.dim).expect("write to string");
            }
            s
        }
        Format::Dot => return Err(unsupported(cli.format, "char")),
    };
    Ok(Output::Pass(out))
}

fn cmd_cc(cli: &Cli, mu: &str) -> Result<Output> {
    let (gamma, lambda) = gamma_and_weight(cli)?;
    warm_cache(cli, &gamma)?;
    let mu = Weight::parse(mu)?;
    let ev = cc_equal(&gamma, &lambda, &mu)?;
    let out = match cli.format {
        Format::Json => to_json_string(&ev),
        Format::Text => format!("equal: {}\n", ev.equal),
        Format::Csv => format!(
            "equal,orbit_test,generator_test\n{},{},{}\n",
            ev.equal, ev.orbit_test, ev.generator_test
        ),
        Format::Dot => return Err(unsupported(cli.format, "cc")),
    };
    Ok(Output::Pass(out))
}

fn cmd_pbw(cli: &Cli, n: Option<usize>, expr: &str) -> Result<Output> {
    let gamma = match &cli.gamma {
        Some(g) => Some(GammaSpec::parse(g)?),
        None => None,
    };
    let n = match (n, &gamma) {
        (Some(n), _) => n,
        (None, Some(g)) => g.rank(),
        (None, None) => {
            return Err(Error::InvalidArgument(
                "--n or --gamma is required for pbw".into(),
            ))
        }
    };
    let gamma = match gamma {
        Some(g) => g,
        None if n == 0 => return Err(Error::InvalidArgument("rank must be positive".into())),
        None => GammaSpec::symmetric(n),
    };
    let a = parse_expr(expr, n, Some(&gamma))?;
    let out = match cli.format {
        Format::Json => {
            to_json_string(&json!({"normal_form": a.to_string(), "terms": a.to_json()}))
        }
        Format::Text => format!("{a}\n"),
        Format::Csv => {
            let mut s = String::from("monomial,coef\n");
            for (m, c) in a.terms() {
                writeln!(s, "\"{m}\",\"{c}\"").expect("write to string");
            }
            s
        }
        Format::Dot => return Err(unsupported(cli.format, "pbw")),
    };
    Ok(Output::Pass(out))
}

fn cmd_appendix(cli: &Cli, n: usize, f: &str) -> Result<Output> {
    if !(2..=3).contains(&n) {
        return Err(Error::SizeCap(format!(
            "appendix verification supports n = 2, 3; got {n}"
        )));
    }
    let coefs = f.split(',').map(parse_poly).collect::<Result<Vec<_>>>()?;
    let report = verify_no_go(&DeformationSpec::new(n, coefs)?)?;
    let out = match cli.format {
        Format::Json => to_json_string(&report),
        Format::Text => format!(
            "sign_of_mij: {}\nforced_zero: {}\nsolution_space_dim: {}\n",
            report.sign_of_mij,
            report.forced_zero.join(","),
            report.solution_space_dim
        ),
        Format::Csv => format!(
            "sign_of_mij,forced_zero,solution_space_dim\n{},\"{}\",{}\n",
            report.sign_of_mij,
            report.forced_zero.join(","),
            report.solution_space_dim
        ),
        Format::Dot => return Err(unsupported(cli.format, "appendix")),
    };
    if report.all_zero() && report.witnesses.f_independent && report.witnesses.parity_lattice {
        Ok(Output::Pass(out))
    } else {
        Ok(Output::Fail(
            out,
            serde_json::to_value(&report).expect("serializes"),
        ))
    }
}

fn cmd_selftest(cli: &Cli) -> Result<Output> {
    if let Some(g) = &cli.gamma {
        warm_cache(cli, &GammaSpec::parse(g)?)?;
    }
    let report = selftest::run(cli.seed);
    let out = match cli.format {
        Format::Json => to_json_string(&report),
        Format::Text | Format::Csv => report
            .checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} ({} cases)\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.cases
                )
            })
            .collect(),
        Format::Dot => return Err(unsupported(cli.format, "selftest")),
    };
    if report.passed() {
        Ok(Output::Pass(out))
    } else {
        Ok(Output::Fail(
            out,
            serde_json::to_value(&report).expect("serializes"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        let mut full = vec!["skew-o"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn simples_command() {
        let o = go(&["simples", "--gamma", "S:2", "--weight", "1,0"]);
        assert_eq!(o.code, 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["simples"].as_array().unwrap().len(), 1);
        assert_eq!(v["simples"][0]["dimM"], 2);
        let o = go(&["simples", "--gamma", "S:2;C:3", "--weight", "3,3,a"]);
        assert_eq!(o.code, EXIT_ERROR);
        let e: Value = serde_json::from_str(&o.stderr).unwrap();
        assert_eq!(e["error"], "parse");
        assert!(e["pos"].is_number());
    }

    #[test]
    fn pbw_and_formats() {
        let o = go(&[
            "pbw",
            "--n",
            "1",
            "--expr",
            "[e1,f1]-h1",
            "--format",
            "text",
        ]);
        assert_eq!(o.stdout.trim(), "0");
        let o = go(&["pbw", "--n", "1", "--expr", "h1", "--format", "dot"]);
        assert_eq!(o.code, EXIT_ERROR);
    }
}
