//! Command-line front end: parameter generation and validation, polynomial
//! tabulation, identity-verification suites, and the fermionic occupation
//! layer, with JSON or CSV output.
//!
//! Exit codes: 0 when every reported residual is within --tol, 1 on a
//! residual or validation failure, 2 on unusable input (bad flags,
//! unreadable or ill-formed files, domain errors).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superkraw::krawtchouk::{transition_matrix, transition_round_trip_residual, Direction};
use superkraw::numkern::{IndexSubset, Matrix, Scalar};
use superkraw::params::{
    self, random_param_set, validate, validate_pair, EvenParams, OddParams, ParamSet,
};
use superkraw::spherical::{occupation_probs, sample_occupation};
use superkraw::suites::{run_suite, Suite};
use superkraw::tol::Tolerance;
use superkraw::{KrawError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Structured object notation.
    Json,
    /// Comma-separated rows with a header line.
    Csv,
}

#[derive(Parser)]
#[command(
    name = "superkraw",
    version,
    about = "Multivariate super Krawtchouk polynomials: evaluation, verification suites, and fermionic occupation sampling"
)]
struct Cli {
    /// Parameter file (JSON with keys even{p,p_tilde,U} and odd{q,q_tilde,V})
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "gen")]
    params: Option<PathBuf>,

    /// Generate seeded random admissible parameters instead: M N SEED
    #[arg(long, global = true, num_args = 3, value_names = ["M", "N", "SEED"])]
    gen: Option<Vec<u64>>,

    /// Total degree D
    #[arg(long, global = true, default_value_t = 3)]
    degree: u32,

    /// Odd degree d (eval filter; required by fock)
    #[arg(long = "odd-degree", global = true, value_name = "D_ODD")]
    odd_degree: Option<u32>,

    /// Residual threshold deciding the exit status
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for occupation sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Suite name for verify: orthogonality | recurrence | contravariance |
    /// cartan-swap | duality | tform | krzonal | all
    #[arg(long, global = true, default_value = "all")]
    suite: String,

    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Number of occupation samples to draw (fock)
    #[arg(long, global = true, default_value_t = 0)]
    samples: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every admissibility residual of a parameter set
    Validate,
    /// Emit a random admissible parameter set (use with --gen M N SEED)
    GenParams,
    /// Tabulate polynomial values over the degree-D slices
    Eval,
    /// Emit both transition matrices and their round-trip residual
    Transition,
    /// Run a named identity suite and report max residual plus witness
    Verify,
    /// Emit occupation-transition probabilities and optional samples
    Fock,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn load_pair(cli: &Cli) -> Result<(EvenParams, OddParams)> {
    if let Some(path) = &cli.params {
        return params::read_pair_file(path);
    }
    if let Some(gen) = &cli.gen {
        let ps = random_param_set(gen[0] as usize, gen[1] as usize, gen[2]);
        return Ok((ps.even, ps.odd));
    }
    Err(KrawError::Parse(
        "no parameter source: pass --params FILE or --gen M N SEED".into(),
    ))
}

fn load_set(cli: &Cli) -> Result<ParamSet> {
    let (even, odd) = load_pair(cli)?;
    ParamSet::new(even, odd)
}

fn emit(cli: &Cli, value: &Value, csv: &str) -> Result<()> {
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("json")),
        Format::Csv => csv.to_string(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn scalar_value(z: Scalar) -> Value {
    json!([z.re, z.im])
}

fn indices_string(mask: u32) -> String {
    let list: Vec<String> = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b.to_string())
        .collect();
    list.join(" ")
}

fn indices_value(mask: u32) -> Value {
    Value::Array(
        (0..32u32)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| json!(b))
            .collect(),
    )
}

fn alpha_string(alpha: &[u32]) -> String {
    let list: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
    list.join(" ")
}

fn subset_string(s: &IndexSubset) -> String {
    let list: Vec<String> = s.members().iter().map(|i| i.to_string()).collect();
    list.join(" ")
}

fn run(cli: &Cli) -> Result<bool> {
    match cli.command {
        Command::Validate => cmd_validate(cli),
        Command::GenParams => cmd_gen_params(cli),
        Command::Eval => cmd_eval(cli),
        Command::Transition => cmd_transition(cli),
        Command::Verify => cmd_verify(cli),
        Command::Fock => cmd_fock(cli),
    }
}

fn cmd_validate(cli: &Cli) -> Result<bool> {
    let (even, odd) = load_pair(cli)?;
    let tol = Tolerance::new(cli.tol, cli.tol);
    // Pair invariants always; normalizer identities only when derivable.
    let (report, note) = match ParamSet::new(even.clone(), odd.clone()) {
        Ok(ps) => (validate(&ps, tol)?, None),
        Err(KrawError::Singular(msg)) => (
            validate_pair(&even, &odd, tol)?,
            Some(format!("normalizers not derivable: {msg}")),
        ),
        Err(other) => return Err(other),
    };
    let pass = report.pass() && note.is_none();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "residual": c.residual, "pass": c.pass}))
        .collect();
    let value = json!({
        "command": "validate",
        "pass": pass,
        "max_residual": report.max_residual(),
        "note": note,
        "checks": checks,
    });
    let mut csv = String::from("name,residual,pass\n");
    for c in &report.checks {
        csv.push_str(&format!("{},{},{}\n", c.name, c.residual, c.pass));
    }
    emit(cli, &value, &csv)?;
    Ok(pass)
}

fn cmd_gen_params(cli: &Cli) -> Result<bool> {
    let gen = cli
        .gen
        .as_ref()
        .ok_or_else(|| KrawError::Parse("gen-params needs --gen M N SEED".into()))?;
    let ps = random_param_set(gen[0] as usize, gen[1] as usize, gen[2]);
    let value = params::to_json(&ps);
    // Parameter files are always structured text; --format does not apply.
    let text = format!("{}\n", serde_json::to_string_pretty(&value).expect("json"));
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn cmd_eval(cli: &Cli) -> Result<bool> {
    let ps = load_set(cli)?;
    let rows = superkraw::krawtchouk::tabulate(&ps, cli.degree, cli.odd_degree)?;
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "alpha": r.alpha,
                "eps": indices_value(r.eps),
                "alpha_tilde": r.alpha_tilde,
                "eps_tilde": indices_value(r.eps_tilde),
                "d": r.d,
                "value": scalar_value(r.value),
            })
        })
        .collect();
    let value = json!({
        "command": "eval",
        "degree": cli.degree,
        "rows": json_rows,
    });
    let mut csv = String::from("alpha,eps,alpha_tilde,eps_tilde,value_re,value_im\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            alpha_string(&r.alpha),
            indices_string(r.eps),
            alpha_string(&r.alpha_tilde),
            indices_string(r.eps_tilde),
            r.value.re,
            r.value.im,
        ));
    }
    emit(cli, &value, &csv)?;
    Ok(true)
}

fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar_value(m.get(i, j))).collect()))
            .collect(),
    )
}

fn cmd_transition(cli: &Cli) -> Result<bool> {
    let ps = load_set(cli)?;
    let t1 = transition_matrix(Direction::TildeToPlain, &ps, cli.degree)?;
    let t2 = transition_matrix(Direction::PlainToTilde, &ps, cli.degree)?;
    let residual = transition_round_trip_residual(&ps, cli.degree)?;
    let basis: Vec<Value> = t1
        .basis
        .items()
        .iter()
        .map(|mono| json!({"alpha": mono.alpha, "eps": indices_value(mono.eps)}))
        .collect();
    let value = json!({
        "command": "transition",
        "degree": cli.degree,
        "basis": basis,
        "tilde_to_plain": matrix_value(&t1.matrix),
        "plain_to_tilde": matrix_value(&t2.matrix),
        "round_trip_residual": residual,
    });
    let mut csv = String::from("matrix,row,col,re,im\n");
    for (name, t) in [("tilde_to_plain", &t1.matrix), ("plain_to_tilde", &t2.matrix)] {
        for i in 0..t.rows() {
            for j in 0..t.cols() {
                let z = t.get(i, j);
                csv.push_str(&format!("{name},{i},{j},{},{}\n", z.re, z.im));
            }
        }
    }
    csv.push_str(&format!("round_trip_residual,0,0,{residual},0\n"));
    emit(cli, &value, &csv)?;
    Ok(residual <= cli.tol)
}

fn cmd_verify(cli: &Cli) -> Result<bool> {
    let ps = load_set(cli)?;
    let suite = Suite::parse(&cli.suite)?;
    let outcomes = run_suite(suite, &ps, cli.degree)?;
    let pass = outcomes.iter().all(|o| o.pass(cli.tol));
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "suite": o.suite,
                "max_residual": o.residual.max,
                "witness": o.residual.witness,
                "pass": o.pass(cli.tol),
                "skipped": o.skipped,
            })
        })
        .collect();
    let value = json!({
        "command": "verify",
        "degree": cli.degree,
        "tol": cli.tol,
        "pass": pass,
        "suites": rows,
    });
    let mut csv = String::from("suite,max_residual,pass,skipped,witness\n");
    for o in &outcomes {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            o.suite,
            o.residual.max,
            o.pass(cli.tol),
            o.skipped.is_some(),
            o.residual.witness,
        ));
    }
    emit(cli, &value, &csv)?;
    Ok(pass)
}

fn cmd_fock(cli: &Cli) -> Result<bool> {
    let ps = load_set(cli)?;
    let d = cli
        .odd_degree
        .ok_or_else(|| KrawError::Parse("fock needs --odd-degree".into()))? as usize;
    let np1 = ps.n() + 1;
    if d > np1 {
        return Err(KrawError::Dimension(format!(
            "odd degree {d} exceeds n+1 = {np1}"
        )));
    }
    let sources = superkraw::numkern::enumerate_subsets(np1, d);
    let mut table = Vec::new();
    let mut worst_norm = 0.0f64;
    for source in &sources {
        let dist = occupation_probs(&ps.odd, source, d, cli.seed)?;
        worst_norm = worst_norm.max((dist.total() - 1.0).abs());
        for (target, prob) in &dist.entries {
            table.push((source.clone(), target.clone(), *prob));
        }
    }
    // Samples are drawn from the first (colex-least) source state.
    let samples = if cli.samples > 0 {
        let dist = occupation_probs(&ps.odd, &sources[0], d, cli.seed)?;
        sample_occupation(&dist, cli.samples as usize)
    } else {
        vec![]
    };
    let value = json!({
        "command": "fock",
        "d": d,
        "seed": cli.seed,
        "normalization_residual": worst_norm,
        "table": table.iter().map(|(s, t, p)| json!({
            "source": s.members(),
            "target": t.members(),
            "prob": p,
        })).collect::<Vec<_>>(),
        "samples": samples.iter().map(|(t, c)| json!({
            "target": t.members(),
            "count": c,
        })).collect::<Vec<_>>(),
    });
    let mut csv = String::from("kind,source,target,value\n");
    for (s, t, p) in &table {
        csv.push_str(&format!(
            "prob,{},{},{}\n",
            subset_string(s),
            subset_string(t),
            p
        ));
    }
    for (t, c) in &samples {
        csv.push_str(&format!(
            "sample,{},{},{}\n",
            subset_string(&sources[0]),
            subset_string(t),
            c
        ));
    }
    emit(cli, &value, &csv)?;
    Ok(worst_norm <= cli.tol)
}
