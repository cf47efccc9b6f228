use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use blochlab_core::functions::{lookup_for, parse};
use blochlab_core::geometry::{hyperbolic, pseudo};
use blochlab_core::harness::{self, emit_report, ReportFormat};
use blochlab_core::{estimate_sup, parse_cplx_list, BallSpace, DensityKind, Expr};

#[derive(Parser)]
#[command(name = "blochlab", version, about = "Bloch seminorms on unit balls of finite-dimensional complex Banach spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Estimate the natural or invariant Bloch seminorm of a function.
    Seminorm {
        #[arg(long)]
        kind: DensityKind,
        /// Ball, e.g. `linf:2`, `l2:3`, `lp:3:2`.
        #[arg(long)]
        space: BallSpace,
        /// Expression in x1..xn, or a catalog name such as `countex1`.
        #[arg(long = "fn")]
        func: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Pseudohyperbolic and hyperbolic distance between two points.
    Distance {
        #[arg(long)]
        space: BallSpace,
        /// Comma-separated complex coordinates, e.g. `0.5,0.1-0.2i`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Run verification suites and write a report.
    Verify {
        /// Suite name or `all`.
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, conflicts_with = "csv_out")]
        json_out: Option<PathBuf>,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

fn resolve_function(text: &str, space: &BallSpace) -> Result<(String, Expr)> {
    if let Some(e) = lookup_for(text, space) {
        if e.arity != space.n {
            bail!("catalog function {} has arity {} but {space} has dimension {}", e.name, e.arity, space.n);
        }
        return Ok((e.name, e.expr));
    }
    let expr = parse(text, space.n).with_context(|| format!("parsing function {text:?}"))?;
    Ok((text.to_string(), expr))
}

fn seminorm(kind: DensityKind, space: BallSpace, func: &str, budget: usize, seed: u64, json: bool) -> Result<()> {
    let (name, expr) = resolve_function(func, &space)?;
    let est = estimate_sup(kind, &expr, &space, budget, seed)?;
    if json {
        let out = serde_json::json!({
            "kind": kind,
            "space": space.to_string(),
            "function": name,
            "expression": expr.to_string(),
            "budget": budget,
            "seed": seed,
            "estimate": est,
            "shell_fit": est.shell_fit(),
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(());
    }
    let kind_name = match kind {
        DensityKind::Nat => "natural",
        DensityKind::Inv => "invariant",
    };
    println!("{kind_name} seminorm of {name} on {space}");
    println!("estimate  {:.12} (lower bound)", est.value);
    let witness: Vec<String> = est.witness.iter().map(|z| format!("{z}")).collect();
    println!("witness   [{}]", witness.join(", "));
    println!("samples   {} ({} poisoned)", est.samples_used, est.poisoned_count);
    if let Some(fit) = est.shell_fit() {
        println!(
            "shell fit slope {:.4} ± {:.2e} over shells {}..={}",
            fit.slope, fit.stderr, fit.first_shell, fit.last_shell
        );
    }
    match &est.divergence {
        Some(d) => println!("divergent: grows like {:.3}·(-ln(1-r)) {}", d.slope, d.path),
        None => println!("no divergence detected"),
    }
    Ok(())
}

fn distance(space: BallSpace, x: &str, y: &str) -> Result<()> {
    let x = parse_cplx_list(x).map_err(anyhow::Error::msg).context("--x")?;
    let y = parse_cplx_list(y).map_err(anyhow::Error::msg).context("--y")?;
    let rho = pseudo(&space, &x, &y)?;
    let beta = hyperbolic(rho)?;
    println!("rho  {rho:.15}");
    println!("beta {beta:.15}");
    Ok(())
}

fn verify(suite: &str, budget: usize, seed: u64, json_out: Option<PathBuf>, csv_out: Option<PathBuf>) -> Result<bool> {
    let report = harness::run(suite, seed, budget)?;
    for s in &report.suites {
        let failed = s.checks.iter().filter(|c| !c.passed()).count();
        println!("{:<18} {:>3} checks, {} failed", s.name, s.checks.len(), failed);
        for c in s.checks.iter().filter(|c| !c.passed()) {
            println!("  FAIL {}: value {} bound {} tol {}", c.check, c.value, c.bound, c.tolerance);
        }
    }
    if let Some(path) = json_out {
        emit_report(&report, ReportFormat::Json, &path)?;
    }
    if let Some(path) = csv_out {
        emit_report(&report, ReportFormat::Csv, &path)?;
    }
    Ok(!report.any_failed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Seminorm { kind, space, func, budget, seed, json } => {
            seminorm(kind, space, &func, budget, seed, json).map(|_| true)
        }
        Cmd::Distance { space, x, y } => distance(space, &x, &y).map(|_| true),
        Cmd::Verify { suite, budget, seed, json_out, csv_out } => verify(&suite, budget, seed, json_out, csv_out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
