use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ptalg::algebra::{build_q, build_z, natural_decomposition, q_spectrum, DecompositionReport};
use ptalg::linalg::symmetric_eigenvalues;
use ptalg::oracle::{pbt_rho, spectrum, Budgets, SpectrumReport, DEFAULT_CLUSTER_TOL};
use ptalg::pbt::{fidelity_closed, fidelity_table, rho_spectrum_theory, table_csv, FidelityReport, TheorySpectrum};
use ptalg::symmetric::Partition;
use ptalg::verify::{self, Suite, VerifyConfig};
use ptalg::Error;

mod render;

#[derive(Parser, Debug)]
#[command(
    name = "ptalg",
    version,
    about = "Partially transposed permutation operators and port-based teleportation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Output::Text)]
    output: Output,
    /// Residual tolerance, in (0, 1e-2].
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Largest tensor-space dimension d^n the dense oracle may build.
    #[arg(long, global = true, default_value_t = Budgets::default().dim)]
    dim_budget: usize,
    /// Largest group order the oracle may sum over.
    #[arg(long, global = true, default_value_t = Budgets::default().factorial)]
    fact_budget: u128,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Q(α) and its spectrum.
    Qmatrix(AlphaArgs),
    /// The reducing matrix Z(α) and its diagonalization residual.
    Zmatrix(AlphaArgs),
    /// Spectrum of ρ = Σ_a V′[(a,n)]: closed form and, within budget, dense.
    Spectrum(AlgebraArgs),
    /// Deterministic PBT fidelity for N ports.
    Fidelity(PortArgs),
    /// Fidelity sweep over port counts and dimensions.
    Table(TableArgs),
    /// Run a named invariant suite.
    Verify(VerifyArgs),
    /// Irrep decomposition of (C^d)^{⊗n}.
    Decompose(AlgebraArgs),
}

#[derive(Args, Debug)]
struct AlphaArgs {
    /// Partition of n - 2, e.g. "2,1"; empty string for the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Algebra parameter; defaults to |α| + 2.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: u32,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: u32,
}

#[derive(Args, Debug)]
struct PortArgs {
    /// Number of ports N (the algebra parameter is N + 1).
    #[arg(long)]
    ports: usize,
    #[arg(long)]
    d: u32,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Port counts: "1-10", "10,20,40" or a mix.
    #[arg(long, default_value = "1-10")]
    ports: String,
    /// Local dimensions, same syntax.
    #[arg(long, default_value = "2,3")]
    d: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: u32,
    /// Random samples per randomized identity.
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

/// Failure modes mapped to exit statuses.
enum Failure {
    Verification,
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("PTALG_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("PTALG_THREADS must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        return Err("PTALG_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn budgets(c: &Common) -> Result<Budgets, Failure> {
    if c.dim_budget == 0 || c.fact_budget == 0 {
        return Err(Failure::Usage("budgets must be positive".into()));
    }
    Ok(Budgets {
        dim: c.dim_budget,
        factorial: c.fact_budget,
    })
}

fn check_tol(c: &Common) -> Outcome {
    if !(c.tol > 0.0 && c.tol <= 1e-2) {
        return Err(Failure::Usage(format!("--tol {} outside (0, 1e-2]", c.tol)));
    }
    Ok(())
}

/// Writes data to stdout; a closed pipe (`ptalg … | head`) is not an error.
fn emit(text: &str) -> Outcome {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Failure::Usage(format!("writing output: {e}"))),
        _ => Ok(()),
    }
}

fn emit_json<T: Serialize>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    emit(&(text + "\n"))
}

fn no_csv(command: &str) -> Failure {
    Failure::Usage(format!("{command} has no csv output; use json or text"))
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    check_tol(c)?;
    let b = budgets(c)?;
    match &cli.command {
        Command::Qmatrix(a) => qmatrix(a, c.output),
        Command::Zmatrix(a) => zmatrix(a, c.output, c.tol),
        Command::Spectrum(a) => spectrum_cmd(a, c.output, &b),
        Command::Fidelity(a) => fidelity(a, c.output),
        Command::Table(a) => table(a, c.output),
        Command::Verify(a) => verify_cmd(a, c, &b),
        Command::Decompose(a) => decompose(a, c.output),
    }
}

fn parse_alpha(a: &AlphaArgs) -> Result<(Partition, usize), Failure> {
    let alpha: Partition = a.alpha.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let n = a.n.unwrap_or(alpha.size() + 2);
    Ok((alpha, n))
}

fn qmatrix(a: &AlphaArgs, output: Output) -> Outcome {
    let (alpha, n) = parse_alpha(a)?;
    let q = build_q(&alpha, n, a.d)?;
    let spectrum = q_spectrum(&alpha, a.d);
    let numeric = symmetric_eigenvalues(&q.values);
    match output {
        Output::Json => emit_json(&json!({ "q": q, "spectrum": spectrum, "numeric_eigenvalues": numeric })),
        Output::Text => emit(&render::qmatrix(&q, &spectrum, &numeric)),
        Output::Csv => Err(no_csv("qmatrix")),
    }
}

fn zmatrix(a: &AlphaArgs, output: Output, tol: f64) -> Outcome {
    let (alpha, n) = parse_alpha(a)?;
    let (orth, diag) = verify::z_residuals(&alpha, n, a.d)?;
    let z = build_z(&alpha, n, a.d)?;
    match output {
        Output::Json => emit_json(&json!({
            "z": z,
            "orthogonality_residual": orth,
            "diagonalization_residual": diag,
        }))?,
        Output::Text => emit(&render::zmatrix(&z, orth, diag))?,
        Output::Csv => return Err(no_csv("zmatrix")),
    }
    if orth.max(diag) >= tol {
        eprintln!("Z residuals {orth:e}, {diag:e} exceed tol {tol:e}");
        return Err(Failure::Verification);
    }
    Ok(())
}

#[derive(Serialize)]
struct SpectrumOutput {
    n: usize,
    d: u32,
    theory: TheorySpectrum,
    oracle: Option<SpectrumReport>,
    agree: Option<bool>,
}

fn spectra_agree(theory: &TheorySpectrum, oracle: &SpectrumReport) -> bool {
    let t = theory.clusters();
    t.len() == oracle.clusters.len()
        && t.iter()
            .zip(&oracle.clusters)
            .all(|(a, b)| a.1 == b.1 as u128 && (a.0 - b.0).abs() < 1e-8)
}

fn spectrum_cmd(a: &AlgebraArgs, output: Output, b: &Budgets) -> Outcome {
    let theory = rho_spectrum_theory(a.n, a.d)?;
    let oracle = match pbt_rho(a.n, a.d as usize, b) {
        Ok(rho) => Some(spectrum(&rho, DEFAULT_CLUSTER_TOL)?),
        Err(e) if e.is_budget() => {
            eprintln!("dense spectrum skipped: {e}");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let agree = oracle.as_ref().map(|o| spectra_agree(&theory, o));
    let out = SpectrumOutput {
        n: a.n,
        d: a.d,
        theory,
        oracle,
        agree,
    };
    match output {
        Output::Json => emit_json(&out)?,
        Output::Csv => emit(&render::spectrum_csv(&out.theory, out.oracle.as_ref()))?,
        Output::Text => emit(&render::spectrum_text(&out.theory, out.oracle.as_ref()))?,
    }
    if agree == Some(false) {
        eprintln!("closed-form and dense spectra disagree");
        return Err(Failure::Verification);
    }
    Ok(())
}

fn fidelity(a: &PortArgs, output: Output) -> Outcome {
    let report: FidelityReport = fidelity_closed(a.ports, a.d)?;
    match output {
        Output::Json => emit_json(&report),
        Output::Csv => {
            let rows = fidelity_table(&[a.ports], &[a.d])?;
            emit(&table_csv(&rows))
        }
        Output::Text => emit(&render::fidelity(&report)),
    }
}

/// `"1-3,7"` → `[1, 2, 3, 7]`.
fn parse_list(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("cannot parse list {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: usize = lo.trim().parse().map_err(|_| bad())?;
                let hi: usize = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn table(a: &TableArgs, output: Output) -> Outcome {
    let ports = parse_list(&a.ports)?;
    let dims: Vec<u32> = parse_list(&a.d)?
        .into_iter()
        .map(|d| u32::try_from(d).map_err(|_| Failure::Usage(format!("d = {d} too large"))))
        .collect::<Result<_, _>>()?;
    let rows = fidelity_table(&ports, &dims)?;
    match output {
        Output::Json => emit_json(&rows),
        Output::Csv | Output::Text => emit(&table_csv(&rows)),
    }
}

fn verify_cmd(a: &VerifyArgs, c: &Common, b: &Budgets) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let config = VerifyConfig {
        n: a.n,
        d: a.d,
        tol: c.tol,
        budgets: *b,
        seed: c.seed,
        samples: a.samples,
    };
    let report = verify::run(suite, &config)?;
    match c.output {
        Output::Json => emit_json(&report)?,
        Output::Csv => emit(&render::verify_csv(&report))?,
        Output::Text => emit(&report.render_text())?,
    }
    if !report.passed() {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn decompose(a: &AlgebraArgs, output: Output) -> Outcome {
    let report: DecompositionReport = natural_decomposition(a.n, a.d)?;
    match output {
        Output::Json => emit_json(&report),
        Output::Text => emit(&render::decomposition(&report)),
        Output::Csv => Err(no_csv("decompose")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("1-3,7").ok(), Some(vec![1, 2, 3, 7]));
        assert_eq!(parse_list(" 10 , 20 ").ok(), Some(vec![10, 20]));
        assert!(parse_list("3-1").is_err());
        assert!(parse_list("").is_err());
        assert!(parse_list("x").is_err());
    }
}
