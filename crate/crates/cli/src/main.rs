use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use workbench_cli::campaign::{run_campaign, Params};
use workbench_cli::commands;
use workbench_cli::expr::Context;
use workbench_cli::report::{all_passed, emit, Format, Report};
use workbench_core::gammalab::DEFAULT_MAX_OPS;
use workbench_core::growth::GrowthSeries;

/// Exact-arithmetic workbench for twisted group rings, quantum affine spaces
/// and growth-degree statistics.
#[derive(Parser)]
#[command(name = "workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct AlgebraArgs {
    /// Number of primes or generators.
    #[arg(long)]
    n: Option<u32>,
    /// Prime for the root of unity.
    #[arg(long)]
    p: Option<u64>,
    /// Level: the root of unity has order p^(2t).
    #[arg(long)]
    t: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign (step1, step2, step3, step4, step8,
    /// lemma5.1, lemma5.3, cyclo, thm6.1, confluence or all).
    Verify {
        campaign: String,
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Largest radius for growth profiles.
        #[arg(long)]
        rmax: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parse and evaluate an expression, printing its canonical form.
    Eval {
        #[arg(long, value_enum)]
        context: ContextArg,
        expr: String,
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Coefficients of powers of gamma and the normal-form growth model.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Quantum affine space at a root of unity.
    #[command(subcommand)]
    Quantum(QuantumCmd),
    /// Degree and slope estimates for dimension series read from a file.
    #[command(subcommand)]
    Growth(GrowthCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum ContextArg {
    Field,
    Group,
    Twisted,
    Quantum,
}

impl From<ContextArg> for Context {
    fn from(c: ContextArg) -> Self {
        match c {
            ContextArg::Field => Context::Field,
            ContextArg::Group => Context::Group,
            ContextArg::Twisted => Context::Twisted,
            ContextArg::Quantum => Context::Quantum,
        }
    }
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Coefficient of a monomial in a power of gamma, checked by enumeration.
    Coeff {
        #[arg(long)]
        power: u32,
        /// Group word with nonpositive exponents, e.g. "x1^-2*x2^-1".
        #[arg(long)]
        target: String,
    },
    /// Triangular witness that 1, gamma, ..., gamma^d are independent.
    Witness {
        #[arg(long)]
        n: u32,
    },
    /// Normal-form counts for r = 1..=rmax with slope and degree.
    Growth {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        rmax: Option<u32>,
        /// Also write the series as `r,dim` lines.
        #[arg(long, value_name = "FILE")]
        series: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QuantumCmd {
    /// Normal form of a product of generators.
    Nf {
        word: String,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Product of two elements.
    Mul {
        left: String,
        right: String,
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Dimensions of V^r for r = 1..=rmax with a degree estimate.
    Growth {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 16)]
        rmax: u32,
        #[arg(long, value_name = "FILE")]
        series: Option<PathBuf>,
    },
    /// Check that generator images respect every defining relation.
    HomCheck {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Level of the source algebra (default t - 1).
        #[arg(long)]
        src_t: Option<u32>,
        /// Comma-separated images of x1, x2, ... (default x_i^p).
        #[arg(long)]
        images: Option<String>,
    },
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Polynomial growth degree of a series (`-` reads standard input).
    Estimate {
        file: String,
        /// Expected degree, or `unbounded`.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Slope of an eventually affine series.
    Slope {
        file: String,
        #[arg(long)]
        expect: Option<i64>,
    },
}

fn max_ops() -> Result<u64> {
    match std::env::var("WORKBENCH_MAX_OPS") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("WORKBENCH_MAX_OPS must be a positive integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_MAX_OPS),
    }
}

fn read_series(file: &str) -> Result<GrowthSeries> {
    let text = if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(file).with_context(|| format!("reading {file}"))?
    };
    Ok(GrowthSeries::parse(&text)?)
}

fn write_series(path: Option<PathBuf>, series: &GrowthSeries) -> Result<()> {
    if let Some(path) = path {
        fs::write(&path, series.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(command: Command) -> Result<Vec<Report>> {
    let max_ops = max_ops()?;
    match command {
        Command::Verify {
            campaign,
            alg,
            rmax,
            seed,
        } => {
            let params = Params {
                n: alg.n,
                p: alg.p,
                t: alg.t,
                rmax,
                max_ops,
            };
            Ok(run_campaign(&campaign, &params, seed)?)
        }
        Command::Eval { context, expr, alg } => {
            commands::eval(context.into(), &expr, alg.n, alg.p.unwrap_or(2), alg.t.unwrap_or(1))
        }
        Command::Gamma(GammaCmd::Coeff { power, target }) => {
            commands::gamma_coeff_cmd(power, &target, max_ops)
        }
        Command::Gamma(GammaCmd::Witness { n }) => commands::gamma_witness_cmd(n),
        Command::Gamma(GammaCmd::Growth { n, rmax, series }) => {
            let (reports, s) = commands::gamma_growth_cmd(n, rmax.unwrap_or(2 * n + 12), max_ops)?;
            write_series(series, &s)?;
            Ok(reports)
        }
        Command::Quantum(QuantumCmd::Nf { word, alg, seed }) => {
            commands::quantum_nf(&word, alg.n, alg.p.unwrap_or(2), alg.t.unwrap_or(1), seed)
        }
        Command::Quantum(QuantumCmd::Mul { left, right, alg }) => {
            commands::quantum_mul(&left, &right, alg.n, alg.p.unwrap_or(2), alg.t.unwrap_or(1))
        }
        Command::Quantum(QuantumCmd::Growth { alg, rmax, series }) => {
            let (reports, s) = commands::quantum_growth(
                alg.n.unwrap_or(2),
                alg.p.unwrap_or(2),
                alg.t.unwrap_or(1),
                rmax,
                max_ops,
            )?;
            write_series(series, &s)?;
            Ok(reports)
        }
        Command::Quantum(QuantumCmd::HomCheck { alg, src_t, images }) => commands::quantum_hom_check(
            alg.n.unwrap_or(2),
            alg.p.unwrap_or(2),
            alg.t.unwrap_or(1),
            src_t,
            images.as_deref(),
        ),
        Command::Growth(GrowthCmd::Estimate { file, expect }) => {
            let expect = expect.as_deref().map(commands::parse_expectation).transpose()?;
            commands::growth_estimate(&file, &read_series(&file)?, expect)
        }
        Command::Growth(GrowthCmd::Slope { file, expect }) => {
            commands::growth_slope(&file, &read_series(&file)?, expect)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = emit(&reports, cli.format);
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if all_passed(&reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
