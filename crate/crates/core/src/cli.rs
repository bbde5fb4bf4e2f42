//! Command implementations behind the `wallis-gamma` binary.
//!
//! Each `cmd_*` function returns the rendered output; the binary only parses
//! flags, picks the destination and maps errors to exit codes.

use std::fmt::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::accel::{richardson, SequenceSample};
use crate::error::{Error, Result};
use crate::product::{
    duplication_combine, partial_product_even, partial_product_odd, rational_gamma_product,
    wallis_partial, Alpha, Evaluation, ProductEstimate, RationalAlphaSpec, DEFAULT_DIGIT_BUDGET,
    HALF_PI, LN_SQRT_PI,
};
use crate::reference::log_gamma;
use crate::stochastic::{sample_scaled_chi2_power, McConfig};
use crate::table::{json_real, real, ConvergenceTable, Format, Parameter, TableMetadata, TableRow};

/// Environment variable overriding the exact-mode digit budget.
pub const DIGIT_BUDGET_ENV: &str = "WALLIS_GAMMA_DIGIT_BUDGET";

/// Smallest `k` in a default table ladder.
pub const LADDER_FLOOR: u64 = 8;

#[derive(Debug, Parser)]
#[command(name = "wallis-gamma", version, about = "Gamma function from Wallis-type partial products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Seed for stochastic commands; drawn from the OS and echoed when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Even- or odd-shift partial products against Γ(α) or Γ(α+½).
    Gamma(GammaArgs),
    /// Integer-ratio product for α = p/q.
    Rational(RationalArgs),
    /// Partial products of the Wallis formula for π/2.
    Wallis(WallisArgs),
    /// Finite-k and limit residuals of the duplication formula.
    Duplication(DuplicationArgs),
    /// Monte Carlo estimate of E[(S_n/n)^α].
    Mc(McArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = Mode::Even)]
    pub mode: Mode,
    /// Richardson levels applied to the k-ladder; 0 disables.
    #[arg(long, default_value_t = 0)]
    pub accelerate_levels: usize,
}

#[derive(Debug, Args)]
pub struct RationalArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub p: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub q: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Also compute the coefficient exactly with big integers.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct WallisArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub terms: u64,
}

#[derive(Debug, Args)]
pub struct DuplicationArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub dims: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub chunks: u64,
}

/// Doubling ladder ending exactly at `k`: `k/2^m, …, k/2, k`, halving while
/// the result stays an integer no smaller than [`LADDER_FLOOR`].
pub fn ladder(k: u64) -> Vec<u64> {
    let mut values = vec![k];
    let mut current = k;
    while current % 2 == 0 && current / 2 >= LADDER_FLOOR {
        current /= 2;
        values.push(current);
    }
    values.reverse();
    values
}

fn row(estimate: &ProductEstimate, reference: f64) -> TableRow {
    TableRow::new(Some(estimate.k), estimate.value(), estimate.log_value, reference)
}

pub fn cmd_gamma(args: &GammaArgs, format: Format) -> Result<String> {
    let alpha = Alpha::new(args.alpha)?;
    let (evaluate, shift, variant): (fn(Alpha, u64) -> Result<ProductEstimate>, f64, &str) =
        match args.mode {
            Mode::Even => (partial_product_even, 0.0, "even"),
            Mode::Odd => (partial_product_odd, 0.5, "odd"),
        };
    let log_reference = log_gamma(alpha.get() + shift)?;
    let reference = log_reference.exp();

    let ks = ladder(args.k);
    let estimates = ks
        .iter()
        .map(|&k| evaluate(alpha, k))
        .collect::<Result<Vec<_>>>()?;
    let mut table = ConvergenceTable::new(TableMetadata {
        variant: variant.to_owned(),
        parameter: Parameter::Alpha(alpha.get()),
        seed: None,
    });
    for e in &estimates {
        table.push(row(e, reference));
    }
    if args.accelerate_levels > 0 {
        let samples = SequenceSample::new(ks, estimates.iter().map(|e| e.value()).collect())?;
        let accel = richardson(&samples, args.accelerate_levels)?;
        let limit = accel.limit_estimate;
        let mut extrapolated = TableRow::new(None, limit, limit.ln(), reference);
        extrapolated.variant = Some(format!("{variant}-richardson{}", args.accelerate_levels));
        table.push(extrapolated);
    }
    Ok(table.render(format))
}

/// Digit budget from [`DIGIT_BUDGET_ENV`], or the default.
pub fn digit_budget_from_env() -> std::result::Result<u64, String> {
    match std::env::var(DIGIT_BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{DIGIT_BUDGET_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_DIGIT_BUDGET),
    }
}

pub fn cmd_rational(args: &RationalArgs, digit_budget: u64, format: Format) -> Result<String> {
    let spec = RationalAlphaSpec::new(args.p, args.q)?;
    let reference = log_gamma(spec.alpha().get())?.exp();
    let evaluation = if args.exact {
        Evaluation::Exact { digit_budget }
    } else {
        Evaluation::LogSpace
    };
    let mut table = ConvergenceTable::new(TableMetadata {
        variant: "rational".to_owned(),
        parameter: Parameter::Ratio {
            p: args.p,
            q: args.q,
        },
        seed: None,
    });
    for k in ladder(args.k) {
        let r = rational_gamma_product(spec, k, evaluation)?;
        let mut row = row(&r.estimate, reference);
        row.coefficient = r.exact.map(|e| e.coefficient.to_string());
        table.push(row);
    }
    Ok(table.render(format))
}

pub fn cmd_wallis(args: &WallisArgs, format: Format) -> Result<String> {
    let mut table = ConvergenceTable::new(TableMetadata {
        variant: "wallis".to_owned(),
        parameter: Parameter::Alpha(0.5),
        seed: None,
    });
    for n in ladder(args.terms) {
        table.push(row(&wallis_partial(n)?, HALF_PI));
    }
    Ok(table.render(format))
}

/// Residuals reported by `duplication`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuplicationReport {
    pub alpha: f64,
    pub k: u64,
    pub log_lhs: f64,
    pub log_rhs: f64,
    /// `|ln L − ln R|` for the finite-k products.
    pub finite_residual: f64,
    /// `|Γ(α)Γ(α+½) − 2^{1−2α}√π Γ(2α)|` from the reference gamma.
    pub limit_residual: f64,
}

pub fn duplication_report(alpha: f64, k: u64) -> Result<DuplicationReport> {
    let alpha = Alpha::new(alpha)?;
    let (lhs, rhs) = duplication_combine(alpha, k)?;
    let a = alpha.get();
    let log_limit_lhs = log_gamma(a)? + log_gamma(a + 0.5)?;
    let log_limit_rhs = (1.0 - 2.0 * a) * std::f64::consts::LN_2 + LN_SQRT_PI + log_gamma(2.0 * a)?;
    Ok(DuplicationReport {
        alpha: a,
        k,
        log_lhs: lhs.log_value,
        log_rhs: rhs.log_value,
        finite_residual: (lhs.log_value - rhs.log_value).abs(),
        limit_residual: (log_limit_lhs.exp() - log_limit_rhs.exp()).abs(),
    })
}

pub fn cmd_duplication(args: &DuplicationArgs, format: Format) -> Result<String> {
    let r = duplication_report(args.alpha, args.k)?;
    Ok(match format {
        Format::Csv => format!(
            "alpha,k,log_lhs,log_rhs,finite_residual,limit_residual\n{},{},{},{},{},{}\n",
            real(r.alpha),
            r.k,
            real(r.log_lhs),
            real(r.log_rhs),
            real(r.finite_residual),
            real(r.limit_residual)
        ),
        Format::Json => format!(
            "{{\"alpha\":{},\"k\":{},\"log_lhs\":{},\"log_rhs\":{},\"finite_residual\":{},\"limit_residual\":{}}}\n",
            json_real(r.alpha),
            r.k,
            json_real(r.log_lhs),
            json_real(r.log_rhs),
            json_real(r.finite_residual),
            json_real(r.limit_residual)
        ),
    })
}

/// Renders a Monte Carlo run. The chunk count is deliberately absent: it
/// cannot affect the numbers, so it does not appear in the output either.
pub fn cmd_mc(args: &McArgs, seed: u64, format: Format) -> Result<String> {
    if args.chunks > args.samples {
        return Err(Error::InvalidConfig("chunks must lie in 1..=samples"));
    }
    let config = McConfig {
        dims: args.dims,
        alpha: Alpha::new(args.alpha)?,
        samples: args.samples,
        seed,
        chunks: args.chunks,
    };
    let r = sample_scaled_chi2_power(&config)?;
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("dims,samples,alpha,seed,mean,stderr,exact,z_score\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.n_used,
                r.samples_used,
                real(config.alpha.get()),
                seed,
                real(r.mean),
                real(r.stderr),
                real(r.exact),
                real(r.z_score())
            );
        }
        Format::Json => {
            let _ = writeln!(
                out,
                "{{\"dims\":{},\"samples\":{},\"alpha\":{},\"seed\":{},\"mean\":{},\"stderr\":{},\"exact\":{},\"z_score\":{}}}",
                r.n_used,
                r.samples_used,
                json_real(config.alpha.get()),
                seed,
                json_real(r.mean),
                json_real(r.stderr),
                json_real(r.exact),
                json_real(r.z_score())
            );
        }
    }
    Ok(out)
}
