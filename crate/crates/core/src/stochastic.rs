//! Monte Carlo reproduction of the moment limit `E[(S_n/n)^α] → 1`.
//!
//! `S_n = X₁² + ⋯ + X_n²` for independent standard normals. Normals come from
//! Marsaglia's polar method, an exact rejection transform of uniform pairs,
//! fed by ChaCha8 in counter mode.
//!
//! Samples are grouped in fixed blocks of [`BLOCK_SIZE`]. Block `b` always
//! draws from ChaCha stream `b` under the run's seed, and block statistics
//! are merged left to right in block order. Chunks only decide which blocks
//! run on which worker, so a result depends on `(seed, N, n, α)` alone:
//! neither the chunk count nor the thread count can change a single bit.

use std::mem::size_of;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::product::Alpha;
use crate::reference::log_gamma;

/// Samples per independently seeded block.
pub const BLOCK_SIZE: u64 = 4096;

/// Default cap on per-block accumulator state (256 MiB).
pub const DEFAULT_MEMORY_BUDGET: usize = 256 << 20;

/// Minimum sample count for tail-probability estimates.
pub const MIN_TAIL_SAMPLES: u64 = 10_000;

/// Integer exponents up to this size use the rising-factorial form of the
/// exact moment.
const MAX_RECURRENCE_EXPONENT: f64 = 1024.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    /// Number of squared normals per sample, `n`.
    pub dims: u64,
    pub alpha: Alpha,
    /// Number of samples, `N`.
    pub samples: u64,
    pub seed: u64,
    /// Number of parallel work units; `1 ≤ chunks ≤ N`.
    pub chunks: u64,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims == 0 {
            return Err(Error::InvalidConfig("dims must be at least 1"));
        }
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be at least 1"));
        }
        if self.chunks == 0 || self.chunks > self.samples {
            return Err(Error::InvalidConfig("chunks must lie in 1..=samples"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    /// Sample mean of `(S_n/n)^α`.
    pub mean: f64,
    /// Sample standard deviation over `√N`; zero when `N = 1`.
    pub stderr: f64,
    /// Closed-form `E[(S_n/n)^α]`.
    pub exact: f64,
    pub n_used: u64,
    pub samples_used: u64,
}

impl McResult {
    /// `|mean − exact| / stderr`.
    pub fn z_score(&self) -> f64 {
        (self.mean - self.exact).abs() / self.stderr
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentBound {
    pub p: u32,
    pub bound: f64,
    /// The bound exceeded the double range and is `+inf`.
    pub overflowed: bool,
}

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let weight = other.count as f64 / count as f64;
        Self {
            count,
            mean: self.mean + delta * weight,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * weight,
        }
    }
}

/// Standard normals by the polar method.
struct NormalStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl NormalStream {
    fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }

    /// Uniform on `(−1, 1)` with 53 random bits.
    fn symmetric_uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
        (self.rng.next_u64() >> 11) as f64 * SCALE - 1.0
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = self.symmetric_uniform();
            let v = self.symmetric_uniform();
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * factor);
                return u * factor;
            }
        }
    }

    /// `X₁² + ⋯ + X_n²`.
    fn chi_squared(&mut self, dims: u64) -> f64 {
        (0..dims).map(|_| self.next().powi(2)).sum()
    }
}

fn block_count(samples: u64) -> u64 {
    samples.div_ceil(BLOCK_SIZE)
}

fn block_len(samples: u64, block: u64) -> u64 {
    (samples - block * BLOCK_SIZE).min(BLOCK_SIZE)
}

/// Runs `per_block` over every block, spreading contiguous block ranges over
/// `chunks` workers, and returns the block outputs in block order.
fn run_blocks<T, F>(samples: u64, chunks: u64, per_block: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let blocks = block_count(samples);
    let chunks = chunks.min(blocks).max(1);
    let per_chunk = blocks.div_ceil(chunks);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = (c * per_chunk).min(blocks);
            let end = ((c + 1) * per_chunk).min(blocks);
            (start..end)
                .map(|b| per_block(b, block_len(samples, b)))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Estimates `E[(S_n/n)^α]` from `N` samples.
pub fn sample_scaled_chi2_power(config: &McConfig) -> Result<McResult> {
    sample_scaled_chi2_power_with_budget(config, DEFAULT_MEMORY_BUDGET)
}

pub fn sample_scaled_chi2_power_with_budget(
    config: &McConfig,
    memory_budget: usize,
) -> Result<McResult> {
    config.validate()?;
    let blocks = usize::try_from(block_count(config.samples)).unwrap_or(usize::MAX);
    let needed = blocks.saturating_mul(size_of::<RunningStats>());
    if needed > memory_budget {
        return Err(Error::MemoryBudget {
            needed,
            budget: memory_budget,
        });
    }
    let exact = exact_scaled_moment(config.dims, config.alpha)?;
    let n = config.dims as f64;
    let a = config.alpha.get();

    let stats = run_blocks(config.samples, config.chunks, |block, len| {
        let mut normals = NormalStream::new(config.seed, block);
        let mut acc = RunningStats::default();
        for _ in 0..len {
            acc.push((normals.chi_squared(config.dims) / n).powf(a));
        }
        acc
    })
    .into_iter()
    .fold(RunningStats::default(), RunningStats::merge);

    debug_assert_eq!(stats.count, config.samples);
    let stderr = if stats.count > 1 {
        (stats.m2 / (stats.count - 1) as f64).sqrt() / (stats.count as f64).sqrt()
    } else {
        0.0
    };
    Ok(McResult {
        mean: stats.mean,
        stderr,
        exact,
        n_used: config.dims,
        samples_used: config.samples,
    })
}

/// `E[(S_n/n)^α] = (2/n)^α Γ(n/2 + α) / Γ(n/2)`.
///
/// Integer `α` uses the rising factorial `∏_{i<α} (1 + 2i/n)`, so `α = 1`
/// gives exactly `1`. Other exponents go through a difference of log-gammas.
pub fn exact_scaled_moment(n: u64, alpha: Alpha) -> Result<f64> {
    if n == 0 {
        return Err(Error::IndexTooSmall {
            name: "n",
            min: 1,
            value: n,
        });
    }
    let a = alpha.get();
    let n = n as f64;
    if a.fract() == 0.0 && a <= MAX_RECURRENCE_EXPONENT {
        return Ok((0..a as u32)
            .map(|i| 1.0 + 2.0 * f64::from(i) / n)
            .product());
    }
    let half = 0.5 * n;
    Ok((a * (2.0 / n).ln() + log_gamma(half + a)? - log_gamma(half)?).exp())
}

/// `max{m_{2p}, m_{2p−2} m₂, …, m₂^p}` with `m_{2j} = (2j−1)!!` the even
/// moments of a standard normal.
///
/// This bounds `E[(S_n/n)^p]` uniformly in `n`.
pub fn moment_bound(p: u32) -> Result<MomentBound> {
    if p == 0 {
        return Err(Error::IndexTooSmall {
            name: "p",
            min: 1,
            value: 0,
        });
    }
    let mut moments = Vec::with_capacity(p as usize + 1);
    moments.push(1.0f64);
    for j in 1..=p {
        let prev = moments[j as usize - 1];
        moments.push(f64::from(2 * j - 1) * prev);
    }
    let m2 = moments[1];
    let bound = (1..=p)
        .map(|j| moments[j as usize] * m2.powi((p - j) as i32))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MomentBound {
        p,
        bound,
        overflowed: bound.is_infinite(),
    })
}

fn stream_seed(seed: u64, n: u64) -> u64 {
    // SplitMix64 finalizer; separates the streams used for each n.
    let mut z = seed ^ n.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Empirical `P(|S_n/n − 1| > ε)` for each `n` in `n_values`.
pub fn lln_tail_probability(
    n_values: &[u64],
    epsilon: f64,
    samples: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(epsilon));
    }
    if samples < MIN_TAIL_SAMPLES {
        return Err(Error::InvalidConfig("tail estimates need at least 10^4 samples"));
    }
    if n_values.is_empty() || n_values[0] == 0 || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("n values must be positive and ascending"));
    }
    let chunks = rayon::current_num_threads() as u64;
    Ok(n_values
        .iter()
        .map(|&n| {
            let seed = stream_seed(seed, n);
            let hits: u64 = run_blocks(samples, chunks, |block, len| {
                let mut normals = NormalStream::new(seed, block);
                (0..len)
                    .filter(|_| (normals.chi_squared(n) / n as f64 - 1.0).abs() > epsilon)
                    .count() as u64
            })
            .into_iter()
            .sum();
            hits as f64 / samples as f64
        })
        .collect())
}
