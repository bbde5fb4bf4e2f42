//! Acceleration of `O(1/k)` sequences and empirical convergence rates.
//!
//! Both extrapolators assume the sampled sequence has an asymptotic error
//! expansion `s_k = L + c₁/k + c₂/k² + …`. That expansion is a working
//! hypothesis for the partial products; [`empirical_rate`] measures it.

use crate::error::{Error, Result};

/// Relative size below which a difference is treated as roundoff.
pub const DEGENERACY_THRESHOLD: f64 = 1e-15;

/// Samples `s_k` of a sequence at increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSample {
    k_values: Vec<u64>,
    estimates: Vec<f64>,
}

impl SequenceSample {
    pub fn new(k_values: Vec<u64>, estimates: Vec<f64>) -> Result<Self> {
        if k_values.len() != estimates.len() {
            return Err(Error::InvalidSample("k values and estimates differ in length"));
        }
        if k_values.is_empty() {
            return Err(Error::InvalidSample("empty sample"));
        }
        if k_values[0] == 0 || k_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSample("k values must be positive and strictly increasing"));
        }
        if estimates.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidSample("non-finite estimate"));
        }
        Ok(Self {
            k_values,
            estimates,
        })
    }

    /// Samples `f` at each `k`.
    pub fn from_fn<F>(k_values: Vec<u64>, f: F) -> Result<Self>
    where
        F: FnMut(u64) -> Result<f64>,
    {
        let estimates = k_values.iter().copied().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(k_values, estimates)
    }

    pub fn k_values(&self) -> &[u64] {
        &self.k_values
    }

    pub fn estimates(&self) -> &[f64] {
        &self.estimates
    }

    pub fn len(&self) -> usize {
        self.k_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k_values.is_empty()
    }

    fn is_doubling(&self) -> bool {
        self.k_values
            .windows(2)
            .all(|w| w[0].checked_mul(2) == Some(w[1]))
    }
}

/// Extrapolation tableau and its deepest entry.
#[derive(Debug, Clone, PartialEq)]
pub struct AccelResult {
    /// `levels[0]` is the input; each further level is one entry shorter.
    pub levels: Vec<Vec<f64>>,
    pub limit_estimate: f64,
    /// Observed order `p` in `O(1/k^p)`, when at least three samples with
    /// non-vanishing differences are available.
    pub rate_estimate: Option<f64>,
    /// Set when a difference fell to roundoff and the tableau was cut short.
    pub degenerate: bool,
}

fn is_negligible(diff: f64, scale: f64) -> bool {
    diff.abs() <= DEGENERACY_THRESHOLD * scale.abs()
}

/// Observed order from the last three level-0 entries of a doubling ladder.
fn doubling_rate(s: &[f64]) -> Option<f64> {
    if s.len() < 3 {
        return None;
    }
    let n = s.len();
    let d1 = s[n - 2] - s[n - 3];
    let d2 = s[n - 1] - s[n - 2];
    if is_negligible(d1, s[n - 1]) || is_negligible(d2, s[n - 1]) {
        return None;
    }
    let ratio = d1 / d2;
    (ratio > 0.0).then(|| ratio.log2())
}

/// Richardson extrapolation on a doubling ladder `k₀, 2k₀, 4k₀, …`.
///
/// Level `j` removes the `1/k^j` term:
/// `T_j[i] = (2^j T_{j−1}[i+1] − T_{j−1}[i]) / (2^j − 1)`.
pub fn richardson(samples: &SequenceSample, levels: usize) -> Result<AccelResult> {
    if !samples.is_doubling() {
        return Err(Error::NonGeometricLadder);
    }
    if levels >= samples.len() {
        return Err(Error::InvalidSample("more levels than available doublings"));
    }
    let base = samples.estimates().to_vec();
    let rate_estimate = doubling_rate(&base);
    let mut tableau = vec![base];
    let mut degenerate = false;
    for j in 1..=levels {
        let prev = tableau.last().expect("tableau is never empty");
        if prev
            .windows(2)
            .all(|w| is_negligible(w[1] - w[0], w[1]))
        {
            degenerate = true;
            break;
        }
        let weight = f64::from(1u32 << j);
        let next = prev
            .windows(2)
            .map(|w| (weight * w[1] - w[0]) / (weight - 1.0))
            .collect();
        tableau.push(next);
    }
    let limit_estimate = *tableau
        .last()
        .and_then(|l| l.last())
        .expect("levels are non-empty");
    Ok(AccelResult {
        levels: tableau,
        limit_estimate,
        rate_estimate,
        degenerate,
    })
}

/// Aitken's Δ² process, applied `sweeps` times.
///
/// Each sweep maps `s_i, s_{i+1}, s_{i+2}` to
/// `s_i − (Δs_i)² / Δ²s_i`. When a second difference is below
/// [`DEGENERACY_THRESHOLD`]`·|s|` the sweep is abandoned, the result is
/// flagged degenerate and the last completed level is returned as is.
pub fn aitken(samples: &SequenceSample, sweeps: usize) -> Result<AccelResult> {
    if sweeps == 0 {
        return Err(Error::InvalidSample("sweeps must be positive"));
    }
    if samples.len() < 2 * sweeps + 1 {
        return Err(Error::InvalidSample("too few samples for the requested sweeps"));
    }
    let mut tableau = vec![samples.estimates().to_vec()];
    let mut degenerate = false;
    'sweeps: for _ in 0..sweeps {
        let prev = tableau.last().expect("tableau is never empty");
        let mut next = Vec::with_capacity(prev.len() - 2);
        for w in prev.windows(3) {
            let d1 = w[1] - w[0];
            let d2 = w[2] - 2.0 * w[1] + w[0];
            if is_negligible(d2, w[2]) {
                degenerate = true;
                break 'sweeps;
            }
            next.push(w[0] - d1 * d1 / d2);
        }
        tableau.push(next);
    }
    let limit_estimate = *tableau
        .last()
        .and_then(|l| l.last())
        .expect("levels are non-empty");
    Ok(AccelResult {
        levels: tableau,
        limit_estimate,
        rate_estimate: None,
        degenerate,
    })
}

/// Least-squares slope of `ln|s_k − reference|` against `ln k`, negated.
pub fn empirical_rate(samples: &SequenceSample, reference: f64) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::InvalidSample("need at least three samples"));
    }
    let mut points = Vec::with_capacity(samples.len());
    for (&k, &s) in samples.k_values().iter().zip(samples.estimates()) {
        let err = (s - reference).abs();
        if !(err > 0.0) {
            return Err(Error::InvalidSample("error vanished; rate undefined"));
        }
        points.push(((k as f64).ln(), err.ln()));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(-sxy / sxx)
}

/// `k₀, 2k₀, …` with `count` entries.
pub fn doubling_ladder(start: u64, count: usize) -> Vec<u64> {
    std::iter::successors(Some(start), |k| k.checked_mul(2))
        .take(count)
        .collect()
}
