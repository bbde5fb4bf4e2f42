//! Finite Wallis-type partial products.
//!
//! Every evaluator works in log space. A product of `k` linear factors is
//! rewritten as a sum of `ln(1 + α/x)` terms, one per factor pair, and summed
//! with [`NeumaierSum`]. Raw products overflow a double near `k ≈ 170`; the
//! log form stays accurate for `k` in the billions.
//!
//! Cost is `O(k)` per call on purpose: these are the products themselves,
//! never a closed-form shortcut through the gamma function.

mod exact;

pub use exact::{
    rational_gamma_product, Evaluation, ExactEstimate, ExactRational, RationalProduct,
    DEFAULT_DIGIT_BUDGET,
};

use std::f64::consts::{LN_2, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// `ln √π`.
pub(crate) const LN_SQRT_PI: f64 = 0.572_364_942_924_700_087_071_713_675_676_529_36;

/// A strictly positive, finite exponent.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which finite product an estimate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `k^α (k−1)! / (α (α+1) ⋯ (α+k−1))`, converging to `Γ(α)`.
    EvenShift,
    /// `√π k^α ∏ (j+½) / ∏ (j+½+α)`, converging to `Γ(α + ½)`.
    OddShift,
    /// `∏ (2m/(2m−1)) (2m/(2m+1))`, converging to `π/2`.
    Wallis,
    /// Integer-ratio form for `α = p/q`.
    Rational,
    /// One side of the finite duplication identity.
    Duplication,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::EvenShift => "even",
            Variant::OddShift => "odd",
            Variant::Wallis => "wallis",
            Variant::Rational => "rational",
            Variant::Duplication => "duplication",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Value of one finite partial product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductEstimate {
    pub k: u64,
    /// For Wallis products this is `½`, the exponent whose rational form
    /// `p = 1, q = 2` produces them.
    pub alpha: Alpha,
    pub variant: Variant,
    pub log_value: f64,
}

impl ProductEstimate {
    pub(crate) fn new(k: u64, alpha: Alpha, variant: Variant, log_value: f64) -> Self {
        debug_assert!(log_value.is_finite());
        Self {
            k,
            alpha,
            variant,
            log_value,
        }
    }

    /// `exp(log_value)`; may overflow to `+inf`.
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

fn check_index(name: &'static str, value: u64, min: u64) -> Result<()> {
    if value < min {
        Err(Error::IndexTooSmall { name, min, value })
    } else {
        Ok(())
    }
}

/// `Σ_{j=start}^{end−1} ln(1 + α / (j + offset))`.
fn log1p_sum(alpha: f64, offset: f64, start: u64, end: u64) -> f64 {
    (start..end)
        .map(|j| (alpha / (j as f64 + offset)).ln_1p())
        .collect::<NeumaierSum>()
        .value()
}

pub(crate) fn log_even(alpha: f64, k: u64) -> f64 {
    // k^α · ∏_{j=1}^{k−1} j/(j+α) · 1/α; the empty product at k = 1 gives 1/α.
    let mut acc = NeumaierSum::new();
    acc += alpha * (k as f64).ln();
    acc += -alpha.ln();
    acc += -log1p_sum(alpha, 0.0, 1, k);
    acc.value()
}

pub(crate) fn log_odd(alpha: f64, k: u64) -> f64 {
    let mut acc = NeumaierSum::new();
    acc += LN_SQRT_PI;
    acc += alpha * (k as f64).ln();
    acc += -log1p_sum(alpha, 0.5, 0, k);
    acc.value()
}

/// `k^α (k−1)(k−2)⋯1 / ((k−1+α)(k−2+α)⋯α)`, which tends to `Γ(α)`.
///
/// At `k = 1` the numerator is empty and the value is `1/α`.
pub fn partial_product_even(alpha: Alpha, k: u64) -> Result<ProductEstimate> {
    check_index("k", k, 1)?;
    Ok(ProductEstimate::new(
        k,
        alpha,
        Variant::EvenShift,
        log_even(alpha.get(), k),
    ))
}

/// `√π k^α (k−½)(k−3/2)⋯½ / ((k−½+α)⋯(½+α))`, which tends to `Γ(α + ½)`.
pub fn partial_product_odd(alpha: Alpha, k: u64) -> Result<ProductEstimate> {
    check_index("k", k, 1)?;
    Ok(ProductEstimate::new(
        k,
        alpha,
        Variant::OddShift,
        log_odd(alpha.get(), k),
    ))
}

/// The first `n` factor pairs of the Wallis product, `∏ 4m² / (4m² − 1)`.
pub fn wallis_partial(n: u64) -> Result<ProductEstimate> {
    check_index("n", n, 1)?;
    let log_value = (1..=n)
        .map(|m| {
            let m = m as f64;
            -(-1.0 / (4.0 * m * m)).ln_1p()
        })
        .collect::<NeumaierSum>()
        .value();
    Ok(ProductEstimate::new(
        n,
        Alpha(0.5),
        Variant::Wallis,
        log_value,
    ))
}

/// Links the `p = 1, q = 2` integer-ratio product to a Wallis partial product.
///
/// Returns `(A, B)` with `A = (R_k / √2)²`, `R_k` the rational product at
/// `p = 1, q = 2`, and `B = (2/1)(2/3)(4/3)(4/5)⋯((2k−2)/(2k−1))·(2k/(2k−1))`
/// multiplied out factor by factor. The two are the same finite product.
pub fn wallis_square_link(k: u64) -> Result<(f64, f64)> {
    check_index("k", k, 2)?;
    let spec = exact::RationalAlphaSpec::new(1, 2)?;
    let r = rational_gamma_product(spec, k, Evaluation::LogSpace)?;
    let a = (2.0 * (r.estimate.log_value - 0.5 * LN_2)).exp();

    let mut acc = NeumaierSum::new();
    for m in 1..k {
        let m = m as f64;
        acc += (1.0 / (2.0 * m - 1.0)).ln_1p();
        acc += (-1.0 / (2.0 * m + 1.0)).ln_1p();
    }
    acc += (1.0 / (2.0 * k as f64 - 1.0)).ln_1p();
    Ok((a, acc.value().exp()))
}

/// Both sides of the duplication step at finite `k`.
///
/// `L = P_even(α, k) · P_odd(α, k)` and
/// `R = 2^{1−2α} √π · P_even(2α, 2k)`. Rescaling numerator and denominator
/// by `2^{2k}` turns one into the other, so `L = R` for every `k`, not just
/// in the limit.
pub fn duplication_combine(alpha: Alpha, k: u64) -> Result<(ProductEstimate, ProductEstimate)> {
    check_index("k", k, 1)?;
    let a = alpha.get();
    let doubled = Alpha::new(2.0 * a)?;
    let two_k = k.checked_mul(2).ok_or(Error::InvalidSample("k too large"))?;

    let mut left = NeumaierSum::new();
    left += log_even(a, k);
    left += log_odd(a, k);

    let mut right = NeumaierSum::new();
    right += (1.0 - 2.0 * a) * LN_2;
    right += LN_SQRT_PI;
    right += log_even(doubled.get(), two_k);

    Ok((
        ProductEstimate::new(k, alpha, Variant::Duplication, left.value()),
        ProductEstimate::new(two_k, alpha, Variant::Duplication, right.value()),
    ))
}

/// `π / 2`, the Wallis limit.
pub const HALF_PI: f64 = PI / 2.0;

pub use exact::RationalAlphaSpec;
