//! Integer-ratio products for rational exponents `α = p/q`.

use std::f64::consts::LN_2;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{check_index, log1p_sum, Alpha, ProductEstimate, Variant};
use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

/// Default limit on the decimal size of an exact coefficient.
pub const DEFAULT_DIGIT_BUDGET: u64 = 1_000_000;

/// Big-integer multiplications between GCD reductions.
const REDUCE_EVERY: usize = 64;

/// Exponent `α = p/q` given as two positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalAlphaSpec {
    p: u64,
    q: u64,
}

impl RationalAlphaSpec {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        check_index("p", p, 1)?;
        check_index("q", q, 1)?;
        Ok(Self { p, q })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn q(self) -> u64 {
        self.q
    }

    pub fn alpha(self) -> Alpha {
        Alpha(self.p as f64 / self.q as f64)
    }
}

/// Non-negative fraction in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRational {
    numerator: BigInt,
    denominator: BigUint,
}

impl ExactRational {
    /// Builds `numerator / denominator` and reduces it.
    pub fn new(numerator: BigInt, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidSample("zero denominator"));
        }
        let g = numerator.magnitude().gcd(&denominator);
        if g.is_one() || g.is_zero() {
            return Ok(Self {
                numerator,
                denominator,
            });
        }
        let sign = numerator.sign();
        Ok(Self {
            numerator: BigInt::from_biguint(sign, numerator.magnitude() / &g),
            denominator: denominator / g,
        })
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    /// Natural log of a positive fraction, accurate to a few ulps even when
    /// both parts are far outside the double range.
    pub fn ln(&self) -> f64 {
        ln_biguint(self.numerator.magnitude()) - ln_biguint(&self.denominator)
    }

    pub fn to_f64(&self) -> f64 {
        let sign = if self.numerator < BigInt::zero() { -1.0 } else { 1.0 };
        if self.numerator.is_zero() {
            0.0
        } else {
            sign * self.ln().exp()
        }
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in 64 bits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * LN_2
}

/// How to evaluate the integer-ratio product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    LogSpace,
    /// Big-integer evaluation, refused when the coefficient would need more
    /// than `digit_budget` decimal digits.
    Exact { digit_budget: u64 },
}

/// `C · k^{p/q}` with the coefficient `C` exact and the power kept symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactEstimate {
    /// `C = q · ∏_{j=1}^{k−1} jq / ∏_{j=0}^{k−1} (jq + p)` in lowest terms.
    pub coefficient: ExactRational,
    pub power_base: u64,
    pub power_exponent: RationalAlphaSpec,
}

impl ExactEstimate {
    pub fn log_value(&self) -> f64 {
        let spec = self.power_exponent;
        let mut acc = NeumaierSum::new();
        acc += self.coefficient.ln();
        acc += spec.p as f64 / spec.q as f64 * (self.power_base as f64).ln();
        acc.value()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalProduct {
    pub estimate: ProductEstimate,
    /// Present only for [`Evaluation::Exact`].
    pub exact: Option<ExactEstimate>,
}

/// `q k^{p/q} ((k−1)q)((k−2)q)⋯q / (((k−1)q+p)⋯p)`, which tends to `Γ(p/q)`.
///
/// Same factor convention as [`super::partial_product_even`]: `k − 1`
/// numerator factors and `k` denominator factors.
pub fn rational_gamma_product(
    spec: RationalAlphaSpec,
    k: u64,
    evaluation: Evaluation,
) -> Result<RationalProduct> {
    check_index("k", k, 1)?;
    let alpha = spec.alpha();
    match evaluation {
        Evaluation::LogSpace => {
            let (p, q) = (spec.p as f64, spec.q as f64);
            let mut acc = NeumaierSum::new();
            acc += q.ln() - p.ln();
            acc += p / q * (k as f64).ln();
            // jq / (jq + p) = 1 / (1 + (p/q)/j)
            acc += -log1p_sum(p / q, 0.0, 1, k);
            Ok(RationalProduct {
                estimate: ProductEstimate::new(k, alpha, Variant::Rational, acc.value()),
                exact: None,
            })
        }
        Evaluation::Exact { digit_budget } => {
            let coefficient = exact_coefficient(spec, k, digit_budget)?;
            let exact = ExactEstimate {
                coefficient,
                power_base: k,
                power_exponent: spec,
            };
            Ok(RationalProduct {
                estimate: ProductEstimate::new(k, alpha, Variant::Rational, exact.log_value()),
                exact: Some(exact),
            })
        }
    }
}

/// Upper bound on the decimal digits of either side of the coefficient.
fn digit_estimate(spec: RationalAlphaSpec, k: u64) -> u64 {
    let largest = (k as f64) * spec.q as f64 + spec.p as f64;
    let per_factor = largest.log10().max(1.0);
    (k as f64 * per_factor + (spec.q as f64).log10()).ceil() as u64 + 1
}

/// Multiplies `u64` factors into a big integer, batching them into machine
/// words first and reducing against `other` every [`REDUCE_EVERY`] big
/// multiplications.
struct Accumulator {
    value: BigUint,
    word: u128,
    since_reduce: usize,
}

impl Accumulator {
    fn new() -> Self {
        Self {
            value: BigUint::one(),
            word: 1,
            since_reduce: 0,
        }
    }

    fn push(&mut self, factor: u64) {
        let factor = u128::from(factor);
        match self.word.checked_mul(factor) {
            Some(w) if w <= u128::from(u64::MAX) => self.word = w,
            _ => {
                self.flush();
                self.word = factor;
            }
        }
    }

    fn flush(&mut self) {
        if self.word != 1 {
            self.value *= BigUint::from(self.word);
            self.word = 1;
            self.since_reduce += 1;
        }
    }
}

fn reduce(a: &mut Accumulator, b: &mut Accumulator) {
    let g = a.value.gcd(&b.value);
    if !g.is_one() {
        a.value /= &g;
        b.value /= &g;
    }
    a.since_reduce = 0;
    b.since_reduce = 0;
}

fn exact_coefficient(spec: RationalAlphaSpec, k: u64, digit_budget: u64) -> Result<ExactRational> {
    let needed = digit_estimate(spec, k);
    if needed > digit_budget {
        return Err(Error::DigitBudgetExceeded {
            needed,
            budget: digit_budget,
        });
    }
    let (p, q) = (spec.p, spec.q);
    let overflow = || Error::DigitBudgetExceeded {
        needed: u64::MAX,
        budget: digit_budget,
    };
    let mut num = Accumulator::new();
    let mut den = Accumulator::new();
    num.push(q);
    den.push(p);
    for j in 1..k {
        let jq = j.checked_mul(q).ok_or_else(overflow)?;
        num.push(jq);
        den.push(jq.checked_add(p).ok_or_else(overflow)?);
        if num.since_reduce.max(den.since_reduce) >= REDUCE_EVERY {
            reduce(&mut num, &mut den);
        }
    }
    num.flush();
    den.flush();
    ExactRational::new(BigInt::from(num.value), den.value)
}
