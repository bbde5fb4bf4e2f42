#![allow(dead_code)]

//! Test-only oracles, independent of the library's evaluation paths.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Unreduced fraction for brute-force products.
#[derive(Debug, Clone)]
pub struct Fraction {
    pub num: BigInt,
    pub den: BigInt,
}

impl Fraction {
    pub fn one() -> Self {
        Self {
            num: BigInt::one(),
            den: BigInt::one(),
        }
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Self {
            num: BigInt::from(num),
            den: BigInt::from(den),
        }
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        Fraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn div(&self, other: &Fraction) -> Fraction {
        assert!(!other.num.is_zero());
        Fraction {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
    }

    pub fn pow(&self, e: u32) -> Fraction {
        Fraction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn equals(&self, other: &Fraction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Natural log via decimal digit counts; adequate for |ln| comparisons
    /// at the 1e-13 level.
    pub fn ln(&self) -> f64 {
        ln_big(&self.num.abs()) - ln_big(&self.den.abs())
    }
}

fn ln_big(x: &BigInt) -> f64 {
    let s = x.to_string();
    let lead: f64 = format!("0.{}", &s[..s.len().min(30)]).parse().unwrap();
    lead.ln() + s.len() as f64 * std::f64::consts::LN_10
}

/// Brute-force `∏_{j=start}^{end−1} (j·a + b) / c` for rational factors.
pub fn linear_product(start: i64, end: i64, a: i64, b: i64, c: i64) -> Fraction {
    (start..end).fold(Fraction::one(), |acc, j| acc.mul(&Fraction::new(j * a + b, c)))
}

/// CLI invocations with committed golden outputs under `tests/golden/`.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("gamma_even_half.csv", &["gamma", "--alpha", "0.5", "--k", "1024", "--mode", "even", "--format", "csv"]),
    ("gamma_even_half_accel.jsonl", &["gamma", "--alpha", "0.5", "--k", "2048", "--mode", "even", "--accelerate-levels", "3", "--format", "json"]),
    ("gamma_odd.csv", &["gamma", "--alpha", "1.5", "--k", "256", "--mode", "odd"]),
    ("rational_half.csv", &["rational", "--p", "1", "--q", "2", "--k", "1000"]),
    ("rational_exact.csv", &["rational", "--p", "2", "--q", "1", "--k", "50", "--exact"]),
    ("rational_third_exact.jsonl", &["rational", "--p", "1", "--q", "3", "--k", "32", "--exact", "--format", "json"]),
    ("wallis_1000.csv", &["wallis", "--terms", "1000"]),
    ("wallis_1.jsonl", &["wallis", "--terms", "1", "--format", "json"]),
    ("duplication_half.csv", &["duplication", "--alpha", "0.5", "--k", "64"]),
    ("duplication_125.jsonl", &["duplication", "--alpha", "1.25", "--k", "4096", "--format", "json"]),
    ("mc_1000.jsonl", &["mc", "--dims", "1000", "--samples", "100000", "--alpha", "0.5", "--seed", "42", "--format", "json"]),
    ("mc_alpha1.csv", &["mc", "--dims", "10", "--samples", "20000", "--alpha", "1", "--seed", "7"]),
];
