//! Gamma function values from Wallis-type partial products.
//!
//! The crate evaluates the finite products
//!
//! ```text
//! k^α (k−1)! / (α (α+1) ⋯ (α+k−1))        → Γ(α)
//! √π k^α ∏ (j+½) / ∏ (j+½+α)               → Γ(α + ½)
//! ```
//!
//! together with their integer-ratio form for rational `α`, the Wallis
//! product for `π/2` and the finite-`k` duplication identity. Around them sit
//! an independent gamma oracle ([`reference`]), sequence acceleration
//! ([`accel`]) and a Monte Carlo reproduction of the chi-squared moment limit
//! that drives the whole construction ([`stochastic`]).
//!
//! ```
//! use wallis_gamma::product::{partial_product_even, Alpha};
//!
//! let p = partial_product_even(Alpha::new(0.5)?, 4096)?;
//! assert!((p.value() - std::f64::consts::PI.sqrt()).abs() < 1e-4);
//! # Ok::<(), wallis_gamma::Error>(())
//! ```

pub mod accel;
pub mod cli;
mod error;
pub mod product;
pub mod reference;
pub mod stochastic;
pub mod sum;
pub mod table;

pub use error::{Error, Result};

// The guide's code listings compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/products.md")]
    pub struct Products;
    #[doc = include_str!("../../../book/src/exact.md")]
    pub struct Exact;
    #[doc = include_str!("../../../book/src/reference.md")]
    pub struct Reference;
    #[doc = include_str!("../../../book/src/acceleration.md")]
    pub struct Acceleration;
    #[doc = include_str!("../../../book/src/monte-carlo.md")]
    pub struct MonteCarlo;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
