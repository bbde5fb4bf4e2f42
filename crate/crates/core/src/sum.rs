//! Compensated summation.

use std::iter::FromIterator;
use std::ops::AddAssign;

/// Kahan–Babuška (Neumaier) running sum.
///
/// Carries a second word with the low-order bits lost by each addition, so a
/// long sum of small logarithms stays accurate to a few ulps of the total
/// instead of drifting by O(n) ulps.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn beats_naive_summation() {
        let naive: f64 = (0..1_000_000).map(|_| 0.1).sum();
        let s: NeumaierSum = (0..1_000_000).map(|_| 0.1).collect();
        assert!((s.value() - 100_000.0).abs() < (naive - 100_000.0).abs());
        assert!((s.value() - 100_000.0).abs() < 1e-9);
    }
}
