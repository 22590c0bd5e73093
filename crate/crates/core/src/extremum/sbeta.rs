//! `S_β = Σ (aᵢ/(s − aᵢ))^β` and the thresholds attached to it.

use crate::error::{Error, Result};
use crate::num::{pow, Sum};

/// `β_k = (ln k − ln(k−1)) / (ln(k−1) − ln(k−2))` for `k ≥ 3`.
pub fn beta_threshold(k: usize) -> Result<f64> {
    if k < 3 {
        return Err(Error::precondition(format!("β_k is defined for k ≥ 3, got {k}")));
    }
    let k = k as f64;
    Ok((1.0 / (k - 1.0)).ln_1p() / (1.0 / (k - 2.0)).ln_1p())
}

/// Closed-form infimum of `S_β` over positive `a₁, …, a_n`.
pub fn sbeta_infimum(n: usize, beta: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::precondition(format!("need n ≥ 2, got {n}")));
    }
    if !beta.is_finite() {
        return Err(Error::invalid(format!("beta must be finite, got {beta}")));
    }
    let at = |k: usize| k as f64 / pow((k - 1) as f64, beta);
    if n == 2 || beta <= 0.0 {
        return Ok(at(n));
    }
    // β_k increases in k, so the active branch is the largest k with β_k ≤ β
    let mut k = 2;
    while k < n && beta_threshold(k + 1)? <= beta {
        k += 1;
    }
    Ok(if k == 2 { 2.0 } else { at(k) })
}

/// `S_β(a)`; zero coordinates are allowed and evaluated as limits.
pub fn sbeta_value(a: &[f64], beta: f64) -> Result<f64> {
    if a.len() < 2 {
        return Err(Error::precondition("need at least two coordinates"));
    }
    if a.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
        return Err(Error::domain("coordinates must be non-negative and finite"));
    }
    let s: f64 = a.iter().sum();
    let mut acc = Sum::new();
    for &x in a {
        let rest = s - x;
        if rest <= 0.0 {
            return Err(Error::domain("every coordinate must be less than the total"));
        }
        acc.add(pow(x / rest, beta));
    }
    Ok(acc.value())
}

/// `j(α) = 2·log₂(3α) − α − 3`.
pub fn beta0_j(alpha: f64) -> f64 {
    2.0 * (3.0 * alpha).log2() - alpha - 3.0
}

/// `β₀ = 1/α₀` where `α₀` is the root of `j` in `(4/3, 8/3)`.
pub fn beta0_threshold(abs_tol: f64) -> Result<f64> {
    if !(abs_tol > 0.0) {
        return Err(Error::invalid(format!("abs_tol must be positive, got {abs_tol}")));
    }
    let (mut lo, mut hi) = (4.0 / 3.0, 8.0 / 3.0);
    // |d(1/α)/dα| ≤ 9/16 on the bracket
    while (hi - lo) * 9.0 / 16.0 >= abs_tol && hi - lo > f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if beta0_j(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(2.0 / (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn thresholds() {
        assert!((beta_threshold(3).unwrap() - 1.5f64.log2()).abs() < 1e-15);
        assert!((beta_threshold(3).unwrap() - 0.584963).abs() < 1e-6);
        assert!((beta_threshold(4).unwrap() - 0.709511).abs() < 1e-6);
        let mut prev = 0.0;
        for k in 3..=10_000 {
            let b = beta_threshold(k).unwrap();
            assert!(b > prev && b < 1.0, "k = {k}");
            prev = b;
        }
        assert!(1.0 - prev < 1e-3);
        assert!(beta_threshold(2).is_err());
    }

    #[test]
    fn branch_table() {
        assert_relative_eq!(sbeta_infimum(3, 1.0).unwrap(), 1.5);
        assert_eq!(sbeta_infimum(3, 0.3).unwrap(), 2.0);
        assert_relative_eq!(sbeta_infimum(4, 0.7).unwrap(), 3.0 / 2f64.powf(0.7), max_relative = 1e-15);
        assert_relative_eq!(sbeta_infimum(4, -1.0).unwrap(), 12.0);
        assert_eq!(sbeta_infimum(2, 0.3).unwrap(), 2.0);
        assert_eq!(sbeta_infimum(5, 0.0).unwrap(), 5.0);
        assert!(sbeta_infimum(1, 1.0).is_err());
    }

    #[test]
    fn matches_minimum_over_pinned_counts() {
        // on (0, 1) the infimum is min over k of k/(k−1)^β
        for n in 2..=9 {
            for i in 1..200 {
                let beta = i as f64 / 200.0;
                let direct = (2..=n).map(|k| k as f64 / ((k - 1) as f64).powf(beta)).fold(f64::INFINITY, f64::min);
                assert_relative_eq!(sbeta_infimum(n, beta).unwrap(), direct, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn beta0() {
        assert_relative_eq!(beta0_j(4.0 / 3.0), -1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(beta0_j(8.0 / 3.0), 1.0 / 3.0, epsilon = 1e-15);
        let b = beta0_threshold(1e-6).unwrap();
        assert!((b - 0.5887287).abs() < 1e-6);
        assert!(b > 0.5 && b < 1.0);
        let fine = beta0_threshold(1e-14).unwrap();
        assert!(beta0_j(1.0 / fine).abs() < 1e-12);
        assert!(beta0_threshold(0.0).is_err());
    }

    #[test]
    fn values() {
        assert_relative_eq!(sbeta_value(&[1.0, 1.0, 1.0], 1.0).unwrap(), 1.5);
        assert_relative_eq!(sbeta_value(&[0.0, 1.0, 1.0], 0.3).unwrap(), 2.0);
        assert!(sbeta_value(&[0.0, 0.0, 1.0], 1.0).is_err());
    }
}
