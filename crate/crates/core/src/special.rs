//! Log-gamma, digamma and gamma-ratio kernels.
//!
//! Arguments below 10 are moved into `[0.5, 2.5]` (where a Taylor series in
//! `ζ(k) − 1` keeps relative accuracy across the roots of `ln Γ` at 1 and 2)
//! or shifted above 10, where the Stirling series with eight Bernoulli
//! corrections is accurate to a few ulps.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B_2, B_4, ..., B_18.
const BERNOULLI: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];

const STIRLING_MIN: f64 = 10.0;
const ZETA_TERMS: usize = 40;

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        Err(Error::Domain(format!("{what} requires a positive argument, got {x}")))
    } else {
        Ok(())
    }
}

/// `ζ(k) − 1` for `k = 2..=ZETA_TERMS+1`, by Euler–Maclaurin summation.
fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        const N: f64 = 16.0;
        let mut table = [0.0; ZETA_TERMS];
        for (i, slot) in table.iter_mut().enumerate() {
            let k = (i + 2) as f64;
            let mut sum = 0.0;
            for j in (2..16).rev() {
                sum += (j as f64).powf(-k);
            }
            sum += N.powf(1.0 - k) / (k - 1.0) + 0.5 * N.powf(-k);
            // Bernoulli tail: B_2m/(2m)! * k(k+1)...(k+2m-2) * N^(-k-2m+1)
            let mut rising = k;
            let mut factorial = 2.0;
            for m in 1..=6usize {
                let b = BERNOULLI[m - 1];
                sum += b / factorial * rising * N.powf(-k - 2.0 * m as f64 + 1.0);
                rising *= (k + 2.0 * m as f64 - 1.0) * (k + 2.0 * m as f64);
                factorial *= (2 * m + 1) as f64 * (2 * m + 2) as f64;
            }
            *slot = sum;
        }
        table
    })
}

/// `Σ_{k≥2} (−1)^k (ζ(k) − 1) z^k / k`, valid for `|z| ≤ 1/2`.
fn zeta_series(z: f64) -> f64 {
    let table = zeta_minus_one();
    let mut acc = 0.0;
    // Horner from the top.
    for (i, zm1) in table.iter().enumerate().rev() {
        let k = (i + 2) as f64;
        let sign = if (i + 2) % 2 == 0 { 1.0 } else { -1.0 };
        acc = acc * z + sign * zm1 / k;
    }
    acc * z * z
}

/// Stirling remainder `ln Γ(x) − [(x − ½) ln x − x + ½ ln 2π]` for `x ≥ 10`.
pub(crate) fn stirling_correction(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for (i, b) in BERNOULLI.iter().enumerate().rev() {
        let k = (i + 1) as f64;
        acc = acc * inv2 + b / (2.0 * k * (2.0 * k - 1.0));
    }
    acc * inv
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // x + 1 lies in (1, 1.5): series around 1.
        let z = x;
        -z.ln_1p() + z * (1.0 - EULER_GAMMA) + zeta_series(z) - x.ln()
    } else if x <= 1.5 {
        let z = x - 1.0;
        -z.ln_1p() + z * (1.0 - EULER_GAMMA) + zeta_series(z)
    } else if x <= 2.5 {
        let z = x - 2.0;
        z * (1.0 - EULER_GAMMA) + zeta_series(z)
    } else if x < STIRLING_MIN {
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        ln_gamma_unchecked(y) + prod.ln()
    } else {
        (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_correction(x)
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive(x, "log_gamma")?;
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(ln_gamma_unchecked(x))
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive(x, "digamma")?;
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < STIRLING_MIN {
        shift -= 1.0 / y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for (i, b) in BERNOULLI.iter().enumerate().rev() {
        let k = (i + 1) as f64;
        acc = acc * inv2 + b / (2.0 * k);
    }
    Ok(shift + y.ln() - 0.5 * inv - acc * inv2)
}

/// `ln Γ(a) − ln Γ(b)`, stable when both arguments are large and close.
pub fn log_gamma_ratio(a: f64, b: f64) -> Result<f64> {
    check_positive(a, "log_gamma_ratio")?;
    check_positive(b, "log_gamma_ratio")?;
    if a == b {
        return Ok(0.0);
    }
    if a.min(b) >= STIRLING_MIN && a.is_finite() && b.is_finite() {
        let d = a - b;
        let main = (a - 0.5) * (d / b).ln_1p() + d * (b.ln() - 1.0);
        return Ok(main + stirling_correction(a) - stirling_correction(b));
    }
    Ok(ln_gamma_unchecked(a) - ln_gamma_unchecked(b))
}

/// `ln n!`.
pub fn log_factorial(n: usize) -> f64 {
    ln_gamma_unchecked(n as f64 + 1.0)
}

/// `ln B(a, b)`.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    check_positive(a, "log_beta")?;
    check_positive(b, "log_beta")?;
    // ln Γ(a) + [ln Γ(b) − ln Γ(a + b)] keeps the large-argument pair together.
    if a >= b {
        Ok(ln_gamma_unchecked(b) + log_gamma_ratio(a, a + b)?)
    } else {
        Ok(ln_gamma_unchecked(a) + log_gamma_ratio(b, a + b)?)
    }
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma_unchecked(x)
}

pub(crate) fn ln_gamma_ratio_pos(a: f64, b: f64) -> f64 {
    log_gamma_ratio(a, b).unwrap_or(f64::NAN)
}

/// `π cot(πx)`, used by the reflection checks.
pub fn pi_cot_pi(x: f64) -> f64 {
    PI / (PI * x).tan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_gamma_anchors() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-17);
        assert_relative_eq!(log_gamma(5.0).unwrap(), 24f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(log_gamma(0.5).unwrap(), PI.sqrt().ln(), max_relative = 1e-15);
        assert_relative_eq!(
            log_gamma(1e-6).unwrap(),
            13.815_509_980_749_432,
            max_relative = 1e-14
        );
    }

    #[test]
    fn log_gamma_near_roots_keeps_relative_accuracy() {
        // ln Γ(1 + z) ≈ −γ z and ln Γ(2 + z) ≈ (1 − γ) z for small z.
        for &z in &[1e-10, -1e-9, 1e-6] {
            let lg1 = log_gamma(1.0 + z).unwrap();
            assert_relative_eq!(lg1, -EULER_GAMMA * z, max_relative = 1e-5);
            let lg2 = log_gamma(2.0 + z).unwrap();
            assert_relative_eq!(lg2, (1.0 - EULER_GAMMA) * z, max_relative = 1e-5);
        }
        // Reference value from a 40-digit evaluation.
        assert_relative_eq!(
            log_gamma(1.000_1).unwrap(),
            -5.771_334_222_047_762e-5,
            max_relative = 1e-13
        );
    }

    #[test]
    fn log_gamma_large_arguments() {
        // ln Γ(1e9) = (1e9 − ½) ln 1e9 − 1e9 + ½ ln 2π + 1/(12e9) + ...
        let x = 1e9_f64;
        let expected = (x - 0.5) * x.ln() - x + HALF_LN_2PI + 1.0 / (12.0 * x);
        assert_relative_eq!(log_gamma(x).unwrap(), expected, max_relative = 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(log_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(-1.5), Err(Error::Domain(_))));
        assert!(matches!(digamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(log_gamma_ratio(1.0, -2.0), Err(Error::Domain(_))));
        assert!(matches!(log_gamma_ratio(0.0, 2.0), Err(Error::Domain(_))));
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn digamma_anchors() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-15);
        let half = -EULER_GAMMA - 2.0 * std::f64::consts::LN_2;
        assert!((digamma(0.5).unwrap() - half).abs() < 1e-14);
    }

    #[test]
    fn digamma_large_argument_regime() {
        // ψ(z) = ln z − 1/(2z) − 1/(12 z²) + O(z⁻⁴)
        let z = 1e6_f64;
        let expected = z.ln() - 0.5 / z - 1.0 / (12.0 * z * z);
        assert!((digamma(z).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn log_gamma_ratio_anchors() {
        assert_relative_eq!(log_gamma_ratio(3.0, 2.0).unwrap(), 2f64.ln(), max_relative = 1e-15);
        assert_eq!(log_gamma_ratio(7.25, 7.25).unwrap(), 0.0);
        assert_relative_eq!(
            log_gamma_ratio(1e6 + 1.0, 1e6).unwrap(),
            1e6f64.ln(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            log_gamma_ratio(1e9 + 0.5, 1e9).unwrap(),
            // Γ(x+½)/Γ(x) ≈ √x (1 − 1/(8x))
            0.5 * 1e9f64.ln() - 1.0 / 8e9,
            max_relative = 1e-13
        );
    }

    #[test]
    fn zeta_table_matches_known_values() {
        let table = zeta_minus_one();
        assert_relative_eq!(table[0], PI * PI / 6.0 - 1.0, max_relative = 1e-14);
        assert_relative_eq!(table[2], PI.powi(4) / 90.0 - 1.0, max_relative = 1e-14);
        assert_relative_eq!(table[1], 0.202_056_903_159_594_3, max_relative = 1e-14);
    }

    #[test]
    fn log_beta_matches_direct() {
        let direct = log_gamma(2.5).unwrap() + log_gamma(3.0).unwrap() - log_gamma(5.5).unwrap();
        assert_relative_eq!(log_beta(2.5, 3.0).unwrap(), direct, max_relative = 1e-14);
        assert_relative_eq!(log_beta(0.5, 1.0).unwrap(), 2f64.ln(), max_relative = 1e-14);
    }
}
