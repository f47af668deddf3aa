//! The four classical families: weights, supports, normalization constants,
//! orthonormal recurrences, Rakhmanov log-densities and zeros.
//!
//! Evaluation runs the orthonormal three-term recurrence for the polynomials
//! `q_k = p̂_k · √κ₀`, which are orthonormal with respect to the unit-mass
//! weight `h/κ₀`. Values are carried with a separate log-scale so that degrees
//! in the thousands and parameters around 10⁶ never overflow.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{
    ln_gamma_pos, ln_gamma_ratio_pos, log_factorial, log_gamma, stirling_correction,
};
use crate::tridiag::symmetric_tridiagonal_eigen;

const HALF_LN_PI: f64 = 0.572_364_942_924_700_1;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const RESCALE_HIGH: f64 = 1e150;
const RESCALE_LOW: f64 = 1e-150;

/// Which classical family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Hermite,
    Laguerre,
    Jacobi,
    Gegenbauer,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Hermite => "hermite",
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Jacobi => "jacobi",
            FamilyKind::Gegenbauer => "gegenbauer",
        }
    }
}

/// A classical family together with its weight parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum PolynomialFamily {
    /// Weight `e^{−x²}` on ℝ.
    Hermite,
    /// Weight `x^α e^{−x}` on (0, ∞), α > −1.
    Laguerre { alpha: f64 },
    /// Weight `(1−x)^α (1+x)^β` on (−1, 1), α, β > −1.
    Jacobi { alpha: f64, beta: f64 },
    /// Weight `(1−x²)^{λ−1/2}` on (−1, 1), λ > −1/2, λ ≠ 0.
    Gegenbauer { lambda: f64 },
}

/// Open interval of orthogonality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains_open(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }

    pub fn is_finite(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }
}

/// A point of the support together with its distances to both ends.
///
/// Near a finite end the rounded `x` cannot resolve `1 ∓ x`; integrators that
/// know the distance exactly pass it here so weights stay accurate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportPoint {
    pub x: f64,
    /// `x − lower` (∞ for an infinite lower end).
    pub from_lower: f64,
    /// `upper − x` (∞ for an infinite upper end).
    pub from_upper: f64,
}

impl SupportPoint {
    /// Distances computed directly from `x`.
    pub fn new(support: &Interval, x: f64) -> Self {
        SupportPoint {
            x,
            from_lower: x - support.lower,
            from_upper: support.upper - x,
        }
    }
}

/// `(sign, ln|v|)` representation of a real that may not fit in an `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub sign: f64,
    pub ln_abs: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        sign: 0.0,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn from_scaled(value: f64, log_scale: f64) -> Self {
        if value == 0.0 {
            Self::ZERO
        } else {
            SignedLog {
                sign: value.signum(),
                ln_abs: value.abs().ln() + log_scale,
            }
        }
    }

    /// Plain value; over/underflows to ±∞ or 0 when not representable.
    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }
}

impl PolynomialFamily {
    pub fn kind(&self) -> FamilyKind {
        match self {
            PolynomialFamily::Hermite => FamilyKind::Hermite,
            PolynomialFamily::Laguerre { .. } => FamilyKind::Laguerre,
            PolynomialFamily::Jacobi { .. } => FamilyKind::Jacobi,
            PolynomialFamily::Gegenbauer { .. } => FamilyKind::Gegenbauer,
        }
    }

    /// First weight parameter (α for Laguerre/Jacobi, λ for Gegenbauer).
    pub fn param(&self) -> Option<f64> {
        match *self {
            PolynomialFamily::Hermite => None,
            PolynomialFamily::Laguerre { alpha } => Some(alpha),
            PolynomialFamily::Jacobi { alpha, .. } => Some(alpha),
            PolynomialFamily::Gegenbauer { lambda } => Some(lambda),
        }
    }

    /// Second weight parameter (β, Jacobi only).
    pub fn param2(&self) -> Option<f64> {
        match *self {
            PolynomialFamily::Jacobi { beta, .. } => Some(beta),
            _ => None,
        }
    }

    /// Check the parameter constraints of the family.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match *self {
            PolynomialFamily::Hermite => Ok(()),
            PolynomialFamily::Laguerre { alpha } => {
                if alpha.is_finite() && alpha > -1.0 {
                    Ok(())
                } else {
                    bad(format!("laguerre requires alpha > -1, got {alpha}"))
                }
            }
            PolynomialFamily::Jacobi { alpha, beta } => {
                if alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0 {
                    Ok(())
                } else {
                    bad(format!(
                        "jacobi requires alpha, beta > -1, got ({alpha}, {beta})"
                    ))
                }
            }
            PolynomialFamily::Gegenbauer { lambda } => {
                if lambda.is_finite() && lambda > -0.5 && lambda != 0.0 {
                    Ok(())
                } else {
                    bad(format!(
                        "gegenbauer requires lambda > -1/2 and lambda != 0, got {lambda}"
                    ))
                }
            }
        }
    }

    pub fn support(&self) -> Interval {
        match self {
            PolynomialFamily::Hermite => Interval {
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
            },
            PolynomialFamily::Laguerre { .. } => Interval {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            PolynomialFamily::Jacobi { .. } | PolynomialFamily::Gegenbauer { .. } => Interval {
                lower: -1.0,
                upper: 1.0,
            },
        }
    }

    /// `true` when the weight is even about the origin.
    pub fn is_symmetric(&self) -> bool {
        match *self {
            PolynomialFamily::Hermite | PolynomialFamily::Gegenbauer { .. } => true,
            PolynomialFamily::Jacobi { alpha, beta } => alpha == beta,
            PolynomialFamily::Laguerre { .. } => false,
        }
    }
}

/// Orthonormal recurrence entries `(a_k, b_k)` with
/// `x p̂_k = b_k p̂_{k−1} + a_k p̂_k + b_{k+1} p̂_{k+1}`; `b_0 = 0`.
pub fn recurrence_coefficients(family: &PolynomialFamily, k: usize) -> Result<(f64, f64)> {
    family.validate()?;
    Ok((diag_coefficient(family, k), offdiag_coefficient(family, k)))
}

fn diag_coefficient(family: &PolynomialFamily, k: usize) -> f64 {
    let kf = k as f64;
    match *family {
        PolynomialFamily::Hermite | PolynomialFamily::Gegenbauer { .. } => 0.0,
        PolynomialFamily::Laguerre { alpha } => 2.0 * kf + alpha + 1.0,
        PolynomialFamily::Jacobi { alpha, beta } => {
            if alpha == beta {
                0.0
            } else if k == 0 {
                (beta - alpha) / (alpha + beta + 2.0)
            } else {
                let s = 2.0 * kf + alpha + beta;
                (beta - alpha) * (beta + alpha) / (s * (s + 2.0))
            }
        }
    }
}

fn offdiag_coefficient(family: &PolynomialFamily, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let kf = k as f64;
    match *family {
        PolynomialFamily::Hermite => (0.5 * kf).sqrt(),
        PolynomialFamily::Laguerre { alpha } => (kf * (kf + alpha)).sqrt(),
        PolynomialFamily::Jacobi { alpha, beta } => {
            let ab = alpha + beta;
            let b2 = if k == 1 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                let s = 2.0 * kf + ab;
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                    / (s * s * (s + 1.0) * (s - 1.0))
            };
            b2.sqrt()
        }
        PolynomialFamily::Gegenbauer { lambda } => {
            let b2 = if k == 1 {
                1.0 / (2.0 * (1.0 + lambda))
            } else {
                kf * (kf + 2.0 * lambda - 1.0) / (4.0 * (kf + lambda) * (kf + lambda - 1.0))
            };
            b2.sqrt()
        }
    }
}

/// `ln h(x)` for `x` strictly inside the support.
pub fn log_weight(family: &PolynomialFamily, x: f64) -> Result<f64> {
    family.validate()?;
    if !family.support().contains_open(x) {
        return Err(Error::Domain(format!(
            "x = {x} is outside the open support of the {} weight",
            family.kind().name()
        )));
    }
    Ok(log_weight_unchecked(family, x))
}

pub(crate) fn log_weight_unchecked(family: &PolynomialFamily, x: f64) -> f64 {
    log_weight_at(family, &SupportPoint::new(&family.support(), x))
}

/// `ln h` at a located point; on (−1, 1) `from_upper = 1 − x`, `from_lower = 1 + x`.
pub(crate) fn log_weight_at(family: &PolynomialFamily, p: &SupportPoint) -> f64 {
    let x = p.x;
    match *family {
        PolynomialFamily::Hermite => -x * x,
        PolynomialFamily::Laguerre { alpha } => {
            if alpha == 0.0 {
                -x
            } else {
                alpha * x.ln() - x
            }
        }
        PolynomialFamily::Jacobi { alpha, beta } => {
            let mut v = 0.0;
            if alpha != 0.0 {
                v += alpha * p.from_upper.ln();
            }
            if beta != 0.0 {
                v += beta * p.from_lower.ln();
            }
            v
        }
        PolynomialFamily::Gegenbauer { lambda } => {
            let e = lambda - 0.5;
            if e == 0.0 {
                0.0
            } else {
                e * (p.from_upper.ln() + p.from_lower.ln())
            }
        }
    }
}

/// `(ln h)'`, used by the Fisher integrand.
pub(crate) fn log_weight_derivative(family: &PolynomialFamily, p: &SupportPoint) -> f64 {
    let x = p.x;
    match *family {
        PolynomialFamily::Hermite => -2.0 * x,
        PolynomialFamily::Laguerre { alpha } => alpha / x - 1.0,
        PolynomialFamily::Jacobi { alpha, beta } => -alpha / p.from_upper + beta / p.from_lower,
        PolynomialFamily::Gegenbauer { lambda } => {
            -(2.0 * lambda - 1.0) * x / (p.from_upper * p.from_lower)
        }
    }
}

/// `ln κ_n`, the squared norm of the standard (non-normalized) polynomial.
pub fn log_norm_kappa(family: &PolynomialFamily, n: usize) -> Result<f64> {
    family.validate()?;
    Ok(log_kappa_unchecked(family, n))
}

fn log_kappa_unchecked(family: &PolynomialFamily, n: usize) -> f64 {
    let nf = n as f64;
    match *family {
        PolynomialFamily::Hermite => HALF_LN_PI + log_factorial(n) + nf * LN_2,
        PolynomialFamily::Laguerre { alpha } => ln_gamma_pos(nf + alpha + 1.0) - log_factorial(n),
        PolynomialFamily::Jacobi { alpha, beta } => {
            if n == 0 {
                jacobi_log_mass(alpha, beta)
            } else {
                let ab = alpha + beta;
                (ab + 1.0) * LN_2 + ln_gamma_pos(alpha + nf + 1.0)
                    + ln_gamma_ratio_pos(beta + nf + 1.0, ab + nf + 1.0)
                    - log_factorial(n)
                    - (ab + 2.0 * nf + 1.0).ln()
            }
        }
        PolynomialFamily::Gegenbauer { lambda } => {
            // √π Γ(λ+½) (2λ)_n / (Γ(λ) (n+λ) n!), with |Γ(λ)| = Γ(λ+1)/|λ|.
            let base = HALF_LN_PI + ln_gamma_ratio_pos(lambda + 0.5, lambda + 1.0);
            if n == 0 {
                base
            } else {
                base + (2.0 * lambda).abs().ln()
                    + ln_gamma_ratio_pos(nf + 2.0 * lambda, 2.0 * lambda + 1.0)
                    + lambda.abs().ln()
                    - (nf + lambda).ln()
                    - log_factorial(n)
            }
        }
    }
}

/// `ln ∫ (1−x)^α (1+x)^β dx`.
pub(crate) fn jacobi_log_mass(alpha: f64, beta: f64) -> f64 {
    if alpha == beta {
        // Duplication formula keeps this stable for large parameters.
        HALF_LN_PI + ln_gamma_ratio_pos(alpha + 1.0, alpha + 1.5)
    } else {
        (alpha + beta + 1.0) * LN_2 + ln_gamma_pos(alpha + 1.0)
            + ln_gamma_ratio_pos(beta + 1.0, alpha + beta + 2.0)
    }
}

/// `ln(h(x)/κ₀)`: log of the unit-mass weight, without cancellation for large α.
pub(crate) fn log_unit_weight(family: &PolynomialFamily, p: &SupportPoint) -> f64 {
    let x = p.x;
    if let PolynomialFamily::Laguerre { alpha } = *family {
        if alpha >= 10.0 {
            let t = (x - alpha) / alpha;
            return alpha * (t.ln_1p() - t) - 0.5 * alpha.ln() - HALF_LN_2PI
                - stirling_correction(alpha);
        }
    }
    log_weight_at(family, p) - log_kappa_unchecked(family, 0)
}

/// Value and derivative of `q_n = p̂_n √κ₀`, both equal to the stored number
/// times `e^{log_scale}`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledEval {
    pub value: f64,
    pub derivative: f64,
    pub log_scale: f64,
}

/// Cached recurrence coefficients for repeated evaluation at fixed degree.
#[derive(Debug, Clone)]
pub struct Evaluator {
    family: PolynomialFamily,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    inv_b: Vec<f64>,
    log_kappa0: f64,
}

impl Evaluator {
    pub fn new(family: &PolynomialFamily, n: usize) -> Result<Self> {
        family.validate()?;
        let a: Vec<f64> = (0..=n).map(|k| diag_coefficient(family, k)).collect();
        let b: Vec<f64> = (0..=n).map(|k| offdiag_coefficient(family, k)).collect();
        let inv_b = b.iter().map(|&v| if v == 0.0 { 0.0 } else { 1.0 / v }).collect();
        Ok(Evaluator {
            family: *family,
            n,
            a,
            b,
            inv_b,
            log_kappa0: log_kappa_unchecked(family, 0),
        })
    }

    pub fn family(&self) -> &PolynomialFamily {
        &self.family
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Diagonal and off-diagonal of the `m × m` Jacobi matrix (`m ≤ n`).
    pub fn jacobi_matrix(&self, m: usize) -> (Vec<f64>, Vec<f64>) {
        (self.a[..m].to_vec(), self.b[1..m.max(1)].to_vec())
    }

    /// `ln κ₀`, the total mass of the weight.
    pub fn log_mass(&self) -> f64 {
        self.log_kappa0
    }

    /// `q_n(x)` and `q_n'(x)` by the forward recurrence.
    pub fn eval(&self, x: f64) -> ScaledEval {
        let (mut p_prev, mut p) = (0.0, 1.0);
        let (mut d_prev, mut d) = (0.0, 0.0);
        let mut log_scale = 0.0;
        for k in 0..self.n {
            let t = x - self.a[k];
            let bk = self.b[k];
            let ib = self.inv_b[k + 1];
            let p_next = (t * p - bk * p_prev) * ib;
            let d_next = (p + t * d - bk * d_prev) * ib;
            p_prev = p;
            p = p_next;
            d_prev = d;
            d = d_next;
            let m = p.abs().max(d.abs());
            if m > RESCALE_HIGH || (m < RESCALE_LOW && m > 0.0) {
                let inv = 1.0 / m;
                p *= inv;
                d *= inv;
                p_prev *= inv;
                d_prev *= inv;
                log_scale += m.ln();
            }
        }
        ScaledEval {
            value: p,
            derivative: d,
            log_scale,
        }
    }

    /// `q_0(x), …, q_n(x)` in signed-log form.
    pub fn eval_all(&self, x: f64) -> Vec<SignedLog> {
        let mut out = Vec::with_capacity(self.n + 1);
        out.push(SignedLog::from_scaled(1.0, 0.0));
        let (mut p_prev, mut p) = (0.0, 1.0);
        let mut log_scale = 0.0;
        for k in 0..self.n {
            let p_next = ((x - self.a[k]) * p - self.b[k] * p_prev) * self.inv_b[k + 1];
            p_prev = p;
            p = p_next;
            let m = p.abs();
            if m > RESCALE_HIGH || (m < RESCALE_LOW && m > 0.0) {
                p /= m;
                p_prev /= m;
                log_scale += m.ln();
            }
            out.push(SignedLog::from_scaled(p, log_scale));
        }
        out
    }

    /// `ln Σ_{k<m} q_k(x)²` for `m ≤ n + 1`; its negative is the Christoffel
    /// weight of the unit-mass `m`-point Gauss rule at a node `x`.
    pub fn log_christoffel_sum(&self, x: f64, m: usize) -> f64 {
        let m = m.min(self.n + 1);
        let (mut p_prev, mut p) = (0.0, 1.0);
        let mut sum = 1.0;
        let mut log_scale = 0.0;
        for k in 0..m.saturating_sub(1) {
            let p_next = ((x - self.a[k]) * p - self.b[k] * p_prev) * self.inv_b[k + 1];
            p_prev = p;
            p = p_next;
            sum += p * p;
            let mag = p.abs().max(sum.sqrt());
            if mag > RESCALE_HIGH || (mag < RESCALE_LOW && mag > 0.0) {
                p /= mag;
                p_prev /= mag;
                sum /= mag * mag;
                log_scale += mag.ln();
            }
        }
        sum.ln() + 2.0 * log_scale
    }

    /// `ln ρ_n(x) = 2 ln|p̂_n(x)| + ln h(x)`, `−∞` at zeros of `p̂_n`.
    pub fn log_density(&self, x: f64) -> f64 {
        let e = self.eval(x);
        log_density_from(&self.family, &e, &SupportPoint::new(&self.family.support(), x))
    }

    /// Zeros of `q_n`, ascending, from the Jacobi-matrix eigenvalues with a
    /// guarded Newton polish.
    pub fn zeros(&self) -> Result<Vec<f64>> {
        let (d, e) = self.jacobi_matrix(self.n);
        let mut z = symmetric_tridiagonal_eigen(&d, &e, false)?.eigenvalues;
        let support = self.family.support();
        let k = z.len();
        for i in 0..k {
            let lo_gap = if i > 0 { z[i] - z[i - 1] } else { f64::INFINITY };
            let hi_gap = if i + 1 < k { z[i + 1] - z[i] } else { f64::INFINITY };
            let gap = lo_gap.min(hi_gap);
            let mut x = z[i];
            for _ in 0..3 {
                let ev = self.eval(x);
                if ev.derivative == 0.0 {
                    break;
                }
                let step = ev.value / ev.derivative;
                if !step.is_finite() || step.abs() > 0.1 * gap {
                    break;
                }
                let next = x - step;
                if !support.contains_open(next) {
                    break;
                }
                x = next;
                if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                    break;
                }
            }
            z[i] = x;
        }
        if self.family.is_symmetric() {
            // Enforce exact antisymmetry of the spectrum.
            for i in 0..k / 2 {
                let m = 0.5 * (z[k - 1 - i] - z[i]);
                z[i] = -m;
                z[k - 1 - i] = m;
            }
            if k % 2 == 1 {
                z[k / 2] = 0.0;
            }
        }
        Ok(z)
    }
}

pub(crate) fn log_density_from(family: &PolynomialFamily, e: &ScaledEval, p: &SupportPoint) -> f64 {
    if e.value == 0.0 {
        return f64::NEG_INFINITY;
    }
    2.0 * (e.value.abs().ln() + e.log_scale) + log_unit_weight(family, p)
}

/// Sign of the leading coefficient of the standard polynomial `p_n`.
///
/// The recurrence produces polynomials with positive leading coefficient;
/// the standard Laguerre `L_n^{(α)}` alternates, and `C_n^{(λ)}` with λ < 0
/// is negative for every n ≥ 1.
pub fn standard_sign(family: &PolynomialFamily, n: usize) -> f64 {
    match *family {
        PolynomialFamily::Laguerre { .. } if n % 2 == 1 => -1.0,
        PolynomialFamily::Gegenbauer { lambda } if lambda < 0.0 && n >= 1 => -1.0,
        _ => 1.0,
    }
}

/// `p̂_0(x), …, p̂_n(x)` in signed-log form.
pub fn eval_orthonormal(family: &PolynomialFamily, n: usize, x: f64) -> Result<Vec<SignedLog>> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }
    let ev = Evaluator::new(family, n)?;
    let shift = -0.5 * ev.log_kappa0;
    Ok(ev
        .eval_all(x)
        .into_iter()
        .enumerate()
        .map(|(k, v)| SignedLog {
            sign: v.sign * standard_sign(family, k),
            ln_abs: v.ln_abs + shift,
        })
        .collect())
}

/// `d/dx p̂_n(x)`.
pub fn eval_derivative(family: &PolynomialFamily, n: usize, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }
    let ev = Evaluator::new(family, n)?;
    let e = ev.eval(x);
    let d = SignedLog::from_scaled(e.derivative, e.log_scale - 0.5 * ev.log_kappa0).value();
    Ok(standard_sign(family, n) * d)
}

/// `ln ρ_n(x)` for `x` inside the open support.
pub fn log_rakhmanov_density(family: &PolynomialFamily, n: usize, x: f64) -> Result<f64> {
    family.validate()?;
    if !family.support().contains_open(x) {
        return Err(Error::Domain(format!(
            "x = {x} is outside the open support of the {} weight",
            family.kind().name()
        )));
    }
    Ok(Evaluator::new(family, n)?.log_density(x))
}

/// One evaluated point of the Rakhmanov density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RakhmanovDensityPoint {
    pub x: f64,
    pub log_density: f64,
    pub density: f64,
}

pub fn rakhmanov_density_point(
    family: &PolynomialFamily,
    n: usize,
    x: f64,
) -> Result<RakhmanovDensityPoint> {
    let log_density = log_rakhmanov_density(family, n, x)?;
    Ok(RakhmanovDensityPoint {
        x,
        log_density,
        density: log_density.exp(),
    })
}

/// The `n` zeros of `p̂_n`, ascending.
pub fn zeros(family: &PolynomialFamily, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidInput("zeros requires n >= 1".into()));
    }
    Evaluator::new(family, n)?.zeros()
}

/// Gegenbauer polynomial expressed through the Jacobi family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerJacobi {
    /// Jacobi family with `α = β = λ − 1/2`.
    pub jacobi: PolynomialFamily,
    /// `ln |c_{n,λ}|` in `C_n^{(λ)} = c_{n,λ} P_n^{(λ−1/2, λ−1/2)}`.
    pub log_factor: f64,
    /// Sign of `c_{n,λ}` (negative only for λ < 0, n ≥ 1).
    pub sign: f64,
}

pub fn gegenbauer_to_jacobi(n: usize, lambda: f64) -> Result<GegenbauerJacobi> {
    PolynomialFamily::Gegenbauer { lambda }.validate()?;
    let nf = n as f64;
    let jacobi = PolynomialFamily::Jacobi {
        alpha: lambda - 0.5,
        beta: lambda - 0.5,
    };
    if n == 0 {
        return Ok(GegenbauerJacobi {
            jacobi,
            log_factor: 0.0,
            sign: 1.0,
        });
    }
    // Γ(n+2λ)/Γ(2λ) = (2λ)_n = 2λ Γ(n+2λ)/Γ(2λ+1).
    let log_factor = log_gamma(lambda + 0.5)? + (2.0 * lambda).abs().ln()
        + ln_gamma_ratio_pos(nf + 2.0 * lambda, 2.0 * lambda + 1.0)
        - log_gamma(nf + lambda + 0.5)?;
    Ok(GegenbauerJacobi {
        jacobi,
        log_factor,
        sign: lambda.signum(),
    })
}

/// `ln C_n^{(λ)}(1) = ln Γ(n+2λ) − ln Γ(2λ) − ln n!` (λ > 0).
pub(crate) fn log_gegenbauer_at_one(n: usize, lambda: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    (2.0 * lambda).ln() + ln_gamma_ratio_pos(nf + 2.0 * lambda, 2.0 * lambda + 1.0)
        - log_factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    fn lag(alpha: f64) -> PolynomialFamily {
        PolynomialFamily::Laguerre { alpha }
    }

    fn geg(lambda: f64) -> PolynomialFamily {
        PolynomialFamily::Gegenbauer { lambda }
    }

    fn value(f: &PolynomialFamily, n: usize, x: f64) -> f64 {
        eval_orthonormal(f, n, x).unwrap()[n].value()
    }

    #[test]
    fn validation() {
        assert!(lag(-1.0).validate().is_err());
        assert!(lag(-0.99).validate().is_ok());
        assert!(geg(0.0).validate().is_err());
        assert!(geg(-0.5).validate().is_err());
        assert!(geg(-0.25).validate().is_ok());
        assert!(PolynomialFamily::Jacobi { alpha: 0.0, beta: -1.0 }.validate().is_err());
        assert!(recurrence_coefficients(&geg(0.0), 0).is_err());
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(recurrence_coefficients(&lag(0.0), 0).unwrap().0, 1.0);
        assert_eq!(recurrence_coefficients(&PolynomialFamily::Hermite, 0).unwrap().0, 0.0);
        assert_eq!(recurrence_coefficients(&geg(1.0), 0).unwrap().0, 0.0);
        // Jacobi reduces to Gegenbauer for α = β = λ − 1/2.
        for k in 1..6 {
            let (_, bj) = recurrence_coefficients(
                &PolynomialFamily::Jacobi { alpha: 0.7, beta: 0.7 },
                k,
            )
            .unwrap();
            let (_, bg) = recurrence_coefficients(&geg(1.2), k).unwrap();
            assert_relative_eq!(bj, bg, max_relative = 1e-14);
        }
    }

    #[test]
    fn orthonormal_value_examples() {
        assert_relative_eq!(value(&lag(0.0), 1, 0.0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            value(&geg(1.0), 1, 1.0),
            2.0 * (2.0 / PI).sqrt(),
            max_relative = 1e-14
        );
        for f in [PolynomialFamily::Hermite, lag(2.5), geg(0.3)] {
            let k0 = log_norm_kappa(&f, 0).unwrap();
            for x in [-0.5, 0.2, 0.9] {
                assert_relative_eq!(value(&f, 0, x), (-0.5 * k0).exp(), max_relative = 1e-15);
            }
        }
    }

    #[test]
    fn orthonormal_matches_explicit_polynomials() {
        // L_2^{(α)}(x) = ((x² − 2(α+2)x + (α+1)(α+2))/2), κ_2 = Γ(α+3)/2.
        let alpha = 1.5;
        let x = 0.7;
        let l2 = 0.5 * (x * x - 2.0 * (alpha + 2.0) * x + (alpha + 1.0) * (alpha + 2.0));
        let k2 = log_norm_kappa(&lag(alpha), 2).unwrap().exp();
        assert_relative_eq!(value(&lag(alpha), 2, x), l2 / k2.sqrt(), max_relative = 1e-13);
        // H_3 = 8x³ − 12x, κ_3 = √π 3! 2³.
        let h3 = 8.0 * x * x * x - 12.0 * x;
        let k3 = PI.sqrt() * 48.0;
        assert_relative_eq!(
            value(&PolynomialFamily::Hermite, 3, x),
            h3 / k3.sqrt(),
            max_relative = 1e-13
        );
        // P_1^{(α,β)} = (α+1) + (α+β+2)(x−1)/2.
        let (a, b) = (0.3, 1.8);
        let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
        let fam = PolynomialFamily::Jacobi { alpha: a, beta: b };
        let k1 = log_norm_kappa(&fam, 1).unwrap().exp();
        assert_relative_eq!(value(&fam, 1, x), p1 / k1.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn derivative_examples() {
        for x in [0.0, 1.3, 7.0] {
            assert_relative_eq!(
                eval_derivative(&lag(0.0), 1, x).unwrap(),
                -1.0,
                max_relative = 1e-14
            );
        }
        assert_eq!(eval_derivative(&PolynomialFamily::Hermite, 0, 0.4).unwrap(), 0.0);
        assert_abs_diff_eq!(eval_derivative(&geg(1.0), 2, 0.0).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let cases = [
            (PolynomialFamily::Hermite, 9, 0.37),
            (lag(2.0), 6, 3.1),
            (geg(1.7), 7, 0.41),
            (PolynomialFamily::Jacobi { alpha: -0.4, beta: 2.2 }, 5, -0.23),
        ];
        for (f, n, x) in cases {
            let h = 1e-6;
            let fd = (value(&f, n, x + h) - value(&f, n, x - h)) / (2.0 * h);
            let d = eval_derivative(&f, n, x).unwrap();
            assert_relative_eq!(d, fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn log_weight_examples() {
        assert_eq!(log_weight(&lag(0.0), 3.0).unwrap(), -3.0);
        assert_eq!(log_weight(&geg(0.5), 0.3).unwrap(), 0.0);
        assert_eq!(log_weight(&PolynomialFamily::Hermite, 2.0).unwrap(), -4.0);
        assert!(log_weight(&lag(0.0), -1.0).is_err());
        assert!(log_weight(&geg(1.0), 1.0).is_err());
    }

    #[test]
    fn kappa_examples() {
        assert_abs_diff_eq!(log_norm_kappa(&lag(0.0), 2).unwrap(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(log_norm_kappa(&geg(0.5), 0).unwrap(), LN_2, max_relative = 1e-15);
        assert_relative_eq!(
            log_norm_kappa(&PolynomialFamily::Hermite, 0).unwrap(),
            HALF_LN_PI,
            max_relative = 1e-15
        );
        // Gegenbauer n=1, λ=1: κ = π/2; λ = −1/4 checked against the Jacobi route.
        assert_relative_eq!(
            log_norm_kappa(&geg(1.0), 1).unwrap(),
            (PI / 2.0).ln(),
            max_relative = 1e-14
        );
        // Jacobi κ_n against the α=β formula at n=0.
        let j = PolynomialFamily::Jacobi { alpha: 0.0, beta: 0.0 };
        assert_relative_eq!(log_norm_kappa(&j, 0).unwrap(), LN_2, max_relative = 1e-15);
        assert_relative_eq!(
            log_norm_kappa(&j, 3).unwrap(),
            (2.0f64 / 7.0).ln(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn density_examples() {
        for t in [0.1, 1.7, 30.0] {
            assert_relative_eq!(
                log_rakhmanov_density(&lag(0.0), 0, t).unwrap(),
                -t,
                max_relative = 1e-14
            );
        }
        assert_relative_eq!(
            log_rakhmanov_density(&geg(0.5), 0, 0.3).unwrap(),
            0.5f64.ln(),
            max_relative = 1e-14
        );
        assert_eq!(
            log_rakhmanov_density(&lag(0.0), 1, 1.0).unwrap(),
            f64::NEG_INFINITY
        );
        assert!(log_rakhmanov_density(&lag(0.0), 1, -1.0).is_err());
    }

    #[test]
    fn stabilized_laguerre_weight_matches_direct() {
        let f = lag(37.0);
        for x in [5.0, 37.0, 80.0] {
            let direct = log_weight_unchecked(&f, x) - log_kappa_unchecked(&f, 0);
            assert_relative_eq!(log_unit_weight(&f, &SupportPoint::new(&f.support(), x)), direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn zeros_examples() {
        let z = zeros(&lag(0.0), 2).unwrap();
        assert_relative_eq!(z[0], 2.0 - 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(z[1], 2.0 + 2f64.sqrt(), max_relative = 1e-14);
        let z = zeros(&geg(1.0), 2).unwrap();
        assert_relative_eq!(z[0], -0.5, max_relative = 1e-14);
        assert_relative_eq!(z[1], 0.5, max_relative = 1e-14);
        assert_eq!(zeros(&PolynomialFamily::Hermite, 1).unwrap(), vec![0.0]);
        assert!(zeros(&PolynomialFamily::Hermite, 0).is_err());
    }

    #[test]
    fn zeros_at_large_degree_are_roots() {
        let f = lag(0.0);
        let n = 2000;
        let ev = Evaluator::new(&f, n).unwrap();
        let z = ev.zeros().unwrap();
        assert_eq!(z.len(), n);
        assert!(z[0] > 0.0 && z.windows(2).all(|w| w[0] < w[1]));
        for &x in z.iter().step_by(97) {
            let e = ev.eval(x);
            // |q_n| relative to the local derivative scale times spacing.
            assert!((e.value / e.derivative).abs() <= 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn gegenbauer_jacobi_factor() {
        let g = gegenbauer_to_jacobi(0, 1.0).unwrap();
        assert_eq!(g.log_factor, 0.0);
        let g = gegenbauer_to_jacobi(1, 1.0).unwrap();
        assert_relative_eq!(g.log_factor.exp(), 4.0 / 3.0, max_relative = 1e-14);
        assert!(gegenbauer_to_jacobi(1, 0.0).is_err());
    }

    #[test]
    fn gegenbauer_and_jacobi_routes_agree() {
        for &lambda in &[-0.3, 0.25, 1.0, 2.7, 40.0] {
            let g = geg(lambda);
            let j = gegenbauer_to_jacobi(0, lambda).unwrap().jacobi;
            for n in [0usize, 1, 4, 11] {
                for x in [-0.8, -0.1, 0.33, 0.95] {
                    // Orthonormal identity up to the λ < 0 sign of C_n^{(λ)}.
                    let vg = standard_sign(&g, n) * value(&g, n, x);
                    let vj = value(&j, n, x);
                    assert_relative_eq!(vg, vj, max_relative = 1e-9, epsilon = 1e-300);
                }
            }
        }
    }

    #[test]
    fn standard_gegenbauer_relation() {
        // C_n^{(λ)} = c_{n,λ} P_n^{(λ−½,λ−½)} between the standard polynomials.
        let (n, lambda, x) = (3usize, 1.3, 0.4);
        let g = gegenbauer_to_jacobi(n, lambda).unwrap();
        let cg = value(&geg(lambda), n, x)
            * (0.5 * log_norm_kappa(&geg(lambda), n).unwrap()).exp();
        let pj =
            value(&g.jacobi, n, x) * (0.5 * log_norm_kappa(&g.jacobi, n).unwrap()).exp();
        assert_relative_eq!(cg, g.sign * g.log_factor.exp() * pj, max_relative = 1e-12);
    }

    #[test]
    fn large_degree_uses_log_scale() {
        let v = eval_orthonormal(&PolynomialFamily::Hermite, 3000, 60.0).unwrap();
        assert!(v[3000].ln_abs.is_finite());
        assert!(v[3000].ln_abs > 700.0);
    }
}
