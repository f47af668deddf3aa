//! Spreading and complexity measures of the Rakhmanov density `ρ_n = p̂_n² h`.
//!
//! Closed forms are used where they exist (Fisher information, the integral
//! functional `I = −∫ρ ln h`); polynomial integrals (moments, integer-order
//! entropic moments) use exact Gauss rules; everything else goes through
//! [`crate::quadrature::integrate_adaptive`] split at the polynomial zeros.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ortho::{
    log_density_from, log_unit_weight, log_weight_at, log_weight_derivative, zeros, Evaluator,
    FamilyKind, PolynomialFamily, SupportPoint,
};
use crate::quadrature::{
    gauss_rule, integrate_adaptive_located, log_sum_exp, neumaier_sum, shifted_rule_for_entropic_moment,
    AdaptiveOptions,
};
use crate::special::{digamma, log_factorial, log_gamma};

const LN_2PI: f64 = 1.837_877_066_409_345_5;
/// Degree whose zeros are added as extra breakpoints, so that low-degree
/// densities (few or no zeros) are still split across their bulk.
const AUX_BREAKPOINT_DEGREE: usize = 48;
/// Relative size of the cancelling parts of `E + I` beyond which the Shannon
/// functional is integrated directly.
const CANCELLATION_LIMIT: f64 = 1e3;

pub const LAGUERRE_DIVERGENT_REGIME: &str = "alpha in (-1,1], alpha!=0";
pub const GEGENBAUER_DIVERGENT_REGIME: &str = "lambda in (-1/2,3/2], lambda!=1/2";
pub const JACOBI_DIVERGENT_REGIME: &str =
    "(alpha,beta) not in {(0,0)} u {0}x(1,inf) u (1,inf)x{0} u (1,inf)^2";
pub const NUMERIC_DIVERGENT_REGIME: &str = "numerical divergence";

/// Which functional of the density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Fisher,
    Variance,
    ShannonE,
    IntegralI,
    ShannonS,
    ShannonPower,
    RenyiQ,
    EntropicMomentWq,
    CramerRao,
    FisherShannon,
    Lmc,
}

impl Measure {
    pub const ALL: [Measure; 11] = [
        Measure::Fisher,
        Measure::Variance,
        Measure::ShannonE,
        Measure::IntegralI,
        Measure::ShannonS,
        Measure::ShannonPower,
        Measure::RenyiQ,
        Measure::EntropicMomentWq,
        Measure::CramerRao,
        Measure::FisherShannon,
        Measure::Lmc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Fisher => "fisher",
            Measure::Variance => "variance",
            Measure::ShannonE => "shannon_e",
            Measure::IntegralI => "integral_i",
            Measure::ShannonS => "shannon_s",
            Measure::ShannonPower => "shannon_power",
            Measure::RenyiQ => "renyi",
            Measure::EntropicMomentWq => "wq",
            Measure::CramerRao => "cramer_rao",
            Measure::FisherShannon => "fisher_shannon",
            Measure::Lmc => "lmc",
        }
    }

    pub fn parse(s: &str) -> Option<Measure> {
        let s = s.to_ascii_lowercase();
        let m = match s.as_str() {
            "fisher" | "f" => Measure::Fisher,
            "variance" | "v" => Measure::Variance,
            "shannon_e" | "e" => Measure::ShannonE,
            "integral_i" | "i" => Measure::IntegralI,
            "shannon_s" | "s" | "shannon" => Measure::ShannonS,
            "shannon_power" | "ls" | "power" => Measure::ShannonPower,
            "renyi" | "rq" => Measure::RenyiQ,
            "wq" | "entropic_moment" => Measure::EntropicMomentWq,
            "w2" => Measure::EntropicMomentWq,
            "cramer_rao" | "ccr" | "cr" => Measure::CramerRao,
            "fisher_shannon" | "cfs" | "fs" => Measure::FisherShannon,
            "lmc" | "clmc" => Measure::Lmc,
            _ => return None,
        };
        Some(m)
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    ExactQuadrature,
    AdaptiveQuadrature,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::ExactQuadrature => "exact_quadrature",
            Method::AdaptiveQuadrature => "adaptive_quadrature",
        }
    }

    fn combine(self, other: Method) -> Method {
        use Method::*;
        match (self, other) {
            (AdaptiveQuadrature, _) | (_, AdaptiveQuadrature) => AdaptiveQuadrature,
            (ExactQuadrature, _) | (_, ExactQuadrature) => ExactQuadrature,
            _ => ClosedForm,
        }
    }
}

/// A computed measure: finite real or `+∞` (divergent Fisher regimes).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureValue {
    pub measure: Measure,
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
    /// Regime tag for divergent values.
    pub regime: Option<String>,
}

impl MeasureValue {
    fn new(measure: Measure, value: f64, method: Method, error_estimate: f64) -> Self {
        MeasureValue {
            measure,
            value,
            method,
            error_estimate: if method == Method::AdaptiveQuadrature {
                error_estimate.abs()
            } else {
                0.0
            },
            regime: None,
        }
    }

    fn divergent(measure: Measure, method: Method, regime: &str) -> Self {
        MeasureValue {
            measure,
            value: f64::INFINITY,
            method,
            error_estimate: 0.0,
            regime: Some(regime.to_string()),
        }
    }

    pub fn is_divergent(&self) -> bool {
        self.value == f64::INFINITY
    }

    fn relative_error(&self) -> f64 {
        if self.value == 0.0 || !self.value.is_finite() {
            0.0
        } else {
            self.error_estimate / self.value.abs()
        }
    }
}

/// Breakpoints for density integrands: zeros of `p̂_n` and of an auxiliary
/// degree, sorted and deduplicated.
pub fn density_breakpoints(family: &PolynomialFamily, n: usize) -> Result<Vec<f64>> {
    let mut points = zeros(family, AUX_BREAKPOINT_DEGREE)?;
    if n > 0 {
        points.extend(zeros(family, n)?);
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(points)
}

fn adaptive_density_integral(
    family: &PolynomialFamily,
    n: usize,
    opts: &AdaptiveOptions,
    integrand: impl Fn(&Evaluator, &SupportPoint) -> f64 + Sync,
) -> Result<(f64, f64)> {
    let ev = Evaluator::new(family, n)?;
    let breakpoints = density_breakpoints(family, n)?;
    let r = integrate_adaptive_located(
        |p| integrand(&ev, &p),
        &family.support(),
        &breakpoints,
        opts,
    )?;
    Ok((r.value, r.error_estimate))
}

fn divergent_regime(family: &PolynomialFamily) -> &'static str {
    match family.kind() {
        FamilyKind::Laguerre => LAGUERRE_DIVERGENT_REGIME,
        FamilyKind::Gegenbauer => GEGENBAUER_DIVERGENT_REGIME,
        FamilyKind::Jacobi => JACOBI_DIVERGENT_REGIME,
        FamilyKind::Hermite => NUMERIC_DIVERGENT_REGIME,
    }
}

/// Closed-form Fisher information of `ρ_n`.
pub fn fisher_closed(family: &PolynomialFamily, n: usize) -> Result<MeasureValue> {
    family.validate()?;
    let nf = n as f64;
    let finite = |v: f64| Ok(MeasureValue::new(Measure::Fisher, v, Method::ClosedForm, 0.0));
    let infinite = || {
        Ok(MeasureValue::divergent(
            Measure::Fisher,
            Method::ClosedForm,
            divergent_regime(family),
        ))
    };
    match *family {
        PolynomialFamily::Hermite => Err(Error::Unsupported(
            "no closed-form Fisher information for Hermite; use the numeric path".into(),
        )),
        PolynomialFamily::Laguerre { alpha } => {
            if alpha == 0.0 {
                finite(4.0 * nf + 1.0)
            } else if alpha > 1.0 {
                finite(((2.0 * nf + 1.0) * alpha + 1.0) / (alpha * alpha - 1.0))
            } else {
                infinite()
            }
        }
        PolynomialFamily::Gegenbauer { lambda } => {
            if lambda == 0.5 {
                finite(2.0 * nf * (nf + 1.0) * (2.0 * nf + 1.0))
            } else if lambda > 1.5 {
                finite(
                    2.0 * (nf + lambda) * (2.0 * lambda - 1.0)
                        * (1.0 + 2.0 * lambda + 2.0 * nf * (nf + 2.0 * lambda))
                        / ((2.0 * lambda - 3.0) * (1.0 + 2.0 * lambda)),
                )
            } else {
                infinite()
            }
        }
        PolynomialFamily::Jacobi { alpha, beta } => {
            if alpha == 0.0 && beta == 0.0 {
                finite(2.0 * nf * (nf + 1.0) * (2.0 * nf + 1.0))
            } else if alpha == 0.0 && beta > 1.0 {
                finite(jacobi_fisher_one_sided(nf, beta))
            } else if beta == 0.0 && alpha > 1.0 {
                // Mirror image x → −x of the previous branch.
                finite(jacobi_fisher_one_sided(nf, alpha))
            } else if alpha > 1.0 && beta > 1.0 {
                let ab = alpha + beta;
                let t1 = nf * (nf + ab - 1.0)
                    * ((nf + alpha) / (beta + 1.0) + 2.0 + (nf + beta) / (alpha + 1.0));
                let t2 = (nf + 1.0) * (nf + ab)
                    * ((nf + alpha) / (beta - 1.0) + 2.0 + (nf + beta) / (alpha - 1.0));
                finite((2.0 * nf + ab + 1.0) / (4.0 * (nf + ab - 1.0)) * (t1 + t2))
            } else {
                infinite()
            }
        }
    }
}

fn jacobi_fisher_one_sided(nf: f64, beta: f64) -> f64 {
    (2.0 * nf + beta + 1.0) / 4.0
        * (nf * nf / (beta + 1.0)
            + nf
            + (4.0 * nf + 1.0) * (nf + beta + 1.0)
            + (nf + 1.0) * (nf + 1.0) / (beta - 1.0))
}

/// Fisher information `∫ ρ'²/ρ dx` by adaptive quadrature.
///
/// `ρ'²/ρ = (2p̂' + p̂ (ln h)')² h` is finite at interior zeros. Non-convergence
/// (the signature of a divergent integral) is reported as `+∞` with a regime tag.
pub fn fisher_numeric(
    family: &PolynomialFamily,
    n: usize,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    let f = *family;
    let result = adaptive_density_integral(family, n, opts, move |ev, p| {
        let e = ev.eval(p.x);
        let g = 2.0 * e.derivative + e.value * log_weight_derivative(&f, p);
        if g == 0.0 || !g.is_finite() {
            return 0.0;
        }
        (2.0 * (g.abs().ln() + e.log_scale) + log_unit_weight(&f, p)).exp()
    });
    match result {
        Ok((v, err)) => Ok(MeasureValue::new(
            Measure::Fisher,
            v,
            Method::AdaptiveQuadrature,
            err,
        )),
        Err(Error::DivergedOrSlow { .. }) => Ok(MeasureValue::divergent(
            Measure::Fisher,
            Method::AdaptiveQuadrature,
            divergent_regime(family),
        )),
        Err(e) => Err(e),
    }
}

/// Fisher information: closed form where available, numeric otherwise.
pub fn fisher(family: &PolynomialFamily, n: usize, opts: &AdaptiveOptions) -> Result<MeasureValue> {
    match family.kind() {
        FamilyKind::Hermite => fisher_numeric(family, n, opts),
        _ => fisher_closed(family, n),
    }
}

/// `Σ λ_i g(x_i) q_n(x_i)²` over the unit-mass Gauss rule of `order` points,
/// i.e. `∫ g ρ_n dx` for polynomial `g` of degree `≤ 2(order − n) − 1`.
fn exact_density_average(
    family: &PolynomialFamily,
    n: usize,
    order: usize,
    g: impl Fn(f64) -> f64,
) -> Result<f64> {
    let rule = gauss_rule(family, order)?;
    let ev = Evaluator::new(family, n)?;
    Ok(neumaier_sum(rule.nodes.iter().zip(&rule.log_unit_weights).map(
        |(&x, &lw)| {
            let e = ev.eval(x);
            if e.value == 0.0 {
                return 0.0;
            }
            g(x) * (lw + 2.0 * (e.value.abs().ln() + e.log_scale)).exp()
        },
    )))
}

/// `⟨x^k⟩ = ∫ x^k ρ_n dx`, exact.
pub fn moment(family: &PolynomialFamily, n: usize, k: u32) -> Result<MeasureValue> {
    let order = n + (k as usize).div_ceil(2) + 1;
    let v = exact_density_average(family, n, order, |x| x.powi(k as i32))?;
    Ok(MeasureValue::new(Measure::Variance, v, Method::ExactQuadrature, 0.0))
}

/// `V = ⟨x²⟩ − ⟨x⟩²`, evaluated as the central second moment.
pub fn variance(family: &PolynomialFamily, n: usize) -> Result<MeasureValue> {
    let mean = if family.is_symmetric() {
        0.0
    } else {
        exact_density_average(family, n, n + 2, |x| x)?
    };
    let v = exact_density_average(family, n, n + 2, |x| (x - mean) * (x - mean))?;
    Ok(MeasureValue::new(
        Measure::Variance,
        v.max(0.0),
        Method::ExactQuadrature,
        0.0,
    ))
}

/// `ln W_q` from the exact shifted rule.
pub fn log_entropic_moment_exact(family: &PolynomialFamily, n: usize, q: f64) -> Result<f64> {
    let shifted = shifted_rule_for_entropic_moment(family, n, q)?;
    let ev = Evaluator::new(family, n)?;
    let terms: Vec<f64> = shifted
        .rule
        .nodes
        .iter()
        .zip(&shifted.rule.log_unit_weights)
        .map(|(&y, &lw)| {
            let e = ev.eval(y / shifted.scale);
            if e.value == 0.0 {
                f64::NEG_INFINITY
            } else {
                lw + 2.0 * q * (e.value.abs().ln() + e.log_scale)
            }
        })
        .collect();
    Ok(shifted.log_constant + log_sum_exp(&terms))
}

/// `W_q` by adaptive quadrature of `exp(q ln ρ)`.
pub fn entropic_moment_wq_adaptive(
    family: &PolynomialFamily,
    n: usize,
    q: f64,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::InvalidInput(format!("q must be positive, got {q}")));
    }
    let f = *family;
    let (v, err) = adaptive_density_integral(family, n, opts, move |ev, p| {
        let lr = log_density_from(&f, &ev.eval(p.x), p);
        (q * lr).exp()
    })?;
    Ok(MeasureValue::new(
        Measure::EntropicMomentWq,
        v,
        Method::AdaptiveQuadrature,
        err,
    ))
}

/// `W_q = ∫ ρ_n^q dx`: exact shifted rule when available, adaptive otherwise.
pub fn entropic_moment_wq(
    family: &PolynomialFamily,
    n: usize,
    q: f64,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    match log_entropic_moment_exact(family, n, q) {
        Ok(lw) => Ok(MeasureValue::new(
            Measure::EntropicMomentWq,
            lw.exp(),
            Method::ExactQuadrature,
            0.0,
        )),
        Err(Error::Unsupported(_)) | Err(Error::Domain(_)) => {
            entropic_moment_wq_adaptive(family, n, q, opts)
        }
        Err(e) => Err(e),
    }
}

/// Rényi entropy `R_q = ln W_q / (1 − q)`, `q ≠ 1`.
pub fn renyi_entropy(
    family: &PolynomialFamily,
    n: usize,
    q: f64,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    if q == 1.0 {
        return Err(Error::InvalidInput(
            "Renyi entropy needs q != 1 (q -> 1 is the Shannon entropy)".into(),
        ));
    }
    let (ln_w, method, err) = match log_entropic_moment_exact(family, n, q) {
        Ok(lw) => (lw, Method::ExactQuadrature, 0.0),
        Err(Error::Unsupported(_)) | Err(Error::Domain(_)) => {
            let w = entropic_moment_wq_adaptive(family, n, q, opts)?;
            (w.value.ln(), w.method, w.relative_error())
        }
        Err(e) => return Err(e),
    };
    let scale = 1.0 / (1.0 - q);
    Ok(MeasureValue::new(
        Measure::RenyiQ,
        ln_w * scale,
        method,
        err * scale.abs(),
    ))
}

/// `ψ(x)` for `x > −1`, `x ≠ 0`, via `ψ(x) = ψ(x+1) − 1/x`.
fn digamma_shifted(x: f64) -> Result<f64> {
    if x > 0.0 {
        digamma(x)
    } else {
        Ok(digamma(x + 1.0)? - 1.0 / x)
    }
}

/// Closed-form integral functional `I = −∫ ρ_n ln h dx` (Laguerre, Gegenbauer).
pub fn integral_i_closed(family: &PolynomialFamily, n: usize) -> Result<MeasureValue> {
    family.validate()?;
    let nf = n as f64;
    let v = match *family {
        PolynomialFamily::Laguerre { alpha } => {
            let psi_term = if alpha == 0.0 {
                0.0
            } else {
                alpha * digamma(alpha + nf + 1.0)?
            };
            2.0 * nf + alpha + 1.0 - psi_term
        }
        PolynomialFamily::Gegenbauer { lambda } => {
            if lambda == 0.5 {
                0.0
            } else {
                (2.0 * lambda - 1.0) * gegenbauer_i_bracket(n, lambda)?
            }
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed-form integral functional for {}",
                family.kind().name()
            )))
        }
    };
    Ok(MeasureValue::new(Measure::IntegralI, v, Method::ClosedForm, 0.0))
}

/// `1/(2(n+λ)) + ln 2 + ψ(n+λ) − ψ(n+2λ)`.
fn gegenbauer_i_bracket(n: usize, lambda: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(0.5 / (nf + lambda) + LN_2 + digamma_shifted(nf + lambda)? - digamma_shifted(nf + 2.0 * lambda)?)
}

/// The Gegenbauer integral-functional expression with its full printed
/// prefactor `(2λ−1)π n! Γ(n+2λ) / (2^{2(n+λ)−1} (n+λ) Γ(n+λ)²)`, λ > 0.
///
/// Kept for auditing: divided by `κ_n` it agrees with `−∫ρ ln h` only at
/// `n = 0`; see [`crate::verify::gegenbauer_i_audit`].
pub fn gegenbauer_i_printed(n: usize, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "printed Gegenbauer I expression needs lambda > 0, got {lambda}"
        )));
    }
    let nf = n as f64;
    let bracket = gegenbauer_i_bracket(n, lambda)?;
    let log_prefactor = PI.ln() + log_factorial(n) + log_gamma(nf + 2.0 * lambda)?
        - (2.0 * (nf + lambda) - 1.0) * LN_2
        - (nf + lambda).ln()
        - 2.0 * log_gamma(nf + lambda)?;
    Ok((2.0 * lambda - 1.0) * log_prefactor.exp() * bracket)
}

/// `I = −∫ ρ_n ln h dx` by quadrature (exact for Hermite, where `−ln h = x²`).
pub fn integral_i_numeric(
    family: &PolynomialFamily,
    n: usize,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    if let PolynomialFamily::Hermite = family {
        let v = exact_density_average(family, n, n + 2, |x| x * x)?;
        return Ok(MeasureValue::new(Measure::IntegralI, v, Method::ExactQuadrature, 0.0));
    }
    let f = *family;
    let (v, err) = adaptive_density_integral(family, n, opts, move |ev, p| {
        let e = ev.eval(p.x);
        let lr = log_density_from(&f, &e, p);
        if lr < f64::MIN_POSITIVE.ln() {
            return 0.0;
        }
        -lr.exp() * log_weight_at(&f, p)
    })?;
    Ok(MeasureValue::new(
        Measure::IntegralI,
        v,
        Method::AdaptiveQuadrature,
        err,
    ))
}

/// `I`: closed form where available, quadrature otherwise.
pub fn integral_i(family: &PolynomialFamily, n: usize, opts: &AdaptiveOptions) -> Result<MeasureValue> {
    match integral_i_closed(family, n) {
        Err(Error::Unsupported(_)) => integral_i_numeric(family, n, opts),
        other => other,
    }
}

/// `E[p̂_n] = −∫ p̂_n² h ln p̂_n² dx` by adaptive quadrature.
pub fn shannon_e_numeric(
    family: &PolynomialFamily,
    n: usize,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    let f = *family;
    let ev = Evaluator::new(family, n)?;
    let log_kappa0 = ev.log_mass();
    let (v, err) = adaptive_density_integral(family, n, opts, move |ev, p| {
        let e = ev.eval(p.x);
        let lr = log_density_from(&f, &e, p);
        if lr < f64::MIN_POSITIVE.ln() {
            return 0.0;
        }
        let ln_p2 = 2.0 * (e.value.abs().ln() + e.log_scale) - log_kappa0;
        -lr.exp() * ln_p2
    })?;
    Ok(MeasureValue::new(
        Measure::ShannonE,
        v,
        Method::AdaptiveQuadrature,
        err,
    ))
}

/// `S = −∫ ρ ln ρ dx` by direct adaptive quadrature.
pub fn shannon_s_direct(
    family: &PolynomialFamily,
    n: usize,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    let f = *family;
    let (v, err) = adaptive_density_integral(family, n, opts, move |ev, p| {
        let lr = log_density_from(&f, &ev.eval(p.x), p);
        if lr < f64::MIN_POSITIVE.ln() {
            return 0.0;
        }
        -lr.exp() * lr
    })?;
    Ok(MeasureValue::new(
        Measure::ShannonS,
        v,
        Method::AdaptiveQuadrature,
        err,
    ))
}

/// Shannon functional `S = E + I`; falls back to direct `−∫ρ ln ρ` when the
/// two parts cancel catastrophically (large degree or parameter).
pub fn shannon_s(family: &PolynomialFamily, n: usize, opts: &AdaptiveOptions) -> Result<MeasureValue> {
    let i = integral_i(family, n, opts)?;
    let e = shannon_e_numeric(family, n, opts)?;
    let s = e.value + i.value;
    if e.value.abs() + i.value.abs() > CANCELLATION_LIMIT * s.abs().max(1.0) {
        return shannon_s_direct(family, n, opts);
    }
    Ok(MeasureValue::new(
        Measure::ShannonS,
        s,
        e.method.combine(i.method),
        e.error_estimate + i.error_estimate,
    ))
}

/// Shannon entropy power `𝓛_S = e^S`.
pub fn shannon_power(family: &PolynomialFamily, n: usize, opts: &AdaptiveOptions) -> Result<MeasureValue> {
    let s = shannon_s(family, n, opts)?;
    let v = s.value.exp();
    Ok(MeasureValue::new(
        Measure::ShannonPower,
        v,
        s.method,
        v * s.error_estimate,
    ))
}

/// Cramér–Rao complexity `F · V`.
pub fn cramer_rao(family: &PolynomialFamily, n: usize, opts: &AdaptiveOptions) -> Result<MeasureValue> {
    let f = fisher(family, n, opts)?;
    if f.is_divergent() {
        return Ok(MeasureValue {
            measure: Measure::CramerRao,
            ..f
        });
    }
    let v = variance(family, n)?;
    let value = f.value * v.value;
    Ok(MeasureValue::new(
        Measure::CramerRao,
        value,
        f.method.combine(v.method),
        value.abs() * f.relative_error(),
    ))
}

/// Fisher–Shannon complexity `F e^{2S} / (2πe)`.
pub fn fisher_shannon(
    family: &PolynomialFamily,
    n: usize,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    let f = fisher(family, n, opts)?;
    if f.is_divergent() {
        return Ok(MeasureValue {
            measure: Measure::FisherShannon,
            ..f
        });
    }
    let s = shannon_s(family, n, opts)?;
    let value = if f.value == 0.0 {
        0.0
    } else {
        (f.value.ln() + 2.0 * s.value - LN_2PI - 1.0).exp()
    };
    Ok(MeasureValue::new(
        Measure::FisherShannon,
        value,
        f.method.combine(s.method),
        value * (f.relative_error() + 2.0 * s.error_estimate),
    ))
}

/// LMC complexity `W_2 e^S`.
pub fn lmc(family: &PolynomialFamily, n: usize, opts: &AdaptiveOptions) -> Result<MeasureValue> {
    let w = entropic_moment_wq(family, n, 2.0, opts)?;
    let s = shannon_s(family, n, opts)?;
    let value = (w.value.ln() + s.value).exp();
    Ok(MeasureValue::new(
        Measure::Lmc,
        value,
        w.method.combine(s.method),
        value * (w.relative_error() + s.error_estimate),
    ))
}

/// Evaluate any measure. `q` is used by the Rényi and entropic-moment
/// measures (default 2).
pub fn compute(
    measure: Measure,
    family: &PolynomialFamily,
    n: usize,
    q: Option<f64>,
    opts: &AdaptiveOptions,
) -> Result<MeasureValue> {
    family.validate()?;
    let q = q.unwrap_or(2.0);
    match measure {
        Measure::Fisher => fisher(family, n, opts),
        Measure::Variance => variance(family, n),
        Measure::ShannonE => shannon_e_numeric(family, n, opts),
        Measure::IntegralI => integral_i(family, n, opts),
        Measure::ShannonS => shannon_s(family, n, opts),
        Measure::ShannonPower => shannon_power(family, n, opts),
        Measure::RenyiQ => renyi_entropy(family, n, q, opts),
        Measure::EntropicMomentWq => entropic_moment_wq(family, n, q, opts),
        Measure::CramerRao => cramer_rao(family, n, opts),
        Measure::FisherShannon => fisher_shannon(family, n, opts),
        Measure::Lmc => lmc(family, n, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::E;

    fn lag(alpha: f64) -> PolynomialFamily {
        PolynomialFamily::Laguerre { alpha }
    }

    fn geg(lambda: f64) -> PolynomialFamily {
        PolynomialFamily::Gegenbauer { lambda }
    }

    fn opts() -> AdaptiveOptions {
        AdaptiveOptions::default()
    }

    #[test]
    fn fisher_closed_examples() {
        assert_eq!(fisher_closed(&lag(0.0), 0).unwrap().value, 1.0);
        assert_relative_eq!(fisher_closed(&lag(2.0), 1).unwrap().value, 7.0 / 3.0);
        assert_eq!(fisher_closed(&geg(0.5), 1).unwrap().value, 12.0);
        let inf = fisher_closed(&lag(0.5), 3).unwrap();
        assert!(inf.is_divergent());
        assert_eq!(inf.regime.as_deref(), Some(LAGUERRE_DIVERGENT_REGIME));
        assert!(fisher_closed(&lag(1.0), 3).unwrap().is_divergent());
        assert!(fisher_closed(&geg(1.5), 3).unwrap().is_divergent());
        assert!(fisher_closed(&PolynomialFamily::Hermite, 0).is_err());
        let v = fisher_closed(&lag(0.0), 4).unwrap();
        assert_eq!((v.method, v.error_estimate), (Method::ClosedForm, 0.0));
    }

    #[test]
    fn fisher_numeric_examples() {
        assert_relative_eq!(fisher_numeric(&lag(0.0), 0, &opts()).unwrap().value, 1.0, max_relative = 1e-9);
        assert_relative_eq!(fisher_numeric(&geg(2.0), 0, &opts()).unwrap().value, 12.0, max_relative = 1e-9);
        assert_abs_diff_eq!(fisher_numeric(&geg(0.5), 0, &opts()).unwrap().value, 0.0, epsilon = 1e-10);
        // Hermite: F = 4n + 2.
        assert_relative_eq!(
            fisher_numeric(&PolynomialFamily::Hermite, 3, &opts()).unwrap().value,
            14.0,
            max_relative = 1e-9
        );
    }

    #[test]
    fn jacobi_fisher_branches_match_numeric() {
        // Oracle values from independent high-precision quadrature.
        let cases = [
            (2usize, 0.0, 0.0, 60.0),
            (0, 0.0, 2.5, 3.645_833_333_33),
            (2, 0.0, 2.5, 109.955_357_143),
            (3, 0.0, 4.0, 313.866_666_667),
            (0, 2.0, 3.0, 11.25),
            (2, 2.0, 3.0, 102.083_333_333),
            (3, 2.5, 2.5, 174.285_714_286),
            (1, 1.5, 4.0, 74.020_833_333_3),
            (2, 2.5, 0.0, 109.955_357_143),
        ];
        for (n, a, b, oracle) in cases {
            let fam = PolynomialFamily::Jacobi { alpha: a, beta: b };
            let closed = fisher_closed(&fam, n).unwrap().value;
            assert_relative_eq!(closed, oracle, max_relative = 1e-10);
            let numeric = fisher_numeric(&fam, n, &opts()).unwrap().value;
            assert_relative_eq!(numeric, closed, max_relative = 1e-8);
        }
        assert!(fisher_closed(&PolynomialFamily::Jacobi { alpha: 0.5, beta: 2.0 }, 1)
            .unwrap()
            .is_divergent());
    }

    #[test]
    fn gegenbauer_fisher_equals_jacobi_route() {
        for n in 0..5 {
            let g = fisher_closed(&geg(2.3), n).unwrap().value;
            let j = fisher_closed(&PolynomialFamily::Jacobi { alpha: 1.8, beta: 1.8 }, n)
                .unwrap()
                .value;
            assert_relative_eq!(g, j, max_relative = 1e-13);
        }
    }

    #[test]
    fn moment_examples() {
        assert_relative_eq!(variance(&lag(2.0), 0).unwrap().value, 3.0, max_relative = 1e-13);
        assert_relative_eq!(moment(&lag(0.0), 1, 1).unwrap().value, 3.0, max_relative = 1e-13);
        assert_relative_eq!(variance(&lag(0.0), 1).unwrap().value, 5.0, max_relative = 1e-13);
        assert_abs_diff_eq!(moment(&geg(0.5), 0, 1).unwrap().value, 0.0, epsilon = 1e-15);
        assert_relative_eq!(moment(&lag(1.3), 4, 0).unwrap().value, 1.0, max_relative = 1e-13);
        // Hermite: ⟨x²⟩ = n + 1/2.
        assert_relative_eq!(
            variance(&PolynomialFamily::Hermite, 6).unwrap().value,
            6.5,
            max_relative = 1e-13
        );
    }

    #[test]
    fn entropic_moment_examples() {
        let w = entropic_moment_wq(&lag(0.0), 0, 2.0, &opts()).unwrap();
        assert_relative_eq!(w.value, 0.5, max_relative = 1e-14);
        assert_eq!(w.method, Method::ExactQuadrature);
        assert_relative_eq!(
            entropic_moment_wq(&lag(1.0), 0, 2.0, &opts()).unwrap().value,
            0.25,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            entropic_moment_wq(&geg(0.5), 0, 2.0, &opts()).unwrap().value,
            0.5,
            max_relative = 1e-14
        );
        // Non-integer q at n > 0 falls back to adaptive.
        let w = entropic_moment_wq(&lag(0.0), 2, 1.5, &opts()).unwrap();
        assert_eq!(w.method, Method::AdaptiveQuadrature);
    }

    #[test]
    fn wq_dual_paths_agree() {
        let fams = [PolynomialFamily::Hermite, lag(0.7), geg(1.4), PolynomialFamily::Jacobi { alpha: 0.4, beta: -0.3 }];
        for f in fams {
            for n in [1usize, 4] {
                for q in [2.0, 3.0] {
                    let exact = log_entropic_moment_exact(&f, n, q).unwrap().exp();
                    let adaptive = entropic_moment_wq_adaptive(&f, n, q, &opts()).unwrap().value;
                    assert_relative_eq!(exact, adaptive, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn integral_i_examples() {
        assert_relative_eq!(integral_i_closed(&lag(0.0), 1).unwrap().value, 3.0);
        assert_relative_eq!(integral_i_closed(&lag(0.0), 0).unwrap().value, 1.0);
        for n in 0..4 {
            assert_eq!(integral_i_closed(&geg(0.5), n).unwrap().value, 0.0);
        }
        assert_relative_eq!(
            integral_i_closed(&geg(1.5), 0).unwrap().value,
            0.280_372_305_547,
            max_relative = 1e-10
        );
        // The printed prefactor divided by κ_0 = 4/3 agrees at n = 0.
        assert_relative_eq!(
            gegenbauer_i_printed(0, 1.5).unwrap() * 0.75,
            0.280_372_305_547,
            max_relative = 1e-10
        );
    }

    #[test]
    fn integral_i_closed_matches_quadrature() {
        for f in [lag(2.5), geg(0.75), geg(5.0), geg(-0.3)] {
            for n in [0usize, 1, 3, 8] {
                let c = integral_i_closed(&f, n).unwrap().value;
                let q = integral_i_numeric(&f, n, &opts()).unwrap().value;
                assert_relative_eq!(c, q, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn shannon_e_examples() {
        assert_abs_diff_eq!(shannon_e_numeric(&lag(0.0), 0, &opts()).unwrap().value, 0.0, epsilon = 1e-12);
        assert_relative_eq!(shannon_e_numeric(&geg(0.5), 0, &opts()).unwrap().value, LN_2, max_relative = 1e-10);
        assert_relative_eq!(shannon_e_numeric(&lag(2.0), 0, &opts()).unwrap().value, LN_2, max_relative = 1e-10);
        // −∫(1−x)² e^{−x} ln (1−x)² dx, from an independent high-precision oracle.
        let tight = shannon_e_numeric(&lag(0.0), 1, &AdaptiveOptions::with_tol(1e-12)).unwrap().value;
        let loose = shannon_e_numeric(&lag(0.0), 1, &opts()).unwrap().value;
        assert_relative_eq!(tight, loose, max_relative = 1e-9);
        assert_relative_eq!(tight, -1.211_300_467_059_736, max_relative = 1e-9);
    }

    #[test]
    fn shannon_s_examples() {
        let s = shannon_s(&lag(0.0), 0, &opts()).unwrap();
        assert_relative_eq!(s.value, 1.0, max_relative = 1e-10);
        assert_relative_eq!(shannon_power(&lag(0.0), 0, &opts()).unwrap().value, E, max_relative = 1e-10);
        assert_relative_eq!(shannon_s(&geg(0.5), 0, &opts()).unwrap().value, LN_2, max_relative = 1e-10);
        assert_relative_eq!(shannon_power(&geg(0.5), 0, &opts()).unwrap().value, 2.0, max_relative = 1e-10);
        let expected = LN_2 + 3.0 - 2.0 * (1.5 - EULER_GAMMA);
        assert_relative_eq!(shannon_s(&lag(2.0), 0, &opts()).unwrap().value, expected, max_relative = 1e-10);
    }

    #[test]
    fn shannon_split_matches_direct() {
        for (f, n) in [(lag(1.5), 3usize), (geg(2.2), 5), (PolynomialFamily::Hermite, 4)] {
            let split = shannon_s(&f, n, &opts()).unwrap().value;
            let direct = shannon_s_direct(&f, n, &opts()).unwrap().value;
            assert_relative_eq!(split, direct, max_relative = 1e-8);
        }
    }

    #[test]
    fn complexity_examples() {
        assert_relative_eq!(cramer_rao(&lag(0.0), 0, &opts()).unwrap().value, 1.0, max_relative = 1e-12);
        assert_relative_eq!(lmc(&lag(0.0), 0, &opts()).unwrap().value, E / 2.0, max_relative = 1e-10);
        assert_relative_eq!(lmc(&geg(0.5), 0, &opts()).unwrap().value, 1.0, max_relative = 1e-10);
        assert_eq!(fisher_shannon(&geg(0.5), 0, &opts()).unwrap().value, 0.0);
        assert_relative_eq!(
            fisher_shannon(&lag(0.0), 0, &opts()).unwrap().value,
            E / (2.0 * PI),
            max_relative = 1e-10
        );
        let c = cramer_rao(&lag(0.5), 2, &opts()).unwrap();
        assert!(c.is_divergent());
        assert_eq!(c.measure, Measure::CramerRao);
    }

    #[test]
    fn renyi_examples() {
        // Exponential density: W_q = 1/q, R_q = ln q/(q − 1).
        let r = renyi_entropy(&lag(0.0), 0, 3.0, &opts()).unwrap();
        assert_relative_eq!(r.value, 3f64.ln() / 2.0, max_relative = 1e-13);
        assert!(renyi_entropy(&lag(0.0), 0, 1.0, &opts()).is_err());
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(Measure::parse(m.name()), Some(m));
        }
        assert_eq!(Measure::parse("nope"), None);
    }
}
