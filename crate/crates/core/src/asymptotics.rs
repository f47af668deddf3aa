//! First-order degree (`n → ∞`) and parameter (`α, λ → ∞`) asymptotics of the
//! Laguerre and Gegenbauer spreading measures, encoded exactly as tabulated
//! and evaluated in log space.
//!
//! Nothing here is corrected: where a formula disagrees with the exact
//! numerics, that is for [`crate::verify`] to report. The one exception is
//! [`gegenbauer_np_asymptotic`], whose tabulated Beta-integral constant is
//! kept separately as [`gegenbauer_np_asymptotic_printed`].

use std::f64::consts::{E, LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::ortho::{log_gegenbauer_at_one, FamilyKind};
use crate::special::{digamma, log_factorial, log_gamma};

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Which limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `n → ∞` at fixed weight parameter.
    DegreeToInfinity,
    /// Weight parameter `→ ∞` at fixed degree.
    ParameterToInfinity,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::DegreeToInfinity => "degree",
            Regime::ParameterToInfinity => "param",
        }
    }

    pub fn parse(s: &str) -> Option<Regime> {
        match s.to_ascii_lowercase().as_str() {
            "degree" | "n" | "deg" => Some(Regime::DegreeToInfinity),
            "param" | "parameter" | "alpha" | "lambda" => Some(Regime::ParameterToInfinity),
            _ => None,
        }
    }
}

/// Which asymptotically described quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Fisher,
    ShannonPower,
    W2,
    CFS,
    CLMC,
    ShannonE,
    ShannonS,
    KappaNorm,
    RenyiFunctional,
    NpNorm,
}

impl Quantity {
    pub const ALL: [Quantity; 10] = [
        Quantity::Fisher,
        Quantity::ShannonPower,
        Quantity::W2,
        Quantity::CFS,
        Quantity::CLMC,
        Quantity::ShannonE,
        Quantity::ShannonS,
        Quantity::KappaNorm,
        Quantity::RenyiFunctional,
        Quantity::NpNorm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Fisher => "fisher",
            Quantity::ShannonPower => "shannon_power",
            Quantity::W2 => "w2",
            Quantity::CFS => "cfs",
            Quantity::CLMC => "clmc",
            Quantity::ShannonE => "shannon_e",
            Quantity::ShannonS => "shannon_s",
            Quantity::KappaNorm => "kappa",
            Quantity::RenyiFunctional => "renyi_functional",
            Quantity::NpNorm => "np_norm",
        }
    }

    pub fn parse(s: &str) -> Option<Quantity> {
        let q = match s.to_ascii_lowercase().as_str() {
            "fisher" | "f" => Quantity::Fisher,
            "shannon_power" | "ls" | "power" => Quantity::ShannonPower,
            "w2" | "wq" => Quantity::W2,
            "cfs" | "fisher_shannon" | "fs" => Quantity::CFS,
            "clmc" | "lmc" => Quantity::CLMC,
            "shannon_e" | "e" => Quantity::ShannonE,
            "shannon_s" | "s" | "shannon" => Quantity::ShannonS,
            "kappa" | "kappa_norm" | "norm" => Quantity::KappaNorm,
            "renyi_functional" | "renyi_like" => Quantity::RenyiFunctional,
            "np" | "np_norm" => Quantity::NpNorm,
            _ => return None,
        };
        Some(q)
    }

    /// The density measure this quantity is the asymptotic of (W_2 is the
    /// entropic moment at `q = 2`).
    pub fn measure(self) -> Option<Measure> {
        match self {
            Quantity::Fisher => Some(Measure::Fisher),
            Quantity::ShannonPower => Some(Measure::ShannonPower),
            Quantity::W2 => Some(Measure::EntropicMomentWq),
            Quantity::CFS => Some(Measure::FisherShannon),
            Quantity::CLMC => Some(Measure::Lmc),
            Quantity::ShannonE => Some(Measure::ShannonE),
            Quantity::ShannonS => Some(Measure::ShannonS),
            Quantity::KappaNorm | Quantity::RenyiFunctional | Quantity::NpNorm => None,
        }
    }
}

/// A leading-order value `sign · e^{ln_abs}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticValue {
    pub sign: f64,
    pub ln_abs: f64,
}

impl AsymptoticValue {
    fn from_log(ln_abs: f64) -> Self {
        AsymptoticValue { sign: 1.0, ln_abs }
    }

    fn from_value(v: f64) -> Self {
        AsymptoticValue {
            sign: if v == 0.0 { 0.0 } else { v.signum() },
            ln_abs: v.abs().ln(),
        }
    }

    /// The plain value (may overflow to ±∞).
    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }
}

/// The formula selected for one (family, regime, quantity, parameter).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticFormula {
    pub family: FamilyKind,
    pub regime: Regime,
    pub quantity: Quantity,
    /// Branch condition, e.g. `"alpha>1"`.
    pub branch: &'static str,
    /// The formula as tabulated.
    pub expression: &'static str,
    /// Tabulated only up to an unprinted constant (coefficient encoded as 1);
    /// compare by exponent fitting or log-ratio, not by ratio.
    pub coefficient_free: bool,
    /// Power of the swept variable, when the formula is a pure power law.
    pub predicted_exponent: Option<f64>,
}

fn out_of_branch(what: &str, param: &str, value: f64) -> Error {
    Error::OutOfBranch(format!("{what} has no tabulated branch at {param}={value}"))
}

fn unsupported(family: &str, regime: Regime, quantity: Quantity) -> Error {
    Error::Unsupported(format!(
        "no {} asymptotic for {family} quantity {}",
        regime.name(),
        quantity.name()
    ))
}

fn check_laguerre_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= -1.0 || !alpha.is_finite() {
        return Err(Error::InvalidFamily(format!("Laguerre requires alpha > -1, got {alpha}")));
    }
    Ok(())
}

fn check_gegenbauer_lambda(lambda: f64) -> Result<()> {
    if lambda.is_nan() || lambda <= -0.5 || lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidFamily(format!(
            "Gegenbauer requires lambda > -1/2 and lambda != 0, got {lambda}"
        )));
    }
    Ok(())
}

fn check_degree_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("degree asymptotics need n >= 1".into()));
    }
    Ok(())
}

/// Branch and metadata of a Laguerre formula.
pub fn laguerre_formula(quantity: Quantity, regime: Regime, alpha: f64) -> Result<AsymptoticFormula> {
    check_laguerre_alpha(alpha)?;
    let (branch, expression, exponent) = match regime {
        Regime::DegreeToInfinity => match quantity {
            Quantity::Fisher if alpha == 0.0 => ("alpha=0", "4n", Some(1.0)),
            Quantity::Fisher if alpha > 1.0 => ("alpha>1", "2 alpha/(alpha^2-1) n", Some(1.0)),
            Quantity::Fisher => return Err(out_of_branch("Laguerre degree Fisher", "alpha", alpha)),
            Quantity::ShannonPower => ("alpha>-1", "(2 pi/e) n", Some(1.0)),
            Quantity::W2 => ("alpha>-1", "log n/(pi^2 n)", None),
            Quantity::CFS if alpha == 0.0 => ("alpha=0", "(8 pi/e^3) n^3", Some(3.0)),
            Quantity::CFS if alpha > 1.0 => {
                ("alpha>1", "alpha/(alpha^2-1) (4 pi/e^3) n^3", Some(3.0))
            }
            Quantity::CFS => return Err(out_of_branch("Laguerre degree C_FS", "alpha", alpha)),
            Quantity::CLMC => ("alpha>-1", "(2/(pi e)) log n", None),
            Quantity::ShannonS => (
                "alpha>-1",
                "(alpha+1) log n - alpha psi(alpha+n+1) - 1 + log(2 pi)",
                None,
            ),
            q => return Err(unsupported("laguerre", regime, q)),
        },
        Regime::ParameterToInfinity => {
            if !(alpha > 0.0) {
                return Err(Error::Domain(format!(
                    "parameter asymptotics need alpha > 0, got {alpha}"
                )));
            }
            match quantity {
                Quantity::Fisher => ("alpha>0", "(2n+1)/alpha", Some(-1.0)),
                Quantity::KappaNorm => ("alpha>0", "sqrt(2 pi)/n! (alpha/e)^alpha alpha^(n+1/2)", None),
                Quantity::ShannonE => ("alpha>0", "log(sqrt(2 pi alpha)/n! (alpha/e)^alpha)", None),
                Quantity::ShannonS => ("alpha>0", "log(sqrt(2 pi alpha)/n!) + n + 1/2", None),
                Quantity::ShannonPower => ("alpha>0", "sqrt(2 pi alpha)/n! e^(n+1/2)", Some(0.5)),
                Quantity::W2 => ("alpha>0", "alpha^(2n)/(2 (n!)^2 sqrt(pi alpha))", None),
                Quantity::CFS => ("alpha>0", "(2n+1) e^(2n)/(n!)^2", Some(0.0)),
                Quantity::CLMC => ("alpha>0", "alpha^(2n) e^(n+1/2)/(sqrt(2) (n!)^3)", None),
                Quantity::RenyiFunctional => (
                    "alpha>0",
                    "alpha^(kappa m) Gamma(mu)/(lambda^mu (m!)^kappa)",
                    None,
                ),
                q => return Err(unsupported("laguerre", regime, q)),
            }
        }
    };
    Ok(AsymptoticFormula {
        family: FamilyKind::Laguerre,
        regime,
        quantity,
        branch,
        expression,
        coefficient_free: false,
        predicted_exponent: exponent,
    })
}

/// Laguerre exponents that depend on `n`.
fn laguerre_param_exponent(quantity: Quantity, n: usize) -> Option<f64> {
    let nf = n as f64;
    match quantity {
        Quantity::W2 => Some(2.0 * nf - 0.5),
        Quantity::CLMC => Some(2.0 * nf),
        _ => None,
    }
}

/// `n → ∞` asymptotic of a Laguerre measure at fixed `α`.
pub fn laguerre_degree_asymptotic(quantity: Quantity, n: usize, alpha: f64) -> Result<AsymptoticValue> {
    laguerre_formula(quantity, Regime::DegreeToInfinity, alpha)?;
    check_degree_n(n)?;
    let nf = n as f64;
    let ln_n = nf.ln();
    let v = match quantity {
        Quantity::Fisher if alpha == 0.0 => AsymptoticValue::from_log(4f64.ln() + ln_n),
        Quantity::Fisher => {
            AsymptoticValue::from_log((2.0 * alpha / (alpha * alpha - 1.0)).ln() + ln_n)
        }
        Quantity::ShannonPower => AsymptoticValue::from_log(LN_2PI - 1.0 + ln_n),
        Quantity::W2 => AsymptoticValue::from_value(ln_n / (PI * PI * nf)),
        Quantity::CFS if alpha == 0.0 => {
            AsymptoticValue::from_log((8.0 * PI).ln() - 3.0 + 3.0 * ln_n)
        }
        Quantity::CFS => AsymptoticValue::from_log(
            (alpha / (alpha * alpha - 1.0)).ln() + (4.0 * PI).ln() - 3.0 + 3.0 * ln_n,
        ),
        Quantity::CLMC => AsymptoticValue::from_value(2.0 / (PI * E) * ln_n),
        Quantity::ShannonS => {
            let psi = if alpha == 0.0 {
                0.0
            } else {
                alpha * digamma(alpha + nf + 1.0)?
            };
            AsymptoticValue::from_value((alpha + 1.0) * ln_n - psi - 1.0 + LN_2PI)
        }
        _ => unreachable!("laguerre_formula rejects other quantities"),
    };
    Ok(v)
}

/// `α → ∞` asymptotic of a Laguerre measure at fixed `n`.
///
/// [`Quantity::RenyiFunctional`] needs its own parameters; use
/// [`laguerre_renyi_functional_asymptotic`].
pub fn laguerre_parameter_asymptotic(quantity: Quantity, n: usize, alpha: f64) -> Result<AsymptoticValue> {
    laguerre_formula(quantity, Regime::ParameterToInfinity, alpha)?;
    let nf = n as f64;
    let ln_a = alpha.ln();
    let ln_nfact = log_factorial(n);
    // ln(√(2πα)/n!)
    let ln_root = 0.5 * (LN_2PI + ln_a) - ln_nfact;
    let v = match quantity {
        Quantity::Fisher => AsymptoticValue::from_log((2.0 * nf + 1.0).ln() - ln_a),
        Quantity::KappaNorm => AsymptoticValue::from_log(
            0.5 * LN_2PI - ln_nfact + alpha * (ln_a - 1.0) + (nf + 0.5) * ln_a,
        ),
        Quantity::ShannonE => AsymptoticValue::from_value(ln_root + alpha * (ln_a - 1.0)),
        Quantity::ShannonS => AsymptoticValue::from_value(ln_root + nf + 0.5),
        Quantity::ShannonPower => AsymptoticValue::from_log(ln_root + nf + 0.5),
        Quantity::W2 => AsymptoticValue::from_log(
            2.0 * nf * ln_a - LN_2 - 2.0 * ln_nfact - 0.5 * (LN_PI + ln_a),
        ),
        Quantity::CFS => AsymptoticValue::from_log((2.0 * nf + 1.0).ln() + 2.0 * nf - 2.0 * ln_nfact),
        Quantity::CLMC => AsymptoticValue::from_log(
            2.0 * nf * ln_a + nf + 0.5 - 0.5 * LN_2 - 3.0 * ln_nfact,
        ),
        Quantity::RenyiFunctional => {
            return Err(Error::InvalidInput(
                "the Renyi-like functional takes (mu, lambda, kappa, m); use laguerre_renyi_functional_asymptotic".into(),
            ))
        }
        _ => unreachable!("laguerre_formula rejects other quantities"),
    };
    Ok(v)
}

/// `ln` of the leading term of `∫₀^∞ x^{μ−1} e^{−λx} |L_m^{(α)}(x)|^κ dx` as
/// `α → ∞`: `κm ln α + ln Γ(μ) − μ ln λ − κ ln m!`.
pub fn laguerre_renyi_functional_asymptotic(mu: f64, lam: f64, kap: f64, m: usize, alpha: f64) -> Result<f64> {
    for (name, v) in [("mu", mu), ("lambda", lam), ("kappa", kap), ("alpha", alpha)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(kap * m as f64 * alpha.ln() + log_gamma(mu)? - mu * lam.ln() - kap * log_factorial(m))
}

/// Branch and metadata of a Gegenbauer formula.
pub fn gegenbauer_formula(quantity: Quantity, regime: Regime, lambda: f64) -> Result<AsymptoticFormula> {
    check_gegenbauer_lambda(lambda)?;
    let mut coefficient_free = false;
    let (branch, expression, exponent) = match regime {
        Regime::DegreeToInfinity => match quantity {
            Quantity::Fisher if lambda == 0.5 => ("lambda=1/2", "4 n^3", Some(3.0)),
            Quantity::Fisher if lambda > 1.5 => (
                "lambda>3/2",
                "(2 lambda-1)/(lambda^2-lambda-3/4) n^3",
                Some(3.0),
            ),
            Quantity::Fisher => return Err(out_of_branch("Gegenbauer degree Fisher", "lambda", lambda)),
            Quantity::ShannonPower => ("lambda>-1/2", "pi 2^(1-2 lambda)/e", Some(0.0)),
            Quantity::ShannonE | Quantity::ShannonS => {
                ("lambda>-1/2", "log(pi) + (1-2 lambda) log 2 - 1", None)
            }
            Quantity::W2 if lambda < 0.5 => {
                coefficient_free = true;
                ("-1/2<lambda<1/2", "n^(1-2 lambda)", Some(1.0 - 2.0 * lambda))
            }
            Quantity::W2 if lambda == 0.5 => {
                coefficient_free = true;
                ("lambda=1/2", "log n", None)
            }
            Quantity::W2 => (
                "lambda>1/2",
                "3/(2 pi^(3/2)) Gamma(lambda-1/2)/Gamma(lambda)",
                Some(0.0),
            ),
            Quantity::CFS if lambda == 0.5 => ("lambda=1/2", "(2 pi/e^3) n^3", Some(3.0)),
            Quantity::CFS if lambda > 1.5 => (
                "lambda>3/2",
                "2^(1-4 lambda) (2 lambda-1) pi/(e^3 (lambda^2-lambda-3/4)) n^3",
                Some(3.0),
            ),
            Quantity::CFS => return Err(out_of_branch("Gegenbauer degree C_FS", "lambda", lambda)),
            // Built on the coefficient-free W_2 branches.
            Quantity::CLMC if lambda < 0.5 => {
                coefficient_free = true;
                (
                    "-1/2<lambda<1/2",
                    "pi 2^(1-2 lambda)/e n^(1-2 lambda)",
                    Some(1.0 - 2.0 * lambda),
                )
            }
            Quantity::CLMC if lambda == 0.5 => {
                coefficient_free = true;
                ("lambda=1/2", "(pi/e) log n", None)
            }
            Quantity::CLMC => (
                "lambda>1/2",
                "2^(-2 lambda)/e 3/sqrt(pi) Gamma(lambda-1/2)/Gamma(lambda)",
                Some(0.0),
            ),
            q => return Err(unsupported("gegenbauer", regime, q)),
        },
        Regime::ParameterToInfinity => {
            if !(lambda > 0.0) {
                return Err(Error::Domain(format!(
                    "parameter asymptotics need lambda > 0, got {lambda}"
                )));
            }
            match quantity {
                Quantity::Fisher => ("lambda>0", "(4n+2) lambda", Some(1.0)),
                Quantity::ShannonE | Quantity::ShannonS => {
                    ("lambda>0", "2 log(lambda^n 2^n/n!)", None)
                }
                Quantity::ShannonPower => ("lambda>0", "(2 lambda)^(2n)/(n!)^2", None),
                Quantity::W2 => (
                    "lambda>0",
                    "Gamma(2n+1/2)/(sqrt(2) pi (n!)^2) lambda^(1/2)",
                    Some(0.5),
                ),
                Quantity::CFS => ("lambda>0", "2^(4n) (2n+1)/((n!)^4 pi e) lambda^(4n+1)", None),
                Quantity::CLMC => (
                    "lambda>0",
                    "2^((n-1)/2) Gamma(2n+1/2)/(pi (n!)^(5/2)) lambda^((n+1)/2)",
                    None,
                ),
                Quantity::NpNorm => (
                    "lambda>0",
                    "[C_n(1)]^p Gamma((1+np)/2) Gamma(lambda+1/2)/Gamma(1+lambda+np/2)",
                    None,
                ),
                q => return Err(unsupported("gegenbauer", regime, q)),
            }
        }
    };
    Ok(AsymptoticFormula {
        family: FamilyKind::Gegenbauer,
        regime,
        quantity,
        branch,
        expression,
        coefficient_free,
        predicted_exponent: exponent,
    })
}

/// Gegenbauer `λ → ∞` exponents that depend on `n`.
fn gegenbauer_param_exponent(quantity: Quantity, n: usize) -> Option<f64> {
    let nf = n as f64;
    match quantity {
        Quantity::ShannonPower => Some(2.0 * nf),
        Quantity::CFS => Some(4.0 * nf + 1.0),
        Quantity::CLMC => Some((nf + 1.0) / 2.0),
        _ => None,
    }
}

/// `n → ∞` asymptotic of a Gegenbauer measure at fixed `λ`.
pub fn gegenbauer_degree_asymptotic(quantity: Quantity, n: usize, lambda: f64) -> Result<AsymptoticValue> {
    gegenbauer_formula(quantity, Regime::DegreeToInfinity, lambda)?;
    check_degree_n(n)?;
    let ln_n = (n as f64).ln();
    let gamma_ratio = || -> Result<f64> { Ok(log_gamma(lambda - 0.5)? - log_gamma(lambda)?) };
    let v = match quantity {
        Quantity::Fisher if lambda == 0.5 => AsymptoticValue::from_log(4f64.ln() + 3.0 * ln_n),
        Quantity::Fisher => AsymptoticValue::from_log(
            ((2.0 * lambda - 1.0) / (lambda * lambda - lambda - 0.75)).ln() + 3.0 * ln_n,
        ),
        Quantity::ShannonPower => AsymptoticValue::from_log(LN_PI + (1.0 - 2.0 * lambda) * LN_2 - 1.0),
        Quantity::ShannonE | Quantity::ShannonS => {
            AsymptoticValue::from_value(LN_PI + (1.0 - 2.0 * lambda) * LN_2 - 1.0)
        }
        Quantity::W2 if lambda < 0.5 => AsymptoticValue::from_log((1.0 - 2.0 * lambda) * ln_n),
        Quantity::W2 if lambda == 0.5 => AsymptoticValue::from_value(ln_n),
        Quantity::W2 => AsymptoticValue::from_log(3f64.ln() - LN_2 - 1.5 * LN_PI + gamma_ratio()?),
        Quantity::CFS if lambda == 0.5 => AsymptoticValue::from_log(LN_2PI - 3.0 + 3.0 * ln_n),
        Quantity::CFS => AsymptoticValue::from_log(
            (1.0 - 4.0 * lambda) * LN_2 + ((2.0 * lambda - 1.0) / (lambda * lambda - lambda - 0.75)).ln()
                + LN_PI
                - 3.0
                + 3.0 * ln_n,
        ),
        Quantity::CLMC if lambda < 0.5 => AsymptoticValue::from_log(
            LN_PI + (1.0 - 2.0 * lambda) * LN_2 - 1.0 + (1.0 - 2.0 * lambda) * ln_n,
        ),
        Quantity::CLMC if lambda == 0.5 => AsymptoticValue::from_value(PI / E * ln_n),
        Quantity::CLMC => AsymptoticValue::from_log(
            -2.0 * lambda * LN_2 - 1.0 + 3f64.ln() - 0.5 * LN_PI + gamma_ratio()?,
        ),
        _ => unreachable!("gegenbauer_formula rejects other quantities"),
    };
    Ok(v)
}

/// `λ → ∞` asymptotic of a Gegenbauer measure at fixed `n`.
///
/// [`Quantity::NpNorm`] needs `p`; use [`gegenbauer_np_asymptotic`].
pub fn gegenbauer_parameter_asymptotic(quantity: Quantity, n: usize, lambda: f64) -> Result<AsymptoticValue> {
    gegenbauer_formula(quantity, Regime::ParameterToInfinity, lambda)?;
    let nf = n as f64;
    let ln_l = lambda.ln();
    let ln_nfact = log_factorial(n);
    let v = match quantity {
        Quantity::Fisher => AsymptoticValue::from_log((4.0 * nf + 2.0).ln() + ln_l),
        Quantity::ShannonE | Quantity::ShannonS => {
            AsymptoticValue::from_value(2.0 * (nf * (ln_l + LN_2) - ln_nfact))
        }
        Quantity::ShannonPower => AsymptoticValue::from_log(2.0 * nf * (LN_2 + ln_l) - 2.0 * ln_nfact),
        Quantity::W2 => AsymptoticValue::from_log(
            log_gamma(2.0 * nf + 0.5)? - 0.5 * LN_2 - LN_PI - 2.0 * ln_nfact + 0.5 * ln_l,
        ),
        Quantity::CFS => AsymptoticValue::from_log(
            4.0 * nf * LN_2 + (2.0 * nf + 1.0).ln() - 4.0 * ln_nfact - LN_PI - 1.0
                + (4.0 * nf + 1.0) * ln_l,
        ),
        Quantity::CLMC => AsymptoticValue::from_log(
            0.5 * (nf - 1.0) * LN_2 + log_gamma(2.0 * nf + 0.5)? - LN_PI - 2.5 * ln_nfact
                + 0.5 * (nf + 1.0) * ln_l,
        ),
        Quantity::NpNorm => {
            return Err(Error::InvalidInput(
                "the N_p norm takes p; use gegenbauer_np_asymptotic".into(),
            ))
        }
        _ => unreachable!("gegenbauer_formula rejects other quantities"),
    };
    Ok(v)
}

fn check_np(n: usize, lambda: f64, p: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::InvalidInput(format!("p must be positive, got {p}")));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("lambda must be positive, got {lambda}")));
    }
    let _ = n;
    Ok(())
}

/// `ln 𝒩_p` with `𝒩_p = ∫ (1−x²)^{λ−½} |C_n^{(λ)}|^p dx ∼ [C_n^{(λ)}(1)]^p
/// ∫ (1−x²)^{λ−½} |x|^{np} dx`, the Beta integral written out:
/// `[C_n(1)]^p Γ((1+np)/2) Γ(λ+½) / Γ(1+λ+np/2)`.
pub fn gegenbauer_np_asymptotic(n: usize, lambda: f64, p: f64) -> Result<f64> {
    check_np(n, lambda, p)?;
    let np = n as f64 * p;
    Ok(p * log_gegenbauer_at_one(n, lambda) + log_gamma(0.5 * (1.0 + np))? + log_gamma(lambda + 0.5)?
        - log_gamma(1.0 + lambda + 0.5 * np)?)
}

/// [`gegenbauer_np_asymptotic`] with the tabulated `Γ(½+n)` in place of
/// `Γ(λ+½)`. Wrong by the factor `Γ(λ+½)/Γ(n+½)` (e.g. `𝒩_p` of `C_0^{(1/2)}`
/// comes out `2√π` instead of 2); kept for comparison.
pub fn gegenbauer_np_asymptotic_printed(n: usize, lambda: f64, p: f64) -> Result<f64> {
    check_np(n, lambda, p)?;
    let nf = n as f64;
    let np = nf * p;
    Ok(p * log_gegenbauer_at_one(n, lambda) + log_gamma(0.5 * (1.0 + np))? + log_gamma(0.5 + nf)?
        - log_gamma(1.0 + lambda + 0.5 * np)?)
}

/// Formula metadata for a family kind, with `n`-dependent exponents filled in.
pub fn formula(
    family: FamilyKind,
    regime: Regime,
    quantity: Quantity,
    n: usize,
    param: f64,
) -> Result<AsymptoticFormula> {
    let mut f = match family {
        FamilyKind::Laguerre => laguerre_formula(quantity, regime, param)?,
        FamilyKind::Gegenbauer => gegenbauer_formula(quantity, regime, param)?,
        other => {
            return Err(Error::Unsupported(format!(
                "no tabulated asymptotics for {}",
                other.name()
            )))
        }
    };
    if regime == Regime::ParameterToInfinity && f.predicted_exponent.is_none() {
        f.predicted_exponent = match family {
            FamilyKind::Laguerre => laguerre_param_exponent(quantity, n),
            _ => gegenbauer_param_exponent(quantity, n),
        };
    }
    Ok(f)
}

/// Dispatch to the family/regime evaluator.
pub fn asymptotic(
    family: FamilyKind,
    regime: Regime,
    quantity: Quantity,
    n: usize,
    param: f64,
) -> Result<AsymptoticValue> {
    match (family, regime) {
        (FamilyKind::Laguerre, Regime::DegreeToInfinity) => laguerre_degree_asymptotic(quantity, n, param),
        (FamilyKind::Laguerre, Regime::ParameterToInfinity) => {
            laguerre_parameter_asymptotic(quantity, n, param)
        }
        (FamilyKind::Gegenbauer, Regime::DegreeToInfinity) => {
            gegenbauer_degree_asymptotic(quantity, n, param)
        }
        (FamilyKind::Gegenbauer, Regime::ParameterToInfinity) => {
            gegenbauer_parameter_asymptotic(quantity, n, param)
        }
        (other, _) => Err(Error::Unsupported(format!(
            "no tabulated asymptotics for {}",
            other.name()
        ))),
    }
}
