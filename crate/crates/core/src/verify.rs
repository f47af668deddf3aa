//! Sweeps of exact measures along degree or parameter grids, comparison
//! against the tabulated asymptotics, and scaling-exponent fits.
//!
//! Grid points are evaluated in parallel and collected in grid order, so
//! reports are deterministic.

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::{self, AsymptoticValue, Quantity, Regime};
use crate::error::{Error, Result};
use crate::measures::{self, Measure, MeasureValue};
use crate::ortho::{self, log_norm_kappa, FamilyKind, PolynomialFamily};
use crate::quadrature::{self, AdaptiveOptions};

/// Minimum number of points for an exponent fit.
pub const MIN_FIT_POINTS: usize = 4;
/// Absolute slack in the "non-increasing |ratio − 1|" test, so that rounding
/// noise around an already converged ratio does not break the verdict.
const MONOTONE_SLACK: f64 = 1e-12;
/// Allowance added to `3·stderr` before an exponent is called discrepant.
const EXPONENT_SLACK: f64 = 0.02;

/// What is swept: one measure of one family, with either the degree or the
/// (first) weight parameter running over the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub family: FamilyKind,
    pub measure: Measure,
    /// Order of the Rényi entropy / entropic moment (`W_2` is `q = 2`).
    pub q: Option<f64>,
    /// `DegreeToInfinity` sweeps `n`, `ParameterToInfinity` sweeps the parameter.
    pub swept: Regime,
    /// Fixed degree (ignored when the degree is swept).
    pub n: usize,
    /// Fixed first parameter (ignored when the parameter is swept).
    pub param: Option<f64>,
    /// Jacobi β, always fixed.
    pub param2: Option<f64>,
}

impl SweepSpec {
    /// The measure matching an asymptotic quantity, if there is one.
    pub fn for_quantity(
        family: FamilyKind,
        quantity: Quantity,
        swept: Regime,
        n: usize,
        param: Option<f64>,
    ) -> Result<SweepSpec> {
        let measure = quantity.measure().ok_or_else(|| {
            Error::Unsupported(format!("no exact measure for quantity {}", quantity.name()))
        })?;
        Ok(SweepSpec {
            family,
            measure,
            q: (quantity == Quantity::W2).then_some(2.0),
            swept,
            n,
            param,
            param2: None,
        })
    }

    /// Degree and family at grid coordinate `t`.
    pub fn point(&self, t: f64) -> Result<(PolynomialFamily, usize)> {
        let (n, param) = match self.swept {
            Regime::DegreeToInfinity => {
                if !(t >= 0.0) || t.fract() != 0.0 || t > u32::MAX as f64 {
                    return Err(Error::InvalidInput(format!(
                        "degree grid values must be non-negative integers, got {t}"
                    )));
                }
                (t as usize, self.param)
            }
            Regime::ParameterToInfinity => (self.n, Some(t)),
        };
        let need = |p: Option<f64>, what: &str| {
            p.ok_or_else(|| Error::InvalidInput(format!("{} needs {what}", self.family.name())))
        };
        let family = match self.family {
            FamilyKind::Hermite => {
                if self.swept == Regime::ParameterToInfinity {
                    return Err(Error::InvalidInput("hermite has no parameter to sweep".into()));
                }
                PolynomialFamily::Hermite
            }
            FamilyKind::Laguerre => PolynomialFamily::Laguerre {
                alpha: need(param, "alpha")?,
            },
            FamilyKind::Gegenbauer => PolynomialFamily::Gegenbauer {
                lambda: need(param, "lambda")?,
            },
            FamilyKind::Jacobi => PolynomialFamily::Jacobi {
                alpha: need(param, "alpha")?,
                beta: need(self.param2, "beta")?,
            },
        };
        family.validate()?;
        Ok((family, n))
    }
}

/// One grid point of a series. Values are kept both plainly and as
/// `sign · e^{ln_abs}`, since some asymptotics overflow doubles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub t: f64,
    pub n: usize,
    pub param: Option<f64>,
    pub param2: Option<f64>,
    pub value: f64,
    pub sign: f64,
    pub ln_abs: f64,
    pub method: String,
    pub error_estimate: f64,
    /// Regime tag of a divergent value.
    pub regime: Option<String>,
    /// Why this point could not be computed.
    pub failure: Option<String>,
}

impl SweepPoint {
    fn blank(spec: &SweepSpec, t: f64) -> SweepPoint {
        let (n, param) = match spec.swept {
            Regime::DegreeToInfinity => (t.max(0.0) as usize, spec.param),
            Regime::ParameterToInfinity => (spec.n, Some(t)),
        };
        SweepPoint {
            t,
            n,
            param,
            param2: spec.param2,
            value: f64::NAN,
            sign: 0.0,
            ln_abs: f64::NAN,
            method: String::new(),
            error_estimate: 0.0,
            regime: None,
            failure: None,
        }
    }

    fn with_measure(mut self, v: MeasureValue) -> SweepPoint {
        self.value = v.value;
        self.sign = if v.value == 0.0 { 0.0 } else { v.value.signum() };
        self.ln_abs = v.value.abs().ln();
        self.method = v.method.name().to_string();
        self.error_estimate = v.error_estimate;
        self.regime = v.regime;
        self
    }

    fn with_log(mut self, v: AsymptoticValue, method: &str) -> SweepPoint {
        self.value = v.value();
        self.sign = v.sign;
        self.ln_abs = v.ln_abs;
        self.method = method.to_string();
        self
    }

    fn with_failure(mut self, e: &Error) -> SweepPoint {
        self.failure = Some(e.to_string());
        self
    }

    /// Computed, non-divergent and representable at least in log form.
    pub fn is_usable(&self) -> bool {
        self.failure.is_none()
            && self.regime.is_none()
            && self.sign != 0.0
            && self.ln_abs.is_finite()
    }

    pub fn is_divergent(&self) -> bool {
        self.failure.is_none() && self.regime.is_some()
    }
}

/// A series of values on an ascending grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSeries {
    pub spec: SweepSpec,
    /// Label of what the values are ("fisher", "asymptotic fisher", ...).
    pub quantity: String,
    pub grid: Vec<f64>,
    pub values: Vec<SweepPoint>,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty grid".into()));
    }
    if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput("grid must be finite and strictly ascending".into()));
    }
    Ok(())
}

/// Evaluate the swept measure at every grid point. Failures are recorded per
/// point and do not abort the sweep.
pub fn sweep(spec: &SweepSpec, grid: &[f64], opts: &AdaptiveOptions) -> Result<SweepSeries> {
    check_grid(grid)?;
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be > 0, got {}", opts.tol)));
    }
    let values = grid
        .par_iter()
        .map(|&t| {
            let blank = SweepPoint::blank(spec, t);
            match spec
                .point(t)
                .and_then(|(family, n)| measures::compute(spec.measure, &family, n, spec.q, opts))
            {
                Ok(v) => blank.with_measure(v),
                Err(e) => blank.with_failure(&e),
            }
        })
        .collect();
    Ok(SweepSeries {
        spec: spec.clone(),
        quantity: spec.measure.name().to_string(),
        grid: grid.to_vec(),
        values,
    })
}

/// Exact `ln κ_n` along the grid (the norm has no density measure).
pub fn sweep_kappa(spec: &SweepSpec, grid: &[f64]) -> Result<SweepSeries> {
    check_grid(grid)?;
    let values = grid
        .iter()
        .map(|&t| {
            let blank = SweepPoint::blank(spec, t);
            match spec.point(t).and_then(|(family, n)| log_norm_kappa(&family, n)) {
                Ok(ln) => blank.with_log(AsymptoticValue { sign: 1.0, ln_abs: ln }, "closed_form"),
                Err(e) => blank.with_failure(&e),
            }
        })
        .collect();
    Ok(SweepSeries {
        spec: spec.clone(),
        quantity: Quantity::KappaNorm.name().to_string(),
        grid: grid.to_vec(),
        values,
    })
}

/// The tabulated asymptotic of `quantity` along the same grid.
pub fn asymptotic_series(spec: &SweepSpec, quantity: Quantity, grid: &[f64]) -> Result<SweepSeries> {
    check_grid(grid)?;
    let values = grid
        .iter()
        .map(|&t| {
            let blank = SweepPoint::blank(spec, t);
            let v = spec.point(t).and_then(|(family, n)| {
                let param = family.param().unwrap_or(0.0);
                asymptotics::asymptotic(spec.family, spec.swept, quantity, n, param)
            });
            match v {
                Ok(v) => blank.with_log(v, "asymptotic"),
                Err(e) => blank.with_failure(&e),
            }
        })
        .collect();
    Ok(SweepSeries {
        spec: spec.clone(),
        quantity: format!("asymptotic {}", quantity.name()),
        grid: grid.to_vec(),
        values,
    })
}

/// Least-squares slope of `y` on `x` and its standard error.
fn ols_slope(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let m = points.len();
    if m < MIN_FIT_POINTS {
        return Err(Error::InsufficientPoints {
            needed: MIN_FIT_POINTS,
            got: m,
        });
    }
    let mf = m as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / mf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / mf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if !(sxx > 0.0) {
        return Err(Error::InvalidInput("exponent fit needs distinct grid values".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let stderr = (ssr / (mf - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}

fn log_points<'a>(series: &'a SweepSeries) -> impl Iterator<Item = (f64, &'a SweepPoint)> + 'a {
    series
        .grid
        .iter()
        .zip(&series.values)
        .filter(|(_, v)| v.is_usable())
        .map(|(&t, v)| (t, v))
}

/// OLS slope of `ln value` against `ln grid` over all usable points, with
/// its standard error from the residuals.
pub fn fit_scaling_exponent(series: &SweepSeries) -> Result<(f64, f64)> {
    let pts: Vec<(f64, &SweepPoint)> = log_points(series).collect();
    if let Some((t, _)) = pts.iter().find(|(t, v)| v.sign < 0.0 || *t <= 0.0) {
        return Err(Error::Domain(format!(
            "exponent fit needs positive values and grid points (at {t})"
        )));
    }
    let xy: Vec<(f64, f64)> = pts.iter().map(|(t, v)| (t.ln(), v.ln_abs)).collect();
    ols_slope(&xy)
}

/// How an exact series relates to its asymptotic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    RatioConverges,
    LogRatioConverges,
    ExponentMatches,
    Discrepant,
}

/// Exact vs asymptotic comparison along one grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub spec: SweepSpec,
    pub grid: Vec<f64>,
    pub exact: Vec<Option<f64>>,
    pub asymptotic: Vec<Option<f64>>,
    /// exact / asymptotic.
    pub ratios: Vec<Option<f64>>,
    /// ln exact / ln asymptotic, where both logs are defined and nonzero.
    pub log_ratios: Vec<Option<f64>>,
    /// Slope of ln exact vs ln grid over the top half of the usable points.
    pub fitted_exponent: Option<f64>,
    pub exponent_stderr: Option<f64>,
    pub predicted_exponent: Option<f64>,
    pub verdict: Verdict,
}

fn plain(v: &SweepPoint) -> Option<f64> {
    if v.failure.is_some() {
        None
    } else if v.regime.is_some() {
        Some(f64::INFINITY)
    } else if v.value.is_finite() {
        Some(v.value)
    } else {
        None
    }
}

fn ratio(e: &SweepPoint, a: &SweepPoint) -> Option<f64> {
    if !e.is_usable() || !a.is_usable() {
        return None;
    }
    Some(e.sign * a.sign * (e.ln_abs - a.ln_abs).exp())
}

fn log_ratio(e: &SweepPoint, a: &SweepPoint) -> Option<f64> {
    if !e.is_usable() || !a.is_usable() || e.sign < 0.0 || a.sign < 0.0 {
        return None;
    }
    (e.ln_abs != 0.0 && a.ln_abs != 0.0).then(|| e.ln_abs / a.ln_abs)
}

/// `|r − 1| < tol` at the last point and non-increasing over the last three.
fn converges(rs: &[Option<f64>], tol: f64) -> bool {
    if rs.len() < 3 {
        return false;
    }
    let tail: Option<Vec<f64>> = rs[rs.len() - 3..].iter().map(|r| r.map(|r| (r - 1.0).abs())).collect();
    match tail {
        Some(d) => d[2] < tol && d[1] <= d[0] + MONOTONE_SLACK && d[2] <= d[1] + MONOTONE_SLACK,
        None => false,
    }
}

/// Compare an exact series with its asymptotic.
///
/// The verdict is the first of RatioConverges, LogRatioConverges,
/// ExponentMatches (`|fit − predicted| < 3·stderr + 0.02`) that holds, else
/// Discrepant.
pub fn convergence_report(
    exact: &SweepSeries,
    asymptotic: &SweepSeries,
    predicted_exponent: Option<f64>,
    tol: f64,
) -> Result<ConvergenceReport> {
    if exact.grid != asymptotic.grid {
        return Err(Error::GridMismatch(format!(
            "exact grid has {} points, asymptotic grid {} (or values differ)",
            exact.grid.len(),
            asymptotic.grid.len()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be > 0, got {tol}")));
    }
    let usable: Vec<(f64, &SweepPoint)> = log_points(exact).collect();
    if usable.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientPoints {
            needed: MIN_FIT_POINTS,
            got: usable.len(),
        });
    }
    let top = usable.len().div_ceil(2).max(MIN_FIT_POINTS);
    let top = &usable[usable.len() - top..];
    let fit = if top.iter().all(|(t, v)| v.sign > 0.0 && *t > 0.0) {
        let xy: Vec<(f64, f64)> = top.iter().map(|(t, v)| (t.ln(), v.ln_abs)).collect();
        ols_slope(&xy).ok()
    } else {
        None
    };

    let pairs = || exact.values.iter().zip(&asymptotic.values);
    let ratios: Vec<Option<f64>> = pairs().map(|(e, a)| ratio(e, a)).collect();
    let log_ratios: Vec<Option<f64>> = pairs().map(|(e, a)| log_ratio(e, a)).collect();

    let verdict = if converges(&ratios, tol) {
        Verdict::RatioConverges
    } else if converges(&log_ratios, tol) {
        Verdict::LogRatioConverges
    } else if matches!(
        (fit, predicted_exponent),
        (Some((k, s)), Some(p)) if (k - p).abs() < 3.0 * s + EXPONENT_SLACK
    ) {
        Verdict::ExponentMatches
    } else {
        Verdict::Discrepant
    };

    Ok(ConvergenceReport {
        spec: exact.spec.clone(),
        grid: exact.grid.clone(),
        exact: exact.values.iter().map(plain).collect(),
        asymptotic: asymptotic.values.iter().map(plain).collect(),
        ratios,
        log_ratios,
        fitted_exponent: fit.map(|f| f.0),
        exponent_stderr: fit.map(|f| f.1),
        predicted_exponent,
        verdict,
    })
}

/// Everything `verify` produces for one (family, regime, quantity) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub exact: SweepSeries,
    pub asymptotic: SweepSeries,
    pub report: ConvergenceReport,
}

/// Sweep the exact measure and its asymptotic on `grid` and compare them.
/// The predicted exponent is the tabulated one unless overridden.
pub fn verify(
    spec: &SweepSpec,
    quantity: Quantity,
    grid: &[f64],
    predicted_exponent: Option<f64>,
    tol: f64,
    opts: &AdaptiveOptions,
) -> Result<Verification> {
    let exact = if quantity == Quantity::KappaNorm {
        sweep_kappa(spec, grid)?
    } else {
        sweep(spec, grid, opts)?
    };
    let asymptotic = asymptotic_series(spec, quantity, grid)?;
    let predicted = match predicted_exponent {
        Some(p) => Some(p),
        None => {
            let (n, param) = match spec.swept {
                Regime::DegreeToInfinity => (grid[grid.len() - 1].max(0.0) as usize, spec.param),
                Regime::ParameterToInfinity => (spec.n, Some(grid[grid.len() - 1])),
            };
            asymptotics::formula(spec.family, spec.swept, quantity, n, param.unwrap_or(0.0))?
                .predicted_exponent
        }
    };
    let report = convergence_report(&exact, &asymptotic, predicted, tol)?;
    Ok(Verification {
        exact,
        asymptotic,
        report,
    })
}

/// One row of the Gegenbauer integral-functional audit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IAuditRow {
    pub n: usize,
    pub lambda: f64,
    /// `−∫ ρ ln h` by quadrature.
    pub oracle: f64,
    /// The closed form used by the library.
    pub implementation: f64,
    /// The printed expression, then divided by `κ_n`.
    pub printed: f64,
    pub printed_over_kappa: f64,
    pub implementation_rel_err: f64,
    pub printed_over_kappa_rel_err: f64,
}

/// Compare the printed Gegenbauer `I` expression with the library's closed
/// form and with quadrature.
pub fn gegenbauer_i_audit(ns: &[usize], lambdas: &[f64], opts: &AdaptiveOptions) -> Result<Vec<IAuditRow>> {
    let cases: Vec<(usize, f64)> = lambdas
        .iter()
        .flat_map(|&l| ns.iter().map(move |&n| (n, l)))
        .collect();
    cases
        .par_iter()
        .map(|&(n, lambda)| {
            let family = PolynomialFamily::Gegenbauer { lambda };
            let oracle = measures::integral_i_numeric(&family, n, opts)?.value;
            let implementation = measures::integral_i_closed(&family, n)?.value;
            let printed = measures::gegenbauer_i_printed(n, lambda)?;
            let printed_over_kappa = printed / log_norm_kappa(&family, n)?.exp();
            let rel = |v: f64| ((v - oracle) / oracle).abs();
            Ok(IAuditRow {
                n,
                lambda,
                oracle,
                implementation,
                printed,
                printed_over_kappa,
                implementation_rel_err: rel(implementation),
                printed_over_kappa_rel_err: rel(printed_over_kappa),
            })
        })
        .collect()
}

/// `ln ∫₀^∞ x^{μ−1} e^{−λx} |L_m^{(α)}(x)|^κ dx` by adaptive quadrature, the
/// exact side of [`asymptotics::laguerre_renyi_functional_asymptotic`].
///
/// `L_m^{(α)}` is the standard (unnormalised) Laguerre polynomial. The
/// integrand is scaled by its value at the peak of `x^{μ−1}e^{−λx}` and split
/// at the polynomial's zeros and at several widths around the peak.
pub fn laguerre_renyi_functional_numeric(
    mu: f64,
    lam: f64,
    kap: f64,
    m: usize,
    alpha: f64,
    opts: &AdaptiveOptions,
) -> Result<f64> {
    for (name, v) in [("mu", mu), ("lambda", lam), ("kappa", kap)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
        }
    }
    let family = PolynomialFamily::Laguerre { alpha };
    family.validate()?;
    let laguerre = |x: f64| {
        let (mut prev, mut cur) = (1.0, 1.0 + alpha - x);
        if m == 0 {
            return 1.0;
        }
        for k in 1..m {
            let k = k as f64;
            let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
            prev = cur;
            cur = next;
        }
        cur
    };
    let log_f = |x: f64| (mu - 1.0) * x.ln() - lam * x + kap * laguerre(x).abs().ln();
    let peak = ((mu - 1.0) / lam).max(0.0);
    let width = mu.sqrt() / lam;
    let mut breakpoints = ortho::zeros(&family, m)?;
    breakpoints.extend(
        (-8..=8)
            .map(|k| peak + k as f64 * width)
            .filter(|&x| x > 0.0),
    );
    let scale = match log_f(peak.max(width)) {
        s if s.is_finite() => s,
        _ => breakpoints
            .iter()
            .map(|&x| log_f(x))
            .filter(|v| v.is_finite())
            .fold(f64::NEG_INFINITY, f64::max),
    };
    let support = family.support();
    let r = quadrature::integrate_adaptive(
        |x| {
            let v = log_f(x);
            if v == f64::NEG_INFINITY {
                0.0
            } else {
                (v - scale).exp()
            }
        },
        &support,
        &breakpoints,
        opts,
    )?;
    Ok(r.value.ln() + scale)
}

/// Geometric grid `start, start·factor, ...` up to `stop` (inclusive within
/// rounding).
pub fn geometric_grid(start: f64, stop: f64, factor: f64) -> Result<Vec<f64>> {
    if !(start > 0.0 && stop >= start && factor > 1.0) || !stop.is_finite() {
        return Err(Error::InvalidInput(format!(
            "geometric grid needs 0 < start <= stop and factor > 1, got {start}:{stop}:{factor}"
        )));
    }
    let steps = ((stop / start).ln() / factor.ln() + 1e-9).floor() as i32;
    Ok((0..=steps).map(|k| start * factor.powi(k)).collect())
}

/// Outcome of one invariant check of [`invariant_suite`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check_close(what: &str, got: f64, want: f64, rel: f64) -> std::result::Result<(), String> {
    let err = if want == 0.0 { got.abs() } else { ((got - want) / want).abs() };
    if err <= rel {
        Ok(())
    } else {
        Err(format!("{what}: got {got:e}, want {want:e} (rel err {err:e} > {rel:e})"))
    }
}

fn run_check(
    name: &'static str,
    f: impl FnOnce() -> std::result::Result<(), String>,
) -> InvariantCheck {
    match f() {
        Ok(()) => InvariantCheck {
            name,
            passed: true,
            detail: String::new(),
        },
        Err(detail) => InvariantCheck {
            name,
            passed: false,
            detail,
        },
    }
}

/// A quick cross-module invariant suite (a few seconds).
pub fn invariant_suite(opts: &AdaptiveOptions) -> Vec<InvariantCheck> {
    use crate::ortho::eval_orthonormal;
    use crate::quadrature::gauss_rule;
    use std::f64::consts::{E, LN_2};

    let e = |err: Error| err.to_string();
    let families = [
        PolynomialFamily::Hermite,
        PolynomialFamily::Laguerre { alpha: 0.0 },
        PolynomialFamily::Laguerre { alpha: 2.5 },
        PolynomialFamily::Jacobi { alpha: 0.4, beta: -0.3 },
        PolynomialFamily::Gegenbauer { lambda: 0.75 },
        PolynomialFamily::Gegenbauer { lambda: -0.3 },
    ];
    let mut checks = Vec::new();

    checks.push(run_check("orthonormality", || {
        let m = 8;
        for f in &families {
            let rule = gauss_rule(f, m + 1).map_err(e)?;
            let vals: Vec<Vec<f64>> = rule
                .nodes
                .iter()
                .map(|&x| eval_orthonormal(f, m, x).map(|v| v.iter().map(|s| s.value()).collect()))
                .collect::<Result<_>>()
                .map_err(e)?;
            let w = rule.weights();
            for j in 0..=m {
                for k in 0..=j {
                    let g: f64 = vals.iter().zip(&w).map(|(v, w)| w * v[j] * v[k]).sum();
                    let want = if j == k { 1.0 } else { 0.0 };
                    if (g - want).abs() > 1e-11 {
                        return Err(format!("{f:?}: <p{j},p{k}> = {g:e}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("density_normalized", || {
        for f in &families {
            for n in [0, 3, 9] {
                let w1 = measures::entropic_moment_wq_adaptive(f, n, 1.0, opts).map_err(e)?;
                check_close(&format!("{f:?} n={n} int rho"), w1.value, 1.0, 1e-9)?;
            }
        }
        Ok(())
    }));

    checks.push(run_check("fisher_closed_vs_numeric", || {
        for f in [
            PolynomialFamily::Laguerre { alpha: 2.0 },
            PolynomialFamily::Gegenbauer { lambda: 2.0 },
            PolynomialFamily::Jacobi { alpha: 2.0, beta: 1.5 },
        ] {
            for n in [0, 4] {
                let c = measures::fisher_closed(&f, n).map_err(e)?.value;
                let q = measures::fisher_numeric(&f, n, opts).map_err(e)?.value;
                check_close(&format!("{f:?} n={n} F"), q, c, 1e-6)?;
            }
        }
        let d = measures::fisher_numeric(&PolynomialFamily::Laguerre { alpha: 0.5 }, 2, opts).map_err(e)?;
        if !d.is_divergent() {
            return Err(format!("Laguerre alpha=0.5 Fisher not flagged divergent: {}", d.value));
        }
        Ok(())
    }));

    checks.push(run_check("trivial_anchors", || {
        let l0 = PolynomialFamily::Laguerre { alpha: 0.0 };
        let g = PolynomialFamily::Gegenbauer { lambda: 0.5 };
        let c = |m, f: &PolynomialFamily| measures::compute(m, f, 0, None, opts).map(|v| v.value).map_err(e);
        check_close("Laguerre S", c(Measure::ShannonS, &l0)?, 1.0, 1e-10)?;
        check_close("Laguerre W2", c(Measure::EntropicMomentWq, &l0)?, 0.5, 1e-10)?;
        check_close("Laguerre LMC", c(Measure::Lmc, &l0)?, E / 2.0, 1e-10)?;
        check_close("Gegenbauer S", c(Measure::ShannonS, &g)?, LN_2, 1e-10)?;
        check_close("Gegenbauer LMC", c(Measure::Lmc, &g)?, 1.0, 1e-10)
    }));

    checks.push(run_check("w2_dual_path", || {
        // W_2 diverges for the last family ((1−x²)^{2λ−1} with λ < 0).
        for f in &families[..5] {
            for n in [1, 5] {
                let exact = measures::log_entropic_moment_exact(f, n, 2.0).map_err(e)?.exp();
                let adaptive = measures::entropic_moment_wq_adaptive(f, n, 2.0, opts).map_err(e)?.value;
                check_close(&format!("{f:?} n={n} W2"), adaptive, exact, 1e-10)?;
            }
        }
        Ok(())
    }));

    checks.push(run_check("renyi_to_shannon", || {
        for f in &families[..3] {
            let s = measures::shannon_s(f, 2, opts).map_err(e)?.value;
            for q in [0.999, 1.001] {
                let r = measures::renyi_entropy(f, 2, q, opts).map_err(e)?.value;
                if (r - s).abs() > 1e-2 {
                    return Err(format!("{f:?}: R_{q} = {r}, S = {s}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("lmc_lower_bound", || {
        for f in &families[..5] {
            let v = measures::lmc(f, 3, opts).map_err(e)?.value;
            if !(v >= 1.0 - 1e-12) {
                return Err(format!("{f:?}: C_LMC = {v} < 1"));
            }
        }
        Ok(())
    }));

    checks.push(run_check("asymptotic_branches_partition", || {
        for i in 0..400 {
            let alpha = -0.99 + 0.01 * i as f64;
            let ok = asymptotics::laguerre_degree_asymptotic(Quantity::Fisher, 10, alpha);
            let expect_branch = alpha == 0.0 || alpha > 1.0;
            match (ok, expect_branch) {
                (Ok(v), true) if v.value() > 0.0 => {}
                (Err(Error::OutOfBranch(_)), false) => {}
                (r, _) => return Err(format!("alpha={alpha}: {r:?}")),
            }
        }
        Ok(())
    }));

    checks.push(run_check("asymptotic_products", || {
        for n in 0..4 {
            let alpha = 1e3;
            let p = |q| {
                asymptotics::laguerre_parameter_asymptotic(q, n, alpha)
                    .map(|v| v.ln_abs)
                    .map_err(e)
            };
            check_close(
                "CLMC = W2 LS",
                p(Quantity::CLMC)?,
                p(Quantity::W2)? + p(Quantity::ShannonPower)?,
                1e-12,
            )?;
        }
        Ok(())
    }));

    checks
}
