//! Gauss rules for the classical weights (and their powers), and adaptive
//! integration with zero-aware subdivision.
//!
//! Classical rules take their nodes from the Jacobi-matrix eigenvalues and
//! their weights from the Christoffel function `1/Σ_{k<N} q_k(x_i)²`, kept in
//! log form so that rules with thousands of points on (0, ∞) do not underflow.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ortho::{jacobi_log_mass, Evaluator, Interval, PolynomialFamily, SupportPoint};
use crate::special::{ln_gamma_pos, ln_gamma_ratio_pos};

const HALF_LN_PI: f64 = 0.572_364_942_924_700_1;

/// Gauss rule for a classical weight `h` of total mass `e^{log_mass}`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub weight: PolynomialFamily,
    pub order: usize,
    pub nodes: Vec<f64>,
    /// Weights of the unit-mass rule, `ln λ_i` with `Σ λ_i = 1`.
    pub log_unit_weights: Vec<f64>,
    pub log_mass: f64,
}

impl QuadratureRule {
    /// Weights against the weight itself (may underflow for large rules).
    pub fn weights(&self) -> Vec<f64> {
        self.log_unit_weights
            .iter()
            .map(|w| (w + self.log_mass).exp())
            .collect()
    }

    /// `∫ f h dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = Neumaier::default();
        for (x, lw) in self.nodes.iter().zip(&self.log_unit_weights) {
            acc.add((lw + self.log_mass).exp() * f(*x));
        }
        acc.sum()
    }
}

/// Gauss rule of `order` points for the weight of `family`.
pub fn gauss_rule(family: &PolynomialFamily, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidInput("quadrature order must be >= 1".into()));
    }
    let ev = Evaluator::new(family, order)?;
    let nodes = ev.zeros()?;
    let log_unit_weights: Vec<f64> = nodes
        .par_iter()
        .map(|&x| -ev.log_christoffel_sum(x, order))
        .collect();
    Ok(QuadratureRule {
        weight: *family,
        order,
        nodes,
        log_unit_weights,
        log_mass: ev.log_mass(),
    })
}

/// A Gauss rule for `h^q` after the affine substitution `y = scale · x`.
///
/// For `q_n = p̂_n √κ₀` of the original family,
/// `∫ (p̂_n² h)^q dx = e^{log_constant} Σ λ_i q_n(y_i/scale)^{2q}` with the
/// unit-mass weights `λ_i` of `rule`.
#[derive(Debug, Clone)]
pub struct ShiftedRule {
    pub rule: QuadratureRule,
    pub scale: f64,
    pub log_constant: f64,
}

/// The classical weight that `h^q` becomes, with the substitution data.
/// Returns `(weight, scale, log_constant)`.
pub fn shifted_weight(family: &PolynomialFamily, q: f64) -> Result<(PolynomialFamily, f64, f64)> {
    family.validate()?;
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::InvalidInput(format!("q must be positive, got {q}")));
    }
    let invalid = |what: String| {
        Err(Error::Domain(format!(
            "h^q is not an admissible classical weight: {what}"
        )))
    };
    match *family {
        PolynomialFamily::Hermite => Ok((
            PolynomialFamily::Hermite,
            q.sqrt(),
            HALF_LN_PI - 0.5 * q.ln() - q * HALF_LN_PI,
        )),
        PolynomialFamily::Laguerre { alpha } => {
            let a = q * alpha;
            if a <= -1.0 {
                return invalid(format!("shifted alpha {a} <= -1"));
            }
            let log_constant = if q == 2.0 {
                // Γ(2α+1)/(Γ(α+1)² 2^{2α+1}) = Γ(α+½)/(2√π Γ(α+1)).
                ln_gamma_ratio_pos(alpha + 0.5, alpha + 1.0) - HALF_LN_PI - LN_2
            } else {
                ln_gamma_pos(a + 1.0) - (a + 1.0) * q.ln() - q * ln_gamma_pos(alpha + 1.0)
            };
            Ok((PolynomialFamily::Laguerre { alpha: a }, q, log_constant))
        }
        PolynomialFamily::Jacobi { alpha, beta } => {
            let (a, b) = (q * alpha, q * beta);
            if a <= -1.0 || b <= -1.0 {
                return invalid(format!("shifted parameters ({a}, {b}) not > -1"));
            }
            let log_constant = jacobi_log_mass(a, b) - q * jacobi_log_mass(alpha, beta);
            Ok((PolynomialFamily::Jacobi { alpha: a, beta: b }, 1.0, log_constant))
        }
        PolynomialFamily::Gegenbauer { lambda } => {
            let e = q * (lambda - 0.5);
            let shifted = e + 0.5;
            if shifted <= -0.5 {
                return invalid(format!("shifted lambda {shifted} <= -1/2"));
            }
            let log_constant = jacobi_log_mass(e, e) - q * jacobi_log_mass(lambda - 0.5, lambda - 0.5);
            let weight = if shifted == 0.0 {
                PolynomialFamily::Jacobi { alpha: e, beta: e }
            } else {
                PolynomialFamily::Gegenbauer { lambda: shifted }
            };
            Ok((weight, 1.0, log_constant))
        }
    }
}

/// Exact rule for the entropic moment `W_q = ∫ ρ_n^q dx`.
///
/// Available when `q` is a positive integer (the integrand `q_n^{2q}` is then a
/// polynomial of degree `2qn`) or when `n = 0` (constant polynomial).
pub fn shifted_rule_for_entropic_moment(
    family: &PolynomialFamily,
    n: usize,
    q: f64,
) -> Result<ShiftedRule> {
    let (weight, scale, log_constant) = shifted_weight(family, q)?;
    let order = if n == 0 {
        1
    } else if q.fract() == 0.0 {
        (q as usize) * n + 1
    } else {
        return Err(Error::Unsupported(format!(
            "no exact rule for non-integer q = {q} at n = {n}"
        )));
    };
    Ok(ShiftedRule {
        rule: gauss_rule(&weight, order)?,
        scale,
        log_constant,
    })
}

/// Compensated (Kahan–Babuška–Neumaier) accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        if !self.sum.is_finite() {
            // The compensation is meaningless (inf − inf) once the sum overflows.
            return self.sum;
        }
        self.sum + self.compensation
    }
}

pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    for v in values {
        acc.add(v);
    }
    acc.sum()
}

/// `ln Σ e^{v_i}`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + neumaier_sum(values.iter().map(|v| (v - max).exp())).ln()
}

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug)]
pub struct LegendreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Cached Gauss–Legendre rule, by Newton iteration from Tricomi's estimate.
pub fn gauss_legendre(order: usize) -> Arc<LegendreRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LegendreRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(build_legendre(order));
    cache
        .lock()
        .unwrap()
        .entry(order)
        .or_insert(rule)
        .clone()
}

fn build_legendre(n: usize) -> LegendreRule {
    let nf = n as f64;
    let half = n / 2;
    // Roots in the upper half, descending; mirrored afterwards.
    let upper: Vec<(f64, f64)> = (0..n.div_ceil(2))
        .into_par_iter()
        .map(|i| {
            let k = (i + 1) as f64;
            let theta = PI * (4.0 * k - 1.0) / (4.0 * nf + 2.0);
            let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 2.0 * f64::EPSILON * x.abs().max(1e-300) {
                    dp = legendre_with_derivative(n, x).1;
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x) * (1.0 + x) * dp * dp))
        })
        .collect();
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &(x, w) in upper[..half].iter() {
        nodes.push(-x);
        weights.push(w);
    }
    if n % 2 == 1 {
        nodes.push(0.0);
        weights.push(upper[half].1);
    }
    for &(x, w) in upper[..half].iter().rev() {
        nodes.push(x);
        weights.push(w);
    }
    LegendreRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Controls for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    /// Relative tolerance on the change between successive orders.
    pub tol: f64,
    /// Gauss–Legendre order of the first pass in every cell.
    pub base_order: usize,
    /// Maximum number of order doublings per cell.
    pub max_doublings: u32,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions {
            tol: 1e-10,
            base_order: 8,
            max_doublings: 12,
        }
    }
}

impl AdaptiveOptions {
    pub fn with_tol(tol: f64) -> Self {
        AdaptiveOptions {
            tol,
            ..Self::default()
        }
    }
}

/// Value and error estimate of a converged adaptive integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveResult {
    pub value: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy)]
enum Cell {
    Finite(f64, f64),
    /// `[a, ∞)` via `x = a + L s/(1−s)`.
    Upper(f64, f64),
    /// `(−∞, b]` via `x = b − L s/(1−s)`.
    Lower(f64, f64),
}

/// Sidi's polynomial transform `ψ(t) = 35t⁴ − 84t⁵ + 70t⁶ − 20t⁷` and `ψ'`.
fn sidi(t: f64) -> (f64, f64) {
    let t3 = t * t * t;
    let psi = t3 * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
    let u = 1.0 - t;
    (psi, 140.0 * t3 * u * u * u)
}

/// Largest tanh-sinh abscissa; beyond it the weights underflow.
const TANH_SINH_T_MAX: f64 = 6.5;

impl Cell {
    /// Integral over the cell at resolution `order`.
    ///
    /// Cells touching a finite end of the support use a tanh-sinh rule (step
    /// `4/order`), which converges for any integrable algebraic endpoint
    /// singularity; all other cells use an `order`-point Gauss–Legendre rule
    /// on the Sidi-transformed variable.
    fn estimate(
        &self,
        f: &(impl Fn(SupportPoint) -> f64 + Sync),
        support: &Interval,
        order: usize,
    ) -> f64 {
        if let Cell::Finite(a, b) = *self {
            if a == support.lower || b == support.upper {
                return tanh_sinh(f, support, a, b, 4.0 / order as f64);
            }
        }
        let rule = gauss_legendre(order);
        let mut acc = Neumaier::default();
        for (xi, wi) in rule.nodes.iter().zip(&rule.weights) {
            let t = 0.5 * (1.0 + xi);
            let w = 0.5 * wi;
            // ψ is evaluated from the nearer end of [0, 1]; distances to the
            // support ends are formed from that end so they keep full
            // relative accuracy where the integrand may be singular.
            let (s, ds, from_start) = if t <= 0.5 {
                let (p, d) = sidi(t);
                (p, d, true)
            } else {
                let (p, d) = sidi(1.0 - t);
                (p, d, false)
            };
            let contribution = match *self {
                Cell::Finite(a, b) => {
                    let offset = (b - a) * s;
                    let point = if from_start {
                        SupportPoint {
                            x: a + offset,
                            from_lower: (a - support.lower) + offset,
                            from_upper: (support.upper - a) - offset,
                        }
                    } else {
                        SupportPoint {
                            x: b - offset,
                            from_lower: (b - support.lower) - offset,
                            from_upper: (support.upper - b) + offset,
                        }
                    };
                    f(point) * (b - a) * ds
                }
                Cell::Upper(a, len) | Cell::Lower(a, len) => {
                    // u = ψ(t) ∈ [0, 1), with 1 − u available without cancellation.
                    let (u, one_minus) = if from_start { (s, 1.0 - s) } else { (1.0 - s, s) };
                    if one_minus == 0.0 {
                        continue;
                    }
                    let offset = len * u / one_minus;
                    let point = if matches!(self, Cell::Upper(..)) {
                        SupportPoint {
                            x: a + offset,
                            from_lower: (a - support.lower) + offset,
                            from_upper: f64::INFINITY,
                        }
                    } else {
                        SupportPoint {
                            x: a - offset,
                            from_lower: f64::INFINITY,
                            from_upper: (support.upper - a) + offset,
                        }
                    };
                    if !point.x.is_finite() {
                        continue;
                    }
                    let v = f(point);
                    if v == 0.0 {
                        continue;
                    }
                    v * ds * len / (one_minus * one_minus)
                }
            };
            acc.add(w * contribution);
        }
        acc.sum()
    }
}

/// Tanh-sinh rule with step `h` on `[a, b]`, distances to the ends formed from
/// `e^{∓2u}` so that nodes next to an end keep full relative accuracy.
fn tanh_sinh(
    f: &(impl Fn(SupportPoint) -> f64 + Sync),
    support: &Interval,
    a: f64,
    b: f64,
    h: f64,
) -> f64 {
    let width = b - a;
    let half_pi = 0.5 * PI;
    let mut acc = Neumaier::default();
    let steps = (TANH_SINH_T_MAX / h).floor() as i64;
    for k in -steps..=steps {
        let t = k as f64 * h;
        let u = half_pi * t.sinh();
        let e_neg = (-2.0 * u.abs()).exp();
        // Distances from the two ends of [a, b] (the small one computed directly).
        let small = width * e_neg / (1.0 + e_neg);
        if small == 0.0 {
            continue;
        }
        let large = width - small;
        let (da, db) = if u < 0.0 { (small, large) } else { (large, small) };
        let point = SupportPoint {
            x: if u < 0.0 { a + da } else { b - db },
            from_lower: (a - support.lower) + da,
            from_upper: (support.upper - b) + db,
        };
        // dx/dt = width/2 · (π/2) cosh t · sech² u.
        let sech2 = 4.0 * e_neg / ((1.0 + e_neg) * (1.0 + e_neg));
        let w = 0.5 * width * half_pi * t.cosh() * sech2;
        if w == 0.0 {
            continue;
        }
        let v = f(point);
        if v != 0.0 {
            acc.add(h * w * v);
        }
    }
    acc.sum()
}

fn build_cells(support: &Interval, breakpoints: &[f64]) -> Result<Vec<Cell>> {
    let mut points: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| support.contains_open(*x))
        .collect();
    if points.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("breakpoints must be finite".into()));
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    if support.lower.is_finite() {
        points.insert(0, support.lower);
    }
    if support.upper.is_finite() {
        points.push(support.upper);
    }
    if points.is_empty() {
        points.push(0.0);
    }
    let tail_len = if points.len() >= 2 {
        (points[points.len() - 1] - points[0]).max(f64::MIN_POSITIVE)
    } else {
        1.0
    };
    let mut cells = Vec::with_capacity(points.len() + 1);
    if support.lower == f64::NEG_INFINITY {
        cells.push(Cell::Lower(points[0], tail_len));
    }
    for w in points.windows(2) {
        if w[1] > w[0] {
            cells.push(Cell::Finite(w[0], w[1]));
        }
    }
    if support.upper == f64::INFINITY {
        cells.push(Cell::Upper(points[points.len() - 1], tail_len));
    }
    Ok(cells)
}

/// `∫ f dx` over `support`, split at `breakpoints`.
///
/// Each cell is integrated with Gauss–Legendre rules of doubling order on a
/// Sidi-transformed variable (which tames integrable endpoint singularities)
/// until successive estimates agree to `tol` relative. Infinite ends are mapped
/// onto finite cells. Hitting the doubling cap yields
/// [`Error::DivergedOrSlow`] with the partial value.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> f64 + Sync,
    support: &Interval,
    breakpoints: &[f64],
    opts: &AdaptiveOptions,
) -> Result<AdaptiveResult> {
    integrate_adaptive_located(|p| f(p.x), support, breakpoints, opts)
}

/// [`integrate_adaptive`] for integrands that use the exact distances to the
/// support ends.
pub fn integrate_adaptive_located(
    f: impl Fn(SupportPoint) -> f64 + Sync,
    support: &Interval,
    breakpoints: &[f64],
    opts: &AdaptiveOptions,
) -> Result<AdaptiveResult> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be > 0, got {}", opts.tol)));
    }
    if opts.base_order == 0 {
        return Err(Error::InvalidInput("base order must be >= 1".into()));
    }
    if !(support.lower < support.upper) {
        return Err(Error::InvalidInput("empty integration interval".into()));
    }
    let cells = build_cells(support, breakpoints)?;
    let ncells = cells.len() as f64;

    // (current estimate, last change, current order, converged)
    let mut state: Vec<(f64, f64, usize, bool)> = cells
        .par_iter()
        .map(|c| {
            let lo = c.estimate(&f, support, opts.base_order);
            let hi = c.estimate(&f, support, 2 * opts.base_order);
            (hi, (hi - lo).abs(), 2 * opts.base_order, false)
        })
        .collect();

    let mut doublings = 1;
    loop {
        let scale = neumaier_sum(state.iter().map(|s| s.0.abs()));
        let floor = scale / ncells;
        let mut all = true;
        for s in state.iter_mut() {
            if !s.3 {
                s.3 = s.1.is_finite() && s.1 <= opts.tol * s.0.abs().max(floor);
                all &= s.3;
            }
        }
        let value = neumaier_sum(state.iter().map(|s| s.0));
        let error_estimate = neumaier_sum(state.iter().map(|s| s.1));
        if all {
            return Ok(AdaptiveResult {
                value,
                error_estimate,
            });
        }
        if doublings >= opts.max_doublings || !value.is_finite() {
            return Err(Error::DivergedOrSlow {
                partial: value,
                error_estimate,
            });
        }
        doublings += 1;
        state
            .par_iter_mut()
            .zip(cells.par_iter())
            .filter(|(s, _)| !s.3)
            .for_each(|(s, c)| {
                let order = 2 * s.2;
                let v = c.estimate(&f, support, order);
                *s = (v, (v - s.0).abs(), order, false);
            });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn lag(alpha: f64) -> PolynomialFamily {
        PolynomialFamily::Laguerre { alpha }
    }

    #[test]
    fn rule_examples() {
        let r = gauss_rule(&PolynomialFamily::Gegenbauer { lambda: 0.5 }, 2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r.nodes[0], -s, max_relative = 1e-15);
        assert_relative_eq!(r.nodes[1], s, max_relative = 1e-15);
        for w in r.weights() {
            assert_relative_eq!(w, 1.0, max_relative = 1e-14);
        }
        let r = gauss_rule(&lag(0.0), 1).unwrap();
        assert_relative_eq!(r.nodes[0], 1.0, max_relative = 1e-15);
        assert_relative_eq!(r.weights()[0], 1.0, max_relative = 1e-15);
        let r = gauss_rule(&PolynomialFamily::Hermite, 2).unwrap();
        for (x, w) in r.nodes.iter().zip(r.weights()) {
            assert_relative_eq!(x.abs(), 0.5f64.sqrt(), max_relative = 1e-15);
            assert_relative_eq!(w, PI.sqrt() / 2.0, max_relative = 1e-14);
        }
        assert!(gauss_rule(&lag(0.0), 0).is_err());
    }

    #[test]
    fn monomial_exactness() {
        let order = 12;
        // Laguerre α: ∫ x^k x^α e^{−x} = Γ(k+α+1).
        let alpha = 1.7;
        let r = gauss_rule(&lag(alpha), order).unwrap();
        for k in 0..2 * order {
            let exact = ln_gamma_pos(k as f64 + alpha + 1.0);
            let got = r.integrate(|x| x.powi(k as i32)).ln();
            assert_abs_diff_eq!(got, exact, epsilon = 1e-11);
        }
        // Hermite: ∫ x^{2j} e^{−x²} = Γ(j+½).
        let r = gauss_rule(&PolynomialFamily::Hermite, order).unwrap();
        for j in 0..order {
            let exact = ln_gamma_pos(j as f64 + 0.5).exp();
            assert_relative_eq!(r.integrate(|x| x.powi(2 * j as i32)), exact, max_relative = 1e-11);
        }
        // Jacobi: ∫ (1+x)^k (1−x)^α (1+x)^β = 2^{α+β+k+1} B(α+1, β+k+1).
        let (a, b) = (-0.3, 2.4);
        let r = gauss_rule(&PolynomialFamily::Jacobi { alpha: a, beta: b }, order).unwrap();
        for k in 0..2 * order {
            let kf = k as f64;
            let exact = (a + b + kf + 1.0) * LN_2 + ln_gamma_pos(a + 1.0)
                + ln_gamma_pos(b + kf + 1.0)
                - ln_gamma_pos(a + b + kf + 2.0);
            let got = r.integrate(|x| (1.0 + x).powi(k as i32)).ln();
            assert_abs_diff_eq!(got, exact, epsilon = 1e-11);
        }
    }

    #[test]
    fn large_rules_keep_log_weights() {
        let r = gauss_rule(&lag(0.0), 3000).unwrap();
        assert_abs_diff_eq!(log_sum_exp(&r.log_unit_weights), 0.0, epsilon = 1e-11);
        let mean = neumaier_sum(
            r.nodes
                .iter()
                .zip(&r.log_unit_weights)
                .map(|(x, w)| x * w.exp()),
        );
        assert_relative_eq!(mean, 1.0, max_relative = 1e-11);
        assert!(r.log_unit_weights.iter().all(|w| w.is_finite()));
    }

    #[test]
    fn shifted_examples() {
        let (w, scale, c) = shifted_weight(&lag(1.0), 2.0).unwrap();
        assert_eq!(w, lag(2.0));
        assert_eq!(scale, 2.0);
        // ∫ (x e^{−x})² dx = Γ(3)/2³ = 1/4.
        assert_relative_eq!(c.exp(), 0.25, max_relative = 1e-14);
        let (w, _, _) = shifted_weight(&PolynomialFamily::Gegenbauer { lambda: 1.0 }, 2.0).unwrap();
        assert_eq!(w, PolynomialFamily::Gegenbauer { lambda: 1.5 });
        let (w, _, _) = shifted_weight(&PolynomialFamily::Gegenbauer { lambda: 0.5 }, 2.0).unwrap();
        assert_eq!(w, PolynomialFamily::Gegenbauer { lambda: 0.5 });
        assert!(shifted_weight(&PolynomialFamily::Gegenbauer { lambda: -0.3 }, 2.0).is_err());
        assert!(shifted_weight(&lag(-0.7), 2.0).is_err());
    }

    #[test]
    fn shifted_constant_general_q_matches_duplication() {
        let alpha = 3.3;
        let duplication = shifted_weight(&lag(alpha), 2.0).unwrap().2;
        let direct = ln_gamma_pos(2.0 * alpha + 1.0)
            - (2.0 * alpha + 1.0) * LN_2
            - 2.0 * ln_gamma_pos(alpha + 1.0);
        assert_relative_eq!(duplication, direct, max_relative = 1e-13);
    }

    #[test]
    fn legendre_rules() {
        for n in [1usize, 2, 5, 64, 1000] {
            let r = gauss_legendre(n);
            assert_eq!(r.nodes.len(), n);
            assert_relative_eq!(neumaier_sum(r.weights.iter().copied()), 2.0, max_relative = 1e-13);
            let m4 = neumaier_sum(r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(4)));
            if n >= 3 {
                assert_relative_eq!(m4, 0.4, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn adaptive_examples() {
        let opts = AdaptiveOptions::default();
        let half = Interval {
            lower: 0.0,
            upper: f64::INFINITY,
        };
        let r = integrate_adaptive(|x: f64| (-x).exp(), &half, &[], &opts).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-12);

        let sym = Interval {
            lower: -1.0,
            upper: 1.0,
        };
        let r = integrate_adaptive(|x: f64| -(x.abs().ln()), &sym, &[0.0], &opts).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-9);

        let r = integrate_adaptive(|x: f64| x * (-x).exp() * x.ln(), &half, &[], &opts).unwrap();
        assert_abs_diff_eq!(r.value, 1.0 - EULER_GAMMA, epsilon = 1e-10);
    }

    #[test]
    fn adaptive_whole_line_and_polynomial() {
        let opts = AdaptiveOptions::default();
        let line = Interval {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
        };
        let r = integrate_adaptive(|x: f64| (-x * x).exp(), &line, &[], &opts).unwrap();
        assert_relative_eq!(r.value, PI.sqrt(), max_relative = 1e-11);
        let unit = Interval {
            lower: -1.0,
            upper: 1.0,
        };
        let r = integrate_adaptive(|x: f64| 3.0 * x.powi(6) - x + 0.5, &unit, &[0.3], &opts)
            .unwrap();
        assert_relative_eq!(r.value, 6.0 / 7.0 + 1.0, max_relative = 1e-10);
    }

    #[test]
    fn adaptive_flags_divergence() {
        let opts = AdaptiveOptions::default();
        let unit = Interval {
            lower: 0.0,
            upper: 1.0,
        };
        match integrate_adaptive(|x: f64| 1.0 / (x * x.sqrt()), &unit, &[], &opts) {
            Err(Error::DivergedOrSlow { partial, .. }) => assert!(partial > 10.0),
            other => panic!("expected divergence, got {other:?}"),
        }
        assert!(integrate_adaptive(|x: f64| x, &unit, &[], &AdaptiveOptions::with_tol(0.0)).is_err());
    }
}
