//! Command-line front end.
//!
//! Records go to standard output as CSV (`family,n,param,param2,quantity,
//! method,value,error_estimate,regime`, numbers to 15 significant digits,
//! `inf` for divergent values); `verify` writes its report as JSON. Exit
//! codes: 0 success, 1 usage error, 2 numerical failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::asymptotics::{self, Quantity, Regime};
use crate::error::Error;
use crate::measures::{self, Measure};
use crate::ortho::{FamilyKind, PolynomialFamily};
use crate::quadrature::AdaptiveOptions;
use crate::verify::{self, SweepSeries, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

const DEFAULT_RATIO_TOL: f64 = 0.05;

#[derive(Debug, Parser)]
#[command(
    name = "rakhmanov",
    version,
    about = "Spreading and complexity measures of Rakhmanov densities of classical orthogonal polynomials"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Relative tolerance of adaptive quadrature [default: 1e-10]
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Base Gauss–Legendre order per adaptive cell [default: 8]
    #[arg(long = "quad-order", global = true)]
    quad_order: Option<usize>,

    /// key=value file predefining grid, tol, quad_order, ratio_tol
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write CSV records to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// hermite, laguerre, jacobi or gegenbauer
    #[arg(long)]
    family: String,

    /// Laguerre/Jacobi alpha
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,

    /// Jacobi beta
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,

    /// Gegenbauer lambda
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one measure
    Measure {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        /// fisher, variance, shannon_e, integral_i, shannon_s, shannon_power,
        /// renyi, wq (w2), cramer_rao, fisher_shannon, lmc
        #[arg(long)]
        quantity: String,
        /// Order of renyi / wq [default: 2]
        #[arg(long)]
        q: Option<f64>,
    },
    /// Evaluate one first-order asymptotic
    Asymptote {
        #[command(flatten)]
        family: FamilyArgs,
        /// degree (n -> inf) or param (parameter -> inf)
        #[arg(long)]
        regime: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// fisher, shannon_power, w2, cfs, clmc, shannon_e, shannon_s, kappa,
        /// renyi_functional, np_norm
        #[arg(long)]
        quantity: String,
        /// p of the N_p norm
        #[arg(long)]
        p: Option<f64>,
        /// mu, lambda, kappa of the Renyi-like functional (degree is --n)
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long = "rate")]
        rate: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
    },
    /// Sweep one measure over a degree or parameter grid (CSV)
    Sweep {
        #[command(flatten)]
        family: FamilyArgs,
        /// degree or param: which coordinate the grid runs over
        #[arg(long, alias = "regime")]
        swept: String,
        /// Fixed degree when the parameter is swept
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        quantity: String,
        #[arg(long)]
        q: Option<f64>,
        /// Comma list or geom:start:stop:factor
        #[arg(long)]
        grid: Option<String>,
    },
    /// Compare exact values with an asymptotic along a grid (JSON report)
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        regime: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        quantity: String,
        #[arg(long)]
        grid: Option<String>,
        /// Ratio / log-ratio convergence tolerance [default: 0.05]
        #[arg(long = "ratio-tol")]
        ratio_tol: Option<f64>,
        /// Override the tabulated scaling exponent
        #[arg(long, allow_negative_numbers = true)]
        predicted: Option<f64>,
    },
    /// Audit the printed Gegenbauer integral functional against quadrature (JSON)
    AuditI {
        /// Degrees, comma list
        #[arg(long, default_value = "0,1,2,3,4,5,6,7,8")]
        ns: String,
        /// Lambdas, comma list
        #[arg(long, default_value = "0.75,1.5,5")]
        lambdas: String,
    },
    /// Run the invariant suite
    Selftest,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::EigenNonConvergence { .. } | Error::DivergedOrSlow { .. } => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Failure {
        Failure::usage(format!("csv error: {e}"))
    }
}

/// Run with process arguments, writing to the real standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit output streams (used by the tests).
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if shown {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let line = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Settings from `--config`, overridden by flags.
#[derive(Debug, Default)]
struct Settings {
    tol: f64,
    quad_order: usize,
    ratio_tol: f64,
    grid: Option<String>,
}

fn parse_f64(key: &str, v: &str) -> Result<f64, Failure> {
    v.trim()
        .parse()
        .map_err(|_| Failure::usage(format!("{key}: not a number: {v:?}")))
}

fn load_settings(global: &GlobalArgs) -> Result<Settings, Failure> {
    let mut entries = BTreeMap::new();
    if let Some(path) = &global.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Failure::usage(format!("config line {}: expected key=value", i + 1)))?;
            let k = k.trim().replace('-', "_");
            if !matches!(k.as_str(), "grid" | "tol" | "quad_order" | "ratio_tol") {
                return Err(Failure::usage(format!("config line {}: unknown key {k:?}", i + 1)));
            }
            entries.insert(k, v.trim().to_string());
        }
    }
    let mut s = Settings {
        tol: AdaptiveOptions::default().tol,
        quad_order: AdaptiveOptions::default().base_order,
        ratio_tol: DEFAULT_RATIO_TOL,
        grid: entries.get("grid").cloned(),
    };
    if let Some(v) = entries.get("tol") {
        s.tol = parse_f64("tol", v)?;
    }
    if let Some(v) = entries.get("ratio_tol") {
        s.ratio_tol = parse_f64("ratio_tol", v)?;
    }
    if let Some(v) = entries.get("quad_order") {
        s.quad_order = v
            .parse()
            .map_err(|_| Failure::usage(format!("quad_order: not an integer: {v:?}")))?;
    }
    if let Some(t) = global.tol {
        s.tol = t;
    }
    if let Some(q) = global.quad_order {
        s.quad_order = q;
    }
    if !(s.tol > 0.0) {
        return Err(Failure::usage(format!("tol must be > 0, got {}", s.tol)));
    }
    if s.quad_order == 0 {
        return Err(Failure::usage("quad-order must be >= 1"));
    }
    Ok(s)
}

impl Settings {
    fn options(&self) -> AdaptiveOptions {
        AdaptiveOptions {
            tol: self.tol,
            base_order: self.quad_order,
            ..AdaptiveOptions::default()
        }
    }
}

/// Parse `a,b,c` or `geom:start:stop:factor`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, Error> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("geom:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidInput(format!("expected geom:start:stop:factor, got {s:?}")));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad grid number {p:?}")))
        };
        let mut grid = verify::geometric_grid(num(parts[0])?, num(parts[1])?, num(parts[2])?)?;
        // Degree grids such as geom:1:4096:2 should be exact integers.
        for t in grid.iter_mut() {
            if (*t - t.round()).abs() < 1e-9 * t.abs().max(1.0) {
                *t = t.round();
            }
        }
        return Ok(grid);
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad grid value {p:?}")))
        })
        .collect()
}

fn parse_family_kind(s: &str) -> Result<FamilyKind, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "hermite" => Ok(FamilyKind::Hermite),
        "laguerre" => Ok(FamilyKind::Laguerre),
        "jacobi" => Ok(FamilyKind::Jacobi),
        "gegenbauer" => Ok(FamilyKind::Gegenbauer),
        other => Err(Failure::usage(format!("unknown family {other:?}"))),
    }
}

impl FamilyArgs {
    fn kind(&self) -> Result<FamilyKind, Failure> {
        parse_family_kind(&self.family)
    }

    /// First parameter, as given (may be absent when it is swept).
    fn param(&self, kind: FamilyKind) -> Option<f64> {
        match kind {
            FamilyKind::Hermite => None,
            FamilyKind::Laguerre | FamilyKind::Jacobi => self.alpha,
            FamilyKind::Gegenbauer => self.lambda,
        }
    }

    fn family(&self) -> Result<PolynomialFamily, Failure> {
        let kind = self.kind()?;
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Failure::usage(format!("{} needs --{name}", kind.name())))
        };
        let f = match kind {
            FamilyKind::Hermite => PolynomialFamily::Hermite,
            FamilyKind::Laguerre => PolynomialFamily::Laguerre {
                alpha: need(self.alpha, "alpha")?,
            },
            FamilyKind::Jacobi => PolynomialFamily::Jacobi {
                alpha: need(self.alpha, "alpha")?,
                beta: need(self.beta, "beta")?,
            },
            FamilyKind::Gegenbauer => PolynomialFamily::Gegenbauer {
                lambda: need(self.lambda, "lambda")?,
            },
        };
        f.validate()?;
        Ok(f)
    }
}

/// `%.15g`-style formatting, with `inf`/`-inf`/`nan` literals.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-5..15).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        trim(&format!("{:.*}", (14 - exp) as usize, v))
    }
}

fn opt_number(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

/// One CSV output row.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub family: String,
    pub n: usize,
    pub param: Option<f64>,
    pub param2: Option<f64>,
    pub quantity: String,
    pub method: String,
    pub value: f64,
    pub error_estimate: f64,
    pub regime: String,
}

pub const CSV_HEADER: [&str; 9] = [
    "family",
    "n",
    "param",
    "param2",
    "quantity",
    "method",
    "value",
    "error_estimate",
    "regime",
];

fn write_records(records: &[OutputRecord], w: &mut dyn Write) -> Result<(), Failure> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(CSV_HEADER)?;
    for r in records {
        csv.write_record([
            r.family.clone(),
            r.n.to_string(),
            opt_number(r.param),
            opt_number(r.param2),
            r.quantity.clone(),
            r.method.clone(),
            format_number(r.value),
            format_number(r.error_estimate),
            r.regime.clone(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

fn emit_records(records: &[OutputRecord], global: &GlobalArgs, out: &mut dyn Write) -> Result<(), Failure> {
    match &global.out {
        Some(path) => {
            let mut f = fs::File::create(path)
                .map_err(|e| Failure::usage(format!("cannot create {}: {e}", path.display())))?;
            write_records(records, &mut f)
        }
        None => write_records(records, out),
    }
}

fn series_records(series: &SweepSeries) -> Vec<OutputRecord> {
    series
        .values
        .iter()
        .map(|p| OutputRecord {
            family: series.spec.family.name().to_string(),
            n: p.n,
            param: p.param,
            param2: p.param2,
            quantity: series.quantity.clone(),
            method: if p.failure.is_some() {
                "failed".to_string()
            } else {
                p.method.clone()
            },
            value: p.value,
            error_estimate: p.error_estimate,
            regime: p
                .regime
                .clone()
                .or_else(|| p.failure.clone())
                .unwrap_or_default(),
        })
        .collect()
}

fn parse_measure(s: &str) -> Result<Measure, Failure> {
    Measure::parse(s).ok_or_else(|| Failure::usage(format!("unknown quantity {s:?}")))
}

fn parse_quantity(s: &str) -> Result<Quantity, Failure> {
    Quantity::parse(s).ok_or_else(|| Failure::usage(format!("unknown quantity {s:?}")))
}

fn parse_regime(s: &str) -> Result<Regime, Failure> {
    Regime::parse(s).ok_or_else(|| Failure::usage(format!("unknown regime {s:?} (degree or param)")))
}

fn require_grid(flag: Option<String>, settings: &Settings) -> Result<Vec<f64>, Failure> {
    let text = flag
        .or_else(|| settings.grid.clone())
        .ok_or_else(|| Failure::usage("--grid is required (or grid= in --config)"))?;
    Ok(parse_grid(&text)?)
}

fn sweep_spec(
    family: &FamilyArgs,
    measure: Measure,
    q: Option<f64>,
    swept: Regime,
    n: usize,
) -> Result<SweepSpec, Failure> {
    let kind = family.kind()?;
    Ok(SweepSpec {
        family: kind,
        measure,
        q,
        swept,
        n,
        param: family.param(kind),
        param2: if kind == FamilyKind::Jacobi { family.beta } else { None },
    })
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad {what} value {p:?}")))
        })
        .collect()
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let settings = load_settings(&cli.global)?;
    let opts = settings.options();
    match cli.command {
        Command::Measure {
            family,
            n,
            quantity,
            q,
        } => {
            let measure = parse_measure(&quantity)?;
            let fam = family.family()?;
            let v = measures::compute(measure, &fam, n, q, &opts)?;
            let record = OutputRecord {
                family: fam.kind().name().to_string(),
                n,
                param: fam.param(),
                param2: fam.param2(),
                quantity: measure.name().to_string(),
                method: v.method.name().to_string(),
                value: v.value,
                error_estimate: v.error_estimate,
                regime: v.regime.unwrap_or_default(),
            };
            emit_records(&[record], &cli.global, out)?;
        }
        Command::Asymptote {
            family,
            regime,
            n,
            quantity,
            p,
            mu,
            rate,
            kappa,
        } => {
            let regime = parse_regime(&regime)?;
            let quantity = parse_quantity(&quantity)?;
            let kind = family.kind()?;
            let param = family
                .param(kind)
                .ok_or_else(|| Failure::usage(format!("{} asymptotics need a parameter", kind.name())))?;
            let (value, branch) = match quantity {
                Quantity::NpNorm => {
                    let p = p.ok_or_else(|| Failure::usage("np_norm needs --p"))?;
                    (asymptotics::gegenbauer_np_asymptotic(n, param, p)?.exp(), String::new())
                }
                Quantity::RenyiFunctional => {
                    let need = |v: Option<f64>, name: &str| {
                        v.ok_or_else(|| Failure::usage(format!("renyi_functional needs --{name}")))
                    };
                    let ln = asymptotics::laguerre_renyi_functional_asymptotic(
                        need(mu, "mu")?,
                        need(rate, "rate")?,
                        need(kappa, "kappa")?,
                        n,
                        param,
                    )?;
                    (ln.exp(), String::new())
                }
                _ => {
                    let f = asymptotics::formula(kind, regime, quantity, n, param)?;
                    let v = asymptotics::asymptotic(kind, regime, quantity, n, param)?;
                    (v.value(), f.branch.to_string())
                }
            };
            let record = OutputRecord {
                family: kind.name().to_string(),
                n,
                param: Some(param),
                param2: None,
                quantity: quantity.name().to_string(),
                method: format!("asymptotic_{}", regime.name()),
                value,
                error_estimate: 0.0,
                regime: branch,
            };
            emit_records(&[record], &cli.global, out)?;
        }
        Command::Sweep {
            family,
            swept,
            n,
            quantity,
            q,
            grid,
        } => {
            let swept = parse_regime(&swept)?;
            let measure = parse_measure(&quantity)?;
            let grid = require_grid(grid, &settings)?;
            let spec = sweep_spec(&family, measure, q, swept, n)?;
            let series = verify::sweep(&spec, &grid, &opts)?;
            emit_records(&series_records(&series), &cli.global, out)?;
            if series.values.iter().any(|p| p.failure.is_some()) {
                let _ = writeln!(err, "warning: some grid points failed; see the regime column");
            }
        }
        Command::Verify {
            family,
            regime,
            n,
            quantity,
            grid,
            ratio_tol,
            predicted,
        } => {
            let regime = parse_regime(&regime)?;
            let quantity = parse_quantity(&quantity)?;
            let grid = require_grid(grid, &settings)?;
            let measure = quantity.measure().unwrap_or(Measure::Fisher);
            let q = (quantity == Quantity::W2).then_some(2.0);
            let spec = sweep_spec(&family, measure, q, regime, n)?;
            let v = verify::verify(
                &spec,
                quantity,
                &grid,
                predicted,
                ratio_tol.unwrap_or(settings.ratio_tol),
                &opts,
            )?;
            let json = serde_json::to_string_pretty(&v.report)
                .map_err(|e| Failure::usage(format!("json error: {e}")))?;
            writeln!(out, "{json}")?;
            if cli.global.out.is_some() {
                let mut records = series_records(&v.exact);
                records.extend(series_records(&v.asymptotic));
                emit_records(&records, &cli.global, out)?;
            }
        }
        Command::AuditI { ns, lambdas } => {
            let ns: Vec<usize> = parse_list(&ns, "degree")?;
            let lambdas: Vec<f64> = parse_list(&lambdas, "lambda")?;
            let rows = verify::gegenbauer_i_audit(&ns, &lambdas, &opts)?;
            let json = serde_json::to_string_pretty(&rows)
                .map_err(|e| Failure::usage(format!("json error: {e}")))?;
            writeln!(out, "{json}")?;
        }
        Command::Selftest => {
            let checks = verify::invariant_suite(&opts);
            let mut all = true;
            for c in &checks {
                if c.passed {
                    writeln!(out, "[PASS] {}", c.name)?;
                } else {
                    all = false;
                    writeln!(out, "[FAIL] {}: {}", c.name, c.detail)?;
                }
            }
            return Ok(if all { EXIT_OK } else { EXIT_NUMERICAL });
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rakhmanov").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(1.359_140_914_229_522_5), "1.35914091422952");
        assert_eq!(format_number(20000.0), "20000");
        assert_eq!(format_number(0.005), "0.005");
        assert_eq!(format_number(1e-7), "1e-07");
        assert_eq!(format_number(1.25e20), "1.25e+20");
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(-2.5), "-2.5");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(123_456_789_012_345.0), "123456789012345");
        assert_eq!(format_number(1_234_567_890_123_456.0), "1.23456789012346e+15");
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("1, 2,4").unwrap(), vec![1.0, 2.0, 4.0]);
        assert_eq!(parse_grid("geom:1:16:2").unwrap(), vec![1.0, 2.0, 4.0, 8.0, 16.0]);
        assert_eq!(parse_grid("geom:1e2:1e6:10").unwrap().len(), 5);
        assert!(parse_grid("geom:1:2").is_err());
        assert!(parse_grid("1,x").is_err());
    }

    #[test]
    fn measure_lmc() {
        let (code, out, _) = run_capture(&["measure", "--family", "laguerre", "--n", "0", "--alpha", "0", "--quantity", "lmc"]);
        assert_eq!(code, 0);
        let row = out.lines().nth(1).unwrap();
        assert!(row.starts_with("laguerre,0,0,,lmc,"), "{row}");
        let value: f64 = row.split(',').nth(6).unwrap().parse().unwrap();
        assert!((value - 1.3591409142).abs() < 1e-10);
    }

    #[test]
    fn divergent_fisher_record() {
        let (code, out, _) =
            run_capture(&["measure", "--family", "laguerre", "--n", "3", "--alpha", "0.5", "--quantity", "fisher"]);
        assert_eq!(code, 0);
        let mut rdr = csv::Reader::from_reader(out.as_bytes());
        let rec = rdr.records().next().unwrap().unwrap();
        assert_eq!(&rec[6], "inf");
        assert_eq!(&rec[8], "alpha in (-1,1], alpha!=0");
    }

    #[test]
    fn asymptote_fisher() {
        let (code, out, _) = run_capture(&[
            "asymptote", "--family", "gegenbauer", "--regime", "param", "--n", "0", "--lambda", "1e4",
            "--quantity", "fisher",
        ]);
        assert_eq!(code, 0);
        let row = out.lines().nth(1).unwrap();
        assert_eq!(row.split(',').nth(6).unwrap(), "20000");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["measure", "--family", "chebyshev", "--n", "1", "--quantity", "fisher"]).0, 1);
        assert_eq!(run_capture(&["measure", "--family", "laguerre", "--n", "1", "--quantity", "fisher"]).0, 1);
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        let (code, _, err) = run_capture(&[
            "asymptote", "--family", "laguerre", "--regime", "degree", "--n", "5", "--alpha", "0.5",
            "--quantity", "fisher",
        ]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }
}
