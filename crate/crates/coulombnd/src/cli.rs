//! Command-line front end: spectrum and degeneracy tables, eigenfunction
//! inspection, and the verification suites.
//!
//! Exit codes: 0 on success, 1 when any check fails, 2 for usage or
//! configuration errors. All rationals are read and printed as `num/den`
//! strings; floats appear only in residual columns and point evaluations.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::jet::JetPoint;
use crate::model::{
    degeneracy, eigenfunction, spectrum, states_up_to, ModelParams, QuantumNumbers, System,
};
use crate::rational::{parse_rational, rint, Rational};
use crate::verify::{run_suite, suite_for, CheckStatus, SuiteConfig, SuiteSelector};

#[derive(Parser, Debug)]
#[command(
    name = "coulombnd",
    about = "n-dimensional Coulomb-type superintegrable model: spectra, eigenfunctions, verification",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args, Debug, Default, Clone)]
struct Overrides {
    /// JSON configuration file; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Dimension (n >= 2; parabolic commands need n >= 3).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Coulomb strength as `num/den`.
    #[arg(long, global = true)]
    gamma: Option<String>,
    /// Potential exponents p_1..p_(n-1) as comma-separated rationals.
    #[arg(long, global = true, value_delimiter = ',')]
    p: Option<Vec<String>>,
    /// Coordinate system: parabolic or spherical.
    #[arg(long, global = true)]
    system: Option<String>,
    /// Level cutoff for state sweeps.
    #[arg(long, global = true)]
    qmax: Option<u32>,
    /// Sample points per state in numeric checks.
    #[arg(long, global = true)]
    points: Option<u32>,
    /// Seed of the deterministic sample streams.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance override for the numeric residual checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact spectrum table with per-level degeneracies.
    Spectrum,
    /// Closed-form eigenfunction of one state, optionally evaluated.
    Eigenfunction {
        /// Quantum numbers: `N1,N2,J1,..` (parabolic) or `Nr,J1,..` (spherical).
        #[arg(long)]
        qn: String,
        /// Evaluation point, e.g. `1,1/2,pi/5`; angles as rational multiples of pi.
        #[arg(long)]
        point: Option<String>,
    },
    /// Run verification suites; nonzero exit on any failure.
    Verify {
        #[arg(long, conflicts_with_all = ["exact", "numeric", "commutators", "tridiagonal"])]
        all: bool,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        numeric: bool,
        #[arg(long)]
        commutators: bool,
        #[arg(long)]
        tridiagonal: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alias for `verify --commutators`.
    Commutators,
}

/// Resolved configuration: file defaults overlaid by flags.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub n: usize,
    pub gamma: String,
    pub p: Option<Vec<String>>,
    pub system: System,
    pub qmax: u32,
    pub points: u32,
    pub seed: u64,
    pub tol: Option<f64>,
    pub format: OutputFormat,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n: 3,
            gamma: "1".into(),
            p: None,
            system: System::Parabolic,
            qmax: 4,
            points: 20,
            seed: 42,
            tol: None,
            format: OutputFormat::Text,
        }
    }
}

#[derive(Debug)]
struct Usage(String);

impl Config {
    fn apply(&mut self, o: &Overrides) {
        if let Some(n) = o.n {
            self.n = n;
        }
        if let Some(g) = &o.gamma {
            self.gamma = g.clone();
        }
        if let Some(p) = &o.p {
            self.p = Some(p.clone());
        }
        if let Some(q) = o.qmax {
            self.qmax = q;
        }
        if let Some(pts) = o.points {
            self.points = pts;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(t) = o.tol {
            self.tol = Some(t);
        }
        if o.json {
            self.format = OutputFormat::Json;
        }
    }

    fn system_from(&mut self, o: &Overrides) -> Result<(), Usage> {
        if let Some(s) = &o.system {
            self.system = match s.as_str() {
                "parabolic" => System::Parabolic,
                "spherical" => System::Spherical,
                other => return Err(Usage(format!("unknown system `{other}`"))),
            };
        }
        Ok(())
    }

    fn params(&self) -> Result<ModelParams, Usage> {
        let gamma = parse_rational(&self.gamma).map_err(Usage)?;
        let p: Vec<Rational> = match &self.p {
            Some(list) => list
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()
                .map_err(Usage)?,
            None => vec![Rational::zero(); self.n.saturating_sub(1)],
        };
        ModelParams::new(self.n, gamma, p).map_err(|e| Usage(e.to_string()))
    }
}

fn resolve(overrides: &Overrides) -> Result<Config, Usage> {
    let mut config = match &overrides.config {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&raw)
                .map_err(|e| Usage(format!("invalid config {}: {e}", path.display())))?
        }
        None => Config::default(),
    };
    config.apply(overrides);
    config.system_from(overrides)?;
    Ok(config)
}

/// Entry point; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders usage/help and picks exit code 2 for user errors
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run(cli: Cli) -> Result<i32, Usage> {
    let config = resolve(&cli.overrides)?;
    match &cli.command {
        Command::Spectrum => cmd_spectrum(&config),
        Command::Eigenfunction { qn, point } => cmd_eigenfunction(&config, qn, point.as_deref()),
        Command::Verify {
            all,
            exact,
            numeric,
            commutators,
            tridiagonal,
            out,
        } => {
            let selector = if *exact {
                SuiteSelector::Exact
            } else if *numeric {
                SuiteSelector::Numeric
            } else if *commutators {
                SuiteSelector::Commutators
            } else if *tridiagonal {
                SuiteSelector::Tridiagonal
            } else {
                let _ = all;
                SuiteSelector::All
            };
            cmd_verify(&config, selector, out.as_deref())
        }
        Command::Commutators => cmd_verify(&config, SuiteSelector::Commutators, None),
    }
}

// ---------------------------------------------------------------------------
// spectrum

#[derive(Serialize, Deserialize, Debug)]
pub struct SpectrumRow {
    pub qn: String,
    pub level: u32,
    pub d: String,
    pub energy: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<String>,
    pub k: Vec<String>,
    pub m: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct SpectrumTable {
    pub n: usize,
    pub gamma: String,
    pub p: Vec<String>,
    pub system: System,
    pub qmax: u32,
    pub rows: Vec<SpectrumRow>,
    /// `(level, count)` pairs.
    pub degeneracy: Vec<(u32, usize)>,
}

fn cmd_spectrum(config: &Config) -> Result<i32, Usage> {
    let params = config.params()?;
    let mut entries = Vec::new();
    for qn in states_up_to(&params, config.system, config.qmax) {
        let rec = spectrum(&params, &qn).map_err(|e| Usage(e.to_string()))?;
        entries.push((rec.energy.clone(), qn, rec));
    }
    // ascending energy, then lexicographic quantum numbers
    entries.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let degeneracy: Vec<(u32, usize)> = (0..=config.qmax)
        .map(|q| (q, degeneracy(&params, config.system, q).0))
        .collect();
    let table = SpectrumTable {
        n: params.n(),
        gamma: params.gamma().to_string(),
        p: params.p_all().iter().map(|q| q.to_string()).collect(),
        system: config.system,
        qmax: config.qmax,
        rows: entries
            .into_iter()
            .map(|(_, qn, rec)| SpectrumRow {
                qn: qn.to_string(),
                level: qn.level(),
                d: rec.principal.to_string(),
                energy: rec.energy.to_string(),
                lambda: rec.lambda.as_ref().map(|l| l.to_string()),
                k: rec.k.iter().map(|v| v.to_string()).collect(),
                m: rec.m.iter().map(|v| v.to_string()).collect(),
            })
            .collect(),
        degeneracy,
    };
    if config.format == OutputFormat::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&table).expect("spectrum serialization")
        );
        return Ok(0);
    }
    println!(
        "spectrum: n={} gamma={} p=({}) system={} qmax={}",
        table.n,
        table.gamma,
        table.p.join(","),
        table.system,
        table.qmax
    );
    let mut widths = [12usize, 5, 8, 10, 8];
    for row in &table.rows {
        widths[0] = widths[0].max(row.qn.len() + 2);
        widths[1] = widths[1].max(row.d.len() + 2);
        widths[2] = widths[2].max(row.energy.len() + 2);
        widths[3] = widths[3].max(row.lambda.as_deref().unwrap_or("-").len() + 2);
        widths[4] = widths[4].max(row.k.join(",").len() + 2);
    }
    let mut header = String::new();
    let _ = write!(
        header,
        "{:<w0$}{:<w1$}{:<w2$}{:<w3$}{:<w4$}m",
        "state",
        "D",
        "E",
        "lambda",
        "k",
        w0 = widths[0],
        w1 = widths[1],
        w2 = widths[2],
        w3 = widths[3],
        w4 = widths[4]
    );
    println!("{header}");
    for row in &table.rows {
        let mut line = String::new();
        let _ = write!(
            line,
            "{:<w0$}{:<w1$}{:<w2$}{:<w3$}{:<w4$}{}",
            row.qn,
            row.d,
            row.energy,
            row.lambda.as_deref().unwrap_or("-"),
            row.k.join(","),
            row.m.join(","),
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
            w4 = widths[4]
        );
        println!("{}", line.trim_end());
    }
    let counts: Vec<String> = table
        .degeneracy
        .iter()
        .map(|(q, c)| format!("q={q}: {c}"))
        .collect();
    println!("degeneracy: {}", counts.join(", "));
    Ok(0)
}

// ---------------------------------------------------------------------------
// eigenfunction

#[derive(Serialize, Deserialize, Debug)]
pub struct EigenfunctionView {
    pub qn: String,
    pub system: System,
    pub n: usize,
    pub energy: String,
    pub sqrt_minus_2e: String,
    pub d: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<String>,
    pub k: Vec<String>,
    pub m: Vec<String>,
    pub coordinates: Vec<String>,
    pub gauge: Vec<String>,
    pub polypart_vars: Vec<String>,
    pub polypart: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value_at_point: Option<f64>,
}

fn parse_qn(raw: &str, system: System, n: usize) -> Result<QuantumNumbers, Usage> {
    let nums: Vec<u32> = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|e| Usage(format!("invalid quantum number `{s}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let qn = match system {
        System::Parabolic => {
            if nums.len() != n {
                return Err(Usage(format!(
                    "parabolic states need N1,N2 and {} Jacobi indices ({} values), got {}",
                    n - 2,
                    n,
                    nums.len()
                )));
            }
            QuantumNumbers::Parabolic {
                n1: nums[0],
                n2: nums[1],
                j: nums[2..].to_vec(),
            }
        }
        System::Spherical => {
            if nums.len() != n {
                return Err(Usage(format!(
                    "spherical states need Nr and {} Jacobi indices ({} values), got {}",
                    n - 1,
                    n,
                    nums.len()
                )));
            }
            QuantumNumbers::Spherical {
                nr: nums[0],
                j: nums[1..].to_vec(),
            }
        }
    };
    Ok(qn)
}

/// Parses one point coordinate: a rational, or a rational multiple of pi
/// written like `pi`, `pi/5`, `2pi/3`, `-pi`.
fn parse_coordinate(raw: &str) -> Result<f64, Usage> {
    let s = raw.trim();
    if let Some(at) = s.find("pi") {
        let (coef_str, rest) = s.split_at(at);
        let coef = match coef_str {
            "" => rint(1),
            "-" => rint(-1),
            other => parse_rational(other).map_err(Usage)?,
        };
        let denom = match &rest[2..] {
            "" => rint(1),
            slash if slash.starts_with('/') => parse_rational(&slash[1..]).map_err(Usage)?,
            other => return Err(Usage(format!("invalid angle `{raw}` (trailing `{other}`)"))),
        };
        let q = coef / denom;
        return Ok(q.to_f64_lossy() * std::f64::consts::PI);
    }
    Ok(parse_rational(s).map_err(Usage)?.to_f64_lossy())
}

trait RationalToF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl RationalToF64 for Rational {
    fn to_f64_lossy(&self) -> f64 {
        num::ToPrimitive::to_f64(self).expect("rational in float range")
    }
}

fn cmd_eigenfunction(config: &Config, qn_raw: &str, point: Option<&str>) -> Result<i32, Usage> {
    let params = config.params()?;
    let qn = parse_qn(qn_raw, config.system, params.n())?;
    let ef = eigenfunction(&params, &qn).map_err(|e| Usage(e.to_string()))?;
    let value_at_point = match point {
        Some(raw) => {
            let coords: Vec<f64> = raw
                .split(',')
                .map(parse_coordinate)
                .collect::<Result<_, _>>()?;
            if coords.len() != params.n() {
                return Err(Usage(format!(
                    "point needs {} coordinates, got {}",
                    params.n(),
                    coords.len()
                )));
            }
            let jp = JetPoint::real(coords);
            Some(ef.value(&jp).map_err(|e| Usage(e.to_string()))?)
        }
        None => None,
    };
    let rec = &ef.record;
    let view = EigenfunctionView {
        qn: qn.to_string(),
        system: config.system,
        n: params.n(),
        energy: rec.energy.to_string(),
        sqrt_minus_2e: rec.sqrt_minus_2e.to_string(),
        d: rec.principal.to_string(),
        lambda: rec.lambda.as_ref().map(|l| l.to_string()),
        k: rec.k.iter().map(|v| v.to_string()).collect(),
        m: rec.m.iter().map(|v| v.to_string()).collect(),
        coordinates: ef.coord_vars.as_ref().clone(),
        gauge: ef.gauge_display(),
        polypart_vars: ef.polypart.vars().as_ref().clone(),
        polypart: ef.polypart.to_string(),
        value_at_point,
    };
    if config.format == OutputFormat::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&view).expect("eigenfunction serialization")
        );
        return Ok(0);
    }
    println!("state {} [{} family, n={}]", view.qn, view.system, view.n);
    println!(
        "energy E = {}, sqrt(-2E) = {}, D = {}",
        view.energy, view.sqrt_minus_2e, view.d
    );
    if let Some(lambda) = &view.lambda {
        println!("lambda = {lambda}");
    }
    println!("k = [{}]", view.k.join(", "));
    println!("m = [{}]", view.m.join(", "));
    println!("coordinates: ({})", view.coordinates.join(", "));
    println!("gauge factors:");
    for g in &view.gauge {
        println!("  {g}");
    }
    println!(
        "polynomial part in ({}): {}",
        view.polypart_vars.join(", "),
        view.polypart
    );
    if let Some(v) = view.value_at_point {
        println!("value at point: {v:e}");
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(
    config: &Config,
    selector: SuiteSelector,
    out: Option<&std::path::Path>,
) -> Result<i32, Usage> {
    let params = config.params()?;
    let mut suite_cfg = SuiteConfig::new(
        params.n(),
        params.gamma().clone(),
        params.p_all().to_vec(),
        config.seed,
    );
    suite_cfg.qmax = config.qmax;
    suite_cfg.points = config.points;
    if let Some(tol) = config.tol {
        suite_cfg.tol_numeric = tol;
        suite_cfg.tol_commutator = tol;
    }
    let specs = suite_for(selector, &suite_cfg).map_err(Usage)?;
    let report = run_suite(&specs);
    let json = report.to_json();
    if let Some(path) = out {
        std::fs::write(path, &json)
            .map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if config.format == OutputFormat::Json {
        println!("{json}");
    } else {
        for c in &report.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS ",
                CheckStatus::Fail => "FAIL ",
                CheckStatus::Error => "ERROR",
            };
            let extra = c
                .witness
                .as_ref()
                .map(|w| format!("  [{w}]"))
                .unwrap_or_default();
            println!(
                "{status} {:<40} worst {:.3e}  tol {:.1e}  {} ms{extra}",
                c.name, c.worst_residual, c.tolerance, c.wall_ms
            );
        }
        println!(
            "{} checks, {} pass, {} fail, {} error",
            report.summary.total, report.summary.pass, report.summary.fail, report.summary.error
        );
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_grammar() {
        assert_eq!(parse_coordinate("3/2").unwrap(), 1.5);
        assert!((parse_coordinate("pi/5").unwrap() - std::f64::consts::PI / 5.0).abs() < 1e-15);
        assert!(
            (parse_coordinate("2pi/3").unwrap() - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-15
        );
        assert!((parse_coordinate("-pi").unwrap() + std::f64::consts::PI).abs() < 1e-15);
        assert!(parse_coordinate("pix").is_err());
        assert!(parse_coordinate("x").is_err());
    }

    #[test]
    fn qn_parsing_checks_shape() {
        assert_eq!(
            parse_qn("1,0,2", System::Parabolic, 3).unwrap(),
            QuantumNumbers::Parabolic { n1: 1, n2: 0, j: vec![2] }
        );
        assert!(parse_qn("1,0", System::Parabolic, 3).is_err());
        assert_eq!(
            parse_qn("2,1,0", System::Spherical, 3).unwrap(),
            QuantumNumbers::Spherical { nr: 2, j: vec![1, 0] }
        );
    }

    #[test]
    fn config_defaults_and_overrides() {
        let mut config = Config::default();
        let overrides = Overrides {
            n: Some(4),
            gamma: Some("3/2".into()),
            json: true,
            ..Default::default()
        };
        config.apply(&overrides);
        assert_eq!(config.n, 4);
        assert_eq!(config.format, OutputFormat::Json);
        // default p adapts to the resolved n
        let params = config.params().unwrap();
        assert_eq!(params.p_all().len(), 3);
        assert!(params.is_coulomb());
    }

    #[test]
    fn config_rejects_bad_p_length() {
        let config = Config {
            p: Some(vec!["0".into(), "0".into(), "0".into()]),
            ..Config::default()
        };
        assert!(config.params().is_err());
    }
}
