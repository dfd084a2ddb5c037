//! Command-line front end.
//!
//! Every run produces a JSON document `{config, warnings, result}`. Curve
//! and table commands can also write CSV files when `--out DIR` is given.
//!
//! Exit codes: 0 success, 1 validation error, 2 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::amplitude::AmplitudeModel;
use crate::atomic::{gm_shift, ratio_report, thomas_shift, OrbitParams, AZIMUTHAL_NOTE};
use crate::config::{
    angle_in, parse_model, parse_prescriptions, CllConfig, ExchangeConfig, GridSpec, MetricConfig,
    RunConfig, StateSpec, VerifyConfig, XsecConfig,
};
use crate::cosmology::{
    gravito_magnetic_field, numerical_curl, potential_from_metric, pulled_back_metric,
    rotating_rw_metric,
};
use crate::error::Error;
use crate::exchange::{
    apply_exchange, apply_fixed_axis, default_plan, exchange_postulate_check, Z_AXIS,
};
use crate::halfint::HalfInt;
use crate::oracle::oracle_w;
use crate::prescriptions::{c_ll, cross_section, cross_section_curve, Prescription, ScatterConfig};
use crate::serde_complex::JsonComplex;
use crate::spin::{along_axis, random_state};
use crate::sweep::{agreement_sweep, SweepParams};
use crate::tolerances::{AGREEMENT_TOL, DEFAULT_GRID_POINTS, ORACLE_TOL};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "spinstat",
    version,
    about = "Identical-particle scattering under competing spin-statistics prescriptions"
)]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Re-run a configuration (a bare config or a previous JSON output).
    #[arg(long, conflicts_with_all = ["seed", "tol", "degrees"])]
    pub config: Option<PathBuf>,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output directory; without it the JSON document goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tol: Option<f64>,

    /// Read angle arguments in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cross-section curves per prescription.
    Xsec {
        #[arg(long, default_value = "1/2")]
        s: HalfInt,
        #[arg(long, default_value = "+x", allow_hyphen_values = true)]
        alpha: StateSpec,
        #[arg(long, default_value = "+x", allow_hyphen_values = true)]
        beta: StateSpec,
        /// Detector state of the top particle (requires --bottom).
        #[arg(long, allow_hyphen_values = true)]
        top: Option<StateSpec>,
        #[arg(long, allow_hyphen_values = true)]
        bottom: Option<StateSpec>,
        #[arg(long, default_value = "constant:1", value_parser = parse_model, allow_hyphen_values = true)]
        model: AmplitudeModel,
        #[arg(long, default_value = "standard,dynamical,working")]
        prescriptions: String,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        n: usize,
        /// Explicit comma-separated angles; overrides --n.
        #[arg(long, allow_hyphen_values = true)]
        phis: Option<String>,
    },
    /// Classify state pairs by where standard and dynamical agree.
    Sweep {
        #[arg(long, default_value = "1/2")]
        s: HalfInt,
        #[arg(long, default_value = "constant:1", value_parser = parse_model, allow_hyphen_values = true)]
        model: AmplitudeModel,
        #[arg(long, default_value_t = 100)]
        n_states: usize,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        n: usize,
    },
    /// Longitudinal spin correlation.
    Cll {
        #[arg(long, default_value = "1/2")]
        s: HalfInt,
        #[arg(long, default_value = "constant:1", value_parser = parse_model, allow_hyphen_values = true)]
        model: AmplitudeModel,
        /// Single angle; overrides --n.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        n: usize,
    },
    /// Compare closed forms with the two-particle operator computation.
    Verify {
        #[arg(long, default_value = "1/2")]
        s: HalfInt,
        #[arg(long, default_value = "partial:0.6+0.2i,0.3,0.1i", value_parser = parse_model, allow_hyphen_values = true)]
        model: AmplitudeModel,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Rotating-frame metric, vector potential and field at a point.
    Metric {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// t,x,y,z
        #[arg(long, default_value = "0,1,0,0", allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
    /// Rotation-built exchange of two identical spins.
    Exchange {
        #[arg(long, default_value = "1/2")]
        s: HalfInt,
        #[arg(long, default_value_t = 8)]
        samples_per_sector: usize,
    },
    /// Gravito-magnetic shift against the Thomas term.
    Atomic {
        #[arg(long, allow_hyphen_values = true)]
        v: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        omega: f64,
        #[arg(long, default_value = "1/2")]
        s: HalfInt,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        sz: HalfInt,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn validation(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub config: RunConfig,
    pub warnings: Vec<String>,
    pub result: Value,
    pub tables: Vec<Table>,
    /// False when a verification step failed.
    pub verified: bool,
}

impl RunOutput {
    pub fn document(&self) -> Value {
        json!({
            "config": self.config,
            "warnings": self.warnings,
            "result": self.result,
        })
    }
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn to_value<T: Serialize>(x: &T) -> CliResult<Value> {
    serde_json::to_value(x).map_err(|e| CliError::validation(e.to_string()))
}

fn parse_list(what: &str, input: &str) -> CliResult<Vec<f64>> {
    input
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::validation(format!("{what}: cannot parse {t:?}")))
        })
        .collect()
}

/// Turns parsed arguments into a validated run configuration.
pub fn build_config(command: Command, common: &Common) -> CliResult<RunConfig> {
    let seed = common.seed.unwrap_or(DEFAULT_SEED);
    let cfg = match command {
        Command::Xsec {
            s,
            alpha,
            beta,
            top,
            bottom,
            model,
            prescriptions,
            n,
            phis,
        } => {
            let grid = match phis {
                Some(list) => GridSpec::Points(
                    parse_list("phis", &list)?
                        .into_iter()
                        .map(|p| angle_in(p, common.degrees))
                        .collect::<Result<_, _>>()?,
                ),
                None => GridSpec::Uniform(n),
            };
            let prescriptions = parse_prescriptions(&prescriptions)?;
            RunConfig::Xsec(XsecConfig {
                s,
                alpha,
                beta,
                top,
                bottom,
                model,
                prescriptions,
                grid,
            })
        }
        Command::Sweep {
            s,
            model,
            n_states,
            n,
        } => RunConfig::Sweep(SweepParams {
            s,
            model,
            n_states,
            n_phis: n,
            seed,
            tol: common.tol.unwrap_or(AGREEMENT_TOL),
        }),
        Command::Cll { s, model, phi, n } => RunConfig::Cll(CllConfig {
            s,
            model,
            grid: match phi {
                Some(p) => GridSpec::Points(vec![angle_in(p, common.degrees)?]),
                None => GridSpec::Uniform(n),
            },
        }),
        Command::Verify { s, model, samples } => RunConfig::Verify(VerifyConfig {
            s,
            model,
            samples,
            seed,
            tol: common.tol.unwrap_or(ORACLE_TOL),
        }),
        Command::Metric { omega, a, point, h } => {
            let p = parse_list("point", &point)?;
            let point: [f64; 4] = p
                .try_into()
                .map_err(|_| CliError::validation("point: expected four coordinates t,x,y,z"))?;
            RunConfig::Metric(MetricConfig {
                omega,
                a_now: a,
                point,
                h,
            })
        }
        Command::Exchange {
            s,
            samples_per_sector,
        } => RunConfig::Exchange(ExchangeConfig {
            s,
            seed,
            samples_per_sector,
        }),
        Command::Atomic { v, omega, s, sz } => RunConfig::Atomic(OrbitParams { v, omega, s, sz }),
    };
    Ok(cfg)
}

/// Reads a configuration file: either a bare config or a JSON output
/// carrying a `config` echo.
pub fn load_config(path: &Path) -> CliResult<RunConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    let inner = match value.get("config") {
        Some(c) => c.clone(),
        None => value,
    };
    serde_json::from_value(inner)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn has_tables(cfg: &RunConfig) -> bool {
    matches!(
        cfg,
        RunConfig::Xsec(_) | RunConfig::Sweep(_) | RunConfig::Cll(_)
    )
}

/// Validates and runs a configuration.
pub fn run(cfg: RunConfig) -> CliResult<RunOutput> {
    cfg.validate()?;
    let mut out = RunOutput {
        config: cfg.clone(),
        warnings: Vec::new(),
        result: Value::Null,
        tables: Vec::new(),
        verified: true,
    };
    match &cfg {
        RunConfig::Xsec(c) => run_xsec(c, &mut out)?,
        RunConfig::Sweep(p) => run_sweep(p, &mut out)?,
        RunConfig::Cll(c) => run_cll(c, &mut out)?,
        RunConfig::Verify(c) => run_verify(c, &mut out)?,
        RunConfig::Metric(c) => run_metric(c, &mut out)?,
        RunConfig::Exchange(c) => run_exchange(c, &mut out)?,
        RunConfig::Atomic(p) => run_atomic(p, &mut out)?,
    }
    Ok(out)
}

fn run_xsec(c: &XsecConfig, out: &mut RunOutput) -> CliResult<()> {
    let mut seen = Vec::new();
    for p in &c.prescriptions {
        if seen.contains(p) {
            return Err(CliError::validation(format!(
                "prescriptions: {p} listed twice"
            )));
        }
        seen.push(*p);
    }
    let mut resolve = |spec: &StateSpec, label: &str| -> CliResult<_> {
        let r = spec.resolve(c.s)?;
        if let Some(w) = r.warning {
            out.warnings.push(format!("{label}: {w}"));
        }
        Ok(r.state)
    };
    let alpha = resolve(&c.alpha, "alpha")?;
    let beta = resolve(&c.beta, "beta")?;
    let detector = match (&c.top, &c.bottom) {
        (Some(t), Some(b)) => Some((resolve(t, "top")?, resolve(b, "bottom")?)),
        _ => None,
    };
    let mut sc = ScatterConfig::new(alpha, beta, c.model.clone())?;
    if let Some((t, b)) = detector {
        sc = sc.with_detector(t, b)?;
    }
    let phis = c.grid.angles()?;
    let mut curves = Vec::new();
    for &p in &c.prescriptions {
        let curve = cross_section_curve(&sc, p, &phis)?;
        out.tables.push(Table {
            name: format!("xsec_{}", p.name()),
            header: vec!["phi".into(), "w".into()],
            rows: curve
                .phis
                .iter()
                .zip(&curve.values)
                .map(|(phi, w)| vec![num(*phi), num(*w)])
                .collect(),
        });
        curves.push(curve);
    }
    out.result = json!({ "curves": to_value(&curves)? });
    Ok(())
}

fn run_sweep(p: &SweepParams, out: &mut RunOutput) -> CliResult<()> {
    let report = agreement_sweep(p)?;
    out.tables.push(Table {
        name: "sweep".into(),
        header: [
            "pair_id",
            "kind",
            "alpha_desc",
            "beta_desc",
            "max_abs_diff",
            "argmax_phi",
            "classification",
        ]
        .map(String::from)
        .to_vec(),
        rows: report
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.pair_id.to_string(),
                    to_value(&r.kind)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    r.alpha_desc.clone(),
                    r.beta_desc.clone(),
                    num(r.max_abs_diff),
                    num(r.argmax_phi),
                    to_value(&r.classification)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                ]
            })
            .collect(),
    });
    out.result = to_value(&report)?;
    Ok(())
}

#[derive(Serialize)]
struct CllRow {
    phi: f64,
    standard: Option<f64>,
    dynamical: Option<f64>,
    working: Option<f64>,
}

fn run_cll(c: &CllConfig, out: &mut RunOutput) -> CliResult<()> {
    let eval = |p: Prescription, phi: f64| -> CliResult<Option<f64>> {
        match c_ll(&c.model, c.s, p, phi) {
            Ok(v) => Ok(Some(v)),
            Err(Error::UndefinedAsymmetry { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };
    let mut rows = Vec::new();
    for phi in c.grid.angles()? {
        rows.push(CllRow {
            phi,
            standard: eval(Prescription::StandardSsc, phi)?,
            dynamical: eval(Prescription::DynamicalGm, phi)?,
            working: eval(Prescription::WorkingSOmega, phi)?,
        });
    }
    let undefined = rows
        .iter()
        .filter(|r| r.standard.is_none() || r.dynamical.is_none() || r.working.is_none())
        .count();
    if undefined > 0 {
        out.warnings.push(format!(
            "C_LL undefined (vanishing denominator) at {undefined} angle(s)"
        ));
    }
    let cell = |v: Option<f64>| v.map(num).unwrap_or_default();
    out.tables.push(Table {
        name: "cll".into(),
        header: ["phi", "standard", "dynamical", "working"]
            .map(String::from)
            .to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    num(r.phi),
                    cell(r.standard),
                    cell(r.dynamical),
                    cell(r.working),
                ]
            })
            .collect(),
    });
    out.result = json!({ "rows": to_value(&rows)? });
    Ok(())
}

#[derive(Serialize)]
struct PrescriptionCheck {
    prescription: Prescription,
    samples: usize,
    worst_deviation: f64,
    worst_phi: f64,
    closed_form: f64,
    oracle: f64,
}

fn run_verify(c: &VerifyConfig, out: &mut RunOutput) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let mut checks = Vec::new();
    for p in Prescription::ALL {
        let mut worst = PrescriptionCheck {
            prescription: p,
            samples: c.samples,
            worst_deviation: 0.0,
            worst_phi: 0.0,
            closed_form: 0.0,
            oracle: 0.0,
        };
        for k in 0..c.samples {
            let alpha = random_state(c.s, rng.next_u64())?;
            let beta = random_state(c.s, rng.next_u64())?;
            let mut sc = ScatterConfig::new(alpha, beta, c.model.clone())?;
            if k % 2 == 1 {
                sc = sc.with_detector(
                    random_state(c.s, rng.next_u64())?,
                    random_state(c.s, rng.next_u64())?,
                )?;
            }
            // (-pi, pi]
            let phi = std::f64::consts::PI - rng.random::<f64>() * std::f64::consts::TAU;
            let closed = cross_section(&sc, phi, p)?;
            let oracle = oracle_w(&sc, phi, p)?;
            let dev = (closed - oracle).abs();
            if k == 0 || dev > worst.worst_deviation {
                worst.worst_deviation = dev;
                worst.worst_phi = phi;
                worst.closed_form = closed;
                worst.oracle = oracle;
            }
        }
        checks.push(worst);
    }
    let worst_deviation = checks.iter().map(|w| w.worst_deviation).fold(0.0, f64::max);
    // Strict comparison: tol = 0 can never pass.
    let pass = checks.iter().all(|w| w.worst_deviation < c.tol);
    out.verified = pass;
    out.result = json!({
        "pass": pass,
        "tol": c.tol,
        "worst_deviation": worst_deviation,
        "per_prescription": to_value(&checks)?,
    });
    Ok(())
}

fn run_metric(c: &MetricConfig, out: &mut RunOutput) -> CliResult<()> {
    let m = rotating_rw_metric(c.omega, c.a_now, c.point)?;
    let pulled = pulled_back_metric(c.omega, c.a_now, c.point, c.h)?;
    let (neg, pos) = m.signature();
    let spatial = [c.point[1], c.point[2], c.point[3]];
    let (potential, curl, note) = match potential_from_metric(&m, c.a_now) {
        Ok(a) => {
            let (omega, a_now) = (c.omega, c.a_now);
            let field = |p: [f64; 3]| {
                rotating_rw_metric(omega, a_now, [0.0, p[0], p[1], p[2]])
                    .and_then(|g| potential_from_metric(&g, a_now))
                    .map(|a| a.0)
                    .unwrap_or([f64::NAN; 3])
            };
            (Some(a.0), Some(numerical_curl(field, spatial, c.h)?), None)
        }
        Err(Error::UnsupportedScaleFactor(a)) => (
            None,
            None,
            Some(format!(
                "vector potential is read off only at a_now = 1 (got {a}); curved k != 0 universes have no such normalization"
            )),
        ),
        Err(e) => return Err(e.into()),
    };
    out.result = json!({
        "metric": m.rows(),
        "symmetric": m.is_symmetric(1e-14),
        "signature": { "negative": neg, "positive": pos },
        "pulled_back_max_deviation": (m.g - pulled.g).amax(),
        "potential": potential,
        "curl": curl,
        "expected_field": gravito_magnetic_field(c.omega),
        "note": note,
    });
    Ok(())
}

fn run_exchange(c: &ExchangeConfig, out: &mut RunOutput) -> CliResult<()> {
    let plan = default_plan(c.s)?;
    let report = exchange_postulate_check(&plan, c.seed, c.samples_per_sector)?;
    if !report.non_constructible.is_empty() {
        out.warnings.push(format!(
            "{} basis pair(s) cannot be exchanged by a single pi rotation",
            report.non_constructible.len()
        ));
    }

    let plus = along_axis(c.s, [1.0, 0.0, 0.0])?;
    let joint = plus.vector().kronecker(plus.vector());
    let fixed = apply_fixed_axis(c.s, Z_AXIS, &joint)?;
    let planned = match apply_exchange(&plan, &joint) {
        Ok(o) => json!({
            "overlap": o.overlap,
            "phase": o.phase.map(JsonComplex::from),
        }),
        Err(e @ Error::NotExchangeable { .. }) => json!({ "error": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    out.verified = report.pass;
    out.result = json!({
        "plan": to_value(&plan)?,
        "postulate": to_value(&report)?,
        "contrast_both_along_x": {
            "per_sector_plan": planned,
            "fixed_z_axis": {
                "overlap": fixed.overlap,
                "phase": fixed.phase.map(JsonComplex::from),
            },
        },
    });
    Ok(())
}

fn run_atomic(p: &OrbitParams, out: &mut RunOutput) -> CliResult<()> {
    out.result = if p.v > 0.0 {
        to_value(&ratio_report(p)?)?
    } else {
        json!({
            "params": p,
            "gamma": p.gamma(),
            "gm_shift": gm_shift(p),
            "thomas_shift": thomas_shift(p)?,
            "ratio": Value::Null,
            "small_v_estimate": 0.0,
            "note": AZIMUTHAL_NOTE,
        })
    };
    Ok(())
}

fn csv_bytes(table: &Table) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::validation(format!("csv: {e}"));
    w.write_record(&table.header).map_err(err)?;
    for row in &table.rows {
        w.write_record(row).map_err(err)?;
    }
    w.into_inner()
        .map_err(|e| CliError::validation(format!("csv: {e}")))
}

fn json_bytes(doc: &Value) -> CliResult<Vec<u8>> {
    let mut bytes =
        serde_json::to_vec_pretty(doc).map_err(|e| CliError::validation(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn write_file(path: PathBuf, bytes: &[u8]) -> CliResult<PathBuf> {
    fs::write(&path, bytes).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Writes the run's artifacts; returns the files written.
pub fn emit(
    output: &RunOutput,
    common: &Common,
    stdout: &mut dyn Write,
) -> CliResult<Vec<PathBuf>> {
    let format = common.format.unwrap_or(match common.out {
        Some(_) if has_tables(&output.config) => Format::Csv,
        _ => Format::Json,
    });
    let doc = json_bytes(&output.document())?;
    let stdout_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    match (&common.out, format) {
        (None, Format::Json) => {
            stdout.write_all(&doc).map_err(stdout_err)?;
            Ok(Vec::new())
        }
        (None, Format::Csv) => match output.tables.as_slice() {
            [table] => {
                stdout.write_all(&csv_bytes(table)?).map_err(stdout_err)?;
                Ok(Vec::new())
            }
            [] => Err(CliError::validation(format!(
                "{} produces JSON only",
                output.config
            ))),
            _ => Err(CliError::validation("several CSV tables: pass --out DIR")),
        },
        (Some(dir), format) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.clone(),
                source,
            })?;
            let mut written = Vec::new();
            if format == Format::Csv {
                if output.tables.is_empty() {
                    return Err(CliError::validation(format!(
                        "{} produces JSON only",
                        output.config
                    )));
                }
                for t in &output.tables {
                    written.push(write_file(
                        dir.join(format!("{}.csv", t.name)),
                        &csv_bytes(t)?,
                    )?);
                }
            }
            written.push(write_file(
                dir.join(format!("{}.json", output.config)),
                &doc,
            )?);
            Ok(written)
        }
    }
}

fn precheck_format(cfg: &RunConfig, common: &Common) -> CliResult<()> {
    if common.format == Some(Format::Csv) && !has_tables(cfg) {
        return Err(CliError::validation(format!("{cfg} produces JSON only")));
    }
    Ok(())
}

/// Parses arguments, runs, writes output. Returns the process exit code.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = (|| -> CliResult<RunOutput> {
        let cfg = match (cli.command, &cli.config) {
            (Some(cmd), None) => build_config(cmd, &cli.common)?,
            (None, Some(path)) => load_config(path)?,
            _ => return Err(CliError::validation("give a subcommand or --config FILE")),
        };
        precheck_format(&cfg, &cli.common)?;
        let output = run(cfg)?;
        emit(&output, &cli.common, stdout)?;
        Ok(output)
    })();
    match result {
        Ok(output) => {
            for w in &output.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            if output.verified {
                0
            } else {
                let _ = writeln!(stderr, "verification failed");
                2
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["spinstat"];
        full.extend_from_slice(args);
        let code = execute(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn cll_at_right_angle() {
        let (code, out, _) = run_args(&["cll", "--phi", "90", "--degrees"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let row = &v["result"]["rows"][0];
        assert!((row["standard"].as_f64().unwrap() + 1.0).abs() < 1e-12);
        assert!((row["dynamical"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_prescriptions_is_validation_error() {
        let (code, _, err) = run_args(&["xsec", "--prescriptions", ""]);
        assert_eq!(code, 1);
        assert!(err.contains("prescriptions"));
    }

    #[test]
    fn verify_cap_and_zero_tol() {
        assert_eq!(run_args(&["verify", "--s", "5"]).0, 1);
        let (code, out, _) = run_args(&["verify", "--samples", "3", "--tol", "0"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["pass"], json!(false));
    }

    #[test]
    fn unknown_flag_exits_one() {
        assert_eq!(run_args(&["xsec", "--bogus"]).0, 1);
        assert_eq!(run_args(&[]).0, 1);
    }

    #[test]
    fn json_only_commands_reject_csv() {
        assert_eq!(run_args(&["atomic", "--v", "0.6", "--format", "csv"]).0, 1);
    }

    #[test]
    fn negative_state_axis_parses() {
        let (code, out, _) = run_args(&["xsec", "--beta", "-x", "--phis", "1.5707963267948966"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn atomic_at_rest() {
        let (code, out, _) = run_args(&["atomic", "--v", "0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["thomas_shift"], json!(0.0));
        assert_eq!(v["result"]["ratio"], Value::Null);
    }
}
