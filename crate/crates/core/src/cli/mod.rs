//! Command-line front end. `superosc <command> --help` lists the flags.
//!
//! Exit status: 0 success, 1 verification failure, 2 configuration error,
//! 3 I/O error.

pub mod output;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{analyze, dilation_sweep, SweepReport};
use crate::envelope::Envelope;
use crate::polynomial::Interval;
use crate::presets;
use crate::quadrature::QuadConfig;
use crate::synthesis::{SpecDraft, SuperoscSpec};
use crate::verify::{verify_draft, VerifyConfig};
use output::{write_atomic, Csv};
use svg::{Inset, Plot, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "superosc", version, about = "Synthesize and check band-limited superoscillations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample f(t) on a time grid.
    Synth {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        /// t_min,t_max,count; defaults to -20D,20D,4001.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
    },
    /// Sample the analytic spectrum F(w).
    Spectrum {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        /// w_min,w_max,count; defaults to 1.25 times the support, 2001 points.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
    },
    /// L2 error over the interval as the dilation grows.
    SweepDilation {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0])]
        dilations: Vec<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Zeros, local frequency, amplitude growth, dominance and energy.
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run every check and print a JSON report.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also write verify.json into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        /// Allowed |inverse - direct| / max(1, |f|) in the oracle check.
        #[arg(long)]
        oracle_tol: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        dilations: Option<Vec<f64>>,
    },
    /// The cubic on sinc^4: function, spectrum, envelope spectrum, error vs D.
    DemoFig1 {
        #[command(flatten)]
        out: OutArgs,
        /// Zero spacing of the cubic, also the interval half-width.
        #[arg(long, default_value_t = 0.1)]
        s: f64,
        #[arg(long = "dilation", default_value_t = 1.0)]
        dilation: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0])]
        dilations: Vec<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Spec file in JSON.
    #[arg(long, conflicts_with = "preset")]
    pub spec: Option<PathBuf>,
    /// Built-in spec: fig1, fig1_sinc5, constant_sinc4, roots_sinc5, bump_sextic.
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output directory; must exist.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write an SVG plot.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Grid, String> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(format!("grid needs finite min < max, got {min}, {max}"));
        }
        if count < 2 {
            return Err(format!("grid needs at least 2 points, got {count}"));
        }
        Ok(Grid { min, max, count })
    }

    /// Evenly spaced points, placed about the center so that a grid
    /// symmetric about 0 is exactly antisymmetric.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let last = (self.count - 1) as f64;
        let center = 0.5 * (self.min + self.max);
        let half = 0.5 * (self.max - self.min);
        (0..self.count).map(move |i| center + half * (2.0 * i as f64 - last) / last)
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min,max,count, got `{s}`"));
        };
        let num = |x: &str| x.parse::<f64>().map_err(|e| format!("bad number `{x}`: {e}"));
        let count = count.parse::<usize>().map_err(|e| format!("bad count `{count}`: {e}"))?;
        Grid::new(num(min)?, num(max)?, count)
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Io { path, source } => write!(f, "cannot write or read {}: {source}", path.display()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Messages go to stdout and stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("superosc: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Synth { spec, out, grid } => {
            let spec = load_spec(spec)?;
            run_synth(&spec, out, *grid)?;
        }
        Command::Spectrum { spec, out, grid } => {
            let spec = load_spec(spec)?;
            run_spectrum(&spec, out, *grid)?;
        }
        Command::SweepDilation { spec, out, dilations, tol } => {
            let spec = load_spec(spec)?;
            let report = run_sweep(&spec, out, dilations, &quad_config(*tol)?, "sweep")?;
            match report.slope {
                Some(s) => println!("log-log slope {}", output::fmt_float(s)),
                None => println!("single dilation, no slope"),
            }
        }
        Command::Analyze { spec, out, tol } => {
            let spec = load_spec(spec)?;
            let report = analyze(&spec, &quad_config(*tol)?)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            write(&out.out.join("analysis.json"), json.as_bytes())?;
        }
        Command::Verify {
            spec,
            out,
            tol,
            oracle_tol,
            dilations,
        } => {
            let draft = load_draft(spec)?;
            let mut cfg = VerifyConfig {
                quad: quad_config(*tol)?,
                ..VerifyConfig::default()
            };
            if let Some(t) = oracle_tol {
                cfg.oracle_tol = positive("oracle-tol", *t)?;
            }
            if let Some(d) = dilations {
                cfg.dilations = d.clone();
            }
            let report = verify_draft(&draft, &cfg)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            println!("{json}");
            if let Some(dir) = out {
                write(&dir.join("verify.json"), json.as_bytes())?;
            }
            if !report.passed {
                let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
                eprintln!("superosc: verification failed: {}", names.join(", "));
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::DemoFig1 {
            out,
            s,
            dilation,
            dilations,
            tol,
        } => {
            let s = positive("s", *s)?;
            let spec = SuperoscSpec::new(
                crate::Polynomial::cubic_prototype(s)?,
                Envelope::sinc_power(4)?,
                *dilation,
                Interval::new(s)?,
            )?;
            run_demo_fig1(&spec, out, dilations, &quad_config(*tol)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Config(format!("--{name} must be positive, got {v}")))
    }
}

fn quad_config(tol: Option<f64>) -> Result<QuadConfig, CliError> {
    Ok(match tol {
        Some(t) => QuadConfig::with_tol(positive("tol", t)?),
        None => QuadConfig::default(),
    })
}

fn load_draft(args: &SpecArgs) -> Result<SpecDraft, CliError> {
    if let Some(path) = &args.spec {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        return serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())));
    }
    let name = args.preset.as_deref().unwrap_or("fig1");
    presets::by_name(name)
        .map(SpecDraft::from)
        .ok_or_else(|| CliError::Config(format!("unknown preset `{name}`")))
}

fn load_spec(args: &SpecArgs) -> Result<SuperoscSpec, CliError> {
    Ok(load_draft(args)?.build()?)
}

fn write(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    write_atomic(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

/// Writes `<stem>.csv` and, with `--svg`, `<stem>.svg`.
fn emit(out: &OutArgs, stem: &str, csv: &Csv, plot: impl FnOnce() -> Plot) -> Result<(), CliError> {
    write(&out.out.join(format!("{stem}.csv")), csv.as_str().as_bytes())?;
    if out.svg {
        write(&out.out.join(format!("{stem}.svg")), plot().render().as_bytes())?;
    }
    Ok(())
}

pub fn run_synth(spec: &SuperoscSpec, out: &OutArgs, grid: Option<Grid>) -> Result<(), CliError> {
    synth_panel(spec, out, grid, "synth")
}

fn synth_panel(spec: &SuperoscSpec, out: &OutArgs, grid: Option<Grid>, stem: &str) -> Result<(), CliError> {
    let d = spec.dilation();
    let grid = grid.unwrap_or(Grid {
        min: -20.0 * d,
        max: 20.0 * d,
        count: 4001,
    });
    let samples: Vec<(f64, f64)> = grid.points().map(|t| (t, spec.eval(t))).collect();
    let mut csv = Csv::new(&["t", "f"]);
    for &(t, f) in &samples {
        csv.row(&[t, f]);
    }
    emit(out, stem, &csv, || {
        let a = spec.interval().half_width();
        let zoom = Grid {
            min: -1.5 * a,
            max: 1.5 * a,
            count: 401,
        };
        Plot {
            title: "f(t) = p(t) e(t/D)".into(),
            x_label: "t".into(),
            y_label: "f(t)".into(),
            series: vec![Series::new("f", samples.clone())],
            band: Some((-a, a)),
            inset: Some(Inset {
                x_range: (zoom.min, zoom.max),
                series: vec![
                    Series::new("f", zoom.points().map(|t| (t, spec.eval(t))).collect()),
                    Series::new("p", zoom.points().map(|t| (t, spec.poly().eval(t))).collect()),
                ],
            }),
            ..Plot::default()
        }
    })
}

pub fn run_spectrum(spec: &SuperoscSpec, out: &OutArgs, grid: Option<Grid>) -> Result<(), CliError> {
    spectrum_panel(spec, out, grid, "spectrum")
}

fn default_frequency_grid(half: f64) -> Grid {
    Grid {
        min: -1.25 * half,
        max: 1.25 * half,
        count: 2001,
    }
}

fn spectrum_panel(spec: &SuperoscSpec, out: &OutArgs, grid: Option<Grid>, stem: &str) -> Result<(), CliError> {
    let sp = spec.spectrum();
    let half = sp.support_half_width();
    let grid = grid.unwrap_or(default_frequency_grid(half));
    let values: Vec<(f64, f64, f64)> = grid
        .points()
        .map(|w| {
            let v = sp.eval(w);
            (w, v.re, v.im)
        })
        .collect();
    let mut csv = Csv::new(&["omega", "re", "im"]);
    for &(w, re, im) in &values {
        csv.row(&[w, re, im]);
    }
    emit(out, stem, &csv, || Plot {
        title: "Spectrum F(w)".into(),
        x_label: "w".into(),
        y_label: "F(w)".into(),
        series: vec![
            Series::new("Re F", values.iter().map(|v| (v.0, v.1)).collect()),
            Series::new("Im F", values.iter().map(|v| (v.0, v.2)).collect()),
        ],
        band: Some((-half, half)),
        ..Plot::default()
    })
}

pub fn run_sweep(
    spec: &SuperoscSpec,
    out: &OutArgs,
    dilations: &[f64],
    cfg: &QuadConfig,
    stem: &str,
) -> Result<SweepReport, CliError> {
    let report = dilation_sweep(spec, dilations, cfg)?;
    let mut csv = Csv::new(&["D", "l2_error"]);
    for p in &report.points {
        csv.row(&[p.dilation, p.report.l2_error]);
    }
    emit(out, stem, &csv, || Plot {
        title: "L2 error over the interval".into(),
        x_label: "D".into(),
        y_label: "error".into(),
        series: vec![Series::new(
            "l2 error",
            report.points.iter().map(|p| (p.dilation, p.report.l2_error)).collect(),
        )],
        log_x: true,
        log_y: true,
        ..Plot::default()
    })?;
    Ok(report)
}

pub fn run_demo_fig1(
    spec: &SuperoscSpec,
    out: &OutArgs,
    dilations: &[f64],
    cfg: &QuadConfig,
) -> Result<(), CliError> {
    let out = OutArgs {
        out: out.out.clone(),
        svg: true,
    };
    let json = serde_json::to_string_pretty(spec).expect("spec serializes");
    write(&out.out.join("spec.json"), json.as_bytes())?;
    synth_panel(spec, &out, None, "fig1a_function")?;
    spectrum_panel(spec, &out, None, "fig1b_spectrum")?;

    let env = spec.envelope();
    let grid = default_frequency_grid(env.support_half_width());
    let values: Vec<(f64, f64)> = grid.points().map(|w| (w, env.eval_freq(w))).collect();
    let mut csv = Csv::new(&["omega", "E"]);
    for &(w, e) in &values {
        csv.row(&[w, e]);
    }
    emit(&out, "fig1c_envelope", &csv, || Plot {
        title: "Envelope spectrum E(w)".into(),
        x_label: "w".into(),
        y_label: "E(w)".into(),
        series: vec![Series::new("E", values.clone())],
        ..Plot::default()
    })?;

    let report = run_sweep(spec, &out, dilations, cfg, "fig1d_error")?;
    if let Some(s) = report.slope {
        println!("error vs D log-log slope {}", output::fmt_float(s));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: Grid = "-1, 1, 5".parse().unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let g: Grid = "2,3,3".parse().unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![2.0, 2.5, 3.0]);
        assert!("1,1,5".parse::<Grid>().is_err());
        assert!("0,1,1".parse::<Grid>().is_err());
        assert!("0,1".parse::<Grid>().is_err());
        assert!("0,x,3".parse::<Grid>().is_err());
    }

    #[test]
    fn symmetric_grid_hits_zero_exactly() {
        let g = Grid::new(-20.0, 20.0, 4001).unwrap();
        assert_eq!(g.points().nth(2000), Some(0.0));
        let pts: Vec<f64> = Grid::new(-0.7, 0.7, 1001).unwrap().points().collect();
        assert!(pts.iter().zip(pts.iter().rev()).all(|(a, b)| *a == -b));
        let w = default_frequency_grid(std::f64::consts::PI);
        assert_eq!(w.points().nth(1000), Some(0.0));
    }

    #[test]
    fn usage_errors_are_configuration_errors() {
        assert_eq!(main_with_args(["superosc", "bogus"]), EXIT_CONFIG);
        assert_eq!(main_with_args(["superosc", "synth", "--grid", "0,1,1"]), EXIT_CONFIG);
        assert_eq!(main_with_args(["superosc", "synth", "--preset", "nope"]), EXIT_CONFIG);
        assert_eq!(main_with_args(["superosc", "--help"]), EXIT_OK);
    }
}
