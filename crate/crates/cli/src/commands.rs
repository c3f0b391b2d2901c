//! Subcommand implementations, independent of argument parsing.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use memfuzz_core::sim::{simulate, summarize};
use memfuzz_core::{CircuitConfig, Drive, RunSummary, SimRecord, Waveform, WindowSpec};
use rayon::prelude::*;

use crate::config::{RunConfig, WindowDoc, SCHEMA_VERSION};
use crate::csv;
use crate::error::{CliError, Result};
use crate::presets::Preset;

/// A run configuration together with the directory its relative paths
/// resolve against.
#[derive(Debug, Clone)]
pub struct Session {
    pub config: RunConfig,
    pub base_dir: PathBuf,
}

impl Session {
    /// Loads `--config` and/or applies `--preset`; the flag wins over the
    /// file's `scenario`.
    pub fn open(config: Option<&Path>, preset: Option<Preset>) -> Result<Self> {
        let (mut cfg, base_dir) = match config {
            Some(path) => {
                let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
                (RunConfig::load(path)?, base)
            }
            None => {
                if preset.is_none() {
                    return Err(CliError::Usage("either --config or --preset is required".into()));
                }
                let cfg = RunConfig {
                    schema_version: SCHEMA_VERSION,
                    scenario: None,
                    circuit: Default::default(),
                    output: None,
                    compare: None,
                };
                (cfg, PathBuf::from("."))
            }
        };
        if preset.is_some() {
            cfg.scenario = preset;
        }
        Ok(Self { config: cfg, base_dir })
    }

    pub fn circuit(&self) -> Result<CircuitConfig<f64>> {
        self.config.effective_circuit().resolve(&self.base_dir)
    }

    /// `--out` if given, else the config's `output.path` (relative to the config file).
    pub fn output_path(&self, flag: Option<&Path>, fallback: &str) -> PathBuf {
        match (flag, &self.config.output) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(out)) => self.base_dir.join(&out.path),
            (None, None) => PathBuf::from(fallback),
        }
    }

    pub fn resolve_window(&self, doc: &WindowDoc) -> Result<WindowSpec<f64>> {
        doc.resolve(&self.base_dir)
    }
}

pub fn run(cfg: &CircuitConfig<f64>) -> Result<(Vec<SimRecord<f64>>, RunSummary<f64>)> {
    let records = simulate(cfg).map_err(|e| CliError::Validation(e.to_string()))?;
    let summary = summarize(&records).map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok((records, summary))
}

pub fn summary_line(s: &RunSummary<f64>) -> String {
    format!(
        "summary: x_min={} x_max={} x_final={} r_first={} max_abs_dR={} rel_dR={} saturated={} zero_crossings={}",
        csv::num(s.x_min),
        csv::num(s.x_max),
        csv::num(s.x_final),
        csv::num(s.r_first),
        csv::num(s.max_abs_dr),
        csv::num(s.relative_dr()),
        s.saturated,
        s.r_at_zero_crossings.len()
    )
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}", dir.display()), e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(format!("cannot create {}", path.display()), e))
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::io(format!("cannot write {}", path.display()), e)
}

pub fn simulate_to_file(cfg: &CircuitConfig<f64>, out: &Path, stdout: &mut dyn Write) -> Result<RunSummary<f64>> {
    let (records, summary) = run(cfg)?;
    csv::write_records(create(out)?, &records).map_err(io_err(out))?;
    writeln!(stdout, "{}", summary_line(&summary)).map_err(io_err(Path::new("<stdout>")))?;
    Ok(summary)
}

/// Grid of window values: `(u1, u2 = x, f)`, row-major with `u1` outer.
///
/// `u1` spans the drive variable's universe for fuzzy windows. Closed-form
/// windows ignore the drive except Biolek, which only sees the sign of the
/// current (`u1 = -1, +1`); the rest collapse to `u1 = 0`.
pub fn surface(window: &WindowSpec<f64>, n1: usize, n2: usize) -> Result<Vec<(f64, f64, f64)>> {
    if n1 < 2 || n2 < 2 {
        return Err(CliError::Usage(format!("grid sizes must be at least 2, got {n1} x {n2}")));
    }
    let drive_axis: Vec<f64> = match window {
        WindowSpec::Fuzzy(w) | WindowSpec::FuzzyThreshold(w) => {
            let name = w.drive().variable();
            let var = &w.system().inputs()[w.system().input_index(name).expect("validated window")];
            let (lo, hi) = var.universe();
            linspace(lo, hi, n1)
        }
        WindowSpec::Biolek { .. } => vec![-1.0, 1.0],
        _ => vec![0.0],
    };
    let xs = linspace(0.0, 1.0, n2);
    let mut rows = Vec::with_capacity(drive_axis.len() * xs.len());
    for &u in &drive_axis {
        let (i, v) = match window {
            WindowSpec::FuzzyThreshold(w) if w.drive() == Drive::Voltage => (0.0, u),
            _ => (u, 0.0),
        };
        for &x in &xs {
            rows.push((u, x, window.eval(x, i, v)));
        }
    }
    Ok(rows)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| if k + 1 == n { hi } else { lo + (hi - lo) * k as f64 / (n - 1) as f64 })
        .collect()
}

pub fn surface_to_file(window: &WindowSpec<f64>, n1: usize, n2: usize, out: &Path) -> Result<usize> {
    let rows = surface(window, n1, n2)?;
    let mut w = create(out)?;
    let write = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(w, "{}", csv::SURFACE_HEADER)?;
        for (u1, u2, f) in &rows {
            writeln!(w, "{},{},{}", csv::num(*u1), csv::num(*u2), csv::num(*f))?;
        }
        w.flush()
    };
    write(&mut w).map_err(io_err(out))?;
    Ok(rows.len())
}

/// Label used for per-window files and table rows: `<index>_<kind>`.
pub fn window_label(index: usize, window: &WindowSpec<f64>) -> String {
    format!("{index:02}_{}", window.kind())
}

/// Runs the same circuit under each window. Writes one record CSV per
/// window plus `summary.csv` into `out_dir`, and prints an aligned table.
pub fn compare(
    base: &CircuitConfig<f64>,
    windows: &[WindowSpec<f64>],
    out_dir: &Path,
    stdout: &mut dyn Write,
) -> Result<Vec<(String, RunSummary<f64>)>> {
    if windows.len() < 2 {
        return Err(CliError::Usage(format!("compare needs at least 2 windows, got {}", windows.len())));
    }
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(format!("cannot create {}", out_dir.display()), e))?;
    let mut rows = Vec::with_capacity(windows.len());
    for (k, window) in windows.iter().enumerate() {
        let cfg = CircuitConfig { window: window.clone(), ..base.clone() };
        let (records, summary) = run(&cfg)?;
        let label = window_label(k, window);
        let path = out_dir.join(format!("{label}.csv"));
        csv::write_records(create(&path)?, &records).map_err(io_err(&path))?;
        rows.push((label, summary));
    }
    let summary_path = out_dir.join("summary.csv");
    csv::write_summaries(create(&summary_path)?, &rows).map_err(io_err(&summary_path))?;
    print_table(stdout, &rows).map_err(io_err(Path::new("<stdout>")))?;
    Ok(rows)
}

fn print_table(out: &mut dyn Write, rows: &[(String, RunSummary<f64>)]) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<22} {:>12} {:>12} {:>12} {:>14} {:>10} {:>9}",
        "window", "x_min", "x_max", "x_final", "max_abs_dR", "rel_dR", "saturated"
    )?;
    for (label, s) in rows {
        writeln!(
            out,
            "{:<22} {:>12.6} {:>12.6} {:>12.6} {:>14.3} {:>10.4} {:>9}",
            label,
            s.x_min,
            s.x_max,
            s.x_final,
            s.max_abs_dr,
            s.relative_dr(),
            s.saturated
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepAxis {
    /// Sine amplitude, V.
    Amplitude,
    /// Sine frequency, Hz.
    Frequency,
    /// Window order `p` (joglekar, biolek, prodromakis).
    P,
}

impl SweepAxis {
    pub fn apply(self, base: &CircuitConfig<f64>, value: f64) -> Result<CircuitConfig<f64>> {
        let mut cfg = base.clone();
        let invalid = |e: memfuzz_core::Error| CliError::Validation(e.to_string());
        match self {
            SweepAxis::Amplitude | SweepAxis::Frequency => {
                let Waveform::Sine { amplitude, frequency, .. } = &mut cfg.source else {
                    return Err(CliError::Validation(format!(
                        "sweep axis {self:?} needs a sine source"
                    )));
                };
                match self {
                    SweepAxis::Amplitude => *amplitude = value,
                    _ => *frequency = value,
                }
                cfg.source = cfg.source.validated().map_err(invalid)?;
            }
            SweepAxis::P => {
                let order = || {
                    if value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64 {
                        Ok(value as u32)
                    } else {
                        Err(CliError::Validation(format!("p = {value} must be a positive integer for this window")))
                    }
                };
                cfg.window = match &base.window {
                    WindowSpec::Joglekar { .. } => WindowSpec::joglekar(order()?).map_err(invalid)?,
                    WindowSpec::Biolek { .. } => WindowSpec::biolek(order()?).map_err(invalid)?,
                    WindowSpec::Prodromakis { j, .. } => WindowSpec::prodromakis(value, *j).map_err(invalid)?,
                    other => {
                        return Err(CliError::Validation(format!(
                            "sweep axis p does not apply to window `{}`",
                            other.kind()
                        )))
                    }
                };
            }
        }
        Ok(cfg)
    }
}

/// One summary per value, in input order; rows run in parallel.
pub fn sweep(base: &CircuitConfig<f64>, axis: SweepAxis, values: &[f64]) -> Result<Vec<(f64, RunSummary<f64>)>> {
    if values.is_empty() {
        return Err(CliError::Usage("sweep needs at least one value".into()));
    }
    let configs = values
        .iter()
        .map(|&v| axis.apply(base, v).map(|cfg| (v, cfg)))
        .collect::<Result<Vec<_>>>()?;
    configs
        .into_par_iter()
        .map(|(v, cfg)| run(&cfg).map(|(_, summary)| (v, summary)))
        .collect()
}

pub fn sweep_to_file(
    base: &CircuitConfig<f64>,
    axis: SweepAxis,
    values: &[f64],
    out: &Path,
    stdout: &mut dyn Write,
) -> Result<Vec<(f64, RunSummary<f64>)>> {
    let rows = sweep(base, axis, values)?;
    let labelled: Vec<(String, RunSummary<f64>)> =
        rows.iter().map(|(v, s)| (csv::num(*v), s.clone())).collect();
    csv::write_summaries(create(out)?, &labelled).map_err(io_err(out))?;
    print_table(stdout, &labelled).map_err(io_err(Path::new("<stdout>")))?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> CircuitConfig<f64> {
        Preset::Fig3.circuit().resolve(Path::new(".")).unwrap()
    }

    #[test]
    fn joglekar_surface_line() {
        let rows = surface(&WindowSpec::joglekar(10).unwrap(), 5, 3).unwrap();
        let f: Vec<f64> = rows.iter().map(|r| r.2).collect();
        assert_eq!(f, vec![0.0, 1.0, 0.0]);
        assert!(surface(&WindowSpec::Strukov, 1, 3).is_err());
    }

    #[test]
    fn fuzzy_surface_corners() {
        let rows = surface(&WindowSpec::default_fuzzy(), 21, 21).unwrap();
        let at = |u1: f64, x: f64| rows.iter().find(|r| r.0 == u1 && r.1 == x).unwrap().2;
        assert!(at(3e-3, 0.0) > at(3e-3, 1.0));
    }

    #[test]
    fn threshold_surface_dead_band_rows() {
        let rows = surface(&WindowSpec::default_fuzzy_threshold(), 201, 11).unwrap();
        let zero: Vec<f64> = rows.iter().filter(|r| r.0 == 0.0).map(|r| r.2).collect();
        assert_eq!(zero.len(), 11);
        for chunk in rows.chunks(11).filter(|c| c[0].0.abs() <= 0.15) {
            for (r, z) in chunk.iter().zip(&zero) {
                assert!((r.2 - z).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sweep_axis_applicability() {
        let base = fig3();
        assert!(SweepAxis::P.apply(&base, 2.0).is_err());
        let mut jog = base.clone();
        jog.window = WindowSpec::joglekar(10).unwrap();
        assert!(SweepAxis::P.apply(&jog, 2.5).is_err());
        assert_eq!(SweepAxis::P.apply(&jog, 3.0).unwrap().window, WindowSpec::Joglekar { p: 3 });
        let mut flat = base.clone();
        flat.source = Waveform::constant(1.0).unwrap();
        assert!(SweepAxis::Amplitude.apply(&flat, 1.0).is_err());
        assert!(SweepAxis::Frequency.apply(&base, 0.0).is_err());
        assert!(sweep(&base, SweepAxis::Amplitude, &[]).is_err());
    }

    #[test]
    fn sweep_preserves_input_order() {
        let mut base = fig3();
        base.dt = 1e-3;
        let rows = sweep(&base, SweepAxis::Amplitude, &[5.0, 0.0, 1.0]).unwrap();
        let values: Vec<f64> = rows.iter().map(|r| r.0).collect();
        assert_eq!(values, vec![5.0, 0.0, 1.0]);
        assert!(rows[0].1.saturated);
        assert_eq!(rows[1].1.max_abs_dr, 0.0);
    }
}
