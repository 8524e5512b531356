use std::io::Write;
use std::path::PathBuf;

use super::config::Settings;
use super::table::{Field, Table};
use super::{presets, CliError, Command, THREADS_ENV};
use crate::otto_cycle::{evaluate, CycleConfig, CycleOptions, CycleResult, Method};
use crate::potential_spectrum::{potential, spectrum, PotentialParams};
use crate::sweep::{
    find_optimum, regime_counts, render, run_sweep, run_sweep_with_threads, CycleTemplate, Metric,
    OutputFormat, SweepMethod, SweepSpec, CSV_HEADER,
};
use crate::thermo::{log_partition_closed, log_partition_sum, thermal_state};
use crate::{Error, Regime};

type Out<'a> = &'a mut dyn Write;

pub(super) fn dispatch(
    cmd: &Command,
    mut s: Settings,
    stdout: Out,
    stderr: Out,
) -> Result<(), CliError> {
    let format = match s.raw("format").unwrap_or("csv") {
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => {
            return Err(CliError::usage(format!(
                "unknown format `{other}` (csv or json)"
            )))
        }
    };
    let sink = Sink {
        out: s.get::<PathBuf>("out")?,
        format,
    };
    match cmd {
        Command::Potential(_) => cmd_potential(&mut s, &sink, stdout, stderr),
        Command::Spectrum(_) => cmd_spectrum(&mut s, &sink, stdout, stderr),
        Command::Thermal(_) => cmd_thermal(&s, &sink, stdout, stderr),
        Command::Cycle(_) => cmd_cycle(&mut s, &sink, stdout, stderr),
        Command::Sweep(_) => cmd_sweep(&mut s, &sink, stdout, stderr),
    }
}

struct Sink {
    out: Option<PathBuf>,
    format: OutputFormat,
}

impl Sink {
    fn write(&self, text: &str, stdout: Out) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|source| {
                CliError::from(Error::Io {
                    path: path.clone(),
                    source,
                })
            }),
            None => stdout.write_all(text.as_bytes()).map_err(|e| CliError {
                code: super::EXIT_NUMERICAL,
                message: format!("stdout: {e}"),
            }),
        }
    }

    fn table(&self, t: &Table, command: &str, stdout: Out) -> Result<(), CliError> {
        let text = match self.format {
            OutputFormat::Csv => t.to_csv(),
            OutputFormat::Json => t.to_json(command),
        };
        self.write(&text, stdout)
    }
}

fn say(stderr: Out, line: std::fmt::Arguments<'_>) {
    let _ = stderr.write_fmt(line);
    let _ = stderr.write_all(b"\n");
}

fn methods(s: &Settings, default: SweepMethod) -> Result<SweepMethod, CliError> {
    Ok(match s.raw("method") {
        None => default,
        Some("closed") => SweepMethod::ClosedForm,
        Some("sum") => SweepMethod::DiscreteSum,
        Some("both") => SweepMethod::Both,
        Some(other) => {
            return Err(CliError::usage(format!(
                "unknown method `{other}` (closed, sum or both)"
            )))
        }
    })
}

fn params(s: &Settings) -> Result<PotentialParams<f64>, CliError> {
    Ok(PotentialParams::new(
        s.require("q")?,
        s.require("delta")?,
        s.require("alpha")?,
    )?)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| crate::sweep::linspace(lo, hi, n, i))
}

fn cmd_potential(s: &mut Settings, sink: &Sink, stdout: Out, stderr: Out) -> Result<(), CliError> {
    let family = match s.raw("preset").map(str::to_owned) {
        Some(name) => Some(presets::potential(&name, s)?),
        None => None,
    };
    let x_min: f64 = s.or("x_min", -6.0)?;
    let x_max: f64 = s.or("x_max", 6.0)?;
    let samples: usize = s.or("samples", 241)?;
    if !(x_min < x_max) || samples < 2 {
        return Err(CliError::usage("need x_min < x_max and samples >= 2"));
    }
    let curves: Vec<Settings> = match &family {
        Some(f) => f
            .values
            .iter()
            .map(|v| {
                let mut c = s.clone();
                c.set(f.key, Some(v));
                c
            })
            .collect(),
        None => vec![s.clone()],
    };
    let mut t = Table::new(&["q", "delta", "alpha", "x", "potential"]);
    for c in &curves {
        let p = params(c)?;
        for x in linspace(x_min, x_max, samples) {
            t.push(vec![
                Field::Num(p.q()),
                Field::Num(p.delta()),
                Field::Num(p.alpha()),
                Field::Num(x),
                Field::Num(potential(x, &p)),
            ]);
        }
        say(
            stderr,
            format_args!(
                "q={} delta={} alpha={}: minimum {} at x={}",
                p.q(),
                p.delta(),
                p.alpha(),
                potential(p.well_center(), &p),
                p.well_center()
            ),
        );
    }
    sink.table(&t, "potential", stdout)
}

const SPECTRUM_COLUMNS: &[&str] = &["q", "delta", "alpha", "n", "energy", "n_max"];

fn cmd_spectrum(s: &mut Settings, sink: &Sink, stdout: Out, stderr: Out) -> Result<(), CliError> {
    if let Some(name) = s.raw("preset").map(str::to_owned) {
        presets::spectrum(&name, s)?;
    }
    let mut t = Table::new(SPECTRUM_COLUMNS);
    let push = |t: &mut Table, p: &PotentialParams<f64>| -> Result<usize, Error> {
        let sp = spectrum(p)?;
        for (n, &e) in sp.energies().iter().enumerate() {
            t.push(vec![
                Field::Num(p.q()),
                Field::Num(p.delta()),
                Field::Num(p.alpha()),
                Field::Int(n),
                Field::Num(e),
                Field::Num(sp.n_max_real()),
            ]);
        }
        Ok(sp.num_levels())
    };
    match s.raw("scan").map(str::to_owned) {
        None => {
            let p = params(s)?;
            let levels = push(&mut t, &p)?;
            say(
                stderr,
                format_args!("{levels} bound levels, n_max = {}", crate::n_max(&p)),
            );
        }
        Some(key) => {
            if !["q", "alpha", "delta"].contains(&key.as_str()) {
                return Err(CliError::usage(format!(
                    "cannot scan `{key}` (q, alpha or delta)"
                )));
            }
            let lo: f64 = s.require("scan_min")?;
            let hi: f64 = s.require("scan_max")?;
            let points: usize = s.or("scan_points", 141)?;
            if !(lo < hi) || points < 2 {
                return Err(CliError::usage(
                    "need scan_min < scan_max and scan_points >= 2",
                ));
            }
            let mut empty = 0;
            for v in linspace(lo, hi, points) {
                let mut c = s.clone();
                c.set(&key, Some(v));
                match push(&mut t, &params(&c)?) {
                    Ok(_) => {}
                    Err(Error::NoBoundStates { .. }) => empty += 1,
                    Err(e) => return Err(e.into()),
                }
            }
            say(
                stderr,
                format_args!("scanned {key} over {points} points ({empty} without bound states)"),
            );
        }
    }
    sink.table(&t, "spectrum", stdout)
}

fn cmd_thermal(s: &Settings, sink: &Sink, stdout: Out, stderr: Out) -> Result<(), CliError> {
    let p = params(s)?;
    let temperature: f64 = s.require("t")?;
    let sp = spectrum(&p)?;
    let state = thermal_state(&sp, temperature)?;
    let mut t = Table::new(&["n", "energy", "probability"]);
    for (n, (&e, &w)) in sp.energies().iter().zip(&state.probs).enumerate() {
        t.push(vec![Field::Int(n), Field::Num(e), Field::Num(w)]);
    }
    let which = methods(s, SweepMethod::Both)?;
    let ln_sum = log_partition_sum(&sp, temperature)?;
    let mut ln_closed = None;
    for m in which.methods() {
        match m {
            Method::DiscreteSum => say(
                stderr,
                format_args!(
                    "Z_sum = {} (ln {}), <E> = {}",
                    ln_sum.exp(),
                    ln_sum,
                    state.mean_energy(sp.energies())
                ),
            ),
            Method::ClosedForm => {
                let l = log_partition_closed(&p, temperature)?;
                ln_closed = Some(l);
                say(stderr, format_args!("Z_closed = {} (ln {})", l.exp(), l));
            }
        }
    }
    if let (SweepMethod::Both, Some(l)) = (which, ln_closed) {
        say(
            stderr,
            format_args!(
                "relative gap |Z_closed - Z_sum| / Z_sum = {}",
                ((l - ln_sum).exp() - 1.0).abs()
            ),
        );
    }
    sink.table(&t, "thermal", stdout)
}

fn options(s: &Settings) -> Result<CycleOptions, CliError> {
    let d = CycleOptions::default();
    let o = CycleOptions {
        truncation_bound: s.or("truncation_bound", d.truncation_bound)?,
        regime_tol: s.or("regime_tol", d.regime_tol)?,
    };
    if !(o.truncation_bound >= 0.0 && o.regime_tol >= 0.0) {
        return Err(CliError::usage(
            "truncation_bound and regime_tol must be >= 0",
        ));
    }
    Ok(o)
}

fn template(s: &Settings) -> Result<CycleTemplate, CliError> {
    Ok(CycleTemplate {
        alpha_h: s.require("alpha_h")?,
        alpha_c: s.require("alpha_c")?,
        t_h: s.require("t_h")?,
        t_c: s.require("t_c")?,
    })
}

fn summarize(stderr: Out, r: &CycleResult<f64>) {
    let figure = match (r.efficiency, r.cop) {
        (Some(e), _) => format!(" eta={e}"),
        (_, Some(c)) => format!(" COP={c}"),
        _ => String::new(),
    };
    let loss = r
        .truncation_loss
        .map(|l| format!(" truncation_loss={l}"))
        .unwrap_or_default();
    say(
        stderr,
        format_args!(
            "[{}] Q_h={} Q_c={} W={}{figure} regime={}{loss}",
            r.method, r.q_hot, r.q_cold, r.work, r.regime
        ),
    );
}

fn cmd_cycle(s: &mut Settings, sink: &Sink, stdout: Out, stderr: Out) -> Result<(), CliError> {
    if let Some(name) = s.raw("preset").map(str::to_owned) {
        presets::cycle(&name, s)?;
    }
    let b = template(s)?;
    let c = CycleConfig::new(
        s.require("q")?,
        s.require("delta")?,
        b.alpha_h,
        b.alpha_c,
        b.t_h,
        b.t_c,
    )?;
    let opts = options(s)?;
    let columns: Vec<&'static str> = CSV_HEADER.split(',').collect();
    let mut t = Table::new(&columns);
    let mut results = Vec::new();
    for &m in methods(s, SweepMethod::ClosedForm)?.methods() {
        let r = evaluate(&c, m, &opts)?;
        summarize(stderr, &r);
        t.push(vec![
            Field::Num(c.q),
            Field::Num(c.delta),
            Field::Num(c.alpha_h),
            Field::Num(c.alpha_c),
            Field::Num(c.t_h),
            Field::Num(c.t_c),
            Field::Text(m.to_string()),
            Field::Num(r.q_hot),
            Field::Num(r.q_cold),
            Field::Num(r.work),
            r.efficiency.into(),
            r.cop.into(),
            Field::Text(r.regime.to_string()),
            r.truncation_loss.into(),
        ]);
        results.push(r);
    }
    if let [closed, sum] = results.as_slice() {
        let gap = |a: f64, b: f64| (a - b).abs() / b.abs();
        say(
            stderr,
            format_args!(
                "closed vs sum relative gaps: Q_h {} Q_c {} W {}",
                gap(closed.q_hot, sum.q_hot),
                gap(closed.q_cold, sum.q_cold),
                gap(closed.work, sum.work)
            ),
        );
    }
    sink.table(&t, "cycle", stdout)
}

fn threads() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn cmd_sweep(s: &mut Settings, sink: &Sink, stdout: Out, stderr: Out) -> Result<(), CliError> {
    if let Some(name) = s.raw("preset").map(str::to_owned) {
        presets::sweep(&name, s)?;
    }
    let spec = SweepSpec {
        q_min: s.require("q_min")?,
        q_max: s.require("q_max")?,
        delta_min: s.require("delta_min")?,
        delta_max: s.require("delta_max")?,
        n_q: s.or("n_q", 41)?,
        n_delta: s.or("n_delta", 41)?,
        base: template(s)?,
        method: methods(s, SweepMethod::ClosedForm)?,
        options: options(s)?,
    };
    let grid = match threads()? {
        Some(n) => run_sweep_with_threads(&spec, n)?,
        None => run_sweep(&spec)?,
    };
    sink.write(&render(&grid, sink.format), stdout)?;

    let failures = grid.failures();
    say(
        stderr,
        format_args!("{} cells, {} failed", grid.cells.len(), failures.len()),
    );
    for (regime, n) in regime_counts(&grid) {
        say(stderr, format_args!("  {regime}: {n}"));
    }
    let has = |g: Regime| grid.successes().any(|(_, r)| r.regime == g);
    let mut metrics = Vec::new();
    if has(Regime::Engine) {
        metrics.push(("efficiency", Metric::Efficiency));
    }
    if has(Regime::Refrigerator) {
        metrics.push(("COP", Metric::Cop));
    }
    metrics.push(("work", Metric::Work));
    for (label, metric) in metrics {
        if let Ok(o) = find_optimum(&grid, metric) {
            say(
                stderr,
                format_args!(
                    "max {label} = {} at q={} delta={} (i_delta={}, i_q={})",
                    o.value, o.q, o.delta, o.i_delta, o.i_q
                ),
            );
        }
    }
    Ok(())
}
