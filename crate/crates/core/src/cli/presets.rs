//! Figure presets. Each one seeds [`Settings`] with a figure's caption
//! parameters; explicit flags and config keys still win.

use super::config::Settings;
use super::CliError;
use crate::sweep::SweepSpec;

/// Family of potential curves: the varied key and its values.
pub struct CurveFamily {
    pub key: &'static str,
    pub values: &'static [f64],
}

pub fn potential(name: &str, s: &mut Settings) -> Result<CurveFamily, CliError> {
    let family = match name {
        "fig1a" => CurveFamily {
            key: "alpha",
            values: &[0.5, 1.0, 2.0],
        },
        "fig1b" => CurveFamily {
            key: "q",
            values: &[0.5, 0.7, 0.9, 1.0],
        },
        "fig1c" => CurveFamily {
            key: "delta",
            values: &[0.9, 1.8, 2.7, 3.6],
        },
        _ => return Err(unknown("potential", name, "fig1a, fig1b, fig1c")),
    };
    s.default_to("q", 1.0);
    s.default_to("delta", 1.5);
    s.default_to("alpha", 1.0);
    s.default_to("x_min", -6.0);
    s.default_to("x_max", 6.0);
    s.default_to("samples", 241);
    Ok(family)
}

pub fn spectrum(name: &str, s: &mut Settings) -> Result<(), CliError> {
    let (scan, lo, hi, q, delta, alpha) = match name {
        "fig2a" => ("q", 0.3, 1.0, 1.0, 2.0, 1.5),
        "fig2b" => ("alpha", 0.2, 2.0, 1.0, 2.0, 1.5),
        "fig2c" => ("delta", 0.6, 4.0, 1.0, 2.0, 0.5),
        _ => return Err(unknown("spectrum", name, "fig2a, fig2b, fig2c")),
    };
    s.default_to("scan", scan);
    s.default_to("scan_min", lo);
    s.default_to("scan_max", hi);
    s.default_to("scan_points", 141);
    s.default_to("q", q);
    s.default_to("delta", delta);
    s.default_to("alpha", alpha);
    Ok(())
}

fn machine(name: &str, command: &str) -> Result<SweepSpec, CliError> {
    match name {
        "fig4" => Ok(SweepSpec::fig4()),
        "fig5" => Ok(SweepSpec::fig5()),
        _ => Err(unknown(command, name, "fig4, fig5")),
    }
}

/// Widths and temperatures of the engine/refrigerator figures.
pub fn cycle(name: &str, s: &mut Settings) -> Result<(), CliError> {
    let b = machine(name, "cycle")?.base;
    s.default_to("alpha_h", b.alpha_h);
    s.default_to("alpha_c", b.alpha_c);
    s.default_to("t_h", b.t_h);
    s.default_to("t_c", b.t_c);
    Ok(())
}

pub fn sweep(name: &str, s: &mut Settings) -> Result<(), CliError> {
    let spec = machine(name, "sweep")?;
    cycle(name, s)?;
    s.default_to("q_min", spec.q_min);
    s.default_to("q_max", spec.q_max);
    s.default_to("delta_min", spec.delta_min);
    s.default_to("delta_max", spec.delta_max);
    s.default_to("n_q", spec.n_q);
    s.default_to("n_delta", spec.n_delta);
    Ok(())
}

fn unknown(command: &str, name: &str, valid: &str) -> CliError {
    CliError::usage(format!(
        "unknown {command} preset `{name}` (expected one of {valid})"
    ))
}
