//! Deterministic `(q, Δ)` grid sweeps over the Otto cycle.
//!
//! Cells are evaluated in parallel but stored in pre-indexed slots, so the
//! grid (and every artifact emitted from it) depends on the spec alone.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::otto_cycle::{evaluate, CycleConfig, CycleOptions, CycleResult, Method, Regime};
use crate::{Error, Result};

/// Widths and temperatures shared by every cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleTemplate {
    pub alpha_h: f64,
    pub alpha_c: f64,
    pub t_h: f64,
    pub t_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMethod {
    #[serde(rename = "closed")]
    ClosedForm,
    #[serde(rename = "sum")]
    DiscreteSum,
    Both,
}

impl SweepMethod {
    pub fn methods(self) -> &'static [Method] {
        match self {
            SweepMethod::ClosedForm => &[Method::ClosedForm],
            SweepMethod::DiscreteSum => &[Method::DiscreteSum],
            SweepMethod::Both => &[Method::ClosedForm, Method::DiscreteSum],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub n_q: usize,
    pub n_delta: usize,
    pub base: CycleTemplate,
    pub method: SweepMethod,
    #[serde(skip)]
    pub options: CycleOptions,
}

const ENGINE_TEMPLATE: CycleTemplate = CycleTemplate {
    alpha_h: 1.118,
    alpha_c: 0.5,
    t_h: 5.0,
    t_c: 1.0,
};

impl SweepSpec {
    /// Engine map: `Δ ∈ [3.7, 5]`, `q ∈ [0.8, 0.9]`.
    pub fn fig4() -> Self {
        Self {
            q_min: 0.8,
            q_max: 0.9,
            delta_min: 3.7,
            delta_max: 5.0,
            n_q: 41,
            n_delta: 41,
            base: ENGINE_TEMPLATE,
            method: SweepMethod::ClosedForm,
            options: CycleOptions::default(),
        }
    }

    /// Refrigerator map: `Δ ∈ [0.9, 1]`, `q ∈ [0.8, 1]`.
    pub fn fig5() -> Self {
        Self {
            q_min: 0.8,
            q_max: 1.0,
            delta_min: 0.9,
            delta_max: 1.0,
            ..Self::fig4()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.q_min, self.q_max, self.delta_min, self.delta_max];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("sweep", "bounds must be finite"));
        }
        if self.q_min >= self.q_max {
            return Err(Error::invalid(
                "q_min",
                format!("need q_min < q_max, got {} >= {}", self.q_min, self.q_max),
            ));
        }
        if self.delta_min >= self.delta_max {
            return Err(Error::invalid(
                "delta_min",
                format!(
                    "need delta_min < delta_max, got {} >= {}",
                    self.delta_min, self.delta_max
                ),
            ));
        }
        if self.n_q < 2 || self.n_delta < 2 {
            return Err(Error::invalid(
                "n_q",
                "grid needs at least 2 nodes per axis",
            ));
        }
        Ok(())
    }

    pub fn q_node(&self, i: usize) -> f64 {
        linspace(self.q_min, self.q_max, self.n_q, i)
    }

    pub fn delta_node(&self, i: usize) -> f64 {
        linspace(self.delta_min, self.delta_max, self.n_delta, i)
    }

    pub fn config_at(&self, i_delta: usize, i_q: usize) -> CycleConfig<f64> {
        let b = self.base;
        CycleConfig {
            q: self.q_node(i_q),
            delta: self.delta_node(i_delta),
            alpha_h: b.alpha_h,
            alpha_c: b.alpha_c,
            t_h: b.t_h,
            t_c: b.t_c,
        }
    }
}

/// Node `i` of `n` evenly spaced points on `[lo, hi]`. Both ends are hit
/// exactly, and `[-a, a]` yields exactly antisymmetric nodes.
pub fn linspace(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
    if i == 0 {
        lo
    } else if i + 1 == n {
        hi
    } else {
        (lo * (n - 1 - i) as f64 + hi * i as f64) / (n - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridCell {
    pub i_delta: usize,
    pub i_q: usize,
    pub q: f64,
    pub delta: f64,
    pub method: Method,
    /// Failed cells keep the error tag instead of a result.
    pub outcome: std::result::Result<CycleResult<f64>, &'static str>,
}

#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    /// Row-major by `(i_delta, i_q)`, then by method (closed before sum).
    pub cells: Vec<GridCell>,
}

impl SweepGrid {
    pub fn successes(&self) -> impl Iterator<Item = (&GridCell, &CycleResult<f64>)> {
        self.cells
            .iter()
            .filter_map(|c| c.outcome.as_ref().ok().map(|r| (c, r)))
    }

    /// `(flat cell index, error tag)` for every failed cell.
    pub fn failures(&self) -> Vec<(usize, &'static str)> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.outcome.as_ref().err().map(|&t| (i, t)))
            .collect()
    }

    pub fn cell(&self, i_delta: usize, i_q: usize, method: Method) -> Option<&GridCell> {
        let per_node = self.spec.method.methods().len();
        let base = (i_delta * self.spec.n_q + i_q) * per_node;
        self.cells[base..base + per_node]
            .iter()
            .find(|c| c.method == method)
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepGrid> {
    spec.validate()?;
    let methods = spec.method.methods();
    let total = spec.n_delta * spec.n_q * methods.len();
    let cells = (0..total)
        .into_par_iter()
        .map(|k| {
            let m = methods[k % methods.len()];
            let node = k / methods.len();
            let (i_delta, i_q) = (node / spec.n_q, node % spec.n_q);
            let cfg = spec.config_at(i_delta, i_q);
            GridCell {
                i_delta,
                i_q,
                q: cfg.q,
                delta: cfg.delta,
                method: m,
                outcome: evaluate(&cfg, m, &spec.options).map_err(|e| e.tag()),
            }
        })
        .collect();
    Ok(SweepGrid { spec: *spec, cells })
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<SweepGrid> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::NumericalBreakdown(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Efficiency,
    Cop,
    Work,
    QCold,
}

impl Metric {
    pub fn of(self, r: &CycleResult<f64>) -> Option<f64> {
        match self {
            Metric::Efficiency => r.efficiency,
            Metric::Cop => r.cop,
            Metric::Work => Some(r.work),
            Metric::QCold => Some(r.q_cold),
        }
    }
}

/// Location of a metric maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub i_delta: usize,
    pub i_q: usize,
    pub q: f64,
    pub delta: f64,
    pub method: Method,
    pub value: f64,
}

/// Argmax of `metric` over cells where it is defined; ties go to the lowest
/// `(i_delta, i_q)`. With both methods in the grid the closed-form cells are
/// used.
pub fn find_optimum(grid: &SweepGrid, metric: Metric) -> Result<Optimum> {
    let method = grid.spec.method.methods()[0];
    find_optimum_for(grid, metric, method)
}

pub fn find_optimum_for(grid: &SweepGrid, metric: Metric, method: Method) -> Result<Optimum> {
    let mut best: Option<Optimum> = None;
    for (c, r) in grid.successes().filter(|(c, _)| c.method == method) {
        let Some(v) = metric.of(r).filter(|v| v.is_finite()) else {
            continue;
        };
        if best.is_none_or(|b| v > b.value) {
            best = Some(Optimum {
                i_delta: c.i_delta,
                i_q: c.i_q,
                q: c.q,
                delta: c.delta,
                method,
                value: v,
            });
        }
    }
    best.ok_or(Error::MetricUndefinedEverywhere)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str =
    "q,delta,alpha_h,alpha_c,t_h,t_c,method,q_hot,q_cold,work,efficiency,cop,regime,truncation_loss";

/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn regime_label(c: &GridCell) -> String {
    match &c.outcome {
        Ok(r) => r.regime.as_str().to_owned(),
        Err(tag) => format!("failed:{tag}"),
    }
}

pub fn to_csv(grid: &SweepGrid) -> String {
    let b = grid.spec.base;
    let mut out = String::with_capacity(grid.cells.len() * 256);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in &grid.cells {
        let r = c.outcome.as_ref().ok();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_float(c.q),
            fmt_float(c.delta),
            fmt_float(b.alpha_h),
            fmt_float(b.alpha_c),
            fmt_float(b.t_h),
            fmt_float(b.t_c),
            c.method,
            opt(r.map(|r| r.q_hot)),
            opt(r.map(|r| r.q_cold)),
            opt(r.map(|r| r.work)),
            opt(r.and_then(|r| r.efficiency)),
            opt(r.and_then(|r| r.cop)),
            regime_label(c),
            opt(r.and_then(|r| r.truncation_loss)),
        );
    }
    out
}

// JSON numbers are written shortest-round-trip; absent or non-finite
// values become null.
fn jnum(v: Option<f64>) -> Value {
    v.and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

pub fn to_json(grid: &SweepGrid) -> String {
    let s = &grid.spec;
    let b = s.base;
    let records: Vec<Value> = grid
        .cells
        .iter()
        .map(|c| {
            let r = c.outcome.as_ref().ok();
            json!({
                "q": jnum(Some(c.q)),
                "delta": jnum(Some(c.delta)),
                "alpha_h": jnum(Some(b.alpha_h)),
                "alpha_c": jnum(Some(b.alpha_c)),
                "t_h": jnum(Some(b.t_h)),
                "t_c": jnum(Some(b.t_c)),
                "method": c.method.as_str(),
                "q_hot": jnum(r.map(|r| r.q_hot)),
                "q_cold": jnum(r.map(|r| r.q_cold)),
                "work": jnum(r.map(|r| r.work)),
                "efficiency": jnum(r.and_then(|r| r.efficiency)),
                "cop": jnum(r.and_then(|r| r.cop)),
                "regime": regime_label(c),
                "truncation_loss": jnum(r.and_then(|r| r.truncation_loss)),
            })
        })
        .collect();
    let doc = json!({
        "spec": {
            "q_min": jnum(Some(s.q_min)),
            "q_max": jnum(Some(s.q_max)),
            "delta_min": jnum(Some(s.delta_min)),
            "delta_max": jnum(Some(s.delta_max)),
            "n_q": s.n_q,
            "n_delta": s.n_delta,
            "alpha_h": jnum(Some(b.alpha_h)),
            "alpha_c": jnum(Some(b.alpha_c)),
            "t_h": jnum(Some(b.t_h)),
            "t_c": jnum(Some(b.t_c)),
            "method": s.method,
            "truncation_bound": jnum(Some(s.options.truncation_bound)),
            "regime_tol": jnum(Some(s.options.regime_tol)),
        },
        "records": records,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    text.push('\n');
    text
}

pub fn render(grid: &SweepGrid, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => to_csv(grid),
        OutputFormat::Json => to_json(grid),
    }
}

/// Writes the rendered grid to `dest`.
pub fn emit<W: Write>(grid: &SweepGrid, format: OutputFormat, dest: &mut W) -> std::io::Result<()> {
    dest.write_all(render(grid, format).as_bytes())
}

pub fn emit_to_path(grid: &SweepGrid, format: OutputFormat, path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    emit(grid, format, &mut w).map_err(io)?;
    w.flush().map_err(io)
}

/// Counts of each regime among successful cells, in enum order.
pub fn regime_counts(grid: &SweepGrid) -> Vec<(Regime, usize)> {
    use Regime::*;
    [
        Engine,
        Refrigerator,
        Heater,
        Accelerator,
        Idle,
        Unclassified,
    ]
    .into_iter()
    .map(|g| (g, grid.successes().filter(|(_, r)| r.regime == g).count()))
    .filter(|&(_, n)| n > 0)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(method: SweepMethod) -> SweepSpec {
        SweepSpec {
            n_q: 2,
            n_delta: 2,
            method,
            ..SweepSpec::fig4()
        }
    }

    #[test]
    fn nodes_hit_both_ends() {
        let s = SweepSpec::fig4();
        assert_eq!(s.q_node(0), 0.8);
        assert_eq!(s.q_node(40), 0.9);
        assert_eq!(s.delta_node(40), 5.0);
        assert!((s.delta_node(20) - 4.35).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        let mut s = SweepSpec::fig4();
        s.n_q = 1;
        assert!(run_sweep(&s).is_err());
        let mut s = SweepSpec::fig4();
        s.q_min = 0.95;
        assert!(s.validate().is_err());
    }

    #[test]
    fn two_by_two_csv_has_five_lines() {
        let g = run_sweep(&tiny(SweepMethod::ClosedForm)).unwrap();
        let csv = to_csv(&g);
        assert_eq!(csv.lines().count(), 5);
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        for line in csv.lines().skip(1) {
            assert_eq!(line.split(',').count(), 14);
        }
    }

    #[test]
    fn both_methods_interleave_per_node() {
        let mut s = tiny(SweepMethod::Both);
        s.options.truncation_bound = 1.0;
        let g = run_sweep(&s).unwrap();
        assert_eq!(g.cells.len(), 8);
        assert_eq!(g.cells[0].method, Method::ClosedForm);
        assert_eq!(g.cells[1].method, Method::DiscreteSum);
        assert_eq!(g.cell(1, 0, Method::DiscreteSum).unwrap().i_delta, 1);
    }

    #[test]
    fn equal_widths_give_idle_grid() {
        let mut s = tiny(SweepMethod::DiscreteSum);
        s.base.alpha_h = s.base.alpha_c;
        s.options.truncation_bound = 1.0;
        let g = run_sweep(&s).unwrap();
        assert!(g.successes().all(|(_, r)| r.regime == Regime::Idle));
        assert_eq!(g.successes().count(), 4);
    }

    #[test]
    fn failures_are_rows_not_gaps() {
        // fig5 nodes share only one bound level: every discrete cell is cut
        let s = SweepSpec {
            method: SweepMethod::DiscreteSum,
            n_q: 3,
            n_delta: 3,
            ..SweepSpec::fig5()
        };
        let g = run_sweep(&s).unwrap();
        assert_eq!(g.failures().len(), 9);
        let csv = to_csv(&g);
        assert_eq!(csv.lines().count(), 10);
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .contains("failed:truncation_too_large"));
        assert!(matches!(
            find_optimum(&g, Metric::Cop),
            Err(Error::MetricUndefinedEverywhere)
        ));
    }

    #[test]
    fn optimum_prefers_lowest_index_on_ties() {
        let mut s = tiny(SweepMethod::DiscreteSum);
        s.base.alpha_h = s.base.alpha_c;
        s.options.truncation_bound = 1.0;
        let g = run_sweep(&s).unwrap();
        let o = find_optimum(&g, Metric::Work).unwrap();
        assert_eq!((o.i_delta, o.i_q, o.value), (0, 0, 0.0));
    }

    #[test]
    fn json_record_count() {
        let g = run_sweep(&tiny(SweepMethod::ClosedForm)).unwrap();
        let v: Value = serde_json::from_str(&to_json(&g)).unwrap();
        assert_eq!(v["records"].as_array().unwrap().len(), 4);
        assert_eq!(v["spec"]["n_q"], 2);
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.118, -2.84855034666042, 1e-300, 123456.789] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }
}
