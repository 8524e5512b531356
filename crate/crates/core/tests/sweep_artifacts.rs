//! Grid layout and artifact schema.

use qotto::otto_cycle::{Method, Regime};
use qotto::sweep::{
    emit_to_path, run_sweep, to_csv, to_json, OutputFormat, SweepMethod, SweepSpec, CSV_HEADER,
};
use serde_json::Value;

#[test]
fn rows_follow_delta_major_order() {
    let spec = SweepSpec {
        n_q: 3,
        n_delta: 4,
        ..SweepSpec::fig4()
    };
    let g = run_sweep(&spec).unwrap();
    let keys: Vec<(usize, usize)> = g.cells.iter().map(|c| (c.i_delta, c.i_q)).collect();
    let expected: Vec<(usize, usize)> = (0..4).flat_map(|d| (0..3).map(move |q| (d, q))).collect();
    assert_eq!(keys, expected);
    let csv = to_csv(&g);
    let first: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.8);
    assert_eq!(first[1].parse::<f64>().unwrap(), 3.7);
    let second: Vec<&str> = csv.lines().nth(2).unwrap().split(',').collect();
    assert!((second[0].parse::<f64>().unwrap() - 0.85).abs() < 1e-15);
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let spec = SweepSpec {
        n_q: 5,
        n_delta: 5,
        method: SweepMethod::Both,
        ..SweepSpec::fig4()
    };
    let g = run_sweep(&spec).unwrap();
    let csv = to_csv(&g);
    let json: Value = serde_json::from_str(&to_json(&g)).unwrap();
    let records = json["records"].as_array().unwrap();
    assert_eq!(records.len(), csv.lines().count() - 1);
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    for (line, rec) in csv.lines().skip(1).zip(records) {
        for (name, field) in header.iter().zip(line.split(',')) {
            let v = &rec[*name];
            match v {
                Value::Null => assert!(field.is_empty(), "{name}"),
                Value::String(s) => assert_eq!(s, field),
                Value::Number(n) => {
                    assert_eq!(n.as_f64().unwrap(), field.parse::<f64>().unwrap(), "{name}")
                }
                _ => panic!("unexpected {v}"),
            }
        }
    }
    assert_eq!(json["spec"]["method"], "both");
}

#[test]
fn efficiency_and_cop_columns_are_exclusive() {
    let g = run_sweep(&SweepSpec {
        n_q: 3,
        n_delta: 3,
        ..SweepSpec::fig5()
    })
    .unwrap();
    for line in to_csv(&g).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert!(f[10].is_empty() && !f[11].is_empty());
        assert!(f[13].is_empty(), "closed rows carry no truncation loss");
    }
    assert!(g
        .successes()
        .all(|(c, r)| c.method == Method::ClosedForm && r.regime == Regime::Refrigerator));
}

#[test]
fn writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = run_sweep(&SweepSpec {
        n_q: 2,
        n_delta: 2,
        ..SweepSpec::fig4()
    })
    .unwrap();
    let path = dir.path().join("grid.csv");
    emit_to_path(&g, OutputFormat::Csv, &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), to_csv(&g));
    let err =
        emit_to_path(&g, OutputFormat::Csv, &dir.path().join("missing/grid.csv")).unwrap_err();
    assert!(err.to_string().contains("missing/grid.csv"));
}

#[test]
fn engine_hot_heat_grows_with_depth() {
    let g = run_sweep(&SweepSpec::fig4()).unwrap();
    let s = g.spec;
    for i_q in 0..s.n_q {
        for i_delta in 1..s.n_delta {
            let at = |d| g.cell(d, i_q, Method::ClosedForm).unwrap().outcome.as_ref().unwrap().q_hot;
            assert!(at(i_delta) >= at(i_delta - 1), "i_q={i_q} i_delta={i_delta}");
        }
    }
}
