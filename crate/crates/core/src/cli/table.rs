use serde_json::{json, Map, Value};

use crate::sweep::fmt_float;

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Empty, Field::Num)
    }
}

/// Rows rendered either as CSV (round-trip floats) or as a JSON record array.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|f| match f {
                    Field::Num(v) => fmt_float(*v),
                    Field::Int(i) => i.to_string(),
                    Field::Text(t) => t.clone(),
                    Field::Empty => String::new(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, command: &str) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (col, f) in self.columns.iter().zip(row) {
                    let v = match f {
                        Field::Num(v) => {
                            serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number)
                        }
                        Field::Int(i) => json!(i),
                        Field::Text(t) => json!(t),
                        Field::Empty => Value::Null,
                    };
                    m.insert((*col).to_owned(), v);
                }
                Value::Object(m)
            })
            .collect();
        let mut text =
            serde_json::to_string_pretty(&json!({ "command": command, "records": records }))
                .expect("json values always serialize");
        text.push('\n');
        text
    }
}
