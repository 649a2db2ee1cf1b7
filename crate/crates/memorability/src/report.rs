//! Result tables, written side by side as TSV and JSON.

use std::path::Path;

use memorability_core::metrics::MetricReport;
use memorability_core::stats::stars;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;
use crate::io::write_atomic;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    /// A JSON array with one object per row.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().cloned()).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    /// Writes `<dir>/<name>.tsv` and `<dir>/<name>.json`.
    pub fn write(&self, dir: &Path, name: &str) -> Result<()> {
        write_atomic(&dir.join(format!("{name}.tsv")), self.to_tsv().as_bytes())?;
        let mut json = serde_json::to_vec_pretty(&self.to_json()).expect("serializable");
        json.push(b'\n');
        write_atomic(&dir.join(format!("{name}.json")), &json)
    }
}

/// Rounds for display; keeps reruns byte-identical across platforms.
pub fn round(x: f64, digits: i32) -> Value {
    let f = 10f64.powi(digits);
    serde_json::Number::from_f64((x * f).round() / f).map_or(Value::Null, Value::Number)
}

pub fn opt(x: Option<f64>, digits: i32) -> Value {
    x.map_or(Value::Null, |v| round(v, digits))
}

pub const METRIC_COLUMNS: [&str; 7] = ["metric_name", "wins", "losses", "ties", "win_percent", "p_value", "sig"];

pub fn metric_table(reports: &[MetricReport]) -> Table {
    let mut t = Table::new(&METRIC_COLUMNS);
    for r in reports {
        t.push(vec![
            r.metric_name.clone().into(),
            r.wins.into(),
            r.losses.into(),
            r.ties.into(),
            opt(r.win_percent, 2),
            r.p_value.map_or(Value::Null, |p| Value::String(format!("{p:.3e}"))),
            r.p_value.map_or("", stars).into(),
        ]);
    }
    t
}
