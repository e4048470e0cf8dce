//! Rectangular tables with a metadata block, and their CSV/JSON encodings.

use std::fmt::Write as _;

use serde_json::{json, Map};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            Value::Int(i) => Some(*i as f64),
            Value::Text(_) => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            Value::Num(x) => format_num(*x),
            Value::Int(i) => i.to_string(),
            Value::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Value::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Num(x) if x.is_finite() => json!(x),
            Value::Num(x) => json!(format_num(*x)),
            Value::Int(i) => json!(i),
            Value::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Int(i as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

/// 17 significant digits, so every double round-trips.
pub fn format_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

/// Which columns an SVG rendering draws.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotHint {
    pub x: usize,
    pub ys: Vec<usize>,
    /// Rows with equal values in this column form one polyline.
    pub group: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableArtifact {
    /// File stem used when several tables are written to a directory.
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Ordered key/value pairs; always contains `command` and `version`.
    pub metadata: Vec<(String, String)>,
    pub plot: Option<PlotHint>,
}

impl TableArtifact {
    pub fn new(name: impl Into<String>, command: &str, columns: &[&str]) -> Self {
        TableArtifact {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: vec![],
            metadata: vec![
                ("command".into(), command.into()),
                ("version".into(), env!("CARGO_PKG_VERSION").into()),
            ],
            plot: None,
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn with_plot(mut self, x: usize, ys: &[usize], group: Option<usize>) -> Self {
        self.plot = Some(PlotHint {
            x,
            ys: ys.to_vec(),
            group,
        });
        self
    }

    /// Append a row; panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match header of table {}",
            self.name
        );
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(s, "# {k}: {v}");
        }
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), json!(v));
        }
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| serde_json::Value::Array(r.iter().map(Value::json).collect()))
            .collect();
        let doc = json!({
            "name": self.name,
            "metadata": meta,
            "columns": self.columns,
            "rows": rows,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("table serialises");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TableArtifact {
        let mut t = TableArtifact::new("t", "spectrum", &["n", "energy", "kind"]).meta("N", 4);
        t.push(vec![0usize.into(), 0.1.into(), "a,b".into()]);
        t.push(vec![1usize.into(), f64::INFINITY.into(), "c".into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# command: spectrum");
        assert!(lines[1].starts_with("# version: "));
        assert_eq!(lines[2], "# N: 4");
        assert_eq!(lines[3], "n,energy,kind");
        assert_eq!(lines[4], "0,1.0000000000000001e-1,\"a,b\"");
        assert_eq!(lines[5], "1,inf,c");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(format_num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_is_parseable() {
        let doc: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(doc["columns"][1], "energy");
        assert_eq!(doc["rows"][1][1], "inf");
        assert_eq!(doc["metadata"]["N"], "4");
    }

    #[test]
    #[should_panic]
    fn ragged_rows_rejected() {
        let mut t = TableArtifact::new("t", "x", &["a", "b"]);
        t.push(vec![1usize.into()]);
    }
}
