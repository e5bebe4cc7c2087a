//! Deterministic output rendering: CSV with 17-significant-digit floats and
//! JSON summaries with sorted keys.

use serde_json::{Map, Value};

use super::config::Format;

/// Fixed 17-significant-digit scientific formatting, so equal runs produce
/// byte-identical files.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        // normalize the sign of zero
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    /// Rendered as an empty CSV field / JSON null (e.g. an undefined ξ_S).
    Empty,
}

impl Cell {
    fn render_csv(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn render_json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::json!(x),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// A tabular output that renders as CSV (default) or JSON rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    /// Optional units row, emitted right below the CSV header.
    pub units: Option<Vec<String>>,
    /// Comment lines placed at the top of the CSV (each prefixed with "# ").
    pub preamble: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            units: None,
            preamble: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn with_units(mut self, units: &[&str]) -> Self {
        self.units = Some(units.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn with_preamble(mut self, line: String) -> Self {
        self.preamble.push(line);
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> Vec<u8> {
        let mut out = String::new();
        for line in &self.preamble {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        if let Some(units) = &self.units {
            out.push_str(&units.join(","));
            out.push('\n');
        }
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::render_csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out.into_bytes()
    }

    fn render_json(&self) -> Vec<u8> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), cell.render_json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&rows).expect("table serialization");
        text.push('\n');
        text.into_bytes()
    }

    /// File extension matching the render format.
    pub fn extension(format: Format) -> &'static str {
        match format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Render a JSON summary object with deterministic key order.
pub fn json_summary(entries: &[(&str, Value)]) -> Vec<u8> {
    let mut obj = Map::new();
    for (k, v) in entries {
        obj.insert(k.to_string(), v.clone());
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("json summary");
    text.push('\n');
    text.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_stable() {
        assert_eq!(format_float(1.5), "1.5000000000000000e0");
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
        assert_eq!(format_float(-0.25), "-2.5000000000000000e-1");
        // 17 significant digits round-trip exactly
        for x in [std::f64::consts::PI, 2.75e-11, -1.0 / 3.0, 6.02e23] {
            let parsed: f64 = format_float(x).parse().unwrap();
            assert_eq!(parsed, x);
        }
    }

    #[test]
    fn csv_render_with_units() {
        let mut t = Table::new(&["a", "b"]).with_units(&["m", "rad"]);
        t.push(vec![Cell::Float(1.0), Cell::Empty]);
        let text = String::from_utf8(t.render(Format::Csv)).unwrap();
        assert_eq!(text, "a,b\nm,rad\n1.0000000000000000e0,\n");
    }

    #[test]
    fn json_render() {
        let mut t = Table::new(&["a"]);
        t.push(vec![Cell::Int(3)]);
        let text = String::from_utf8(t.render(Format::Json)).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["a"], Value::from(3));
    }
}
