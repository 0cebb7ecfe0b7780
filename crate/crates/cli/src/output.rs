use std::io::Write;

use serde_json::{Map, Value};

use crate::manifest::RunManifest;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Text(String),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Num(x) if x.is_nan() => "nan".into(),
            Field::Num(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            Field::Num(x) => format!("{x:?}"),
            Field::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
            Field::Text(s) if s.is_empty() => Value::Null,
            Field::Text(s) => Value::String(s.clone()),
        }
    }
}

/// A rectangular result ready for CSV or JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Field::csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self, manifest: &RunManifest) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Field::json)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("manifest".into(), serde_json::to_value(manifest).unwrap_or(Value::Null));
        top.insert("rows".into(), Value::Array(rows));
        Value::Object(top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_dialect() {
        let mut t = Table::new(vec!["a".into(), "b".into(), "error".into()]);
        t.push(vec![Field::Num(0.5), Field::Num(f64::NAN), Field::Text("x, y".into())]);
        t.push(vec![Field::Num(1e-20), Field::Num(-2.0), Field::Text(String::new())]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b,error\n0.5,nan,\"x, y\"\n1e-20,-2.0,\n");
    }

    #[test]
    fn json_uses_null_for_nan() {
        let mut t = Table::new(vec!["a".into()]);
        t.push(vec![Field::Num(f64::NAN)]);
        let m = RunManifest::new("test", Default::default(), 0, vec![]);
        let v = t.to_json(&m);
        assert_eq!(v["rows"][0]["a"], Value::Null);
        assert_eq!(v["manifest"]["command"], "test");
    }
}
