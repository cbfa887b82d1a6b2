//! Output records and their JSON and CSV serialization.
//!
//! Reals are written with 17 significant digits in exponent form so that identical
//! runs produce byte-identical files.

use crate::error::CliError;
use hyperwedge::ComplexScalar;
use std::io::Write;

/// One field value of a record.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn json(&self) -> String {
        match self {
            Value::Real(x) if x.is_finite() => format_real(*x),
            Value::Real(_) => "null".into(),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => serde_json::to_string(s).expect("strings serialize"),
        }
    }

    fn csv(&self) -> String {
        match self {
            Value::Real(x) if x.is_finite() => format_real(*x),
            Value::Real(x) => x.to_string().to_lowercase(),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

/// `x` with 17 significant digits, e.g. `5.4930614433405489e-1`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// An ordered list of named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn real(mut self, key: &str, x: f64) -> Self {
        self.fields.push((key.into(), Value::Real(x)));
        self
    }

    /// Adds `key_re` and `key_im`.
    pub fn complex(self, key: &str, z: ComplexScalar) -> Self {
        self.real(&format!("{key}_re"), z.re).real(&format!("{key}_im"), z.im)
    }

    pub fn int(mut self, key: &str, n: u64) -> Self {
        self.fields.push((key.into(), Value::Int(n)));
        self
    }

    pub fn flag(mut self, key: &str, b: bool) -> Self {
        self.fields.push((key.into(), Value::Bool(b)));
        self
    }

    pub fn text(mut self, key: &str, s: impl Into<String>) -> Self {
        self.fields.push((key.into(), Value::Text(s.into())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }
}

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Writes `records` as a JSON array with one object per line.
pub fn write_json<W: Write + ?Sized>(out: &mut W, records: &[Record]) -> Result<(), CliError> {
    out.write_all(b"[")?;
    for (i, r) in records.iter().enumerate() {
        out.write_all(if i == 0 { b"\n  {" } else { b",\n  {" })?;
        for (j, (k, v)) in r.fields.iter().enumerate() {
            if j > 0 {
                out.write_all(b", ")?;
            }
            write!(out, "{}: {}", Value::Text(k.clone()).json(), v.json())?;
        }
        out.write_all(b"}")?;
    }
    out.write_all(if records.is_empty() { b"]\n" } else { b"\n]\n" })?;
    Ok(())
}

/// Writes `records` as CSV with a header row; all records must share the same keys.
pub fn write_csv<W: Write + ?Sized>(out: &mut W, records: &[Record]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let Some(first) = records.first() else {
        return Ok(());
    };
    let header: Vec<&str> = first.keys().collect();
    w.write_record(&header)?;
    for r in records {
        if !r.keys().eq(header.iter().copied()) {
            return Err(CliError::Output("records with different columns cannot share one CSV table".into()));
        }
        w.write_record(r.fields.iter().map(|(_, v)| v.csv()))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `records` in `format`.
pub fn write_records<W: Write + ?Sized>(out: &mut W, records: &[Record], format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(out, records),
        Format::Csv => write_csv(out, records),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_precision() {
        assert_eq!(format_real(0.5493061443340549), "5.4930614433405489e-1");
        assert_eq!(format_real(1.0), "1.0000000000000000e0");
        assert_eq!(format_real(-2.5e-300), "-2.5000000000000000e-300");
    }

    #[test]
    fn json_and_csv_layout() {
        let recs = vec![
            Record::new().real("x", 1.0).text("name", "a\"b").flag("ok", true),
            Record::new().real("x", f64::NAN).text("name", "c").flag("ok", false),
        ];
        let mut buf = Vec::new();
        write_json(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed[0]["name"], "a\"b");
        assert!(parsed[1]["x"].is_null());
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,name,ok\n1.0000000000000000e0,\"a\"\"b\",true\nnan,c,false\n");
        let mixed = vec![Record::new().real("x", 1.0), Record::new().real("y", 1.0)];
        assert!(write_csv(&mut Vec::new(), &mixed).is_err());
    }
}
