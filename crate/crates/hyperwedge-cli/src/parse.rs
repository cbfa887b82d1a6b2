//! Parsing of numeric literals and grid specifications.

use crate::error::CliError;
use hyperwedge::ComplexScalar;

/// Parses a decimal real or a complex literal `a+bi`, `a-bi`, `bi`, `i`.
pub fn parse_complex(text: &str) -> Result<ComplexScalar, CliError> {
    let bad = || CliError::Parse(format!("cannot parse {text:?} as a real or complex number (expected a, bi or a+bi)"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return parse_real_str(&t).map(|re| ComplexScalar::new(re, 0.0)).ok_or_else(bad);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real_str(&body[..k]).ok_or_else(bad)?, imag_coefficient(&body[k..]).ok_or_else(bad)?),
        None => (0.0, imag_coefficient(body).ok_or_else(bad)?),
    };
    Ok(ComplexScalar::new(re, im))
}

fn imag_coefficient(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real_str(s),
    }
}

fn parse_real_str(s: &str) -> Option<f64> {
    let lower = s.to_ascii_lowercase();
    if lower.contains("inf") || lower.contains("nan") {
        return None;
    }
    s.parse::<f64>().ok()
}

/// Parses a finite decimal real.
pub fn parse_real(text: &str) -> Result<f64, CliError> {
    parse_real_str(text.trim()).ok_or_else(|| CliError::Parse(format!("cannot parse {text:?} as a real number")))
}

/// Spacing of grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// One axis swept over `count` points between `from` and `to` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub axis: String,
    pub from: f64,
    pub to: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    /// Parses `axis=NAME,from=X,to=Y,count=N[,spacing=linear|log]`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let (mut axis, mut from, mut to, mut count, mut spacing) = (None, None, None, None, Spacing::Linear);
        for part in text.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("grid entry {part:?} is not of the form key=value")))?;
            match k.trim() {
                "axis" => axis = Some(v.trim().to_string()),
                "from" => from = Some(parse_real(v)?),
                "to" => to = Some(parse_real(v)?),
                "count" => {
                    count = Some(v.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("grid count {v:?} is not a positive integer")))?)
                }
                "spacing" => {
                    spacing = match v.trim() {
                        "linear" => Spacing::Linear,
                        "log" => Spacing::Log,
                        other => return Err(CliError::Parse(format!("unknown grid spacing {other:?} (linear or log)"))),
                    }
                }
                other => return Err(CliError::Parse(format!("unknown grid key {other:?}"))),
            }
        }
        let missing = |k: &str| CliError::Parse(format!("grid spec is missing {k}"));
        let spec = GridSpec {
            axis: axis.ok_or_else(|| missing("axis"))?,
            from: from.ok_or_else(|| missing("from"))?,
            to: to.ok_or_else(|| missing("to"))?,
            count: count.ok_or_else(|| missing("count"))?,
            spacing,
        };
        if spec.count == 0 {
            return Err(CliError::Parse("grid count must be at least 1".into()));
        }
        if spec.spacing == Spacing::Log && !(spec.from > 0.0 && spec.to > 0.0) {
            return Err(CliError::Parse("log spacing needs positive endpoints".into()));
        }
        Ok(spec)
    }

    /// Axis values in increasing index order.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        if n == 1 {
            return vec![self.from];
        }
        (0..n)
            .map(|k| {
                let f = k as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.from + (self.to - self.from) * f,
                    Spacing::Log => (self.from.ln() + (self.to.ln() - self.from.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| ComplexScalar::new(re, im);
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("-0.5-2i").unwrap(), c(-0.5, -2.0));
        assert_eq!(parse_complex("1e-3+2.5e+1i").unwrap(), c(1e-3, 25.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("3-i").unwrap(), c(3.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        for bad in ["", "1+", "a+bi", "1+2j", "nan", "inf", "1++2i", "2ii"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_specs() {
        let g = GridSpec::parse("axis=alpha,from=0.01,to=1.99,count=3").unwrap();
        assert_eq!(g.values(), vec![0.01, 1.0, 1.99]);
        let g = GridSpec::parse("axis=t,from=0.1,to=10,count=3,spacing=log").unwrap();
        assert!((g.values()[1] - 1.0).abs() < 1e-15);
        assert!(GridSpec::parse("axis=t,from=0,to=1").is_err());
        assert!(GridSpec::parse("axis=t,from=0,to=1,count=2,step=3").is_err());
    }
}
