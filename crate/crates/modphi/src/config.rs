//! Run configuration shared by every subcommand; echoed into output headers.

use modphi_core::combinatorics::parse_rational;
use modphi_core::{Family, C64};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::output::Format;

pub const MIN_PRECISION: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub family: Option<u8>,
    pub n: Option<usize>,
    /// Rationals as typed (`p/q`, integer or decimal).
    pub theta: Vec<String>,
    pub z: Vec<[f64; 2]>,
    pub t: Vec<f64>,
    pub grid: Option<usize>,
    pub precision: usize,
    pub format: Format,
    pub relaxed: bool,
}

impl RunConfig {
    pub fn new(command: &str, format: Format) -> Self {
        RunConfig {
            command: command.to_string(),
            family: None,
            n: None,
            theta: Vec::new(),
            z: Vec::new(),
            t: Vec::new(),
            grid: None,
            precision: MIN_PRECISION * 4,
            format,
            relaxed: false,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        anyhow::ensure!(
            self.precision >= MIN_PRECISION,
            "precision must be at least {MIN_PRECISION} bits, got {}",
            self.precision
        );
        if let Some(f) = self.family {
            Family::from_index(f)?;
        }
        for s in &self.theta {
            parse_rational(s)?;
        }
        anyhow::ensure!(self.z.iter().flatten().all(|v| v.is_finite()), "z values must be finite");
        anyhow::ensure!(self.t.iter().all(|v| v.is_finite()), "t values must be finite");
        Ok(())
    }

    pub fn family(&self) -> anyhow::Result<Family> {
        let f = self.family.ok_or_else(|| anyhow::anyhow!("--family is required"))?;
        Ok(Family::from_index(f)?)
    }

    pub fn n(&self) -> anyhow::Result<usize> {
        self.n.ok_or_else(|| anyhow::anyhow!("--n is required"))
    }

    pub fn thetas(&self) -> anyhow::Result<Vec<BigRational>> {
        Ok(self.theta.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)
    }

    pub fn zs(&self) -> Vec<C64> {
        self.z.iter().map(|[re, im]| C64::c(*re, *im)).collect()
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).unwrap_or(Value::Null)
    }
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` or `i` into `[re, im]`.
pub fn parse_complex(s: &str) -> anyhow::Result<[f64; 2]> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return Ok([s.parse()?, 0.0]);
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (body[..j].parse()?, &body[j..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse()?,
    };
    Ok([re, im])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.3").unwrap(), [0.3, 0.0]);
        assert_eq!(parse_complex("0.1+0.1i").unwrap(), [0.1, 0.1]);
        assert_eq!(parse_complex("-1e-3-2i").unwrap(), [-1e-3, -2.0]);
        assert_eq!(parse_complex("2i").unwrap(), [0.0, 2.0]);
        assert_eq!(parse_complex("-i").unwrap(), [0.0, -1.0]);
        assert_eq!(parse_complex("1e+2+i").unwrap(), [100.0, 1.0]);
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn low_precision_is_rejected() {
        let mut c = RunConfig::new("modphi", Format::Csv);
        c.precision = 32;
        assert!(c.validate().is_err());
    }
}
