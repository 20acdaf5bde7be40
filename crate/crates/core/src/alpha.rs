use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Finite orders closer than this to 1 are rejected; use [`Alpha::One`].
pub const ALPHA_LIMIT_WINDOW: f64 = 1e-6;

/// Rényi order: a finite positive value away from 1, or one of the limits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Alpha {
    Zero,
    One,
    Infinity,
    Finite(f64),
}

impl Alpha {
    pub fn finite(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidAlpha(format!(
                "finite order must be a positive real, got {value}"
            )));
        }
        if (value - 1.0).abs() < ALPHA_LIMIT_WINDOW {
            return Err(Error::InvalidAlpha(format!(
                "order {value} is within {ALPHA_LIMIT_WINDOW:e} of 1; use the α = 1 limit instead"
            )));
        }
        Ok(Alpha::Finite(value))
    }

    /// Maps 0, 1 and +∞ to the symbolic limits and everything else through
    /// [`Alpha::finite`].
    pub fn from_value(value: f64) -> Result<Self> {
        if value == 0.0 {
            Ok(Alpha::Zero)
        } else if value == 1.0 {
            Ok(Alpha::One)
        } else if value == f64::INFINITY {
            Ok(Alpha::Infinity)
        } else {
            Alpha::finite(value)
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Alpha::Zero => 0.0,
            Alpha::One => 1.0,
            Alpha::Infinity => f64::INFINITY,
            Alpha::Finite(v) => v,
        }
    }

    /// Dual order under `α + β = 2`.
    pub fn dual_sum(self) -> Result<Alpha> {
        Alpha::from_value(2.0 - self.value())
    }

    /// Dual order under `1/α + 1/β = 2`, i.e. `β = α/(2α - 1)`, with `½ ↔ ∞`.
    pub fn dual_harmonic(self) -> Result<Alpha> {
        match self {
            Alpha::Infinity => Ok(Alpha::Finite(0.5)),
            Alpha::Finite(v) if v == 0.5 => Ok(Alpha::Infinity),
            a => Alpha::from_value(a.value() / (2.0 * a.value() - 1.0)),
        }
    }

    /// Dual order under `α · β = 1`, with `0 ↔ ∞`.
    pub fn dual_product(self) -> Result<Alpha> {
        match self {
            Alpha::Zero => Ok(Alpha::Infinity),
            Alpha::Infinity => Ok(Alpha::Zero),
            a => Alpha::from_value(1.0 / a.value()),
        }
    }

    /// `2 - 1/α`, with `∞ ↦ 2`.
    pub fn sandwich_upper(self) -> Result<Alpha> {
        match self {
            Alpha::Infinity => Ok(Alpha::Finite(2.0)),
            a => Alpha::from_value(2.0 - 1.0 / a.value()),
        }
    }

    pub fn in_range(self, lo: f64, hi: f64) -> bool {
        let v = self.value();
        v >= lo && v <= hi
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match (self, f.precision()) {
            (Alpha::Zero, _) => "0".to_string(),
            (Alpha::One, _) => "1".to_string(),
            (Alpha::Infinity, _) => "inf".to_string(),
            (Alpha::Finite(v), Some(p)) => format!("{v:.p$}"),
            (Alpha::Finite(v), None) => v.to_string(),
        };
        match f.width() {
            Some(w) => write!(f, "{text:<w$}"),
            None => f.write_str(&text),
        }
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "∞" => return Ok(Alpha::Infinity),
            _ => {}
        }
        // accept the unicode minus so that "−0.5" is reported as out of range, not unparsable
        let normalized = t.replace('−', "-");
        let v: f64 = normalized
            .parse()
            .map_err(|_| Error::InvalidAlpha(format!("cannot parse `{s}` as an order")))?;
        Alpha::from_value(v)
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Alpha::Infinity => s.serialize_str("inf"),
            a => s.serialize_f64(a.value()),
        }
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        let parsed = match Repr::deserialize(d)? {
            Repr::Num(v) => Alpha::from_value(v),
            Repr::Str(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list such as `0,0.5,1,2,inf`.
pub fn parse_alpha_list(s: &str) -> Result<Vec<Alpha>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}
