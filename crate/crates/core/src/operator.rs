use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which eigenvalue problem a bound or spectrum refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    /// Dirichlet Laplacian.
    Laplace,
    /// Clamped plate bilaplacian.
    Bilaplace,
}

impl Operator {
    pub fn as_str(self) -> &'static str {
        match self {
            Operator::Laplace => "laplace",
            Operator::Bilaplace => "bilaplace",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Operator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace" => Ok(Operator::Laplace),
            "bilaplace" | "clamped" => Ok(Operator::Bilaplace),
            other => Err(Error::InvalidParameter {
                name: "operator",
                reason: format!("unknown operator `{other}` (expected laplace or bilaplace)"),
            }),
        }
    }
}

/// Whether a bound sits below or above the eigenvalue sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
