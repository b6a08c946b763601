//! Exact coefficient rings and linear algebra over them.

mod dump;
mod matrix;
mod prime;
mod rational;
mod ring;
mod sparse;
mod truncated;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dump::{read_matrix, write_matrix, MatrixDump};
pub use matrix::Matrix;
pub use prime::PrimeField;
pub use rational::{is_normalized, Rationals};
pub use ring::{Field, LocalRing, Ring};
pub use sparse::SparseMatrix;
pub use truncated::{PadicRing, PowerSeriesRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("truncation precision must be at least 1")]
    ZeroPrecision,
    #[error("{p}^{precision} does not fit the 62-bit residue representation")]
    ModulusTooLarge { p: u64, precision: usize },
    #[error("{value} is not a unit (valuation {valuation:?})")]
    NotAUnit {
        value: String,
        valuation: Option<usize>,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported ring grammar `{0}`")]
    RingSpec(String),
}

/// Textual identity of a coefficient ring.
///
/// `Display`/`FromStr` use the command-line grammar
/// `Q | F<p> | F<p>[h]/h^<N> | Z/<p>^<N>`; [`RingSpec::header`] produces the
/// dump-file header (`Q`, `Fp p`, `Fp[h]/h^N p N`, `Z/p^N p N`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    Rational,
    Prime(u64),
    PowerSeries { p: u64, precision: usize },
    Padic { p: u64, precision: usize },
}

impl RingSpec {
    pub fn header(&self) -> String {
        match self {
            RingSpec::Rational => "Q".to_string(),
            RingSpec::Prime(p) => format!("Fp {p}"),
            RingSpec::PowerSeries { p, precision } => format!("Fp[h]/h^N {p} {precision}"),
            RingSpec::Padic { p, precision } => format!("Z/p^N {p} {precision}"),
        }
    }

    pub fn parse_header(s: &str) -> Result<Self, AlgebraError> {
        let err = || AlgebraError::RingSpec(s.to_string());
        let toks: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<u64, AlgebraError> {
            toks.get(i).ok_or_else(err)?.parse().map_err(|_| err())
        };
        match toks.first().copied() {
            Some("Q") if toks.len() == 1 => Ok(RingSpec::Rational),
            Some("Fp") if toks.len() == 2 => Ok(RingSpec::Prime(num(1)?)),
            Some("Fp[h]/h^N") if toks.len() == 3 => Ok(RingSpec::PowerSeries {
                p: num(1)?,
                precision: num(2)? as usize,
            }),
            Some("Z/p^N") if toks.len() == 3 => Ok(RingSpec::Padic {
                p: num(1)?,
                precision: num(2)? as usize,
            }),
            _ => Err(err()),
        }
    }

    /// Characteristic of the residue field; 0 for the rationals.
    pub fn residue_characteristic(&self) -> u64 {
        match self {
            RingSpec::Rational => 0,
            RingSpec::Prime(p) => *p,
            RingSpec::PowerSeries { p, .. } | RingSpec::Padic { p, .. } => *p,
        }
    }

    /// Modulus written in the `rows cols modulus` matrix header.
    pub fn matrix_modulus(&self) -> u64 {
        match self {
            RingSpec::Rational => 0,
            RingSpec::Prime(p) | RingSpec::PowerSeries { p, .. } => *p,
            RingSpec::Padic { p, precision } => p.pow(*precision as u32),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rational => write!(f, "Q"),
            RingSpec::Prime(p) => write!(f, "F{p}"),
            RingSpec::PowerSeries { p, precision } => write!(f, "F{p}[h]/h^{precision}"),
            RingSpec::Padic { p, precision } => write!(f, "Z/{p}^{precision}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AlgebraError::RingSpec(s.to_string());
        let s = s.trim();
        if s == "Q" {
            return Ok(RingSpec::Rational);
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            let (p, n) = rest.split_once('^').ok_or_else(err)?;
            let p = p.parse().map_err(|_| err())?;
            let precision = n.parse().map_err(|_| err())?;
            return Ok(RingSpec::Padic { p, precision });
        }
        if let Some(rest) = s.strip_prefix('F') {
            return match rest.split_once("[h]/h^") {
                Some((p, n)) => Ok(RingSpec::PowerSeries {
                    p: p.parse().map_err(|_| err())?,
                    precision: n.parse().map_err(|_| err())?,
                }),
                None => Ok(RingSpec::Prime(rest.parse().map_err(|_| err())?)),
            };
        }
        Err(err())
    }
}
