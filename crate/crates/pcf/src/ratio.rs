//! Exact rational arithmetic for approximation-ratio checks. Comparisons
//! are integer cross-multiplications; no floating point anywhere.

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// A nonnegative rational `num/den` with `den > 0`. Not necessarily reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatioError {
    #[error("malformed rational: {0}")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self, RatioError> {
        if den == 0 {
            return Err(RatioError::ZeroDenominator);
        }
        Ok(Ratio { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `size >= self * opt`, exactly. For integer `size` this is the same as
    /// `size >= ceil(self * opt)`.
    pub fn meets_floor(&self, size: usize, opt: usize) -> bool {
        (size as u128) * (self.den as u128) >= (self.num as u128) * (opt as u128)
    }
}

impl FromStr for Ratio {
    type Err = RatioError;

    /// Accepts `"a/b"` or a bare integer `"a"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RatioError::Malformed(s.to_string());
        match s.split_once('/') {
            Some((a, b)) => {
                let num = a.trim().parse::<u64>().map_err(|_| bad())?;
                let den = b.trim().parse::<u64>().map_err(|_| bad())?;
                Ratio::new(num, den)
            }
            None => {
                let num = s.trim().parse::<u64>().map_err(|_| bad())?;
                Ratio::new(num, 1)
            }
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
