use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A nondecreasing sequence of nonnegative integers, e.g. the lower or upper
/// spectral edge of a vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ColorSequence(Vec<i64>);

impl ColorSequence {
    /// Sorts `values`; negative entries are rejected.
    pub fn new(mut values: Vec<i64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v < 0) {
            return Err(invalid(format!("sequence entries must be nonnegative, got {v}")));
        }
        values.sort_unstable();
        Ok(ColorSequence(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest element.
    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    /// Largest element.
    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// True iff every integer between the minimum and maximum occurs.
    pub fn is_continuous(&self) -> bool {
        self.0.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Adds `p` to every element.
    pub fn shift(&self, p: u64) -> ColorSequence {
        let p = i64::try_from(p).expect("shift fits in i64");
        ColorSequence(self.0.iter().map(|&v| v + p).collect())
    }

    /// Distinct values with their multiplicities, ascending.
    pub fn runs(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

impl Index<usize> for ColorSequence {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<i64>> for ColorSequence {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        ColorSequence::new(v)
    }
}

impl From<ColorSequence> for Vec<i64> {
    fn from(s: ColorSequence) -> Self {
        s.0
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `"2,2,3,4,4"` (parentheses and whitespace tolerated).
impl FromStr for ColorSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return ColorSequence::new(Vec::new());
        }
        let values = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| invalid(format!("bad sequence entry '{}'", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        ColorSequence::new(values)
    }
}
