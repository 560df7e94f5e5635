//! Exact filtration values.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

/// A non-negative rational filtration value `num / den`, kept in lowest terms.
///
/// Frequent-subgraph filtrations only ever produce `1 / support`, and the
/// degree filtration produces `deg / (max_deg + 1)`, so exact rationals keep
/// ties exact (isomorphic graphs must give bit-identical complexes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Value {
    num: u32,
    den: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Value {
    /// Builds `num / den`. Panics when `den == 0`.
    pub fn new(num: u32, den: u32) -> Self {
        assert!(den != 0, "filtration value with zero denominator");
        let g = gcd(num, den).max(1);
        Self { num: num / g, den: den / g }
    }

    /// The value `1 / support` a pattern of that MNI support induces.
    pub fn reciprocal(support: u32) -> Self {
        Self::new(1, support)
    }

    pub fn numerator(self) -> u32 {
        self.num
    }

    pub fn denominator(self) -> u32 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed filtration value `{0}` (expected `num/den`)")]
pub struct ParseValueError(pub alloc::string::String);

impl FromStr for Value {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseValueError(s.into());
        let (n, d) = s.trim().split_once('/').ok_or_else(err)?;
        let num: u32 = n.trim().parse().map_err(|_| err())?;
        let den: u32 = d.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        Ok(Self::new(num, den))
    }
}
