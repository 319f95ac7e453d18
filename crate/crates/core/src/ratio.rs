use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

/// A non-negative fraction in lowest terms, printed as `num/den` even when
/// the denominator is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactRatio {
    num: u64,
    den: u64,
}

impl ExactRatio {
    /// `None` for a zero denominator.
    pub fn new(num: u64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        Some(ExactRatio { num: num / g, den: den / g })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn le_integer(&self, k: u64) -> bool {
        (self.num as u128) <= k as u128 * self.den as u128
    }

    pub fn parse(s: &str) -> Option<Self> {
        let (n, d) = s.split_once('/')?;
        Self::new(n.trim().parse().ok()?, d.trim().parse().ok()?)
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
