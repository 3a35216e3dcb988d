//! Exact rational timestamps.
//!
//! Stream composition merges observations exactly when their timestamps
//! are equal, so time arithmetic must be exact: floating-point equality
//! would silently change which observations synchronize. Timestamps are
//! nonnegative rationals in reduced form; any dense totally ordered time
//! domain would do, and the rationals are enough for everything here.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Real;

/// A nonnegative rational point in time, unique in reduced form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeStamp(Ratio<i64>);

/// Error constructing a [`TimeStamp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum TimeError {
    #[error("timestamp denominator must be nonzero")]
    ZeroDenominator,
    #[error("timestamp must be nonnegative")]
    Negative,
}

impl TimeStamp {
    /// Builds `num/den`, reduced. The sign may sit on either argument as
    /// long as the value is nonnegative.
    pub fn new(num: i64, den: i64) -> Result<Self, TimeError> {
        if den == 0 {
            return Err(TimeError::ZeroDenominator);
        }
        let r = Ratio::new(num, den);
        if r.is_negative() {
            return Err(TimeError::Negative);
        }
        Ok(TimeStamp(r))
    }

    pub fn from_int(n: u32) -> Self {
        TimeStamp(Ratio::from_integer(i64::from(n)))
    }

    pub fn zero() -> Self {
        TimeStamp(Ratio::zero())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Exact midpoint; used to place fresh observations between neighbors.
    pub fn midpoint(a: TimeStamp, b: TimeStamp) -> TimeStamp {
        TimeStamp((a.0 + b.0) / 2)
    }

    pub fn plus(&self, other: TimeStamp) -> TimeStamp {
        TimeStamp(self.0 + other.0)
    }

    /// Exact difference, or `None` when `other > self`.
    pub fn minus(&self, other: TimeStamp) -> Option<TimeStamp> {
        if other.0 > self.0 {
            None
        } else {
            Some(TimeStamp(self.0 - other.0))
        }
    }

    /// Lossy conversion for physics integrals.
    pub fn to_scalar<F: Real>(&self) -> F {
        let num = F::from_i64(*self.0.numer()).expect("i64 fits the scalar range");
        let den = F::from_i64(*self.0.denom()).expect("i64 fits the scalar range");
        num / den
    }
}

/// A seeded, strictly increasing rational time sequence.
///
/// Gaps are drawn from the quarter-integer grid `[1/4, 2]`, so every
/// sequence respects a minimum gap of 1/4 and grows without bound
/// (non-Zeno by construction).
pub fn seeded_sequence(len: usize, seed: u64) -> Vec<TimeStamp> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut times = Vec::with_capacity(len);
    let mut current = Ratio::zero();
    for _ in 0..len {
        let quarters: i64 = rng.gen_range(1..=8);
        current += Ratio::new(quarters, 4);
        times.push(TimeStamp(current));
    }
    times
}

impl std::fmt::Display for TimeStamp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl std::fmt::Debug for TimeStamp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

impl Serialize for TimeStamp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("TimeStamp", 2)?;
        s.serialize_field("num", self.0.numer())?;
        s.serialize_field("den", self.0.denom())?;
        s.end()
    }
}

#[derive(Deserialize)]
struct RawTime {
    num: i64,
    den: i64,
}

impl<'de> Deserialize<'de> for TimeStamp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawTime::deserialize(deserializer)?;
        TimeStamp::new(raw.num, raw.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_unique() {
        let a = TimeStamp::new(2, 4).unwrap();
        let b = TimeStamp::new(1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.numer(), 1);
        assert_eq!(a.denom(), 2);
    }

    #[test]
    fn sign_handling() {
        assert_eq!(TimeStamp::new(-1, -2).unwrap(), TimeStamp::new(1, 2).unwrap());
        assert_eq!(TimeStamp::new(-1, 2), Err(TimeError::Negative));
        assert_eq!(TimeStamp::new(1, 0), Err(TimeError::ZeroDenominator));
    }

    #[test]
    fn ordering_is_exact() {
        let third = TimeStamp::new(1, 3).unwrap();
        let close = TimeStamp::new(333_333_333, 1_000_000_000).unwrap();
        assert!(close < third);
    }

    #[test]
    fn midpoint_lands_strictly_between() {
        let a = TimeStamp::new(1, 1).unwrap();
        let b = TimeStamp::new(2, 1).unwrap();
        let m = TimeStamp::midpoint(a, b);
        assert!(a < m && m < b);
        assert_eq!(m, TimeStamp::new(3, 2).unwrap());
    }

    #[test]
    fn serde_round_trip() {
        let t = TimeStamp::new(7, 3).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"num":7,"den":3}"#);
        let back: TimeStamp = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<TimeStamp>(r#"{"num":-1,"den":3}"#).is_err());
    }
}
