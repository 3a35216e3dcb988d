//! Scalar abstraction for physical quantities.
//!
//! Physical payloads (energies, rates, positions, forces) are floating
//! point and generic over [`Real`], so the physics runs on `f32` or `f64`
//! alike. Timestamps are *not* scalars in this sense: they stay exact
//! rationals (see [`crate::time`]), because stream composition hinges on
//! exact timestamp equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + fmt::Display
    + fmt::Debug
    + FromStr
    + Copy
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// A finite, non-NaN scalar with total equality, ordering, and hashing.
///
/// Negative zero is normalized to zero at construction so that `Eq`,
/// `Ord`, `Hash`, and the canonical textual encoding all agree.
#[derive(Clone, Copy, Debug)]
pub struct Finite<F: Real>(F);

impl<F: Real> Finite<F> {
    pub fn new(value: F) -> Result<Self, NotFinite> {
        if !value.is_finite() {
            return Err(NotFinite);
        }
        let value = if value == F::zero() { F::zero() } else { value };
        Ok(Finite(value))
    }

    pub fn get(self) -> F {
        self.0
    }
}

/// Error raised when a NaN or infinite value is used as a physical payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("physical payload must be a finite number")]
pub struct NotFinite;

impl<F: Real> PartialEq for Finite<F> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<F: Real> Eq for Finite<F> {}

impl<F: Real> PartialOrd for Finite<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Real> Ord for Finite<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Total because NaN is rejected at construction.
        self.0.partial_cmp(&other.0).expect("Finite holds no NaN")
    }
}

impl<F: Real> Hash for Finite<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // integer_decode is injective on finite floats once -0.0 is
        // normalized away, so this is consistent with Eq.
        let (mantissa, exponent, sign) = self.0.integer_decode();
        mantissa.hash(state);
        exponent.hash(state);
        sign.hash(state);
    }
}

impl<F: Real> fmt::Display for Finite<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
