//! Half-integer positions m ∈ Z + 1/2, stored exactly as the doubled value 2m.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A half-integer, i.e. an element of Z + 1/2. The inner value is 2m and is
/// always odd.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct HalfInt(i64);

impl HalfInt {
    /// Builds m from 2m. Panics if the doubled value is even.
    pub fn from_twice(twice: i64) -> Self {
        assert!(
            twice.rem_euclid(2) == 1,
            "doubled half-integer must be odd, got {twice}"
        );
        HalfInt(twice)
    }

    pub fn try_from_twice(twice: i64) -> Result<Self, Error> {
        if twice.rem_euclid(2) == 1 {
            Ok(HalfInt(twice))
        } else {
            Err(Error::NotHalfInt(twice))
        }
    }

    /// n + 1/2.
    pub fn int_plus_half(n: i64) -> Self {
        HalfInt(2 * n + 1)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    /// m - 1/2 as an integer.
    pub fn minus_half(self) -> i64 {
        (self.0 - 1) / 2
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl From<HalfInt> for i64 {
    fn from(h: HalfInt) -> i64 {
        h.0
    }
}

impl TryFrom<i64> for HalfInt {
    type Error = Error;
    fn try_from(twice: i64) -> Result<Self, Error> {
        HalfInt::try_from_twice(twice)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, k: i64) -> HalfInt {
        HalfInt(self.0 + 2 * k)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, k: i64) -> HalfInt {
        HalfInt(self.0 - 2 * k)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts the "a/2" form with odd numerator, e.g. "7/2" or "-13/2".
    fn from_str(s: &str) -> Result<Self, Error> {
        let body = s
            .strip_suffix("/2")
            .ok_or_else(|| Error::Invalid(format!("half-integer must end in /2: {s:?}")))?;
        let twice: i64 = body
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad half-integer numerator: {s:?}")))?;
        HalfInt::try_from_twice(twice)
    }
}
