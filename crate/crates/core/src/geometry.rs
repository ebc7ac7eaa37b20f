use std::fmt;
use std::ops::{Add, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::scalar::{format_rational, Scalar};
use crate::Rational;

/// A point or displacement in three dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coordinate3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Coordinate3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn norm_squared(&self) -> T {
        self.x.clone() * self.x.clone() + self.y.clone() * self.y.clone() + self.z.clone() * self.z.clone()
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self::new(
            self.x.clone() * factor.clone(),
            self.y.clone() * factor.clone(),
            self.z.clone() * factor.clone(),
        )
    }

    pub fn components(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl<T: Scalar> Add for &Coordinate3<T> {
    type Output = Coordinate3<T>;
    fn add(self, rhs: Self) -> Coordinate3<T> {
        Coordinate3::new(
            self.x.clone() + rhs.x.clone(),
            self.y.clone() + rhs.y.clone(),
            self.z.clone() + rhs.z.clone(),
        )
    }
}

impl<T: Scalar> Sub for &Coordinate3<T> {
    type Output = Coordinate3<T>;
    fn sub(self, rhs: Self) -> Coordinate3<T> {
        Coordinate3::new(
            self.x.clone() - rhs.x.clone(),
            self.y.clone() - rhs.y.clone(),
            self.z.clone() - rhs.z.clone(),
        )
    }
}

impl<T: fmt::Display> fmt::Display for Coordinate3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Exact coordinates serialize as `["p/q", "p/q", "p/q"]`.
impl Serialize for Coordinate3<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        for c in self.components() {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}
