use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::scalar::{one, Scalar};

/// ℤ/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_degree(d: usize) -> Self {
        if d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u32 {
        self as u32
    }

    /// `(-1)^{p q}`.
    pub fn koszul(self, other: Parity) -> Scalar {
        if self.is_odd() && other.is_odd() {
            -one()
        } else {
            one()
        }
    }

    /// `(-1)^{p}`.
    pub fn sign(self) -> Scalar {
        if self.is_odd() {
            -one()
        } else {
            one()
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
