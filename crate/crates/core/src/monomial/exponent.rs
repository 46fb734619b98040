use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Exponent vector of a monomial `x^alpha` in `d` variables.
///
/// Ordering is lexicographic; divisibility is the termwise order [`ExponentVector::divides`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<BigUint>);

impl ExponentVector {
    pub fn new(coords: Vec<BigUint>) -> Self {
        Self(coords)
    }

    pub fn from_u64s(coords: &[u64]) -> Self {
        Self(coords.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![BigUint::zero(); d])
    }

    /// `x_i`, zero-indexed.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zero(d);
        v.0[i] = BigUint::from(1u32);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigUint> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `|alpha| = sum_i alpha_i`.
    pub fn degree(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// Termwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `max(self - other, 0)` termwise.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a > b { a - b } else { BigUint::zero() })
                .collect(),
        )
    }

    /// `self - other`, if `other <= self` termwise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if other.divides(self) {
            Some(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    /// Termwise maximum (exponent of the lcm).
    pub fn join(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.max(b).clone()).collect())
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn div_ceil(&self, k: &BigUint) -> Self {
        Self(self.0.iter().map(|a| Integer::div_ceil(a, k)).collect())
    }

    pub fn div_floor(&self, k: &BigUint) -> Self {
        Self(self.0.iter().map(|a| a / k).collect())
    }

    /// Termwise `min(self, cap)`.
    pub fn cap(&self, cap: &Self) -> Self {
        Self(self.0.iter().zip(&cap.0).map(|(a, c)| a.min(c).clone()).collect())
    }

    /// Number of coordinates that are nonzero.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        if self.0.len() == 1 {
            write!(f, ",")?;
        }
        write!(f, ")")
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = BigUint;

    fn index(&self, i: usize) -> &BigUint {
        &self.0[i]
    }
}

/// Serialized as a plain array of (arbitrarily large) JSON integers.
impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> = self
            .0
            .iter()
            .map(|c| c.to_string().parse().expect("decimal integer"))
            .collect();
        nums.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(deserializer)?;
        nums.iter()
            .map(|n| {
                n.to_string()
                    .parse::<BigUint>()
                    .map_err(|_| de::Error::custom(format!("not a non-negative integer: {n}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}
