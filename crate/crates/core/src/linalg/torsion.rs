use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{common_denominator, IntMatrix};

/// A point of `ℝ^N/ℤ^N` with rational coordinates, each reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    coords: Vec<BigRational>,
}

pub(crate) fn reduce_mod_one(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl TorsionPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        TorsionPoint {
            coords: coords.iter().map(reduce_mod_one).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        TorsionPoint {
            coords: vec![BigRational::zero(); dim],
        }
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(fracs: &[(i64, i64)]) -> Self {
        TorsionPoint::new(
            fracs
                .iter()
                .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Order in the torus: the lcm of the coordinate denominators.
    pub fn order(&self) -> BigInt {
        common_denominator(&self.coords)
    }

    pub fn add(&self, other: &TorsionPoint) -> TorsionPoint {
        assert_eq!(self.dim(), other.dim());
        TorsionPoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> TorsionPoint {
        TorsionPoint::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &TorsionPoint) -> TorsionPoint {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> TorsionPoint {
        let k = BigRational::from_integer(k.clone());
        TorsionPoint::new(self.coords.iter().map(|a| a * &k).collect())
    }

    /// Image under an integer matrix, reduced mod `ℤ^N`.
    pub fn apply(&self, m: &IntMatrix) -> TorsionPoint {
        TorsionPoint::new(m.mul_rat_vec(&self.coords))
    }

    /// Coordinate-wise division by `k` of the `[0,1)` representative.
    pub fn divide(&self, k: &BigInt) -> TorsionPoint {
        let k = BigRational::from_integer(k.clone());
        TorsionPoint::new(self.coords.iter().map(|a| a / &k).collect())
    }

    /// Whether `k · self ≡ 0`.
    pub fn is_killed_by(&self, k: &BigInt) -> bool {
        self.scale(k).is_zero()
    }

    pub fn is_integral_vector(v: &[BigRational]) -> bool {
        v.iter().all(|x| x.denom().is_one())
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
