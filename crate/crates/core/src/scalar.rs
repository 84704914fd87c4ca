//! Exact scalar fields the geometry kernel is generic over.
//!
//! Everything in this crate relies on exact equality (face saturation,
//! integrality of dual vertices), so only exact fields implement
//! [`ExactScalar`]. `BigRational` is the default; `Rational64` is a faster
//! choice for small inputs and panics when a value leaves the `i64` range.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait ExactScalar:
    Clone + Debug + Display + Ord + Hash + Signed + Send + Sync + 'static
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;

    fn numer_bigint(&self) -> BigInt;

    fn denom_bigint(&self) -> BigInt;

    fn floor_bigint(&self) -> BigInt;

    fn ceil_bigint(&self) -> BigInt;

    /// Lossy conversion, only used when rendering figures.
    fn to_f64_lossy(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn is_integral(&self) -> bool {
        self.denom_bigint().is_one()
    }

    fn to_bigrational(&self) -> BigRational {
        BigRational::new(self.numer_bigint(), self.denom_bigint())
    }
}

impl ExactScalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn numer_bigint(&self) -> BigInt {
        self.numer().clone()
    }

    fn denom_bigint(&self) -> BigInt {
        self.denom().clone()
    }

    fn floor_bigint(&self) -> BigInt {
        self.floor().to_integer()
    }

    fn ceil_bigint(&self) -> BigInt {
        self.ceil().to_integer()
    }

    fn to_f64_lossy(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

fn narrow(n: &BigInt) -> i64 {
    n.to_i64()
        .unwrap_or_else(|| panic!("value {n} does not fit the i64-backed rational"))
}

impl ExactScalar for Ratio<i64> {
    fn from_bigint(n: &BigInt) -> Self {
        Ratio::from_integer(narrow(n))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Ratio::new(narrow(num), narrow(den))
    }

    fn numer_bigint(&self) -> BigInt {
        BigInt::from(*self.numer())
    }

    fn denom_bigint(&self) -> BigInt {
        BigInt::from(*self.denom())
    }

    fn floor_bigint(&self) -> BigInt {
        BigInt::from(self.floor().to_integer())
    }

    fn ceil_bigint(&self) -> BigInt {
        BigInt::from(self.ceil().to_integer())
    }

    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to itself.
pub fn primitive_integer_vector<T: ExactScalar>(v: &[T]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_bigint()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer_bigint() * (&lcm / x.denom_bigint()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
