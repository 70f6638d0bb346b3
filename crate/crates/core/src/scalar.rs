use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer coefficient ring used by polynomials, matrices and Smith normal form.
///
/// Implemented for every exact signed integer type from `num`: fixed-width
/// (`i64`, `i128`) for fast experiments and property tests, `BigInt` for
/// anything whose minors may overflow.
pub trait Coeff:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("coefficient type cannot hold i64 value")
    }
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + Display
        + Hash
        + Ord
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// `base^exp` by repeated squaring.
pub fn pow_u<C: Coeff>(base: &C, mut exp: u64) -> C {
    let mut acc = C::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    acc
}
