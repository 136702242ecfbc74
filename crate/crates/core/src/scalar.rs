//! Exact scalar types the linear algebra is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// An exact integer ring: `i64`, `i128` or `BigInt`.
///
/// Fixed-width types are fast for the small 0/1 systems the search loops
/// produce; every arithmetic step goes through the checked operations, so
/// an overflow panics instead of silently producing a wrong certificate.
pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}

/// Exact rational over an [`ExactInt`].
pub type Frac<T> = Ratio<T>;

#[inline]
pub(crate) fn add<T: ExactInt>(a: &T, b: &T) -> T {
    a.checked_add(b).expect("integer overflow in exact arithmetic")
}

#[inline]
pub(crate) fn sub<T: ExactInt>(a: &T, b: &T) -> T {
    a.checked_sub(b).expect("integer overflow in exact arithmetic")
}

#[inline]
pub(crate) fn mul<T: ExactInt>(a: &T, b: &T) -> T {
    a.checked_mul(b).expect("integer overflow in exact arithmetic")
}

/// Non-negative gcd of a slice; zero for an all-zero slice.
pub(crate) fn gcd_all<T: ExactInt>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |g, v| g.gcd(v))
}

/// Divides out the content and makes the first nonzero entry positive.
pub(crate) fn make_primitive<T: ExactInt>(values: &mut [T]) {
    let g = gcd_all(values);
    if g.is_zero() {
        return;
    }
    let flip = values.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
    for v in values.iter_mut() {
        *v = v.clone() / g.clone();
        if flip {
            *v = -v.clone();
        }
    }
}

/// Lossless conversion between exact integer types, `None` if out of range.
pub fn convert<A: ExactInt, B: ExactInt>(value: &A) -> Option<B> {
    if let Some(v) = value.to_i128() {
        return B::from_i128(v);
    }
    // Only BigInt-sized values reach this point.
    let text = value.to_string();
    B::from_str_radix(&text, 10).ok()
}
