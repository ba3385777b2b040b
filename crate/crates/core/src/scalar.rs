//! Scalar abstraction for the arithmetic used throughout the crate.

use std::fmt;
use std::str::FromStr;

use num::traits::{FromPrimitive, Num, Signed};

/// Number type the core algorithms are generic over.
///
/// The bounds amount to an ordered field with exact construction from
/// machine integers. [`crate::Rat`] (arbitrary-precision rationals) is the
/// instantiation every public interface defaults to and the only one the
/// exactness guarantees apply to; `f32`/`f64` also satisfy the bounds for
/// callers that accept approximate arithmetic.
pub trait Scalar:
    Num
    + Signed
    + PartialOrd
    + FromPrimitive
    + Clone
    + FromStr
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + PartialOrd
        + FromPrimitive
        + Clone
        + FromStr
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Embeds an `i64` into the scalar type.
pub fn from_i64<S: Scalar>(v: i64) -> S {
    S::from_i64(v).expect("scalar type must embed i64")
}

/// Parses a scalar from its textual form, rejecting zero denominators
/// before they can reach the underlying parser.
pub fn parse_scalar<S: Scalar>(text: &str) -> crate::error::Result<S> {
    use crate::error::Error;

    let trimmed = text.trim();
    if let Some((_, den)) = trimmed.split_once('/') {
        match den.trim().parse::<num::BigInt>() {
            Ok(d) if num::Zero::is_zero(&d) => {
                return Err(Error::Parse(format!("zero denominator in '{trimmed}'")))
            }
            _ => {}
        }
    }
    trimmed
        .parse::<S>()
        .map_err(|_| Error::Parse(format!("cannot parse '{trimmed}' as a scalar")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn parse_rationals() {
        let half: Rat = parse_scalar("1/2").unwrap();
        assert_eq!(half, Rat::new(1.into(), 2.into()));
        let neg: Rat = parse_scalar("-3").unwrap();
        assert_eq!(neg, from_i64::<Rat>(-3));
        assert!(parse_scalar::<Rat>("1/0").is_err());
        assert!(parse_scalar::<Rat>("abc").is_err());
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(from_i64::<Rat>(-12).to_string(), "-12");
        assert_eq!(Rat::new(3.into(), 6.into()).to_string(), "1/2");
    }
}
