//! Exact rationals. All coefficients, masses and exact points use
//! [`num_rational::BigRational`], which keeps values in lowest terms with a
//! positive denominator.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q` (decimal integers, `q != 0`).
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::InvalidRational(text.to_string());
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Renders as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
