//! Exact rational arithmetic used for every charge, density and threshold.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// All charges, densities and thresholds are exact rationals. `num`'s
/// `Display` already prints `p/q` in lowest terms and bare integers
/// without the slash, which is the output contract of the CLI.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

/// Parses `p/q` or a bare integer, rejecting zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| format!("bad rational {s:?}"))?;
        Ok(Rational::from_integer(n))
    }
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}
