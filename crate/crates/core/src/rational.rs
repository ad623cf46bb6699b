//! Exact rational values and p-adic grid parameters.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms.
pub type ExactRational = BigRational;

pub fn ratio(num: i64, den: i64) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

pub fn integer(n: u64) -> ExactRational {
    BigRational::from_integer(n.into())
}

/// `a / b` with `b` a positive machine integer.
pub fn ratio_u(num: u64, den: u64) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

/// Parses `"n"`, `"-n"` or `"n/d"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("`{text}` is not a rational number"),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Parameter `t = a / p^c` on the p-adic grid.
///
/// Stored in canonical form: `p` does not divide `a` unless `a = 0` (which
/// canonicalizes to `c = 0`) or `c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicRational {
    p: u32,
    a: u64,
    c: u32,
}

impl PadicRational {
    pub fn new(p: u32, mut a: u64, mut c: u32) -> Self {
        assert!(p >= 2, "p-adic grid needs p >= 2");
        if a == 0 {
            c = 0;
        }
        while c > 0 && a.is_multiple_of(p as u64) {
            a /= p as u64;
            c -= 1;
        }
        Self { p, a, c }
    }

    pub fn zero(p: u32) -> Self {
        Self::new(p, 0, 0)
    }

    /// Converts an exact rational whose denominator is a power of `p`.
    pub fn from_rational(p: u32, t: &ExactRational) -> Result<Self> {
        let not_grid = || Error::NonGridParameter(t.to_string());
        if t.is_negative() {
            return Err(not_grid());
        }
        let mut den = t.denom().clone();
        let pb = BigInt::from(p);
        let mut c = 0u32;
        while !den.is_one() {
            let (q, r) = den.div_rem(&pb);
            if !r.is_zero() {
                return Err(not_grid());
            }
            den = q;
            c += 1;
        }
        let a = t.numer().to_u64().ok_or_else(not_grid)?;
        Ok(Self::new(p, a, c))
    }

    pub fn parse(p: u32, text: &str) -> Result<Self> {
        Self::from_rational(p, &parse_rational(text)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical numerator.
    pub fn numerator(&self) -> u64 {
        self.a
    }

    /// Canonical scale `c`.
    pub fn scale(&self) -> u32 {
        self.c
    }

    /// Numerator of this value written over `p^scale`, if representable.
    pub fn numerator_at(&self, scale: u32) -> Option<u64> {
        if scale < self.c {
            return None;
        }
        (self.p as u64)
            .checked_pow(scale - self.c)
            .and_then(|m| m.checked_mul(self.a))
    }

    pub fn denominator(&self) -> BigUint {
        BigUint::from(self.p).pow(self.c)
    }

    pub fn value(&self) -> ExactRational {
        BigRational::new(self.a.into(), BigInt::from(self.denominator()))
    }
}

impl PartialOrd for PadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value()
            .cmp(&other.value())
            .then(self.p.cmp(&other.p))
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}", self.a, self.denominator())
        }
    }
}

/// Decimal rendering with `digits` significant digits, rounding half to even.
///
/// Display only; the exact value is always carried alongside.
pub fn to_decimal(value: &ExactRational, digits: u32) -> String {
    assert!(digits >= 1);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let v = value.abs();
    let ten = BigInt::from(10);
    // exponent k with 10^k <= v < 10^(k+1)
    let mut k: i64 = v.numer().to_string().len() as i64 - v.denom().to_string().len() as i64;
    let pow10 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(ten.clone().pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), ten.clone().pow((-e) as u32))
        }
    };
    while pow10(k) > v {
        k -= 1;
    }
    while pow10(k + 1) <= v {
        k += 1;
    }
    let shift = digits as i64 - 1 - k;
    let scaled = &v * pow10(shift);
    let mut mantissa = round_half_even(&scaled);
    if mantissa == ten.clone().pow(digits) {
        mantissa /= &ten;
        k += 1;
    }
    let shift = digits as i64 - 1 - k;
    let mut s = mantissa.to_string();
    let body = if shift <= 0 {
        s.push_str(&"0".repeat((-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if s.len() <= shift {
            format!("0.{}{}", "0".repeat(shift - s.len()), s)
        } else {
            let (int, frac) = s.split_at(s.len() - shift);
            format!("{int}.{frac}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn round_half_even(x: &BigRational) -> BigInt {
    let floor = x.floor().to_integer();
    let frac = x - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&half) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let t = PadicRational::new(5, 75, 3);
        assert_eq!((t.numerator(), t.scale()), (3, 1));
        assert_eq!(PadicRational::new(5, 0, 4), PadicRational::zero(5));
        assert_eq!(PadicRational::new(5, 25, 2).scale(), 0);
        assert_eq!(t.numerator_at(3), Some(75));
        assert_eq!(t.numerator_at(0), None);
        assert_eq!(t.value(), ratio(3, 5));
        assert_eq!(t.to_string(), "3/5");
    }

    #[test]
    fn from_rational_rejects_off_grid() {
        assert!(PadicRational::from_rational(5, &ratio(1, 3)).is_err());
        assert!(PadicRational::from_rational(5, &ratio(-1, 5)).is_err());
        assert_eq!(
            PadicRational::parse(5, "40/125").unwrap(),
            PadicRational::new(5, 8, 2)
        );
        assert_eq!(PadicRational::parse(7, "1").unwrap().value(), integer(1));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&integer(1), 12), "1.00000000000");
        assert_eq!(to_decimal(&ratio(2, 25), 12), "0.0800000000000");
        assert_eq!(to_decimal(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(to_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&integer(0), 12), "0");
        assert_eq!(to_decimal(&ratio(-3, 2), 12), "-1.50000000000");
        assert_eq!(to_decimal(&integer(123), 2), "120");
        // ties go to the even neighbour
        assert_eq!(to_decimal(&ratio(125, 1000), 2), "0.12");
        assert_eq!(to_decimal(&ratio(135, 1000), 2), "0.14");
        assert_eq!(to_decimal(&ratio(9999, 10000), 2), "1.0");
    }
}
