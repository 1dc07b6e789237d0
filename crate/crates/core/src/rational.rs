//! Exact rationals and their `num/den` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den`; panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `n` for integers and `n/d` otherwise.
pub fn format(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d`. Decimal points and exponents are rejected.
pub fn parse(s: &str) -> Result<Rat> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rat::new(num, den))
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Converts to `f64`, going through the logarithm when numerator or
/// denominator overflow.
pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    let mag = (log_abs(r.numer()) - log_abs(r.denom())).exp();
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

fn log_abs(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    let bits = n.bits();
    if bits < 1000 {
        n.abs().to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        let top = (n.abs() >> shift).to_f64().unwrap_or(1.0);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Exact `r^n` for integer `n` (negative powers of zero panic).
pub fn powi(r: &Rat, n: i64) -> Rat {
    if n == 0 {
        return Rat::one();
    }
    let mut base = if n < 0 { r.recip() } else { r.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Exact `k`-th root of a non-negative integer, if it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse(" 1 / 6 ").unwrap(), ratio(1, 6));
        assert_eq!(format(&ratio(-3, 2)), "-3/2");
        assert_eq!(format(&ratio(4, 2)), "2");
        assert!(parse("1.5").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("1e3").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn powers_and_roots() {
        assert_eq!(powi(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(powi(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(exact_root(&BigInt::from(27), 3), Some(BigInt::from(3)));
        assert_eq!(exact_root(&BigInt::from(28), 3), None);
    }

    #[test]
    fn huge_to_f64() {
        // Numerator and denominator both overflow f64.
        let big = (powi(&int(10), 400) + int(1)) / powi(&int(10), 398);
        assert!((to_f64(&big) - 100.0).abs() < 1e-9);
        let small = int(1) / (powi(&int(10), 400) + int(1));
        assert!(to_f64(&small) == 0.0 || to_f64(&small) < 1e-300);
    }
}
