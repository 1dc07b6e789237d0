//! Torsion classes: functions `ℝ_{>0} → ℝ_{>0}` of the form
//! `t^r · ∏ max{1, t^c}^m`, taken up to the monomial factor `t^r`.
//!
//! For `a, b ≥ 0` one has `max{1,t^a}·max{1,t^b} = max{1,t^{a+b}}` pointwise,
//! and `max{1,t^{-c}} = t^{-c}·max{1,t^c}`. In log coordinates every such
//! function is linear on `t ≤ 1` and on `t ≥ 1`, so modulo `t^r` it is fixed
//! by the jump in slope at `t = 1`, which is `Σ |c|·m`. That jump is the
//! [`degree`](TorsionFunction::degree), and a class is stored as its degree
//! alone. Its canonical representative is `max{1, t^D}` for `D > 0`,
//! `max{1, t^{-D}}^-1` for `D < 0`, and `1` for `D = 0`.

use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TorsionFunction {
    degree: Rat,
}

/// Value of a representative at a point.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation {
    Exact(Rat),
    /// `t^D` with irrational value, computed in `f64`; relative error is
    /// well below `1e-12` for the exponents that occur here.
    Approx(f64),
}

impl Evaluation {
    pub fn to_f64(&self) -> f64 {
        match self {
            Evaluation::Exact(r) => rational::to_f64(r),
            Evaluation::Approx(x) => *x,
        }
    }
}

impl TorsionFunction {
    /// The class of the constant function 1.
    pub fn unit() -> Self {
        TorsionFunction::default()
    }

    pub fn is_unit(&self) -> bool {
        self.degree.is_zero()
    }

    /// The class with the given degree.
    pub fn with_degree(degree: Rat) -> Self {
        TorsionFunction { degree }
    }

    /// `max{1, t^x}^m ≐ max{1, t^|x|}^m`.
    pub fn from_exponent(x: &Rat, m: i64) -> Self {
        TorsionFunction {
            degree: x.abs() * Rat::from_integer(m.into()),
        }
    }

    /// `max{1, t^|x|}^e` for a rational power `e`, using
    /// `max{1,t^a}^e = max{1,t^{a·e}}` for `a, e > 0`.
    pub fn rational_pow(x: &Rat, e: &Rat) -> Self {
        TorsionFunction { degree: x.abs() * e }
    }

    pub fn pow(&self, n: i64) -> Self {
        TorsionFunction {
            degree: &self.degree * Rat::from_integer(n.into()),
        }
    }

    pub fn inverse(&self) -> Self {
        TorsionFunction { degree: -&self.degree }
    }

    /// Growth exponent at `t → ∞` minus that at `t → 0`; equals `Σ c·m`.
    pub fn degree(&self) -> &Rat {
        &self.degree
    }

    /// Canonical factor map `{exponent ↦ multiplicity}`: empty for the unit,
    /// otherwise the single entry `|D| ↦ sign(D)`.
    pub fn factors(&self) -> Vec<(Rat, i64)> {
        match rational::sign(&self.degree) {
            0 => vec![],
            s => vec![(self.degree.abs(), i64::from(s))],
        }
    }

    /// Evaluates the canonical representative (`r = 0`) at `t > 0`.
    ///
    /// Exact whenever `t^D` is rational; otherwise falls back to `f64`.
    pub fn evaluate_representative(&self, t: &Rat) -> Result<Evaluation> {
        if !t.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "evaluation point must be positive, got {}",
                rational::format(t)
            )));
        }
        if *t <= Rat::one() || self.degree.is_zero() {
            return Ok(Evaluation::Exact(Rat::one()));
        }
        let (num, den) = (self.degree.numer(), self.degree.denom());
        if let (Some(p), Some(q)) = (num.to_i64(), den.to_u32()) {
            if q == 1 {
                return Ok(Evaluation::Exact(rational::powi(t, p)));
            }
            if let (Some(a), Some(b)) = (rational::exact_root(t.numer(), q), rational::exact_root(t.denom(), q)) {
                return Ok(Evaluation::Exact(rational::powi(&Rat::new(a, b), p)));
            }
        }
        Ok(Evaluation::Approx(self.evaluate_f64(rational::to_f64(t))))
    }

    /// Evaluates the canonical representative at a floating-point `t > 0`.
    pub fn evaluate_f64(&self, t: f64) -> f64 {
        if t <= 1.0 || self.degree.is_zero() {
            1.0
        } else {
            (rational::to_f64(&self.degree) * t.ln()).exp()
        }
    }
}

impl Mul for &TorsionFunction {
    type Output = TorsionFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &TorsionFunction) -> TorsionFunction {
        TorsionFunction {
            degree: &self.degree + &rhs.degree,
        }
    }
}

impl Mul for TorsionFunction {
    type Output = TorsionFunction;
    fn mul(self, rhs: TorsionFunction) -> TorsionFunction {
        &self * &rhs
    }
}

impl Div for &TorsionFunction {
    type Output = TorsionFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &TorsionFunction) -> TorsionFunction {
        TorsionFunction {
            degree: &self.degree - &rhs.degree,
        }
    }
}

impl std::iter::Product for TorsionFunction {
    fn product<I: Iterator<Item = TorsionFunction>>(iter: I) -> Self {
        iter.fold(TorsionFunction::unit(), |acc, f| acc * f)
    }
}

impl<'a> std::iter::Product<&'a TorsionFunction> for TorsionFunction {
    fn product<I: Iterator<Item = &'a TorsionFunction>>(iter: I) -> Self {
        iter.fold(TorsionFunction::unit(), |acc, f| &acc * f)
    }
}

/// `max{1,t^{P}}`, `max{1,t^{N}}^-1`, or `1`.
impl fmt::Display for TorsionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match rational::sign(&self.degree) {
            0 => f.write_str("1"),
            1 => write!(f, "max{{1,t^{{{}}}}}", rational::format(&self.degree)),
            _ => write!(f, "max{{1,t^{{{}}}}}^-1", rational::format(&-&self.degree)),
        }
    }
}

/// Parses products of `max{1,t^{c}}` factors, each optionally raised to an
/// integer power `^m`, joined by `*`. The unit is `1`.
impl FromStr for TorsionFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::InvalidArgument(format!("cannot parse torsion class {s:?}"));
        let s = s.trim();
        if s == "1" {
            return Ok(TorsionFunction::unit());
        }
        let mut acc = TorsionFunction::unit();
        for part in s.split('*') {
            let part = part.trim();
            let rest = part.strip_prefix("max{1,t^{").ok_or_else(err)?;
            let (exp, tail) = rest.split_once("}}").ok_or_else(err)?;
            let exponent = rational::parse(exp).map_err(|_| err())?;
            let power = match tail.trim() {
                "" => 1,
                t => t
                    .strip_prefix('^')
                    .and_then(|m| m.trim().parse::<i64>().ok())
                    .ok_or_else(err)?,
            };
            acc = acc * TorsionFunction::from_exponent(&exponent, power);
        }
        Ok(acc)
    }
}
