//! Arithmetic back ends shared by the moment pipeline and the engine.
//!
//! Everything upstream of the Jacobi matrix is generic over [`Scalar`], so the
//! same code runs in exact rationals, in `f64`, and in double-double.

use std::fmt::Debug;

use num::{BigInt, BigRational, FromPrimitive, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::error::{Error, Result};

pub trait Scalar: Signed + Clone + PartialOrd + Debug + Send + Sync {
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;

    fn as_f64(&self) -> f64;

    /// `sqrt(self)` rounded to `f64`. Only used to fill Jacobi matrices.
    fn sqrt_f64(&self) -> f64;

    /// `None` when π is not representable.
    fn pi() -> Option<Self>;

    fn sqrt_pi() -> Option<Self>;

    fn from_u64(n: u64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_f64(&self) -> f64 {
        Scalar::as_f64(self).sqrt()
    }

    fn pi() -> Option<Self> {
        None
    }

    fn sqrt_pi() -> Option<Self> {
        None
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn sqrt_f64(&self) -> f64 {
        self.sqrt()
    }

    fn pi() -> Option<Self> {
        Some(std::f64::consts::PI)
    }

    fn sqrt_pi() -> Option<Self> {
        Some(std::f64::consts::PI.sqrt())
    }
}

impl Scalar for TwoFloat {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        let hi = q.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return TwoFloat::from(hi);
        }
        // hi is a dyadic rational, so the residual is exact.
        let residual = q - BigRational::from_f64(hi).expect("finite f64");
        let lo = residual.to_f64().unwrap_or(0.0);
        TwoFloat::new_add(hi, lo)
    }

    fn as_f64(&self) -> f64 {
        self.hi() + self.lo()
    }

    fn sqrt_f64(&self) -> f64 {
        let r = self.sqrt();
        r.hi() + r.lo()
    }

    fn pi() -> Option<Self> {
        Some(twofloat::consts::PI)
    }

    fn sqrt_pi() -> Option<Self> {
        Some(TwoFloat::from(2.0) / twofloat::consts::FRAC_2_SQRT_PI)
    }
}

/// Working precision of the floating path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arithmetic {
    ExactRational,
    /// Mantissa bits: 53 (`f64`) or 106 (double-double).
    Float(u32),
}

impl Arithmetic {
    pub const DEFAULT_FLOAT: Arithmetic = Arithmetic::Float(106);

    pub fn validate(self) -> Result<Self> {
        match self {
            Arithmetic::Float(53) | Arithmetic::Float(106) | Arithmetic::ExactRational => Ok(self),
            Arithmetic::Float(bits) => Err(Error::UnsupportedPrecision(bits)),
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Arithmetic::ExactRational)
    }
}

/// Parses `"p/q"`, integers, decimals (`"-1.25"`) and scientific notation
/// (`"1e-2"`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Converts a finite `f64` to the rational its shortest decimal form denotes,
/// so `0.1` becomes `1/10` rather than the nearest dyadic.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::Parse(format!("non-finite number {x}")));
    }
    parse_rational(&format!("{x}"))
}

/// Fixed-width 17-significant-digit rendering used by every CSV writer.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("0.05").unwrap(), q(1, 20));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("1e-2").unwrap(), q(1, 100));
        assert_eq!(parse_rational("2.5E1").unwrap(), q(25, 1));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "--1", "1e", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn f64_conversion_uses_shortest_decimal() {
        assert_eq!(rational_from_f64(0.1).unwrap(), q(1, 10));
        assert_eq!(rational_from_f64(-2.0).unwrap(), q(-2, 1));
        assert!(rational_from_f64(f64::NAN).is_err());
    }

    #[test]
    fn twofloat_conversion_keeps_extra_bits() {
        let third = <TwoFloat as Scalar>::from_rational(&q(1, 3));
        let err = (third * TwoFloat::from(3.0) - TwoFloat::from(1.0)).abs();
        assert!(err.hi() < 1e-30);
    }

    #[test]
    fn float_format_is_fixed_width() {
        assert_eq!(format_f64(1.0 / 6.0), "1.6666666666666666e-1");
        assert_eq!(format_f64(-0.5).len(), format_f64(0.25).len() + 1);
    }

    #[test]
    fn precision_validation() {
        assert!(Arithmetic::Float(53).validate().is_ok());
        assert!(Arithmetic::Float(106).validate().is_ok());
        assert!(Arithmetic::Float(64).validate().is_err());
    }
}
