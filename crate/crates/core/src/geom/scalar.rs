use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GeomError;

/// Exact rational coordinate.
///
/// Always kept in canonical form (positive denominator, reduced), which is
/// what `num_rational` maintains for us.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, GeomError> {
        if den.is_zero() {
            return Err(GeomError::Parse("zero denominator".into()));
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.0.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Arithmetic mean of two values.
    pub fn mid(a: &Scalar, b: &Scalar) -> Scalar {
        (a + b) * Scalar::ratio(1, 2)
    }

    pub fn min_of<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max_of<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Exact conversion of a finite double (every finite f64 is a dyadic rational).
    pub fn from_f64_exact(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Scalar)
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar(v)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| GeomError::Parse(format!("bad rational `{s}`")))
        };
        match s.split_once('/') {
            Some((n, d)) => Scalar::from_big(parse_int(n)?, parse_int(d)?),
            None => Ok(Scalar(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        super::scalar_from_json(&v).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// Compare two scalars given cheap double approximations; falls back to the
/// exact comparison only when the doubles cannot separate them.
#[inline]
pub(crate) fn cmp_filtered(a: &Scalar, fa: f64, b: &Scalar, fb: f64) -> Ordering {
    let diff = fa - fb;
    let bound = 4.0 * f64::EPSILON * (fa.abs() + fb.abs());
    if diff > bound {
        Ordering::Greater
    } else if diff < -bound {
        Ordering::Less
    } else {
        a.cmp(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let s: Scalar = "6/-4".parse().unwrap();
        assert_eq!(s.to_string(), "-3/2");
        let t: Scalar = " 7 ".parse().unwrap();
        assert_eq!(t, Scalar::from_int(7));
        assert_eq!(t.to_string(), "7");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Scalar::ratio(1, 3);
        let sum = &third + &third + &third;
        assert_eq!(sum, Scalar::one());
        assert_eq!((Scalar::ratio(2, 3) * Scalar::ratio(3, 4)).to_string(), "1/2");
        assert_eq!(Scalar::mid(&Scalar::zero(), &Scalar::one()), Scalar::ratio(1, 2));
    }

    #[test]
    fn filtered_compare_agrees_with_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(333_333_333_333_333_333, 1_000_000_000_000_000_000);
        assert_eq!(cmp_filtered(&a, a.to_f64(), &b, b.to_f64()), a.cmp(&b));
        assert_eq!(cmp_filtered(&b, b.to_f64(), &a, a.to_f64()), Ordering::Less);
    }
}
