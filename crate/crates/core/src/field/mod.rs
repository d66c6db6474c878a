//! Exact arithmetic for the two supported ground fields, their places,
//! local absolute values, and the product formula.
//!
//! Both supported fields have global degree 1 and local degree 1 at
//! every place, so the 1/d normalizing exponents in height formulas
//! are literally 1 and every quantity in scope is exactly computable.

mod exact;
mod place;
pub mod poly;

pub use exact::ExactPositive;
pub use place::{abs_value, product_formula_check, support_places, Place};
pub(crate) use place::{rational_ord, rational_power, PlaceRepr};
pub use poly::{Poly, RatFun};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Descriptor for the ground field K: the rationals or F_p(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroundField {
    Rationals,
    RationalFunctionField { p: u64 },
}

impl GroundField {
    pub fn rationals() -> Self {
        GroundField::Rationals
    }

    /// F_p(t) for a prime p.
    pub fn rational_functions(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Domain(format!("characteristic {p} is not prime")));
        }
        Ok(GroundField::RationalFunctionField { p })
    }

    pub fn zero(&self) -> Scalar {
        match self {
            GroundField::Rationals => Scalar::Rational(BigRational::zero()),
            GroundField::RationalFunctionField { p } => Scalar::RatFun(RatFun::zero(*p)),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            GroundField::Rationals => Scalar::Rational(BigRational::one()),
            GroundField::RationalFunctionField { p } => Scalar::RatFun(RatFun::one(*p)),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            GroundField::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            GroundField::RationalFunctionField { p } => {
                let c = n.rem_euclid(*p as i64) as u64;
                Scalar::RatFun(RatFun::from_poly(Poly::constant(*p, c)))
            }
        }
    }
}

impl fmt::Display for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundField::Rationals => write!(f, "Q"),
            GroundField::RationalFunctionField { p } => write!(f, "F_{p}(t)"),
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar of the ground field: a reduced fraction over Q or a
/// reduced ratio of polynomials with monic denominator over F_p(t).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    RatFun(RatFun),
}

impl Scalar {
    pub fn field(&self) -> GroundField {
        match self {
            Scalar::Rational(_) => GroundField::Rationals,
            Scalar::RatFun(r) => GroundField::RationalFunctionField { p: r.characteristic() },
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_frac(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar::RatFun(RatFun::from_poly(p))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RatFun(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::RatFun(r) => r.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_ratfun(&self) -> Option<&RatFun> {
        match self {
            Scalar::RatFun(r) => Some(r),
            _ => None,
        }
    }

    fn pair<'a>(&'a self, other: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across backends"
        );
        (self, other)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match self.pair(other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::RatFun(a), Scalar::RatFun(b)) => Scalar::RatFun(a.add(b)),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match self.pair(other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::RatFun(a), Scalar::RatFun(b)) => Scalar::RatFun(a.sub(b)),
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match self.pair(other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::RatFun(a), Scalar::RatFun(b)) => Scalar::RatFun(a.mul(b)),
            _ => unreachable!(),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        assert!(!other.is_zero(), "scalar division by zero");
        match self.pair(other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a / b),
            (Scalar::RatFun(a), Scalar::RatFun(b)) => Scalar::RatFun(a.div(b)),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::RatFun(a) => Scalar::RatFun(a.neg()),
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverting zero scalar");
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::RatFun(a) => Scalar::RatFun(a.inv()),
        }
    }

    /// Serialized form: "a/b" over Q, "num/den" sparse polynomials over F_p(t).
    pub fn parse(field: GroundField, s: &str) -> Result<Scalar> {
        match field {
            GroundField::Rationals => {
                let s = s.trim();
                let r = match s.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad numerator '{n}'")))?;
                        let d: BigInt = d
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad denominator '{d}'")))?;
                        if d.is_zero() {
                            return Err(Error::Parse("zero denominator".into()));
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(
                        s.parse()
                            .map_err(|_| Error::Parse(format!("bad integer '{s}'")))?,
                    ),
                };
                Ok(Scalar::Rational(r))
            }
            GroundField::RationalFunctionField { p } => Ok(Scalar::RatFun(RatFun::parse(p, s)?)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::RatFun(r) => write!(f, "{r}"),
        }
    }
}

/// Exposes the sign-normalized (numerator, denominator) pair of a
/// rational with positive denominator.
pub fn rational_parts(r: &BigRational) -> (BigInt, BigInt) {
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_display_parse() {
        let f = GroundField::Rationals;
        let s = Scalar::from_frac(-3, 4);
        assert_eq!(format!("{s}"), "-3/4");
        assert_eq!(Scalar::parse(f, "-3/4").unwrap(), s);
        assert_eq!(format!("{}", Scalar::from_int(7)), "7");

        let ff = GroundField::rational_functions(2).unwrap();
        let s = Scalar::parse(ff, "t^2+1/t").unwrap();
        assert_eq!(format!("{s}"), "t^2+1/t");
    }

    #[test]
    fn field_arithmetic() {
        let a = Scalar::from_frac(1, 2);
        let b = Scalar::from_frac(1, 3);
        assert_eq!(a.add(&b), Scalar::from_frac(5, 6));
        assert_eq!(a.mul(&b), Scalar::from_frac(1, 6));
        assert_eq!(a.div(&b), Scalar::from_frac(3, 2));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(GroundField::rational_functions(4).is_err());
    }
}
