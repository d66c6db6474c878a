//! Exactly represented positive reals.
//!
//! Over Q every local norm and height in scope has the form r*sqrt(s)
//! with positive rationals r, s; comparisons are decided on squares.
//! Over F_p(t) every value is a power of e and only the exponent is
//! stored. Canonical heights always have integer exponents; the
//! exponent slot is a rational so that the square root appearing in
//! one of the dilation constants stays representable.

use crate::error::{Error, Result};
use crate::field::GroundField;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone)]
pub enum ExactPositive {
    /// rational * sqrt(radicand), both factors positive rationals.
    Sqrt { rational: BigRational, radicand: BigRational },
    /// e^exponent with an exact rational exponent (integer for heights).
    LogExp(BigRational),
}

impl ExactPositive {
    pub fn from_rational(r: BigRational) -> Self {
        assert!(r.is_positive(), "ExactPositive must be positive");
        ExactPositive::Sqrt { rational: r, radicand: BigRational::one() }
    }

    pub fn sqrt_of_rational(s: BigRational) -> Self {
        assert!(s.is_positive(), "ExactPositive must be positive");
        ExactPositive::Sqrt { rational: BigRational::one(), radicand: s }
    }

    pub fn from_log(m: i64) -> Self {
        ExactPositive::LogExp(BigRational::from_integer(m.into()))
    }

    pub fn one_for(field: GroundField) -> Self {
        match field {
            GroundField::Rationals => ExactPositive::from_rational(BigRational::one()),
            GroundField::RationalFunctionField { .. } => ExactPositive::from_log(0),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactPositive::Sqrt { rational, radicand } => {
                // r*sqrt(s) = 1 iff r^2 s = 1
                rational * rational * radicand == BigRational::one()
            }
            ExactPositive::LogExp(m) => m.is_zero(),
        }
    }

    /// The square of the value as a rational (Q backend only).
    pub fn squared_rational(&self) -> Option<BigRational> {
        match self {
            ExactPositive::Sqrt { rational, radicand } => Some(rational * rational * radicand),
            ExactPositive::LogExp(_) => None,
        }
    }

    pub fn log_exponent(&self) -> Option<&BigRational> {
        match self {
            ExactPositive::LogExp(m) => Some(m),
            _ => None,
        }
    }

    pub fn mul(&self, other: &ExactPositive) -> ExactPositive {
        match (self, other) {
            (
                ExactPositive::Sqrt { rational: r1, radicand: s1 },
                ExactPositive::Sqrt { rational: r2, radicand: s2 },
            ) => ExactPositive::Sqrt { rational: r1 * r2, radicand: s1 * s2 },
            (ExactPositive::LogExp(a), ExactPositive::LogExp(b)) => ExactPositive::LogExp(a + b),
            _ => panic!("ExactPositive arithmetic across backends"),
        }
    }

    pub fn inv(&self) -> ExactPositive {
        match self {
            ExactPositive::Sqrt { rational, radicand } => {
                // 1/(r sqrt(s)) = (1/(r s)) sqrt(s)
                ExactPositive::Sqrt {
                    rational: (rational * radicand).recip(),
                    radicand: radicand.clone(),
                }
            }
            ExactPositive::LogExp(m) => ExactPositive::LogExp(-m),
        }
    }

    pub fn div(&self, other: &ExactPositive) -> ExactPositive {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: i64) -> ExactPositive {
        if n < 0 {
            return self.inv().pow(-n);
        }
        match self {
            ExactPositive::Sqrt { rational, radicand } => {
                let rn = pow_rational(rational, n as u64);
                let half = pow_rational(radicand, (n / 2) as u64);
                if n % 2 == 0 {
                    ExactPositive::Sqrt { rational: rn * half, radicand: BigRational::one() }
                } else {
                    ExactPositive::Sqrt { rational: rn * half, radicand: radicand.clone() }
                }
            }
            ExactPositive::LogExp(m) => ExactPositive::LogExp(m * BigRational::from_integer(n.into())),
        }
    }

    /// Exact square root; defined only when the value is rational
    /// (radicand 1 after squaring) over Q, always over F_p(t).
    pub fn sqrt(&self) -> Result<ExactPositive> {
        match self {
            ExactPositive::Sqrt { rational, radicand } => {
                if radicand.is_one() {
                    Ok(ExactPositive::sqrt_of_rational(rational.clone()))
                } else if let Some(root) = exact_rational_sqrt(radicand) {
                    Ok(ExactPositive::sqrt_of_rational(rational * root))
                } else {
                    Err(Error::Domain(
                        "square root of a non-rational ExactPositive is not representable".into(),
                    ))
                }
            }
            ExactPositive::LogExp(m) => Ok(ExactPositive::LogExp(m / BigRational::from_integer(2.into()))),
        }
    }

    pub fn cmp_exact(&self, other: &ExactPositive) -> Ordering {
        match (self, other) {
            (ExactPositive::Sqrt { .. }, ExactPositive::Sqrt { .. }) => self
                .squared_rational()
                .unwrap()
                .cmp(&other.squared_rational().unwrap()),
            (ExactPositive::LogExp(a), ExactPositive::LogExp(b)) => a.cmp(b),
            _ => panic!("ExactPositive comparison across backends"),
        }
    }

    pub fn le(&self, other: &ExactPositive) -> bool {
        self.cmp_exact(other) != Ordering::Greater
    }

    /// Compares self^a against other^b without leaving the representation.
    pub fn cmp_pow(&self, a: i64, other: &ExactPositive, b: i64) -> Ordering {
        self.pow(a).cmp_exact(&other.pow(b))
    }

    /// Float approximation for display only; never used in verdicts.
    pub fn approx_f64(&self) -> f64 {
        match self {
            ExactPositive::Sqrt { rational, radicand } => {
                rational.to_f64().unwrap_or(f64::INFINITY)
                    * radicand.to_f64().unwrap_or(f64::INFINITY).sqrt()
            }
            ExactPositive::LogExp(m) => m.to_f64().unwrap_or(f64::INFINITY).exp(),
        }
    }
}

fn pow_rational(r: &BigRational, n: u64) -> BigRational {
    let mut out = BigRational::one();
    let mut base = r.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            out *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    out
}

fn exact_rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl PartialEq for ExactPositive {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for ExactPositive {}

impl fmt::Display for ExactPositive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactPositive::Sqrt { rational, radicand } => {
                if radicand.is_one() {
                    write!(f, "{rational}")
                } else if rational.is_one() {
                    write!(f, "sqrt({radicand})")
                } else {
                    write!(f, "{rational}*sqrt({radicand})")
                }
            }
            ExactPositive::LogExp(m) => write!(f, "e^{m}"),
        }
    }
}

impl Serialize for ExactPositive {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        match self {
            ExactPositive::Sqrt { rational, radicand } => {
                map.serialize_entry("rational", &rational.to_string())?;
                map.serialize_entry("radicand", &radicand.to_string())?;
            }
            ExactPositive::LogExp(m) => {
                if m.denom().is_one() {
                    map.serialize_entry("logExp", &m.numer().to_i64().unwrap())?;
                } else {
                    map.serialize_entry("logExp", &m.to_string())?;
                }
            }
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LogExpRepr {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
struct ExactPositiveRepr {
    rational: Option<String>,
    radicand: Option<String>,
    #[serde(rename = "logExp")]
    log_exp: Option<LogExpRepr>,
}

impl<'de> Deserialize<'de> for ExactPositive {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ExactPositiveRepr::deserialize(deserializer)?;
        if let Some(le) = repr.log_exp {
            let m = match le {
                LogExpRepr::Int(i) => BigRational::from_integer(i.into()),
                LogExpRepr::Str(s) => parse_rational(&s).map_err(D::Error::custom)?,
            };
            return Ok(ExactPositive::LogExp(m));
        }
        let r = repr.rational.ok_or_else(|| D::Error::custom("missing 'rational'"))?;
        let s = repr.radicand.ok_or_else(|| D::Error::custom("missing 'radicand'"))?;
        let rational = parse_rational(&r).map_err(D::Error::custom)?;
        let radicand = parse_rational(&s).map_err(D::Error::custom)?;
        if !rational.is_positive() || !radicand.is_positive() {
            return Err(D::Error::custom("ExactPositive parts must be positive"));
        }
        Ok(ExactPositive::Sqrt { rational, radicand })
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            s.parse().map_err(|_| Error::Parse(format!("bad rational '{s}'")))?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn compare_on_squares() {
        // 2*sqrt(2) vs 3: 8 < 9
        let a = ExactPositive::Sqrt { rational: rat(2, 1), radicand: rat(2, 1) };
        let b = ExactPositive::from_rational(rat(3, 1));
        assert_eq!(a.cmp_exact(&b), Ordering::Less);
        // sqrt(4) == 2 despite different representations
        let c = ExactPositive::sqrt_of_rational(rat(4, 1));
        let d = ExactPositive::from_rational(rat(2, 1));
        assert_eq!(c, d);
    }

    #[test]
    fn powers() {
        let a = ExactPositive::sqrt_of_rational(rat(3, 1));
        assert_eq!(a.pow(2), ExactPositive::from_rational(rat(3, 1)));
        assert_eq!(a.pow(3).squared_rational().unwrap(), rat(27, 1));
        assert_eq!(a.pow(0), ExactPositive::from_rational(rat(1, 1)));
        assert_eq!(a.pow(-2), ExactPositive::from_rational(rat(1, 3)));
        let m = ExactPositive::from_log(3);
        assert_eq!(m.pow(4), ExactPositive::from_log(12));
    }

    #[test]
    fn inverse_is_exact() {
        let a = ExactPositive::Sqrt { rational: rat(2, 3), radicand: rat(5, 1) };
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn serde_roundtrip() {
        let a = ExactPositive::Sqrt { rational: rat(2, 3), radicand: rat(5, 1) };
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"rational":"2/3","radicand":"5"}"#);
        let back: ExactPositive = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);

        let m = ExactPositive::from_log(-4);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"logExp":-4}"#);
        let back: ExactPositive = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}
