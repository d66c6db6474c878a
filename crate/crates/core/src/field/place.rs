//! Places of the ground field, exact local absolute values, and the
//! product formula.

use crate::error::{Error, Result};
use crate::field::poly::Poly;
use crate::field::{is_prime_u64, ExactPositive, GroundField, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A place of K. Over Q: the archimedean place or a prime. Over
/// F_p(t): the degree valuation at infinity or a monic irreducible
/// polynomial. Local degrees are 1 throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Archimedean,
    Prime(BigInt),
    InfinitePlace(u64),
    PolynomialPlace(Poly),
}

impl Place {
    pub fn prime(p: i64) -> Result<Place> {
        let p = BigInt::from(p);
        Place::prime_big(p)
    }

    pub fn prime_big(p: BigInt) -> Result<Place> {
        if !is_prime_bigint(&p) {
            return Err(Error::InvalidPlace(format!("{p} is not prime")));
        }
        Ok(Place::Prime(p))
    }

    pub fn polynomial(q: Poly) -> Result<Place> {
        if !q.is_monic() || !q.is_irreducible()? {
            return Err(Error::InvalidPlace(format!(
                "{q} is not a monic irreducible polynomial"
            )));
        }
        Ok(Place::PolynomialPlace(q))
    }

    pub fn field(&self) -> Option<GroundField> {
        match self {
            Place::Archimedean | Place::Prime(_) => Some(GroundField::Rationals),
            Place::InfinitePlace(p) => Some(GroundField::RationalFunctionField { p: *p }),
            Place::PolynomialPlace(q) => {
                Some(GroundField::RationalFunctionField { p: q.characteristic() })
            }
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Archimedean)
    }

    fn check_backend(&self, field: GroundField) -> Result<()> {
        if self.field() != Some(field) {
            return Err(Error::BackendMismatch(format!(
                "place {self} does not belong to {field}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
            Place::InfinitePlace(_) => write!(f, "inf"),
            Place::PolynomialPlace(q) => write!(f, "({q})"),
        }
    }
}

/// JSON form of a place, tagged to stay unambiguous across backends.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub(crate) enum PlaceRepr {
    Archimedean,
    Prime { p: String },
    Infinite,
    Polynomial { poly: String },
}

impl Place {
    pub(crate) fn to_repr(&self) -> PlaceRepr {
        match self {
            Place::Archimedean => PlaceRepr::Archimedean,
            Place::Prime(p) => PlaceRepr::Prime { p: p.to_string() },
            Place::InfinitePlace(_) => PlaceRepr::Infinite,
            Place::PolynomialPlace(q) => PlaceRepr::Polynomial { poly: q.to_string() },
        }
    }

    pub(crate) fn from_repr(repr: &PlaceRepr, field: GroundField) -> Result<Place> {
        match (repr, field) {
            (PlaceRepr::Archimedean, GroundField::Rationals) => Ok(Place::Archimedean),
            (PlaceRepr::Prime { p }, GroundField::Rationals) => {
                let p: BigInt = p.parse().map_err(|_| Error::Parse(format!("bad prime '{p}'")))?;
                Place::prime_big(p)
            }
            (PlaceRepr::Infinite, GroundField::RationalFunctionField { p }) => {
                Ok(Place::InfinitePlace(p))
            }
            (PlaceRepr::Polynomial { poly }, GroundField::RationalFunctionField { p }) => {
                Place::polynomial(Poly::parse(p, poly)?)
            }
            _ => Err(Error::BackendMismatch("place does not match field".into())),
        }
    }
}

fn is_prime_bigint(n: &BigInt) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => false, // primes beyond u64 are out of desk scale
    }
}

/// ord_p of a nonzero integer.
fn int_ord(n: &BigInt, p: &BigInt) -> u64 {
    let mut n = n.clone();
    let mut ord = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return ord;
        }
        ord += 1;
        n = q;
    }
}

/// ord_p of a nonzero rational.
pub(crate) fn rational_ord(r: &BigRational, p: &BigInt) -> i64 {
    int_ord(r.numer(), p) as i64 - int_ord(r.denom(), p) as i64
}

/// |a|_v as an ExactPositive; a must be nonzero. The zero convention
/// |0|_v = 0 is carried by callers as an explicit absent value.
pub fn abs_value(v: &Place, a: &Scalar) -> Result<ExactPositive> {
    v.check_backend(a.field())?;
    if a.is_zero() {
        return Err(Error::Domain("absolute value of zero (use the explicit zero flag)".into()));
    }
    Ok(match (v, a) {
        (Place::Archimedean, Scalar::Rational(r)) => ExactPositive::from_rational(r.abs()),
        (Place::Prime(p), Scalar::Rational(r)) => {
            let ord = rational_ord(r, p);
            ExactPositive::from_rational(rational_power(p, -ord))
        }
        (Place::InfinitePlace(_), Scalar::RatFun(r)) => ExactPositive::from_log(r.infinite_degree()),
        (Place::PolynomialPlace(q), Scalar::RatFun(r)) => {
            let deg = q.degree().unwrap() as i64;
            ExactPositive::from_log(-deg * r.order_at(q))
        }
        _ => unreachable!("backend checked above"),
    })
}

/// p^e as a positive rational (e may be negative).
pub(crate) fn rational_power(p: &BigInt, e: i64) -> BigRational {
    let mag = p.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Every place at which some listed element has absolute value != 1,
/// always including the archimedean / infinite place.
pub fn support_places(elements: &[Scalar]) -> Result<BTreeSet<Place>> {
    let nonzero: Vec<&Scalar> = elements.iter().filter(|e| !e.is_zero()).collect();
    let first = nonzero
        .first()
        .ok_or_else(|| Error::Domain("support of an all-zero list".into()))?;
    let field = first.field();
    let mut out = BTreeSet::new();
    match field {
        GroundField::Rationals => {
            out.insert(Place::Archimedean);
            for e in &nonzero {
                if e.field() != field {
                    return Err(Error::BackendMismatch("mixed scalar backends".into()));
                }
                let r = e.as_rational().unwrap();
                for p in prime_factors(r.numer())?.into_iter().chain(prime_factors(r.denom())?) {
                    out.insert(Place::Prime(p));
                }
            }
        }
        GroundField::RationalFunctionField { p } => {
            out.insert(Place::InfinitePlace(p));
            for e in &nonzero {
                if e.field() != field {
                    return Err(Error::BackendMismatch("mixed scalar backends".into()));
                }
                let r = e.as_ratfun().unwrap();
                for poly in [r.numerator(), r.denominator()] {
                    if poly.is_constant() {
                        continue;
                    }
                    for (q, _) in poly.factor()? {
                        out.insert(Place::PolynomialPlace(q));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Trial-division factorization of a nonzero integer into primes.
fn prime_factors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut out = vec![];
    if n.is_one() || n.is_zero() {
        return Ok(out);
    }
    let mut d = BigInt::from(2);
    // cap keeps adversarial inputs from stalling; desk-scale values factor instantly
    let cap = BigInt::from(100_000_000u64);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n = n / &d;
            }
        }
        d += 1;
        if d > cap {
            return Err(Error::Scale(format!("integer factorization beyond {cap} trial divisions")));
        }
    }
    if !n.is_one() {
        out.push(n);
    }
    Ok(out)
}

/// Evaluates prod_v |a|_v over the support of a; the contract is that
/// the result equals 1 exactly for every nonzero a.
pub fn product_formula_check(a: &Scalar) -> Result<ExactPositive> {
    if a.is_zero() {
        return Err(Error::Domain("product formula of zero".into()));
    }
    let mut acc = ExactPositive::one_for(a.field());
    for v in support_places(std::slice::from_ref(a))? {
        acc = acc.mul(&abs_value(&v, a)?);
    }
    Ok(acc)
}
