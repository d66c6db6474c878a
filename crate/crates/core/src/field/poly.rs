//! Dense univariate polynomials over the prime field F_p.
//!
//! Coefficients are stored little-endian (index = degree) and kept
//! reduced mod p with no trailing zeros, so the representation of a
//! polynomial is unique. All arithmetic is exact.

use crate::error::{Error, Result};
use std::fmt;

/// A polynomial in t over F_p. The zero polynomial has an empty
/// coefficient vector; otherwise the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a != 0 mod p
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "inv_mod of non-unit");
    (t.rem_euclid(p as i128)) as u64
}

impl Poly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Poly::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Poly::new(p, vec![c])
    }

    /// The monomial c * t^k.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p;
        Poly::new(p, coeffs)
    }

    pub fn t(p: u64) -> Self {
        Poly::monomial(p, 1, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    fn check_backend(&self, other: &Poly) {
        assert_eq!(self.p, other.p, "polynomials over different prime fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_backend(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (self.coeff(i) + other.coeff(i)) % self.p;
        }
        Poly::new(self.p, out)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        Poly { p: self.p, coeffs }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_backend(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Poly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let c = c % self.p;
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        Poly::new(self.p, coeffs)
    }

    /// Long division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        self.check_backend(div);
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        if self.is_zero() || self.degree().unwrap() < dd {
            return (Poly::zero(self.p), self.clone());
        }
        let lead_inv = inv_mod(div.leading_coeff(), self.p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = mul_mod(rem[i], lead_inv, self.p);
            quot[i - dd] = q;
            for (j, &dc) in div.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + self.p - mul_mod(q, dc, self.p)) % self.p;
            }
        }
        (Poly::new(self.p, quot), Poly::new(self.p, rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.divrem(self).1.is_zero()
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_backend(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Scales by the inverse of the leading coefficient.
    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading_coeff(), self.p))
    }

    /// Multiplicity of `q` as a factor of self (self nonzero, q nonconstant).
    pub fn order_at(&self, q: &Poly) -> u64 {
        assert!(!self.is_zero(), "valuation of zero polynomial");
        assert!(q.degree().map_or(false, |d| d >= 1), "order at constant polynomial");
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (quo, rem) = cur.divrem(q);
            if !rem.is_zero() {
                return n;
            }
            n += 1;
            cur = quo;
        }
    }

    /// Deterministic irreducibility by trial division. Degrees stay at
    /// desk scale, so enumerating candidate divisors is affordable.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        check_enumeration_scale(self.p, d / 2)?;
        for cand in monic_polys_of_degree_up_to(self.p, d / 2) {
            if cand.degree() == Some(0) {
                continue;
            }
            if cand.divides(self) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monic irreducible factors with multiplicities, by ascending-degree
    /// trial division; the leading coefficient is dropped.
    pub fn factor(&self) -> Result<Vec<(Poly, u64)>> {
        assert!(!self.is_zero(), "factoring the zero polynomial");
        let mut rest = self.make_monic();
        let mut out: Vec<(Poly, u64)> = vec![];
        let mut deg = 1usize;
        while rest.degree().unwrap() >= 1 {
            let rd = rest.degree().unwrap();
            if deg > rd / 2 {
                // what is left is irreducible
                out.push((rest.clone(), 1));
                break;
            }
            check_enumeration_scale(self.p, deg)?;
            for cand in monic_polys_of_exact_degree(self.p, deg) {
                if cand.divides(&rest) {
                    let mut mult = 0;
                    while cand.divides(&rest) {
                        rest = rest.div_exact(&cand);
                        mult += 1;
                    }
                    out.push((cand.clone(), mult));
                    if rest.is_constant() {
                        break;
                    }
                }
            }
            if rest.is_constant() {
                break;
            }
            deg += 1;
        }
        Ok(out)
    }
}

fn check_enumeration_scale(p: u64, max_degree: usize) -> Result<()> {
    let work = (p as f64).powi(max_degree as i32);
    if work > 2e7 {
        return Err(Error::Scale(format!(
            "factoring over F_{p} requires enumerating monic polynomials up to degree {max_degree}"
        )));
    }
    Ok(())
}

fn monic_polys_of_exact_degree(p: u64, d: usize) -> impl Iterator<Item = Poly> {
    // low coefficients run through all p^d tuples; the leading one is 1
    let total = (p as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = vec![0u64; d + 1];
        for c in coeffs.iter_mut().take(d) {
            *c = (idx % p as u128) as u64;
            idx /= p as u128;
        }
        coeffs[d] = 1;
        Poly::new(p, coeffs)
    })
}

fn monic_polys_of_degree_up_to(p: u64, max: usize) -> impl Iterator<Item = Poly> {
    (0..=max).flat_map(move |d| monic_polys_of_exact_degree(p, d))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Parses the sparse "t^3+2*t+1" format; a leading '-' or internal
    /// '-' signs are accepted and reduced mod p.
    pub fn parse(p: u64, s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial string".into()));
        }
        let mut out = Poly::zero(p);
        let mut term = String::new();
        let mut sign = 1i64;
        let mut chars = s.chars().peekable();
        let flush = |term: &str, sign: i64, out: &Poly| -> Result<Poly> {
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in '{s}'")));
            }
            let (coeff_str, pow) = if let Some(pos) = term.find('t') {
                let coeff = term[..pos].trim_end_matches('*');
                let rest = &term[pos + 1..];
                let pow = if rest.is_empty() {
                    1
                } else if let Some(stripped) = rest.strip_prefix('^') {
                    stripped
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in '{term}'")))?
                } else {
                    return Err(Error::Parse(format!("bad term '{term}'")));
                };
                (coeff, pow)
            } else {
                (term, 0)
            };
            let c: u64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{coeff_str}'")))?
            };
            let c = if sign < 0 { (p - c % p) % p } else { c % p };
            Ok(out.add(&Poly::monomial(p, c, pow)))
        };
        while let Some(ch) = chars.next() {
            match ch {
                '+' | '-' => {
                    if term.is_empty() && sign == 1 && ch == '-' && out.is_zero() {
                        sign = -1; // leading minus
                    } else {
                        out = flush(&term, sign, &out)?;
                        term.clear();
                        sign = if ch == '-' { -1 } else { 1 };
                    }
                }
                _ => term.push(ch),
            }
        }
        flush(&term, sign, &out)
    }
}

/// A reduced ratio of polynomials over F_p with monic denominator.
/// The representation is unique: gcd(num, den) = 1 and den is monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.characteristic(), den.characteristic());
        if num.is_zero() {
            let p = num.characteristic();
            return RatFun { num, den: Poly::one(p) };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if !den.is_monic() {
            let inv = inv_mod(den.leading_coeff(), den.characteristic());
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let ch = p.characteristic();
        RatFun { num: p, den: Poly::one(ch) }
    }

    pub fn zero(p: u64) -> Self {
        RatFun::from_poly(Poly::zero(p))
    }

    pub fn one(p: u64) -> Self {
        RatFun::from_poly(Poly::one(p))
    }

    pub fn characteristic(&self) -> u64 {
        self.num.characteristic()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> RatFun {
        assert!(!self.is_zero(), "inverting zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFun) -> RatFun {
        self.mul(&other.inv())
    }

    /// deg(num) - deg(den); the order of pole at infinity.
    pub fn infinite_degree(&self) -> i64 {
        assert!(!self.is_zero());
        self.num.degree().unwrap() as i64 - self.den.degree().unwrap() as i64
    }

    /// Valuation at the finite place given by a monic irreducible q.
    pub fn order_at(&self, q: &Poly) -> i64 {
        assert!(!self.is_zero());
        self.num.order_at(q) as i64 - self.den.order_at(q) as i64
    }

    pub fn parse(p: u64, s: &str) -> Result<RatFun> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => Ok(RatFun::new(Poly::parse(p, n)?, Poly::parse(p, d)?)),
            None => Ok(RatFun::from_poly(Poly::parse(p, s)?)),
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let p = 5;
        let a = Poly::new(p, vec![1, 2, 3, 4]);
        let b = Poly::new(p, vec![2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        let p = 3;
        let f = Poly::parse(p, "t^2+2*t+1").unwrap(); // (t+1)^2
        let g = Poly::parse(p, "t^2+2").unwrap(); // (t+1)(t+2) over F_3
        let d = f.gcd(&g);
        assert_eq!(d, Poly::parse(p, "t+1").unwrap());
    }

    #[test]
    fn factor_t2_plus_t_over_f2() {
        let f = Poly::parse(2, "t^2+t").unwrap();
        let factors = f.factor().unwrap();
        assert_eq!(
            factors,
            vec![
                (Poly::parse(2, "t").unwrap(), 1),
                (Poly::parse(2, "t+1").unwrap(), 1)
            ]
        );
    }

    #[test]
    fn irreducibility() {
        assert!(Poly::parse(2, "t^2+t+1").unwrap().is_irreducible().unwrap());
        assert!(!Poly::parse(2, "t^2+1").unwrap().is_irreducible().unwrap()); // (t+1)^2
        assert!(!Poly::parse(5, "3").unwrap().is_irreducible().unwrap());
    }

    #[test]
    fn display_parse_roundtrip() {
        let f = Poly::new(7, vec![1, 0, 2, 1]);
        assert_eq!(format!("{f}"), "t^3+2*t^2+1");
        assert_eq!(Poly::parse(7, "t^3+2*t^2+1").unwrap(), f);
        let r = RatFun::new(Poly::parse(2, "t^2+1").unwrap(), Poly::parse(2, "t").unwrap());
        assert_eq!(RatFun::parse(2, &format!("{r}")).unwrap(), r);
    }

    #[test]
    fn ratfun_reduces() {
        let p = 2;
        let r = RatFun::new(Poly::parse(p, "t^2+t").unwrap(), Poly::parse(p, "t").unwrap());
        assert_eq!(r, RatFun::from_poly(Poly::parse(p, "t+1").unwrap()));
    }
}
