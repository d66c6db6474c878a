//! Exact elimination: reduced echelon form over the field for kernels
//! and solving, and fraction-free (Bareiss) elimination over the
//! underlying integral domain for determinants.

use crate::error::{Error, Result};
use crate::field::poly::Poly;
use crate::field::{GroundField, Scalar};
use crate::linalg::Matrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Size measure used for pivot selection; small pivots keep the
/// intermediate entries small.
fn complexity(s: &Scalar) -> u64 {
    match s {
        Scalar::Rational(r) => (r.numer().bits() + r.denom().bits()) as u64,
        Scalar::RatFun(r) => {
            (r.numerator().degree().unwrap_or(0) + r.denominator().degree().unwrap_or(0)) as u64
        }
    }
}

/// In-place reduced row echelon form; returns the pivot column of each
/// pivot row in order.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // degree/bit-aware pivoting
        let mut best: Option<(usize, u64)> = None;
        for i in r..rows {
            if !m.at(i, c).is_zero() {
                let w = complexity(m.at(i, c));
                if best.map_or(true, |(_, bw)| w < bw) {
                    best = Some((i, w));
                }
            }
        }
        let Some((piv, _)) = best else { continue };
        if piv != r {
            for j in 0..cols {
                let a = m.at(r, j).clone();
                let b = m.at(piv, j).clone();
                m.set(r, j, b);
                m.set(piv, j, a);
            }
        }
        let inv = m.at(r, c).inv();
        for j in c..cols {
            m.set(r, j, m.at(r, j).mul(&inv));
        }
        for i in 0..rows {
            if i == r || m.at(i, c).is_zero() {
                continue;
            }
            let factor = m.at(i, c).clone();
            for j in c..cols {
                let v = m.at(i, j).sub(&factor.mul(m.at(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis vectors of the right null space.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field();
    let cols = m.cols();
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; cols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut out = vec![];
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = work.at(r, free).neg();
        }
        out.push(v);
    }
    out
}

/// A maximal independent subset of the columns, as the original columns.
pub fn column_space_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    pivots.iter().map(|&c| m.column(c)).collect()
}

/// Solves A x = b; None when inconsistent. When the solution space is
/// positive-dimensional the free coordinates are set to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows(), b.len(), "solve shape mismatch");
    let field = a.field();
    let mut aug = Matrix::from_fn(field, a.rows(), a.cols() + 1, |i, j| {
        if j < a.cols() {
            a.at(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&a.cols()) {
        return None; // pivot in the constants column
    }
    let mut x = vec![field.zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.at(r, a.cols()).clone();
    }
    Some(x)
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = a.rows();
    let field = a.field();
    let mut aug = Matrix::from_fn(field, n, 2 * n, |i, j| {
        if j < n {
            a.at(i, j).clone()
        } else if j - n == i {
            field.one()
        } else {
            field.zero()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::RankDeficient("matrix is singular".into()));
    }
    Ok(Matrix::from_fn(field, n, n, |i, j| aug.at(i, n + j).clone()))
}

/// Exact determinant by clearing rows to the integral domain and
/// running fraction-free Bareiss elimination there.
pub fn det(a: &Matrix) -> Result<Scalar> {
    if !a.is_square() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(a.field().one());
    }
    match a.field() {
        GroundField::Rationals => {
            let mut scale = BigRational::one();
            let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
            for i in 0..n {
                let mut lcm = BigInt::one();
                for j in 0..n {
                    let d = a.at(i, j).as_rational().unwrap().denom();
                    lcm = num_integer::lcm(lcm, d.clone());
                }
                scale /= BigRational::from_integer(lcm.clone());
                m.push(
                    (0..n)
                        .map(|j| {
                            let r = a.at(i, j).as_rational().unwrap();
                            r.numer() * (&lcm / r.denom())
                        })
                        .collect(),
                );
            }
            let d = bareiss_det(m, &BigIntOps);
            Ok(Scalar::Rational(BigRational::from_integer(d) * scale))
        }
        GroundField::RationalFunctionField { p } => {
            let mut scale = Scalar::RatFun(crate::field::RatFun::one(p));
            let mut m: Vec<Vec<Poly>> = Vec::with_capacity(n);
            for i in 0..n {
                let mut lcm = Poly::one(p);
                for j in 0..n {
                    let d = a.at(i, j).as_ratfun().unwrap().denominator();
                    lcm = lcm.mul(&d.div_exact(&lcm.gcd(d)));
                }
                scale = scale.div(&Scalar::from_poly(lcm.clone()));
                m.push(
                    (0..n)
                        .map(|j| {
                            let r = a.at(i, j).as_ratfun().unwrap();
                            r.numerator().mul(&lcm.div_exact(r.denominator()))
                        })
                        .collect(),
                );
            }
            let d = bareiss_det(m, &PolyOps(p));
            Ok(Scalar::from_poly(d).mul(&scale))
        }
    }
}

/// Minimal integral-domain interface for Bareiss elimination.
trait DomainOps<T> {
    fn is_zero(&self, a: &T) -> bool;
    fn one(&self) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn div_exact(&self, a: &T, b: &T) -> T;
    fn neg(&self, a: &T) -> T;
    fn size(&self, a: &T) -> u64;
}

struct BigIntOps;

impl DomainOps<BigInt> for BigIntOps {
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> BigInt {
        debug_assert!((a % b).is_zero());
        a / b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn size(&self, a: &BigInt) -> u64 {
        a.bits()
    }
}

struct PolyOps(u64);

impl DomainOps<Poly> for PolyOps {
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn one(&self) -> Poly {
        Poly::one(self.0)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        a.div_exact(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn size(&self, a: &Poly) -> u64 {
        a.degree().map_or(0, |d| d as u64)
    }
}

fn bareiss_det<T: Clone, O: DomainOps<T>>(mut m: Vec<Vec<T>>, ops: &O) -> T {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = ops.one();
    for k in 0..n {
        // choose the smallest nonzero pivot in the column
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            if !ops.is_zero(&row[k]) {
                let w = ops.size(&row[k]);
                if best.map_or(true, |(_, bw)| w < bw) {
                    best = Some((i, w));
                }
            }
        }
        let Some((piv, _)) = best else {
            return zero_like(ops);
        };
        if piv != k {
            m.swap(piv, k);
            sign_flip = !sign_flip;
        }
        if k + 1 == n {
            break;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in (k + 1)..n {
                let t = ops.sub(&ops.mul(&pivot_row[k], &row[j]), &ops.mul(&row[k], &pivot_row[j]));
                row[j] = ops.div_exact(&t, &prev);
            }
            row[k] = zero_like(ops);
        }
        prev = pivot_row[k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        ops.neg(&d)
    } else {
        d
    }
}

fn zero_like<T, O: DomainOps<T>>(ops: &O) -> T {
    ops.sub(&ops.one(), &ops.one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_examples() {
        let f = GroundField::Rationals;
        let m = Matrix::from_i64(f, 3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 1]);
        assert_eq!(det(&m).unwrap(), Scalar::from_int(5));
        let singular = Matrix::from_i64(f, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(det(&singular).unwrap(), Scalar::from_int(0));

        // rational entries
        let m = Matrix::from_fn(f, 2, 2, |i, j| Scalar::from_frac(1, (i + j + 1) as i64));
        // det = 1*(1/3) - (1/2)(1/2) = 1/12
        assert_eq!(det(&m).unwrap(), Scalar::from_frac(1, 12));
    }

    #[test]
    fn det_over_function_field() {
        let ff = GroundField::rational_functions(3).unwrap();
        let t = Scalar::parse(ff, "t").unwrap();
        let m = Matrix::from_entries(
            ff,
            2,
            2,
            vec![t.clone(), ff.one(), ff.one(), t.clone()],
        )
        .unwrap();
        // det = t^2 - 1
        assert_eq!(det(&m).unwrap(), Scalar::parse(ff, "t^2+2").unwrap());
    }

    #[test]
    fn solve_and_inverse() {
        let f = GroundField::Rationals;
        let a = Matrix::from_i64(f, 2, 2, &[1, 2, 3, 5]);
        let b = [1, 2].map(Scalar::from_int);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vector(&x).unwrap(), b.to_vec());
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f, 2));

        let singular = Matrix::from_i64(f, 2, 2, &[1, 2, 2, 4]);
        assert!(inverse(&singular).is_err());
        assert!(solve(&singular, &[1, 3].map(Scalar::from_int)).is_none());
    }

    #[test]
    fn kernel_dimension_formula() {
        let f = GroundField::Rationals;
        let m = Matrix::from_i64(f, 2, 4, &[1, 2, 3, 4, 2, 4, 6, 8]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(m.mul_vector(v).unwrap().iter().all(|e| e.is_zero()));
        }
    }
}
