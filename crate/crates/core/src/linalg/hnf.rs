//! Hermite-style row reduction over a Euclidean domain (Z or F_p[t])
//! with a tracked unimodular transformation, used to compute kernels
//! of integral matrices. The kernel of an integral matrix is a
//! saturated submodule, which is exactly what basis saturation needs.

use crate::field::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub trait EuclideanOps<T: Clone + PartialEq> {
    fn zero(&self) -> T;
    fn one(&self) -> T;
    fn is_zero(&self, a: &T) -> bool;
    fn neg(&self, a: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    /// Euclidean division a = q b + r with r strictly smaller than b.
    fn divrem(&self, a: &T, b: &T) -> (T, T);
    fn norm(&self, a: &T) -> u64;
}

pub struct IntOps;

impl EuclideanOps<BigInt> for IntOps {
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn divrem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // round toward zero keeps |r| < |b|
        let (q, r) = a.div_rem(b);
        (q, r)
    }
    fn norm(&self, a: &BigInt) -> u64 {
        a.bits()
    }
}

pub struct FpPolyOps(pub u64);

impl EuclideanOps<Poly> for FpPolyOps {
    fn zero(&self) -> Poly {
        Poly::zero(self.0)
    }
    fn one(&self) -> Poly {
        Poly::one(self.0)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        a.divrem(b)
    }
    fn norm(&self, a: &Poly) -> u64 {
        a.degree().map_or(0, |d| 1 + d as u64)
    }
}

/// Basis of { x in T^n : M x = 0 } for an integral matrix M given as
/// rows of length n. Row-reduces [M^t | I] and keeps the transformation
/// rows that annihilate M^t.
pub fn kernel_over_domain<T: Clone + PartialEq, O: EuclideanOps<T>>(
    ops: &O,
    m_rows: &[Vec<T>],
    n: usize,
) -> Vec<Vec<T>> {
    let m = m_rows.len();
    // working rows: n rows of [A | U] with A = M^t (n x m), U starts as I_n
    let mut work: Vec<(Vec<T>, Vec<T>)> = (0..n)
        .map(|i| {
            let a: Vec<T> = (0..m).map(|j| m_rows[j][i].clone()).collect();
            let mut u = vec![ops.zero(); n];
            u[i] = ops.one();
            (a, u)
        })
        .collect();

    let mut r = 0usize;
    for c in 0..m {
        loop {
            let mut best: Option<(usize, u64)> = None;
            for (i, row) in work.iter().enumerate().skip(r) {
                if !ops.is_zero(&row.0[c]) {
                    let w = ops.norm(&row.0[c]);
                    if best.map_or(true, |(_, bw)| w < bw) {
                        best = Some((i, w));
                    }
                }
            }
            let Some((piv, _)) = best else { break };
            work.swap(r, piv);
            let mut any_left = false;
            for i in (r + 1)..n {
                if ops.is_zero(&work[i].0[c]) {
                    continue;
                }
                let (q, _) = ops.divrem(&work[i].0[c], &work[r].0[c]);
                if !ops.is_zero(&q) {
                    let (pa, pu) = (work[r].0.clone(), work[r].1.clone());
                    let row = &mut work[i];
                    for (x, p) in row.0.iter_mut().zip(pa.iter()) {
                        *x = ops.sub(x, &ops.mul(&q, p));
                    }
                    for (x, p) in row.1.iter_mut().zip(pu.iter()) {
                        *x = ops.sub(x, &ops.mul(&q, p));
                    }
                }
                if !ops.is_zero(&work[i].0[c]) {
                    any_left = true;
                }
            }
            if !any_left {
                r += 1;
                break;
            }
            // remainders left below: another gcd round on this column
        }
        if r == n {
            break;
        }
    }

    work.into_iter()
        .filter(|(a, _)| a.iter().all(|x| ops.is_zero(x)))
        .map(|(_, u)| u)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // M = (1 1 -1): kernel of rank 2 in Z^3
        let rows = vec![vec![bi(1), bi(1), bi(-1)]];
        let k = kernel_over_domain(&IntOps, &rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(&v[0] + &v[1] - &v[2], bi(0));
        }
        // saturation: (2 0 2) is in the span over Q; (1 0 1) must be in the lattice
        // i.e. the 2x2 minors of the kernel basis are coprime
        let g0 = (&k[0][0] * &k[1][1] - &k[0][1] * &k[1][0]).abs();
        let g1 = (&k[0][0] * &k[1][2] - &k[0][2] * &k[1][0]).abs();
        let g2 = (&k[0][1] * &k[1][2] - &k[0][2] * &k[1][1]).abs();
        let g = g0.gcd(&g1).gcd(&g2);
        assert_eq!(g, bi(1));
    }

    #[test]
    fn kernel_with_gcd_steps() {
        // M = (4 6): kernel generated by (3, -2), not (6, -4)
        let rows = vec![vec![bi(4), bi(6)]];
        let k = kernel_over_domain(&IntOps, &rows, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(&v[0] * 4 + &v[1] * 6, bi(0));
        assert_eq!(v[0].gcd(&v[1]), bi(1));
    }

    #[test]
    fn poly_kernel() {
        // over F_2[t]: M = (t, 1): kernel generated by (1, t)
        let ops = FpPolyOps(2);
        let t = Poly::parse(2, "t").unwrap();
        let one = Poly::one(2);
        let rows = vec![vec![t.clone(), one.clone()]];
        let k = kernel_over_domain(&ops, &rows, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v[0].mul(&t).add(&v[1]).is_zero());
        assert!(v[0].is_constant() && !v[0].is_zero());
    }

    #[test]
    fn full_kernel_when_matrix_empty() {
        let k = kernel_over_domain(&IntOps, &[], 3);
        assert_eq!(k.len(), 3);
    }
}
