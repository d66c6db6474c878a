//! Lattice basis reduction with exact rational arithmetic.
//!
//! Works on column vectors under an arbitrary positive-definite
//! rational quadratic form, so the same routine reduces canonical
//! lattices (identity form) and archimedean-rescaled twisted ones.
//! delta = 99/100; with that parameter the proven product bound
//! (1/(delta - 1/4))^(L(L-1)/4) stays below N^(L/2) for every
//! desk-scale shape, so reduction alone normally certifies.

use crate::linalg::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Inner product u^t G v under a symmetric positive-definite G.
pub struct QuadForm {
    gram: Vec<Vec<BigRational>>,
}

impl QuadForm {
    pub fn identity(n: usize) -> Self {
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        QuadForm { gram }
    }

    /// G = T^t T for a rational matrix T with trivial kernel.
    pub fn from_transform(t: &Matrix) -> Self {
        let n = t.cols();
        let mut gram = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = BigRational::zero();
                for r in 0..t.rows() {
                    acc += t.at(r, i).as_rational().unwrap() * t.at(r, j).as_rational().unwrap();
                }
                gram[i][j] = acc.clone();
                gram[j][i] = acc;
            }
        }
        QuadForm { gram }
    }

    pub fn inner(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        let n = self.gram.len();
        assert!(u.len() == n && v.len() == n);
        let mut acc = BigRational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                acc += ui * &self.gram[i][j] * vj;
            }
        }
        acc
    }

    pub fn norm(&self, u: &[BigRational]) -> BigRational {
        self.inner(u, u)
    }
}

pub fn round_nearest(x: &BigRational) -> BigInt {
    // floor(x + 1/2)
    let shifted = x + BigRational::new(BigInt::one(), BigInt::from(2));
    shifted.numer().div_floor(shifted.denom())
}

/// Gram-Schmidt data over the form: mu coefficients and squared
/// orthogonal norms, all exact.
struct Gso {
    mu: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
}

fn gso(basis: &[Vec<BigRational>], q: &QuadForm) -> Gso {
    let l = basis.len();
    let mut mu = vec![vec![BigRational::zero(); l]; l];
    let mut b = vec![BigRational::zero(); l];
    let mut ortho: Vec<Vec<BigRational>> = Vec::with_capacity(l);
    for i in 0..l {
        let mut star = basis[i].clone();
        for j in 0..i {
            let m = q.inner(&basis[i], &ortho[j]) / &b[j];
            for (s, o) in star.iter_mut().zip(ortho[j].iter()) {
                *s -= &m * o;
            }
            mu[i][j] = m;
        }
        mu[i][i] = BigRational::one();
        b[i] = q.norm(&star);
        assert!(b[i].is_positive(), "LLL input vectors must be independent");
        ortho.push(star);
    }
    Gso { mu, b }
}

/// In-place LLL reduction of independent columns under the form.
pub fn lll_reduce(basis: &mut Vec<Vec<BigRational>>, q: &QuadForm) {
    let l = basis.len();
    if l <= 1 {
        return;
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut g = gso(basis, q);
    let mut k = 1usize;
    while k < l {
        // size-reduce b_k against earlier vectors
        for j in (0..k).rev() {
            if g.mu[k][j].abs() > half {
                let r = round_nearest(&g.mu[k][j]);
                let rq = BigRational::from_integer(r);
                let prev = basis[j].clone();
                for (x, p) in basis[k].iter_mut().zip(prev.iter()) {
                    *x -= &rq * p;
                }
                for jj in 0..=j {
                    let adj = &rq * &g.mu[j][jj];
                    g.mu[k][jj] -= adj;
                }
            }
        }
        let lovasz = (&delta - &g.mu[k][k - 1] * &g.mu[k][k - 1]) * &g.b[k - 1];
        if g.b[k] >= lovasz {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            g = gso(basis, q);
            k = k.max(2) - 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecr(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn reduces_a_skewed_basis() {
        // (1,1),(3,2) span all of Z^2: the reduction reaches unit vectors
        let q = QuadForm::identity(2);
        let mut basis = vec![vecr(&[1, 1]), vecr(&[3, 2])];
        lll_reduce(&mut basis, &q);
        let mut norms: Vec<BigRational> = basis.iter().map(|b| q.norm(b)).collect();
        norms.sort();
        assert_eq!(norms, vecr(&[1, 1]));

        // (1,1),(3,1) span an index-2 sublattice with minima (1,1),(1,-1)
        let mut basis = vec![vecr(&[1, 1]), vecr(&[3, 1])];
        lll_reduce(&mut basis, &q);
        let mut norms: Vec<BigRational> = basis.iter().map(|b| q.norm(b)).collect();
        norms.sort();
        assert_eq!(norms, vecr(&[2, 2]));
    }

    #[test]
    fn product_bound_on_random_like_input() {
        let q = QuadForm::identity(3);
        let mut basis = vec![vecr(&[7, 8, 9]), vecr(&[13, 1, 5]), vecr(&[2, 2, 3])];
        let det_before: BigRational = {
            // |det| of the 3x3 with these columns is the lattice determinant
            BigRational::from_integer(BigInt::from(7 * (1 * 3 - 5 * 2) - 13 * (8 * 3 - 9 * 2) + 2 * (8 * 5 - 9 * 1)).abs())
        };
        lll_reduce(&mut basis, &q);
        let prod_sq: BigRational = basis.iter().map(|b| q.norm(b)).product();
        // (product of norms)^2 <= alpha^(L(L-1)/2) det^2 with alpha = 100/74
        let alpha = BigRational::new(100.into(), 74.into());
        let bound = &alpha * &alpha * &alpha * &det_before * &det_before;
        assert!(prod_sq <= bound);
    }

    #[test]
    fn respects_a_weighted_form() {
        // form diag(100, 1): LLL must prefer the second coordinate axis
        let t = Matrix::from_i64(crate::field::GroundField::Rationals, 2, 2, &[10, 0, 0, 1]);
        let q = QuadForm::from_transform(&t);
        let mut basis = vec![vecr(&[1, 0]), vecr(&[1, 1])];
        lll_reduce(&mut basis, &q);
        assert_eq!(q.norm(&basis[0]), BigRational::from_integer(1.into()));
    }

    #[test]
    fn rounding() {
        assert_eq!(round_nearest(&BigRational::new(3.into(), 2.into())), BigInt::from(2));
        assert_eq!(round_nearest(&BigRational::new((-3).into(), 2.into())), BigInt::from(-1));
        assert_eq!(round_nearest(&BigRational::new(1.into(), 3.into())), BigInt::from(0));
        assert_eq!(round_nearest(&BigRational::new((-1).into(), 3.into())), BigInt::from(0));
    }
}
