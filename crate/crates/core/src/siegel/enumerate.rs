//! Complete short-vector enumeration (Fincke-Pohst) under an exact
//! rational quadratic form.

use crate::siegel::lll::QuadForm;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All nonzero coefficient vectors u (up to sign: first nonzero
/// coordinate positive) with Q(sum u_i b_i) <= radius, exact.
pub fn short_vectors(
    basis: &[Vec<BigRational>],
    q: &QuadForm,
    radius: &BigRational,
    limit: usize,
) -> Vec<Vec<BigInt>> {
    let l = basis.len();
    // exact LDL^t of the basis Gram matrix
    let mut gram = vec![vec![BigRational::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            gram[i][j] = q.inner(&basis[i], &basis[j]);
        }
    }
    let mut mu = vec![vec![BigRational::zero(); l]; l]; // mu[i][j], j < i
    let mut d = vec![BigRational::zero(); l];
    for i in 0..l {
        let mut di = gram[i][i].clone();
        for j in 0..i {
            let mut m = gram[i][j].clone();
            for k in 0..j {
                m -= &mu[i][k] * &mu[j][k] * &d[k];
            }
            m /= &d[j];
            di -= &m * &m * &d[j];
            mu[i][j] = m;
        }
        assert!(di.is_positive(), "enumeration needs a definite form");
        d[i] = di;
    }

    // backward recursion: Q(u) = sum_i d_i (u_i + sum_{j>i} mu_ji u_j)^2
    let mut out = vec![];
    let mut u = vec![BigInt::zero(); l];
    enum_level(l, l - 1, radius, &mu, &d, &mut u, &mut out, limit);
    out
}

#[allow(clippy::too_many_arguments)]
fn enum_level(
    l: usize,
    i: usize,
    budget: &BigRational,
    mu: &[Vec<BigRational>],
    d: &[BigRational],
    u: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    // center c_i = sum_{j>i} mu[j][i] u_j
    let mut c = BigRational::zero();
    for j in (i + 1)..l {
        c += &mu[j][i] * BigRational::from_integer(u[j].clone());
    }
    let cap = budget / &d[i]; // (u_i + c)^2 <= cap
    let (lo, hi) = integer_interval(&c, &cap);
    let mut v = lo;
    while v <= hi {
        u[i] = v.clone();
        let t = BigRational::from_integer(v.clone()) + &c;
        let used = &d[i] * &t * &t;
        let rest = budget - &used;
        if i == 0 {
            if u.iter().any(|x| !x.is_zero()) {
                // canonical sign: last nonzero coordinate positive
                if u.iter().rev().find(|x| !x.is_zero()).unwrap().is_positive() {
                    out.push(u.clone());
                    if out.len() >= limit {
                        return;
                    }
                }
            }
        } else if !rest.is_negative() {
            enum_level(l, i - 1, &rest, mu, d, u, out, limit);
        }
        v += 1;
    }
    u[i] = BigInt::zero();
}

/// Exact integer solutions of (v + c)^2 <= cap.
fn integer_interval(c: &BigRational, cap: &BigRational) -> (BigInt, BigInt) {
    if cap.is_negative() {
        return (BigInt::one(), BigInt::zero()); // empty
    }
    let r = cap.to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let cf = c.to_f64().unwrap_or(0.0);
    let ok = |v: &BigInt| {
        let t = BigRational::from_integer(v.clone()) + c;
        &t * &t <= *cap
    };
    let mut hi = BigInt::from((-cf + r).floor() as i64);
    while ok(&(&hi + 1)) {
        hi += 1;
    }
    while !ok(&hi) && hi >= BigInt::from((-cf - r).floor() as i64 - 2) {
        hi -= 1;
    }
    let mut lo = BigInt::from((-cf - r).ceil() as i64);
    while ok(&(&lo - 1)) {
        lo -= 1;
    }
    while !ok(&lo) && lo <= hi {
        lo += 1;
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecr(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn finds_all_short_vectors_of_z2() {
        let q = QuadForm::identity(2);
        let basis = vec![vecr(&[1, 0]), vecr(&[0, 1])];
        let r = BigRational::from_integer(4.into());
        let mut found = short_vectors(&basis, &q, &r, 1000);
        found.sort();
        // vectors with norm^2 <= 4, one per +/- pair:
        // (0,1),(0,2),(1,0),(2,0),(1,1),(-1,1),(1,-1)... canonical sign halves them
        // count: norms 1: (1,0),(0,1); 2: (1,1),(-1,1); 4: (2,0),(0,2) -> 6
        assert_eq!(found.len(), 6);
        for u in &found {
            let n = &u[0] * &u[0] + &u[1] * &u[1];
            assert!(n <= BigInt::from(4) && !n.is_zero());
        }
    }

    #[test]
    fn skewed_basis_same_lattice() {
        let q = QuadForm::identity(2);
        // same lattice Z^2 via a skewed basis
        let basis = vec![vecr(&[1, 1]), vecr(&[2, 1])];
        let r = BigRational::from_integer(1.into());
        let found = short_vectors(&basis, &q, &r, 1000);
        // unit vectors e1 = -1*(1,1) + 1*(2,1) ... norm 1: e1 and e2 only
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn respects_limit() {
        let q = QuadForm::identity(2);
        let basis = vec![vecr(&[1, 0]), vecr(&[0, 1])];
        let r = BigRational::from_integer(100.into());
        let found = short_vectors(&basis, &q, &r, 5);
        assert_eq!(found.len(), 5);
    }
}
