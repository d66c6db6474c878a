//! Basis saturation: replaces a K-basis of a subspace by a basis of
//! the saturated integral module (span over K intersected with Z^N or
//! F_p[t]^N). The column span over K is unchanged, quotients become
//! torsion-free, and over Q the lattice determinant equals the
//! subspace height.

use crate::error::{Error, Result};
use crate::field::poly::Poly;
use crate::field::{GroundField, Scalar};
use crate::linalg::hnf::{kernel_over_domain, FpPolyOps, IntOps};
use crate::linalg::{elimination, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Saturated integral basis with the same column span as X over K.
pub fn saturate(x: &Matrix) -> Result<Matrix> {
    let (n, l) = (x.rows(), x.cols());
    if l == 0 || l > n {
        return Err(Error::Dimension(format!("saturating a {n}x{l} basis")));
    }
    if elimination::rank(x) != l {
        return Err(Error::RankDeficient("saturating a rank-deficient basis".into()));
    }
    let field = x.field();
    if l == n {
        return Ok(Matrix::identity(field, n));
    }

    // rows b with b . v = 0 for all v in the span
    let dual_rows = elimination::kernel_basis(&x.transpose());
    debug_assert_eq!(dual_rows.len(), n - l);

    let columns: Vec<Vec<Scalar>> = match field {
        GroundField::Rationals => {
            let rows: Vec<Vec<BigInt>> = dual_rows.iter().map(|r| clear_rational_row(r)).collect();
            kernel_over_domain(&IntOps, &rows, n)
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|e| Scalar::Rational(BigRational::from_integer(e)))
                        .collect()
                })
                .collect()
        }
        GroundField::RationalFunctionField { p } => {
            let rows: Vec<Vec<Poly>> = dual_rows.iter().map(|r| clear_poly_row(r, p)).collect();
            kernel_over_domain(&FpPolyOps(p), &rows, n)
                .into_iter()
                .map(|v| v.into_iter().map(Scalar::from_poly).collect())
                .collect()
        }
    };
    if columns.len() != l {
        return Err(Error::Contract(format!(
            "saturation produced {} vectors for an {l}-dimensional span",
            columns.len()
        )));
    }
    let mut sat = Matrix::from_columns(field, n, &columns)?;
    canonicalize_columns(&mut sat);
    Ok(sat)
}

/// Scales a rational row to coprime integers.
pub fn clear_rational_row(row: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for e in row {
        lcm = num_integer::lcm(lcm, e.as_rational().unwrap().denom().clone());
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|e| {
            let r = e.as_rational().unwrap();
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    let mut g = BigInt::zero();
    for e in &out {
        g = g.gcd(e);
    }
    if !g.is_zero() && !g.is_one() {
        for e in out.iter_mut() {
            *e = &*e / &g;
        }
    }
    out
}

/// Scales a rational-function row to content-free polynomials.
pub fn clear_poly_row(row: &[Scalar], p: u64) -> Vec<Poly> {
    let mut lcm = Poly::one(p);
    for e in row {
        let d = e.as_ratfun().unwrap().denominator();
        lcm = lcm.mul(&d.div_exact(&lcm.gcd(d)));
    }
    let mut out: Vec<Poly> = row
        .iter()
        .map(|e| {
            let r = e.as_ratfun().unwrap();
            r.numerator().mul(&lcm.div_exact(r.denominator()))
        })
        .collect();
    let mut g = Poly::zero(p);
    for e in &out {
        g = g.gcd(e);
    }
    if !g.is_zero() && !g.is_one() {
        for e in out.iter_mut() {
            *e = e.div_exact(&g);
        }
    }
    out
}

/// Deterministic orientation: first nonzero entry of each column is
/// positive over Q, monic over F_p(t); columns sorted lexicographically.
fn canonicalize_columns(m: &mut Matrix) {
    let field = m.field();
    let mut cols = m.columns();
    for col in cols.iter_mut() {
        if let Some(first) = col.iter().find(|e| !e.is_zero()) {
            let unit = match first {
                Scalar::Rational(r) => {
                    if r.is_negative() {
                        Scalar::from_int(-1)
                    } else {
                        continue;
                    }
                }
                Scalar::RatFun(r) => {
                    let lc = r.numerator().leading_coeff();
                    if lc == 1 {
                        continue;
                    }
                    Scalar::from_poly(Poly::constant(r.characteristic(), lc)).inv()
                }
            };
            for e in col.iter_mut() {
                *e = e.mul(&unit);
            }
        }
    }
    cols.sort_by(column_order);
    *m = Matrix::from_columns(field, m.rows(), &cols).unwrap();
}

/// Content-free integral representative with a canonical unit: first
/// nonzero coordinate positive (resp. with monic numerator).
pub fn primitive_vector(x: &[Scalar]) -> Vec<Scalar> {
    let field = x
        .iter()
        .find(|e| !e.is_zero())
        .map(|e| e.field())
        .unwrap_or(GroundField::Rationals);
    let mut out: Vec<Scalar> = match field {
        GroundField::Rationals => clear_rational_row(x)
            .into_iter()
            .map(|n| Scalar::Rational(BigRational::from_integer(n)))
            .collect(),
        GroundField::RationalFunctionField { p } => {
            clear_poly_row(x, p).into_iter().map(Scalar::from_poly).collect()
        }
    };
    if let Some(first) = out.iter().find(|e| !e.is_zero()) {
        let unit = match first {
            Scalar::Rational(r) if r.is_negative() => Some(Scalar::from_int(-1)),
            Scalar::RatFun(r) if !r.numerator().is_monic() => {
                Some(Scalar::from_poly(Poly::constant(r.characteristic(), r.numerator().leading_coeff())).inv())
            }
            _ => None,
        };
        if let Some(u) = unit {
            for e in out.iter_mut() {
                *e = e.mul(&u);
            }
        }
    }
    out
}

/// A total order on coordinate vectors used for reproducible output.
pub fn column_order(a: &Vec<Scalar>, b: &Vec<Scalar>) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        let ord = match (x, y) {
            (Scalar::Rational(p), Scalar::Rational(q)) => p.cmp(q),
            (Scalar::RatFun(p), Scalar::RatFun(q)) => p.cmp(q),
            _ => panic!("ordering scalars across backends"),
        };
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::plucker;

    #[test]
    fn primitive_generator() {
        // X = 2*e1 in Q^2 saturates to e1
        let f = GroundField::Rationals;
        let x = Matrix::from_i64(f, 2, 1, &[2, 0]);
        let s = saturate(&x).unwrap();
        assert_eq!(s, Matrix::from_i64(f, 2, 1, &[1, 0]));
    }

    #[test]
    fn clears_denominators() {
        // column (1/2, 1) saturates to (1, 2)
        let f = GroundField::Rationals;
        let x = Matrix::from_entries(f, 2, 1, vec![Scalar::from_frac(1, 2), Scalar::from_int(1)])
            .unwrap();
        let s = saturate(&x).unwrap();
        assert_eq!(s, Matrix::from_i64(f, 2, 1, &[1, 2]));
    }

    #[test]
    fn content_removal_over_function_field() {
        let ff = GroundField::rational_functions(2).unwrap();
        let t = Scalar::parse(ff, "t").unwrap();
        let x = Matrix::from_entries(ff, 2, 1, vec![t, ff.zero()]).unwrap();
        let s = saturate(&x).unwrap();
        assert_eq!(s, Matrix::from_i64(ff, 2, 1, &[1, 0]));
    }

    #[test]
    fn module_saturation_beyond_column_contents() {
        // columns (1, 1, 0) and (1, -1, 2) are content-free but span a
        // non-saturated lattice: (1, 0, 1) lies in the rational span.
        let f = GroundField::Rationals;
        let x = Matrix::from_i64(f, 3, 2, &[1, 1, 1, -1, 0, 2]);
        let s = saturate(&x).unwrap();
        // saturated: Plucker coordinates become coprime
        let w = plucker(&s).unwrap();
        let mut g = BigInt::zero();
        for c in &w.coordinates {
            let r = c.as_rational().unwrap();
            assert!(r.denom().is_one());
            g = g.gcd(r.numer());
        }
        assert!(g.is_one());
        // span unchanged
        let u_old = crate::linalg::Subspace::new(x).unwrap();
        let u_new = crate::linalg::Subspace::new(s).unwrap();
        assert!(u_old.same_span(&u_new).unwrap());
    }

    #[test]
    fn full_space_saturates_to_identity() {
        let f = GroundField::Rationals;
        let x = Matrix::from_i64(f, 2, 2, &[1, 1, 0, 1]);
        assert_eq!(saturate(&x).unwrap(), Matrix::identity(f, 2));
    }
}
