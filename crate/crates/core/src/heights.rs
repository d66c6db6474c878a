//! Canonical and twisted heights of vectors, subspaces, matrices, and
//! bilinear forms; duality; finitely supported adelic automorphisms
//! and their dilation constants.
//!
//! Heights are evaluated exactly: a vector is first replaced by its
//! primitive integral representative, whose sup-norm is 1 at every
//! finite place, so only the archimedean (resp. degree) place and the
//! support of the automorphism contribute nontrivial factors.

use crate::error::{Error, Result};
use crate::field::{abs_value, rational_ord, ExactPositive, GroundField, Place, Scalar};
use crate::linalg::saturate::{clear_poly_row, clear_rational_row};
use crate::linalg::{self, elimination, lex_subsets, Matrix, Subspace};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

pub type HeightValue = ExactPositive;

/// Orientation for matrix heights: an N x J matrix is measured by the
/// wedge of its columns, a J x N one by the wedge of its rows. Square
/// matrices are ambiguous, so the flag is always explicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Columns,
    Rows,
}

/// Finite-support element of GL_N over the adeles: a map from places
/// to invertible local matrices, identity everywhere else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdelicAutomorphism {
    field: GroundField,
    dim: usize,
    components: BTreeMap<Place, Matrix>,
}

impl AdelicAutomorphism {
    pub fn identity(field: GroundField, dim: usize) -> Self {
        AdelicAutomorphism { field, dim, components: BTreeMap::new() }
    }

    pub fn new(field: GroundField, dim: usize, components: Vec<(Place, Matrix)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (place, m) in components {
            if place.field() != Some(field) {
                return Err(Error::BackendMismatch(format!(
                    "place {place} does not belong to {field}"
                )));
            }
            if m.field() != field || m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!(
                    "local component at {place} must be {dim}x{dim} over {field}"
                )));
            }
            if elimination::det(&m)?.is_zero() {
                return Err(Error::RankDeficient(format!("local component at {place} is singular")));
            }
            if map.insert(place.clone(), m).is_some() {
                return Err(Error::Domain(format!("duplicate component at place {place}")));
            }
        }
        Ok(AdelicAutomorphism { field, dim, components: map })
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> impl Iterator<Item = (&Place, &Matrix)> {
        self.components.iter()
    }

    pub fn component(&self, place: &Place) -> Option<&Matrix> {
        self.components.get(place)
    }

    pub fn is_identity(&self) -> bool {
        self.components.values().all(|m| *m == Matrix::identity(self.field, self.dim))
    }

    /// Inverse-transpose at every place; an exact involution.
    pub fn star(&self) -> Result<AdelicAutomorphism> {
        let mut components = BTreeMap::new();
        for (place, m) in &self.components {
            components.insert(place.clone(), elimination::inverse(&m.transpose())?);
        }
        Ok(AdelicAutomorphism { field: self.field, dim: self.dim, components })
    }
}

pub fn star(a: &AdelicAutomorphism) -> Result<AdelicAutomorphism> {
    a.star()
}

/// |a|_v treating zero as an absent factor.
fn local_abs_nonzero(v: &Place, a: &Scalar) -> Option<ExactPositive> {
    if a.is_zero() {
        None
    } else {
        Some(abs_value(v, a).expect("backend pre-checked"))
    }
}

/// Local norm of a nonzero vector: Euclidean at the archimedean place,
/// sup-norm elsewhere.
fn local_norm(v: &Place, x: &[Scalar]) -> ExactPositive {
    match v {
        Place::Archimedean => {
            let mut sum = BigRational::zero();
            for e in x {
                if let Some(r) = e.as_rational() {
                    sum += r * r;
                } else {
                    panic!("archimedean norm of non-rational vector");
                }
            }
            assert!(sum.is_positive(), "local norm of the zero vector");
            ExactPositive::sqrt_of_rational(sum)
        }
        _ => x
            .iter()
            .filter_map(|e| local_abs_nonzero(v, e))
            .max_by(|a, b| a.cmp_exact(b))
            .expect("local norm of the zero vector"),
    }
}

/// Primitive integral representative of a projective point: content-free
/// integer (resp. polynomial) coordinates. Its sup-norm is 1 at every
/// finite place.
fn primitive_representative(x: &[Scalar]) -> Vec<Scalar> {
    match x[0].field() {
        GroundField::Rationals => clear_rational_row(x)
            .into_iter()
            .map(|n| Scalar::Rational(BigRational::from_integer(n)))
            .collect(),
        GroundField::RationalFunctionField { p } => {
            clear_poly_row(x, p).into_iter().map(Scalar::from_poly).collect()
        }
    }
}

/// Canonical height of the primitive representative: the archimedean
/// Euclidean norm over Q, e^(max coordinate degree) over F_p(t).
fn canonical_height_primitive(x: &[Scalar]) -> ExactPositive {
    match x[0].field() {
        GroundField::Rationals => {
            let mut sum = BigRational::zero();
            for e in x {
                let r = e.as_rational().unwrap();
                sum += r * r;
            }
            ExactPositive::sqrt_of_rational(sum)
        }
        GroundField::RationalFunctionField { p } => {
            let max = x
                .iter()
                .filter_map(|e| e.as_ratfun().unwrap().numerator().degree())
                .max();
            let _ = p;
            ExactPositive::from_log(max.expect("height of the zero vector") as i64)
        }
    }
}

fn check_vector(a: &AdelicAutomorphism, x: &[Scalar], expected_len: usize) -> Result<()> {
    if x.len() != expected_len {
        return Err(Error::Dimension(format!(
            "vector of length {} in K^{expected_len}",
            x.len()
        )));
    }
    if x.iter().all(|e| e.is_zero()) {
        return Err(Error::Domain("height of the zero vector".into()));
    }
    if x.iter().any(|e| !e.is_zero() && e.field() != a.field()) {
        return Err(Error::BackendMismatch("vector entries do not match the automorphism".into()));
    }
    Ok(())
}

/// Twisted height of a nonzero vector; the canonical height is the
/// identity-automorphism case. Invariant under nonzero scaling.
pub fn vector_height(a: &AdelicAutomorphism, x: &[Scalar]) -> Result<HeightValue> {
    check_vector(a, x, a.dim())?;
    let xp = primitive_representative(x);
    let mut h = canonical_height_primitive(&xp);
    for (place, m) in a.components() {
        let image = m.mul_vector(&xp)?;
        h = h.mul(&local_norm(place, &image).div(&local_norm(place, &xp)));
    }
    Ok(h)
}

/// Applies the J-th compound (wedge power) of m to a vector indexed by
/// lexicographic J-subsets, without materializing the compound matrix.
/// Diagonal components short-circuit to coordinate scalings.
fn compound_apply(m: &Matrix, j: usize, w: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = m.rows();
    let subsets = lex_subsets(n, j);
    assert_eq!(subsets.len(), w.len(), "wedge coordinate count mismatch");
    if m.is_diagonal() {
        return Ok(subsets
            .iter()
            .zip(w.iter())
            .map(|(rows, wi)| {
                let mut factor = m.field().one();
                for &r in rows {
                    factor = factor.mul(m.at(r, r));
                }
                factor.mul(wi)
            })
            .collect());
    }
    let mut out = Vec::with_capacity(w.len());
    for rows in &subsets {
        let mut acc = m.field().zero();
        for (cols, wi) in subsets.iter().zip(w.iter()) {
            if wi.is_zero() {
                continue;
            }
            let minor = elimination::det(&m.select_rows(rows).select_cols(cols))?;
            acc = acc.add(&minor.mul(wi));
        }
        out.push(acc);
    }
    Ok(out)
}

/// Twisted height of the wedge of the columns (or rows) of a matrix.
pub fn matrix_height(a: &AdelicAutomorphism, m: &Matrix, orientation: Orientation) -> Result<HeightValue> {
    let m = match orientation {
        Orientation::Columns => m.clone(),
        Orientation::Rows => m.transpose(),
    };
    if m.rows() != a.dim() {
        return Err(Error::Dimension(format!(
            "height of vectors in K^{} under an automorphism of K^{}",
            m.rows(),
            a.dim()
        )));
    }
    let j = m.cols();
    let w = linalg::plucker(&m)?;
    check_vector_backend(a, &w.coordinates)?;
    let wp = primitive_representative(&w.coordinates);
    let mut h = canonical_height_primitive(&wp);
    for (place, comp) in a.components() {
        let image = compound_apply(comp, j, &wp)?;
        h = h.mul(&local_norm(place, &image).div(&local_norm(place, &wp)));
    }
    Ok(h)
}

fn check_vector_backend(a: &AdelicAutomorphism, x: &[Scalar]) -> Result<()> {
    if x.iter().any(|e| !e.is_zero() && e.field() != a.field()) {
        return Err(Error::BackendMismatch("entries do not match the automorphism".into()));
    }
    Ok(())
}

/// Twisted height of a nonzero subspace, via Grassmann coordinates of
/// its basis matrix; independent of the basis by the product formula.
pub fn subspace_height(a: &AdelicAutomorphism, v: &Subspace) -> Result<HeightValue> {
    if v.dim() == 0 {
        return Err(Error::Domain("height of the zero subspace".into()));
    }
    matrix_height(a, v.basis(), Orientation::Columns)
}

/// Height of a bilinear form: the canonical height of its coefficient
/// matrix read as a vector in K^(N^2).
pub fn form_height(f: &Matrix) -> Result<HeightValue> {
    if f.is_zero() {
        return Err(Error::Domain("height of the zero form".into()));
    }
    let flat: Vec<Scalar> = f.entries().to_vec();
    let id = AdelicAutomorphism::identity(f.field(), flat.len());
    vector_height(&id, &flat)
}

/// Canonical height of a vector (identity twist).
pub fn canonical_vector_height(x: &[Scalar]) -> Result<HeightValue> {
    if x.is_empty() {
        return Err(Error::Domain("height of the empty vector".into()));
    }
    if x.iter().all(|e| e.is_zero()) {
        return Err(Error::Domain("height of the zero vector".into()));
    }
    let field = x.iter().find(|e| !e.is_zero()).unwrap().field();
    vector_height(&AdelicAutomorphism::identity(field, x.len()), x)
}

/// Canonical height of a subspace.
pub fn canonical_subspace_height(v: &Subspace) -> Result<HeightValue> {
    subspace_height(&AdelicAutomorphism::identity(v.field(), v.ambient_dim()), v)
}

/// A full-rank (N-L) x N matrix B with V = { x : B x = 0 }; duality
/// gives H(V) = H(B) with B measured by rows.
pub fn dual_complement(v: &Subspace) -> Result<Matrix> {
    if v.dim() == 0 {
        return Err(Error::Domain("complement of the zero subspace".into()));
    }
    if v.dim() == v.ambient_dim() {
        return Err(Error::NoComplement);
    }
    let rows = elimination::kernel_basis(&v.basis().transpose());
    Matrix::from_rows(v.field(), v.ambient_dim(), &rows)
}

/// The exact dilation data of an automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationConstants {
    pub c1: ExactPositive,
    pub c2: ExactPositive,
    /// c2 / c1
    #[serde(rename = "frakC")]
    pub frak_c: ExactPositive,
    /// frakC * sqrt(|det A|) / c1^2
    #[serde(rename = "frakCprime")]
    pub frak_c_prime: ExactPositive,
    #[serde(rename = "detAdelic")]
    pub det_adelic: ExactPositive,
}

/// True when the local component preserves the local norm: orthogonal
/// at the archimedean place, integral entries with unit determinant at
/// non-archimedean places.
pub fn is_local_isometry(place: &Place, m: &Matrix) -> Result<bool> {
    match place {
        Place::Archimedean => Ok(m.transpose().mul(m)? == Matrix::identity(m.field(), m.rows())),
        Place::Prime(p) => {
            for e in m.entries() {
                if !e.is_zero() && rational_ord(e.as_rational().unwrap(), p) < 0 {
                    return Ok(false);
                }
            }
            let d = elimination::det(m)?;
            Ok(!d.is_zero() && rational_ord(d.as_rational().unwrap(), p) == 0)
        }
        Place::InfinitePlace(_) => {
            for e in m.entries() {
                if !e.is_zero() && e.as_ratfun().unwrap().infinite_degree() > 0 {
                    return Ok(false);
                }
            }
            let d = elimination::det(m)?;
            Ok(!d.is_zero() && d.as_ratfun().unwrap().infinite_degree() == 0)
        }
        Place::PolynomialPlace(q) => {
            for e in m.entries() {
                if !e.is_zero() && e.as_ratfun().unwrap().order_at(q) < 0 {
                    return Ok(false);
                }
            }
            let d = elimination::det(m)?;
            Ok(!d.is_zero() && d.as_ratfun().unwrap().order_at(q) == 0)
        }
    }
}

/// Local factor of C2: the summed entry norms over Q, where the
/// triangle (resp. Cauchy-Schwarz) inequality drives the comparison
/// lemma; the max entry norm over F_p(t), where the ultrametric
/// inequality gives the same sandwich and keeps the value a power of e.
fn local_entry_bound(place: &Place, m: &Matrix) -> ExactPositive {
    match place {
        Place::Archimedean | Place::Prime(_) => {
            let mut sum = BigRational::zero();
            for e in m.entries() {
                if let Some(a) = local_abs_nonzero(place, e) {
                    sum += rational_value(&a);
                }
            }
            ExactPositive::from_rational(sum)
        }
        _ => m
            .entries()
            .iter()
            .filter_map(|e| local_abs_nonzero(place, e))
            .max_by(|a, b| a.cmp_exact(b))
            .expect("entry bound of the zero matrix"),
    }
}

/// Extracts the rational value from a Q-backend ExactPositive with
/// trivial radicand (all local absolute values over Q are rational).
fn rational_value(a: &ExactPositive) -> BigRational {
    match a {
        ExactPositive::Sqrt { rational, radicand } => {
            assert!(radicand == &BigRational::from_integer(1.into()), "local absolute value must be rational");
            rational.clone()
        }
        _ => panic!("expected a rational-backend value"),
    }
}

/// The constants comparing H_A with H: C1 H(x) <= H_A(x) <= C2 H(x).
pub fn dilation_constants(a: &AdelicAutomorphism) -> Result<DilationConstants> {
    let one = ExactPositive::one_for(a.field());
    let mut c1 = one.clone();
    let mut c2 = one.clone();
    let mut det_adelic = one.clone();
    for (place, m) in a.components() {
        let d = elimination::det(m)?;
        det_adelic = det_adelic.mul(&abs_value(place, &d)?);
        if is_local_isometry(place, m)? {
            continue;
        }
        let inv = elimination::inverse(m)?;
        c2 = c2.mul(&local_entry_bound(place, m));
        c1 = c1.mul(&local_entry_bound(place, &inv).inv());
    }
    let frak_c = c2.div(&c1);
    let frak_c_prime = frak_c.mul(&det_adelic.sqrt()?).div(&c1.pow(2));
    Ok(DilationConstants { c1, c2, frak_c, frak_c_prime, det_adelic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;

    fn q() -> GroundField {
        GroundField::Rationals
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn diag(field: GroundField, entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(field, n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                field.zero()
            }
        })
    }

    #[test]
    fn canonical_vector_heights() {
        // H(e1) = 1
        let e1 = [1, 0, 0].map(Scalar::from_int);
        assert!(canonical_vector_height(&e1).unwrap().is_one());
        // H((1,2,2)) = 3
        let v = [1, 2, 2].map(Scalar::from_int);
        assert_eq!(
            canonical_vector_height(&v).unwrap(),
            ExactPositive::from_rational(rat(3, 1))
        );
        // scaling invariance with a rational scalar
        let w: Vec<Scalar> = v.iter().map(|e| e.mul(&Scalar::from_frac(-7, 5))).collect();
        assert_eq!(canonical_vector_height(&w).unwrap(), canonical_vector_height(&v).unwrap());
        // H((t, t+1)) = e over F_2(t)
        let ff = GroundField::rational_functions(2).unwrap();
        let x = vec![Scalar::parse(ff, "t").unwrap(), Scalar::parse(ff, "t+1").unwrap()];
        assert_eq!(canonical_vector_height(&x).unwrap(), ExactPositive::from_log(1));
    }

    #[test]
    fn canonical_subspace_heights() {
        // span{e1, e2} in Q^4 has height 1
        let u = Subspace::new(Matrix::from_i64(q(), 4, 2, &[1, 0, 0, 1, 0, 0, 0, 0])).unwrap();
        assert!(canonical_subspace_height(&u).unwrap().is_one());
        // span{(1,0,1),(0,1,1)} in Q^3 has height sqrt(3)
        let u = Subspace::new(Matrix::from_i64(q(), 3, 2, &[1, 0, 0, 1, 1, 1])).unwrap();
        assert_eq!(
            canonical_subspace_height(&u).unwrap(),
            ExactPositive::sqrt_of_rational(rat(3, 1))
        );
    }

    #[test]
    fn form_heights() {
        let j2 = Matrix::standard_symplectic(q(), 1).unwrap();
        assert_eq!(form_height(&j2).unwrap(), ExactPositive::sqrt_of_rational(rat(2, 1)));
        let j4 = Matrix::standard_symplectic(q(), 2).unwrap();
        assert_eq!(form_height(&j4).unwrap(), ExactPositive::from_rational(rat(2, 1)));
        // projective invariance
        let scaled = j4.scale(&Scalar::from_frac(3, 7));
        assert_eq!(form_height(&scaled).unwrap(), form_height(&j4).unwrap());
        assert!(form_height(&Matrix::zero(q(), 2, 2)).is_err());
    }

    #[test]
    fn dual_complement_heights_match() {
        // span{e1} in Q^2: B row-equivalent to (0, 1), both heights 1
        let u = Subspace::new(Matrix::from_i64(q(), 2, 1, &[1, 0])).unwrap();
        let b = dual_complement(&u).unwrap();
        assert!(b.at(0, 0).is_zero());
        let id = AdelicAutomorphism::identity(q(), 2);
        assert_eq!(
            matrix_height(&id, &b, Orientation::Rows).unwrap(),
            canonical_subspace_height(&u).unwrap()
        );

        // span{(1,0,1),(0,1,1)}: both sides sqrt(3)
        let u = Subspace::new(Matrix::from_i64(q(), 3, 2, &[1, 0, 0, 1, 1, 1])).unwrap();
        let b = dual_complement(&u).unwrap();
        let id3 = AdelicAutomorphism::identity(q(), 3);
        assert_eq!(
            matrix_height(&id3, &b, Orientation::Rows).unwrap(),
            ExactPositive::sqrt_of_rational(rat(3, 1))
        );

        // function-field case: span{(1, t)} has complement (t, 1)-ish
        let ff = GroundField::rational_functions(2).unwrap();
        let t = Scalar::parse(ff, "t").unwrap();
        let u = Subspace::new(Matrix::from_entries(ff, 2, 1, vec![ff.one(), t]).unwrap()).unwrap();
        let b = dual_complement(&u).unwrap();
        let idf = AdelicAutomorphism::identity(ff, 2);
        assert_eq!(
            matrix_height(&idf, &b, Orientation::Rows).unwrap(),
            canonical_subspace_height(&u).unwrap()
        );

        let full = Subspace::full(q(), 2);
        assert!(matches!(dual_complement(&full), Err(Error::NoComplement)));
    }

    #[test]
    fn star_is_involution() {
        let comp = diag(q(), &[Scalar::from_int(2), Scalar::from_int(1)]);
        let a = AdelicAutomorphism::new(q(), 2, vec![(Place::Archimedean, comp)]).unwrap();
        let ss = a.star().unwrap().star().unwrap();
        assert_eq!(a, ss);
        // diag(2,1) star is diag(1/2, 1)
        let s = a.star().unwrap();
        let m = s.component(&Place::Archimedean).unwrap();
        assert_eq!(m.at(0, 0), &Scalar::from_frac(1, 2));
        assert_eq!(m.at(1, 1), &Scalar::from_int(1));
    }

    #[test]
    fn dilation_constants_identity() {
        let a = AdelicAutomorphism::identity(q(), 3);
        let d = dilation_constants(&a).unwrap();
        assert!(d.c1.is_one() && d.c2.is_one() && d.frak_c.is_one());
        assert!(d.frak_c_prime.is_one() && d.det_adelic.is_one());
    }

    #[test]
    fn dilation_constants_archimedean_example() {
        // A = diag(2,1) at the archimedean place of Q^2:
        // C1 = 2/3, C2 = 3, frakC = 9/2, |det| = 2, frakC' = 81 sqrt(2) / 8
        let comp = diag(q(), &[Scalar::from_int(2), Scalar::from_int(1)]);
        let a = AdelicAutomorphism::new(q(), 2, vec![(Place::Archimedean, comp)]).unwrap();
        let d = dilation_constants(&a).unwrap();
        assert_eq!(d.c1, ExactPositive::from_rational(rat(2, 3)));
        assert_eq!(d.c2, ExactPositive::from_rational(rat(3, 1)));
        assert_eq!(d.frak_c, ExactPositive::from_rational(rat(9, 2)));
        assert_eq!(d.det_adelic, ExactPositive::from_rational(rat(2, 1)));
        let expected = ExactPositive::Sqrt { rational: rat(81, 8), radicand: rat(2, 1) };
        assert_eq!(d.frak_c_prime, expected);
    }

    #[test]
    fn dilation_constants_p_adic_example() {
        // A = diag(2,1) at the place 2: C2 = 3/2, C1 = 1/3, |det| = 1/2
        let comp = diag(q(), &[Scalar::from_int(2), Scalar::from_int(1)]);
        let a =
            AdelicAutomorphism::new(q(), 2, vec![(Place::prime(2).unwrap(), comp)]).unwrap();
        let d = dilation_constants(&a).unwrap();
        assert_eq!(d.c2, ExactPositive::from_rational(rat(3, 2)));
        assert_eq!(d.c1, ExactPositive::from_rational(rat(1, 3)));
        assert_eq!(d.det_adelic, ExactPositive::from_rational(rat(1, 2)));
    }

    #[test]
    fn star_constant_identities() {
        // C1(A*)^{-1} = C2(A), C2(A*) = C1(A)^{-1}, frakC(A*) = frakC(A)
        let comp = Matrix::from_i64(q(), 2, 2, &[2, 1, 0, 3]);
        let a = AdelicAutomorphism::new(
            q(),
            2,
            vec![(Place::Archimedean, comp.clone()), (Place::prime(5).unwrap(), comp)],
        )
        .unwrap();
        let da = dilation_constants(&a).unwrap();
        let ds = dilation_constants(&a.star().unwrap()).unwrap();
        assert_eq!(ds.c1.inv(), da.c2);
        assert_eq!(ds.c2, da.c1.inv());
        assert_eq!(ds.frak_c, da.frak_c);
    }

    #[test]
    fn twisted_height_example() {
        // A = diag(2,1) at infinity: H_A((1,1)) = sqrt(4 + 1)
        let comp = diag(q(), &[Scalar::from_int(2), Scalar::from_int(1)]);
        let a = AdelicAutomorphism::new(q(), 2, vec![(Place::Archimedean, comp)]).unwrap();
        let x = [1, 1].map(Scalar::from_int);
        assert_eq!(
            vector_height(&a, &x).unwrap(),
            ExactPositive::sqrt_of_rational(rat(5, 1))
        );
        // full space height under A equals |det A| for L = N
        let full = Subspace::full(q(), 2);
        assert_eq!(subspace_height(&a, &full).unwrap(), ExactPositive::from_rational(rat(2, 1)));
    }

    #[test]
    fn subspace_height_basis_independent() {
        let a = AdelicAutomorphism::new(
            q(),
            3,
            vec![(
                Place::Archimedean,
                diag(q(), &[Scalar::from_int(2), Scalar::from_int(1), Scalar::from_frac(1, 3)]),
            )],
        )
        .unwrap();
        let basis = Matrix::from_i64(q(), 3, 2, &[1, 0, 0, 1, 1, 1]);
        let u = Subspace::new(basis.clone()).unwrap();
        let w = basis.mul(&Matrix::from_i64(q(), 2, 2, &[2, 1, 1, 1])).unwrap();
        let u2 = Subspace::new(w).unwrap();
        assert_eq!(subspace_height(&a, &u).unwrap(), subspace_height(&a, &u2).unwrap());
    }

    #[test]
    fn isometry_detection() {
        // permutation matrix is an isometry everywhere
        let perm = Matrix::from_i64(q(), 2, 2, &[0, 1, 1, 0]);
        assert!(is_local_isometry(&Place::Archimedean, &perm).unwrap());
        assert!(is_local_isometry(&Place::prime(3).unwrap(), &perm).unwrap());
        // diag(2,1) is an isometry at 3 but not at 2 or infinity
        let d = diag(q(), &[Scalar::from_int(2), Scalar::from_int(1)]);
        assert!(is_local_isometry(&Place::prime(3).unwrap(), &d).unwrap());
        assert!(!is_local_isometry(&Place::prime(2).unwrap(), &d).unwrap());
        assert!(!is_local_isometry(&Place::Archimedean, &d).unwrap());
    }
}
