//! Symplectic bases of bounded height: the recursive construction
//! (reduce, pick a cheapest non-orthogonal pair, split off its
//! symplectic plane, recurse on the orthogonal complement inside Z),
//! the hyperbolic decomposition and isotropic flags it yields, and
//! exact verification of every height bound.

use crate::error::{Error, Result};
use crate::field::{ExactPositive, GroundField, Scalar};
use crate::graph::orthogonality_graph;
use crate::heights::{
    dilation_constants, form_height, subspace_height, vector_height, AdelicAutomorphism,
    HeightValue,
};
use crate::linalg::{self, gram, intersect, kernel, Matrix, Subspace};
use crate::siegel::{field_constant, small_basis, SiegelCertificate};
use serde::{Deserialize, Serialize};

/// An alternating form F on K^N restricted to a 2k-dimensional
/// subspace Z.
#[derive(Debug, Clone)]
pub struct SymplecticSpace {
    form: Matrix,
    subspace: Subspace,
}

impl SymplecticSpace {
    pub fn new(form: Matrix, subspace: Subspace) -> Result<Self> {
        if !form.is_alternating() {
            return Err(Error::NotAlternating(
                "the form matrix must be antisymmetric with zero diagonal".into(),
            ));
        }
        if form.rows() != subspace.ambient_dim() || form.field() != subspace.field() {
            return Err(Error::Dimension("form and subspace live in different spaces".into()));
        }
        let dim = subspace.dim();
        if dim == 0 || dim % 2 != 0 {
            return Err(Error::Dimension(format!(
                "a symplectic space needs even positive dimension, got {dim}"
            )));
        }
        Ok(SymplecticSpace { form, subspace })
    }

    pub fn field(&self) -> GroundField {
        self.form.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.form.rows()
    }

    pub fn k(&self) -> usize {
        self.subspace.dim() / 2
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }
}

/// Nondegeneracy of the restriction: det of the Gram matrix of any
/// basis is nonzero; equivalent to the pointwise definition by
/// bilinearity.
pub fn is_regular(space: &SymplecticSpace) -> Result<bool> {
    let g = gram(space.form(), space.subspace().basis())?;
    Ok(!linalg::det(&g)?.is_zero())
}

/// Basis x_1..x_k, y_1..y_k with F(x_i, y_i) = 1 and all other
/// pairings zero.
#[derive(Debug, Clone, Serialize)]
pub struct SymplecticBasis {
    pub x: Vec<Vec<Scalar>>,
    pub y: Vec<Vec<Scalar>>,
}

impl SymplecticBasis {
    pub fn k(&self) -> usize {
        self.x.len()
    }

    /// Columns x_1..x_k, y_1..y_k.
    pub fn as_matrix(&self, field: GroundField, n: usize) -> Result<Matrix> {
        let cols: Vec<Vec<Scalar>> = self.x.iter().chain(self.y.iter()).cloned().collect();
        Matrix::from_columns(field, n, &cols)
    }

    /// Exact Gram-pattern check of all the defining relations.
    pub fn verify_relations(&self, form: &Matrix) -> Result<bool> {
        let k = self.k();
        if k == 0 || self.y.len() != k {
            return Ok(false);
        }
        let m = self.as_matrix(form.field(), form.rows())?;
        let g = gram(form, &m)?;
        Ok(g == Matrix::standard_symplectic(form.field(), k)?)
    }
}

/// The exponents of the main bound; both are integers for every k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExponentPair {
    pub a_k: i64,
    pub b_k: i64,
}

pub fn exponents(k: usize) -> Result<ExponentPair> {
    if k < 1 {
        return Err(Error::Domain("exponents need k >= 1".into()));
    }
    let k = k as i64;
    let (a_num, b_num) = if k % 2 == 0 {
        (k * k + 4 * k, 2 * k * k * k + 9 * k * k - 14 * k)
    } else {
        (k * k + 4 * k - 1, 2 * k * k * k + 9 * k * k - 14 * k + 3)
    };
    debug_assert_eq!(a_num % 4, 0);
    debug_assert_eq!(b_num % 12, 0);
    Ok(ExponentPair { a_k: a_num / 4, b_k: b_num / 12 })
}

/// Per-level evidence from the recursive construction.
#[derive(Debug, Clone, Serialize)]
pub struct BasisTrace {
    /// One reduction certificate per recursion level, outermost first.
    pub certificates: Vec<SiegelCertificate>,
    /// The (i, j) positions of the selected non-orthogonal pair within
    /// each level's reduced basis (k > 1 levels only).
    #[serde(rename = "selectedPairs")]
    pub selected_pairs: Vec<(usize, usize)>,
}

pub fn symplectic_basis(a: &AdelicAutomorphism, space: &SymplecticSpace) -> Result<SymplecticBasis> {
    Ok(symplectic_basis_traced(a, space)?.0)
}

/// The construction plus its per-level certificates.
pub fn symplectic_basis_traced(
    a: &AdelicAutomorphism,
    space: &SymplecticSpace,
) -> Result<(SymplecticBasis, BasisTrace)> {
    if !is_regular(space)? {
        return Err(Error::NotRegular);
    }
    let mut trace = BasisTrace { certificates: vec![], selected_pairs: vec![] };
    let (x, y) = build(a, space.form(), space.subspace(), &mut trace)?;
    Ok((SymplecticBasis { x, y }, trace))
}

type PairVecs = (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>);

fn build(
    a: &AdelicAutomorphism,
    form: &Matrix,
    z: &Subspace,
    trace: &mut BasisTrace,
) -> Result<PairVecs> {
    let k = z.dim() / 2;
    let cert = small_basis(a, z)?;
    let vecs = cert.basis.clone();
    trace.certificates.push(cert);

    if k == 1 {
        let c = form.pair(&vecs[0], &vecs[1])?;
        if c.is_zero() {
            return Err(Error::NotRegular);
        }
        let x1: Vec<Scalar> = vecs[0].iter().map(|e| e.div(&c)).collect();
        return Ok((vec![x1], vec![vecs[1].clone()]));
    }

    // edges of the graph mark orthogonal pairs; candidates are the
    // non-edges, and the cheapest height product wins (lexicographic
    // tie-break), which only improves on the sweep's choice
    let graph = orthogonality_graph(form, &vecs)?;
    let heights: Vec<HeightValue> =
        vecs.iter().map(|v| vector_height(a, v)).collect::<Result<_>>()?;
    let mut best: Option<(HeightValue, (usize, usize))> = None;
    for i in 0..vecs.len() {
        for j in (i + 1)..vecs.len() {
            if graph.connected(i, j) {
                continue;
            }
            let prod = heights[i].mul(&heights[j]);
            if best.as_ref().map_or(true, |(b, _)| prod.cmp_exact(b).is_lt()) {
                best = Some((prod, (i, j)));
            }
        }
    }
    let Some((_, (i1, j1))) = best else {
        // every pairing vanishes on a basis of a regular space: impossible
        return Err(Error::NotRegular);
    };
    trace.selected_pairs.push((i1, j1));

    let c = form.pair(&vecs[i1], &vecs[j1])?;
    let x1: Vec<Scalar> = vecs[i1].iter().map(|e| e.div(&c)).collect();
    let y1 = vecs[j1].clone();

    // Z_1 = { z in Z : F(x_1, z) = F(y_1, z) = 0 }
    let field = form.field();
    let n = form.rows();
    let ft = form.transpose();
    let rows = vec![ft.mul_vector(&x1)?, ft.mul_vector(&y1)?];
    let constraints = Matrix::from_rows(field, n, &rows)?;
    let z1 = intersect(&kernel(&constraints)?, z)?;
    if z1.dim() != 2 * (k - 1) {
        return Err(Error::Contract(format!(
            "orthogonal complement inside Z has dimension {}, expected {}",
            z1.dim(),
            2 * (k - 1)
        )));
    }

    let (mut xs, mut ys) = build(a, form, &z1, trace)?;
    xs.insert(0, x1);
    ys.insert(0, y1);
    Ok((xs, ys))
}

/// The k pairwise orthogonal planes spanned by the basis pairs; their
/// orthogonal direct sum is Z.
pub fn hyperbolic_decomposition(form: &Matrix, basis: &SymplecticBasis) -> Result<Vec<Subspace>> {
    if !basis.verify_relations(form)? {
        return Err(Error::Contract("not a symplectic basis for this form".into()));
    }
    let field = form.field();
    let n = form.rows();
    let mut planes = vec![];
    for (x, y) in basis.x.iter().zip(basis.y.iter()) {
        planes.push(Subspace::from_basis_vectors(field, n, vec![x.clone(), y.clone()])?);
    }
    Ok(planes)
}

/// Nested totally isotropic flags V_1 c .. c V_k and W_1 c .. c W_k
/// with V_n, W_n transversal; the pairs are reordered so the height
/// products are nondecreasing before spans are taken.
#[derive(Debug, Clone, Serialize)]
pub struct IsotropicFlagPair {
    pub v: Vec<Subspace>,
    pub w: Vec<Subspace>,
}

pub fn isotropic_flags(
    a: &AdelicAutomorphism,
    form: &Matrix,
    basis: &SymplecticBasis,
) -> Result<IsotropicFlagPair> {
    if !basis.verify_relations(form)? {
        return Err(Error::Contract("not a symplectic basis for this form".into()));
    }
    let k = basis.k();
    let field = form.field();
    let n = form.rows();
    let mut order: Vec<usize> = (0..k).collect();
    let products: Vec<HeightValue> = (0..k)
        .map(|i| Ok(vector_height(a, &basis.x[i])?.mul(&vector_height(a, &basis.y[i])?)))
        .collect::<Result<_>>()?;
    order.sort_by(|&i, &j| products[i].cmp_exact(&products[j]).then(i.cmp(&j)));

    let mut v = vec![];
    let mut w = vec![];
    for nn in 1..=k {
        let xs: Vec<Vec<Scalar>> = order[..nn].iter().map(|&i| basis.x[i].clone()).collect();
        let ys: Vec<Vec<Scalar>> = order[..nn].iter().map(|&i| basis.y[i].clone()).collect();
        let vn = Subspace::from_basis_vectors(field, n, xs)?;
        let wn = Subspace::from_basis_vectors(field, n, ys)?;
        if !gram(form, vn.basis())?.is_zero() || !gram(form, wn.basis())?.is_zero() {
            return Err(Error::Contract("flag member is not totally isotropic".into()));
        }
        if !intersect(&vn, &wn)?.is_empty() {
            return Err(Error::Contract("flag members are not transversal".into()));
        }
        v.push(vn);
        w.push(wn);
    }
    Ok(IsotropicFlagPair { v, w })
}

/// One flag inequality, compared exactly after raising both sides to
/// the k-th power to clear the n/k exponent.
#[derive(Debug, Clone, Serialize)]
pub struct FlagBound {
    pub n: usize,
    pub lhs: HeightValue,
    #[serde(rename = "lhsApprox")]
    pub lhs_approx: f64,
    pub satisfied: bool,
}

/// Exact comparison of everything the construction promises: the main
/// product bound, the hyperbolic product bound, and all flag bounds.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub lhs: HeightValue,
    #[serde(rename = "lhsApprox")]
    pub lhs_approx: f64,
    #[serde(rename = "rhsTheorem")]
    pub rhs_theorem: HeightValue,
    #[serde(rename = "rhsApprox")]
    pub rhs_approx: f64,
    #[serde(rename = "satisfiedTheorem")]
    pub satisfied_theorem: bool,
    #[serde(rename = "hyperbolicLhs")]
    pub hyperbolic_lhs: HeightValue,
    #[serde(rename = "hyperbolicApprox")]
    pub hyperbolic_approx: f64,
    #[serde(rename = "satisfiedHyperbolic")]
    pub satisfied_hyperbolic: bool,
    #[serde(rename = "flagBounds")]
    pub flag_bounds: Vec<FlagBound>,
    #[serde(rename = "symplecticRelations")]
    pub symplectic_relations: bool,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.satisfied_theorem
            && self.satisfied_hyperbolic
            && self.symplectic_relations
            && self.flag_bounds.iter().all(|f| f.satisfied)
    }
}

pub fn verify_bounds(
    a: &AdelicAutomorphism,
    space: &SymplecticSpace,
    basis: &SymplecticBasis,
) -> Result<BoundReport> {
    let k = basis.k();
    let field = space.field();
    let exp = exponents(k)?;

    let mut lhs = ExactPositive::one_for(field);
    for v in basis.x.iter().chain(basis.y.iter()) {
        lhs = lhs.mul(&vector_height(a, v)?);
    }

    let c = field_constant(field, space.ambient_dim(), 2 * k)?;
    let hz = subspace_height(a, space.subspace())?;
    let hf = form_height(space.form())?;
    let cp = dilation_constants(a)?.frak_c_prime;
    let rhs = c.mul(&hz).pow(exp.a_k).mul(&cp.mul(&hf).pow(exp.b_k));

    let symplectic_relations = basis.verify_relations(space.form())?;

    let planes = hyperbolic_decomposition(space.form(), basis)?;
    let mut hyperbolic_lhs = ExactPositive::one_for(field);
    for plane in &planes {
        hyperbolic_lhs = hyperbolic_lhs.mul(&subspace_height(a, plane)?);
    }

    let flags = isotropic_flags(a, space.form(), basis)?;
    let mut flag_bounds = vec![];
    for n in 1..=k {
        let lhs_n = subspace_height(a, &flags.v[n - 1])?.mul(&subspace_height(a, &flags.w[n - 1])?);
        let satisfied = lhs_n.cmp_pow(k as i64, &rhs, n as i64).is_le();
        flag_bounds.push(FlagBound {
            n,
            lhs_approx: lhs_n.approx_f64(),
            lhs: lhs_n,
            satisfied,
        });
    }

    Ok(BoundReport {
        lhs_approx: lhs.approx_f64(),
        satisfied_theorem: lhs.le(&rhs),
        rhs_approx: rhs.approx_f64(),
        hyperbolic_approx: hyperbolic_lhs.approx_f64(),
        satisfied_hyperbolic: hyperbolic_lhs.le(&rhs),
        lhs,
        rhs_theorem: rhs,
        hyperbolic_lhs,
        flag_bounds,
        symplectic_relations,
    })
}

/// Instance wire format:
/// {"field": .., "N": .., "k": .., "F": matrix, "Z": matrix}.
#[derive(Serialize, Deserialize)]
pub struct InstanceRepr {
    pub field: GroundField,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    #[serde(rename = "F")]
    pub form: crate::linalg::MatrixRepr,
    #[serde(rename = "Z")]
    pub subspace: crate::linalg::MatrixRepr,
}

impl InstanceRepr {
    pub fn from_space(space: &SymplecticSpace) -> Self {
        InstanceRepr {
            field: space.field(),
            n: space.ambient_dim(),
            k: space.k(),
            form: space.form().to_repr(),
            subspace: space.subspace().basis().to_repr(),
        }
    }

    pub fn into_space(&self) -> Result<SymplecticSpace> {
        let form = self.form.into_matrix(self.field)?;
        let basis = self.subspace.into_matrix(self.field)?;
        if form.rows() != self.n || basis.cols() != 2 * self.k {
            return Err(Error::Dimension("instance header disagrees with matrices".into()));
        }
        SymplecticSpace::new(form, Subspace::new(basis)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> GroundField {
        GroundField::Rationals
    }

    fn space_2d() -> SymplecticSpace {
        let j2 = Matrix::standard_symplectic(q(), 1).unwrap();
        SymplecticSpace::new(j2, Subspace::full(q(), 2)).unwrap()
    }

    #[test]
    fn regularity_examples() {
        // full (Q^4, J4 block form) is regular
        let j4 = Matrix::hyperbolic_blocks(q(), 2).unwrap();
        let s = SymplecticSpace::new(j4.clone(), Subspace::full(q(), 4)).unwrap();
        assert!(is_regular(&s).unwrap());
        // span{e1, e3} is totally isotropic for the block form
        let iso = Subspace::new(Matrix::from_i64(q(), 4, 2, &[1, 0, 0, 0, 0, 1, 0, 0])).unwrap();
        let s = SymplecticSpace::new(j4.clone(), iso).unwrap();
        assert!(!is_regular(&s).unwrap());
        // span{e1, e2} carries a hyperbolic block
        let reg = Subspace::new(Matrix::from_i64(q(), 4, 2, &[1, 0, 0, 1, 0, 0, 0, 0])).unwrap();
        let s = SymplecticSpace::new(j4, reg).unwrap();
        assert!(is_regular(&s).unwrap());
    }

    #[test]
    fn exponent_table() {
        assert_eq!(exponents(1).unwrap(), ExponentPair { a_k: 1, b_k: 0 });
        assert_eq!(exponents(2).unwrap(), ExponentPair { a_k: 3, b_k: 2 });
        assert_eq!(exponents(3).unwrap(), ExponentPair { a_k: 5, b_k: 8 });
        assert!(exponents(0).is_err());
        for k in 1..=8usize {
            let e = exponents(k).unwrap();
            let ki = k as i64;
            if k % 2 == 0 {
                assert_eq!(4 * e.a_k, ki * ki + 4 * ki);
                assert_eq!(12 * e.b_k, 2 * ki * ki * ki + 9 * ki * ki - 14 * ki);
            } else {
                assert_eq!(4 * e.a_k, ki * ki + 4 * ki - 1);
                assert_eq!(12 * e.b_k, 2 * ki * ki * ki + 9 * ki * ki - 14 * ki + 3);
            }
        }
    }

    #[test]
    fn base_case_q2() {
        let a = AdelicAutomorphism::identity(q(), 2);
        let space = space_2d();
        let basis = symplectic_basis(&a, &space).unwrap();
        assert!(basis.verify_relations(space.form()).unwrap());
        let report = verify_bounds(&a, &space, &basis).unwrap();
        assert!(report.all_satisfied());
        assert!(report.lhs.is_one());
        assert_eq!(report.rhs_theorem, ExactPositive::from_rational(num_rational::BigRational::from_integer(2.into())));
    }

    #[test]
    fn saturation_handles_scaled_generators() {
        // Z = span{e1, 2 e2} in (Q^4, J4 blocks): product of heights 1
        let j4 = Matrix::hyperbolic_blocks(q(), 2).unwrap();
        let z = Subspace::new(Matrix::from_i64(q(), 4, 2, &[1, 0, 0, 2, 0, 0, 0, 0])).unwrap();
        let space = SymplecticSpace::new(j4, z).unwrap();
        let a = AdelicAutomorphism::identity(q(), 4);
        let basis = symplectic_basis(&a, &space).unwrap();
        assert!(basis.verify_relations(space.form()).unwrap());
        let mut prod = ExactPositive::one_for(q());
        for v in basis.x.iter().chain(basis.y.iter()) {
            prod = prod.mul(&vector_height(&a, v).unwrap());
        }
        assert!(prod.is_one());
    }

    #[test]
    fn non_regular_is_rejected() {
        let j4 = Matrix::hyperbolic_blocks(q(), 2).unwrap();
        let iso = Subspace::new(Matrix::from_i64(q(), 4, 2, &[1, 0, 0, 0, 0, 1, 0, 0])).unwrap();
        let space = SymplecticSpace::new(j4, iso).unwrap();
        let a = AdelicAutomorphism::identity(q(), 4);
        assert!(matches!(symplectic_basis(&a, &space), Err(Error::NotRegular)));
    }

    #[test]
    fn full_pipeline_k2() {
        let a = AdelicAutomorphism::identity(q(), 4);
        let j4 = Matrix::hyperbolic_blocks(q(), 2).unwrap();
        let space = SymplecticSpace::new(j4, Subspace::full(q(), 4)).unwrap();
        let (basis, trace) = symplectic_basis_traced(&a, &space).unwrap();
        assert!(basis.verify_relations(space.form()).unwrap());
        assert_eq!(trace.certificates.len(), 2);
        assert!(trace.certificates.iter().all(|c| c.satisfied));
        assert_eq!(trace.selected_pairs.len(), 1);
        let report = verify_bounds(&a, &space, &basis).unwrap();
        assert!(report.all_satisfied());
    }

    #[test]
    fn standard_basis_decomposition() {
        // the standard basis of (Q^4, J4 blocks) splits into planes of height 1
        let j4 = Matrix::hyperbolic_blocks(q(), 2).unwrap();
        let e = |i: usize| -> Vec<Scalar> {
            (0..4).map(|j| q().from_i64((i == j) as i64)).collect()
        };
        let basis = SymplecticBasis { x: vec![e(0), e(2)], y: vec![e(1), e(3)] };
        let planes = hyperbolic_decomposition(&j4, &basis).unwrap();
        assert_eq!(planes.len(), 2);
        for plane in &planes {
            assert!(crate::heights::canonical_subspace_height(plane).unwrap().is_one());
        }
        // pairwise orthogonality of distinct planes: the mixed Gram
        // blocks vanish
        let stacked = planes[0].basis().hstack(planes[1].basis()).unwrap();
        let g = gram(&j4, &stacked).unwrap();
        for i in 0..2 {
            for j in 2..4 {
                assert!(g.at(i, j).is_zero() && g.at(j, i).is_zero());
            }
        }
        let a = AdelicAutomorphism::identity(q(), 4);
        let flags = isotropic_flags(&a, &j4, &basis).unwrap();
        assert_eq!(flags.v.len(), 2);
        // V_2 = span{e1, e3}, W_2 = span{e2, e4}; heights 1
        assert!(crate::heights::canonical_subspace_height(&flags.v[1]).unwrap().is_one());
        assert!(crate::heights::canonical_subspace_height(&flags.w[1]).unwrap().is_one());
    }

    #[test]
    fn function_field_pipeline() {
        let ff = GroundField::rational_functions(2).unwrap();
        let a = AdelicAutomorphism::identity(ff, 2);
        let j2 = Matrix::standard_symplectic(ff, 1).unwrap();
        let space = SymplecticSpace::new(j2, Subspace::full(ff, 2)).unwrap();
        let basis = symplectic_basis(&a, &space).unwrap();
        assert!(basis.verify_relations(space.form()).unwrap());
        let report = verify_bounds(&a, &space, &basis).unwrap();
        assert!(report.all_satisfied());
    }

    #[test]
    fn instance_json_roundtrip() {
        let space = space_2d();
        let repr = InstanceRepr::from_space(&space);
        let json = serde_json::to_string(&repr).unwrap();
        let back: InstanceRepr = serde_json::from_str(&json).unwrap();
        let space2 = back.into_space().unwrap();
        assert_eq!(space2.form(), space.form());
        assert_eq!(space2.subspace(), space.subspace());
    }
}
