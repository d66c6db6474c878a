//! Exact linear algebra over the ground field: rank, kernels,
//! intersections, Gram matrices, Grassmann (Plucker) coordinates, and
//! basis saturation.

pub(crate) mod elimination;
pub(crate) mod hnf;
mod matrix;
pub(crate) mod saturate;

pub use matrix::{Matrix, MatrixRepr, Subspace};

use crate::error::{Error, Result};
use crate::field::Scalar;
pub use saturate::saturate;

/// All L x L minors of an N x L full-rank matrix, indexed by row
/// subsets in lexicographic order: the image of the wedge product of
/// the columns under the canonical basis identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerVector {
    pub coordinates: Vec<Scalar>,
}

/// Lexicographically ordered k-subsets of 0..n.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for i in start..=(n - remaining) {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut cur, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: usize = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Grassmann coordinates of the column span of X; X must have full
/// column rank.
pub fn plucker(x: &Matrix) -> Result<PluckerVector> {
    if x.cols() == 0 || x.cols() > x.rows() {
        return Err(Error::Dimension(format!("{}x{} matrix has no Plucker vector", x.rows(), x.cols())));
    }
    if elimination::rank(x) != x.cols() {
        return Err(Error::RankDeficient("Plucker vector of a rank-deficient matrix".into()));
    }
    let l = x.cols();
    let mut coordinates = Vec::with_capacity(binomial(x.rows(), l));
    for rows in lex_subsets(x.rows(), l) {
        coordinates.push(elimination::det(&x.select_rows(&rows))?);
    }
    Ok(PluckerVector { coordinates })
}

/// Basis of the right null space of M; the empty subspace is a value,
/// not an error.
pub fn kernel(m: &Matrix) -> Result<Subspace> {
    let vectors = elimination::kernel_basis(m);
    Subspace::from_basis_vectors(m.field(), m.cols(), vectors)
}

/// Basis of U1 intersected with U2 inside the common ambient space.
pub fn intersect(u1: &Subspace, u2: &Subspace) -> Result<Subspace> {
    if u1.ambient_dim() != u2.ambient_dim() {
        return Err(Error::Dimension(format!(
            "intersecting subspaces of K^{} and K^{}",
            u1.ambient_dim(),
            u2.ambient_dim()
        )));
    }
    if u1.field() != u2.field() {
        return Err(Error::BackendMismatch("intersecting subspaces over different fields".into()));
    }
    let n = u1.ambient_dim();
    if u1.dim() == 0 || u2.dim() == 0 {
        return Ok(Subspace::empty(u1.field(), n));
    }
    // Solve [B1 | -B2] (a, b)^t = 0; the intersection is B1 * a.
    let l1 = u1.dim();
    let stacked = Matrix::from_fn(u1.field(), n, l1 + u2.dim(), |i, j| {
        if j < l1 {
            u1.basis().at(i, j).clone()
        } else {
            u2.basis().at(i, j - l1).neg()
        }
    });
    let combos = elimination::kernel_basis(&stacked);
    let vectors: Vec<Vec<Scalar>> = combos
        .iter()
        .map(|c| {
            (0..n)
                .map(|i| {
                    let mut acc = u1.field().zero();
                    for (j, cj) in c.iter().take(l1).enumerate() {
                        acc = acc.add(&u1.basis().at(i, j).mul(cj));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Subspace::from_basis_vectors(u1.field(), n, vectors)
}

/// X^t F X. Alternating F gives an alternating result.
pub fn gram(f: &Matrix, x: &Matrix) -> Result<Matrix> {
    if f.rows() != f.cols() || f.rows() != x.rows() {
        return Err(Error::Dimension(format!(
            "gram of {}x{} form with {}x{} matrix",
            f.rows(),
            f.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let fx = f.mul(x)?;
    x.transpose().mul(&fx)
}

pub use elimination::{det, inverse, rank, solve};
