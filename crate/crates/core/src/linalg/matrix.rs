use crate::error::{Error, Result};
use crate::field::{GroundField, Scalar};
use crate::linalg::elimination;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Dense matrix over one scalar backend, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: GroundField,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_entries(
        field: GroundField,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::BackendMismatch("matrix entries from a different field".into()));
        }
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn from_fn(
        field: GroundField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    pub fn from_i64(field: GroundField, rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Matrix::from_fn(field, rows, cols, |i, j| field.from_i64(vals[i * cols + j]))
    }

    pub fn zero(field: GroundField, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(field, rows, cols, |_, _| field.zero())
    }

    pub fn identity(field: GroundField, n: usize) -> Self {
        Matrix::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    /// The standard 2k x 2k symplectic form [[0, I], [-I, 0]]: the Gram
    /// pattern of a symplectic basis ordered x_1..x_k, y_1..y_k.
    pub fn standard_symplectic(field: GroundField, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Dimension("standard symplectic form needs k >= 1".into()));
        }
        Ok(Matrix::from_fn(field, 2 * k, 2 * k, |i, j| {
            if j == i + k {
                field.one()
            } else if i == j + k {
                field.from_i64(-1)
            } else {
                field.zero()
            }
        }))
    }

    /// k hyperbolic 2x2 blocks down the diagonal: the Gram pattern of
    /// a symplectic basis ordered x_1, y_1, .., x_k, y_k.
    pub fn hyperbolic_blocks(field: GroundField, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Dimension("hyperbolic block form needs k >= 1".into()));
        }
        Ok(Matrix::from_fn(field, 2 * k, 2 * k, |i, j| {
            if i / 2 == j / 2 && j == i + 1 {
                field.one()
            } else if i / 2 == j / 2 && i == j + 1 {
                field.from_i64(-1)
            } else {
                field.zero()
            }
        }))
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn from_columns(field: GroundField, n: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        for c in cols {
            if c.len() != n {
                return Err(Error::Dimension("column length mismatch".into()));
            }
        }
        Ok(Matrix::from_fn(field, n, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn from_rows(field: GroundField, m: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        for r in rows {
            if r.len() != m {
                return Err(Error::Dimension("row length mismatch".into()));
            }
        }
        Ok(Matrix::from_fn(field, rows.len(), m, |i, j| rows[i][j].clone()))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.at(rows[i], j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.at(i, cols[j]).clone())
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::Dimension("hstack shape mismatch".into()));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::Dimension("vstack shape mismatch".into()));
        }
        Ok(Matrix::from_fn(self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        }))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Dimension(format!(
                "multiplying {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.field, self.rows, other.cols, |i, j| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        }))
    }

    pub fn mul_vector(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("matrix-vector shape mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc.add(&self.at(i, k).mul(vk));
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.at(i, j).mul(c))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.at(i, j).neg())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Antisymmetric with zero diagonal; over F_2 the zero diagonal is
    /// the binding constraint.
    pub fn is_alternating(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if !self.at(i, i).is_zero() {
                return false;
            }
            for j in (i + 1)..self.cols {
                if self.at(i, j).add(self.at(j, i)).is_zero() == false {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_diagonal(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.at(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The bilinear pairing x^t M y.
    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.rows || y.len() != self.cols {
            return Err(Error::Dimension("pairing shape mismatch".into()));
        }
        let my = self.mul_vector(y)?;
        let mut acc = self.field.zero();
        for (xi, mi) in x.iter().zip(my.iter()) {
            acc = acc.add(&xi.mul(mi));
        }
        Ok(acc)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Wire format: {"rows": r, "cols": c, "entries": [scalar strings]}.
/// Deserializing needs the field, so Matrix itself only serializes;
/// use [`MatrixRepr::into_matrix`] to read one back.
#[derive(Serialize, Deserialize)]
pub struct MatrixRepr {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl Matrix {
    pub fn to_repr(&self) -> MatrixRepr {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.to_string()).collect(),
        }
    }
}

impl MatrixRepr {
    pub fn into_matrix(&self, field: GroundField) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|s| Scalar::parse(field, s))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_entries(field, self.rows, self.cols, entries)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

/// A linear subspace of K^N presented by a full-column-rank basis
/// matrix. The zero subspace (L = 0) is a first-class value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subspace {
    #[serde(rename = "ambientDim")]
    ambient_dim: usize,
    dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn new(basis: Matrix) -> Result<Self> {
        if basis.cols() > basis.rows() {
            return Err(Error::Dimension(format!(
                "{} vectors cannot be independent in K^{}",
                basis.cols(),
                basis.rows()
            )));
        }
        if basis.cols() > 0 && elimination::rank(&basis) != basis.cols() {
            return Err(Error::RankDeficient("subspace basis has dependent columns".into()));
        }
        Ok(Subspace { ambient_dim: basis.rows(), dim: basis.cols(), basis })
    }

    pub fn empty(field: GroundField, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, dim: 0, basis: Matrix::zero(field, ambient_dim, 0) }
    }

    pub fn full(field: GroundField, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            dim: ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    pub fn from_basis_vectors(
        field: GroundField,
        ambient_dim: usize,
        vectors: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Subspace::empty(field, ambient_dim));
        }
        Subspace::new(Matrix::from_columns(field, ambient_dim, &vectors)?)
    }

    pub fn span_of_vectors(
        field: GroundField,
        ambient_dim: usize,
        vectors: &[Vec<Scalar>],
    ) -> Result<Self> {
        let m = Matrix::from_columns(field, ambient_dim, vectors)?;
        let independent = elimination::column_space_basis(&m);
        Subspace::from_basis_vectors(field, ambient_dim, independent)
    }

    pub fn field(&self) -> GroundField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_empty(&self) -> bool {
        self.dim == 0
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension("vector outside the ambient space".into()));
        }
        if v.iter().all(|e| e.is_zero()) {
            return Ok(true);
        }
        if self.dim == 0 {
            return Ok(false);
        }
        Ok(elimination::solve(&self.basis, v).is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for j in 0..other.dim() {
            if !self.contains_vector(&other.basis.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_span(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim == other.dim && self.contains_subspace(other)?)
    }
}

impl<'de> Deserialize<'de> for MatrixOver {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            field: GroundField,
            #[serde(flatten)]
            matrix: MatrixRepr,
        }
        let repr = Repr::deserialize(deserializer)?;
        let matrix = repr.matrix.into_matrix(repr.field).map_err(D::Error::custom)?;
        Ok(MatrixOver(matrix))
    }
}

/// A matrix bundled with its field tag for self-contained JSON.
pub struct MatrixOver(pub Matrix);

impl Serialize for MatrixOver {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("field", &self.0.field())?;
        map.serialize_entry("rows", &self.0.rows())?;
        map.serialize_entry("cols", &self.0.cols())?;
        map.serialize_entry(
            "entries",
            &self.0.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        )?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_check() {
        let f = GroundField::Rationals;
        let j2 = Matrix::from_i64(f, 2, 2, &[0, 1, -1, 0]);
        assert!(j2.is_alternating());
        let sym = Matrix::from_i64(f, 2, 2, &[0, 1, 1, 0]);
        assert!(!sym.is_alternating());
        let diag = Matrix::from_i64(f, 2, 2, &[1, 1, -1, 0]);
        assert!(!diag.is_alternating());

        // over F_2 symmetric-with-zero-diagonal is alternating
        let ff = GroundField::rational_functions(2).unwrap();
        let j = Matrix::from_i64(ff, 2, 2, &[0, 1, 1, 0]);
        assert!(j.is_alternating());
    }

    #[test]
    fn standard_symplectic_form() {
        let j4 = Matrix::standard_symplectic(GroundField::Rationals, 2).unwrap();
        assert!(j4.is_alternating());
        let e1 = [1, 0, 0, 0].map(Scalar::from_int);
        let e3 = [0, 0, 1, 0].map(Scalar::from_int);
        assert_eq!(j4.pair(&e1, &e3).unwrap(), Scalar::from_int(1));
    }

    #[test]
    fn matrix_json_roundtrip() {
        let m = Matrix::from_i64(GroundField::Rationals, 2, 2, &[1, -2, 3, 4]);
        let json = serde_json::to_string(&m).unwrap();
        let repr: MatrixRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(repr.into_matrix(GroundField::Rationals).unwrap(), m);
    }

    #[test]
    fn subspace_rejects_dependent_basis() {
        let basis = Matrix::from_i64(GroundField::Rationals, 3, 2, &[1, 2, 2, 4, 3, 6]);
        assert!(Subspace::new(basis).is_err());
    }

    #[test]
    fn membership() {
        let f = GroundField::Rationals;
        let u = Subspace::new(Matrix::from_i64(f, 3, 2, &[1, 0, 0, 1, 1, 1])).unwrap();
        assert!(u.contains_vector(&[1, 1, 2].map(Scalar::from_int)).unwrap());
        assert!(!u.contains_vector(&[1, 0, 0].map(Scalar::from_int)).unwrap());
    }
}
