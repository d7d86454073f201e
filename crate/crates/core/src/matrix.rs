//! Dense matrices over a [`Field`] with exact row reduction.

use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
}

/// Row-major matrix. All entries belong to `field`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// `particular` has free variables set to zero; `nullspace` holds one
    /// column per free variable.
    Solved {
        particular: Matrix,
        nullspace: Vec<Vec<Scalar>>,
    },
    NoSolution,
}

impl Solution {
    pub fn is_solved(&self) -> bool {
        matches!(self, Solution::Solved { .. })
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.field(), field, "matrix entry from another field");
                data.push(v);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Shape(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for v in row {
                if v.field() != field {
                    return Err(MatrixError::FieldMismatch(field, v.field()));
                }
                data.push(v);
            }
        }
        Ok(Matrix {
            rows: n,
            cols,
            field,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("ragged integer matrix")
    }

    /// Column matrix.
    pub fn column_vector(field: Field, v: Vec<Scalar>) -> Self {
        let rows = v.len();
        Matrix {
            rows,
            cols: 1,
            field,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    fn same_shape(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch(self.field, other.field));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.same_shape(other)?;
        Ok(Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.same_shape(other)?;
        Ok(Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product. Panics on length mismatch.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[&Matrix]) -> Result<Matrix, MatrixError> {
        let first = blocks
            .first()
            .ok_or_else(|| MatrixError::Shape("empty hstack".into()))?;
        let rows = first.rows;
        let field = first.field;
        for b in blocks {
            if b.rows != rows {
                return Err(MatrixError::Shape(format!(
                    "hstack rows {} vs {}",
                    b.rows, rows
                )));
            }
            if b.field != field {
                return Err(MatrixError::FieldMismatch(field, b.field));
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(r));
            }
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    /// Gauss–Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row; no other pivoting.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == rows.len() {
                break;
            }
            let Some(found) = (pr..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(pr, found);
            let inv = rows[pr][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for v in rows[pr][c..].iter_mut() {
                    if !v.is_zero() {
                        *v = &*v * &inv;
                    }
                }
            }
            let pivot_row = rows[pr].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == pr || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *v = &*v - &(&factor * p);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        let reduced = Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: rows.into_iter().flatten().collect(),
        };
        Rref {
            reduced,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column, in increasing
    /// free-column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        nullspace_from_rref(&rref, self.cols)
    }

    /// Solves `self · X = rhs`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Solution, MatrixError> {
        if rhs.rows != self.rows {
            return Err(MatrixError::Shape(format!(
                "rhs has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        if rhs.field != self.field {
            return Err(MatrixError::FieldMismatch(self.field, rhs.field));
        }
        let aug = Matrix::hstack(&[self, rhs])?.rref();
        if aug.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(Solution::NoSolution);
        }
        let mut particular = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (r, &p) in aug.pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                particular.set(p, c, aug.reduced.get(r, self.cols + c).clone());
            }
        }
        // The left block of rref([A|b]) is rref(A) when the system is consistent.
        let left = Rref {
            reduced: Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
                aug.reduced.get(r, c).clone()
            }),
            rank: aug.rank,
            pivots: aug.pivots.clone(),
        };
        Ok(Solution::Solved {
            particular,
            nullspace: nullspace_from_rref(&left, self.cols),
        })
    }

    /// Two-sided inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        match self.solve(&Matrix::identity(self.field, self.rows)) {
            Ok(Solution::Solved {
                particular,
                nullspace,
            }) if nullspace.is_empty() => Some(particular),
            _ => None,
        }
    }
}

fn nullspace_from_rref(rref: &Rref, cols: usize) -> Vec<Vec<Scalar>> {
    let field = rref.reduced.field;
    let mut is_pivot = vec![false; cols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (r, &p) in rref.pivots.iter().enumerate() {
                v[p] = -rref.reduced.get(r, free);
            }
            v
        })
        .collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A linear subspace of `field^ambient`, stored as the nonzero rows of its
/// reduced row-echelon basis. Two subspaces are equal iff these rows are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The span of `vectors`. Each vector must have length `ambient`.
    pub fn span(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(field, ambient);
        }
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
        }
        let m = Matrix::from_rows(field, rows).expect("uniform rows");
        let rref = m.rref();
        let basis = (0..rref.rank).map(|r| rref.reduced.row(r).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: rref.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis rows (reduced row-echelon).
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut residual = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if residual[p].is_zero() {
                continue;
            }
            let factor = residual[p].clone();
            for (x, b) in residual.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = &*x - &(&factor * b);
                }
            }
        }
        residual.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }
}

/// True iff the vectors are linearly independent.
pub fn linearly_independent(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> bool {
    Subspace::span(field, ambient, vectors.iter().cloned()).dim() == vectors.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn col(v: &[i64]) -> Matrix {
        Matrix::column_vector(Q, v.iter().map(|&x| Q.from_i64(x)).collect())
    }

    #[test]
    fn rref_identity_and_zero() {
        let r = Matrix::identity(Q, 3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(Matrix::zeros(Q, 3, 4).rank(), 0);
    }

    #[test]
    fn solve_identity() {
        let sol = Matrix::identity(Q, 3).solve(&col(&[1, 2, 3])).unwrap();
        assert_eq!(
            sol,
            Solution::Solved {
                particular: col(&[1, 2, 3]),
                nullspace: vec![]
            }
        );
    }

    #[test]
    fn solve_underdetermined() {
        let m = Matrix::from_i64(Q, &[&[1, 1]]);
        let Solution::Solved {
            particular,
            nullspace,
        } = m.solve(&col(&[1])).unwrap()
        else {
            panic!("expected a solution");
        };
        assert_eq!(particular, col(&[1, 0]));
        assert_eq!(nullspace, vec![vec![Q.from_i64(-1), Q.from_i64(1)]]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::from_i64(Q, &[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&col(&[1, 3])).unwrap(), Solution::NoSolution);
        assert!(m.solve(&col(&[1])).is_err());
    }

    #[test]
    fn prime_field_elimination() {
        let f5 = Field::Prime(5);
        // det = 1*4 - 2*2 = 0 mod 5 -> singular over F5, regular over Q
        let m = Matrix::from_i64(f5, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_i64(f5, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f5, 2));
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(Q, 3, vec![vec![Q.from_i64(1), Q.from_i64(1), Q.zero()]]);
        assert!(s.contains(&[Q.from_i64(2), Q.from_i64(2), Q.zero()]));
        assert!(!s.contains(&[Q.from_i64(1), Q.zero(), Q.zero()]));
        let t = Subspace::span(Q, 3, vec![vec![Q.from_i64(3), Q.from_i64(3), Q.zero()]]);
        assert_eq!(s, t);
        assert!(linearly_independent(Q, 2, &[vec![Q.one(), Q.zero()], vec![Q.one(), Q.one()]]));
        assert!(!linearly_independent(Q, 2, &[vec![Q.one(), Q.one()], vec![Q.from_i64(2), Q.from_i64(2)]]));
    }
}
