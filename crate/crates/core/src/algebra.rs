//! Free finite-dimensional algebras given by structural constants.
//!
//! Basis products are `e_i e_j = C_ij^k e_k`. Constants are stored densely,
//! indexed `(i * n + j) * n + k`, so the coordinates of `e_i e_j` form one
//! contiguous slice.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::matrix::{Matrix, Subspace};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras ({0} vs {1})")]
    AlgebraMismatch(String, String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate structural constant ({0}, {1}, {2})")]
    Duplicate(usize, usize, usize),
    #[error("declared unit e_{unit} fails: e_{left} e_{right} has coordinate {value} at e_{component}")]
    Unit {
        unit: usize,
        left: usize,
        right: usize,
        component: usize,
        value: Scalar,
    },
    #[error("dimension must be at least 1")]
    EmptyAlgebra,
}

/// Structural constants plus metadata. Shared through [`Algebra`].
pub struct AlgebraDef {
    name: String,
    dim: usize,
    field: Field,
    constants: Vec<Scalar>,
    unit: Option<usize>,
    associative: OnceLock<bool>,
    commutative: OnceLock<bool>,
}

pub type Algebra = Arc<AlgebraDef>;

impl PartialEq for AlgebraDef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dim == other.dim
            && self.field == other.field
            && self.unit == other.unit
            && self.constants == other.constants
    }
}

impl Eq for AlgebraDef {}

impl fmt::Debug for AlgebraDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraDef")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("field", &self.field)
            .field("unit", &self.unit)
            .finish_non_exhaustive()
    }
}

/// True when both handles denote the same algebra.
pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &Algebra, b: &Algebra) -> Result<(), AlgebraError> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(AlgebraError::AlgebraMismatch(a.name.clone(), b.name.clone()))
    }
}

impl AlgebraDef {
    /// Builds an algebra from a dense `n³` constant array. A declared unit
    /// is validated, never inferred.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        constants: Vec<Scalar>,
        unit: Option<usize>,
    ) -> Result<Algebra, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::EmptyAlgebra);
        }
        if constants.len() != dim * dim * dim {
            return Err(AlgebraError::Length {
                expected: dim * dim * dim,
                found: constants.len(),
            });
        }
        if let Some(bad) = constants.iter().find(|c| c.field() != field) {
            return Err(AlgebraError::FieldMismatch {
                expected: field,
                found: bad.field(),
            });
        }
        let alg = AlgebraDef {
            name: name.into(),
            dim,
            field,
            constants,
            unit,
            associative: OnceLock::new(),
            commutative: OnceLock::new(),
        };
        if let Some(u) = unit {
            alg.validate_unit(u)?;
        }
        Ok(Arc::new(alg))
    }

    /// Builds an algebra from sparse `(i, j, k, C_ij^k)` entries; omitted
    /// entries are zero and repeated keys are rejected.
    pub fn from_entries(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Option<usize>,
    ) -> Result<Algebra, AlgebraError> {
        let mut constants = vec![field.zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim * dim];
        for (i, j, k, v) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index, dim });
                }
            }
            let at = (i * dim + j) * dim + k;
            if seen[at] {
                return Err(AlgebraError::Duplicate(i, j, k));
            }
            seen[at] = true;
            constants[at] = v;
        }
        Self::new(name, field, dim, constants, unit)
    }

    fn validate_unit(&self, u: usize) -> Result<(), AlgebraError> {
        let n = self.dim;
        if u >= n {
            return Err(AlgebraError::IndexOutOfRange { index: u, dim: n });
        }
        for j in 0..n {
            for k in 0..n {
                for (left, right) in [(u, j), (j, u)] {
                    let value = self.c(left, right, k);
                    let expected = j == k;
                    if value.is_one() != expected || (!expected && !value.is_zero()) {
                        return Err(AlgebraError::Unit {
                            unit: u,
                            left,
                            right,
                            component: k,
                            value: value.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    /// `C_ij^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    /// `C_ij^p = C_ji^p` for all indices.
    pub fn is_commutative(&self) -> bool {
        *self.commutative.get_or_init(|| {
            let n = self.dim;
            (0..n).all(|i| (i + 1..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
        })
    }

    /// `C_ij^p C_pk^q = C_ip^q C_jk^p` (summed over `p`) for all `i, j, k, q`.
    pub fn is_associative(&self) -> bool {
        *self.associative.get_or_init(|| {
            let n = self.dim;
            let zero = self.field.zero();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for q in 0..n {
                            let mut lhs = zero.clone();
                            let mut rhs = zero.clone();
                            for p in 0..n {
                                let a = self.c(i, j, p);
                                if !a.is_zero() {
                                    lhs = lhs + a * self.c(p, k, q);
                                }
                                let b = self.c(j, k, p);
                                if !b.is_zero() {
                                    rhs = rhs + self.c(i, p, q) * b;
                                }
                            }
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        })
    }

    /// Searches for a two-sided unit by solving `e·e_j = e_j = e_j·e` for
    /// all `j`. Diagnostic only: the declared unit is what the rest of the
    /// crate relies on.
    pub fn find_unit(self: &Algebra) -> Option<AlgElem> {
        let n = self.dim;
        let f = self.field;
        // unknown e = Σ x^i e_i; rows (side, j, k), columns i
        let rows = 2 * n * n;
        let m = Matrix::from_fn(f, rows, n, |r, i| {
            let (side, rest) = (r / (n * n), r % (n * n));
            let (j, k) = (rest / n, rest % n);
            if side == 0 {
                self.c(i, j, k).clone()
            } else {
                self.c(j, i, k).clone()
            }
        });
        let rhs = Matrix::from_fn(f, rows, 1, |r, _| {
            let rest = r % (n * n);
            f.from_i64(i64::from(rest / n == rest % n))
        });
        match m.solve(&rhs).ok()? {
            crate::matrix::Solution::Solved { particular, .. } => {
                Some(AlgElem::new(self.clone(), particular.column(0)).expect("shape"))
            }
            crate::matrix::Solution::NoSolution => None,
        }
    }

    /// Coordinate matrix of the linear map `x ↦ f(x)` on this algebra:
    /// column `l` holds the coordinates of `f(e_l)`.
    pub fn matrix_of(self: &Algebra, f: impl Fn(&AlgElem) -> AlgElem) -> Matrix {
        let n = self.dim;
        let columns: Vec<Vec<Scalar>> = (0..n)
            .map(|l| f(&AlgElem::basis(self, l)).coords)
            .collect();
        let rows = columns.first().map_or(0, Vec::len);
        Matrix::from_fn(self.field, rows, n, |r, c| columns[c][r].clone())
    }
}

/// An element `a = a^i e_i`.
#[derive(Debug, Clone)]
pub struct AlgElem {
    alg: Algebra,
    coords: Vec<Scalar>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.coords == other.coords
    }
}

impl Eq for AlgElem {}

impl AlgElem {
    pub fn new(alg: Algebra, coords: Vec<Scalar>) -> Result<Self, AlgebraError> {
        if coords.len() != alg.dim {
            return Err(AlgebraError::Length {
                expected: alg.dim,
                found: coords.len(),
            });
        }
        if let Some(bad) = coords.iter().find(|c| c.field() != alg.field) {
            return Err(AlgebraError::FieldMismatch {
                expected: alg.field,
                found: bad.field(),
            });
        }
        Ok(AlgElem { alg, coords })
    }

    pub fn from_i64(alg: &Algebra, coords: &[i64]) -> Result<Self, AlgebraError> {
        let f = alg.field;
        Self::new(alg.clone(), coords.iter().map(|&v| f.from_i64(v)).collect())
    }

    pub fn zero(alg: &Algebra) -> Self {
        AlgElem {
            coords: vec![alg.field.zero(); alg.dim],
            alg: alg.clone(),
        }
    }

    pub fn basis(alg: &Algebra, i: usize) -> Self {
        let mut e = Self::zero(alg);
        e.coords[i] = alg.field.one();
        e
    }

    /// The declared unit, if any.
    pub fn unit(alg: &Algebra) -> Option<Self> {
        alg.unit.map(|u| Self::basis(alg, u))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &AlgElem) -> Result<AlgElem, AlgebraError> {
        ensure_same(&self.alg, &other.alg)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &AlgElem) -> Result<AlgElem, AlgebraError> {
        ensure_same(&self.alg, &other.alg)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &AlgElem, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> AlgElem {
        AlgElem {
            alg: self.alg.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AlgElem {
        AlgElem {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// `(ab)^k = C_ij^k a^i b^j`.
    pub fn mul(&self, other: &AlgElem) -> Result<AlgElem, AlgebraError> {
        ensure_same(&self.alg, &other.alg)?;
        let alg = &self.alg;
        let mut out = vec![alg.field.zero(); alg.dim];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(alg.basis_product(i, j)) {
                    if !c.is_zero() {
                        *o = &*o + &(&ab * c);
                    }
                }
            }
        }
        Ok(AlgElem {
            alg: alg.clone(),
            coords: out,
        })
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &AlgElem) -> Result<AlgElem, AlgebraError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Matrix of `x ↦ a x`: `L(a)^k_j = C_ij^k a^i`.
    pub fn left_shift_matrix(&self) -> Matrix {
        let alg = &self.alg;
        let n = alg.dim;
        Matrix::from_fn(alg.field, n, n, |k, j| {
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .fold(alg.field.zero(), |acc, (i, a)| acc + a * alg.c(i, j, k))
        })
    }

    /// Matrix of `x ↦ x a`: `R(a)^k_i = C_ij^k a^j`.
    pub fn right_shift_matrix(&self) -> Matrix {
        let alg = &self.alg;
        let n = alg.dim;
        Matrix::from_fn(alg.field, n, n, |k, i| {
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .fold(alg.field.zero(), |acc, (j, a)| acc + a * alg.c(i, j, k))
        })
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `(a, b, c) = (ab)c − a(bc)`.
pub fn associator(a: &AlgElem, b: &AlgElem, c: &AlgElem) -> Result<AlgElem, AlgebraError> {
    a.mul(b)?.mul(c)?.sub(&a.mul(&b.mul(c)?)?)
}

/// `a(b,c,d) + (a,b,c)d − (ab,c,d) + (a,bc,d) − (a,b,cd)`, which vanishes in
/// every algebra.
pub fn teichmuller_residual(
    a: &AlgElem,
    b: &AlgElem,
    c: &AlgElem,
    d: &AlgElem,
) -> Result<AlgElem, AlgebraError> {
    let t1 = a.mul(&associator(b, c, d)?)?;
    let t2 = associator(a, b, c)?.mul(d)?;
    let t3 = associator(&a.mul(b)?, c, d)?;
    let t4 = associator(a, &b.mul(c)?, d)?;
    let t5 = associator(a, b, &c.mul(d)?)?;
    t1.add(&t2)?.sub(&t3)?.add(&t4)?.sub(&t5)
}

/// Associativity checked through basis associators, independently of
/// [`AlgebraDef::is_associative`].
pub fn associator_vanishes_on_basis(alg: &Algebra) -> bool {
    let n = alg.dim();
    let basis: Vec<AlgElem> = (0..n).map(|i| AlgElem::basis(alg, i)).collect();
    basis.iter().all(|x| {
        basis.iter().all(|y| {
            basis
                .iter()
                .all(|z| associator(x, y, z).expect("same algebra").is_zero())
        })
    })
}

fn subspace_elements(alg: &Algebra, space: &Subspace) -> Vec<AlgElem> {
    space
        .basis()
        .iter()
        .map(|v| AlgElem::new(alg.clone(), v.clone()).expect("shape"))
        .collect()
}

fn nucleus_constraints(alg: &Algebra) -> Vec<Vec<Scalar>> {
    let n = alg.dim();
    let basis: Vec<AlgElem> = (0..n).map(|i| AlgElem::basis(alg, i)).collect();
    let mut assoc = Vec::with_capacity(n * n * n);
    for x in &basis {
        for y in &basis {
            for z in &basis {
                assoc.push(associator(x, y, z).expect("same algebra").into_coords());
            }
        }
    }
    let at = |i: usize, j: usize, k: usize| &assoc[(i * n + j) * n + k];
    // rows: (slot, j, k, q); column i is the coefficient of a^i
    let mut rows = Vec::with_capacity(3 * n * n * n);
    for slot in 0..3 {
        for j in 0..n {
            for k in 0..n {
                for q in 0..n {
                    rows.push(
                        (0..n)
                            .map(|i| {
                                let v = match slot {
                                    0 => at(i, j, k),
                                    1 => at(j, i, k),
                                    _ => at(j, k, i),
                                };
                                v[q].clone()
                            })
                            .collect(),
                    );
                }
            }
        }
    }
    rows
}

fn commutation_constraints(alg: &Algebra) -> Vec<Vec<Scalar>> {
    let n = alg.dim();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for q in 0..n {
            rows.push(
                (0..n)
                    .map(|i| alg.c(i, j, q) - alg.c(j, i, q))
                    .collect(),
            );
        }
    }
    rows
}

fn solution_space(alg: &Algebra, rows: Vec<Vec<Scalar>>) -> Subspace {
    let m = Matrix::from_rows(alg.field(), rows).expect("uniform constraint rows");
    Subspace::span(alg.field(), alg.dim(), m.nullspace())
}

/// Canonical basis of the nucleus `N(A)`: elements whose associator with any
/// two basis vectors vanishes in every slot.
pub fn nucleus_basis(alg: &Algebra) -> Vec<AlgElem> {
    subspace_elements(alg, &nucleus_space(alg))
}

pub fn nucleus_space(alg: &Algebra) -> Subspace {
    solution_space(alg, nucleus_constraints(alg))
}

/// Canonical basis of the center `Z(A)`: nucleus elements commuting with
/// every basis vector.
pub fn center_basis(alg: &Algebra) -> Vec<AlgElem> {
    subspace_elements(alg, &center_space(alg))
}

pub fn center_space(alg: &Algebra) -> Subspace {
    let mut rows = nucleus_constraints(alg);
    rows.extend(commutation_constraints(alg));
    solution_space(alg, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const Q: Field = Field::Rational;

    #[test]
    fn quaternion_products() {
        let h = fixtures::quaternions(Q);
        let [one, i, j, k] = fixtures::quaternion_units(&h);
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&k).unwrap(), i);
        assert_eq!(k.mul(&i).unwrap(), j);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        assert_eq!(i.mul(&i).unwrap(), one.neg());
        assert_eq!(i.commutator(&j).unwrap(), k.scale(&Q.from_i64(2)));
        assert!(h.is_associative());
        assert!(!h.is_commutative());
    }

    #[test]
    fn unit_acts_trivially() {
        let h = fixtures::quaternions(Q);
        let a = AlgElem::from_i64(&h, &[3, -1, 4, 1]).unwrap();
        let e = AlgElem::unit(&h).unwrap();
        assert_eq!(e.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&e).unwrap(), a);
        assert_eq!(e.left_shift_matrix(), Matrix::identity(Q, 4));
    }

    #[test]
    fn n2_fixture() {
        let n2 = fixtures::n2(Q);
        let x = AlgElem::basis(&n2, 0);
        let y = AlgElem::basis(&n2, 1);
        assert_eq!(x.mul(&y).unwrap(), x);
        assert!(y.mul(&x).unwrap().is_zero());
        assert_eq!(associator(&x, &y, &y).unwrap(), x);
        assert!(!n2.is_commutative());
        assert!(!n2.is_associative());
        assert!(!associator_vanishes_on_basis(&n2));
        assert!(n2.find_unit().is_none());
    }

    #[test]
    fn commutator_and_associator_degenerate_cases() {
        let h = fixtures::quaternions(Q);
        let a = AlgElem::from_i64(&h, &[1, 2, 3, 4]).unwrap();
        let b = AlgElem::from_i64(&h, &[0, 1, -1, 2]).unwrap();
        assert!(a.commutator(&a).unwrap().is_zero());
        let zero = AlgElem::zero(&h);
        assert!(associator(&zero, &a, &b).unwrap().is_zero());
        let n2 = fixtures::n2(Q);
        let x = AlgElem::from_i64(&n2, &[1, 2]).unwrap();
        let z = AlgElem::zero(&n2);
        assert!(associator(&x, &z, &x).unwrap().is_zero());
        assert!(associator(&x, &x, &z).unwrap().is_zero());
    }

    #[test]
    fn complex_is_commutative_associative() {
        let c = fixtures::complex(Q);
        assert!(c.is_commutative());
        assert!(c.is_associative());
        let a = AlgElem::from_i64(&c, &[2, -3]).unwrap();
        let b = AlgElem::from_i64(&c, &[5, 7]).unwrap();
        assert!(a.commutator(&b).unwrap().is_zero());
    }

    #[test]
    fn quaternion_left_shift_of_i() {
        let h = fixtures::quaternions(Q);
        let [_, i, _, _] = fixtures::quaternion_units(&h);
        // 1 -> i, i -> -1, j -> k, k -> -j
        let expected = Matrix::from_i64(
            Q,
            &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]],
        );
        assert_eq!(i.left_shift_matrix(), expected);
    }

    #[test]
    fn nucleus_and_center() {
        let h = fixtures::quaternions(Q);
        assert_eq!(nucleus_basis(&h).len(), 4);
        let z = center_basis(&h);
        assert_eq!(z, vec![AlgElem::basis(&h, 0)]);
        let c = fixtures::complex(Q);
        assert_eq!(center_basis(&c).len(), 2);
        let line = fixtures::idempotent_line(Q);
        assert_eq!(nucleus_basis(&line), vec![AlgElem::basis(&line, 0)]);
        let o = fixtures::octonions(Q);
        assert_eq!(nucleus_basis(&o), vec![AlgElem::basis(&o, 0)]);
        assert_eq!(center_basis(&o), vec![AlgElem::basis(&o, 0)]);
    }

    #[test]
    fn n2_nucleus_is_nullity_of_constraints() {
        let n2 = fixtures::n2(Q);
        let rows = nucleus_constraints(&n2);
        assert_eq!(rows.len(), 3 * 8);
        let m = Matrix::from_rows(Q, rows).unwrap();
        let nullity = 2 - m.rank();
        assert_eq!(nucleus_basis(&n2).len(), nullity);
        // only nonzero basis associator is (x, y, y) = x; it kills both coordinates
        assert_eq!(nullity, 0);
        assert!(center_space(&n2).is_subspace_of(&nucleus_space(&n2)));
    }

    #[test]
    fn unit_validation() {
        let q = Q;
        let bad = AlgebraDef::from_entries(
            "bad",
            q,
            2,
            vec![(0, 0, 0, q.one()), (0, 1, 1, q.from_i64(2)), (1, 0, 1, q.one())],
            Some(0),
        );
        assert!(matches!(bad, Err(AlgebraError::Unit { .. })));
        let dup = AlgebraDef::from_entries(
            "dup",
            q,
            1,
            vec![(0, 0, 0, q.one()), (0, 0, 0, q.one())],
            None,
        );
        assert_eq!(dup.unwrap_err(), AlgebraError::Duplicate(0, 0, 0));
    }

    #[test]
    fn mismatch_is_reported() {
        let h = fixtures::quaternions(Q);
        let c = fixtures::complex(Q);
        let a = AlgElem::basis(&h, 1);
        let b = AlgElem::basis(&c, 1);
        assert!(matches!(a.mul(&b), Err(AlgebraError::AlgebraMismatch(..))));
    }
}
