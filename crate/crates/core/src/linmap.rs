//! Linear maps between algebras and their representation by tensors.
//!
//! A map `f: A_1 → A_2` is stored by coordinates `f^i_j` so that
//! `f(x)^i = f^i_j x^j`. A tensor `t = t^{ij} e_i ⊗ e_j` over `A_2` acts on
//! `f` by `(t ∘ f)(x) = t^{ij} (e_i f(x)) e_j`. Products are always nested
//! to the left, which is immaterial when `A_2` is associative.

use std::fmt;

use thiserror::Error;

use crate::algebra::{ensure_same, same_algebra, AlgElem, Algebra, AlgebraError};
use crate::fixtures::field_algebra;
use crate::matrix::{Matrix, MatrixError, Solution, Subspace};
use crate::scalar::{Field, Scalar};
use crate::tensor::{Tensor, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("coordinate matrix is {found_rows}x{found_cols}, expected {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("generator set is empty")]
    NoGenerators,
    #[error("generators do not share source and target")]
    GeneratorMismatch,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("expected {expected} component tensors, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("generator index {index} out of range for {len} generators")]
    GeneratorIndex { index: usize, len: usize },
    #[error("algebra {0} has no declared unit")]
    NotUnital(String),
    #[error("map is not in the span generated by the given generators")]
    NoSolution,
}

/// Linear map `source → target`.
#[derive(Debug, Clone)]
pub struct LinMap {
    source: Algebra,
    target: Algebra,
    coords: Matrix,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.source, &other.source)
            && same_algebra(&self.target, &other.target)
            && self.coords == other.coords
    }
}

impl Eq for LinMap {}

impl LinMap {
    pub fn new(source: Algebra, target: Algebra, coords: Matrix) -> Result<Self, RepError> {
        if source.field() != target.field() {
            return Err(AlgebraError::FieldMismatch {
                expected: source.field(),
                found: target.field(),
            }
            .into());
        }
        if coords.field() != source.field() {
            return Err(MatrixError::FieldMismatch(source.field(), coords.field()).into());
        }
        if coords.rows() != target.dim() || coords.cols() != source.dim() {
            return Err(RepError::Shape {
                rows: target.dim(),
                cols: source.dim(),
                found_rows: coords.rows(),
                found_cols: coords.cols(),
            });
        }
        Ok(LinMap {
            source,
            target,
            coords,
        })
    }

    pub fn zero(source: &Algebra, target: &Algebra) -> Self {
        LinMap {
            coords: Matrix::zeros(source.field(), target.dim(), source.dim()),
            source: source.clone(),
            target: target.clone(),
        }
    }

    /// The identity map `δ`.
    pub fn identity(alg: &Algebra) -> Self {
        LinMap {
            coords: Matrix::identity(alg.field(), alg.dim()),
            source: alg.clone(),
            target: alg.clone(),
        }
    }

    /// `E^k_l`, sending `e_l` to `e_k` and every other basis vector to 0.
    pub fn elementary(source: &Algebra, target: &Algebra, k: usize, l: usize) -> Self {
        let mut f = Self::zero(source, target);
        f.coords.set(k, l, source.field().one());
        f
    }

    /// Map whose column `j` is `f(e_j)`.
    pub fn from_fn(
        source: &Algebra,
        target: &Algebra,
        f: impl Fn(&AlgElem) -> AlgElem,
    ) -> Result<Self, RepError> {
        let images: Vec<AlgElem> = (0..source.dim())
            .map(|j| f(&AlgElem::basis(source, j)))
            .collect();
        for y in &images {
            ensure_same(target, y.algebra())?;
        }
        let coords = Matrix::from_fn(source.field(), target.dim(), source.dim(), |i, j| {
            images[j].coords()[i].clone()
        });
        Ok(LinMap {
            source: source.clone(),
            target: target.clone(),
            coords,
        })
    }

    /// Inverse of [`LinMap::as_vector`].
    pub fn from_vector(source: &Algebra, target: &Algebra, v: &[Scalar]) -> Result<Self, RepError> {
        let (rows, cols) = (target.dim(), source.dim());
        if v.len() != rows * cols {
            return Err(RepError::Shape {
                rows,
                cols,
                found_rows: v.len(),
                found_cols: 1,
            });
        }
        let coords = Matrix::from_fn(source.field(), rows, cols, |k, l| v[k * cols + l].clone());
        Self::new(source.clone(), target.clone(), coords)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn coords(&self) -> &Matrix {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        same_algebra(&self.source, &self.target)
            && self.coords == Matrix::identity(self.field(), self.source.dim())
    }

    /// Coordinates `f^k_l` flattened row-major, index `k * source.dim() + l`.
    pub fn as_vector(&self) -> Vec<Scalar> {
        self.coords.entries().to_vec()
    }

    pub fn eval(&self, x: &AlgElem) -> Result<AlgElem, RepError> {
        ensure_same(&self.source, x.algebra())?;
        Ok(AlgElem::new(self.target.clone(), self.coords.mul_vec(x.coords()))?)
    }

    fn check_same_shape(&self, other: &LinMap) -> Result<(), RepError> {
        ensure_same(&self.source, &other.source)?;
        ensure_same(&self.target, &other.target)?;
        Ok(())
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap, RepError> {
        self.check_same_shape(other)?;
        Ok(LinMap {
            coords: self.coords.add(&other.coords)?,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap, RepError> {
        self.check_same_shape(other)?;
        Ok(LinMap {
            coords: self.coords.sub(&other.coords)?,
            ..self.clone()
        })
    }

    pub fn scale(&self, d: &Scalar) -> LinMap {
        LinMap {
            coords: self.coords.scale(d),
            ..self.clone()
        }
    }

    /// `self ∘ f`, i.e. `x ↦ self(f(x))`.
    pub fn compose(&self, f: &LinMap) -> Result<LinMap, RepError> {
        ensure_same(&self.source, &f.target)?;
        Ok(LinMap {
            source: f.source.clone(),
            target: self.target.clone(),
            coords: self.coords.mul(&f.coords)?,
        })
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords)
    }
}

/// Coordinate functionals `h^i(x) = x^i` into the field as a 1-dimensional algebra.
pub fn dual_basis(alg: &Algebra) -> Vec<LinMap> {
    let d = field_algebra(alg.field());
    (0..alg.dim())
        .map(|i| LinMap::elementary(alg, &d, 0, i))
        .collect()
}

fn check_order_two_over(t: &Tensor, alg: &Algebra) -> Result<(), RepError> {
    if t.order() != 2 {
        return Err(TensorError::OrderMismatch {
            expected: 2,
            found: t.order(),
        }
        .into());
    }
    ensure_same(alg, &t.factors()[0])?;
    ensure_same(alg, &t.factors()[1])?;
    Ok(())
}

/// `(t ∘ f)(x) = t^{ij} (e_i f(x)) e_j`, evaluated by multiplying elements.
pub fn sandwich_apply(t: &Tensor, f: &LinMap) -> Result<LinMap, RepError> {
    let alg = &f.target;
    check_order_two_over(t, alg)?;
    let terms: Vec<(AlgElem, AlgElem, Scalar)> = t
        .nonzero()
        .map(|(ij, c)| (AlgElem::basis(alg, ij[0]), AlgElem::basis(alg, ij[1]), c.clone()))
        .collect();
    LinMap::from_fn(&f.source, alg, |x| {
        let y = f.eval(x).expect("basis vector of source");
        terms.iter().fold(AlgElem::zero(alg), |acc, (ei, ej, c)| {
            let term = ei.mul(&y).and_then(|p| p.mul(ej)).expect("same algebra");
            acc.add(&term.scale(c)).expect("same algebra")
        })
    })
}

/// Matrix sending components `t^{ij}` (column `i * n + j`) of a tensor over
/// the target to the coordinates `g^k_l` (row `k * source.dim() + l`) of
/// `t ∘ generator`. Entry `(k,l),(i,j)` is `I^m_l C_{im}^p C_{pj}^k`.
pub fn build_b_matrix(alg: &Algebra, generator: &LinMap) -> Result<Matrix, RepError> {
    ensure_same(alg, &generator.target)?;
    let n = alg.dim();
    let n1 = generator.source.dim();
    let field = alg.field();
    let mut b = Matrix::zeros(field, n * n1, n * n);
    for l in 0..n1 {
        let col_l = generator.coords.column(l);
        for i in 0..n {
            // u^p = I^m_l C_{im}^p
            let mut u = vec![field.zero(); n];
            for (m, im) in col_l.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (p, c) in alg.basis_product(i, m).iter().enumerate() {
                    if !c.is_zero() {
                        u[p] = &u[p] + &(im * c);
                    }
                }
            }
            for j in 0..n {
                for (p, up) in u.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (k, c) in alg.basis_product(p, j).iter().enumerate() {
                        if !c.is_zero() {
                            let (r, s) = (k * n1 + l, i * n + j);
                            let v = b.get(r, s) + &(up * c);
                            b.set(r, s, v);
                        }
                    }
                }
            }
        }
    }
    Ok(b)
}

/// How products in the sandwich are grouped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Association {
    Associative,
    /// `(a f(x)) b`.
    LeftNested,
}

/// Ordered maps `I_0, …, I_{m-1}` sharing source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<LinMap>,
    association: Association,
}

impl GeneratorSet {
    /// Validates shared source/target and linear independence.
    pub fn new(generators: Vec<LinMap>) -> Result<Self, RepError> {
        let set = Self::unchecked_independence(generators)?;
        let first = &set.generators[0];
        let ambient = first.target.dim() * first.source.dim();
        let vectors: Vec<Vec<Scalar>> = set.generators.iter().map(LinMap::as_vector).collect();
        if !crate::matrix::linearly_independent(first.field(), ambient, &vectors) {
            return Err(RepError::DependentGenerators);
        }
        Ok(set)
    }

    /// Composite generator lists may be dependent; only shapes are checked.
    fn unchecked_independence(generators: Vec<LinMap>) -> Result<Self, RepError> {
        let first = generators.first().ok_or(RepError::NoGenerators)?;
        if generators.iter().any(|g| {
            !same_algebra(&g.source, &first.source) || !same_algebra(&g.target, &first.target)
        }) {
            return Err(RepError::GeneratorMismatch);
        }
        let association = if first.target.is_associative() {
            Association::Associative
        } else {
            Association::LeftNested
        };
        Ok(GeneratorSet {
            generators,
            association,
        })
    }

    /// `{δ}`.
    pub fn identity(alg: &Algebra) -> Self {
        Self::unchecked_independence(vec![LinMap::identity(alg)]).expect("single generator")
    }

    pub fn generators(&self) -> &[LinMap] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn association(&self) -> Association {
        self.association
    }

    pub fn source(&self) -> &Algebra {
        &self.generators[0].source
    }

    pub fn target(&self) -> &Algebra {
        &self.generators[0].target
    }
}

/// `f = Σ_k f^{k·ij} (e_i I_k e_j)`: one order-2 tensor over the target per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapExpansion {
    generators: GeneratorSet,
    components: Vec<Tensor>,
}

impl MapExpansion {
    pub fn new(generators: GeneratorSet, components: Vec<Tensor>) -> Result<Self, RepError> {
        if components.len() != generators.len() {
            return Err(RepError::ComponentCount {
                expected: generators.len(),
                found: components.len(),
            });
        }
        for t in &components {
            check_order_two_over(t, generators.target())?;
        }
        Ok(MapExpansion {
            generators,
            components,
        })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn components(&self) -> &[Tensor] {
        &self.components
    }
}

/// `f^k_l = Σ_K B_K · f^{K·ij}`.
pub fn coords_from_components(exp: &MapExpansion) -> Result<LinMap, RepError> {
    let gens = &exp.generators;
    let field = gens.target().field();
    let rows = gens.target().dim() * gens.source().dim();
    let mut acc = vec![field.zero(); rows];
    for (g, t) in gens.generators.iter().zip(&exp.components) {
        let b = build_b_matrix(gens.target(), g)?;
        for (a, v) in acc.iter_mut().zip(b.mul_vec(t.components())) {
            *a = &*a + &v;
        }
    }
    LinMap::from_vector(gens.source(), gens.target(), &acc)
}

/// Standard components with free variables set to zero, and the dimension
/// of the space of all solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub expansion: MapExpansion,
    pub nullity: usize,
}

/// Solves `[B_0 | B_1 | …] t = vec(f)` for the standard components of `f`.
/// [`RepError::NoSolution`] when `f` lies outside the generated space.
pub fn components_from_coords(f: &LinMap, gens: &GeneratorSet) -> Result<Decomposition, RepError> {
    ensure_same(&f.source, gens.source())?;
    ensure_same(&f.target, gens.target())?;
    let alg = gens.target();
    let blocks = gens
        .generators
        .iter()
        .map(|g| build_b_matrix(alg, g))
        .collect::<Result<Vec<_>, _>>()?;
    let stacked = Matrix::hstack(&blocks.iter().collect::<Vec<_>>())?;
    let rhs = Matrix::column_vector(f.field(), f.as_vector());
    match stacked.solve(&rhs)? {
        Solution::NoSolution => Err(RepError::NoSolution),
        Solution::Solved {
            particular,
            nullspace,
        } => {
            let x = particular.column(0);
            let nn = alg.dim() * alg.dim();
            let components = x
                .chunks(nn)
                .map(|c| Tensor::from_components(vec![alg.clone(), alg.clone()], c.to_vec()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Decomposition {
                expansion: MapExpansion::new(gens.clone(), components)?,
                nullity: nullspace.len(),
            })
        }
    }
}

/// Span of `{(e_i ⊗ e_j) ∘ f}` in the row-major coordinate space.
pub fn orbit_subspace(f: &LinMap) -> Result<Subspace, RepError> {
    let b = build_b_matrix(&f.target, f)?;
    let cols = (0..b.cols()).map(|c| b.column(c));
    Ok(Subspace::span(f.field(), b.rows(), cols))
}

/// Basis of the orbit of `f`, as maps, from the reduced row-echelon basis.
pub fn orbit_span(f: &LinMap) -> Result<Vec<LinMap>, RepError> {
    orbit_subspace(f)?
        .basis()
        .iter()
        .map(|v| LinMap::from_vector(&f.source, &f.target, v))
        .collect()
}

pub fn orbit_equal(f: &LinMap, g: &LinMap) -> Result<bool, RepError> {
    f.check_same_shape(g)?;
    Ok(orbit_subspace(f)? == orbit_subspace(g)?)
}

/// Result of [`generator_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorBasis {
    pub set: GeneratorSet,
    pub orbit_dims: Vec<usize>,
    pub union_dim: usize,
    /// Whether the orbit dimensions add up to the union dimension.
    pub direct_sum: bool,
}

/// Starts from `δ` and appends the first elementary map `E^k_l` (row-major)
/// outside the current union of orbits until the union is everything.
pub fn generator_basis(alg: &Algebra) -> Result<GeneratorBasis, RepError> {
    if alg.unit().is_none() {
        return Err(RepError::NotUnital(alg.name().to_string()));
    }
    let n = alg.dim();
    let delta = LinMap::identity(alg);
    let first = orbit_subspace(&delta)?;
    let mut orbit_dims = vec![first.dim()];
    let mut union = first;
    let mut gens = vec![delta];
    'extend: while !union.is_full() {
        for k in 0..n {
            for l in 0..n {
                let e = LinMap::elementary(alg, alg, k, l);
                if !union.contains(&e.as_vector()) {
                    let orbit = orbit_subspace(&e)?;
                    orbit_dims.push(orbit.dim());
                    union = union.sum(&orbit);
                    gens.push(e);
                    continue 'extend;
                }
            }
        }
        unreachable!("elementary maps span the whole space");
    }
    let union_dim = union.dim();
    Ok(GeneratorBasis {
        direct_sum: orbit_dims.iter().sum::<usize>() == union_dim,
        set: GeneratorSet::new(gens)?,
        orbit_dims,
        union_dim,
    })
}

/// Tensors `b^l` over the target with `I_k(a ∘ x) = Σ_l (b^l ∘ I_l)(x)`,
/// where `a` is a tensor over the source.
pub fn conjugation_transform(
    gens: &GeneratorSet,
    k: usize,
    a: &Tensor,
) -> Result<Vec<Tensor>, RepError> {
    let ik = gens.generators.get(k).ok_or(RepError::GeneratorIndex {
        index: k,
        len: gens.len(),
    })?;
    let source = gens.source();
    check_order_two_over(a, source)?;
    let target = gens.target();
    let zero = Tensor::zeros(vec![target.clone(), target.clone()])?;
    if ik.is_identity() {
        let mut out = vec![zero; gens.len()];
        out[k] = a.clone();
        return Ok(out);
    }
    let composite = ik.compose(&sandwich_apply(a, &LinMap::identity(source))?)?;
    Ok(components_from_coords(&composite, gens)?.expansion.components)
}

/// Expansion of `g ∘ f` over `K_{mk} = J_m ∘ I_k` (index `m * |I| + k`):
/// `h^{mk} = Σ_l g^l ∘ b^{l,k}_m` where `b^{l,k}` conjugates `f^k` through `J_l`.
pub fn compose_expansions(g: &MapExpansion, f: &MapExpansion) -> Result<MapExpansion, RepError> {
    let (jset, iset) = (&g.generators, &f.generators);
    ensure_same(jset.source(), iset.target())?;
    let target = jset.target();
    let zero = Tensor::zeros(vec![target.clone(), target.clone()])?;
    let mut h = vec![zero; jset.len() * iset.len()];
    for (k, fk) in f.components.iter().enumerate() {
        for (l, gl) in g.components.iter().enumerate() {
            if gl.is_zero() {
                continue;
            }
            for (m, b) in conjugation_transform(jset, l, fk)?.iter().enumerate() {
                let at = m * iset.len() + k;
                h[at] = h[at].add(&gl.twisted_mul(b)?)?;
            }
        }
    }
    let mut composed = Vec::with_capacity(h.len());
    for jm in &jset.generators {
        for ik in &iset.generators {
            composed.push(jm.compose(ik)?);
        }
    }
    MapExpansion::new(GeneratorSet::unchecked_independence(composed)?, h)
}

/// Checks `g^k_l = f^m_l t^{ij} C_{im}^p C_{pj}^k` entry by entry.
pub fn nonassoc_std_relation_check(
    alg: &Algebra,
    g: &LinMap,
    t: &Tensor,
    f: &LinMap,
) -> Result<bool, RepError> {
    ensure_same(alg, &g.target)?;
    ensure_same(&f.source, &g.source)?;
    check_order_two_over(t, alg)?;
    let b = build_b_matrix(alg, f)?;
    Ok(b.mul_vec(t.components()) == g.as_vector())
}
