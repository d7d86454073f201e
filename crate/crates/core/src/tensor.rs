//! Tensors of algebras by standard components.
//!
//! A tensor over factors `A_1, …, A_m` stores `a^{i_1…i_m}` densely. The flat
//! index is the mixed-radix encoding of `(i_1, …, i_m)` with `i_1` most
//! significant, which is also the basis order of the tensor-product algebra
//! built by [`tensor_structural_constants`].

use std::fmt;

use thiserror::Error;

use crate::algebra::{ensure_same, same_algebra, AlgElem, Algebra, AlgebraDef, AlgebraError};
use crate::matrix::{Matrix, Solution};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("tensors have different factor lists")]
    FactorMismatch,
    #[error("factors are over different fields")]
    FieldMismatch,
    #[error("expected a tensor of order {expected}, found order {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("algebra {0} is not associative")]
    NotAssociative(String),
    #[error("algebra {0} has no declared unit")]
    NotUnital(String),
    #[error("expected {expected} components, found {found}")]
    Length { expected: usize, found: usize },
    #[error("a tensor needs at least one factor")]
    NoFactors,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone)]
pub struct Tensor {
    factors: Vec<Algebra>,
    comps: Vec<Scalar>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        same_factors(&self.factors, &other.factors) && self.comps == other.comps
    }
}

impl Eq for Tensor {}

fn same_factors(a: &[Algebra], b: &[Algebra]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| same_algebra(x, y))
}

fn common_field(factors: &[Algebra]) -> Result<Field, TensorError> {
    let first = factors.first().ok_or(TensorError::NoFactors)?;
    let field = first.field();
    if factors.iter().any(|a| a.field() != field) {
        return Err(TensorError::FieldMismatch);
    }
    Ok(field)
}

impl Tensor {
    pub fn zeros(factors: Vec<Algebra>) -> Result<Self, TensorError> {
        let field = common_field(&factors)?;
        let len = factors.iter().map(|a| a.dim()).product();
        Ok(Tensor {
            factors,
            comps: vec![field.zero(); len],
        })
    }

    pub fn from_components(factors: Vec<Algebra>, comps: Vec<Scalar>) -> Result<Self, TensorError> {
        let field = common_field(&factors)?;
        let len: usize = factors.iter().map(|a| a.dim()).product();
        if comps.len() != len {
            return Err(TensorError::Length {
                expected: len,
                found: comps.len(),
            });
        }
        if comps.iter().any(|c| c.field() != field) {
            return Err(TensorError::FieldMismatch);
        }
        Ok(Tensor { factors, comps })
    }

    /// `e_{i_1} ⊗ … ⊗ e_{i_m}`.
    pub fn basis(factors: Vec<Algebra>, indices: &[usize]) -> Result<Self, TensorError> {
        let mut t = Self::zeros(factors)?;
        let at = t.flat_index(indices);
        t.comps[at] = t.field().one();
        Ok(t)
    }

    /// Rank-one tensor `v_1 ⊗ … ⊗ v_m` with `a^{i_1…i_m} = v_1^{i_1}···v_m^{i_m}`.
    pub fn from_vectors(vectors: &[AlgElem]) -> Result<Self, TensorError> {
        let factors: Vec<Algebra> = vectors.iter().map(|v| v.algebra().clone()).collect();
        let field = common_field(&factors)?;
        let mut comps = vec![field.one()];
        for v in vectors {
            let mut next = Vec::with_capacity(comps.len() * v.coords().len());
            for c in &comps {
                for x in v.coords() {
                    next.push(c * x);
                }
            }
            comps = next;
        }
        Ok(Tensor { factors, comps })
    }

    /// `1 ⊗ … ⊗ 1` with `order` factors of a unital algebra.
    pub fn unit(alg: &Algebra, order: usize) -> Result<Self, TensorError> {
        let e = AlgElem::unit(alg).ok_or_else(|| TensorError::NotUnital(alg.name().to_string()))?;
        Self::from_vectors(&vec![e; order])
    }

    pub fn factors(&self) -> &[Algebra] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.len()
    }

    pub fn field(&self) -> Field {
        self.factors[0].field()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|a| a.dim()).collect()
    }

    pub fn components(&self) -> &[Scalar] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Scalar> {
        self.comps
    }

    pub fn flat_index(&self, indices: &[usize]) -> usize {
        assert_eq!(indices.len(), self.order(), "index arity");
        self.factors.iter().zip(indices).fold(0, |acc, (a, &i)| {
            assert!(i < a.dim(), "index out of range");
            acc * a.dim() + i
        })
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.order()];
        for (slot, a) in self.factors.iter().enumerate().rev() {
            out[slot] = flat % a.dim();
            flat /= a.dim();
        }
        out
    }

    pub fn get(&self, indices: &[usize]) -> &Scalar {
        &self.comps[self.flat_index(indices)]
    }

    pub fn set(&mut self, indices: &[usize], v: Scalar) {
        let at = self.flat_index(indices);
        self.comps[at] = v;
    }

    /// Nonzero components with their multi-indices, in flat order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.multi_index(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    fn check_factors(&self, other: &Tensor) -> Result<(), TensorError> {
        if same_factors(&self.factors, &other.factors) {
            Ok(())
        } else {
            Err(TensorError::FactorMismatch)
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_factors(other)?;
        Ok(Tensor {
            factors: self.factors.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_factors(other)?;
        Ok(Tensor {
            factors: self.factors.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        Tensor {
            factors: self.factors.clone(),
            comps: self.comps.iter().map(|a| a * s).collect(),
        }
    }

    /// The tensor as an element of the tensor-product algebra `product`,
    /// which must have been built from the same factors.
    pub fn flatten(&self, product: &Algebra) -> Result<AlgElem, TensorError> {
        if product.dim() != self.comps.len() {
            return Err(TensorError::Length {
                expected: product.dim(),
                found: self.comps.len(),
            });
        }
        Ok(AlgElem::new(product.clone(), self.comps.clone())?)
    }

    /// Slotwise product `(ab)^{j⃗} = C^{j⃗}_{k⃗ l⃗} a^{k⃗} b^{l⃗}` where the
    /// product constants factor as `C_1^{j_1}_{k_1 l_1} ··· C_m^{j_m}_{k_m l_m}`.
    pub fn mul(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_factors(other)?;
        let field = self.field();
        let mut out = vec![field.zero(); self.comps.len()];
        for (k, a) in self.nonzero() {
            for (l, b) in other.nonzero() {
                // expand the outer product of slotwise basis products
                let mut partial = vec![(0usize, a * b)];
                for (slot, alg) in self.factors.iter().enumerate() {
                    let prod = alg.basis_product(k[slot], l[slot]);
                    let mut next = Vec::new();
                    for (flat, coef) in &partial {
                        for (j, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            next.push((flat * alg.dim() + j, coef * c));
                        }
                    }
                    partial = next;
                }
                for (flat, v) in partial {
                    out[flat] = &out[flat] + &v;
                }
            }
        }
        Ok(Tensor {
            factors: self.factors.clone(),
            comps: out,
        })
    }

    fn as_order_two_over(&self) -> Result<&Algebra, TensorError> {
        if self.order() != 2 {
            return Err(TensorError::OrderMismatch {
                expected: 2,
                found: self.order(),
            });
        }
        ensure_same(&self.factors[0], &self.factors[1])?;
        Ok(&self.factors[0])
    }

    /// Twisted product on `A ⊗ A`: `(c ⊗ d) ∘ (a ⊗ b) = (ca) ⊗ (bd)`,
    /// extended bilinearly. `self` plays `c ⊗ d`.
    pub fn twisted_mul(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        let alg = self.as_order_two_over()?;
        other.as_order_two_over()?;
        self.check_factors(other)?;
        if !alg.is_associative() {
            return Err(TensorError::NotAssociative(alg.name().to_string()));
        }
        let n = alg.dim();
        let mut out = vec![alg.field().zero(); n * n];
        for (pq, c) in self.nonzero() {
            let (p, q) = (pq[0], pq[1]);
            for (rs, a) in other.nonzero() {
                let (r, s) = (rs[0], rs[1]);
                let coef = c * a;
                let left = alg.basis_product(p, r);
                let right = alg.basis_product(s, q);
                for (i, x) in left.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    let cx = &coef * x;
                    for (j, y) in right.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        out[i * n + j] = &out[i * n + j] + &(&cx * y);
                    }
                }
            }
        }
        Ok(Tensor {
            factors: self.factors.clone(),
            comps: out,
        })
    }

    /// Two-sided inverse under [`Tensor::twisted_mul`], found by solving the
    /// left-regular system `self ∘ b = 1 ⊗ 1`. `None` when `self` is singular
    /// or only one-sided invertible.
    pub fn twisted_inverse(&self) -> Result<Option<Tensor>, TensorError> {
        let alg = self.as_order_two_over()?.clone();
        if !alg.is_associative() {
            return Err(TensorError::NotAssociative(alg.name().to_string()));
        }
        let one = Tensor::unit(&alg, 2)?;
        let n = alg.dim();
        let factors = self.factors.clone();
        let mut columns = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let b = Tensor::basis(factors.clone(), &[p, q])?;
                columns.push(self.twisted_mul(&b)?.comps);
            }
        }
        let field = alg.field();
        let m = Matrix::from_fn(field, n * n, n * n, |r, c| columns[c][r].clone());
        let rhs = Matrix::column_vector(field, one.comps.clone());
        let Solution::Solved { particular, .. } = m.solve(&rhs).expect("square system") else {
            return Ok(None);
        };
        let inv = Tensor {
            factors,
            comps: particular.column(0),
        };
        if inv.twisted_mul(self)? != one {
            return Ok(None);
        }
        Ok(Some(inv))
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.nonzero() {
            let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}] {}", idx.join(", "), v)?;
        }
        Ok(())
    }
}

/// Structural constants of `A_1 ⊗ … ⊗ A_m`:
/// `C^{j⃗}_{k⃗ l⃗} = C_1^{j_1}_{k_1 l_1} ··· C_m^{j_m}_{k_m l_m}`, basis in
/// mixed-radix order. The product is unital when every factor is.
pub fn tensor_structural_constants(algs: &[Algebra]) -> Result<Algebra, TensorError> {
    let field = common_field(algs)?;
    if let [single] = algs {
        return Ok(single.clone());
    }
    let dims: Vec<usize> = algs.iter().map(|a| a.dim()).collect();
    let n: usize = dims.iter().product();
    let decode = |mut flat: usize| {
        let mut out = vec![0; dims.len()];
        for (slot, d) in dims.iter().enumerate().rev() {
            out[slot] = flat % d;
            flat /= d;
        }
        out
    };
    let mut constants = vec![field.zero(); n * n * n];
    for k in 0..n {
        let kk = decode(k);
        for l in 0..n {
            let ll = decode(l);
            let mut partial = vec![(0usize, field.one())];
            for (slot, alg) in algs.iter().enumerate() {
                let prod = alg.basis_product(kk[slot], ll[slot]);
                let mut next = Vec::new();
                for (flat, coef) in &partial {
                    for (j, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        next.push((flat * alg.dim() + j, coef * c));
                    }
                }
                partial = next;
            }
            for (j, v) in partial {
                constants[(k * n + l) * n + j] = v;
            }
        }
    }
    let unit = algs
        .iter()
        .map(|a| a.unit())
        .collect::<Option<Vec<usize>>>()
        .map(|us| us.iter().zip(&dims).fold(0, |acc, (u, d)| acc * d + u));
    let name = algs.iter().map(|a| a.name()).collect::<Vec<_>>().join("⊗");
    Ok(AlgebraDef::new(name, field, n, constants, unit)?)
}
