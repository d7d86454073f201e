//! Polylinear maps `A_1 × … × A_n → B` by components, and maps built from
//! tensors with permuted arguments.

use thiserror::Error;

use crate::algebra::{ensure_same, same_algebra, AlgElem, Algebra, AlgebraError};
use crate::linmap::{GeneratorSet, LinMap, RepError};
use crate::matrix::{Matrix, MatrixError};
use crate::scalar::{Field, Scalar};
use crate::tensor::{Tensor, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("forms have different sources or targets")]
    ShapeMismatch,
    #[error("expected {expected} components, found {found}")]
    Length { expected: usize, found: usize },
    #[error("symmetry checks need identical sources")]
    SourceMismatch,
    #[error("basis change for slot {0} is not an invertible square matrix of the right size")]
    SingularBasisChange(usize),
    #[error("cannot split a degree-{degree} form after {split} arguments")]
    BadSplit { split: usize, degree: usize },
    #[error("algebra {0} is not associative")]
    NotAssociative(String),
    #[error("{0:?} is not a permutation")]
    BadPermutation(Vec<usize>),
    #[error("a form needs at least one argument")]
    ZeroDegree,
    #[error("generator index {index} out of range for {len} generators")]
    GeneratorIndex { index: usize, len: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Components `f^p_{i_1…i_n}` with `f(a_1, …, a_n)^p = a_1^{i_1}···a_n^{i_n} f^p_{i_1…i_n}`.
/// Stored row-major in `(i_1, …, i_n, p)`.
#[derive(Debug, Clone)]
pub struct PolyForm {
    sources: Vec<Algebra>,
    target: Algebra,
    comps: Vec<Scalar>,
}

impl PartialEq for PolyForm {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other) && self.comps == other.comps
    }
}

impl Eq for PolyForm {}

fn check_fields(sources: &[Algebra], target: &Algebra) -> Result<(), PolyError> {
    if sources.is_empty() {
        return Err(PolyError::ZeroDegree);
    }
    for s in sources {
        if s.field() != target.field() {
            return Err(AlgebraError::FieldMismatch {
                expected: target.field(),
                found: s.field(),
            }
            .into());
        }
    }
    Ok(())
}

impl PolyForm {
    pub fn new(sources: Vec<Algebra>, target: Algebra, comps: Vec<Scalar>) -> Result<Self, PolyError> {
        check_fields(&sources, &target)?;
        let len = sources.iter().map(|a| a.dim()).product::<usize>() * target.dim();
        if comps.len() != len {
            return Err(PolyError::Length {
                expected: len,
                found: comps.len(),
            });
        }
        if let Some(c) = comps.iter().find(|c| c.field() != target.field()) {
            return Err(MatrixError::FieldMismatch(target.field(), c.field()).into());
        }
        Ok(PolyForm {
            sources,
            target,
            comps,
        })
    }

    pub fn zeros(sources: Vec<Algebra>, target: Algebra) -> Result<Self, PolyError> {
        let len = sources.iter().map(|a| a.dim()).product::<usize>() * target.dim();
        let comps = vec![target.field().zero(); len];
        Self::new(sources, target, comps)
    }

    /// Components from the values of `evaluator` on all basis tuples.
    pub fn from_evaluator(
        sources: Vec<Algebra>,
        target: Algebra,
        evaluator: impl Fn(&[AlgElem]) -> AlgElem,
    ) -> Result<Self, PolyError> {
        check_fields(&sources, &target)?;
        let tuples: usize = sources.iter().map(|a| a.dim()).product();
        let mut comps = Vec::with_capacity(tuples * target.dim());
        let mut idx = vec![0; sources.len()];
        for _ in 0..tuples {
            let args: Vec<AlgElem> = sources
                .iter()
                .zip(&idx)
                .map(|(a, &i)| AlgElem::basis(a, i))
                .collect();
            let value = evaluator(&args);
            ensure_same(&target, value.algebra())?;
            comps.extend_from_slice(value.coords());
            advance(&mut idx, &sources);
        }
        Self::new(sources, target, comps)
    }

    /// The multiplication `(a, b) ↦ ab`; its components are the structural constants.
    pub fn multiplication(alg: &Algebra) -> Self {
        Self::new(vec![alg.clone(), alg.clone()], alg.clone(), alg.constants().to_vec())
            .expect("constants have n³ entries")
    }

    pub fn degree(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[Algebra] {
        &self.sources
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.target.field()
    }

    pub fn components(&self) -> &[Scalar] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    fn flat(&self, indices: &[usize], p: usize) -> usize {
        let base = self
            .sources
            .iter()
            .zip(indices)
            .fold(0, |acc, (a, &i)| acc * a.dim() + i);
        base * self.target.dim() + p
    }

    /// `f^p_{i_1…i_n}`.
    pub fn get(&self, indices: &[usize], p: usize) -> &Scalar {
        &self.comps[self.flat(indices, p)]
    }

    fn same_shape(&self, other: &PolyForm) -> bool {
        self.sources.len() == other.sources.len()
            && self.sources.iter().zip(&other.sources).all(|(a, b)| same_algebra(a, b))
            && same_algebra(&self.target, &other.target)
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, PolyError> {
        if !self.same_shape(other) {
            return Err(PolyError::ShapeMismatch);
        }
        Ok(PolyForm {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, d: &Scalar) -> PolyForm {
        PolyForm {
            comps: self.comps.iter().map(|a| a * d).collect(),
            ..self.clone()
        }
    }

    /// Full contraction `a_1^{i_1}···a_n^{i_n} f^p_{i_1…i_n}`.
    pub fn eval(&self, args: &[AlgElem]) -> Result<AlgElem, PolyError> {
        if args.len() != self.degree() {
            return Err(PolyError::Arity {
                expected: self.degree(),
                found: args.len(),
            });
        }
        for (a, x) in self.sources.iter().zip(args) {
            ensure_same(a, x.algebra())?;
        }
        // contract the leading slot repeatedly
        let mut comps = self.comps.clone();
        for x in args {
            let d = x.coords().len();
            let rest = comps.len() / d;
            let mut next = vec![self.field().zero(); rest];
            for (i, xi) in x.coords().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (r, c) in comps[i * rest..(i + 1) * rest].iter().enumerate() {
                    if !c.is_zero() {
                        next[r] = &next[r] + &(xi * c);
                    }
                }
            }
            comps = next;
        }
        Ok(AlgElem::new(self.target.clone(), comps)?)
    }

    /// Components in the basis `e'_i = e_j h^j_i` of each source:
    /// `f'_{i_1…i_n} = h^{j_1}_{i_1}···h^{j_n}_{i_n} f_{j_1…j_n}`.
    pub fn basis_change(&self, hs: &[Matrix]) -> Result<PolyForm, PolyError> {
        if hs.len() != self.degree() {
            return Err(PolyError::Arity {
                expected: self.degree(),
                found: hs.len(),
            });
        }
        for (slot, (h, a)) in hs.iter().zip(&self.sources).enumerate() {
            if h.rows() != a.dim() || h.cols() != a.dim() || h.rank() != a.dim() {
                return Err(PolyError::SingularBasisChange(slot));
            }
        }
        let dims: Vec<usize> = self.sources.iter().map(|a| a.dim()).collect();
        let t = self.target.dim();
        let mut comps = self.comps.clone();
        for (slot, h) in hs.iter().enumerate() {
            let d = dims[slot];
            let outer: usize = dims[..slot].iter().product();
            let inner: usize = dims[slot + 1..].iter().product::<usize>() * t;
            let mut next = vec![self.field().zero(); comps.len()];
            for o in 0..outer {
                for i in 0..d {
                    for j in 0..d {
                        let hji = h.get(j, i);
                        if hji.is_zero() {
                            continue;
                        }
                        for r in 0..inner {
                            let src = &comps[(o * d + j) * inner + r];
                            if !src.is_zero() {
                                let at = (o * d + i) * inner + r;
                                next[at] = &next[at] + &(hji * src);
                            }
                        }
                    }
                }
            }
            comps = next;
        }
        Ok(PolyForm {
            comps,
            ..self.clone()
        })
    }

    fn check_uniform_sources(&self) -> Result<(), PolyError> {
        if self.sources.iter().all(|a| same_algebra(a, &self.sources[0])) {
            Ok(())
        } else {
            Err(PolyError::SourceMismatch)
        }
    }

    /// Compares `f` with `sign · f` under every adjacent transposition of indices.
    fn transposition_check(&self, sign: &Scalar) -> Result<bool, PolyError> {
        self.check_uniform_sources()?;
        let n = self.degree();
        let d = self.sources[0].dim();
        let t = self.target.dim();
        let tuples = d.pow(n as u32);
        let mut idx = vec![0; n];
        for _ in 0..tuples {
            for s in 0..n.saturating_sub(1) {
                let mut swapped = idx.clone();
                swapped.swap(s, s + 1);
                for p in 0..t {
                    if self.get(&idx, p) != &(sign * self.get(&swapped, p)) {
                        return Ok(false);
                    }
                }
            }
            advance(&mut idx, &self.sources);
        }
        Ok(true)
    }

    pub fn is_symmetric(&self) -> Result<bool, PolyError> {
        self.transposition_check(&self.field().one())
    }

    pub fn is_skew(&self) -> Result<bool, PolyError> {
        self.transposition_check(&-self.field().one())
    }

    /// Splits after `split` arguments: one degree-`n - split` form per basis
    /// tuple of the leading sources, in row-major order.
    pub fn curry(&self, split: usize) -> Result<Curried, PolyError> {
        let n = self.degree();
        if split == 0 || split >= n {
            return Err(PolyError::BadSplit { split, degree: n });
        }
        let (head, tail) = self.sources.split_at(split);
        let count: usize = head.iter().map(|a| a.dim()).product();
        let size = self.comps.len() / count;
        let forms = self
            .comps
            .chunks(size)
            .map(|c| PolyForm::new(tail.to_vec(), self.target.clone(), c.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Curried {
            head: head.to_vec(),
            forms,
        })
    }

    /// The degree-1 form as a linear map.
    pub fn to_linmap(&self) -> Result<LinMap, PolyError> {
        if self.degree() != 1 {
            return Err(PolyError::Arity {
                expected: 1,
                found: self.degree(),
            });
        }
        let (s, t) = (self.sources[0].dim(), self.target.dim());
        let coords = Matrix::from_fn(self.field(), t, s, |p, j| self.comps[j * t + p].clone());
        Ok(LinMap::new(self.sources[0].clone(), self.target.clone(), coords)?)
    }
}

/// Mixed-radix increment of a basis tuple, last slot fastest.
fn advance(idx: &mut [usize], sources: &[Algebra]) {
    for (i, a) in idx.iter_mut().zip(sources).rev() {
        *i += 1;
        if *i < a.dim() {
            return;
        }
        *i = 0;
    }
}

/// A form of degree `p + q` viewed as a map from `p` arguments to forms of degree `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curried {
    head: Vec<Algebra>,
    forms: Vec<PolyForm>,
}

impl Curried {
    pub fn forms(&self) -> &[PolyForm] {
        &self.forms
    }

    /// The degree-`q` form `a_1^{i_1}···a_p^{i_p} f_{i_1…i_p}`.
    pub fn apply(&self, args: &[AlgElem]) -> Result<PolyForm, PolyError> {
        if args.len() != self.head.len() {
            return Err(PolyError::Arity {
                expected: self.head.len(),
                found: args.len(),
            });
        }
        for (a, x) in self.head.iter().zip(args) {
            ensure_same(a, x.algebra())?;
        }
        let mut acc = PolyForm::zeros(self.forms[0].sources.clone(), self.forms[0].target.clone())?;
        let mut idx = vec![0; self.head.len()];
        for form in &self.forms {
            let coef = args
                .iter()
                .zip(&idx)
                .fold(acc.field().one(), |c, (x, &i)| c * &x.coords()[i]);
            if !coef.is_zero() {
                acc = acc.add(&form.scale(&coef))?;
            }
            advance(&mut idx, &self.head);
        }
        Ok(acc)
    }

    pub fn uncurry(&self) -> Result<PolyForm, PolyError> {
        let first = &self.forms[0];
        let mut sources = self.head.clone();
        sources.extend(first.sources.iter().cloned());
        let comps = self.forms.iter().flat_map(|f| f.comps.iter().cloned()).collect();
        PolyForm::new(sources, first.target.clone(), comps)
    }
}

/// Weights `a_0 ⊗ … ⊗ a_n` over an algebra together with a permutation of the
/// arguments. Slot `s` (0-based) receives argument `sigma[s]`, so the value is
/// `a_0 f_{σ(0)}(x_{σ(0)}) a_1 … f_{σ(n-1)}(x_{σ(n-1)}) a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermTensor {
    weights: Tensor,
    sigma: Vec<usize>,
}

impl PermTensor {
    pub fn new(weights: Tensor, sigma: Vec<usize>) -> Result<Self, PolyError> {
        let n = sigma.len();
        if n == 0 {
            return Err(PolyError::ZeroDegree);
        }
        if weights.order() != n + 1 {
            return Err(TensorError::OrderMismatch {
                expected: n + 1,
                found: weights.order(),
            }
            .into());
        }
        let carrier = &weights.factors()[0];
        for f in weights.factors() {
            ensure_same(carrier, f)?;
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || seen[s] {
                return Err(PolyError::BadPermutation(sigma));
            }
            seen[s] = true;
        }
        Ok(PermTensor { weights, sigma })
    }

    pub fn carrier(&self) -> &Algebra {
        &self.weights.factors()[0]
    }

    pub fn degree(&self) -> usize {
        self.sigma.len()
    }

    pub fn weights(&self) -> &Tensor {
        &self.weights
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    fn check(&self, maps: &[LinMap], args: &[AlgElem]) -> Result<(), PolyError> {
        let carrier = self.carrier();
        if !carrier.is_associative() {
            return Err(PolyError::NotAssociative(carrier.name().to_string()));
        }
        for len in [maps.len(), args.len()] {
            if len != self.degree() {
                return Err(PolyError::Arity {
                    expected: self.degree(),
                    found: len,
                });
            }
        }
        for (f, x) in maps.iter().zip(args) {
            ensure_same(carrier, f.target())?;
            ensure_same(f.source(), x.algebra())?;
        }
        Ok(())
    }

    /// Evaluates term by term with left-to-right products of elements.
    pub fn eval(&self, maps: &[LinMap], args: &[AlgElem]) -> Result<AlgElem, PolyError> {
        self.check(maps, args)?;
        let carrier = self.carrier();
        let images = maps
            .iter()
            .zip(args)
            .map(|(f, x)| f.eval(x))
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = AlgElem::zero(carrier);
        for (idx, c) in self.weights.nonzero() {
            let mut v = AlgElem::basis(carrier, idx[0]);
            for (s, &arg) in self.sigma.iter().enumerate() {
                v = v.mul(&images[arg])?.mul(&AlgElem::basis(carrier, idx[s + 1]))?;
            }
            acc = acc.add(&v.scale(c))?;
        }
        Ok(acc)
    }

    /// Components of the polylinear map `(x_1, …, x_n) ↦ self.eval(maps, x)`,
    /// contracting the weights slot by slot with structural constants.
    pub fn form(&self, maps: &[LinMap]) -> Result<PolyForm, PolyError> {
        let sources: Vec<Algebra> = maps.iter().map(|f| f.source().clone()).collect();
        let dummy: Vec<AlgElem> = sources.iter().map(AlgElem::zero).collect();
        self.check(maps, &dummy)?;
        let carrier = self.carrier().clone();
        let field = carrier.field();
        let n = carrier.dim();
        let degree = self.degree();
        // v ↦ v w in coordinates
        let times = |v: &[Scalar], w: &[Scalar]| {
            let mut out = vec![field.zero(); n];
            for (a, va) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (b, wb) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    let vw = va * wb;
                    for (k, c) in carrier.basis_product(a, b).iter().enumerate() {
                        if !c.is_zero() {
                            out[k] = &out[k] + &(&vw * c);
                        }
                    }
                }
            }
            out
        };
        let weights = self.weights.components();
        let mut form = PolyForm::zeros(sources.clone(), carrier.clone())?;
        let tuples: usize = sources.iter().map(|a| a.dim()).product();
        let mut js = vec![0; sources.len()];
        for t in 0..tuples {
            let images: Vec<Vec<Scalar>> = maps.iter().zip(&js).map(|(f, &j)| f.coords().column(j)).collect();
            // partial[r] = Σ over the leading indices of the weighted left factor,
            // r ranging over the remaining weight indices
            let mut rest = n.pow(degree as u32);
            let mut partial: Vec<Vec<Scalar>> = (0..rest)
                .map(|r| (0..n).map(|i0| weights[i0 * rest + r].clone()).collect())
                .collect();
            for &arg in &self.sigma {
                rest /= n;
                let mut next = vec![vec![field.zero(); n]; rest];
                for (flat, v) in partial.iter().enumerate() {
                    if v.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let (i, r) = (flat / rest, flat % rest);
                    let mut e = vec![field.zero(); n];
                    e[i] = field.one();
                    let w = times(&times(v, &images[arg]), &e);
                    for (acc, x) in next[r].iter_mut().zip(w) {
                        *acc = &*acc + &x;
                    }
                }
                partial = next;
            }
            form.comps[t * n..(t + 1) * n].clone_from_slice(&partial[0]);
            advance(&mut js, &sources);
        }
        Ok(form)
    }
}

/// One term of a standard representation: weights, argument permutation and
/// the generator applied in each slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StdTerm {
    pub tensor: PermTensor,
    pub generators: Vec<usize>,
}

impl StdTerm {
    fn maps(&self, gens: &GeneratorSet) -> Result<Vec<LinMap>, PolyError> {
        self.generators
            .iter()
            .map(|&k| {
                gens.generators().get(k).cloned().ok_or(PolyError::GeneratorIndex {
                    index: k,
                    len: gens.len(),
                })
            })
            .collect()
    }
}

/// `Σ_terms a_0 σ(I_{k_1}(x_1)) a_1 … σ(I_{k_n}(x_n)) a_n`.
pub fn poly_standard_eval(
    terms: &[StdTerm],
    gens: &GeneratorSet,
    args: &[AlgElem],
) -> Result<AlgElem, PolyError> {
    let mut acc = AlgElem::zero(gens.target());
    for term in terms {
        let v = term.tensor.eval(&term.maps(gens)?, args)?;
        acc = acc.add(&v)?;
    }
    Ok(acc)
}

/// Components of a standard representation, summed term by term through
/// [`PermTensor::form`].
pub fn poly_standard_form(terms: &[StdTerm], gens: &GeneratorSet) -> Result<PolyForm, PolyError> {
    let mut acc: Option<PolyForm> = None;
    for term in terms {
        let f = term.tensor.form(&term.maps(gens)?)?;
        acc = Some(match acc {
            None => f,
            Some(a) => a.add(&f)?,
        });
    }
    acc.ok_or(PolyError::ZeroDegree)
}
