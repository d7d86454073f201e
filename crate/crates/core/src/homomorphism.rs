//! Linear homomorphisms between algebras and linear automorphisms of the
//! quaternions.

use thiserror::Error;

use crate::algebra::{AlgElem, Algebra};
use crate::fixtures;
use crate::linmap::{components_from_coords, Decomposition, GeneratorSet, LinMap, RepError};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("quaternion automorphism check needs a 4x4 matrix, found {0}x{1}")]
    NotFourByFour(usize, usize),
    #[error("quaternion automorphism check is only defined over Q, found {0}")]
    UnsupportedField(Field),
}

/// A linear map `r` proposed as a homomorphism, with the scalar part fixed to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCandidate {
    map: LinMap,
}

impl HomCandidate {
    pub fn new(source: Algebra, target: Algebra, matrix: Matrix) -> Result<Self, HomError> {
        Ok(HomCandidate {
            map: LinMap::new(source, target, matrix)?,
        })
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn matrix(&self) -> &Matrix {
        self.map.coords()
    }
}

impl From<LinMap> for HomCandidate {
    fn from(map: LinMap) -> Self {
        HomCandidate { map }
    }
}

/// Nonzero residuals `r^l_k C_{ij}^k − C'_{pq}^l r^p_i r^q_j`, keyed by `(i, j, l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub residuals: Vec<((usize, usize, usize), Scalar)>,
}

impl HomReport {
    pub fn holds(&self) -> bool {
        self.residuals.is_empty()
    }
}

pub fn is_linear_homomorphism(h: &HomCandidate) -> HomReport {
    let (a, b) = (h.map.source(), h.map.target());
    let r = h.matrix();
    let field = a.field();
    let (n1, n2) = (a.dim(), b.dim());
    let mut residuals = Vec::new();
    for i in 0..n1 {
        for j in 0..n1 {
            let prod = a.basis_product(i, j);
            let col_i = r.column(i);
            let col_j = r.column(j);
            for l in 0..n2 {
                let mut lhs = field.zero();
                for (k, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    lhs = lhs + r.get(l, k) * c;
                }
                let mut rhs = field.zero();
                for (p, rp) in col_i.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (q, rq) in col_j.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        rhs = rhs + &(rp * rq) * b.c(p, q, l);
                    }
                }
                let diff = lhs - rhs;
                if !diff.is_zero() {
                    residuals.push(((i, j, l), diff));
                }
            }
        }
    }
    HomReport { residuals }
}

/// `r(e_i e_j) = r(e_i) r(e_j)` on every basis pair, by evaluating the map.
pub fn preserves_basis_products(h: &HomCandidate) -> bool {
    let a = h.map.source();
    (0..a.dim()).all(|i| {
        (0..a.dim()).all(|j| {
            let (ei, ej) = (AlgElem::basis(a, i), AlgElem::basis(a, j));
            let lhs = h.map.eval(&ei.mul(&ej).expect("same algebra"));
            let rhs = h
                .map
                .eval(&ei)
                .and_then(|x| Ok(x.mul(&h.map.eval(&ej)?)?));
            matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuatVerdict {
    Pass,
    /// First violated equation, e.g. `r^1_1 = r^2_2 r^3_3 - r^2_3 r^3_2 (2 != 4)`.
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatReport {
    pub verdict: QuatVerdict,
    pub homomorphism: HomReport,
}

impl QuatReport {
    pub fn passes(&self) -> bool {
        self.verdict == QuatVerdict::Pass
    }

    /// Whether the equation check and the full homomorphism check agree.
    pub fn consistent(&self) -> bool {
        self.passes() == self.homomorphism.holds()
    }
}

/// Checks a 4×4 matrix against the linear-automorphism conditions of the
/// quaternions: the nine equations on the imaginary block, then `r^0_0 = 1`,
/// `r^0_i = 0`, `r^i_0 = 0` and `Σ_l (r^l_i)² = 1` for `i = 1, 2, 3`.
pub fn quat_auto_check(r: &Matrix) -> Result<QuatReport, HomError> {
    if r.rows() != 4 || r.cols() != 4 {
        return Err(HomError::NotFourByFour(r.rows(), r.cols()));
    }
    if r.field() != Field::Rational {
        return Err(HomError::UnsupportedField(r.field()));
    }
    let h = fixtures::quaternions(Field::Rational);
    let homomorphism = is_linear_homomorphism(&HomCandidate::new(h.clone(), h, r.clone())?);
    let g = |row: usize, col: usize| r.get(row, col);
    let next = |x: usize| x % 3 + 1;
    let mut verdict = QuatVerdict::Pass;
    'check: {
        for l in 1..4 {
            let (a, b) = (next(l), next(next(l)));
            for i in 1..4 {
                let (k, j) = (next(i), next(next(i)));
                let rhs = g(a, k) * g(b, j) - g(a, j) * g(b, k);
                if g(l, i) != &rhs {
                    verdict = QuatVerdict::Fail(format!(
                        "r^{l}_{i} = r^{a}_{k} r^{b}_{j} - r^{a}_{j} r^{b}_{k} ({} != {rhs})",
                        g(l, i)
                    ));
                    break 'check;
                }
            }
        }
        if !g(0, 0).is_one() {
            verdict = QuatVerdict::Fail(format!("r^0_0 = 1 ({} != 1)", g(0, 0)));
            break 'check;
        }
        for i in 1..4 {
            if !g(0, i).is_zero() {
                verdict = QuatVerdict::Fail(format!("r^0_{i} = 0 ({} != 0)", g(0, i)));
                break 'check;
            }
        }
        for i in 1..4 {
            if !g(i, 0).is_zero() {
                verdict = QuatVerdict::Fail(format!("r^{i}_0 = 0 ({} != 0)", g(i, 0)));
                break 'check;
            }
        }
        for i in 1..4 {
            let norm = (1..4).fold(Field::Rational.zero(), |acc, l| acc + g(l, i) * g(l, i));
            if !norm.is_one() {
                verdict = QuatVerdict::Fail(format!(
                    "r^1_{i} r^1_{i} + r^2_{i} r^2_{i} + r^3_{i} r^3_{i} = 1 ({norm} != 1)"
                ));
                break 'check;
            }
        }
    }
    Ok(QuatReport {
        verdict,
        homomorphism,
    })
}

/// Standard components of the homomorphism viewed as a linear map.
pub fn hom_standard_components(h: &HomCandidate, gens: &GeneratorSet) -> Result<Decomposition, HomError> {
    Ok(components_from_coords(&h.map, gens)?)
}
