//! Exhaustive check of the interchange law for two operations on a finite set.
//!
//! For `ω_1` of arity `p` and `ω_2` of arity `q`, and a `p × q` matrix of
//! elements `a_{r.c}`, the law reads
//! `ω_1(ω_2(a_{1.1}, …, a_{1.q}), …, ω_2(a_{p.1}, …, a_{p.q}))
//!  = ω_2(ω_1(a_{1.1}, …, a_{p.1}), …, ω_1(a_{1.q}, …, a_{p.q}))`.

use std::fmt;

use thiserror::Error;

/// Largest number of argument matrices that will be enumerated.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("operations need arity at least 1")]
    ZeroArity,
    #[error("table of arity {arity} over {size} elements needs {expected} entries, found {found}")]
    TableSize {
        arity: usize,
        size: usize,
        expected: usize,
        found: usize,
    },
    #[error("table entry {value} at position {position} is outside the carrier of size {size}")]
    EntryOutOfRange {
        position: usize,
        value: usize,
        size: usize,
    },
    #[error("tables are over carriers of different sizes")]
    SizeMismatch,
    #[error("{0} argument matrices exceed the enumeration limit")]
    TooLarge(u128),
    #[error("not a ring: {0}")]
    NotARing(String),
}

/// Operation table of arity `p` on `{0, …, m-1}`; arguments index row-major,
/// first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    size: usize,
    arity: usize,
    entries: Vec<usize>,
}

impl OpTable {
    pub fn new(size: usize, arity: usize, entries: Vec<usize>) -> Result<Self, OmegaError> {
        if size == 0 {
            return Err(OmegaError::EmptyCarrier);
        }
        if arity == 0 {
            return Err(OmegaError::ZeroArity);
        }
        let expected = size.pow(arity as u32);
        if entries.len() != expected {
            return Err(OmegaError::TableSize {
                arity,
                size,
                expected,
                found: entries.len(),
            });
        }
        if let Some((position, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= size) {
            return Err(OmegaError::EntryOutOfRange {
                position,
                value,
                size,
            });
        }
        Ok(OpTable {
            size,
            arity,
            entries,
        })
    }

    /// Binary table from a closure.
    pub fn binary(size: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, OmegaError> {
        let entries = (0..size * size).map(|i| op(i / size, i % size)).collect();
        Self::new(size, 2, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn apply(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        let at = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.entries[at]
    }

    fn op2(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.size + b]
    }
}

/// A finite carrier with two operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOpAlgebra {
    pub op1: OpTable,
    pub op2: OpTable,
}

impl FiniteOpAlgebra {
    pub fn new(op1: OpTable, op2: OpTable) -> Result<Self, OmegaError> {
        if op1.size != op2.size {
            return Err(OmegaError::SizeMismatch);
        }
        Ok(FiniteOpAlgebra { op1, op2 })
    }

    pub fn size(&self) -> usize {
        self.op1.size
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interchange {
    Holds,
    /// `args[r][c]` is `a_{r+1.c+1}`.
    Counterexample {
        args: Vec<Vec<usize>>,
        lhs: usize,
        rhs: usize,
    },
}

impl Interchange {
    pub fn holds(&self) -> bool {
        matches!(self, Interchange::Holds)
    }
}

/// Enumerates all argument matrices in lexicographic order of the row-major
/// flattening and returns the first failure.
pub fn interchange_holds(alg: &FiniteOpAlgebra) -> Result<Interchange, OmegaError> {
    let (m, p, q) = (alg.size(), alg.op1.arity, alg.op2.arity);
    let cells = p * q;
    let total = (m as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_LIMIT {
        return Err(OmegaError::TooLarge(total));
    }
    let mut a = vec![0usize; cells];
    let mut rows = vec![0usize; p];
    let mut cols = vec![0usize; q];
    let mut column = vec![0usize; p];
    for _ in 0..total {
        for (r, row) in a.chunks(q).enumerate() {
            rows[r] = alg.op2.apply(row);
        }
        let lhs = alg.op1.apply(&rows);
        for (c, out) in cols.iter_mut().enumerate() {
            for (r, slot) in column.iter_mut().enumerate() {
                *slot = a[r * q + c];
            }
            *out = alg.op1.apply(&column);
        }
        let rhs = alg.op2.apply(&cols);
        if lhs != rhs {
            return Ok(Interchange::Counterexample {
                args: a.chunks(q).map(<[usize]>::to_vec).collect(),
                lhs,
                rhs,
            });
        }
        for x in a.iter_mut().rev() {
            *x += 1;
            if *x < m {
                break;
            }
            *x = 0;
        }
    }
    Ok(Interchange::Holds)
}

/// Interchange verdict for `ω_1 = +`, `ω_2 = ·` of a finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingReport {
    pub size: usize,
    pub outcome: Interchange,
    /// Every product is zero.
    pub zero_ring: bool,
}

impl RingReport {
    /// The mixed terms `a_{1.1}a_{2.2} + a_{2.1}a_{1.2}` that separate the
    /// expanded right side from the left side, evaluated on the witness.
    pub fn cross_terms(&self, mul: &OpTable, add: &OpTable) -> Option<usize> {
        match &self.outcome {
            Interchange::Counterexample { args, .. } => {
                let (a11, a12, a21, a22) = (args[0][0], args[0][1], args[1][0], args[1][1]);
                Some(add.op2(mul.op2(a11, a22), mul.op2(a21, a12)))
            }
            Interchange::Holds => None,
        }
    }
}

impl fmt::Display for RingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Interchange::Holds => {
                writeln!(f, "interchange holds")?;
                if self.zero_ring {
                    writeln!(f, "note: zero ring, every product vanishes")?;
                }
            }
            Interchange::Counterexample { args, lhs, rhs } => {
                let (a11, a12, a21, a22) = (args[0][0], args[0][1], args[1][0], args[1][1]);
                writeln!(f, "counterexample a11={a11} a12={a12} a21={a21} a22={a22}")?;
                writeln!(f, "lhs a11*a12 + a21*a22 = {lhs}")?;
                writeln!(
                    f,
                    "rhs (a11 + a21)*(a12 + a22) = a11*a12 + a11*a22 + a21*a12 + a21*a22 = {rhs}"
                )?;
            }
        }
        Ok(())
    }
}

fn validate_ring(add: &OpTable, mul: &OpTable) -> Result<(), OmegaError> {
    let m = add.size;
    let els = || 0..m;
    let fail = |msg: String| Err(OmegaError::NotARing(msg));
    if add.arity != 2 || mul.arity != 2 {
        return fail("addition and multiplication must be binary".into());
    }
    if mul.size != m {
        return Err(OmegaError::SizeMismatch);
    }
    for a in els() {
        for b in els() {
            if add.op2(a, b) != add.op2(b, a) {
                return fail(format!("{a} + {b} != {b} + {a}"));
            }
            for c in els() {
                if add.op2(add.op2(a, b), c) != add.op2(a, add.op2(b, c)) {
                    return fail(format!("addition is not associative at ({a}, {b}, {c})"));
                }
                let left = mul.op2(a, add.op2(b, c));
                if left != add.op2(mul.op2(a, b), mul.op2(a, c)) {
                    return fail(format!("{a}*({b} + {c}) != {a}*{b} + {a}*{c}"));
                }
                let right = mul.op2(add.op2(a, b), c);
                if right != add.op2(mul.op2(a, c), mul.op2(b, c)) {
                    return fail(format!("({a} + {b})*{c} != {a}*{c} + {b}*{c}"));
                }
            }
        }
    }
    let Some(zero) = els().find(|&z| els().all(|a| add.op2(z, a) == a)) else {
        return fail("addition has no neutral element".into());
    };
    if let Some(a) = els().find(|&a| els().all(|b| add.op2(a, b) != zero)) {
        return fail(format!("{a} has no additive inverse"));
    }
    Ok(())
}

/// Validates the ring axioms that matter here (abelian addition,
/// distributivity) and runs [`interchange_holds`] with `ω_1 = +`, `ω_2 = ·`.
pub fn ring_interchange_report(add: &OpTable, mul: &OpTable) -> Result<RingReport, OmegaError> {
    validate_ring(add, mul)?;
    let zero = (0..add.size)
        .find(|&z| (0..add.size).all(|a| add.op2(z, a) == a))
        .expect("validated");
    let zero_ring = mul.entries.iter().all(|&v| v == zero);
    let alg = FiniteOpAlgebra::new(add.clone(), mul.clone())?;
    Ok(RingReport {
        size: add.size,
        outcome: interchange_holds(&alg)?,
        zero_ring,
    })
}

/// Addition and multiplication tables of `Z/m`.
pub fn cyclic_ring(m: usize) -> Result<(OpTable, OpTable), OmegaError> {
    Ok((
        OpTable::binary(m, |a, b| (a + b) % m)?,
        OpTable::binary(m, |a, b| (a * b) % m)?,
    ))
}
