//! Built-in algebras used by tests, the acceptance suite and the CLI.

use crate::algebra::{AlgElem, Algebra, AlgebraDef};
use crate::scalar::{Field, Scalar};

fn build(
    name: &str,
    field: Field,
    dim: usize,
    entries: Vec<(usize, usize, usize, i64)>,
    unit: Option<usize>,
) -> Algebra {
    let entries = entries
        .into_iter()
        .map(|(i, j, k, v)| (i, j, k, field.from_i64(v)));
    AlgebraDef::from_entries(name, field, dim, entries, unit).expect("built-in fixture is valid")
}

/// Unit entries `e_u e_j = e_j = e_j e_u`.
fn unit_entries(u: usize, dim: usize) -> Vec<(usize, usize, usize, i64)> {
    let mut out = vec![(u, u, u, 1)];
    for j in (0..dim).filter(|&j| j != u) {
        out.push((u, j, j, 1));
        out.push((j, u, j, 1));
    }
    out
}

/// Cayley–Dickson style table: unit `e_0`, `e_a² = −e_0`, and for each
/// listed cyclic triple `(a, b, c)`: `e_a e_b = e_c` with anticommuting
/// imaginary units.
fn imaginary_units(name: &str, field: Field, dim: usize, triples: &[(usize, usize, usize)]) -> Algebra {
    let mut entries = unit_entries(0, dim);
    for a in 1..dim {
        entries.push((a, a, 0, -1));
    }
    for &(a, b, c) in triples {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            entries.push((x, y, z, 1));
            entries.push((y, x, z, -1));
        }
    }
    build(name, field, dim, entries, Some(0))
}

/// Hamilton's quaternions: `e_1 e_2 = e_3`, `e_2 e_3 = e_1`, `e_3 e_1 = e_2`.
pub fn quaternions(field: Field) -> Algebra {
    imaginary_units("quaternion", field, 4, &[(1, 2, 3)])
}

/// `[1, i, j, k]` of a quaternion algebra.
pub fn quaternion_units(h: &Algebra) -> [AlgElem; 4] {
    [0, 1, 2, 3].map(|i| AlgElem::basis(h, i))
}

/// Complex numbers `a + b i` as a 2-dimensional algebra.
pub fn complex(field: Field) -> Algebra {
    imaginary_units("complex", field, 2, &[])
}

/// Octonions from the Fano-plane triples; alternative, not associative.
pub fn octonions(field: Field) -> Algebra {
    imaginary_units(
        "octonion",
        field,
        8,
        &[
            (1, 2, 3),
            (1, 4, 5),
            (1, 7, 6),
            (2, 4, 6),
            (2, 5, 7),
            (3, 4, 7),
            (3, 6, 5),
        ],
    )
}

/// Two-dimensional algebra on `x = e_0`, `y = e_1` with `xy = x` and every
/// other basis product zero.
pub fn n2(field: Field) -> Algebra {
    build("N2", field, 2, vec![(0, 1, 0, 1)], None)
}

/// [`n2`] with an adjoined unit: basis `u = e_0`, `x = e_1`, `y = e_2`.
pub fn n2_unital(field: Field) -> Algebra {
    let mut entries = unit_entries(0, 3);
    entries.push((1, 2, 1, 1));
    build("N2+1", field, 3, entries, Some(0))
}

/// One-dimensional algebra with `e_0 e_0 = e_0`.
pub fn idempotent_line(field: Field) -> Algebra {
    build("line", field, 1, vec![(0, 0, 0, 1)], Some(0))
}

/// The field itself as a one-dimensional algebra; target of functionals.
pub fn field_algebra(field: Field) -> Algebra {
    build("D", field, 1, vec![(0, 0, 0, 1)], Some(0))
}

/// Element of `alg` from small integer coordinates.
pub fn elem(alg: &Algebra, coords: &[i64]) -> AlgElem {
    AlgElem::from_i64(alg, coords).expect("coordinate count matches dimension")
}

/// Rational scalar `n/d`.
pub fn q(n: i64, d: i64) -> Scalar {
    Field::Rational.ratio(n, d).expect("nonzero denominator")
}
