//! Seeded samplers and fixture lists shared by the integration tests.
#![allow(dead_code)]

use freealg::fixtures;
use freealg::linmap::LinMap;
use freealg::tensor::Tensor;
use freealg::{AlgElem, Algebra, Field, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

pub fn fields() -> [Field; 2] {
    [Field::Rational, f5()]
}

/// Every built-in algebra over `field`.
pub fn algebras(field: Field) -> Vec<Algebra> {
    vec![
        fixtures::quaternions(field),
        fixtures::complex(field),
        fixtures::octonions(field),
        fixtures::n2(field),
        fixtures::n2_unital(field),
        fixtures::idempotent_line(field),
    ]
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Small numerator over a denominator in 1..=3; integral a third of the time.
    pub fn scalar(&mut self, field: Field) -> Scalar {
        let n = self.rng.gen_range(-4i64..=4);
        let d = if self.rng.gen_bool(1.0 / 3.0) { 1 } else { self.rng.gen_range(1i64..=3) };
        field.from_i64(n).try_div(&field.from_i64(d)).unwrap()
    }

    pub fn elem(&mut self, alg: &Algebra) -> AlgElem {
        let coords = (0..alg.dim()).map(|_| self.scalar(alg.field())).collect();
        AlgElem::new(alg.clone(), coords).unwrap()
    }

    pub fn tensor(&mut self, factors: &[Algebra]) -> Tensor {
        let len: usize = factors.iter().map(|a| a.dim()).product();
        let field = factors[0].field();
        let comps = (0..len).map(|_| self.scalar(field)).collect();
        Tensor::from_components(factors.to_vec(), comps).unwrap()
    }

    pub fn matrix(&mut self, field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| self.scalar(field))
    }

    pub fn invertible(&mut self, field: Field, n: usize) -> Matrix {
        loop {
            let m = self.matrix(field, n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn map(&mut self, source: &Algebra, target: &Algebra) -> LinMap {
        let m = self.matrix(source.field(), target.dim(), source.dim());
        LinMap::new(source.clone(), target.clone(), m).unwrap()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
