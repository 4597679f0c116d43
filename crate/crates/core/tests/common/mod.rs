//! Seeded random inputs shared by the integration tests.

#![allow(dead_code)]

use poisson_forge::foliation::quadric_of_matrix;
use poisson_forge::{embed_gl2h, MVec, Monomial, Poly, QuatMatrix2, Scalar, Tensor, Tensor2};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// A Gaussian rational with small numerators and denominators.
pub fn scalar(r: &mut impl Rng) -> Scalar {
    Scalar::from_parts(r.gen_range(-3..=3), r.gen_range(1..=3), r.gen_range(-3..=3), r.gen_range(1..=2))
}

pub fn nonzero_rational(r: &mut impl Rng) -> Scalar {
    let n = *[-3i64, -2, -1, 1, 2, 3].choose(r).unwrap();
    Scalar::ratio(n, r.gen_range(1..=4))
}

/// A tensor with between 1 and `max_nonzero` random slots.
pub fn tensor<const Q: usize>(r: &mut impl Rng, max_nonzero: usize) -> Tensor<Q> {
    let mut v = vec![Scalar::from(0); Tensor::<Q>::dim()];
    for _ in 0..r.gen_range(1..=max_nonzero) {
        let k = r.gen_range(0..v.len());
        v[k] = scalar(r);
    }
    Tensor::<Q>::from_vector(v).unwrap()
}

pub fn phi_fixed_tensor2(r: &mut impl Rng, max_nonzero: usize) -> Tensor2 {
    let t: Tensor2 = tensor(r, max_nonzero);
    t.add(&t.phi())
}

/// A holomorphic vector field with linear coefficients.
pub fn linear_vector(r: &mut impl Rng, terms: usize) -> MVec {
    let mut v = MVec::zero(1);
    for _ in 0..terms {
        let p = Poly::z(r.gen_range(0..4)).scale(&scalar(r));
        v.add_assign(&MVec::term(p, &[r.gen_range(0..4)]));
    }
    v
}

/// A multivector of the given grade over all eight directions with
/// coefficients of degree at most 2 in all eight variables.
pub fn mvec(r: &mut impl Rng, grade: usize, terms: usize) -> MVec {
    let mut m = MVec::zero(grade);
    for _ in 0..terms {
        let mut dirs: Vec<usize> = (0..8).collect();
        dirs.shuffle(r);
        let mut e = [0u32; 8];
        for _ in 0..r.gen_range(0..=2) {
            e[r.gen_range(0..8)] += 1;
        }
        let p = Poly::term(Monomial::new(e), scalar(r));
        m.add_assign(&MVec::term(p, &dirs[..grade]));
    }
    m
}

/// A quadric `z^T M z` for `M` in the image of `gl(2, ℍ)`.
pub fn real_quadric(r: &mut impl Rng) -> Poly {
    let mut q = QuatMatrix2::identity();
    for row in q.entries.iter_mut() {
        for e in row.iter_mut() {
            *e = (scalar(r), scalar(r));
        }
    }
    quadric_of_matrix(&embed_gl2h(&q).matrix())
}

/// As `mvec`, with grade 1 or 2.
pub fn mvec_low(r: &mut impl Rng, terms: usize) -> MVec {
    let grade = r.gen_range(1..=2);
    mvec(r, grade, terms)
}
