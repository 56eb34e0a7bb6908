//! Seeded random states and observables for property checks.
//!
//! All generators use ChaCha8 seeded from a `u64`, so identical seeds give
//! identical matrices on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::density::DensityMatrix;
use super::matrix::ComplexMatrix;
use crate::error::Result;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Standard complex Gaussian (Ginibre) matrix.
pub fn ginibre(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let entries: Vec<Complex64> = (0..dim * dim).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(dim, entries).expect("dim^2 entries")
}

/// `G G† / Tr(G G†)`; full rank with probability one.
pub fn ginibre_state(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    w.scale_real(1.0 / tr)
}

pub fn random_density(dim_a: usize, dim_b: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(dim_a, dim_b, &mut rng_from_seed(seed))
}

pub fn random_density_with(
    dim_a: usize,
    dim_b: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix> {
    DensityMatrix::new(ginibre_state(dim_a * dim_b, rng), dim_a, dim_b)
}

/// Rank-one state from a normalized complex Gaussian vector.
pub fn random_pure(dim_a: usize, dim_b: usize, seed: u64) -> Result<DensityMatrix> {
    random_pure_with(dim_a, dim_b, &mut rng_from_seed(seed))
}

pub fn random_pure_with(dim_a: usize, dim_b: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    let v: Vec<Complex64> = (0..dim_a * dim_b).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let v: Vec<Complex64> = v.into_iter().map(|z| z / norm).collect();
    DensityMatrix::new(ComplexMatrix::projector(&v), dim_a, dim_b)
}

/// Convex mixture `Σ q_k ρ_A^k ⊗ ρ_B^k` with weights uniform on the simplex.
pub fn random_separable(
    dim_a: usize,
    dim_b: usize,
    terms: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    random_separable_with(dim_a, dim_b, terms, &mut rng_from_seed(seed))
}

pub fn random_separable_with(
    dim_a: usize,
    dim_b: usize,
    terms: usize,
    rng: &mut impl Rng,
) -> Result<DensityMatrix> {
    let terms = terms.max(1);
    let weights: Vec<f64> = (0..terms).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = weights.iter().sum();
    let mut acc = ComplexMatrix::zeros(dim_a * dim_b);
    for w in weights {
        let a = ginibre_state(dim_a, rng);
        let b = ginibre_state(dim_b, rng);
        acc = &acc + &a.tensor(&b).scale_real(w / total);
    }
    DensityMatrix::new(acc, dim_a, dim_b)
}

/// `(G + G†) / 2` for a Ginibre `G`; generically indefinite.
pub fn random_hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    random_hermitian_with(dim, &mut rng_from_seed(seed))
}

pub fn random_hermitian_with(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Real symmetric matrix with standard normal entries.
pub fn random_real_symmetric_with(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    let re = ComplexMatrix::from_fn(dim, |i, j| Complex64::new(g[(i, j)].re, 0.0));
    (&re + &re.transpose()).scale_real(0.5)
}
