//! Seeded random instances for property suites.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::BlockMatrix;
use crate::exact::GaussianRational;

/// Entries `p/q + (r/s) i` with `|p|, |r| ≤ 9`, `1 ≤ q, s ≤ 5`; about a
/// third of the entries are purely real.
pub fn exact_matrix<R: Rng>(rng: &mut R, n: usize) -> BlockMatrix<GaussianRational> {
    BlockMatrix::from_fn(n, |_, _| {
        let re = (rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let im = if rng.gen_range(0..3) == 0 {
            (0, 1)
        } else {
            (rng.gen_range(-9..=9), rng.gen_range(1..=5))
        };
        GaussianRational::from_parts(re.0, re.1, im.0, im.1)
    })
}

/// `d×d` complex matrix with entries uniform in the square `[−1, 1]²`.
pub fn complex_block<R: Rng>(rng: &mut R, d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn block_matrix<R: Rng>(rng: &mut R, n: usize, d: usize) -> BlockMatrix<DMatrix<Complex64>> {
    BlockMatrix::from_fn(n, |_, _| complex_block(rng, d))
}
