//! Seeded random polynomials for identity sweeps.
//!
//! Everything downstream (CLI sweeps, property suites) derives from one u64
//! seed through ChaCha8 so runs are reproducible byte for byte.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::BivariatePoly;
use crate::rational::rat;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse random polynomial of total degree ≤ `max_degree` with small
/// rational coefficients. May be zero.
pub fn random_poly<R: Rng>(rng: &mut R, max_degree: u32) -> BivariatePoly {
    let mut p = BivariatePoly::zero();
    for i in 0..=max_degree {
        for j in 0..=(max_degree - i) {
            if rng.gen_bool(0.65) {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=4);
                p.add_term((i, j), rat(n, d));
            }
        }
    }
    p
}

/// Like `random_poly` but never returns the zero polynomial.
pub fn random_nonzero_poly<R: Rng>(rng: &mut R, max_degree: u32) -> BivariatePoly {
    loop {
        let p = random_poly(rng, max_degree);
        if !p.is_zero() {
            return p;
        }
    }
}
