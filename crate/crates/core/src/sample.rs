//! Seeded sampling of small rationals for randomized sweeps.
//!
//! Values are `k/d` with `k ∈ [−20, 20]` and `d ∈ {1, 2, 3}`; rejection
//! sampling enforces distinctness and nonzero constraints. Small numerators
//! keep exact arithmetic in arity-3 products cheap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::rational::{self, Rational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let k = self.rng.gen_range(-20i64..=20);
        let d = self.rng.gen_range(1i64..=3);
        rational::ratio(k, d).expect("nonzero denominator")
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let v = self.rational();
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// `n` pairwise distinct rationals, all nonzero when `nonzero` is set.
    pub fn distinct(&mut self, n: usize, nonzero: bool) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        while out.len() < n {
            let v = self.rational();
            if (nonzero && v.is_zero()) || out.contains(&v) {
                continue;
            }
            out.push(v);
        }
        out
    }

    /// A strict point φ: distinct and nonzero.
    pub fn strict_phi(&mut self, n: usize) -> Vec<Rational> {
        self.distinct(n, true)
    }

    pub fn mu(&mut self, n: usize) -> Vec<Rational> {
        self.distinct(n, false)
    }

    pub fn range(&mut self, upper: usize) -> usize {
        self.rng.gen_range(0..upper)
    }
}
