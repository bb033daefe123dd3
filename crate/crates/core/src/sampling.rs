// SPDX-License-Identifier: Apache-2.0

//! Seeded categorical sampling by inverse CDF over a fixed outcome order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Real;

/// Deterministic RNG used for all sampled protocol runs.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finite distribution over outcomes kept in insertion order.
///
/// Weights need not sum exactly to one; sampling uses the cumulative sum of
/// the stored weights, so rounding in the last digit never shifts outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Categorical<O, T> {
    entries: Vec<(O, T)>,
}

impl<O: Clone, T: Real> Categorical<O, T> {
    /// Negative weights are clamped to zero.
    pub fn new(entries: Vec<(O, T)>) -> Self {
        Categorical {
            entries: entries
                .into_iter()
                .map(|(o, p)| (o, p.max(T::zero())))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(O, T)] {
        &self.entries
    }

    pub fn total(&self) -> T {
        self.entries.iter().fold(T::zero(), |a, e| a + e.1)
    }

    /// Outcome whose cumulative interval contains `u · total`, `u ∈ [0, 1)`.
    pub fn invert(&self, u: f64) -> Option<O> {
        let target = u * self.total().as_f64();
        let mut acc = 0.0;
        let mut last = None;
        for (o, p) in &self.entries {
            let p = p.as_f64();
            if p <= 0.0 {
                continue;
            }
            acc += p;
            last = Some(o);
            if target < acc {
                return Some(o.clone());
            }
        }
        last.cloned()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<O> {
        self.invert(rng.gen::<f64>())
    }

    /// One draw from a fresh generator seeded with `seed`.
    pub fn sample_seeded(&self, seed: u64) -> Option<O> {
        self.sample(&mut rng_from_seed(seed))
    }

    /// Occurrence counts of `shots` draws, aligned with [`Self::entries`].
    pub fn sample_counts<R: Rng + ?Sized>(&self, rng: &mut R, shots: usize) -> Vec<usize>
    where
        O: PartialEq,
    {
        let mut counts = vec![0; self.entries.len()];
        for _ in 0..shots {
            if let Some(o) = self.sample(rng) {
                let i = self
                    .entries
                    .iter()
                    .position(|e| e.0 == o)
                    .expect("sampled outcome is listed");
                counts[i] += 1;
            }
        }
        counts
    }
}
