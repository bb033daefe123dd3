// SPDX-License-Identifier: Apache-2.0

//! Error probabilities of readout and of displacement-based rotations.

use num_complex::Complex;

use crate::detection::required_truncation;
use crate::error::{invalid, Result};
use crate::gates::displace;
use crate::scalar::{phase, Real};
use crate::state::{Qubit, Superposition};

/// Probability that ideal readout of `a|α⟩ + b|−α⟩` sees no photon at all.
pub fn readout_failure_ideal<T: Real>(a: Complex<T>, b: Complex<T>, alpha: T) -> T {
    (a + b).norm_sqr() * (-T::lit(2.0) * alpha * alpha).exp()
}

/// Probability that a detector of efficiency `d` registers nothing from `|√2α⟩`.
pub fn detector_miss<T: Real>(alpha: T, efficiency: T) -> T {
    (-T::lit(2.0) * efficiency * alpha * alpha).exp()
}

/// [`detector_miss`] as the explicit sum `Σ_{n<N} |⟨n|√2α⟩|² (1−d)ⁿ`.
pub fn detector_miss_sum<T: Real>(alpha: T, efficiency: T, truncation: usize) -> Result<T> {
    check_efficiency(efficiency)?;
    let mean = T::lit(2.0) * alpha * alpha;
    let keep = T::one() - efficiency;
    let mut p = (-mean).exp();
    let mut w = T::one();
    let mut sum = T::zero();
    for n in 0..truncation {
        if n > 0 {
            p = p * mean / T::lit(n as f64);
            w = w * keep;
        }
        sum = sum + p * w;
    }
    Ok(sum)
}

fn check_efficiency<T: Real>(d: T) -> Result<()> {
    if d >= T::zero() && d <= T::one() {
        Ok(())
    } else {
        Err(invalid(format!("efficiency must lie in [0, 1], got {d}")))
    }
}

/// `π/(4α)`: the largest accumulated drift the rotation scheme tolerates.
pub fn default_eps_bar<T: Real>(alpha: T) -> T {
    T::FRAC_PI_4() / alpha
}

/// Error budget of the threshold-detector readout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget<T> {
    /// Signal state yields no click.
    pub p_a: T,
    /// Near-vacuum state yields a click.
    pub p_b: T,
    /// Both detectors behave.
    pub p_s: T,
    /// `p_a · p_b`: both wrong, so the error goes unnoticed.
    pub undetected: T,
    /// `1 − p_s − undetected`.
    pub detected: T,
}

/// `(P(count ≤ k), P(count > k))` for `|β|²`-mean light thinned by `d`,
/// summed over photon numbers up to a tail below `1e-14`.
fn count_buckets<T: Real>(intensity: T, efficiency: T, threshold: usize) -> (T, T) {
    let levels = required_truncation(intensity, T::tol(1e-14)).max(threshold + 2);
    let keep = T::one() - efficiency;
    let mut p = (-intensity).exp();
    let (mut low, mut high) = (T::zero(), T::zero());
    // binomial row C(n, m) d^m (1−d)^{n−m}, updated in place
    let mut row = vec![T::zero(); levels];
    row[0] = T::one();
    for n in 0..levels {
        if n > 0 {
            p = p * intensity / T::lit(n as f64);
            for m in (1..=n).rev() {
                row[m] = row[m] * keep + row[m - 1] * efficiency;
            }
            row[0] = row[0] * keep;
        }
        let le = row[..=threshold.min(n)]
            .iter()
            .fold(T::zero(), |a, &b| a + b);
        let gt = if n > threshold {
            row[threshold + 1..=n].iter().fold(T::zero(), |a, &b| a + b)
        } else {
            T::zero()
        };
        low = low + p * le;
        high = high + p * gt;
    }
    (low, high)
}

/// Readout error budget at detector efficiency `d` and threshold `k` after a
/// residual drift `ε̄` (the signal port sees `|√2α + iε̄/√2⟩`, the dark port
/// `|iε̄/√2⟩`).
pub fn threshold_probs<T: Real>(
    alpha: T,
    efficiency: T,
    threshold: usize,
    eps_bar: T,
) -> Result<ErrorBudget<T>> {
    check_efficiency(efficiency)?;
    if !(alpha > T::zero()) {
        return Err(invalid("coherent amplitude must be positive"));
    }
    let half = T::lit(0.5);
    let signal = T::lit(2.0) * alpha * alpha + eps_bar * eps_bar * half;
    let dark = eps_bar * eps_bar * half;
    let (sig_low, sig_high) = count_buckets(signal, efficiency, threshold);
    let (dark_low, dark_high) = count_buckets(dark, efficiency, threshold);
    let p_a = sig_low;
    let p_b = dark_high;
    let p_s = dark_low * sig_high;
    let undetected = p_a * p_b;
    Ok(ErrorBudget {
        p_a,
        p_b,
        p_s,
        undetected,
        detected: T::one() - p_s - undetected,
    })
}

/// Fidelity between the ideal `U_z(2αε)` and the displacement `D(iε)` acting
/// on the (unnormalized) encoding `a|α⟩ + b|−α⟩`.
pub fn rotation_fidelity<T: Real>(a: Complex<T>, b: Complex<T>, alpha: T, epsilon: T) -> T {
    let two = T::lit(2.0);
    let w = phase(two * alpha * epsilon);
    let cross = (a * b.conj() * w + a.conj() * b * w.conj()) * (-two * alpha * alpha).exp();
    let inner = a.norm_sqr() + b.norm_sqr() + cross.re;
    (-epsilon * epsilon).exp() * inner * inner
}

/// Signed displacement magnitudes `ε_n` whose running sums stay within
/// `ε̄ + max|ε_n|`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonSchedule<T> {
    steps: Vec<T>,
    eps_bar: T,
}

impl<T: Real> EpsilonSchedule<T> {
    /// Validates the bounded-partial-sum property for `ε̄ = π/(4α)`.
    pub fn new(steps: Vec<T>, alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) {
            return Err(invalid("coherent amplitude must be positive"));
        }
        if steps.iter().any(|e| !e.is_finite()) {
            return Err(invalid("schedule entries must be finite"));
        }
        let eps_bar = default_eps_bar(alpha);
        let largest = steps.iter().fold(T::zero(), |m, e| m.max(e.abs()));
        let limit = eps_bar + largest;
        let mut sum = T::zero();
        for (m, &e) in steps.iter().enumerate() {
            sum = sum + e;
            if sum.abs() > limit + T::tol(1e-12) * limit.max(T::one()) {
                return Err(invalid(format!(
                    "partial sum {sum} after step {m} exceeds {limit}"
                )));
            }
        }
        Ok(EpsilonSchedule { steps, eps_bar })
    }

    pub fn steps(&self) -> &[T] {
        &self.steps
    }

    pub fn eps_bar(&self) -> T {
        self.eps_bar
    }

    pub fn total(&self) -> T {
        self.steps.iter().fold(T::zero(), |a, &b| a + b)
    }

    pub fn partial_sums(&self) -> Vec<T> {
        self.steps
            .iter()
            .scan(T::zero(), |s, &e| {
                *s = *s + e;
                Some(*s)
            })
            .collect()
    }
}

/// Greedy signs: each magnitude is added with the sign that pulls the running
/// sum toward zero, so every partial sum stays within the largest magnitude.
pub fn schedule_signs<T: Real>(magnitudes: &[T], alpha: T) -> Result<EpsilonSchedule<T>> {
    if magnitudes.iter().any(|m| !(*m >= T::zero())) {
        return Err(invalid("magnitudes must be non-negative"));
    }
    let mut sum = T::zero();
    let steps = magnitudes
        .iter()
        .map(|&m| {
            let e = if sum > T::zero() { -m } else { m };
            sum = sum + e;
            e
        })
        .collect();
    EpsilonSchedule::new(steps, alpha)
}

/// `encode(q)` after the displacements `D(iε_n)` in order.
pub fn accumulated_state<T: Real>(
    q: &Qubit<T>,
    schedule: &EpsilonSchedule<T>,
) -> Result<Superposition<T>> {
    schedule.steps().iter().try_fold(q.encode(), |s, &e| {
        displace(&s, 0, Complex::new(T::zero(), e))
    })
}
