// SPDX-License-Identifier: Apache-2.0

//! Photon loss into a vacuum environment.

use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::state::{merge_tol, Dyad, Ket, Mixture, Superposition};

/// Loss strength `γτ` together with the qubit amplitude it acts on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceParams<T> {
    pub gamma_tau: T,
    pub alpha: T,
}

impl<T: Real> DecoherenceParams<T> {
    pub fn new(gamma_tau: T, alpha: T) -> Result<Self> {
        if !(gamma_tau >= T::zero()) || !gamma_tau.is_finite() {
            return Err(invalid(format!(
                "γτ must be a finite non-negative number, got {gamma_tau}"
            )));
        }
        if !(alpha > T::zero()) {
            return Err(invalid("coherent amplitude must be positive"));
        }
        Ok(DecoherenceParams { gamma_tau, alpha })
    }

    /// Amplitude transmissivity `t = e^{−γτ/2}`.
    pub fn transmissivity(&self) -> T {
        (-self.gamma_tau * T::lit(0.5)).exp()
    }

    /// Logical coherence factor `Γ = e^{−2(1−t²)α²}`.
    pub fn coherence_factor(&self) -> T {
        let t2 = (-self.gamma_tau).exp();
        (-T::lit(2.0) * (T::one() - t2) * self.alpha * self.alpha).exp()
    }
}

/// States that can be turned into a density operator.
pub trait IntoMixture<T: Real> {
    fn to_mixture(&self) -> Mixture<T>;
}

impl<T: Real> IntoMixture<T> for Superposition<T> {
    fn to_mixture(&self) -> Mixture<T> {
        Mixture::from_pure(self)
    }
}

impl<T: Real> IntoMixture<T> for Mixture<T> {
    fn to_mixture(&self) -> Mixture<T> {
        self.clone()
    }
}

/// Loss on every mode: `|β⟩⟨γ| → exp[(1−t²)(βγ* − (|β|²+|γ|²)/2)] |tβ⟩⟨tγ|`,
/// renormalized to unit trace.
pub fn decohere<T: Real, S: IntoMixture<T>>(
    s: &S,
    params: &DecoherenceParams<T>,
) -> Result<Mixture<T>> {
    let rho = s.to_mixture();
    let t = params.transmissivity();
    let lost = T::one() - (-params.gamma_tau).exp();
    let half = T::lit(0.5);
    let damped = |k: &Ket<T>| {
        Ket::new(k.amps().iter().map(|z| *z * t).collect()).expect("finite amplitudes")
    };
    let out = rho.map_dyads(|d| {
        let mut expo = Complex::new(T::zero(), T::zero());
        for (b, g) in d.ket.amps().iter().zip(d.bra.amps()) {
            expo = expo + (*b * g.conj() - (b.norm_sqr() + g.norm_sqr()) * half) * lost;
        }
        Dyad {
            coef: d.coef * expo.exp(),
            ket: damped(&d.ket),
            bra: damped(&d.bra),
        }
    });
    out.merged(merge_tol()).normalize()
}
