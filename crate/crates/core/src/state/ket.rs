// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::scalar::{is_finite, Real};

/// A product of coherent states, one complex amplitude per optical mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket<T> {
    amps: Vec<Complex<T>>,
}

impl<T: Real> Ket<T> {
    pub fn new(amps: Vec<Complex<T>>) -> Result<Self> {
        if amps.is_empty() {
            return Err(invalid("a coherent ket needs at least one mode"));
        }
        if !amps.iter().all(|&a| is_finite(a)) {
            return Err(invalid("non-finite coherent amplitude"));
        }
        Ok(Ket { amps })
    }

    /// Single-mode coherent state `|beta⟩`.
    pub fn coherent(beta: Complex<T>) -> Self {
        Ket { amps: vec![beta] }
    }

    /// Single-mode coherent state with a real amplitude.
    pub fn real(beta: T) -> Self {
        Self::coherent(Complex::new(beta, T::zero()))
    }

    /// Multimode coherent state with real amplitudes.
    pub fn reals(betas: &[T]) -> Self {
        assert!(!betas.is_empty(), "a coherent ket needs at least one mode");
        Ket {
            amps: betas.iter().map(|&b| Complex::new(b, T::zero())).collect(),
        }
    }

    pub fn vacuum(modes: usize) -> Self {
        assert!(modes >= 1, "a coherent ket needs at least one mode");
        Ket {
            amps: vec![Complex::new(T::zero(), T::zero()); modes],
        }
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amp(&self, mode: usize) -> Complex<T> {
        self.amps[mode]
    }

    #[inline]
    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// Largest `|beta|^2` over modes.
    pub fn max_intensity(&self) -> T {
        self.amps
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), T::max)
    }

    /// Copy with one amplitude replaced.
    pub fn with_amp(&self, mode: usize, value: Complex<T>) -> Self {
        let mut amps = self.amps.clone();
        amps[mode] = value;
        Ket { amps }
    }

    pub fn tensor(&self, other: &Ket<T>) -> Self {
        let mut amps = Vec::with_capacity(self.modes() + other.modes());
        amps.extend_from_slice(&self.amps);
        amps.extend_from_slice(&other.amps);
        Ket { amps }
    }

    /// Ket restricted to the listed modes, in the listed order.
    pub fn select(&self, modes: &[usize]) -> Self {
        Ket {
            amps: modes.iter().map(|&m| self.amps[m]).collect(),
        }
    }

    /// Component-wise equality within an absolute tolerance.
    pub fn approx_eq(&self, other: &Ket<T>, tol: T) -> bool {
        self.modes() == other.modes()
            && self
                .amps
                .iter()
                .zip(&other.amps)
                .all(|(a, b)| (a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol)
    }

    /// `⟨self|other⟩ = Π exp(-|β|²/2 - |γ|²/2 + β*γ)`.
    pub fn overlap(&self, other: &Ket<T>) -> Result<Complex<T>> {
        if self.modes() != other.modes() {
            return Err(Error::ModeMismatch {
                left: self.modes(),
                right: other.modes(),
            });
        }
        Ok(self.overlap_unchecked(other))
    }

    pub(crate) fn overlap_unchecked(&self, other: &Ket<T>) -> Complex<T> {
        let half = T::lit(0.5);
        let mut exponent = Complex::new(T::zero(), T::zero());
        for (b, g) in self.amps.iter().zip(&other.amps) {
            exponent = exponent + b.conj() * g - (b.norm_sqr() * half + g.norm_sqr() * half);
        }
        exponent.exp()
    }
}
