// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;

use super::ket::Ket;
use super::superposition::{Superposition, Term};
use crate::error::{invalid, Result};
use crate::scalar::{is_finite, Real};

/// Logical qubit `a|α⟩ + b|−α⟩` with `|0_L⟩ = |α⟩`, `|1_L⟩ = |−α⟩`.
///
/// `|a|² + |b|² = 1` is enforced to 1e-9; the exact norm also carries the
/// `2 Re(ab*) e^{-2α²}` overlap term, which [`Superposition::normalize`] handles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qubit<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub alpha: T,
}

impl<T: Real> Qubit<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(invalid(format!(
                "coherent amplitude must be positive, got {alpha}"
            )));
        }
        if !is_finite(a) || !is_finite(b) {
            return Err(invalid("non-finite qubit amplitude"));
        }
        let n = a.norm_sqr() + b.norm_sqr();
        if (n - T::one()).abs() > T::tol(1e-9) {
            return Err(invalid(format!("|a|²+|b|² = {n}, expected 1")));
        }
        Ok(Qubit { a, b, alpha })
    }

    /// Like [`Qubit::new`] but rescales `(a, b)` to `|a|²+|b|² = 1` first.
    pub fn normalized(a: Complex<T>, b: Complex<T>, alpha: T) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !(n > T::zero()) {
            return Err(invalid("qubit amplitudes are both zero"));
        }
        Self::new(a / n, b / n, alpha)
    }

    pub fn zero(alpha: T) -> Self {
        Qubit {
            a: Complex::new(T::one(), T::zero()),
            b: Complex::new(T::zero(), T::zero()),
            alpha,
        }
    }

    pub fn one(alpha: T) -> Self {
        Qubit {
            a: Complex::new(T::zero(), T::zero()),
            b: Complex::new(T::one(), T::zero()),
            alpha,
        }
    }

    /// `(|0_L⟩ + sign·|1_L⟩)/√2` in logical amplitudes.
    pub fn plus(alpha: T) -> Self {
        let h = T::FRAC_1_SQRT_2();
        Qubit {
            a: Complex::new(h, T::zero()),
            b: Complex::new(h, T::zero()),
            alpha,
        }
    }

    pub fn minus(alpha: T) -> Self {
        let h = T::FRAC_1_SQRT_2();
        Qubit {
            a: Complex::new(h, T::zero()),
            b: Complex::new(-h, T::zero()),
            alpha,
        }
    }

    /// Bloch-sphere parametrization `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn bloch(theta: T, phi: T, alpha: T) -> Result<Self> {
        let half = theta * T::lit(0.5);
        Self::new(
            Complex::new(half.cos(), T::zero()),
            Complex::from_polar(half.sin(), phi),
            alpha,
        )
    }

    /// `a|α⟩ + b|−α⟩` on one mode, not renormalized.
    pub fn encode(&self) -> Superposition<T> {
        Superposition::new(vec![
            Term {
                coef: self.a,
                ket: Ket::real(self.alpha),
            },
            Term {
                coef: self.b,
                ket: Ket::real(-self.alpha),
            },
        ])
        .expect("two single-mode terms")
    }

    /// The encoded state rescaled to unit norm with the exact Gram matrix.
    pub fn state(&self) -> Superposition<T> {
        self.encode()
            .normalize()
            .expect("logical qubit with α > 0 has positive norm")
    }
}
