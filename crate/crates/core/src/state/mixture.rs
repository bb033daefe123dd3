// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;

use super::ket::Ket;
use super::superposition::{check_normalized, Superposition};
use super::{merge_tol, Operand};
use crate::error::{invalid, Error, Result};
use crate::scalar::{is_finite, Real};

/// `coef · |ket⟩⟨bra|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dyad<T> {
    pub coef: Complex<T>,
    pub ket: Ket<T>,
    pub bra: Ket<T>,
}

/// Density operator written as a finite sum of coherent-state dyads.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture<T> {
    modes: usize,
    terms: Vec<Dyad<T>>,
}

impl<T: Real> Mixture<T> {
    pub fn new(terms: Vec<Dyad<T>>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| invalid("a mixture needs at least one dyad"))?;
        let modes = first.ket.modes();
        for d in &terms {
            for m in [d.ket.modes(), d.bra.modes()] {
                if m != modes {
                    return Err(Error::ModeMismatch {
                        left: modes,
                        right: m,
                    });
                }
            }
            if !is_finite(d.coef) {
                return Err(invalid("non-finite coefficient"));
            }
        }
        Ok(Mixture { modes, terms })
    }

    pub(crate) fn from_parts(modes: usize, terms: Vec<Dyad<T>>) -> Self {
        debug_assert!(!terms.is_empty());
        Mixture { modes, terms }
    }

    /// `|ψ⟩⟨ψ|` expanded into `len²` dyads.
    pub fn from_pure(psi: &Superposition<T>) -> Self {
        let mut terms = Vec::with_capacity(psi.len() * psi.len());
        for a in psi.terms() {
            for b in psi.terms() {
                terms.push(Dyad {
                    coef: a.coef * b.coef.conj(),
                    ket: a.ket.clone(),
                    bra: b.ket.clone(),
                });
            }
        }
        Mixture {
            modes: psi.modes(),
            terms,
        }
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.modes
    }

    #[inline]
    pub fn terms(&self) -> &[Dyad<T>] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ c ⟨bra|ket⟩`; real for a Hermitian operator.
    pub fn trace(&self) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, d| {
                acc + d.coef * d.bra.overlap_unchecked(&d.ket)
            })
    }

    pub fn normalize(&self) -> Result<Self> {
        let tr = self.trace().re;
        if !(tr > T::lit(1e-300).max(T::min_positive_value())) {
            return Err(Error::Degenerate);
        }
        Ok(self.scale(T::one() / tr))
    }

    pub fn scale(&self, s: T) -> Self {
        Mixture {
            modes: self.modes,
            terms: self
                .terms
                .iter()
                .map(|d| Dyad {
                    coef: d.coef * s,
                    ket: d.ket.clone(),
                    bra: d.bra.clone(),
                })
                .collect(),
        }
    }

    /// `⟨ψ|ρ|ψ⟩` without normalization checks.
    pub fn expectation(&self, psi: &Superposition<T>) -> Result<Complex<T>> {
        if psi.modes() != self.modes {
            return Err(Error::ModeMismatch {
                left: self.modes,
                right: psi.modes(),
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for d in &self.terms {
            let mut left = Complex::new(T::zero(), T::zero());
            let mut right = Complex::new(T::zero(), T::zero());
            for t in psi.terms() {
                left = left + t.coef.conj() * t.ket.overlap_unchecked(&d.ket);
                right = right + t.coef * d.bra.overlap_unchecked(&t.ket);
            }
            acc = acc + d.coef * left * right;
        }
        Ok(acc)
    }

    /// Fidelity `⟨ψ|ρ|ψ⟩` against a normalized pure state.
    pub fn fidelity(&self, psi: &Superposition<T>) -> Result<T> {
        check_normalized(psi)?;
        let tr = self.trace().re;
        if (tr - T::one()).abs() > T::tol(1e-8) {
            return Err(Error::NotNormalized(tr.as_f64()));
        }
        Ok(self.expectation(psi)?.re)
    }

    /// Largest deviation between the operator and its adjoint, measured on
    /// dyad coefficients after pairing `(c, k, b)` with `(c*, b, k)`.
    pub fn hermiticity_defect(&self) -> T {
        let m = self.merged(merge_tol());
        let mut worst = T::zero();
        for d in &m.terms {
            let partner = m
                .terms
                .iter()
                .find(|e| {
                    e.ket.approx_eq(&d.bra, merge_tol()) && e.bra.approx_eq(&d.ket, merge_tol())
                })
                .map(|e| e.coef.conj())
                .unwrap_or_else(|| Complex::new(T::zero(), T::zero()));
            worst = worst.max((d.coef - partner).norm());
        }
        worst
    }

    pub fn tensor(&self, other: &Mixture<T>) -> Self {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Dyad {
                    coef: a.coef * b.coef,
                    ket: a.ket.tensor(&b.ket),
                    bra: a.bra.tensor(&b.bra),
                });
            }
        }
        Mixture {
            modes: self.modes + other.modes,
            terms,
        }
    }

    pub fn select_modes(&self, order: &[usize]) -> Result<Self> {
        if order.is_empty() {
            return Err(invalid("mode selection must be non-empty"));
        }
        for &m in order {
            if m >= self.modes {
                return Err(Error::ModeOutOfRange {
                    mode: m,
                    modes: self.modes,
                });
            }
        }
        Ok(Mixture {
            modes: order.len(),
            terms: self
                .terms
                .iter()
                .map(|d| Dyad {
                    coef: d.coef,
                    ket: d.ket.select(order),
                    bra: d.bra.select(order),
                })
                .collect(),
        })
    }

    /// Merges dyads whose ket and bra both agree within `ket_tol`.
    pub fn merged(&self, ket_tol: T) -> Self {
        let mut out: Vec<Dyad<T>> = Vec::with_capacity(self.terms.len());
        for d in &self.terms {
            match out
                .iter_mut()
                .find(|u| u.ket.approx_eq(&d.ket, ket_tol) && u.bra.approx_eq(&d.bra, ket_tol))
            {
                Some(u) => u.coef = u.coef + d.coef,
                None => out.push(d.clone()),
            }
        }
        Mixture {
            modes: self.modes,
            terms: out,
        }
    }

    /// Merges equal dyads and drops those with `|c| <= tol * |trace|`.
    pub fn prune(&self, tol: T) -> Self {
        let merged = self.merged(merge_tol());
        let cutoff = tol * merged.trace().norm();
        let strongest = merged
            .terms
            .iter()
            .enumerate()
            .max_by(|a, b| {
                a.1.coef
                    .norm()
                    .partial_cmp(&b.1.coef.norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .map(|(i, _)| i)
            .unwrap_or(0);
        let terms = merged
            .terms
            .into_iter()
            .enumerate()
            .filter(|(i, d)| *i == strongest || d.coef.norm() > cutoff)
            .map(|(_, d)| d)
            .collect();
        Mixture {
            modes: self.modes,
            terms,
        }
    }

    /// Applies a per-dyad map that may change coefficients and amplitudes.
    pub(crate) fn map_dyads<F>(&self, f: F) -> Self
    where
        F: Fn(&Dyad<T>) -> Dyad<T>,
    {
        Mixture {
            modes: self.modes,
            terms: self.terms.iter().map(f).collect(),
        }
    }
}

impl<T: Real> Operand<T> for Mixture<T> {
    fn modes(&self) -> usize {
        self.modes
    }

    fn map_kets<F>(&self, f: F) -> Self
    where
        F: Fn(&Ket<T>) -> Vec<(Complex<T>, Ket<T>)>,
    {
        let mut terms = Vec::with_capacity(self.terms.len());
        for d in &self.terms {
            let kets = f(&d.ket);
            let bras = f(&d.bra);
            for (ck, k) in &kets {
                for (cb, b) in &bras {
                    terms.push(Dyad {
                        coef: d.coef * ck * cb.conj(),
                        ket: k.clone(),
                        bra: b.clone(),
                    });
                }
            }
        }
        Mixture {
            modes: self.modes,
            terms,
        }
    }
}
