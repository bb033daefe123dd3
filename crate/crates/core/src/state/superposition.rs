// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;

use super::ket::Ket;
use super::{merge_tol, Operand};
use crate::error::{invalid, Error, Result};
use crate::scalar::{is_finite, Real};

/// One weighted coherent ket inside a [`Superposition`].
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub coef: Complex<T>,
    pub ket: Ket<T>,
}

/// Finite linear combination of multimode coherent states.
///
/// The kets are not orthogonal, so every norm and inner product goes through the
/// overlap (Gram) matrix. Global phases are tracked exactly; compare states with
/// [`Superposition::fidelity`] rather than coefficient equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition<T> {
    modes: usize,
    terms: Vec<Term<T>>,
}

impl<T: Real> Superposition<T> {
    pub fn new(terms: Vec<Term<T>>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| invalid("a superposition needs at least one term"))?;
        let modes = first.ket.modes();
        for t in &terms {
            if t.ket.modes() != modes {
                return Err(Error::ModeMismatch {
                    left: modes,
                    right: t.ket.modes(),
                });
            }
            if !is_finite(t.coef) {
                return Err(invalid("non-finite coefficient"));
            }
        }
        Ok(Superposition { modes, terms })
    }

    /// Builds from `(coefficient, ket)` pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Complex<T>, Ket<T>)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(coef, ket)| Term { coef, ket })
                .collect(),
        )
    }

    pub fn from_ket(ket: Ket<T>) -> Self {
        Superposition {
            modes: ket.modes(),
            terms: vec![Term {
                coef: Complex::new(T::one(), T::zero()),
                ket,
            }],
        }
    }

    pub fn coherent(beta: Complex<T>) -> Self {
        Self::from_ket(Ket::coherent(beta))
    }

    pub fn vacuum(modes: usize) -> Self {
        Self::from_ket(Ket::vacuum(modes))
    }

    #[inline]
    pub fn modes(&self) -> usize {
        self.modes
    }

    #[inline]
    pub fn terms(&self) -> &[Term<T>] {
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

    /// Largest `|beta|^2` over every ket and mode.
    pub fn max_intensity(&self) -> T {
        self.terms
            .iter()
            .map(|t| t.ket.max_intensity())
            .fold(T::zero(), T::max)
    }

    /// `Σ_jk c1_j* c2_k ⟨ket1_j|ket2_k⟩`.
    pub fn inner(&self, other: &Superposition<T>) -> Result<Complex<T>> {
        if self.modes != other.modes {
            return Err(Error::ModeMismatch {
                left: self.modes,
                right: other.modes,
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for a in &self.terms {
            for b in &other.terms {
                acc = acc + a.coef.conj() * b.coef * a.ket.overlap_unchecked(&b.ket);
            }
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> T {
        let mut acc = T::zero();
        for (j, a) in self.terms.iter().enumerate() {
            acc = acc + a.coef.norm_sqr();
            for b in &self.terms[j + 1..] {
                let z = a.coef.conj() * b.coef * a.ket.overlap_unchecked(&b.ket);
                acc = acc + z.re + z.re;
            }
        }
        acc
    }

    /// Rescales to unit norm using the exact Gram matrix.
    pub fn normalize(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if !(n2 > T::lit(1e-300).max(T::min_positive_value())) {
            return Err(Error::Degenerate);
        }
        Ok(self.scale(Complex::new(T::one() / n2.sqrt(), T::zero())))
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm_sqr() - T::one()).abs() <= tol
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Superposition {
            modes: self.modes,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef * c,
                    ket: t.ket.clone(),
                })
                .collect(),
        }
    }

    /// Sum of two states over the same modes (no merging).
    pub fn add(&self, other: &Superposition<T>) -> Result<Self> {
        if self.modes != other.modes {
            return Err(Error::ModeMismatch {
                left: self.modes,
                right: other.modes,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Superposition {
            modes: self.modes,
            terms,
        })
    }

    pub fn tensor(&self, other: &Superposition<T>) -> Self {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    coef: a.coef * b.coef,
                    ket: a.ket.tensor(&b.ket),
                });
            }
        }
        Superposition {
            modes: self.modes + other.modes,
            terms,
        }
    }

    /// Reorders (or drops) modes; `order[i]` is the source mode of output mode `i`.
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
        Ok(Superposition {
            modes: order.len(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef,
                    ket: t.ket.select(order),
                })
                .collect(),
        })
    }

    /// Merges kets equal within `ket_tol` per component, summing coefficients.
    pub fn merged(&self, ket_tol: T) -> Self {
        let mut out: Vec<Term<T>> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match out.iter_mut().find(|u| u.ket.approx_eq(&t.ket, ket_tol)) {
                Some(u) => u.coef = u.coef + t.coef,
                None => out.push(t.clone()),
            }
        }
        Superposition {
            modes: self.modes,
            terms: out,
        }
    }

    /// Merges equal kets and drops terms with `|c| <= tol * norm`.
    ///
    /// The strongest term always survives, so the result is never empty.
    pub fn prune(&self, tol: T) -> Self {
        let merged = self.merged(merge_tol());
        let norm = merged.norm_sqr().max(T::zero()).sqrt();
        let cutoff = tol * norm;
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
            .filter(|(i, t)| *i == strongest || t.coef.norm() > cutoff)
            .map(|(_, t)| t)
            .collect();
        Superposition {
            modes: self.modes,
            terms,
        }
    }

    /// Overlap matrix `G_jk = ⟨ket_j|ket_k⟩`.
    pub fn gram(&self) -> Vec<Vec<Complex<T>>> {
        self.terms
            .iter()
            .map(|a| {
                self.terms
                    .iter()
                    .map(|b| a.ket.overlap_unchecked(&b.ket))
                    .collect()
            })
            .collect()
    }

    /// `|⟨self|other⟩|²` for normalized inputs.
    pub fn fidelity(&self, other: &Superposition<T>) -> Result<T> {
        check_normalized(self)?;
        check_normalized(other)?;
        Ok(self.inner(other)?.norm_sqr())
    }
}

pub(crate) fn check_normalized<T: Real>(s: &Superposition<T>) -> Result<()> {
    let n2 = s.norm_sqr();
    if (n2 - T::one()).abs() <= T::tol(1e-8) {
        Ok(())
    } else {
        Err(Error::NotNormalized(n2.as_f64()))
    }
}

impl<T: Real> Operand<T> for Superposition<T> {
    fn modes(&self) -> usize {
        self.modes
    }

    fn map_kets<F>(&self, f: F) -> Self
    where
        F: Fn(&Ket<T>) -> Vec<(Complex<T>, Ket<T>)>,
    {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            for (c, ket) in f(&t.ket) {
                terms.push(Term {
                    coef: t.coef * c,
                    ket,
                });
            }
        }
        Superposition {
            modes: self.modes,
            terms,
        }
    }
}
