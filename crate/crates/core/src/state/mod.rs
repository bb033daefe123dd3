// SPDX-License-Identifier: Apache-2.0

//! Exact algebra of finite superpositions of multimode coherent states.

mod json;
mod ket;
mod mixture;
mod qubit;
mod superposition;

use num_complex::Complex;

pub use ket::Ket;
pub use mixture::{Dyad, Mixture};
pub use qubit::Qubit;
pub use superposition::{Superposition, Term};

pub(crate) use superposition::check_normalized;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Per-component tolerance under which two kets count as the same ket.
pub const KET_MERGE_TOL: f64 = 1e-14;

/// Relative coefficient cutoff applied after protocol steps.
pub const DEFAULT_PRUNE_TOL: f64 = 1e-12;

#[inline]
pub(crate) fn merge_tol<T: Real>() -> T {
    T::tol(KET_MERGE_TOL)
}

/// Anything a ket-level linear map can act on: pure superpositions map kets
/// directly, mixtures map both sides of every dyad.
pub trait Operand<T: Real>: Sized {
    fn modes(&self) -> usize;

    /// Replaces every ket `|k⟩` by `Σ c_i |k_i⟩` as returned by `f`.
    fn map_kets<F>(&self, f: F) -> Self
    where
        F: Fn(&Ket<T>) -> Vec<(Complex<T>, Ket<T>)>;

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.modes() {
            Ok(())
        } else {
            Err(Error::ModeOutOfRange {
                mode,
                modes: self.modes(),
            })
        }
    }
}

/// `⟨k1|k2⟩` for two multimode coherent kets.
pub fn overlap<T: Real>(k1: &Ket<T>, k2: &Ket<T>) -> Result<Complex<T>> {
    k1.overlap(k2)
}

/// Smallest pivot met by a pivoted `LDL^H` factorization of a Hermitian matrix.
///
/// Returns a value `>= -tol` for positive semidefinite input; a clearly negative
/// pivot certifies the matrix is indefinite.
pub fn min_pivot<T: Real>(matrix: &[Vec<Complex<T>>]) -> T {
    let n = matrix.len();
    let mut a: Vec<Vec<Complex<T>>> = matrix.to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut worst = T::infinity();
    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|x, y| {
                a[*x.1][*x.1]
                    .re
                    .partial_cmp(&a[*y.1][*y.1].re)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty");
        remaining.swap_remove(pos);
        let d = a[p][p].re;
        worst = worst.min(d);
        if d <= T::epsilon() {
            // remaining block is numerically zero (or indefinite: its diagonal bounds the answer)
            for &i in &remaining {
                worst = worst.min(a[i][i].re);
            }
            break;
        }
        for &i in &remaining {
            let l = a[i][p] / d;
            for &j in &remaining {
                let upd = l * a[p][j];
                a[i][j] = a[i][j] - upd;
            }
        }
    }
    if n == 0 {
        T::zero()
    } else {
        worst
    }
}
