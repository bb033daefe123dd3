// SPDX-License-Identifier: Apache-2.0

//! Truncated Fock-space reference simulator.
//!
//! Works on number-state amplitudes directly and shares no formulas with the
//! coherent-state algebra: gates are exponentials of their ladder-operator
//! generators, detection is explicit binomial thinning of `|c_n|²`. Used to
//! cross-check the coherent representation.

use num_complex::Complex;

use crate::detection::{poisson_tail, required_truncation, CountDistribution, TAIL_BOUND};
use crate::error::{invalid, Error, Result};
use crate::scalar::{phase, Real};
use crate::state::Superposition;

type C<T> = Complex<T>;

fn zero<T: Real>() -> C<T> {
    C::new(T::zero(), T::zero())
}

fn check_tail<T: Real>(intensity: T, truncation: usize) -> Result<()> {
    let bound = T::lit(TAIL_BOUND);
    if poisson_tail(intensity, truncation) < bound {
        Ok(())
    } else {
        Err(Error::Truncation {
            truncation,
            required: required_truncation(intensity, bound),
        })
    }
}

/// `exp(G) v` for an anti-Hermitian generator, by Taylor series over
/// `steps` equal substeps. `apply` writes `G x` into its second argument.
fn expm_action<T: Real>(
    v: &[C<T>],
    steps: usize,
    apply: impl Fn(&[C<T>], &mut [C<T>]),
) -> Vec<C<T>> {
    let steps = steps.max(1);
    let inv = T::one() / T::lit(steps as f64);
    let mut cur = v.to_vec();
    let mut term = vec![zero(); v.len()];
    let mut next = vec![zero(); v.len()];
    let tiny = T::epsilon() * T::lit(1e-2);
    for _ in 0..steps {
        term.copy_from_slice(&cur);
        let scale = norm(&cur);
        for k in 1..200 {
            apply(&term, &mut next);
            let f = inv / T::lit(k as f64);
            for (t, n) in term.iter_mut().zip(&next) {
                *t = *n * f;
            }
            for (c, t) in cur.iter_mut().zip(&term) {
                *c = *c + *t;
            }
            if norm(&term) <= tiny * scale {
                break;
            }
        }
    }
    cur
}

fn norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt()
}

/// Binomial thinning matrix `B[n][m] = C(n,m) d^m (1-d)^(n-m)`, `n, m < levels`.
pub fn thinning_matrix<T: Real>(efficiency: T, levels: usize) -> Vec<Vec<T>> {
    let mut b = vec![vec![T::zero(); levels]; levels];
    if levels == 0 {
        return b;
    }
    b[0][0] = T::one();
    let keep = T::one() - efficiency;
    for n in 1..levels {
        for m in 0..=n {
            let stay = b[n - 1][m] * keep;
            let hit = if m > 0 {
                b[n - 1][m - 1] * efficiency
            } else {
                T::zero()
            };
            b[n][m] = stay + hit;
        }
    }
    b
}

/// Single-mode state vector `Σ_{n<N} c_n |n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T> {
    coefs: Vec<C<T>>,
}

impl<T: Real> FockVector<T> {
    pub fn new(coefs: Vec<C<T>>) -> Result<Self> {
        if coefs.is_empty() {
            return Err(invalid("Fock vector needs at least one level"));
        }
        Ok(FockVector { coefs })
    }

    pub fn vacuum(truncation: usize) -> Result<Self> {
        Self::number(0, truncation)
    }

    pub fn number(n: usize, truncation: usize) -> Result<Self> {
        if n >= truncation {
            return Err(invalid(format!(
                "|{n}⟩ lies outside truncation {truncation}"
            )));
        }
        let mut coefs = vec![zero(); truncation];
        coefs[n] = C::new(T::one(), T::zero());
        Ok(FockVector { coefs })
    }

    /// `|β⟩` from its number-state expansion; fails if the truncation cuts
    /// more than the allowed Poisson tail.
    pub fn coherent(beta: C<T>, truncation: usize) -> Result<Self> {
        check_tail(beta.norm_sqr(), truncation)?;
        let mut coefs = Vec::with_capacity(truncation);
        let mut c = C::new((-beta.norm_sqr() * T::lit(0.5)).exp(), T::zero());
        for n in 0..truncation {
            if n > 0 {
                c = c * beta / T::lit(n as f64).sqrt();
            }
            coefs.push(c);
        }
        Ok(FockVector { coefs })
    }

    /// Embeds a single-mode coherent superposition.
    pub fn from_superposition(s: &Superposition<T>, truncation: usize) -> Result<Self> {
        if s.modes() != 1 {
            return Err(Error::ModeMismatch {
                left: 1,
                right: s.modes(),
            });
        }
        let mut coefs = vec![zero(); truncation];
        for t in s.terms() {
            let v = Self::coherent(t.ket.amp(0), truncation)?;
            for (a, b) in coefs.iter_mut().zip(v.coefs) {
                *a = *a + t.coef * b;
            }
        }
        Ok(FockVector { coefs })
    }

    pub fn truncation(&self) -> usize {
        self.coefs.len()
    }

    pub fn coefs(&self) -> &[C<T>] {
        &self.coefs
    }

    pub fn norm_sqr(&self) -> T {
        self.coefs.iter().fold(T::zero(), |a, z| a + z.norm_sqr())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.truncation() != other.truncation() {
            return Err(invalid("Fock vectors have different truncations"));
        }
        Ok(self
            .coefs
            .iter()
            .zip(&other.coefs)
            .fold(zero(), |a, (x, y)| a + x.conj() * y))
    }

    /// `|⟨u|v⟩|² / (‖u‖²‖v‖²)`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr() / (self.norm_sqr() * other.norm_sqr()))
    }

    /// `D(δ) = exp(δa† − δ*a)`.
    pub fn displace(&self, delta: C<T>) -> Self {
        let n = self.truncation();
        let sq: Vec<T> = (0..=n).map(|k| T::lit(k as f64).sqrt()).collect();
        let bound = delta.norm() * T::lit(2.0) * sq[n];
        let steps = bound.ceil().to_usize().unwrap_or(1);
        let coefs = expm_action(&self.coefs, steps, |x, out| {
            for k in 0..n {
                let up = if k > 0 {
                    delta * x[k - 1] * sq[k]
                } else {
                    zero()
                };
                let down = if k + 1 < n {
                    delta.conj() * x[k + 1] * sq[k + 1]
                } else {
                    zero()
                };
                out[k] = up - down;
            }
        });
        FockVector { coefs }
    }

    /// `exp(−iθ n²)`.
    pub fn kerr(&self, theta: T) -> Self {
        let coefs = self
            .coefs
            .iter()
            .enumerate()
            .map(|(k, c)| *c * phase(-theta * T::lit((k * k) as f64)))
            .collect();
        FockVector { coefs }
    }

    /// `exp(iπ n)`.
    pub fn phase_shift_pi(&self) -> Self {
        let coefs = self
            .coefs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -*c } else { *c })
            .collect();
        FockVector { coefs }
    }

    /// Distribution of detected counts at efficiency `d`.
    pub fn detect(&self, efficiency: T) -> Vec<T> {
        let n = self.truncation();
        let b = thinning_matrix(efficiency, n);
        let mut out = vec![T::zero(); n];
        for (k, c) in self.coefs.iter().enumerate() {
            let p = c.norm_sqr();
            for m in 0..=k {
                out[m] = out[m] + p * b[k][m];
            }
        }
        out
    }
}

/// Two-mode amplitudes `c[n1 · N + n2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFock<T> {
    truncation: usize,
    coefs: Vec<C<T>>,
}

impl<T: Real> TwoModeFock<T> {
    pub fn from_product(a: &FockVector<T>, b: &FockVector<T>) -> Result<Self> {
        let n = a.truncation();
        if b.truncation() != n {
            return Err(invalid("Fock vectors have different truncations"));
        }
        let mut coefs = Vec::with_capacity(n * n);
        for x in &a.coefs {
            for y in &b.coefs {
                coefs.push(*x * y);
            }
        }
        Ok(TwoModeFock {
            truncation: n,
            coefs,
        })
    }

    /// Embeds a two-mode coherent superposition.
    pub fn from_superposition(s: &Superposition<T>, truncation: usize) -> Result<Self> {
        if s.modes() != 2 {
            return Err(Error::ModeMismatch {
                left: 2,
                right: s.modes(),
            });
        }
        let mut coefs = vec![zero(); truncation * truncation];
        for t in s.terms() {
            let a = FockVector::coherent(t.ket.amp(0), truncation)?;
            let b = FockVector::coherent(t.ket.amp(1), truncation)?;
            let p = Self::from_product(&a, &b)?;
            for (x, y) in coefs.iter_mut().zip(p.coefs) {
                *x = *x + t.coef * y;
            }
        }
        Ok(TwoModeFock { truncation, coefs })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coef(&self, n1: usize, n2: usize) -> C<T> {
        self.coefs[n1 * self.truncation + n2]
    }

    pub fn norm_sqr(&self) -> T {
        self.coefs.iter().fold(T::zero(), |a, z| a + z.norm_sqr())
    }

    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.truncation != other.truncation {
            return Err(invalid("Fock states have different truncations"));
        }
        Ok(self
            .coefs
            .iter()
            .zip(&other.coefs)
            .fold(zero(), |a, (x, y)| a + x.conj() * y))
    }

    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr() / (self.norm_sqr() * other.norm_sqr()))
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> Result<T> {
        if self.truncation != other.truncation {
            return Err(invalid("Fock states have different truncations"));
        }
        Ok(self
            .coefs
            .iter()
            .zip(&other.coefs)
            .fold(T::zero(), |a, (x, y)| a + (*x - *y).norm_sqr())
            .sqrt())
    }

    /// Applies a single-mode operation to `mode` (0 or 1).
    pub fn on_mode(
        &self,
        mode: usize,
        f: impl Fn(&FockVector<T>) -> FockVector<T>,
    ) -> Result<Self> {
        let n = self.truncation;
        let mut out = self.clone();
        match mode {
            0 => {
                for n2 in 0..n {
                    let col = FockVector {
                        coefs: (0..n).map(|n1| self.coef(n1, n2)).collect(),
                    };
                    for (n1, c) in f(&col).coefs.into_iter().enumerate() {
                        out.coefs[n1 * n + n2] = c;
                    }
                }
            }
            1 => {
                for n1 in 0..n {
                    let row = FockVector {
                        coefs: self.coefs[n1 * n..(n1 + 1) * n].to_vec(),
                    };
                    out.coefs[n1 * n..(n1 + 1) * n].copy_from_slice(&f(&row).coefs);
                }
            }
            _ => return Err(Error::ModeOutOfRange { mode, modes: 2 }),
        }
        Ok(out)
    }

    /// Beam splitter with amplitude transmission `√T`, matching
    /// `(β, γ) → (√T β + √(1−T) γ, √(1−T) β − √T γ)`.
    ///
    /// Built as `exp(θ(a†b − ab†))`, `cos θ = √T`, followed by `(−1)^{n_b}`.
    /// The generator conserves total photon number, so each sector
    /// `n1 + n2 = S` is evolved on its own. Sectors with `S >= N` are cut by
    /// the grid; their weight must be below the tail bound.
    pub fn beam_splitter(&self, transmission: T) -> Result<Self> {
        if !(transmission >= T::zero() && transmission <= T::one()) {
            return Err(invalid("transmission must lie in [0, 1]"));
        }
        let n = self.truncation;
        let mut cut = T::zero();
        for n1 in 0..n {
            for n2 in (n - n1)..n {
                cut = cut + self.coef(n1, n2).norm_sqr();
            }
        }
        if cut >= T::lit(TAIL_BOUND) {
            return Err(Error::Truncation {
                truncation: n,
                required: required_for_sector_weight(self),
            });
        }
        let theta = (T::one() - transmission).sqrt().atan2(transmission.sqrt());
        let sq: Vec<T> = (0..=n).map(|k| T::lit(k as f64).sqrt()).collect();
        let mut out = vec![zero(); n * n];
        for s in 0..n {
            let v: Vec<C<T>> = (0..=s).map(|k| self.coef(k, s - k)).collect();
            let steps = (theta * T::lit(s as f64)).ceil().to_usize().unwrap_or(1);
            let w = expm_action(&v, steps, |x, o| {
                for (k, slot) in o.iter_mut().enumerate() {
                    // a†b feeds (k, s−k) from (k−1, s−k+1); ab† from (k+1, s−k−1)
                    let gain = if k > 0 {
                        x[k - 1] * (sq[k] * sq[s - k + 1])
                    } else {
                        zero()
                    };
                    let loss = if k < s {
                        x[k + 1] * (sq[k + 1] * sq[s - k])
                    } else {
                        zero()
                    };
                    *slot = (gain - loss) * theta;
                }
            });
            for (k, c) in w.into_iter().enumerate() {
                let sign = if (s - k) % 2 == 1 {
                    -T::one()
                } else {
                    T::one()
                };
                out[k * n + (s - k)] = c * sign;
            }
        }
        Ok(TwoModeFock {
            truncation: n,
            coefs: out,
        })
    }

    /// Joint distribution of detected counts, both detectors at efficiency `d`.
    pub fn detect(&self, efficiency: T) -> CountDistribution<T> {
        let n = self.truncation;
        let b = thinning_matrix(efficiency, n);
        let p: Vec<T> = self.coefs.iter().map(|z| z.norm_sqr()).collect();
        // thin mode 0
        let mut q = vec![T::zero(); n * n];
        for n1 in 0..n {
            for m1 in 0..=n1 {
                let w = b[n1][m1];
                if w == T::zero() {
                    continue;
                }
                for n2 in 0..n {
                    q[m1 * n + n2] = q[m1 * n + n2] + w * p[n1 * n + n2];
                }
            }
        }
        // thin mode 1
        let mut r = vec![T::zero(); n * n];
        for m1 in 0..n {
            for n2 in 0..n {
                let x = q[m1 * n + n2];
                if x == T::zero() {
                    continue;
                }
                for m2 in 0..=n2 {
                    r[m1 * n + m2] = r[m1 * n + m2] + x * b[n2][m2];
                }
            }
        }
        CountDistribution::from_raw(2, n, r)
    }
}

/// Smallest grid whose complete sectors hold all but the tail bound of `v`'s
/// total photon number, estimated from the mean total photon number.
fn required_for_sector_weight<T: Real>(v: &TwoModeFock<T>) -> usize {
    let n = v.truncation;
    let mut mean = T::zero();
    for n1 in 0..n {
        for n2 in 0..n {
            mean = mean + v.coef(n1, n2).norm_sqr() * T::lit((n1 + n2) as f64);
        }
    }
    required_truncation(mean / v.norm_sqr(), T::lit(TAIL_BOUND)).max(n + 1)
}

pub fn fock_displace<T: Real>(v: &FockVector<T>, delta: C<T>) -> FockVector<T> {
    v.displace(delta)
}

pub fn fock_kerr<T: Real>(v: &FockVector<T>, theta: T) -> FockVector<T> {
    v.kerr(theta)
}

pub fn fock_beam_splitter<T: Real>(v: &TwoModeFock<T>, transmission: T) -> Result<TwoModeFock<T>> {
    v.beam_splitter(transmission)
}

/// `(P(count <= threshold), count distribution)`.
pub fn fock_detect<T: Real>(v: &FockVector<T>, efficiency: T, threshold: usize) -> (T, Vec<T>) {
    let dist = v.detect(efficiency);
    let low = dist
        .iter()
        .take(threshold + 1)
        .fold(T::zero(), |a, &b| a + b);
    (low, dist)
}

pub fn coherent_to_fock<T: Real>(beta: C<T>, truncation: usize) -> Result<FockVector<T>> {
    FockVector::coherent(beta, truncation)
}
