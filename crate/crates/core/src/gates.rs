// SPDX-License-Identifier: Apache-2.0

//! Linear-optical and Kerr gates acting on coherent-state superpositions.
//!
//! Every gate maps a coherent ket to one ket (beam splitter, phase shifter,
//! displacement) or to two kets (the Kerr quarter map), so superpositions stay
//! closed under the whole gate set. Gates are generic over [`Operand`]: the
//! same call acts on pure states and on dyad mixtures.
//!
//! Logical rotations use `U_z(a) = exp(i a Z)`, `U_x(a) = exp(i a X)` and
//! `U_y(a) = exp(-i a Y)` (see [`crate::logical`]).

use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::scalar::{cplx, phase, Real};
use crate::state::{Ket, Operand};

/// Two-mode beam splitter with transmission `T`.
///
/// Amplitudes `(β, γ)` on `(mode_i, mode_j)` become
/// `(√T β + √(1−T) γ, √(1−T) β − √T γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter<T> {
    pub mode_i: usize,
    pub mode_j: usize,
    pub transmission: T,
}

impl<T: Real> BeamSplitter<T> {
    pub fn new(mode_i: usize, mode_j: usize, transmission: T) -> Result<Self> {
        if mode_i == mode_j {
            return Err(invalid("beam splitter needs two distinct modes"));
        }
        if !(transmission > T::zero() && transmission < T::one()) {
            return Err(invalid(format!(
                "transmission must lie in (0, 1), got {transmission}"
            )));
        }
        Ok(BeamSplitter {
            mode_i,
            mode_j,
            transmission,
        })
    }

    pub fn balanced(mode_i: usize, mode_j: usize) -> Result<Self> {
        Self::new(mode_i, mode_j, T::lit(0.5))
    }

    /// Output amplitudes for input amplitudes `(β, γ)`.
    #[inline]
    pub fn transform(&self, beta: Complex<T>, gamma: Complex<T>) -> (Complex<T>, Complex<T>) {
        let t = self.transmission.sqrt();
        let r = (T::one() - self.transmission).sqrt();
        (beta * t + gamma * r, beta * r - gamma * t)
    }
}

/// Rotation axis of a logical single-qubit gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `U_axis(half_angle)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSpec<T> {
    pub axis: Axis,
    pub half_angle: T,
}

/// Euler angles of `R(θ, φ, η) = U_z(θ/2) U_y(φ/2) U_z(η/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler<T> {
    pub theta: T,
    pub phi: T,
    pub eta: T,
}

/// How a logical gate is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Realization {
    /// The exact logical map on the `±β` coherent components (phases keyed on
    /// the sign of each amplitude's real part).
    Ideal,
    /// The optical circuit: small displacements and Kerr maps, with their
    /// finite-displacement infidelity.
    #[default]
    Optical,
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "coherent amplitude must be positive, got {alpha}"
        )))
    }
}

fn single<T: Real>(k: Ket<T>) -> Vec<(Complex<T>, Ket<T>)> {
    vec![(cplx(T::one(), T::zero()), k)]
}

pub fn beam_splitter<T: Real, S: Operand<T>>(s: &S, spec: &BeamSplitter<T>) -> Result<S> {
    s.check_mode(spec.mode_i)?;
    s.check_mode(spec.mode_j)?;
    if spec.mode_i == spec.mode_j {
        return Err(invalid("beam splitter needs two distinct modes"));
    }
    Ok(s.map_kets(|k| {
        let (b, g) = spec.transform(k.amp(spec.mode_i), k.amp(spec.mode_j));
        single(k.with_amp(spec.mode_i, b).with_amp(spec.mode_j, g))
    }))
}

/// `P(π)`: `|β⟩ → |−β⟩` on one mode (the logical NOT).
pub fn phase_shift_pi<T: Real, S: Operand<T>>(s: &S, mode: usize) -> Result<S> {
    s.check_mode(mode)?;
    Ok(s.map_kets(|k| single(k.with_amp(mode, -k.amp(mode)))))
}

/// `D(δ)|β⟩ = exp((δβ* − δ*β)/2) |β + δ⟩` on one mode.
pub fn displace<T: Real, S: Operand<T>>(s: &S, mode: usize, delta: Complex<T>) -> Result<S> {
    s.check_mode(mode)?;
    if !(delta.re.is_finite() && delta.im.is_finite()) {
        return Err(invalid("non-finite displacement"));
    }
    let half = T::lit(0.5);
    Ok(s.map_kets(|k| {
        let beta = k.amp(mode);
        let ph = ((delta * beta.conj() - delta.conj() * beta) * half).exp();
        vec![(ph, k.with_amp(mode, beta + delta))]
    }))
}

/// Displacement by mixing with a strong field `i·drive` on a beam splitter of
/// transmission `T → 1`, taken in its pure-state limit `D(i·drive·√(1−T))`.
pub fn displace_via_bs<T: Real, S: Operand<T>>(
    s: &S,
    mode: usize,
    drive: T,
    transmission: T,
) -> Result<S> {
    if !(transmission > T::zero() && transmission < T::one()) {
        return Err(invalid(format!(
            "transmission must lie in (0, 1), got {transmission}"
        )));
    }
    let amp = drive * (T::one() - transmission).sqrt();
    displace(s, mode, cplx(T::zero(), amp))
}

/// Drive field `𝓔 = θ/(4α√(1−T))` realizing `U_z(θ/2)` through a beam splitter.
pub fn rotation_drive<T: Real>(theta: T, alpha: T, transmission: T) -> T {
    theta / (T::lit(4.0) * alpha * (T::one() - transmission).sqrt())
}

/// Kerr evolution `exp(-i π/2 (a†a)²)`:
/// `|β⟩ → e^{-iπ/4}/√2 (|β⟩ + i|−β⟩)`, which is `U_x(π/4)` up to global phase.
///
/// Each ket splits in two; the unflipped branch comes first.
pub fn kerr_quarter<T: Real, S: Operand<T>>(s: &S, mode: usize) -> Result<S> {
    s.check_mode(mode)?;
    let pre = phase(-T::FRAC_PI_4()) * T::FRAC_1_SQRT_2();
    let flip = pre * cplx(T::zero(), T::one());
    Ok(s.map_kets(|k| {
        let beta = k.amp(mode);
        vec![(pre, k.clone()), (flip, k.with_amp(mode, -beta))]
    }))
}

/// `U_z(θ/2)` on a qubit of amplitude `alpha`, realized as `D(iθ/(4α))`.
pub fn u_z<T: Real, S: Operand<T>>(s: &S, mode: usize, theta: T, alpha: T) -> Result<S> {
    check_alpha(alpha)?;
    displace(s, mode, cplx(T::zero(), theta / (T::lit(4.0) * alpha)))
}

/// `U_x(±π/4)`: the Kerr map, preceded by `P(π)` for the negative sign.
///
/// `P(π)` commutes with the Kerr map, and `X·U_x(π/4) = i·U_x(−π/4)`.
pub fn u_x_quarter<T: Real, S: Operand<T>>(s: &S, mode: usize, sign: i8) -> Result<S> {
    match sign {
        1 => kerr_quarter(s, mode),
        -1 => kerr_quarter(&phase_shift_pi(s, mode)?, mode),
        _ => Err(invalid(format!("sign must be ±1, got {sign}"))),
    }
}

/// `U_y(φ/2) = U_x(−π/4) U_z(φ/2) U_x(π/4)`.
pub fn u_y<T: Real, S: Operand<T>>(s: &S, mode: usize, phi: T, alpha: T) -> Result<S> {
    check_alpha(alpha)?;
    let s = u_x_quarter(s, mode, 1)?;
    let s = u_z(&s, mode, phi, alpha)?;
    u_x_quarter(&s, mode, -1)
}

/// Hadamard `H = e^{-iπ/4} U_z(π/4) U_x(π/4) U_z(π/4)` (the global phase makes the
/// ideal limit equal `H` exactly). `alpha` is the amplitude of the incident qubit,
/// so `√2α` gives the `H^{√2}` gate and `2α` the `H²` gate.
pub fn hadamard<T: Real, S: Operand<T>>(s: &S, mode: usize, alpha: T) -> Result<S> {
    check_alpha(alpha)?;
    let quarter = T::FRAC_PI_2();
    let s = u_z(s, mode, quarter, alpha)?;
    let s = kerr_quarter(&s, mode)?;
    let s = u_z(&s, mode, quarter, alpha)?;
    Ok(global_phase(&s, phase(-T::FRAC_PI_4())))
}

/// `R(θ, φ, η) = U_z(θ/2) U_y(φ/2) U_z(η/2)`.
pub fn rotate<T: Real, S: Operand<T>>(s: &S, mode: usize, r: Euler<T>, alpha: T) -> Result<S> {
    let s = u_z(s, mode, r.eta, alpha)?;
    let s = u_y(&s, mode, r.phi, alpha)?;
    u_z(&s, mode, r.theta, alpha)
}

/// Single-axis rotation `U_axis(half_angle)`.
///
/// The x axis uses `U_x(η/2) = U_z(−π/4) U_y(η/2) U_z(π/4)`.
pub fn rotate_axis<T: Real, S: Operand<T>>(
    s: &S,
    mode: usize,
    spec: RotationSpec<T>,
    alpha: T,
) -> Result<S> {
    let full = spec.half_angle + spec.half_angle;
    match spec.axis {
        Axis::Z => u_z(s, mode, full, alpha),
        Axis::Y => u_y(s, mode, full, alpha),
        Axis::X => {
            let s = u_z(s, mode, T::FRAC_PI_2(), alpha)?;
            let s = u_y(&s, mode, full, alpha)?;
            u_z(&s, mode, -T::FRAC_PI_2(), alpha)
        }
    }
}

/// Multiplies every ket by a constant phase.
pub fn global_phase<T: Real, S: Operand<T>>(s: &S, c: Complex<T>) -> S {
    s.map_kets(|k| vec![(c, k.clone())])
}

/// Sign of the real part, with `|re| <= tol` counted as zero (vacuum-like).
fn logical_sign<T: Real>(z: Complex<T>) -> T {
    if z.re > T::tol(1e-12) {
        T::one()
    } else if z.re < -T::tol(1e-12) {
        -T::one()
    } else {
        T::zero()
    }
}

/// Ideal `U_z(half_angle)`: `|±β⟩ → e^{±i·half_angle}|±β⟩`, vacuum untouched.
pub fn ideal_u_z<T: Real, S: Operand<T>>(s: &S, mode: usize, half_angle: T) -> Result<S> {
    s.check_mode(mode)?;
    Ok(s.map_kets(|k| vec![(phase(half_angle * logical_sign(k.amp(mode))), k.clone())]))
}

/// Ideal Pauli Z: `|−β⟩ → −|−β⟩`.
pub fn ideal_z<T: Real, S: Operand<T>>(s: &S, mode: usize) -> Result<S> {
    s.check_mode(mode)?;
    Ok(s.map_kets(|k| {
        let c = if logical_sign(k.amp(mode)) < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        vec![(cplx(c, T::zero()), k.clone())]
    }))
}

/// Ideal Hadamard built from the exact Kerr map and ideal z-phases.
///
/// Maps `|±β⟩ → (|β⟩ ± |−β⟩)/√2` on the coherent labels. That is unitary in
/// the orthogonalized logical basis only; renormalize afterwards.
pub fn ideal_hadamard<T: Real, S: Operand<T>>(s: &S, mode: usize) -> Result<S> {
    let s = ideal_u_z(s, mode, T::FRAC_PI_4())?;
    let s = kerr_quarter(&s, mode)?;
    let s = ideal_u_z(&s, mode, T::FRAC_PI_4())?;
    Ok(global_phase(&s, phase(-T::FRAC_PI_4())))
}

/// Hadamard in the requested realization; `alpha` is the incident amplitude.
pub fn hadamard_as<T: Real, S: Operand<T>>(
    s: &S,
    mode: usize,
    alpha: T,
    how: Realization,
) -> Result<S> {
    match how {
        Realization::Ideal => ideal_hadamard(s, mode),
        Realization::Optical => hadamard(s, mode, alpha),
    }
}

/// Pauli Z in the requested realization. The optical form is `D(iπ/(4α))`,
/// i.e. `U_z(π/2) = iZ`.
pub fn pauli_z_as<T: Real, S: Operand<T>>(
    s: &S,
    mode: usize,
    alpha: T,
    how: Realization,
) -> Result<S> {
    match how {
        Realization::Ideal => ideal_z(s, mode),
        Realization::Optical => u_z(s, mode, T::PI(), alpha),
    }
}

/// Pauli X is `P(π)` in both realizations.
pub fn pauli_x<T: Real, S: Operand<T>>(s: &S, mode: usize) -> Result<S> {
    phase_shift_pi(s, mode)
}
