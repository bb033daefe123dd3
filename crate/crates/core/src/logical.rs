// SPDX-License-Identifier: Apache-2.0

//! Ideal single-qubit unitaries as 2×2 matrices in the logical basis.
//!
//! Conventions: `U_x(a) = exp(i a X)`, `U_z(a) = exp(i a Z)` and
//! `U_y(a) = exp(-i a Y)`. With these signs both conjugation identities
//! `U_y(φ/2) = U_x(-π/4) U_z(φ/2) U_x(π/4)` and
//! `U_x(η/2) = U_z(-π/4) U_y(η/2) U_z(π/4)` hold exactly.

use std::ops::Mul;

use num_complex::Complex;

use crate::scalar::{cplx, phase, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(m: [[Complex<T>; 2]; 2]) -> Self {
        Mat2 { m }
    }

    pub fn identity() -> Self {
        let (o, z) = (cplx(T::one(), T::zero()), cplx(T::zero(), T::zero()));
        Mat2 {
            m: [[o, z], [z, o]],
        }
    }

    pub fn pauli_x() -> Self {
        let (o, z) = (cplx(T::one(), T::zero()), cplx(T::zero(), T::zero()));
        Mat2 {
            m: [[z, o], [o, z]],
        }
    }

    pub fn pauli_y() -> Self {
        let (i, z) = (cplx(T::zero(), T::one()), cplx(T::zero(), T::zero()));
        Mat2 {
            m: [[z, -i], [i, z]],
        }
    }

    pub fn pauli_z() -> Self {
        let (o, z) = (cplx(T::one(), T::zero()), cplx(T::zero(), T::zero()));
        Mat2 {
            m: [[o, z], [z, -o]],
        }
    }

    pub fn hadamard() -> Self {
        let h = cplx(T::FRAC_1_SQRT_2(), T::zero());
        Mat2 {
            m: [[h, h], [h, -h]],
        }
    }

    /// `cos a · I + i sin a · P` for a Pauli `P`.
    fn exp_pauli(a: T, p: Self) -> Self {
        let c = cplx(a.cos(), T::zero());
        let s = cplx(T::zero(), a.sin());
        let id = Self::identity();
        let m = std::array::from_fn(|r| std::array::from_fn(|k| c * id.m[r][k] + s * p.m[r][k]));
        Mat2 { m }
    }

    pub fn u_x(a: T) -> Self {
        Self::exp_pauli(a, Self::pauli_x())
    }

    pub fn u_y(a: T) -> Self {
        Self::exp_pauli(-a, Self::pauli_y())
    }

    pub fn u_z(a: T) -> Self {
        Self::exp_pauli(a, Self::pauli_z())
    }

    /// `U_z(θ/2) U_y(φ/2) U_z(η/2)`.
    pub fn euler(theta: T, phi: T, eta: T) -> Self {
        let h = T::lit(0.5);
        Self::u_z(theta * h) * Self::u_y(phi * h) * Self::u_z(eta * h)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let mut m = self.m;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * c;
            }
        }
        Mat2 { m }
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Mat2 {
            m: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
        }
    }

    pub fn apply(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Largest entry-wise distance after removing the best global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> T {
        // phase of tr(A† B) aligns B with A in the Frobenius sense
        let mut tr = cplx(T::zero(), T::zero());
        for r in 0..2 {
            for k in 0..2 {
                tr = tr + self.m[r][k].conj() * other.m[r][k];
            }
        }
        let align = if tr.norm() > T::zero() {
            phase(-tr.arg())
        } else {
            cplx(T::one(), T::zero())
        };
        let mut worst = T::zero();
        for r in 0..2 {
            for k in 0..2 {
                worst = worst.max((self.m[r][k] - other.m[r][k] * align).norm());
            }
        }
        worst
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: Mat2<T>) -> Mat2<T> {
        let (a, b) = (self.m, rhs.m);
        let mut m = [[cplx(T::zero(), T::zero()); 2]; 2];
        for r in 0..2 {
            for k in 0..2 {
                m[r][k] = a[r][0] * b[0][k] + a[r][1] * b[1][k];
            }
        }
        Mat2 { m }
    }
}

/// `|⟨u|v⟩|² / (‖u‖² ‖v‖²)` for two logical amplitude pairs.
pub fn vector_fidelity<T: Real>(u: [Complex<T>; 2], v: [Complex<T>; 2]) -> T {
    let ip = u[0].conj() * v[0] + u[1].conj() * v[1];
    let nu = u[0].norm_sqr() + u[1].norm_sqr();
    let nv = v[0].norm_sqr() + v[1].norm_sqr();
    ip.norm_sqr() / (nu * nv)
}
