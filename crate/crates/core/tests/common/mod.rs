// SPDX-License-Identifier: Apache-2.0

//! Helpers shared by the integration tests: random inputs and optical gate
//! sequences replayed in the truncated Fock space.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use catsim::fock::FockVector;
use catsim::state::{Dyad, Ket, Mixture, Qubit, Superposition};
use catsim::Complex;
use rand::Rng;

pub mod props;

pub const N: usize = 128;

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Uniform point on the Bloch sphere.
pub fn random_qubit(rng: &mut impl Rng, alpha: f64) -> Qubit<f64> {
    let z: f64 = rng.gen_range(-1.0..1.0);
    Qubit::bloch(z.acos(), rng.gen_range(0.0..2.0 * PI), alpha).unwrap()
}

pub fn random_state(rng: &mut impl Rng, terms: usize, amp: f64) -> Superposition<f64> {
    let pairs = (0..terms).map(|_| {
        let coef = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let beta = c(rng.gen_range(-amp..amp), rng.gen_range(-amp..amp));
        (coef, Ket::coherent(beta))
    });
    Superposition::from_pairs(pairs)
        .unwrap()
        .normalize()
        .unwrap()
}

/// Single-mode optical primitive.
#[derive(Debug, Clone, Copy)]
pub enum Op {
    Displace(Complex),
    /// `exp(−i(π/2)n²)`
    Kerr,
    Parity,
}

pub fn seq_u_z(theta: f64, alpha: f64) -> Vec<Op> {
    vec![Op::Displace(c(0.0, theta / (4.0 * alpha)))]
}

pub fn seq_u_y(phi: f64, alpha: f64) -> Vec<Op> {
    let mut v = vec![Op::Kerr];
    v.extend(seq_u_z(phi, alpha));
    v.extend([Op::Parity, Op::Kerr]);
    v
}

pub fn seq_hadamard(alpha: f64) -> Vec<Op> {
    let mut v = seq_u_z(FRAC_PI_2, alpha);
    v.push(Op::Kerr);
    v.extend(seq_u_z(FRAC_PI_2, alpha));
    v
}

pub fn seq_euler(theta: f64, phi: f64, eta: f64, alpha: f64) -> Vec<Op> {
    let mut v = seq_u_z(eta, alpha);
    v.extend(seq_u_y(phi, alpha));
    v.extend(seq_u_z(theta, alpha));
    v
}

pub fn run_fock(v: &FockVector<f64>, ops: &[Op]) -> FockVector<f64> {
    ops.iter().fold(v.clone(), |v, op| match *op {
        Op::Displace(d) => v.displace(d),
        Op::Kerr => v.kerr(FRAC_PI_2),
        Op::Parity => v.phase_shift_pi(),
    })
}

/// Fidelity of the Fock-evolved input against `target`, both embedded at `N`.
pub fn fock_fidelity(input: &Superposition<f64>, ops: &[Op], target: &Superposition<f64>) -> f64 {
    let v = FockVector::from_superposition(input, N).unwrap();
    let out = run_fock(&v, ops);
    let t = FockVector::from_superposition(target, N).unwrap();
    out.fidelity(&t).unwrap()
}

/// Logical state with amplitudes `v`, exactly normalized.
pub fn logical(v: [Complex; 2], alpha: f64) -> Superposition<f64> {
    Qubit::normalized(v[0], v[1], alpha).unwrap().state()
}

/// Largest dyad coefficient of `ρ − σ` after merging equal dyads.
pub fn operator_gap(rho: &Mixture<f64>, sigma: &Mixture<f64>) -> f64 {
    let mut terms = rho.terms().to_vec();
    terms.extend(sigma.terms().iter().map(|d| Dyad {
        coef: -d.coef,
        ket: d.ket.clone(),
        bra: d.bra.clone(),
    }));
    Mixture::new(terms)
        .unwrap()
        .merged(1e-12)
        .terms()
        .iter()
        .fold(0.0, |m, d| m.max(d.coef.norm()))
}

/// `N{|A|²|tα⟩⟨tα| + |B|²|−tα⟩⟨−tα| + Γ(AB*|tα⟩⟨−tα| + h.c.)}` for the
/// logical qubit `A|α⟩ + B|−α⟩` after energy loss to transmissivity `t`.
pub fn damped_logical(q: &Qubit<f64>, t: f64, gamma: f64) -> Mixture<f64> {
    let (plus, minus) = (Ket::real(t * q.alpha), Ket::real(-t * q.alpha));
    let d = |coef, ket: &Ket<f64>, bra: &Ket<f64>| Dyad {
        coef,
        ket: ket.clone(),
        bra: bra.clone(),
    };
    Mixture::new(vec![
        d(c(q.a.norm_sqr(), 0.0), &plus, &plus),
        d(c(q.b.norm_sqr(), 0.0), &minus, &minus),
        d(q.a * q.b.conj() * gamma, &plus, &minus),
        d(q.a.conj() * q.b * gamma, &minus, &plus),
    ])
    .unwrap()
    .normalize()
    .unwrap()
}
