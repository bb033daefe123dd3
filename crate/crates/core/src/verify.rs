// SPDX-License-Identifier: Apache-2.0

//! Equivalence checks of the coherent-state algebra against the Fock oracle.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::detection::{photon_count_distribution, Detector};
use crate::error::Result;
use crate::fock::{FockVector, TwoModeFock};
use crate::gates::{
    beam_splitter, displace, hadamard, kerr_quarter, phase_shift_pi, u_x_quarter, BeamSplitter,
};
use crate::sampling::rng_from_seed;
use crate::scalar::phase;
use crate::state::{Ket, Superposition};

/// Suite parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Largest coherent amplitude drawn for random states.
    pub alpha_max: f64,
    pub truncation: usize,
    /// Random states per check.
    pub samples: usize,
    pub seed: u64,
    /// Largest deviation a check may show.
    pub bound: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            alpha_max: 3.5,
            truncation: crate::detection::DEFAULT_TRUNCATION,
            samples: 50,
            seed: 0,
            bound: 1e-8,
        }
    }
}

/// Worst deviation seen by one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub max_deviation: f64,
    pub bound: f64,
    pub passed: bool,
}

/// Fidelity of `exp(−iθn²)|α⟩` to `e^{−iπ/4}(|α⟩ + i|−α⟩)/√2` per candidate θ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KerrPinning {
    pub alpha: f64,
    pub candidates: Vec<(f64, f64)>,
    /// The candidate reproducing the map, if any.
    pub pinned: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub checks: Vec<CheckReport>,
    pub kerr: KerrPinning,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.kerr.pinned.is_some()
    }
}

type C = Complex<f64>;

fn random_amp<R: Rng>(rng: &mut R, radius: f64) -> C {
    let r = radius * rng.gen::<f64>().sqrt();
    C::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

/// One or two terms, amplitudes within `radius`, normalized.
fn random_state<R: Rng>(rng: &mut R, modes: usize, radius: f64) -> Result<Superposition<f64>> {
    let terms = rng.gen_range(1..=2);
    let pairs: Vec<(C, Ket<f64>)> = (0..terms)
        .map(|_| {
            let amps = (0..modes).map(|_| random_amp(rng, radius)).collect();
            Ok((random_amp(rng, 1.0) + C::new(0.2, 0.0), Ket::new(amps)?))
        })
        .collect::<Result<_>>()?;
    Superposition::from_pairs(pairs)?.normalize()
}

/// `max(1 − F, ‖u − v‖)`: sensitive to global phase as well as overlap.
fn deviation(u: &FockVector<f64>, v: &FockVector<f64>) -> Result<f64> {
    let f = u.fidelity(v)?;
    let dist: f64 = u
        .coefs()
        .iter()
        .zip(v.coefs())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((1.0 - f).max(dist))
}

fn deviation2(u: &TwoModeFock<f64>, v: &TwoModeFock<f64>) -> Result<f64> {
    let f = u.fidelity(v)?;
    Ok((1.0 - f).max(u.distance(v)?))
}

struct Suite<'a> {
    cfg: &'a OracleConfig,
    checks: Vec<CheckReport>,
}

impl Suite<'_> {
    fn record(&mut self, name: &str, worst: f64) {
        self.checks.push(CheckReport {
            name: name.to_string(),
            max_deviation: worst,
            bound: self.cfg.bound,
            passed: worst <= self.cfg.bound,
        });
    }

    /// Single-mode gate `g` against its Fock counterpart `h`.
    fn single<R: Rng>(
        &mut self,
        rng: &mut R,
        name: &str,
        g: impl Fn(&Superposition<f64>) -> Result<Superposition<f64>>,
        h: impl Fn(&FockVector<f64>) -> FockVector<f64>,
    ) -> Result<()> {
        let n = self.cfg.truncation;
        let mut worst = 0.0f64;
        for _ in 0..self.cfg.samples {
            let s = random_state(rng, 1, self.cfg.alpha_max)?;
            let out = FockVector::from_superposition(&g(&s)?, n)?;
            let oracle = h(&FockVector::from_superposition(&s, n)?);
            worst = worst.max(deviation(&out, &oracle)?);
        }
        self.record(name, worst);
        Ok(())
    }
}

/// Runs every check. Fails early (with [`crate::Error::Truncation`]) when the
/// truncation cannot hold the amplitudes involved.
pub fn run_oracle_suite(cfg: &OracleConfig) -> Result<OracleReport> {
    let mut rng = rng_from_seed(cfg.seed);
    let n = cfg.truncation;
    let mut suite = Suite {
        cfg,
        checks: Vec::new(),
    };

    // inner products
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples {
        let a = random_state(&mut rng, 1, cfg.alpha_max)?;
        let b = random_state(&mut rng, 1, cfg.alpha_max)?;
        let fa = FockVector::from_superposition(&a, n)?;
        let fb = FockVector::from_superposition(&b, n)?;
        worst = worst.max((a.inner(&b)? - fa.inner(&fb)?).norm());
    }
    suite.record("inner_product", worst);

    let d = random_amp(&mut rng, 0.5);
    suite.single(
        &mut rng,
        "displace",
        |s| displace(s, 0, d),
        |v| v.displace(d),
    )?;
    suite.single(
        &mut rng,
        "phase_shift_pi",
        |s| phase_shift_pi(s, 0),
        |v| v.phase_shift_pi(),
    )?;
    suite.single(
        &mut rng,
        "kerr_quarter",
        |s| kerr_quarter(s, 0),
        |v| v.kerr(FRAC_PI_2),
    )?;
    suite.single(
        &mut rng,
        "u_x_minus_quarter",
        |s| u_x_quarter(s, 0, -1),
        |v| v.phase_shift_pi().kerr(FRAC_PI_2),
    )?;
    let alpha = cfg.alpha_max.min(3.0);
    let eps = PI / (8.0 * alpha);
    suite.single(
        &mut rng,
        "hadamard",
        |s| hadamard(s, 0, alpha),
        |v| {
            let w = v
                .displace(C::new(0.0, eps))
                .kerr(FRAC_PI_2)
                .displace(C::new(0.0, eps));
            let ph = phase(-FRAC_PI_4);
            FockVector::new(w.coefs().iter().map(|c| c * ph).collect()).expect("non-empty")
        },
    )?;

    // displacement phase ⟨α+iε|D(iε)|α⟩
    let (a0, e0) = (C::new(alpha, 0.0), C::new(0.0, 0.26));
    let moved = displace(&Superposition::coherent(a0), 0, e0)?;
    let coherent_phase = moved.terms()[0].coef;
    let fock_phase =
        FockVector::coherent(a0 + e0, n)?.inner(&FockVector::coherent(a0, n)?.displace(e0))?;
    suite.record("displacement_phase", (coherent_phase - fock_phase).norm());

    // beam splitter on two-mode states
    let mut worst = 0.0f64;
    let radius = cfg.alpha_max / 2f64.sqrt();
    for _ in 0..cfg.samples {
        let s = random_state(&mut rng, 2, radius)?;
        let t = rng.gen_range(0.05..0.95);
        let spec = BeamSplitter::new(0, 1, t)?;
        let out = TwoModeFock::from_superposition(&beam_splitter(&s, &spec)?, n)?;
        let oracle = TwoModeFock::from_superposition(&s, n)?.beam_splitter(t)?;
        worst = worst.max(deviation2(&out, &oracle)?);
    }
    suite.record("beam_splitter", worst);

    // single-mode count statistics
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples {
        let s = random_state(&mut rng, 1, cfg.alpha_max)?;
        let d = rng.gen_range(0.0..=1.0);
        let det = Detector::new(d, 0, n)?;
        let exact = photon_count_distribution(&s, &det)?;
        let oracle = FockVector::from_superposition(&s, n)?.detect(d);
        let tv: f64 = 0.5
            * (0..n)
                .map(|m| (exact.get(&[m]) - oracle[m]).abs())
                .sum::<f64>();
        worst = worst.max(tv);
    }
    suite.record("count_distribution", worst);

    // readout configuration: qubit ⊗ |α⟩ through a 50-50 splitter, joint counts
    let mut worst = 0.0f64;
    for _ in 0..cfg.samples.min(20) {
        let a = rng.gen_range(1.0..=cfg.alpha_max);
        let q =
            crate::state::Qubit::bloch(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI), a)?
                .state();
        let joint = q.tensor(&Superposition::coherent(C::new(a, 0.0)));
        let d = rng.gen_range(0.5..=1.0);
        let det = Detector::new(d, 0, n)?;
        let spec = BeamSplitter::balanced(0, 1)?;
        let exact = photon_count_distribution(&beam_splitter(&joint, &spec)?, &det)?;
        let oracle = TwoModeFock::from_superposition(&joint, n)?
            .beam_splitter(0.5)?
            .detect(d);
        worst = worst.max(exact.total_variation(&oracle)?);
    }
    suite.record("readout_counts", worst);

    let kerr = kerr_pinning(3.0, n)?;
    Ok(OracleReport {
        checks: suite.checks,
        kerr,
    })
}

/// Finds which θ in `{π/2, π}` turns `|α⟩` into the quarter-Kerr cat.
pub fn kerr_pinning(alpha: f64, truncation: usize) -> Result<KerrPinning> {
    let beta = C::new(alpha, 0.0);
    let target = Superposition::from_pairs([
        (C::new(1.0, 0.0), Ket::coherent(beta)),
        (C::new(0.0, 1.0), Ket::coherent(-beta)),
    ])?
    .scale(phase(-FRAC_PI_4) / 2f64.sqrt());
    let target = FockVector::from_superposition(&target, truncation)?;
    let start = FockVector::coherent(beta, truncation)?;
    let candidates: Vec<(f64, f64)> = [FRAC_PI_2, PI]
        .iter()
        .map(|&theta| Ok((theta, start.kerr(theta).fidelity(&target)?)))
        .collect::<Result<_>>()?;
    let pinned = candidates
        .iter()
        .find(|(_, f)| (1.0 - f).abs() <= 1e-9)
        .map(|(t, _)| *t);
    Ok(KerrPinning {
        alpha,
        candidates,
        pinned,
    })
}
