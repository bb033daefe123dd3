// SPDX-License-Identifier: Apache-2.0

//! Randomized invariants driven by proptest with a fixed seed, so the same
//! cases run under the property tests and under the acceptance target.

use std::cell::Cell;
use std::f64::consts::PI;

use catsim::detection::{readout, Detector};
use catsim::gates::*;
use catsim::state::{Ket, Qubit, Superposition};
use catsim::Complex;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const SEEDS: [u64; 3] = [0, 1, 2];

const ALPHA: f64 = 3.0;

fn runner(seed: u64, cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(seed),
        ..Config::default()
    })
}

fn check<V: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<V>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn amp(radius: f64) -> impl Strategy<Value = Complex> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| Complex::new(re, im))
}

/// Unnormalized superposition of 1 to 3 coherent kets on `modes` modes.
fn state(modes: usize, radius: f64) -> impl Strategy<Value = Superposition<f64>> {
    prop::collection::vec((amp(1.0), prop::collection::vec(amp(radius), modes)), 1..=3).prop_map(
        |terms| {
            Superposition::from_pairs(
                terms
                    .into_iter()
                    .map(|(c, amps)| (c, Ket::new(amps).unwrap())),
            )
            .unwrap()
        },
    )
}

fn qubit() -> impl Strategy<Value = Qubit<f64>> {
    (-1.0f64..1.0, 0.0..2.0 * PI).prop_map(|(z, phi)| Qubit::bloch(z.acos(), phi, ALPHA).unwrap())
}

fn close(a: f64, b: f64, tol: f64) -> Result<(), TestCaseError> {
    prop_assert!(
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0),
        "{} vs {}",
        a,
        b
    );
    Ok(())
}

/// Every single-mode gate keeps `⟨ψ|ψ⟩`.
pub fn norm_preservation(seed: u64) -> Result<(), String> {
    check(
        runner(seed, 64).run(&(state(1, 3.0), amp(1.0), -PI..PI), |(s, d, theta)| {
            let n = s.norm_sqr();
            let ok = |out: catsim::Result<Superposition<f64>>| -> Result<(), TestCaseError> {
                close(
                    out.map_err(|e| TestCaseError::fail(e.to_string()))?
                        .norm_sqr(),
                    n,
                    1e-10,
                )
            };
            ok(displace(&s, 0, d))?;
            ok(phase_shift_pi(&s, 0))?;
            ok(kerr_quarter(&s, 0))?;
            ok(u_z(&s, 0, theta, ALPHA))?;
            ok(u_y(&s, 0, theta, ALPHA))?;
            ok(hadamard(&s, 0, ALPHA))?;
            Ok(())
        }),
    )
}

/// The beam splitter keeps every inner product.
pub fn beam_splitter_unitarity(seed: u64) -> Result<(), String> {
    check(runner(seed, 64).run(
        &(state(2, 3.0), state(2, 3.0), 0.0..=1.0f64),
        |(s, t, tr)| {
            let bs = BeamSplitter::new(0, 1, tr).unwrap();
            let before = s.inner(&t).unwrap();
            let after = beam_splitter(&s, &bs)
                .unwrap()
                .inner(&beam_splitter(&t, &bs).unwrap())
                .unwrap();
            prop_assert!((before - after).norm() <= 1e-10 * before.norm().max(1.0));
            Ok(())
        },
    ))
}

/// `D(a)D(b) = e^{(ab* − a*b)/2} D(a + b)`.
pub fn displacement_composition(seed: u64) -> Result<(), String> {
    check(
        runner(seed, 64).run(&(state(1, 2.5), amp(1.5), amp(1.5)), |(s, a, b)| {
            let two = displace(&displace(&s, 0, b).unwrap(), 0, a).unwrap();
            let ph = ((a * b.conj() - a.conj() * b) * 0.5).exp();
            let one = displace(&s, 0, a + b).unwrap().scale(ph);
            prop_assert_eq!(two.len(), one.len());
            for (x, y) in two.terms().iter().zip(one.terms()) {
                prop_assert!((x.coef - y.coef).norm() <= 1e-12 * x.coef.norm().max(1.0));
                prop_assert!((x.ket.amp(0) - y.ket.amp(0)).norm() <= 1e-12);
            }
            Ok(())
        }),
    )
}

/// Two quarter-Kerr maps flip `|β⟩ → |−β⟩`, which is the logical NOT.
pub fn kerr_squared_is_not(seed: u64) -> Result<(), String> {
    check(runner(seed, 64).run(&(state(1, 3.0), qubit()), |(s, q)| {
        let twice = kerr_quarter(&kerr_quarter(&s, 0).unwrap(), 0).unwrap();
        let flipped = phase_shift_pi(&s, 0).unwrap();
        let n = s.norm_sqr();
        close(twice.inner(&flipped).unwrap().norm(), n, 1e-10)?;

        let out = kerr_quarter(&kerr_quarter(&q.state(), 0).unwrap(), 0).unwrap();
        let not = Qubit::new(q.b, q.a, ALPHA).unwrap().state();
        close(out.fidelity(&not).unwrap(), 1.0, 1e-12)?;
        Ok(())
    }))
}

/// `v† G v ≥ 0` for the Gram matrix of any set of coherent kets.
pub fn gram_psd(seed: u64) -> Result<(), String> {
    let strat = prop::collection::vec((amp(3.0), amp(1.0)), 1..=8);
    check(runner(seed, 64).run(&strat, |pairs| {
        let s = Superposition::from_pairs(
            pairs
                .iter()
                .map(|(b, _)| (Complex::new(1.0, 0.0), Ket::coherent(*b))),
        )
        .unwrap();
        let g = s.gram();
        let mut q = Complex::new(0.0, 0.0);
        for (i, (_, vi)) in pairs.iter().enumerate() {
            for (j, (_, vj)) in pairs.iter().enumerate() {
                q += vi.conj() * g[i][j] * vj;
            }
        }
        let v2: f64 = pairs.iter().map(|(_, v)| v.norm_sqr()).sum();
        prop_assert!(q.re >= -1e-12 * v2, "{}", q.re);
        prop_assert!(q.im.abs() <= 1e-12 * v2);
        for (i, row) in g.iter().enumerate() {
            prop_assert!((row[i].re - 1.0).abs() < 1e-14);
            for (j, x) in row.iter().enumerate() {
                prop_assert!((*x - g[j][i].conj()).norm() < 1e-14);
                prop_assert!(x.norm() <= 1.0 + 1e-14);
            }
        }
        Ok(())
    }))
}

/// Sampled readout counts against the exact distribution: each outcome of
/// each case within 5σ, and the pooled `ZERO` count within 3σ.
pub fn monte_carlo(seed: u64) -> Result<(), String> {
    const SHOTS: usize = 20_000;
    let dev = Cell::new(0.0f64);
    let var = Cell::new(0.0f64);
    let strat = (qubit(), 0.5f64..=1.0, any::<u64>());
    check(runner(seed, 16).run(&strat, |(q, d, sample_seed)| {
        let dist = readout(&q.state(), ALPHA, &Detector::with_efficiency(d).unwrap()).unwrap();
        let cat = dist.to_categorical();
        let counts = cat.sample_counts(&mut catsim::sampling::rng_from_seed(sample_seed), SHOTS);
        let n = SHOTS as f64;
        for ((_, p), k) in cat.entries().iter().zip(&counts) {
            let sigma = (n * p * (1.0 - p)).sqrt();
            prop_assert!(
                (*k as f64 - n * p).abs() <= 5.0 * sigma + 1.0,
                "{} vs {}",
                k,
                n * p
            );
        }
        dev.set(dev.get() + counts[0] as f64 - n * cat.entries()[0].1);
        var.set(var.get() + n * cat.entries()[0].1 * (1.0 - cat.entries()[0].1));
        Ok(())
    }))?;
    let z = dev.get() / var.get().sqrt();
    if z.abs() <= 3.0 {
        Ok(())
    } else {
        Err(format!("pooled deviation {z:.2}σ"))
    }
}

pub type Suite = fn(u64) -> Result<(), String>;

/// All suites by name.
pub const SUITES: [(&str, Suite); 6] = [
    ("norm_preservation", norm_preservation),
    ("beam_splitter_unitarity", beam_splitter_unitarity),
    ("displacement_composition", displacement_composition),
    ("kerr_squared_is_not", kerr_squared_is_not),
    ("gram_psd", gram_psd),
    ("monte_carlo", monte_carlo),
];
