// SPDX-License-Identifier: Apache-2.0

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use catsim::budget::rotation_fidelity;
use catsim::gates::*;
use catsim::logical::Mat2;
use catsim::state::{Ket, Qubit, Superposition};
use catsim::Error;
use common::*;

const ALPHA: f64 = 3.0;

fn kets(s: &Superposition<f64>) -> Vec<(catsim::Complex, Vec<catsim::Complex>)> {
    s.terms()
        .iter()
        .map(|t| (t.coef, t.ket.amps().to_vec()))
        .collect()
}

fn assert_same(a: &Superposition<f64>, b: &Superposition<f64>, tol: f64) {
    let (ka, kb) = (kets(a), kets(b));
    assert_eq!(ka.len(), kb.len());
    for ((ca, xa), (cb, xb)) in ka.iter().zip(&kb) {
        assert!((ca - cb).norm() <= tol, "coefficient {ca} vs {cb}");
        for (p, q) in xa.iter().zip(xb) {
            assert!((p - q).norm() <= tol, "amplitude {p} vs {q}");
        }
    }
}

fn fid(a: &Superposition<f64>, b: &Superposition<f64>) -> f64 {
    a.normalize()
        .unwrap()
        .fidelity(&b.normalize().unwrap())
        .unwrap()
}

fn pair(a: f64, b: f64) -> Superposition<f64> {
    Superposition::from_ket(Ket::reals(&[a, b]))
}

#[test]
fn beam_splitter_examples() {
    let bs = BeamSplitter::balanced(0, 1).unwrap();
    let out = beam_splitter(&pair(ALPHA, ALPHA), &bs).unwrap();
    assert_same(&out, &pair(SQRT_2 * ALPHA, 0.0), 1e-14);
    let out = beam_splitter(&pair(-ALPHA, ALPHA), &bs).unwrap();
    assert_same(&out, &pair(0.0, -SQRT_2 * ALPHA), 1e-14);
    for t in [0.1, 0.5, 0.93] {
        let bs = BeamSplitter::new(0, 1, t).unwrap();
        assert_same(
            &beam_splitter(&pair(0.0, 0.0), &bs).unwrap(),
            &pair(0.0, 0.0),
            0.0,
        );
    }
}

#[test]
fn beam_splitter_validation() {
    assert!(BeamSplitter::<f64>::new(0, 0, 0.5).is_err());
    assert!(BeamSplitter::<f64>::new(0, 1, 0.0).is_err());
    assert!(BeamSplitter::<f64>::new(0, 1, 1.0).is_err());
    let bs = BeamSplitter::balanced(0, 2).unwrap();
    assert_eq!(
        beam_splitter(&pair(1.0, 1.0), &bs).unwrap_err(),
        Error::ModeOutOfRange { mode: 2, modes: 2 }
    );
}

#[test]
fn phase_shift_examples() {
    let s = Superposition::from_ket(Ket::real(ALPHA));
    assert_same(
        &phase_shift_pi(&s, 0).unwrap(),
        &Superposition::from_ket(Ket::real(-ALPHA)),
        0.0,
    );
    let q = Qubit::bloch(0.7, 1.9, ALPHA).unwrap();
    let twice = phase_shift_pi(&phase_shift_pi(&q.encode(), 0).unwrap(), 0).unwrap();
    assert_same(&twice, &q.encode(), 0.0);
    let swapped = Qubit::new(q.b, q.a, ALPHA).unwrap().encode();
    let flipped = phase_shift_pi(&q.encode(), 0).unwrap();
    assert!(fid(&flipped, &swapped) > 1.0 - 1e-14);
    assert!(phase_shift_pi(&s, 1).is_err());
}

#[test]
fn displacement_examples() {
    let eps = 0.26;
    let s = Superposition::from_ket(Ket::real(ALPHA));
    let out = displace(&s, 0, c(0.0, eps)).unwrap();
    let expect = Superposition::from_pairs([(
        catsim::Complex::from_polar(1.0, eps * ALPHA),
        Ket::coherent(c(ALPHA, eps)),
    )])
    .unwrap();
    assert_same(&out, &expect, 1e-15);

    // the same phase from the Fock oracle: ⟨α+iε|D(iε)|α⟩
    let v = catsim::fock::FockVector::coherent(c(ALPHA, 0.0), N).unwrap();
    let w = catsim::fock::FockVector::coherent(c(ALPHA, eps), N).unwrap();
    let ph = w.inner(&v.displace(c(0.0, eps))).unwrap();
    assert!((ph - catsim::Complex::from_polar(1.0, eps * ALPHA)).norm() < 1e-9);

    let q = Qubit::bloch(1.2, 0.4, ALPHA).unwrap().state();
    assert_same(&displace(&q, 0, c(0.0, 0.0)).unwrap(), &q, 0.0);
    let delta = c(0.3, -0.7);
    let back = displace(&displace(&q, 0, delta).unwrap(), 0, -delta).unwrap();
    assert!((back.fidelity(&q).unwrap() - 1.0).abs() < 1e-12);
    assert!(displace(&q, 0, c(f64::NAN, 0.0)).is_err());
}

#[test]
fn displacement_through_beam_splitter() {
    let q = Qubit::bloch(0.5, 2.5, ALPHA).unwrap().state();
    for t in [0.9, 0.99, 0.999] {
        let theta = 0.77;
        let drive = rotation_drive(theta, ALPHA, t);
        let via = displace_via_bs(&q, 0, drive, t).unwrap();
        let direct = displace(&q, 0, c(0.0, theta / (4.0 * ALPHA))).unwrap();
        assert_same(&via, &direct, 1e-14);
        assert_same(&displace_via_bs(&q, 0, 0.0, t).unwrap(), &q, 0.0);
        let big_delta = PI / (8.0 * ALPHA * (1.0 - t).sqrt());
        let via = displace_via_bs(&q, 0, big_delta, t).unwrap();
        let direct = displace(&q, 0, c(0.0, PI / (8.0 * ALPHA))).unwrap();
        assert_same(&via, &direct, 1e-14);
    }
    assert!(displace_via_bs(&q, 0, 1.0, 1.0).is_err());
}

#[test]
fn kerr_quarter_examples() {
    let pre = catsim::Complex::from_polar(FRAC_1_SQRT_2, -FRAC_PI_4);
    let i = c(0.0, 1.0);
    let plus = kerr_quarter(&Superposition::from_ket(Ket::real(ALPHA)), 0).unwrap();
    let expect =
        Superposition::from_pairs([(pre, Ket::real(ALPHA)), (pre * i, Ket::real(-ALPHA))]).unwrap();
    assert_same(&plus, &expect, 1e-15);
    let minus = kerr_quarter(&Superposition::from_ket(Ket::real(-ALPHA)), 0).unwrap();
    let expect =
        Superposition::from_pairs([(pre, Ket::real(-ALPHA)), (pre * i, Ket::real(ALPHA))]).unwrap();
    assert_same(&minus, &expect, 1e-15);

    // applied twice: |α⟩ → |−α⟩ with global phase 1 after merging
    let twice = kerr_quarter(&plus, 0).unwrap().prune(0.0);
    assert_eq!(twice.len(), 1);
    assert_eq!(twice.terms()[0].ket, Ket::real(-ALPHA));
    assert!((twice.terms()[0].coef - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn kerr_quarter_matches_fock_kerr() {
    let mut rng = catsim::sampling::rng_from_seed(4);
    for _ in 0..10 {
        let q = random_qubit(&mut rng, ALPHA).state();
        let coherent = kerr_quarter(&q, 0).unwrap();
        let f = fock_fidelity(&q, &[Op::Kerr], &coherent.normalize().unwrap());
        assert!(f > 1.0 - 1e-9, "{f}");
    }
}

#[test]
fn u_z_examples() {
    let q = Qubit::bloch(1.0, 0.3, ALPHA).unwrap();
    assert_same(&u_z(&q.state(), 0, 0.0, ALPHA).unwrap(), &q.state(), 0.0);
    let eps = PI / 12.0;
    let theta = 4.0 * ALPHA * eps;
    let out = u_z(&q.state(), 0, theta, ALPHA).unwrap();
    let ideal = logical(Mat2::u_z(theta / 2.0).apply([q.a, q.b]), ALPHA);
    let f = fid(&out, &ideal);
    assert!((f - 0.9338).abs() < 1e-3, "{f}");
    assert!(u_z(&q.state(), 0, 1.0, 0.0).is_err());
}

#[test]
fn rotation_fidelity_formula_matches_states() {
    let mut rng = catsim::sampling::rng_from_seed(8);
    for alpha in [1.0, 2.0, 3.0] {
        for _ in 0..20 {
            let q = random_qubit(&mut rng, alpha);
            let eps: f64 = rand::Rng::gen_range(&mut rng, -0.5..0.5);
            // both sides use the encoding with |a|²+|b|² = 1
            let displaced = displace(&q.encode(), 0, c(0.0, eps)).unwrap();
            let ideal = ideal_u_z(&q.encode(), 0, 2.0 * alpha * eps).unwrap();
            let direct = ideal.inner(&displaced).unwrap().norm_sqr();
            let closed = rotation_fidelity(q.a, q.b, alpha, eps);
            assert!((direct - closed).abs() < 1e-10, "{direct} vs {closed}");
        }
    }
}

#[test]
fn u_x_quarter_examples() {
    let q = Qubit::bloch(2.0, 0.8, ALPHA).unwrap().state();
    let there = u_x_quarter(&q, 0, 1).unwrap();
    let back = u_x_quarter(&there, 0, -1).unwrap().prune(0.0);
    assert!((fid(&back, &q) - 1.0).abs() < 1e-12);

    let zero = Qubit::zero(ALPHA).state();
    let sq = u_x_quarter(&u_x_quarter(&zero, 0, 1).unwrap(), 0, 1).unwrap();
    assert!((fid(&sq, &Qubit::one(ALPHA).state()) - 1.0).abs() < 1e-12);

    // the even and odd cats are the eigenvectors of exp(iπX/4)
    for q in [Qubit::plus(ALPHA), Qubit::minus(ALPHA)] {
        let s = q.state();
        let out = u_x_quarter(&s, 0, 1).unwrap();
        assert!((fid(&out, &s) - 1.0).abs() < 1e-9);
    }
    assert!(u_x_quarter(&q, 0, 0).is_err());
}

#[test]
fn u_y_examples() {
    let q = Qubit::bloch(0.6, 1.1, ALPHA).unwrap().state();
    assert!((fid(&u_y(&q, 0, 0.0, ALPHA).unwrap(), &q) - 1.0).abs() < 1e-12);

    let zero = Qubit::zero(ALPHA);
    let out = u_y(&zero.state(), 0, PI, ALPHA).unwrap();
    let target = logical(Mat2::u_y(FRAC_PI_2).apply([zero.a, zero.b]), ALPHA);
    assert!(fid(&target, &Qubit::one(ALPHA).state()) > 1.0 - 1e-12);
    let f = fid(&out, &target);
    assert!(f >= 0.93, "{f}");
    let oracle = fock_fidelity(&zero.state(), &seq_u_y(PI, ALPHA), &target);
    assert!((f - oracle).abs() < 1e-8);

    let mut rng = catsim::sampling::rng_from_seed(12);
    for _ in 0..20 {
        let eta: f64 = rand::Rng::gen_range(&mut rng, -PI..PI);
        let lhs = Mat2::u_x(eta / 2.0);
        let rhs = Mat2::u_z(-FRAC_PI_4) * Mat2::u_y(eta / 2.0) * Mat2::u_z(FRAC_PI_4);
        assert!(lhs.distance_up_to_phase(&rhs) < 1e-12);
        let lhs = Mat2::u_y(eta / 2.0);
        let rhs = Mat2::u_x(-FRAC_PI_4) * Mat2::u_z(eta / 2.0) * Mat2::u_x(FRAC_PI_4);
        assert!(lhs.distance_up_to_phase(&rhs) < 1e-12);
    }
}

#[test]
fn hadamard_decomposition_is_exact_in_the_ideal_limit() {
    let h = Mat2::u_z(FRAC_PI_4) * Mat2::u_x(FRAC_PI_4) * Mat2::u_z(FRAC_PI_4);
    let h = h.scale(catsim::Complex::from_polar(1.0, -FRAC_PI_4));
    assert!(h.distance_up_to_phase(&Mat2::hadamard()) < 1e-15);
    for q in [
        Qubit::zero(ALPHA),
        Qubit::one(ALPHA),
        Qubit::bloch(1.0, 2.0, ALPHA).unwrap(),
    ] {
        let out = ideal_hadamard(&q.state(), 0).unwrap();
        let target = logical(Mat2::hadamard().apply([q.a, q.b]), ALPHA);
        assert!(fid(&out, &target) > 1.0 - 1e-12);
    }
}

#[test]
fn hadamard_examples() {
    let eps = PI / (8.0 * ALPHA);
    let closed = ((1.0 + (-2.0 * eps * eps).exp()) / 2.0).powi(2);
    for (q, sign) in [(Qubit::zero(ALPHA), 1.0), (Qubit::one(ALPHA), -1.0)] {
        let out = hadamard(&q.state(), 0, ALPHA).unwrap();
        let target = Superposition::from_pairs([
            (c(1.0, 0.0), Ket::real(ALPHA)),
            (c(sign, 0.0), Ket::real(-ALPHA)),
        ])
        .unwrap()
        .normalize()
        .unwrap();
        let f = fid(&out, &target);
        let oracle = fock_fidelity(&q.state(), &seq_hadamard(ALPHA), &target);
        assert!((f - oracle).abs() < 1e-8, "{f} vs {oracle}");
        assert!((f - closed).abs() < 1e-7, "{f} vs {closed}");
        assert!((f - 0.9666).abs() < 1e-4);
    }

    // H² returns to the input up to phase, with the two displacement errors
    let zero = Qubit::zero(ALPHA).state();
    let twice = hadamard(&hadamard(&zero, 0, ALPHA).unwrap(), 0, ALPHA).unwrap();
    let f = fid(&twice, &zero);
    let mut ops = seq_hadamard(ALPHA);
    ops.extend(seq_hadamard(ALPHA));
    let oracle = fock_fidelity(&zero, &ops, &zero);
    assert!((f - oracle).abs() < 1e-8, "{f} vs {oracle}");
    assert!(f > 0.87 && f < 0.88, "{f}");
}

#[test]
fn hadamard_scales_with_incident_amplitude() {
    // the √2 version acts on a qubit of amplitude √2α
    let big = SQRT_2 * ALPHA;
    let q = Qubit::zero(big).state();
    let out = hadamard(&q, 0, big).unwrap();
    let eps = PI / (8.0 * big);
    let closed = ((1.0 + (-2.0 * eps * eps).exp()) / 2.0).powi(2);
    let target = logical(Mat2::hadamard().apply([c(1.0, 0.0), c(0.0, 0.0)]), big);
    assert!((fid(&out, &target) - closed).abs() < 1e-7);
    assert!(hadamard(&q, 0, -1.0).is_err());
}

#[test]
fn rotate_examples() {
    let q = Qubit::bloch(1.4, 0.9, ALPHA).unwrap().state();
    let id = rotate(
        &q,
        0,
        Euler {
            theta: 0.0,
            phi: 0.0,
            eta: 0.0,
        },
        ALPHA,
    )
    .unwrap();
    assert!((fid(&id, &q) - 1.0).abs() < 1e-12);

    // R(0, π/2, π) = H up to a global phase
    let e = Euler {
        theta: 0.0,
        phi: FRAC_PI_2,
        eta: PI,
    };
    assert!(Mat2::euler(e.theta, e.phi, e.eta).distance_up_to_phase(&Mat2::hadamard()) < 1e-12);
    let zero = Qubit::zero(ALPHA);
    let out = rotate(&zero.state(), 0, e, ALPHA).unwrap();
    let target = logical(Mat2::hadamard().apply([zero.a, zero.b]), ALPHA);
    let f = fid(&out, &target);
    let oracle = fock_fidelity(
        &zero.state(),
        &seq_euler(e.theta, e.phi, e.eta, ALPHA),
        &target,
    );
    assert!((f - oracle).abs() < 1e-8, "{f} vs {oracle}");
    assert!(f > 0.9 && f < 0.93, "{f}");
}

#[test]
fn random_rotations_match_fock_composition() {
    let mut rng = catsim::sampling::rng_from_seed(1);
    for _ in 0..100 {
        let mut angle = || rand::Rng::gen_range(&mut rng, -PI..PI);
        let (theta, phi, eta) = (angle(), angle(), angle());
        let q = random_qubit(&mut rng, ALPHA);
        let out = rotate(&q.state(), 0, Euler { theta, phi, eta }, ALPHA).unwrap();
        let target = logical(Mat2::euler(theta, phi, eta).apply([q.a, q.b]), ALPHA);
        let f = fid(&out, &target);
        let oracle = fock_fidelity(&q.state(), &seq_euler(theta, phi, eta, ALPHA), &target);
        assert!((f - oracle).abs() < 1e-8, "{f} vs {oracle}");
        assert!(f > 0.0 && f <= 1.0 + 1e-12);
    }
}

#[test]
fn rotate_axis_matches_matrices() {
    let q = Qubit::bloch(0.3, 0.2, ALPHA).unwrap();
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        let half = 0.4;
        let spec = RotationSpec {
            axis,
            half_angle: half,
        };
        let out = rotate_axis(&q.state(), 0, spec, ALPHA).unwrap();
        let m = match axis {
            Axis::X => Mat2::u_x(half),
            Axis::Y => Mat2::u_y(half),
            Axis::Z => Mat2::u_z(half),
        };
        let target = logical(m.apply([q.a, q.b]), ALPHA);
        assert!(fid(&out, &target) > 0.85, "{axis:?}");
    }
}

#[test]
fn gates_preserve_norm() {
    let mut rng = catsim::sampling::rng_from_seed(21);
    for _ in 0..30 {
        let s = random_state(&mut rng, 2, 2.5).tensor(&random_state(&mut rng, 2, 2.5));
        let outs = [
            beam_splitter(&s, &BeamSplitter::new(0, 1, 0.3).unwrap()).unwrap(),
            phase_shift_pi(&s, 1).unwrap(),
            displace(&s, 0, c(0.2, -0.4)).unwrap(),
            kerr_quarter(&s, 1).unwrap(),
            hadamard(&s, 0, ALPHA).unwrap(),
        ];
        for o in outs {
            assert!((o.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn beam_splitter_preserves_inner_products() {
    let mut rng = catsim::sampling::rng_from_seed(22);
    let bs = BeamSplitter::new(0, 1, 0.27).unwrap();
    for _ in 0..30 {
        let a = random_state(&mut rng, 3, 2.0).tensor(&random_state(&mut rng, 1, 2.0));
        let b = random_state(&mut rng, 2, 2.0).tensor(&random_state(&mut rng, 2, 2.0));
        let before = a.inner(&b).unwrap();
        let after = beam_splitter(&a, &bs)
            .unwrap()
            .inner(&beam_splitter(&b, &bs).unwrap())
            .unwrap();
        assert!((before - after).norm() < 1e-12);
    }
}

#[test]
fn displacement_composition_law() {
    let mut rng = catsim::sampling::rng_from_seed(23);
    for _ in 0..30 {
        let s = random_state(&mut rng, 3, 2.0);
        let mut r = || {
            c(
                rand::Rng::gen_range(&mut rng, -1.0..1.0),
                rand::Rng::gen_range(&mut rng, -1.0..1.0),
            )
        };
        let (d1, d2) = (r(), r());
        let lhs = displace(&displace(&s, 0, d2).unwrap(), 0, d1).unwrap();
        let ph = ((d1 * d2.conj() - d1.conj() * d2) * 0.5).exp();
        let rhs = global_phase(&displace(&s, 0, d1 + d2).unwrap(), ph);
        assert_same(&lhs, &rhs, 1e-12);
    }
}

#[test]
fn kerr_twice_is_phase_shift() {
    let mut rng = catsim::sampling::rng_from_seed(24);
    for _ in 0..30 {
        let s = random_state(&mut rng, 3, 3.0);
        let twice = kerr_quarter(&kerr_quarter(&s, 0).unwrap(), 0)
            .unwrap()
            .prune(0.0);
        let p = phase_shift_pi(&s, 0).unwrap().prune(0.0);
        let d = twice.add(&p.scale(c(-1.0, 0.0))).unwrap().prune(0.0);
        assert!(d.terms().iter().all(|t| t.coef.norm() < 1e-15));
    }
}
