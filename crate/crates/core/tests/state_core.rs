// SPDX-License-Identifier: Apache-2.0

use catsim::detection::Detector;
use catsim::fock::FockVector;
use catsim::protocols::{channel_exact, teleport_branches, ProtocolConfig};
use catsim::state::{min_pivot, overlap, Ket, Mixture, Qubit, Superposition, Term};
use catsim::{Complex, Error};
use rand::Rng;

const ALPHA: f64 = 3.0;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn state(pairs: &[(Complex, &[f64])]) -> Superposition<f64> {
    Superposition::from_pairs(pairs.iter().map(|(c, k)| (*c, Ket::reals(k)))).unwrap()
}

fn random_state(rng: &mut impl Rng, terms: usize, amp: f64) -> Superposition<f64> {
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

#[test]
fn overlap_of_opposite_coherent_states() {
    let o = overlap(&Ket::real(3.0), &Ket::real(-3.0)).unwrap();
    assert!((o.re - (-18.0f64).exp()).abs() < 1e-22 && o.im.abs() < 1e-22);
    assert!((o.re - 1.523e-8).abs() < 1e-11);
    let beta = c(1.3, -0.4);
    let k = Ket::coherent(beta);
    assert_eq!(overlap(&k, &k).unwrap(), c(1.0, 0.0));
}

#[test]
fn two_mode_overlap_matches_fock_inner_product() {
    let o = overlap(&Ket::reals(&[3.0, 3.0]), &Ket::reals(&[3.0, -3.0])).unwrap();
    let expect = (-18.0f64).exp();
    assert!((o.re - expect).abs() < 1e-22);
    // The product rule factorizes; the first factor is 1 and the second is a
    // single-mode Fock inner product.
    let u = FockVector::coherent(c(3.0, 0.0), 128).unwrap();
    let v = FockVector::coherent(c(-3.0, 0.0), 128).unwrap();
    let fock = u.inner(&v).unwrap();
    assert!((fock.re - expect).abs() < 1e-8 * expect + 1e-20);
}

#[test]
fn overlap_rejects_mode_mismatch() {
    let err = overlap(&Ket::reals(&[1.0]), &Ket::reals(&[1.0, 2.0])).unwrap_err();
    assert_eq!(err, Error::ModeMismatch { left: 1, right: 2 });
}

#[test]
fn inner_products() {
    let s = Qubit::bloch(0.8, 2.1, ALPHA).unwrap().state();
    assert!((s.inner(&s).unwrap().re - 1.0).abs() < 1e-12);
    let zero = Qubit::zero(ALPHA).state();
    let one = Qubit::one(ALPHA).state();
    assert!((zero.inner(&one).unwrap().re - (-18.0f64).exp()).abs() < 1e-22);
}

#[test]
fn inner_of_random_states_matches_fock_oracle() {
    let mut rng = catsim::sampling::rng_from_seed(7);
    for _ in 0..10 {
        let a = random_state(&mut rng, 3, 2.5);
        let b = random_state(&mut rng, 3, 2.5);
        let exact = a.inner(&b).unwrap();
        let fa = FockVector::from_superposition(&a, 128).unwrap();
        let fb = FockVector::from_superposition(&b, 128).unwrap();
        let oracle = fa.inner(&fb).unwrap();
        assert!((exact - oracle).norm() < 1e-8, "{exact} vs {oracle}");
    }
}

#[test]
fn normalize_examples() {
    let s = state(&[(c(2.0, 0.0), &[ALPHA])]).normalize().unwrap();
    assert_eq!(s.len(), 1);
    assert!((s.terms()[0].coef - c(1.0, 0.0)).norm() < 1e-15);

    let cat = state(&[(c(1.0, 0.0), &[ALPHA]), (c(1.0, 0.0), &[-ALPHA])])
        .normalize()
        .unwrap();
    let expect = 1.0 / (2.0 + 2.0 * (-18.0f64).exp()).sqrt();
    for t in cat.terms() {
        assert!((t.coef.re - expect).abs() < 1e-15);
    }
    assert!((cat.norm_sqr() - 1.0).abs() < 1e-12);

    // |a|²+|b|² = 1 is already nearly normalized: the Gram correction is O(e^{-18}).
    let q = Qubit::bloch(1.1, 0.3, ALPHA).unwrap();
    let n = q.state();
    assert!((n.terms()[0].coef - q.a).norm() < 2e-8);
    assert!((n.terms()[1].coef - q.b).norm() < 2e-8);
}

#[test]
fn normalize_rejects_zero_norm() {
    let s = Superposition::new(vec![Term {
        coef: c(0.0, 0.0),
        ket: Ket::real(1.0),
    }])
    .unwrap();
    assert_eq!(s.normalize().unwrap_err(), Error::Degenerate);
}

#[test]
fn tensor_examples() {
    let a = Superposition::<f64>::coherent(c(ALPHA, 0.0));
    let aa = a.tensor(&a);
    assert_eq!(aa.modes(), 2);
    assert_eq!(aa.terms()[0].ket, Ket::reals(&[ALPHA, ALPHA]));

    let cat = state(&[(c(1.0, 0.0), &[ALPHA]), (c(1.0, 0.0), &[-ALPHA])]);
    let t = cat.tensor(&a);
    assert_eq!(t.len(), 2);
    assert_eq!(t.terms()[0].ket, Ket::reals(&[ALPHA, ALPHA]));
    assert_eq!(t.terms()[1].ket, Ket::reals(&[-ALPHA, ALPHA]));

    let mut rng = catsim::sampling::rng_from_seed(3);
    for _ in 0..20 {
        let s1 = random_state(&mut rng, 2, 2.0).scale(c(1.7, 0.0));
        let s2 = random_state(&mut rng, 3, 2.0).scale(c(0.0, 0.6));
        let t = s1.tensor(&s2);
        assert_eq!(t.len(), 6);
        let lhs = t.norm_sqr().sqrt();
        let rhs = s1.norm_sqr().sqrt() * s2.norm_sqr().sqrt();
        assert!((lhs - rhs).abs() < 1e-12);
    }
}

#[test]
fn prune_merges_and_drops() {
    let s = state(&[(c(1.0, 0.0), &[ALPHA]), (c(1.0, 0.0), &[ALPHA])]).prune(0.0);
    assert_eq!(s.len(), 1);
    assert_eq!(s.terms()[0].coef, c(2.0, 0.0));

    let s = state(&[(c(1.0, 0.0), &[ALPHA]), (c(1e-300, 0.0), &[-ALPHA])]);
    let p = s.prune(1e-30);
    assert_eq!(p.len(), 1);
    let f = p
        .normalize()
        .unwrap()
        .fidelity(&s.normalize().unwrap())
        .unwrap();
    assert!((f - 1.0).abs() < 1e-12);
}

#[test]
fn prune_fidelity_bound_on_random_states() {
    let mut rng = catsim::sampling::rng_from_seed(11);
    for _ in 0..50 {
        let mut s = random_state(&mut rng, 4, 2.0);
        // add a few tiny terms for the pruner to find
        for k in 0..3 {
            let tiny =
                Superposition::from_ket(Ket::real(0.3 * k as f64 - 0.5)).scale(c(1e-9, 1e-9));
            s = s.add(&tiny).unwrap();
        }
        let s = s.normalize().unwrap();
        let tol = 1e-6;
        let p = s.prune(tol).normalize().unwrap();
        let f = p.fidelity(&s).unwrap();
        assert!(f >= 1.0 - 4.0 * tol * s.len() as f64, "fidelity {f}");
    }
}

#[test]
fn prune_keeps_teleport_output_small() {
    let det = Detector::ideal();
    let channel = channel_exact(ALPHA).unwrap();
    let q = Qubit::bloch(0.9, 1.7, ALPHA).unwrap();
    let pruned = teleport_branches(&q, &channel, &det, &ProtocolConfig::default()).unwrap();
    let raw_cfg = ProtocolConfig {
        prune_tol: 0.0,
        ..ProtocolConfig::default()
    };
    let raw = teleport_branches(&q, &channel, &det, &raw_cfg).unwrap();
    for (p, r) in pruned.iter().zip(&raw) {
        assert_eq!(p.outcome, r.outcome);
        let (Some(ps), Some(_)) = (&p.state, &r.state) else {
            continue;
        };
        let ps: &Mixture<f64> = ps;
        assert!(ps.len() <= 4, "{:?} kept {} dyads", p.outcome, ps.len());
        let df = (p.fidelity.unwrap() - r.fidelity.unwrap()).abs();
        assert!(df < 1e-10, "{:?} fidelity moved by {df}", p.outcome);
    }
}

#[test]
fn encode_examples() {
    let zero = Qubit::new(c(1.0, 0.0), c(0.0, 0.0), 3.0).unwrap().encode();
    assert_eq!(zero.terms()[0].ket, Ket::real(3.0));
    assert_eq!(zero.terms()[0].coef, c(1.0, 0.0));
    assert_eq!(zero.terms()[1].coef, c(0.0, 0.0));
    let one = Qubit::new(c(0.0, 0.0), c(1.0, 0.0), 3.0).unwrap().encode();
    assert_eq!(one.terms()[1].ket, Ket::real(-3.0));
    assert_eq!(one.terms()[1].coef, c(1.0, 0.0));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = Qubit::new(c(h, 0.0), c(h, 0.0), 3.0).unwrap().encode();
    assert!((plus.norm_sqr() - (1.0 + (-18.0f64).exp())).abs() < 1e-15);
    assert!(Qubit::new(c(1.0, 0.0), c(0.0, 0.0), 0.0).is_err());
    assert!(Qubit::new(c(1.0, 0.0), c(1.0, 0.0), 3.0).is_err());
}

#[test]
fn fidelity_examples() {
    let s = Qubit::bloch(0.4, 0.2, ALPHA).unwrap().state();
    assert!((s.fidelity(&s).unwrap() - 1.0).abs() < 1e-12);
    let f = Qubit::zero(ALPHA)
        .state()
        .fidelity(&Qubit::one(ALPHA).state())
        .unwrap();
    assert!((f - (-36.0f64).exp()).abs() < 1e-28);
    let unnormalized = Qubit::zero(ALPHA).encode().scale(c(2.0, 0.0));
    assert!(matches!(
        s.fidelity(&unnormalized),
        Err(Error::NotNormalized(_))
    ));
}

#[test]
fn rotated_vs_displaced_fidelity() {
    let eps = std::f64::consts::PI / 12.0;
    let q = Qubit::bloch(1.0, 0.5, ALPHA).unwrap();
    let displaced = catsim::gates::displace(&q.state(), 0, c(0.0, eps)).unwrap();
    let ideal = catsim::gates::ideal_u_z(&q.state(), 0, 2.0 * ALPHA * eps)
        .unwrap()
        .normalize()
        .unwrap();
    let f = displaced.fidelity(&ideal).unwrap();
    assert!((f - 0.9338).abs() < 1e-3, "{f}");
    assert!((f - (-eps * eps).exp()).abs() < 1e-6);
}

#[test]
fn mixture_fidelity_matches_pure() {
    let a = Qubit::bloch(0.7, 0.1, ALPHA).unwrap().state();
    let b = Qubit::bloch(1.3, 2.0, ALPHA).unwrap().state();
    let rho = Mixture::from_pure(&a);
    let f_mixed = rho.fidelity(&b).unwrap();
    let f_pure = a.fidelity(&b).unwrap();
    assert!((f_mixed - f_pure).abs() < 1e-12);
    assert!(rho.hermiticity_defect() < 1e-15);
}

#[test]
fn json_round_trip() {
    let mut rng = catsim::sampling::rng_from_seed(5);
    let s = random_state(&mut rng, 3, 2.0).tensor(&random_state(&mut rng, 2, 2.0));
    let text = s.to_json();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["modes"], 2);
    assert_eq!(v["terms"].as_array().unwrap().len(), 6);
    assert_eq!(v["terms"][0]["c"].as_array().unwrap().len(), 2);
    assert_eq!(v["terms"][0]["ket"].as_array().unwrap().len(), 2);
    let back = Superposition::<f64>::from_json(&text).unwrap();
    assert!(back.fidelity(&s).unwrap() >= 1.0 - 1e-12);
    assert!(matches!(
        Superposition::<f64>::from_json("{\"modes\": 1, \"terms\": []}"),
        Err(Error::Format(_)) | Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn overlap_invariants() {
    let mut rng = catsim::sampling::rng_from_seed(2);
    for _ in 0..200 {
        let k1 = Ket::new(vec![
            c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            2
        ])
        .unwrap();
        let k2 = Ket::new(vec![
            c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)),
            c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)),
        ])
        .unwrap();
        let a = overlap(&k1, &k2).unwrap();
        let b = overlap(&k2, &k1).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
        assert!(a.norm() <= 1.0 + 1e-15);
        assert_eq!(overlap(&k1, &k1).unwrap(), c(1.0, 0.0));
    }
}

#[test]
fn gram_matrix_is_positive_semidefinite() {
    let mut rng = catsim::sampling::rng_from_seed(9);
    for _ in 0..50 {
        let s = random_state(&mut rng, 6, 1.5);
        assert!(min_pivot(&s.gram()) >= -1e-10);
    }
}
