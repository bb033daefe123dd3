// SPDX-License-Identifier: Apache-2.0

//! Entangled resources, teleportation and the teleportation-based CNOT.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::detection::{
    bell_measure_mixed, bell_measure_with, BellMeasurement, BellOutcome, Detector,
};
use crate::error::{invalid, Error, Result};
use crate::gates::{
    beam_splitter, hadamard, hadamard_as, pauli_x, pauli_z_as, BeamSplitter, Realization,
};
use crate::scalar::Real;
use crate::state::{merge_tol, Ket, Mixture, Operand, Qubit, Superposition, DEFAULT_PRUNE_TOL};

/// The four quasi-Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuasiBell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl QuasiBell {
    pub const ALL: [QuasiBell; 4] = [
        QuasiBell::PhiPlus,
        QuasiBell::PhiMinus,
        QuasiBell::PsiPlus,
        QuasiBell::PsiMinus,
    ];

    /// The measurement outcome that identifies this state.
    pub fn outcome(self) -> BellOutcome {
        match self {
            QuasiBell::PhiPlus => BellOutcome::PhiPlus,
            QuasiBell::PhiMinus => BellOutcome::PhiMinus,
            QuasiBell::PsiPlus => BellOutcome::PsiPlus,
            QuasiBell::PsiMinus => BellOutcome::PsiMinus,
        }
    }
}

/// `N(|s,s⟩ ± |−s,−s⟩)` for Φ±, `N(|s,−s⟩ ± |−s,s⟩)` for Ψ±.
pub fn make_quasi_bell<T: Real>(label: QuasiBell, scale: T) -> Result<Superposition<T>> {
    positive(scale)?;
    let (second, sign) = match label {
        QuasiBell::PhiPlus => (scale, T::one()),
        QuasiBell::PhiMinus => (scale, -T::one()),
        QuasiBell::PsiPlus => (-scale, T::one()),
        QuasiBell::PsiMinus => (-scale, -T::one()),
    };
    Superposition::from_pairs([
        (
            Complex::new(T::one(), T::zero()),
            Ket::reals(&[scale, second]),
        ),
        (
            Complex::new(sign, T::zero()),
            Ket::reals(&[-scale, -second]),
        ),
    ])?
    .normalize()
}

fn positive<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "coherent amplitude must be positive, got {alpha}"
        )))
    }
}

fn even_cat<T: Real>(scale: T) -> Result<Superposition<T>> {
    Superposition::from_pairs([
        (Complex::new(T::one(), T::zero()), Ket::real(scale)),
        (Complex::new(T::one(), T::zero()), Ket::real(-scale)),
    ])?
    .normalize()
}

/// Exact channel `|Φ+⟩` at amplitude `α`.
pub fn channel_exact<T: Real>(alpha: T) -> Result<Superposition<T>> {
    make_quasi_bell(QuasiBell::PhiPlus, alpha)
}

/// Channel from the optical circuit: `|√2α⟩`, a Hadamard at amplitude `√2α`,
/// then a 50-50 beam splitter with vacuum.
pub fn make_channel<T: Real>(alpha: T) -> Result<Superposition<T>> {
    positive(alpha)?;
    let a = alpha * T::SQRT_2();
    let s = hadamard(&Superposition::from_ket(Ket::real(a)), 0, a)?;
    split_into_pair(&s)
}

fn split_into_pair<T: Real>(single: &Superposition<T>) -> Result<Superposition<T>> {
    let s = single.tensor(&Superposition::vacuum(1));
    Ok(beam_splitter(&s, &BeamSplitter::balanced(0, 1)?)?.merged(merge_tol()))
}

/// Channel from an exact even cat at `√2α` (no Hadamard error).
pub fn channel_from_cat<T: Real>(alpha: T) -> Result<Superposition<T>> {
    positive(alpha)?;
    split_into_pair(&even_cat(alpha * T::SQRT_2())?)
}

/// Exact `N(|√2α, α, α⟩ + |−√2α, −α, −α⟩)`.
pub fn xi_exact<T: Real>(alpha: T) -> Result<Superposition<T>> {
    positive(alpha)?;
    let r = alpha * T::SQRT_2();
    Superposition::from_pairs([
        (
            Complex::new(T::one(), T::zero()),
            Ket::reals(&[r, alpha, alpha]),
        ),
        (
            Complex::new(T::one(), T::zero()),
            Ket::reals(&[-r, -alpha, -alpha]),
        ),
    ])?
    .normalize()
}

/// `|ξ⟩` from the optical circuit: `|2α⟩`, a Hadamard at `2α`, then two
/// 50-50 beam splitters with vacuum.
pub fn make_xi<T: Real>(alpha: T) -> Result<Superposition<T>> {
    positive(alpha)?;
    let a = alpha * T::lit(2.0);
    let s = hadamard(&Superposition::from_ket(Ket::real(a)), 0, a)?;
    xi_from_single(&s)
}

/// `|ξ⟩` from an exact even cat at `2α`.
pub fn xi_from_cat<T: Real>(alpha: T) -> Result<Superposition<T>> {
    positive(alpha)?;
    xi_from_single(&even_cat(alpha * T::lit(2.0))?)
}

fn xi_from_single<T: Real>(s: &Superposition<T>) -> Result<Superposition<T>> {
    let s = split_into_pair(s)?;
    let s = s.tensor(&Superposition::vacuum(1));
    Ok(beam_splitter(&s, &BeamSplitter::balanced(1, 2)?)?.merged(merge_tol()))
}

/// Exact `|χ⟩ = N[|α,α⟩(|α,α⟩+|−α,−α⟩) + |−α,−α⟩(|α,−α⟩+|−α,α⟩)]` on
/// modes `(b, c, e, f)`.
pub fn chi_exact<T: Real>(alpha: T) -> Result<Superposition<T>> {
    positive(alpha)?;
    let one = Complex::new(T::one(), T::zero());
    let mut pairs = Vec::new();
    for x in [alpha, -alpha] {
        for y in [alpha, -alpha] {
            // f carries y ⊕ x
            let f = if x > T::zero() { y } else { -y };
            pairs.push((one, Ket::reals(&[x, x, y, f])));
        }
    }
    Superposition::from_pairs(pairs)?.normalize()
}

/// Ideal logical CNOT on kets: flips the target amplitude wherever the
/// control amplitude is `−α`.
pub fn ideal_cnot<T: Real>(
    s: &Superposition<T>,
    control: usize,
    target: usize,
) -> Result<Superposition<T>> {
    s.check_mode(control)?;
    s.check_mode(target)?;
    if control == target {
        return Err(invalid("control and target must differ"));
    }
    Ok(s.map_kets(|k| {
        let flip = k.amp(control).re < T::zero();
        let k = if flip {
            k.with_amp(target, -k.amp(target))
        } else {
            k.clone()
        };
        vec![(Complex::new(T::one(), T::zero()), k)]
    }))
}

/// Which gate realizations a protocol run uses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig<T> {
    /// Relative coefficient cutoff applied to conditional states.
    pub prune_tol: T,
    /// Hadamards inside the Bell-measurement optics.
    pub measurement: Realization,
    /// Pauli-Z corrections (optical: `D(iπ/(4α))`).
    pub corrections: Realization,
    /// Resource preparation: exact states and ideal Hadamards, or the circuits.
    pub resources: Realization,
}

impl<T: Real> Default for ProtocolConfig<T> {
    fn default() -> Self {
        ProtocolConfig {
            prune_tol: T::lit(DEFAULT_PRUNE_TOL),
            measurement: Realization::Ideal,
            corrections: Realization::Optical,
            resources: Realization::Ideal,
        }
    }
}

impl<T: Real> ProtocolConfig<T> {
    /// Every gate ideal: isolates detection and resource errors.
    pub fn ideal() -> Self {
        ProtocolConfig {
            corrections: Realization::Ideal,
            ..Self::default()
        }
    }
}

/// One audit record of a protocol run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub outcome: String,
    pub p: f64,
    pub fidelity: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ProtocolTrace {
    pub steps: Vec<TraceStep>,
}

impl ProtocolTrace {
    pub fn push<T: Real>(&mut self, step: &str, outcome: &str, p: T, fidelity: Option<T>) {
        self.steps.push(TraceStep {
            step: step.to_string(),
            outcome: outcome.to_string(),
            p: p.as_f64(),
            fidelity: fidelity.map(|f| f.as_f64()),
        });
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("plain record serializes") + "\n")
            .collect()
    }

    pub fn failed(&self) -> bool {
        self.steps
            .iter()
            .any(|s| s.outcome == BellOutcome::Failure.label())
    }
}

/// Teleportation Pauli frame for a Bell outcome on `mode` at amplitude `alpha`:
/// `X` for Ψ±, then `Z` for Φ−/Ψ−.
fn undo_bell_frame<T: Real>(
    rho: &Mixture<T>,
    mode: usize,
    outcome: BellOutcome,
    alpha: T,
    how: Realization,
) -> Result<Mixture<T>> {
    let mut rho = rho.clone();
    if outcome.flips() {
        rho = pauli_x(&rho, mode)?;
    }
    if outcome.dephases() {
        rho = pauli_z_as(&rho, mode, alpha, how)?;
    }
    Ok(rho)
}

fn pick<R: Rng + ?Sized, T: Real>(m: &BellMeasurement<T>, rng: &mut R) -> BellOutcome {
    m.to_categorical()
        .sample(rng)
        .unwrap_or(BellOutcome::Failure)
}

/// A Bell outcome with the corrected state that follows it.
#[derive(Debug, Clone)]
pub struct Branch<T> {
    pub outcome: BellOutcome,
    pub probability: T,
    pub state: Option<Mixture<T>>,
    /// Fidelity of `state` to the intended output.
    pub fidelity: Option<T>,
}

/// Result of one sampled protocol run.
#[derive(Debug, Clone)]
pub struct Run<T> {
    /// Bell outcomes in the order they were drawn.
    pub outcomes: Vec<BellOutcome>,
    pub state: Option<Mixture<T>>,
    pub trace: ProtocolTrace,
}

/// Teleports `q` through a two-mode channel: Bell measurement on
/// (input, channel mode 0), correction on channel mode 1. Every outcome is
/// returned, the failure branch last.
pub fn teleport_branches<T: Real>(
    q: &Qubit<T>,
    channel: &Superposition<T>,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
) -> Result<Vec<Branch<T>>> {
    teleport_state_branches(&q.state(), channel, q.alpha, det, cfg)
}

/// [`teleport_branches`] for any normalized single-mode input.
pub fn teleport_state_branches<T: Real>(
    input: &Superposition<T>,
    channel: &Superposition<T>,
    alpha: T,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
) -> Result<Vec<Branch<T>>> {
    if input.modes() != 1 {
        return Err(Error::ModeMismatch {
            left: 1,
            right: input.modes(),
        });
    }
    if channel.modes() != 2 {
        return Err(Error::ModeMismatch {
            left: 2,
            right: channel.modes(),
        });
    }
    crate::state::check_normalized(channel)?;
    let joint = input.tensor(channel);
    let m = bell_measure_with(&joint, (0, 1), alpha, det, cfg.measurement, cfg.prune_tol)?;
    m.branches
        .iter()
        .map(|b| {
            let state = match &b.state {
                Some(rho) => {
                    Some(undo_bell_frame(rho, 0, b.outcome, alpha, cfg.corrections)?.normalize()?)
                }
                None => None,
            };
            let fidelity = match &state {
                Some(rho) => Some(rho.fidelity(input)?),
                None => None,
            };
            Ok(Branch {
                outcome: b.outcome,
                probability: b.probability,
                state,
                fidelity,
            })
        })
        .collect()
}

/// One sampled teleportation run.
pub fn teleport<T: Real, R: Rng + ?Sized>(
    q: &Qubit<T>,
    channel: &Superposition<T>,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
    rng: &mut R,
) -> Result<Run<T>> {
    let branches = teleport_branches(q, channel, det, cfg)?;
    Ok(sample_teleport_run(&branches, rng))
}

/// Draws one run from precomputed teleportation branches.
pub fn sample_teleport_run<T: Real, R: Rng + ?Sized>(
    branches: &[Branch<T>],
    rng: &mut R,
) -> Run<T> {
    let chosen = sample_branch(branches, rng);
    let mut trace = ProtocolTrace::default();
    trace.push(
        "bell_measure",
        chosen.outcome.label(),
        chosen.probability,
        None,
    );
    if chosen.state.is_some() {
        trace.push(
            "correction",
            chosen.outcome.label(),
            T::one(),
            chosen.fidelity,
        );
    }
    Run {
        outcomes: vec![chosen.outcome],
        state: chosen.state.clone(),
        trace,
    }
}

fn sample_branch<'a, T: Real, R: Rng + ?Sized>(
    branches: &'a [Branch<T>],
    rng: &mut R,
) -> &'a Branch<T> {
    let dist = crate::sampling::Categorical::new(
        branches
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.probability))
            .collect(),
    );
    let i = dist.sample(rng).unwrap_or(branches.len() - 1);
    &branches[i]
}

/// All outcomes of the `|χ⟩` preparation, with corrected states compared to
/// [`chi_exact`].
///
/// Modes of `|ξ⟩_abc ⊗ |ξ⟩_def`: Hadamards on d (amplitude `√2α`), e and f
/// (amplitude `α`), Bell measurement on (a, d) at amplitude `√2α`, then
/// Φ′− → Z_b, Ψ′+ → X_f, Ψ′− → X_f Z_b. Output modes are (b, c, e, f).
pub fn make_chi_branches<T: Real>(
    alpha: T,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
) -> Result<Vec<Branch<T>>> {
    positive(alpha)?;
    let xi = match cfg.resources {
        Realization::Ideal => xi_exact(alpha)?,
        Realization::Optical => make_xi(alpha)?,
    };
    let r = alpha * T::SQRT_2();
    let s = xi.tensor(&xi);
    let s = hadamard_as(&s, 3, r, cfg.resources)?;
    let s = hadamard_as(&s, 4, alpha, cfg.resources)?;
    let s = hadamard_as(&s, 5, alpha, cfg.resources)?.merged(merge_tol());
    let s = s.prune(cfg.prune_tol).normalize()?;
    let m = bell_measure_with(&s, (0, 3), r, det, cfg.measurement, cfg.prune_tol)?;
    let ideal = chi_exact(alpha)?;
    m.branches
        .iter()
        .map(|b| {
            let state = match &b.state {
                Some(rho) => {
                    let mut rho = rho.clone();
                    if b.outcome.flips() {
                        rho = pauli_x(&rho, 3)?;
                    }
                    if b.outcome.dephases() {
                        rho = pauli_z_as(&rho, 0, alpha, cfg.corrections)?;
                    }
                    Some(rho.normalize()?)
                }
                None => None,
            };
            let fidelity = match &state {
                Some(rho) => Some(rho.fidelity(&ideal)?),
                None => None,
            };
            Ok(Branch {
                outcome: b.outcome,
                probability: b.probability,
                state,
                fidelity,
            })
        })
        .collect()
}

/// One sampled `|χ⟩` preparation.
pub fn make_chi<T: Real, R: Rng + ?Sized>(
    alpha: T,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
    rng: &mut R,
) -> Result<Run<T>> {
    let branches = make_chi_branches(alpha, det, cfg)?;
    let chosen = sample_branch(&branches, rng);
    let mut trace = ProtocolTrace::default();
    trace.push(
        "chi_bell_measure",
        chosen.outcome.label(),
        chosen.probability,
        chosen.fidelity,
    );
    Ok(Run {
        outcomes: vec![chosen.outcome],
        state: chosen.state.clone(),
        trace,
    })
}

/// Pauli corrections on the CNOT outputs (control on c, target on f).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CnotCorrection {
    pub x_control: bool,
    pub z_control: bool,
    pub x_target: bool,
    pub z_target: bool,
}

/// Correction table for Bell outcomes `o1` (control through b) and `o2`
/// (target through e). The control's X error spreads to the target and the
/// target's Z error back to the control when pushed through the CNOT.
pub fn cnot_correction(o1: BellOutcome, o2: BellOutcome) -> CnotCorrection {
    CnotCorrection {
        x_control: o1.flips(),
        z_control: o1.dephases() ^ o2.dephases(),
        x_target: o1.flips() ^ o2.flips(),
        z_target: o2.dephases(),
    }
}

fn apply_correction<T: Real>(
    rho: &Mixture<T>,
    c: CnotCorrection,
    alpha: T,
    how: Realization,
) -> Result<Mixture<T>> {
    let mut rho = rho.clone();
    if c.x_control {
        rho = pauli_x(&rho, 0)?;
    }
    if c.x_target {
        rho = pauli_x(&rho, 1)?;
    }
    if c.z_control {
        rho = pauli_z_as(&rho, 0, alpha, how)?;
    }
    if c.z_target {
        rho = pauli_z_as(&rho, 1, alpha, how)?;
    }
    Ok(rho)
}

/// CNOT outcome pair with its corrected output.
#[derive(Debug, Clone)]
pub struct CnotBranch<T> {
    pub control_outcome: BellOutcome,
    pub target_outcome: BellOutcome,
    pub probability: T,
    pub state: Mixture<T>,
    pub fidelity: Option<T>,
}

/// Every successful outcome pair of the CNOT plus the total failure
/// probability.
#[derive(Debug, Clone)]
pub struct CnotBranches<T> {
    pub branches: Vec<CnotBranch<T>>,
    pub failure: T,
}

impl<T: Real> CnotBranches<T> {
    /// Draws one run: an outcome pair with its corrected state, or a failure.
    pub fn sample_run<R: Rng + ?Sized>(&self, rng: &mut R) -> Run<T> {
        let mut entries: Vec<(Option<usize>, T)> = self
            .branches
            .iter()
            .enumerate()
            .map(|(i, b)| (Some(i), b.probability))
            .collect();
        entries.push((None, self.failure));
        let mut trace = ProtocolTrace::default();
        match crate::sampling::Categorical::new(entries)
            .sample(rng)
            .flatten()
        {
            Some(i) => {
                let b = &self.branches[i];
                trace.push(
                    "control_bell_measure",
                    b.control_outcome.label(),
                    b.probability,
                    None,
                );
                trace.push(
                    "target_bell_measure",
                    b.target_outcome.label(),
                    b.probability,
                    None,
                );
                let pair = format!("{}/{}", b.control_outcome.label(), b.target_outcome.label());
                trace.push("correction", &pair, T::one(), b.fidelity);
                Run {
                    outcomes: vec![b.control_outcome, b.target_outcome],
                    state: Some(b.state.clone()),
                    trace,
                }
            }
            None => {
                trace.push(
                    "bell_measure",
                    BellOutcome::Failure.label(),
                    self.failure,
                    None,
                );
                Run {
                    outcomes: vec![BellOutcome::Failure],
                    state: None,
                    trace,
                }
            }
        }
    }
}

/// Teleportation CNOT on a two-mode input (control mode 0, target mode 1)
/// consuming `chi` on modes (b, c, e, f).
///
/// `ideal` (if given) is the expected output; fidelities are reported against
/// it. `table` chooses the Pauli corrections.
pub fn cnot_branches_with<T: Real>(
    input: &Mixture<T>,
    chi: &Mixture<T>,
    alpha: T,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
    ideal: Option<&Superposition<T>>,
    table: impl Fn(BellOutcome, BellOutcome) -> CnotCorrection,
) -> Result<CnotBranches<T>> {
    positive(alpha)?;
    if input.modes() != 2 {
        return Err(Error::ModeMismatch {
            left: 2,
            right: input.modes(),
        });
    }
    if chi.modes() != 4 {
        return Err(Error::ModeMismatch {
            left: 4,
            right: chi.modes(),
        });
    }
    // modes: b0 c1 e2 f3 control4 target5
    let joint = chi.tensor(input);
    let first = bell_measure_mixed(&joint, (4, 0), alpha, det, cfg.measurement, cfg.prune_tol)?;
    let mut failure = first.probability(BellOutcome::Failure);
    let mut branches = Vec::new();
    for b1 in &first.branches {
        let Some(rho) = &b1.state else { continue };
        // modes now: c0 e1 f2 target3
        let second = bell_measure_mixed(rho, (3, 1), alpha, det, cfg.measurement, cfg.prune_tol)?;
        failure = failure + b1.probability * second.probability(BellOutcome::Failure);
        for b2 in &second.branches {
            let Some(out) = &b2.state else { continue };
            // modes now: c0 f1
            let out = apply_correction(out, table(b1.outcome, b2.outcome), alpha, cfg.corrections)?
                .normalize()?;
            let fidelity = match ideal {
                Some(psi) => Some(out.fidelity(psi)?),
                None => None,
            };
            branches.push(CnotBranch {
                control_outcome: b1.outcome,
                target_outcome: b2.outcome,
                probability: b1.probability * b2.probability,
                state: out,
                fidelity,
            });
        }
    }
    Ok(CnotBranches { branches, failure })
}

/// [`cnot_branches_with`] for pure logical inputs with the pinned table.
pub fn cnot_branches<T: Real>(
    control: &Superposition<T>,
    target: &Superposition<T>,
    chi: &Mixture<T>,
    alpha: T,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
) -> Result<CnotBranches<T>> {
    crate::state::check_normalized(control)?;
    crate::state::check_normalized(target)?;
    let input = control.tensor(target);
    let ideal = ideal_cnot(&input, 0, 1)?.normalize()?;
    cnot_branches_with(
        &Mixture::from_pure(&input),
        chi,
        alpha,
        det,
        cfg,
        Some(&ideal),
        cnot_correction,
    )
}

/// One sampled CNOT run: prepares `|χ⟩` (per `cfg.resources`), then the two
/// Bell measurements and corrections.
pub fn cnot<T: Real, R: Rng + ?Sized>(
    control: &Qubit<T>,
    target: &Qubit<T>,
    det: &Detector<T>,
    cfg: &ProtocolConfig<T>,
    rng: &mut R,
) -> Result<Run<T>> {
    let alpha = control.alpha;
    if (target.alpha - alpha).abs() > T::tol(1e-12) * alpha {
        return Err(invalid(
            "control and target must share the coherent amplitude",
        ));
    }
    let chi_run = make_chi(alpha, det, cfg, rng)?;
    let mut trace = chi_run.trace;
    let mut outcomes = chi_run.outcomes;
    let Some(chi) = chi_run.state else {
        return Ok(Run {
            outcomes,
            state: None,
            trace,
        });
    };
    let input = control.state().tensor(&target.state());
    let ideal = ideal_cnot(&input, 0, 1)?.normalize()?;
    let joint = chi.tensor(&Mixture::from_pure(&input));

    let first = bell_measure_mixed(&joint, (4, 0), alpha, det, cfg.measurement, cfg.prune_tol)?;
    let o1 = pick(&first, rng);
    trace.push(
        "control_bell_measure",
        o1.label(),
        first.probability(o1),
        None,
    );
    outcomes.push(o1);
    let Some(rho) = first.branch(o1).state.clone() else {
        return Ok(Run {
            outcomes,
            state: None,
            trace,
        });
    };
    let second = bell_measure_mixed(&rho, (3, 1), alpha, det, cfg.measurement, cfg.prune_tol)?;
    let o2 = pick(&second, rng);
    trace.push(
        "target_bell_measure",
        o2.label(),
        second.probability(o2),
        None,
    );
    outcomes.push(o2);
    let Some(out) = second.branch(o2).state.clone() else {
        return Ok(Run {
            outcomes,
            state: None,
            trace,
        });
    };
    let out =
        apply_correction(&out, cnot_correction(o1, o2), alpha, cfg.corrections)?.normalize()?;
    let f = out.fidelity(&ideal)?;
    trace.push(
        "correction",
        &format!("{}/{}", o1.label(), o2.label()),
        T::one(),
        Some(f),
    );
    Ok(Run {
        outcomes,
        state: Some(out),
        trace,
    })
}
