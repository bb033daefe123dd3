// SPDX-License-Identifier: Apache-2.0

//! `catsim`: error budgets, protocol runs and oracle checks for coherent-state
//! qubits from the command line.

mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use catsim::budget::{default_eps_bar, detector_miss, rotation_fidelity, threshold_probs};
use catsim::decoherence::DecoherenceParams;
use catsim::detection::{readout, BellOutcome, Detector, ReadoutOutcome, DEFAULT_TRUNCATION};
use catsim::gates::Realization;
use catsim::protocols::{
    channel_exact, chi_exact, cnot_branches, make_channel, make_chi_branches, sample_teleport_run,
    teleport_branches, ProtocolConfig, ProtocolTrace,
};
use catsim::sampling::rng_from_seed;
use catsim::state::{Mixture, Qubit, DEFAULT_PRUNE_TOL};
use catsim::verify::{run_oracle_suite, OracleConfig};
use catsim::Complex;
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use table::{Cell, Table};

#[derive(Parser, Debug)]
#[command(name = "catsim", version, about = "Coherent-state qubit simulations")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Coherent amplitude α of the logical states |±α⟩.
    #[arg(long, global = true, default_value_t = 3.0)]
    alpha: f64,
    /// Detector efficiency d.
    #[arg(long, global = true, default_value_t = 0.9)]
    efficiency: f64,
    /// Counts above this threshold register as a click.
    #[arg(long, global = true, default_value_t = 0)]
    threshold: usize,
    /// Fock-space truncation for detector statistics and the oracle.
    #[arg(long, global = true, env = "CATSIM_TRUNCATION", default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampled runs on top of the exact probabilities.
    #[arg(long, global = true, default_value_t = 0)]
    shots: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Relative cutoff for dropping small terms of conditional states.
    #[arg(long, global = true, default_value_t = DEFAULT_PRUNE_TOL)]
    prune_tol: f64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Resource {
    /// Exact resource states.
    Exact,
    /// Resource states built by the optical circuits.
    Circuit,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Correction {
    /// Exact Pauli Z.
    Ideal,
    /// Z as the displacement D(iπ/(4α)).
    Optical,
}

impl From<Correction> for Realization {
    fn from(c: Correction) -> Self {
        match c {
            Correction::Ideal => Realization::Ideal,
            Correction::Optical => Realization::Optical,
        }
    }
}

/// Bloch angles of an input qubit.
#[derive(Args, Debug, Clone, Copy)]
struct BlochArgs {
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reference error-budget quantities next to their quoted values.
    PaperNumbers,
    /// Readout probabilities of one qubit, optionally sampled.
    Readout(BlochArgs),
    /// Teleportation branches of one qubit.
    Teleport {
        #[command(flatten)]
        qubit: BlochArgs,
        #[arg(long, value_enum, default_value_t = Resource::Exact)]
        channel: Resource,
        #[arg(long, value_enum, default_value_t = Correction::Optical)]
        corrections: Correction,
        /// Write the sampled runs' traces here as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Teleportation-based CNOT.
    Cnot {
        /// Run all four logical basis inputs.
        #[arg(long)]
        truth_table: bool,
        #[arg(long, default_value_t = 0.0)]
        control_theta: f64,
        #[arg(long, default_value_t = 0.0)]
        control_phi: f64,
        #[arg(long, default_value_t = 0.0)]
        target_theta: f64,
        #[arg(long, default_value_t = 0.0)]
        target_phi: f64,
        #[arg(long, value_enum, default_value_t = Resource::Exact)]
        resources: Resource,
        #[arg(long, value_enum, default_value_t = Correction::Ideal)]
        corrections: Correction,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Error budget and coherence factor over a parameter grid.
    Sweep {
        /// Coherent amplitudes (default: --alpha).
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        /// Detector efficiencies (default: --efficiency).
        #[arg(long, value_delimiter = ',')]
        efficiencies: Option<Vec<f64>>,
        /// Click thresholds (default: --threshold).
        #[arg(long, value_delimiter = ',')]
        thresholds: Option<Vec<usize>>,
        /// Loss exposures γτ.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        gamma_taus: Vec<f64>,
        /// Fixed residual drift (default: π/(4α) per row).
        #[arg(long)]
        eps_bar: Option<f64>,
    },
    /// Compare the coherent-state algebra with the Fock-space oracle.
    Verify {
        /// Random states per check.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Largest amplitude drawn for random states.
        #[arg(long, default_value_t = 3.5)]
        alpha_max: f64,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn qubit(b: BlochArgs, alpha: f64) -> Qubit<f64> {
    Qubit::bloch(b.theta, b.phi, alpha)
        .unwrap_or_else(|e| usage_error(format!("invalid qubit: {e}")))
}

fn detector(cfg: &RunConfig) -> Result<Detector<f64>> {
    Ok(Detector::new(
        cfg.efficiency,
        cfg.threshold,
        cfg.truncation,
    )?)
}

fn protocol(cfg: &RunConfig, corrections: Correction) -> ProtocolConfig<f64> {
    ProtocolConfig {
        prune_tol: cfg.prune_tol,
        corrections: corrections.into(),
        ..ProtocolConfig::default()
    }
}

fn rate(count: Option<usize>, shots: usize) -> Cell {
    count.map(|k| k as f64 / shots as f64).into()
}

fn write_traces(path: &Option<PathBuf>, traces: &[ProtocolTrace]) -> Result<()> {
    if let Some(path) = path {
        let text: String = traces.iter().map(ProtocolTrace::to_json_lines).collect();
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn paper_numbers(cfg: &RunConfig) -> Result<Table> {
    let (a, d) = (cfg.alpha, cfg.efficiency);
    let eps = default_eps_bar(a);
    let k0 = threshold_probs(a, d, 0, eps)?;
    let k2 = threshold_probs(a, d, 2, eps)?;
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let rows = [
        ("detector_miss", detector_miss(a, d), 9e-8),
        (
            "rotation_fidelity",
            rotation_fidelity(one, zero, a, eps),
            0.93,
        ),
        ("p_A_k0", k0.p_a, 9e-8),
        ("p_B_k0", k0.p_b, 0.030),
        ("undetected_k0", k0.undetected, 3e-9),
        ("detected_k0", k0.detected, 0.030),
        ("undetected_k2", k2.undetected, 6e-11),
        ("detected_k2", k2.detected, 2e-5),
    ];
    let mut t = Table::new(&[
        "quantity",
        "alpha",
        "d",
        "value",
        "reference",
        "rel_deviation",
    ]);
    for (name, value, reference) in rows {
        t.push(vec![
            name.into(),
            a.into(),
            d.into(),
            value.into(),
            reference.into(),
            ((value - reference) / reference).into(),
        ]);
    }
    Ok(t)
}

fn cmd_readout(cfg: &RunConfig, b: BlochArgs) -> Result<Table> {
    let q = qubit(b, cfg.alpha);
    let dist = readout(&q.state(), cfg.alpha, &detector(cfg)?)?;
    let cat = dist.to_categorical();
    let counts =
        (cfg.shots > 0).then(|| cat.sample_counts(&mut rng_from_seed(cfg.seed), cfg.shots));
    let mut t = Table::new(&["outcome", "probability", "count", "rate"]);
    for (i, o) in ReadoutOutcome::ALL.iter().enumerate() {
        let count = counts.as_ref().map(|c| c[i]);
        t.push(vec![
            o.label().into(),
            dist.probability(*o).into(),
            count.into(),
            rate(count, cfg.shots),
        ]);
    }
    Ok(t)
}

fn cmd_teleport(
    cfg: &RunConfig,
    b: BlochArgs,
    channel: Resource,
    corrections: Correction,
    trace: &Option<PathBuf>,
) -> Result<Table> {
    let q = qubit(b, cfg.alpha);
    let ch = match channel {
        Resource::Exact => channel_exact(cfg.alpha)?,
        Resource::Circuit => make_channel(cfg.alpha)?,
    };
    let branches = teleport_branches(&q, &ch, &detector(cfg)?, &protocol(cfg, corrections))?;
    let mut rng = rng_from_seed(cfg.seed);
    let runs: Vec<_> = (0..cfg.shots)
        .map(|_| sample_teleport_run(&branches, &mut rng))
        .collect();
    write_traces(
        trace,
        &runs.iter().map(|r| r.trace.clone()).collect::<Vec<_>>(),
    )?;
    let mut t = Table::new(&["outcome", "probability", "fidelity", "count", "rate"]);
    for b in &branches {
        let count =
            (cfg.shots > 0).then(|| runs.iter().filter(|r| r.outcomes[0] == b.outcome).count());
        t.push(vec![
            b.outcome.label().into(),
            b.probability.into(),
            b.fidelity.into(),
            count.into(),
            rate(count, cfg.shots),
        ]);
    }
    Ok(t)
}

/// `|χ⟩` on modes (b, c, e, f): exact, or the heralded ensemble of corrected
/// circuit preparations.
fn chi(cfg: &RunConfig, resources: Resource, corrections: Correction) -> Result<Mixture<f64>> {
    match resources {
        Resource::Exact => Ok(Mixture::from_pure(&chi_exact(cfg.alpha)?)),
        Resource::Circuit => {
            let pc = ProtocolConfig {
                resources: Realization::Optical,
                ..protocol(cfg, corrections)
            };
            let terms = make_chi_branches(cfg.alpha, &detector(cfg)?, &pc)?
                .into_iter()
                .filter_map(|b| b.state.map(|s| s.scale(b.probability)))
                .flat_map(|m| m.terms().to_vec())
                .collect();
            Ok(Mixture::new(terms)?.normalize()?)
        }
    }
}

fn cmd_cnot(
    cfg: &RunConfig,
    truth_table: bool,
    control: BlochArgs,
    target: BlochArgs,
    resources: Resource,
    corrections: Correction,
    trace: &Option<PathBuf>,
) -> Result<Table> {
    let det = detector(cfg)?;
    let pc = protocol(cfg, corrections);
    let chi = chi(cfg, resources, corrections)?;
    let a = cfg.alpha;
    if truth_table {
        let mut t = Table::new(&[
            "control",
            "target",
            "out_control",
            "out_target",
            "success_probability",
            "min_fidelity",
            "mean_fidelity",
        ]);
        for (c, g) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
            let basis = |bit| {
                if bit == 0 {
                    Qubit::zero(a)
                } else {
                    Qubit::one(a)
                }
            };
            let r = cnot_branches(&basis(c).state(), &basis(g).state(), &chi, a, &det, &pc)?;
            let p: f64 = r.branches.iter().map(|b| b.probability).sum();
            let fids: Vec<f64> = r.branches.iter().filter_map(|b| b.fidelity).collect();
            let mean = r
                .branches
                .iter()
                .map(|b| b.probability * b.fidelity.unwrap_or(0.0))
                .sum::<f64>()
                / p;
            t.push(vec![
                c.into(),
                g.into(),
                c.into(),
                (c ^ g).into(),
                p.into(),
                fids.iter().cloned().fold(f64::INFINITY, f64::min).into(),
                mean.into(),
            ]);
        }
        return Ok(t);
    }
    let (qc, qt) = (qubit(control, a), qubit(target, a));
    let r = cnot_branches(&qc.state(), &qt.state(), &chi, a, &det, &pc)?;
    let mut rng = rng_from_seed(cfg.seed);
    let runs: Vec<_> = (0..cfg.shots).map(|_| r.sample_run(&mut rng)).collect();
    write_traces(
        trace,
        &runs.iter().map(|r| r.trace.clone()).collect::<Vec<_>>(),
    )?;
    let count_of = |outcomes: &[BellOutcome]| {
        (cfg.shots > 0).then(|| runs.iter().filter(|r| r.outcomes == outcomes).count())
    };
    let mut t = Table::new(&[
        "control_outcome",
        "target_outcome",
        "probability",
        "fidelity",
        "count",
        "rate",
    ]);
    for b in &r.branches {
        let count = count_of(&[b.control_outcome, b.target_outcome]);
        t.push(vec![
            b.control_outcome.label().into(),
            b.target_outcome.label().into(),
            b.probability.into(),
            b.fidelity.into(),
            count.into(),
            rate(count, cfg.shots),
        ]);
    }
    let count = count_of(&[BellOutcome::Failure]);
    t.push(vec![
        BellOutcome::Failure.label().into(),
        BellOutcome::Failure.label().into(),
        r.failure.into(),
        Cell::Empty,
        count.into(),
        rate(count, cfg.shots),
    ]);
    Ok(t)
}

fn cmd_sweep(
    cfg: &RunConfig,
    alphas: Option<Vec<f64>>,
    efficiencies: Option<Vec<f64>>,
    thresholds: Option<Vec<usize>>,
    gamma_taus: Vec<f64>,
    eps_bar: Option<f64>,
) -> Result<Table> {
    let alphas = alphas.unwrap_or_else(|| vec![cfg.alpha]);
    let effs = efficiencies.unwrap_or_else(|| vec![cfg.efficiency]);
    let ks = thresholds.unwrap_or_else(|| vec![cfg.threshold]);
    if alphas.is_empty() || effs.is_empty() || ks.is_empty() || gamma_taus.is_empty() {
        usage_error("sweep grid is empty");
    }
    let mut grid = Vec::new();
    for &a in &alphas {
        for &d in &effs {
            for &k in &ks {
                for &g in &gamma_taus {
                    grid.push((a, d, k, g));
                }
            }
        }
    }
    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .map(|&(a, d, k, g)| -> Result<Vec<Cell>> {
            let eps = eps_bar.unwrap_or_else(|| default_eps_bar(a));
            let b = threshold_probs(a, d, k, eps)?;
            let gamma = DecoherenceParams::new(g, a)?.coherence_factor();
            Ok(vec![
                a.into(),
                d.into(),
                k.into(),
                eps.into(),
                b.p_a.into(),
                b.p_b.into(),
                b.p_s.into(),
                b.undetected.into(),
                b.detected.into(),
                g.into(),
                gamma.into(),
            ])
        })
        .collect::<Result<_>>()?;
    let mut t = Table::new(&[
        "alpha",
        "d",
        "k",
        "eps_bar",
        "p_A",
        "p_B",
        "P_s",
        "undetected",
        "detected",
        "gamma_tau",
        "Gamma",
    ]);
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

fn cmd_verify(cfg: &RunConfig, samples: usize, alpha_max: f64) -> Result<(Table, bool)> {
    let oc = OracleConfig {
        alpha_max,
        truncation: cfg.truncation,
        samples,
        seed: cfg.seed,
        ..OracleConfig::default()
    };
    let report = run_oracle_suite(&oc)?;
    let mut t = Table::new(&["check", "value", "bound", "passed"]);
    for c in &report.checks {
        t.push(vec![
            c.name.as_str().into(),
            c.max_deviation.into(),
            c.bound.into(),
            c.passed.into(),
        ]);
    }
    // candidate fits are informational; only the pin itself is a check
    for &(theta, f) in &report.kerr.candidates {
        t.push(vec![
            format!("kerr_fidelity_theta_{:.6}", theta).into(),
            f.into(),
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    t.push(vec![
        "kerr_pinned_theta".into(),
        report.kerr.pinned.into(),
        Cell::Empty,
        report.kerr.pinned.is_some().into(),
    ]);
    Ok((t, report.passed()))
}

fn emit(cfg: &RunConfig, t: &Table) -> Result<()> {
    let text = match cfg.format {
        Format::Csv => t.to_csv()?,
        Format::Json => t.to_json()?,
    };
    match &cfg.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = &cli.run;
    let (table, ok) = match cli.command {
        Command::PaperNumbers => (paper_numbers(cfg)?, true),
        Command::Readout(b) => (cmd_readout(cfg, b)?, true),
        Command::Teleport {
            qubit,
            channel,
            corrections,
            trace,
        } => (
            cmd_teleport(cfg, qubit, channel, corrections, &trace)?,
            true,
        ),
        Command::Cnot {
            truth_table,
            control_theta,
            control_phi,
            target_theta,
            target_phi,
            resources,
            corrections,
            trace,
        } => {
            let control = BlochArgs {
                theta: control_theta,
                phi: control_phi,
            };
            let target = BlochArgs {
                theta: target_theta,
                phi: target_phi,
            };
            (
                cmd_cnot(
                    cfg,
                    truth_table,
                    control,
                    target,
                    resources,
                    corrections,
                    &trace,
                )?,
                true,
            )
        }
        Command::Sweep {
            alphas,
            efficiencies,
            thresholds,
            gamma_taus,
            eps_bar,
        } => (
            cmd_sweep(cfg, alphas, efficiencies, thresholds, gamma_taus, eps_bar)?,
            true,
        ),
        Command::Verify { samples, alpha_max } => cmd_verify(cfg, samples, alpha_max)?,
    };
    emit(cfg, &table)?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("catsim: some checks failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("catsim: {e:#}");
            ExitCode::FAILURE
        }
    }
}
