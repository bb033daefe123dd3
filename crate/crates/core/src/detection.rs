// SPDX-License-Identifier: Apache-2.0

//! Photon counting with inefficient threshold detectors.
//!
//! Detection efficiency `d` thins the true photon number binomially. For a
//! coherent dyad `|β⟩⟨γ|` the thinned-count weights have the closed form
//!
//! `⟨γ|E_m|β⟩ = exp(-(|β|²+|γ|²)/2 + (1-d)βγ*) (dβγ*)^m / m!`,
//!
//! so every statistic below is exact in the coherent representation; the
//! Fock truncation `N` only bounds the support of dense count tables.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::gates::{beam_splitter, hadamard_as, BeamSplitter, Realization};
use crate::sampling::Categorical;
use crate::scalar::Real;
use crate::state::{merge_tol, Dyad, Ket, Mixture, Operand, Superposition, DEFAULT_PRUNE_TOL};

/// Default number of Fock levels kept by dense distributions.
pub const DEFAULT_TRUNCATION: usize = 128;

/// Largest Poisson tail allowed beyond the truncation.
pub const TAIL_BOUND: f64 = 1e-12;

/// Photodetector: efficiency `d`, counts `<= threshold` read as "no click".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detector<T> {
    pub efficiency: T,
    pub threshold: usize,
    pub truncation: usize,
}

impl<T: Real> Detector<T> {
    pub fn new(efficiency: T, threshold: usize, truncation: usize) -> Result<Self> {
        if !(efficiency >= T::zero() && efficiency <= T::one()) {
            return Err(invalid(format!(
                "efficiency must lie in [0, 1], got {efficiency}"
            )));
        }
        if truncation == 0 {
            return Err(invalid("truncation must be at least 1"));
        }
        Ok(Detector {
            efficiency,
            threshold,
            truncation,
        })
    }

    /// Unit efficiency, any photon is a click.
    pub fn ideal() -> Self {
        Detector {
            efficiency: T::one(),
            threshold: 0,
            truncation: DEFAULT_TRUNCATION,
        }
    }

    pub fn with_efficiency(efficiency: T) -> Result<Self> {
        Self::new(efficiency, 0, DEFAULT_TRUNCATION)
    }

    /// Fails unless the Poisson tail of mean `intensity` beyond the truncation
    /// is below [`TAIL_BOUND`].
    pub fn check_truncation(&self, intensity: T) -> Result<()> {
        let bound = T::lit(TAIL_BOUND);
        if poisson_tail(intensity, self.truncation) < bound {
            Ok(())
        } else {
            Err(Error::Truncation {
                truncation: self.truncation,
                required: required_truncation(intensity, bound),
            })
        }
    }
}

/// `P(n >= levels)` for `n ~ Poisson(mean)`, summed directly over the tail.
pub fn poisson_tail<T: Real>(mean: T, levels: usize) -> T {
    if mean <= T::zero() {
        return if levels == 0 { T::one() } else { T::zero() };
    }
    // log pmf at n = levels, then walk upward until terms vanish
    let mut log_p = -mean;
    for n in 1..=levels {
        log_p = log_p + mean.ln() - T::lit(n as f64).ln();
    }
    let mut p = log_p.exp();
    let mut sum = T::zero();
    let mut n = levels;
    loop {
        sum = sum + p;
        n += 1;
        p = p * mean / T::lit(n as f64);
        if (n as f64) > mean.as_f64() && p <= sum * T::epsilon() * T::lit(1e-3) {
            break;
        }
        if p == T::zero() {
            break;
        }
    }
    sum.min(T::one())
}

/// Smallest truncation whose Poisson tail is below `bound`.
pub fn required_truncation<T: Real>(mean: T, bound: T) -> usize {
    let mut n = 1usize;
    while poisson_tail(mean, n) >= bound {
        n += 1;
    }
    n
}

/// `⟨γ|E_m|β⟩` for `m = 0..levels` (single mode).
pub(crate) fn count_weights<T: Real>(
    beta: Complex<T>,
    gamma: Complex<T>,
    efficiency: T,
    levels: usize,
) -> Vec<Complex<T>> {
    let half = T::lit(0.5);
    let cross = beta * gamma.conj();
    let lead =
        (cross * (T::one() - efficiency) - (beta.norm_sqr() + gamma.norm_sqr()) * half).exp();
    let step = cross * efficiency;
    let mut out = Vec::with_capacity(levels);
    let mut w = lead;
    for m in 0..levels {
        if m > 0 {
            w = w * step / T::lit(m as f64);
        }
        out.push(w);
    }
    out
}

/// `(⟨γ|E_silent|β⟩, ⟨γ|E_click|β⟩)` for one mode, where silent means
/// `count <= threshold`.
pub(crate) fn bucket_weights<T: Real>(
    beta: Complex<T>,
    gamma: Complex<T>,
    det: &Detector<T>,
) -> (Complex<T>, Complex<T>) {
    let silent = count_weights(beta, gamma, det.efficiency, det.threshold + 1)
        .into_iter()
        .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
    let total = Ket::coherent(gamma).overlap_unchecked(&Ket::coherent(beta));
    (silent, total - silent)
}

/// Joint distribution of detected counts `(m_1, …, m_M)`, `m_i < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountDistribution<T> {
    modes: usize,
    truncation: usize,
    probs: Vec<T>,
}

impl<T: Real> CountDistribution<T> {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn index(&self, counts: &[usize]) -> Option<usize> {
        if counts.len() != self.modes {
            return None;
        }
        let mut idx = 0usize;
        for &c in counts {
            if c >= self.truncation {
                return None;
            }
            idx = idx * self.truncation + c;
        }
        Some(idx)
    }

    /// Probability of one count tuple; zero outside the table.
    pub fn get(&self, counts: &[usize]) -> T {
        self.index(counts).map_or(T::zero(), |i| self.probs[i])
    }

    fn counts_of(&self, mut idx: usize) -> Vec<usize> {
        let mut c = vec![0; self.modes];
        for slot in c.iter_mut().rev() {
            *slot = idx % self.truncation;
            idx /= self.truncation;
        }
        c
    }

    /// `(counts, probability)` in lexicographic order of the counts.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, T)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.counts_of(i), p))
    }

    pub fn total(&self) -> T {
        self.probs.iter().fold(T::zero(), |a, &b| a + b)
    }

    /// Single-mode marginal.
    pub fn marginal(&self, mode: usize) -> Vec<T> {
        let mut out = vec![T::zero(); self.truncation];
        for (c, p) in self.iter() {
            out[c[mode]] = out[c[mode]] + p;
        }
        out
    }

    /// Total probability of count tuples satisfying `pred`.
    pub fn probability_where(&self, pred: impl Fn(&[usize]) -> bool) -> T {
        self.iter()
            .filter(|(c, _)| pred(c))
            .fold(T::zero(), |a, (_, p)| a + p)
    }

    /// `½ Σ |p − q|` over the common table.
    pub fn total_variation(&self, other: &CountDistribution<T>) -> Result<T> {
        if self.modes != other.modes || self.truncation != other.truncation {
            return Err(invalid("count distributions have different shapes"));
        }
        Ok(self
            .probs
            .iter()
            .zip(&other.probs)
            .fold(T::zero(), |a, (&p, &q)| a + (p - q).abs())
            * T::lit(0.5))
    }

    /// Rows `m1,...,mM,probability`, scientific notation with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.modes).map(|i| format!("m{i}")).collect();
        out.push_str(&header.join(","));
        out.push_str(",probability\n");
        for (c, p) in self.iter() {
            for m in &c {
                out.push_str(&m.to_string());
                out.push(',');
            }
            out.push_str(&format!("{:.11e}\n", p.as_f64()));
        }
        out
    }

    /// Categorical distribution over the nonzero entries, lexicographic order.
    pub fn to_categorical(&self) -> Categorical<Vec<usize>, T> {
        Categorical::new(self.iter().filter(|(_, p)| *p > T::zero()).collect())
    }

    pub(crate) fn from_raw(modes: usize, truncation: usize, probs: Vec<T>) -> Self {
        CountDistribution {
            modes,
            truncation,
            probs,
        }
    }
}

/// Largest table `photon_count_distribution` will allocate.
const MAX_TABLE: usize = 1 << 24;

/// Exact joint distribution of detected counts for a normalized state.
pub fn photon_count_distribution<T: Real>(
    s: &Superposition<T>,
    det: &Detector<T>,
) -> Result<CountDistribution<T>> {
    crate::state::check_normalized(s)?;
    det.check_truncation(s.max_intensity())?;
    let modes = s.modes();
    let n = det.truncation;
    let size = (0..modes).try_fold(1usize, |acc, _| acc.checked_mul(n));
    let size = match size {
        Some(sz) if sz <= MAX_TABLE => sz,
        _ => {
            return Err(invalid(
                "count table too large; use click statistics instead",
            ))
        }
    };
    let mut acc = vec![Complex::new(T::zero(), T::zero()); size];
    let terms = s.terms();
    for (j, tj) in terms.iter().enumerate() {
        for (k, tk) in terms.iter().enumerate().skip(j) {
            let weight = tj.coef * tk.coef.conj();
            let factors: Vec<Vec<Complex<T>>> = (0..modes)
                .map(|i| count_weights(tj.ket.amp(i), tk.ket.amp(i), det.efficiency, n))
                .collect();
            // off-diagonal pairs enter as 2 Re(...)
            let mult = if j == k { T::one() } else { T::lit(2.0) };
            let mut prod = vec![weight * mult];
            for f in &factors {
                let mut next = Vec::with_capacity(prod.len() * n);
                for &p in &prod {
                    for &w in f {
                        next.push(p * w);
                    }
                }
                prod = next;
            }
            for (a, p) in acc.iter_mut().zip(prod) {
                *a = *a + p;
            }
        }
    }
    let clip = T::lit(-1e-12);
    let mut probs = Vec::with_capacity(size);
    for z in acc {
        if z.re < clip {
            return Err(invalid(format!(
                "negative count probability {} (state not physical?)",
                z.re
            )));
        }
        probs.push(z.re.max(T::zero()));
    }
    Ok(CountDistribution {
        modes,
        truncation: n,
        probs,
    })
}

/// Probabilities of every click pattern on `detectors`.
///
/// Pattern `p` has bit `i` set when `detectors[i]` clicks.
pub fn click_probabilities<T: Real>(
    rho: &Mixture<T>,
    detectors: &[usize],
    det: &Detector<T>,
) -> Result<Vec<T>> {
    Ok(measure_clicks(rho, detectors, det, &[], T::zero())?.0)
}

/// Probability of `pattern` and the normalized state of the undetected modes
/// given that pattern (`None` when the pattern is impossible or no mode is left).
pub fn condition_on_clicks<T: Real>(
    rho: &Mixture<T>,
    detectors: &[usize],
    pattern: usize,
    det: &Detector<T>,
) -> Result<(T, Option<Mixture<T>>)> {
    let (probs, mut states) =
        measure_clicks(rho, detectors, det, &[pattern], T::lit(DEFAULT_PRUNE_TOL))?;
    Ok((probs[pattern], states.pop().flatten()))
}

type ClickResult<T> = (Vec<T>, Vec<Option<Mixture<T>>>);

/// Shared pass: all pattern probabilities, plus conditional states for the
/// patterns listed in `keep`.
fn measure_clicks<T: Real>(
    rho: &Mixture<T>,
    detectors: &[usize],
    det: &Detector<T>,
    keep: &[usize],
    prune_tol: T,
) -> Result<ClickResult<T>> {
    for &m in detectors {
        rho.check_mode(m)?;
    }
    for (i, &a) in detectors.iter().enumerate() {
        if detectors[..i].contains(&a) {
            return Err(invalid("detector modes must be distinct"));
        }
    }
    if detectors.len() > 16 {
        return Err(invalid("too many detectors"));
    }
    let rest: Vec<usize> = (0..rho.modes())
        .filter(|m| !detectors.contains(m))
        .collect();
    let patterns = 1usize << detectors.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut probs = vec![zero; patterns];
    let mut kept: Vec<Vec<Dyad<T>>> = vec![Vec::new(); keep.len()];

    for d in rho.terms() {
        let buckets: Vec<(Complex<T>, Complex<T>)> = detectors
            .iter()
            .map(|&m| bucket_weights(d.ket.amp(m), d.bra.amp(m), det))
            .collect();
        let (rest_ket, rest_bra) = (d.ket.select(&rest), d.bra.select(&rest));
        let rest_overlap = if rest.is_empty() {
            Complex::new(T::one(), T::zero())
        } else {
            rest_bra.overlap_unchecked(&rest_ket)
        };
        for (p, slot) in probs.iter_mut().enumerate() {
            let mut w = d.coef;
            for (i, b) in buckets.iter().enumerate() {
                w = w * if p >> i & 1 == 1 { b.1 } else { b.0 };
            }
            *slot = *slot + w * rest_overlap;
            if let Some(pos) = keep.iter().position(|&q| q == p) {
                if !rest.is_empty() {
                    kept[pos].push(Dyad {
                        coef: w,
                        ket: rest_ket.clone(),
                        bra: rest_bra.clone(),
                    });
                }
            }
        }
    }

    let probs: Vec<T> = probs.into_iter().map(|z| z.re.max(T::zero())).collect();
    let floor = T::lit(1e-300).max(T::min_positive_value());
    let states = keep
        .iter()
        .zip(kept)
        .map(|(&p, dyads)| {
            if dyads.is_empty() || probs[p] <= floor {
                None
            } else {
                Mixture::from_parts(rest.len(), dyads)
                    .prune(prune_tol)
                    .normalize()
                    .ok()
            }
        })
        .collect();
    Ok((probs, states))
}

/// Readout result for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReadoutOutcome {
    /// Detector A clicks, B silent: `|α⟩`.
    Zero,
    /// A silent, B clicks: `|−α⟩`.
    One,
    /// Neither clicks (heralded failure).
    FailureNoClick,
    /// Both click (heralded failure).
    FailureBothClick,
}

impl ReadoutOutcome {
    pub const ALL: [ReadoutOutcome; 4] = [
        ReadoutOutcome::Zero,
        ReadoutOutcome::One,
        ReadoutOutcome::FailureNoClick,
        ReadoutOutcome::FailureBothClick,
    ];

    pub fn is_failure(self) -> bool {
        matches!(
            self,
            ReadoutOutcome::FailureNoClick | ReadoutOutcome::FailureBothClick
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            ReadoutOutcome::Zero => "ZERO",
            ReadoutOutcome::One => "ONE",
            ReadoutOutcome::FailureNoClick => "FAILURE_NO_CLICK",
            ReadoutOutcome::FailureBothClick => "FAILURE_BOTH_CLICK",
        }
    }
}

/// Outcome probabilities of the readout scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutDistribution<T> {
    pub zero: T,
    pub one: T,
    pub no_click: T,
    pub both_click: T,
}

impl<T: Real> ReadoutDistribution<T> {
    pub fn failure(&self) -> T {
        self.no_click + self.both_click
    }

    pub fn total(&self) -> T {
        self.zero + self.one + self.no_click + self.both_click
    }

    pub fn probability(&self, o: ReadoutOutcome) -> T {
        match o {
            ReadoutOutcome::Zero => self.zero,
            ReadoutOutcome::One => self.one,
            ReadoutOutcome::FailureNoClick => self.no_click,
            ReadoutOutcome::FailureBothClick => self.both_click,
        }
    }

    pub fn to_categorical(&self) -> Categorical<ReadoutOutcome, T> {
        Categorical::new(
            ReadoutOutcome::ALL
                .iter()
                .map(|&o| (o, self.probability(o)))
                .collect(),
        )
    }
}

/// Mixes a single-mode qubit with an auxiliary `|α⟩` on a 50-50 beam splitter
/// and counts photons at both outputs.
pub fn readout<T: Real>(
    q: &Superposition<T>,
    alpha: T,
    det: &Detector<T>,
) -> Result<ReadoutDistribution<T>> {
    if q.modes() != 1 {
        return Err(Error::ModeMismatch {
            left: 1,
            right: q.modes(),
        });
    }
    if !(alpha > T::zero()) {
        return Err(invalid("coherent amplitude must be positive"));
    }
    crate::state::check_normalized(q)?;
    let joint = q.tensor(&Superposition::from_ket(Ket::real(alpha)));
    let out = beam_splitter(&joint, &BeamSplitter::balanced(0, 1)?)?;
    let p = click_probabilities(&Mixture::from_pure(&out), &[0, 1], det)?;
    // bit 0: A clicked, bit 1: B clicked
    Ok(ReadoutDistribution {
        zero: p[0b01],
        one: p[0b10],
        no_click: p[0b00],
        both_click: p[0b11],
    })
}

/// Bell-measurement result label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
    Failure,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 5] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
        BellOutcome::Failure,
    ];

    pub const SUCCESS: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BellOutcome::PhiPlus => "PHI_PLUS",
            BellOutcome::PhiMinus => "PHI_MINUS",
            BellOutcome::PsiPlus => "PSI_PLUS",
            BellOutcome::PsiMinus => "PSI_MINUS",
            BellOutcome::Failure => "FAILURE",
        }
    }

    /// The detector (0..4 = A, B, C, D) that stays dark for this outcome.
    pub fn silent_detector(self) -> Option<usize> {
        match self {
            BellOutcome::PhiPlus => Some(0),
            BellOutcome::PhiMinus => Some(1),
            BellOutcome::PsiPlus => Some(2),
            BellOutcome::PsiMinus => Some(3),
            BellOutcome::Failure => None,
        }
    }

    /// Whether the teleported state carries an X error for this outcome.
    pub fn flips(self) -> bool {
        matches!(self, BellOutcome::PsiPlus | BellOutcome::PsiMinus)
    }

    /// Whether the teleported state carries a Z error for this outcome.
    pub fn dephases(self) -> bool {
        matches!(self, BellOutcome::PhiMinus | BellOutcome::PsiMinus)
    }
}

/// One outcome of a Bell measurement with the conditional state of the
/// unmeasured modes (absent for failures).
#[derive(Debug, Clone)]
pub struct BellBranch<T> {
    pub outcome: BellOutcome,
    pub probability: T,
    pub state: Option<Mixture<T>>,
}

#[derive(Debug, Clone)]
pub struct BellMeasurement<T> {
    /// One entry per [`BellOutcome::ALL`], in that order.
    pub branches: Vec<BellBranch<T>>,
}

impl<T: Real> BellMeasurement<T> {
    pub fn branch(&self, o: BellOutcome) -> &BellBranch<T> {
        &self.branches[BellOutcome::ALL
            .iter()
            .position(|&x| x == o)
            .expect("listed")]
    }

    pub fn probability(&self, o: BellOutcome) -> T {
        self.branch(o).probability
    }

    pub fn total(&self) -> T {
        self.branches
            .iter()
            .fold(T::zero(), |a, b| a + b.probability)
    }

    pub fn to_categorical(&self) -> Categorical<BellOutcome, T> {
        Categorical::new(
            self.branches
                .iter()
                .map(|b| (b.outcome, b.probability))
                .collect(),
        )
    }
}

/// Applies the Bell-measurement optics to modes `(i, j)` of a state whose
/// logical amplitudes there are `±scale`.
///
/// 50-50 beam splitter across `(i, j)`, a Hadamard for amplitude `√2·scale` on
/// both outputs, then each output mixed on a 50-50 beam splitter with an
/// auxiliary `|−√2·scale⟩` appended as a new mode. Returns the evolved state and
/// the detector modes `[A, B, C, D]`.
///
/// For `|Φ+⟩` the detector amplitudes are `(0, 2α, −α, α)` (with `scale = α`):
/// A is dark. `|Φ−⟩` darkens B, `|Ψ+⟩` C and `|Ψ−⟩` D.
pub fn bell_network<T: Real, S: Operand<T> + Appendable<T>>(
    s: &S,
    modes: (usize, usize),
    scale: T,
    hadamard: Realization,
) -> Result<(S, [usize; 4])> {
    let (i, j) = modes;
    s.check_mode(i)?;
    s.check_mode(j)?;
    if i == j {
        return Err(invalid("Bell measurement needs two distinct modes"));
    }
    if !(scale > T::zero()) {
        return Err(invalid("coherent amplitude must be positive"));
    }
    let m = s.modes();
    let inner = scale * T::SQRT_2();
    let aux = Complex::new(-inner, T::zero());
    let s = s.append_coherent(&[aux, aux]);
    let s = beam_splitter(&s, &BeamSplitter::balanced(i, j)?)?;
    let s = hadamard_as(&s, i, inner, hadamard)?;
    let s = hadamard_as(&s, j, inner, hadamard)?;
    let s = beam_splitter(&s, &BeamSplitter::balanced(i, m)?)?;
    let s = beam_splitter(&s, &BeamSplitter::balanced(j, m + 1)?)?;
    Ok((s, [i, m, j, m + 1]))
}

/// Appending fixed coherent modes to a state.
pub trait Appendable<T: Real> {
    fn append_coherent(&self, amps: &[Complex<T>]) -> Self;
}

impl<T: Real> Appendable<T> for Superposition<T> {
    fn append_coherent(&self, amps: &[Complex<T>]) -> Self {
        let aux = Ket::new(amps.to_vec()).expect("finite auxiliary amplitudes");
        self.tensor(&Superposition::from_ket(aux))
    }
}

impl<T: Real> Appendable<T> for Mixture<T> {
    fn append_coherent(&self, amps: &[Complex<T>]) -> Self {
        let aux = Ket::new(amps.to_vec()).expect("finite auxiliary amplitudes");
        self.tensor(&Mixture::from_pure(&Superposition::from_ket(aux)))
    }
}

fn classify(pattern: usize) -> BellOutcome {
    // exactly one dark detector among four
    let dark = (!pattern) & 0b1111;
    if dark.count_ones() == 1 {
        BellOutcome::SUCCESS[dark.trailing_zeros() as usize]
    } else {
        BellOutcome::Failure
    }
}

/// Pattern in which only `outcome`'s detector is dark.
fn designated_pattern(outcome: BellOutcome) -> Option<usize> {
    outcome.silent_detector().map(|d| 0b1111 & !(1 << d))
}

/// Quasi-Bell measurement on modes `(i, j)` of a normalized pure state whose
/// logical amplitudes there are `±scale`. Uses the ideal Hadamard.
pub fn bell_measure<T: Real>(
    s: &Superposition<T>,
    modes: (usize, usize),
    scale: T,
    det: &Detector<T>,
) -> Result<BellMeasurement<T>> {
    bell_measure_with(
        s,
        modes,
        scale,
        det,
        Realization::Ideal,
        T::lit(DEFAULT_PRUNE_TOL),
    )
}

/// [`bell_measure`] with a chosen Hadamard realization and pruning tolerance
/// for the conditional states.
pub fn bell_measure_with<T: Real>(
    s: &Superposition<T>,
    modes: (usize, usize),
    scale: T,
    det: &Detector<T>,
    hadamard: Realization,
    prune_tol: T,
) -> Result<BellMeasurement<T>> {
    crate::state::check_normalized(s)?;
    let (out, detectors) = bell_network(s, modes, scale, hadamard)?;
    let rho = Mixture::from_pure(&out.merged(merge_tol()));
    bell_classify(&rho, &detectors, det, prune_tol)
}

/// Quasi-Bell measurement on a mixture.
pub fn bell_measure_mixed<T: Real>(
    rho: &Mixture<T>,
    modes: (usize, usize),
    scale: T,
    det: &Detector<T>,
    hadamard: Realization,
    prune_tol: T,
) -> Result<BellMeasurement<T>> {
    let (out, detectors) = bell_network(rho, modes, scale, hadamard)?;
    bell_classify(&out.merged(merge_tol()), &detectors, det, prune_tol)
}

fn bell_classify<T: Real>(
    rho: &Mixture<T>,
    detectors: &[usize; 4],
    det: &Detector<T>,
    prune_tol: T,
) -> Result<BellMeasurement<T>> {
    let keep: Vec<usize> = BellOutcome::SUCCESS
        .iter()
        .filter_map(|&o| designated_pattern(o))
        .collect();
    let (probs, states) = measure_clicks(rho, detectors, det, &keep, prune_tol)?;
    // ideal Hadamards preserve the norm only in the orthogonalized logical
    // basis, so renormalize over all click patterns
    let total = probs.iter().fold(T::zero(), |a, &b| a + b);
    if !(total > T::zero()) {
        return Err(Error::Degenerate);
    }
    let probs: Vec<T> = probs.into_iter().map(|p| p / total).collect();
    let mut branches: Vec<BellBranch<T>> = BellOutcome::SUCCESS
        .iter()
        .zip(states)
        .map(|(&o, state)| BellBranch {
            outcome: o,
            probability: probs[designated_pattern(o).expect("success outcome")],
            state,
        })
        .collect();
    let failure = probs
        .iter()
        .enumerate()
        .filter(|(p, _)| classify(*p) == BellOutcome::Failure)
        .fold(T::zero(), |a, (_, &q)| a + q);
    branches.push(BellBranch {
        outcome: BellOutcome::Failure,
        probability: failure,
        state: None,
    });
    Ok(BellMeasurement { branches })
}
