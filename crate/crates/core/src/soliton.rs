//! Solitons: detection in states, internal tableaux, two-body scattering via
//! `R̃ = (R × R, δ)` and scattering experiments.
//!
//! A run of columns `b_1 ... b_d` (left to right) is a soliton when its rows
//! weakly decrease along the run and every column satisfies
//! `x_{k-1} ≤ k < x_k`. Its internal tableau lists the columns right to left,
//! `u = [b_d, ..., b_1]`, which is then an element of `B^{k,d}`. The phase is
//! an integer exponent; at `t = 0` it is the absolute position of the
//! leftmost column.

use std::fmt;

use crate::bbs::BbsState;
use crate::error::{Error, Result};
use crate::rmatrix::apply_r;
use crate::tableau::{Letter, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Soliton {
    phase: i64,
    k: usize,
    internal: Tableau,
}

fn check_internal(internal: &Tableau, k: usize) -> std::result::Result<(), String> {
    let (rows, d) = internal.rectangle_dims().map_err(|e| e.to_string())?;
    if rows != k || d == 0 {
        return Err(format!("internal tableau must have {k} rows and at least one column"));
    }
    let kk = k as Letter;
    for (j, col) in internal.columns().iter().enumerate() {
        if k >= 2 && col[k - 2] > kk {
            return Err(format!("column {} has x_(k-1) = {} > k", j + 1, col[k - 2]));
        }
        if col[k - 1] <= kk {
            return Err(format!("column {} has x_k = {} <= k", j + 1, col[k - 1]));
        }
    }
    Ok(())
}

impl Soliton {
    pub fn new(phase: i64, internal: Tableau, k: usize) -> Result<Self> {
        check_internal(&internal, k).map_err(Error::Invalid)?;
        Ok(Soliton { phase, k, internal })
    }

    /// Reassembles a soliton from `u_{<k}` (k-1 rows, possibly empty) and
    /// `u_k` (one row).
    pub fn from_split(phase: i64, low: &Tableau, high: &Tableau, k: usize) -> Result<Self> {
        Soliton::new(phase, low.stack(high)?, k)
    }

    pub fn phase(&self) -> i64 {
        self.phase
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> Letter {
        self.internal.n()
    }

    pub fn length(&self) -> usize {
        self.internal.num_cols()
    }

    pub fn internal(&self) -> &Tableau {
        &self.internal
    }

    /// `u_{<k}`: the first `k-1` rows.
    pub fn split_low(&self) -> Tableau {
        self.internal.split_rows(self.k - 1).0
    }

    /// `u_k`: the bottom row.
    pub fn split_high(&self) -> Tableau {
        self.internal.split_rows(self.k - 1).1
    }

    pub fn with_phase(&self, phase: i64) -> Self {
        Soliton { phase, ..self.clone() }
    }

    /// The run `b_1 ... b_d` as it sits in a state.
    pub fn decode(&self) -> Vec<Tableau> {
        self.internal
            .columns()
            .iter()
            .rev()
            .map(|c| Tableau::column(c, self.n()).expect("columns of a valid tableau"))
            .collect()
    }
}

impl fmt::Display for Soliton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{}[{}]", self.phase, self.internal)
    }
}

/// Encodes a run of columns `b_1 ... b_d` starting at `phase`.
pub fn encode(run: &[Tableau], phase: i64, k: usize) -> Result<Soliton> {
    let fail = |reason: String| Error::NotASoliton { start: phase, end: phase + run.len() as i64, reason };
    let first = run.first().ok_or_else(|| fail("empty run".into()))?;
    let n = first.n();
    let mut columns = Vec::with_capacity(run.len());
    for (j, b) in run.iter().enumerate() {
        if b.num_cols() != 1 || b.num_rows() != k {
            return Err(fail(format!("site {} is not a column of height {k}", j + 1)));
        }
        columns.push(b.columns().remove(0));
    }
    for j in 1..columns.len() {
        if let Some(i) = (0..k).find(|&i| columns[j - 1][i] < columns[j][i]) {
            return Err(fail(format!("row {} increases between sites {} and {}", i + 1, j, j + 1)));
        }
    }
    columns.reverse();
    let internal = Tableau::from_columns(&columns, n)?;
    check_internal(&internal, k).map_err(fail)?;
    Ok(Soliton { phase, k, internal })
}

/// Solitons in position order. At observation time `t` under `T_l`, phases
/// are positions minus `min(d, l) t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolitonConfig {
    pub n: Letter,
    pub k: usize,
    pub solitons: Vec<Soliton>,
}

impl SolitonConfig {
    pub fn new(n: Letter, k: usize, solitons: Vec<Soliton>) -> Result<Self> {
        for w in solitons.windows(2) {
            if w[1].phase < w[0].phase + w[0].length() as i64 {
                return Err(Error::Invalid(format!("solitons at {} and {} overlap", w[0].phase, w[1].phase)));
            }
        }
        Ok(SolitonConfig { n, k, solitons })
    }

    pub fn len(&self) -> usize {
        self.solitons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solitons.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.solitons.iter().map(Soliton::length).collect()
    }

    /// `c_{j+1} - c_j - d_j`.
    pub fn gaps(&self) -> Vec<i64> {
        self.solitons
            .windows(2)
            .map(|w| w[1].phase - w[0].phase - w[0].length() as i64)
            .collect()
    }

    /// Every gap is at least the length of the soliton to its right.
    pub fn is_well_separated(&self) -> bool {
        self.gaps().iter().zip(&self.solitons[1..]).all(|(&g, s)| g >= s.length() as i64)
    }

    /// No further collisions under `T_l`: speeds `min(d, l)` never decrease
    /// to the right, and each gap lets the carrier empty out before the next
    /// soliton.
    pub fn is_free(&self, l: usize) -> bool {
        self.solitons.windows(2).zip(self.gaps()).all(|(w, g)| {
            let (a, b) = (w[0].length().min(l), w[1].length().min(l));
            a <= b && g >= a as i64
        })
    }

    /// Places every soliton at its phase.
    pub fn build(&self) -> Result<BbsState> {
        let Some(first) = self.solitons.first() else {
            return BbsState::vacuum(self.n, self.k);
        };
        let vac = Tableau::vacuum_column(self.k, self.n);
        let mut cols = Vec::new();
        let mut pos = first.phase;
        for s in &self.solitons {
            while pos < s.phase {
                cols.push(vac.clone());
                pos += 1;
            }
            cols.extend(s.decode());
            pos += s.length() as i64;
        }
        BbsState::new(self.n, self.k, first.phase, cols)
    }

    /// Phases shifted back by `min(d, l) t`.
    pub fn normalized(&self, l: usize, t: usize) -> SolitonConfig {
        SolitonConfig {
            n: self.n,
            k: self.k,
            solitons: self
                .solitons
                .iter()
                .map(|s| s.with_phase(s.phase - (s.length().min(l) * t) as i64))
                .collect(),
        }
    }
}

/// Splits the support of a state into maximal non-vacuum runs and encodes
/// each of them.
pub fn detect(p: &BbsState) -> Result<SolitonConfig> {
    let vac = p.vacuum_column();
    let mut solitons = Vec::new();
    let cols = p.columns();
    let mut j = 0;
    while j < cols.len() {
        if cols[j] == vac {
            j += 1;
            continue;
        }
        let start = j;
        while j < cols.len() && cols[j] != vac {
            j += 1;
        }
        solitons.push(encode(&cols[start..j], p.offset() + start as i64, p.k())?);
    }
    SolitonConfig::new(p.n(), p.k(), solitons)
}

/// Outcome of `R̃(ζ^{c1} u ⊗ ζ^{c2} v) = ζ^{c2-δ} ṽ ⊗ ζ^{c1+δ} ũ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBody {
    pub left: Soliton,
    pub right: Soliton,
    pub delta: i64,
    pub h_low: i64,
    pub h_high: i64,
}

/// Scattering of a longer soliton `s1` with a shorter one `s2` to its right:
/// `R × R` on the split internals, phase shift
/// `δ = 2 d_2 + H(u_k ⊗ v_k) + H(u_{<k} ⊗ v_{<k})`.
pub fn predict_two_body(s1: &Soliton, s2: &Soliton) -> Result<TwoBody> {
    let (d1, d2) = (s1.length(), s2.length());
    if d1 <= d2 {
        return Err(Error::Invalid(format!("scattering needs d1 > d2, got d1={d1} d2={d2}")));
    }
    if s1.k != s2.k || s1.n() != s2.n() {
        return Err(Error::Invalid("solitons live in different crystals".into()));
    }
    let low = apply_r(&s1.split_low(), &s2.split_low())?;
    let high = apply_r(&s1.split_high(), &s2.split_high())?;
    let delta = 2 * d2 as i64 + high.energy + low.energy;
    let left = Soliton::from_split(s2.phase - delta, &low.left_out, &high.left_out, s1.k)?;
    let right = Soliton::from_split(s1.phase + delta, &low.right_out, &high.right_out, s1.k)?;
    Ok(TwoBody { left, right, delta, h_low: low.energy, h_high: high.energy })
}

/// A two-body collision in a predicted scattering chain. Indices refer to
/// the initial configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub faster: usize,
    pub slower: usize,
    pub delta: i64,
}

/// Asymptotic configuration under `T_l`: adjacent pairs whose left member is
/// faster are scattered with `R̃` until speeds are sorted. Returns the final
/// configuration, the initial index of each final soliton, and the
/// collisions performed.
pub fn predict_scattering(cfg: &SolitonConfig, l: usize) -> Result<(SolitonConfig, Vec<usize>, Vec<Collision>)> {
    let mut items: Vec<(usize, Soliton)> = cfg.solitons.iter().cloned().enumerate().collect();
    let mut collisions = Vec::new();
    loop {
        let pos = items
            .windows(2)
            .position(|w| w[0].1.length().min(l) > w[1].1.length().min(l));
        let Some(j) = pos else { break };
        let tb = predict_two_body(&items[j].1, &items[j + 1].1)?;
        collisions.push(Collision { faster: items[j].0, slower: items[j + 1].0, delta: tb.delta });
        let (a, b) = (items[j].0, items[j + 1].0);
        items[j] = (b, tb.left);
        items[j + 1] = (a, tb.right);
    }
    let ids = items.iter().map(|(i, _)| *i).collect();
    let solitons = items.into_iter().map(|(_, s)| s).collect();
    Ok((SolitonConfig { n: cfg.n, k: cfg.k, solitons }, ids, collisions))
}

type SolitonTriple = (Soliton, Soliton, Soliton);

fn rt12((a, b, c): SolitonTriple) -> Result<SolitonTriple> {
    let r = predict_two_body(&a, &b)?;
    Ok((r.left, r.right, c))
}

fn rt23((a, b, c): SolitonTriple) -> Result<SolitonTriple> {
    let r = predict_two_body(&b, &c)?;
    Ok((a, r.left, r.right))
}

/// Both bracketings of the three-body factorization:
/// `(R̃⊗1)(1⊗R̃)(R̃⊗1)` and `(1⊗R̃)(R̃⊗1)(1⊗R̃)`, each applied right factor
/// first as written left to right in the chain.
pub fn rtilde_yang_baxter_sides(s1: &Soliton, s2: &Soliton, s3: &Soliton) -> Result<(SolitonTriple, SolitonTriple)> {
    let start = (s1.clone(), s2.clone(), s3.clone());
    let lhs = rt12(rt23(rt12(start.clone())?)?)?;
    let rhs = rt23(rt12(rt23(start)?)?)?;
    Ok((lhs, rhs))
}

pub fn check_rtilde_yb(s1: &Soliton, s2: &Soliton, s3: &Soliton) -> Result<bool> {
    let (lhs, rhs) = rtilde_yang_baxter_sides(s1, s2, s3)?;
    Ok(lhs == rhs)
}

/// Observed scattering under repeated `T_l`.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub l: usize,
    pub initial: SolitonConfig,
    /// States at `t = 0, 1, ...` up to settling or the step budget.
    pub states: Vec<BbsState>,
    /// Detection per state; `None` where the state has no soliton
    /// decomposition (mid-collision).
    pub observed: Vec<Option<SolitonConfig>>,
    pub predicted: SolitonConfig,
    pub predicted_ids: Vec<usize>,
    pub collisions: Vec<Collision>,
    /// First time the configuration is free of further collisions, with its
    /// normalized phases.
    pub settled: Option<(usize, SolitonConfig)>,
}

impl Experiment {
    pub fn matches(&self) -> bool {
        matches!(&self.settled, Some((_, obs)) if *obs == self.predicted)
    }

    /// Per-soliton agreement of the settled observation with the prediction.
    pub fn soliton_matches(&self) -> Vec<bool> {
        match &self.settled {
            Some((_, obs)) if obs.len() == self.predicted.len() => obs
                .solitons
                .iter()
                .zip(&self.predicted.solitons)
                .map(|(a, b)| a == b)
                .collect(),
            _ => vec![false; self.predicted.len()],
        }
    }
}

/// Evolves `cfg` under `T_l` until it settles (sorted speeds, free gaps) or
/// `max_steps` evolutions have been done.
pub fn run_experiment(cfg: &SolitonConfig, l: usize, max_steps: usize) -> Result<Experiment> {
    let (predicted, predicted_ids, collisions) = predict_scattering(cfg, l)?;
    let mut state = cfg.build()?;
    let mut states = Vec::new();
    let mut observed = Vec::new();
    let mut settled = None;
    for t in 0..=max_steps {
        let raw = detect(&state).ok();
        let done = matches!(&raw, Some(c) if c.is_free(l));
        let obs = raw.map(|c| c.normalized(l, t));
        states.push(state.clone());
        if done {
            settled = obs.clone();
        }
        observed.push(obs);
        if done || t == max_steps {
            break;
        }
        state = state.evolve(l)?.0;
    }
    let settled = settled.map(|c| (states.len() - 1, c));
    Ok(Experiment { l, initial: cfg.clone(), states, observed, predicted, predicted_ids, collisions, settled })
}

/// The special columns used for highest-weight states, and the carrier
/// tableaux `ξ_i = [0^{l-i} 1^i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VacuumAlphabet {
    pub n: Letter,
    pub k: usize,
}

impl VacuumAlphabet {
    pub fn new(n: Letter, k: usize) -> Result<Self> {
        if k == 0 || k + 1 > n as usize {
            return Err(Error::Invalid(format!("need 1 <= k < n, got n={n} k={k}")));
        }
        Ok(VacuumAlphabet { n, k })
    }

    fn col(&self, tail: &[usize]) -> Result<Tableau> {
        let keep = self.k - tail.len();
        let letters: Vec<Letter> = (1..=keep).chain(tail.iter().copied()).map(|a| a as Letter).collect();
        Tableau::column(&letters, self.n)
    }

    fn need_two_rows(&self) -> Result<()> {
        if self.k < 2 || self.k + 2 > self.n as usize {
            return Err(Error::Invalid(format!("columns 2±, 3, 4 need k >= 2 and n >= k+2 (n={}, k={})", self.n, self.k)));
        }
        Ok(())
    }

    /// `[0] = 1_k`.
    pub fn zero(&self) -> Tableau {
        Tableau::vacuum_column(self.k, self.n)
    }

    /// `[1] = ^t[1, ..., k-1, k+1]`.
    pub fn one(&self) -> Tableau {
        self.col(&[self.k + 1]).expect("k < n")
    }

    /// `[2+] = ^t[1, ..., k-2, k, k+1]`, `[2-] = ^t[1, ..., k-2, k-1, k+2]`.
    pub fn two(&self, plus: bool) -> Result<Tableau> {
        self.need_two_rows()?;
        let k = self.k;
        if plus {
            self.col(&[k, k + 1])
        } else {
            self.col(&[k - 1, k + 2])
        }
    }

    /// `[3] = ^t[1, ..., k-2, k, k+2]`.
    pub fn three(&self) -> Result<Tableau> {
        self.need_two_rows()?;
        self.col(&[self.k, self.k + 2])
    }

    /// `[4] = ^t[1, ..., k-2, k+1, k+2]`.
    pub fn four(&self) -> Result<Tableau> {
        self.need_two_rows()?;
        self.col(&[self.k + 1, self.k + 2])
    }

    /// `ξ_i ∈ B^{k,l}`: `l-i` columns `[0]` followed by `i` columns `[1]`.
    pub fn xi(&self, i: usize, l: usize) -> Result<Tableau> {
        if i > l {
            return Err(Error::Invalid(format!("xi_{i} needs i <= l = {l}")));
        }
        let zero = self.zero().columns().remove(0);
        let one = self.one().columns().remove(0);
        let cols: Vec<Vec<Letter>> = std::iter::repeat_n(zero, l - i).chain(std::iter::repeat_n(one, i)).collect();
        Tableau::from_columns(&cols, self.n)
    }
}

/// Parameters of a highest-weight two-soliton state
/// `[0]^{c1} [1]^{d1} [0]^{c2-c1-d1} [3]^α [2±]^{d2-α-β} [1]^β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HighestWeightParams {
    pub c1: usize,
    pub d1: usize,
    pub c2: usize,
    pub alpha: usize,
    pub beta: usize,
    pub d2: usize,
    pub plus: bool,
}

pub fn highest_weight_two_soliton(alphabet: &VacuumAlphabet, p: &HighestWeightParams) -> Result<BbsState> {
    if p.alpha + p.beta > p.d2 {
        return Err(Error::Invalid(format!("alpha + beta = {} exceeds d2 = {}", p.alpha + p.beta, p.d2)));
    }
    if p.d1 <= p.d2 || p.d2 == 0 {
        return Err(Error::Invalid(format!("need d1 > d2 >= 1, got d1={} d2={}", p.d1, p.d2)));
    }
    if p.c2 < p.c1 + p.d1 + 1 {
        return Err(Error::Invalid(format!("c2 = {} leaves no vacuum after the first soliton", p.c2)));
    }
    let mut cols = Vec::new();
    cols.extend(std::iter::repeat_n(alphabet.one(), p.d1));
    cols.extend(std::iter::repeat_n(alphabet.zero(), p.c2 - p.c1 - p.d1));
    cols.extend(std::iter::repeat_n(alphabet.three()?, p.alpha));
    cols.extend(std::iter::repeat_n(alphabet.two(p.plus)?, p.d2 - p.alpha - p.beta));
    cols.extend(std::iter::repeat_n(alphabet.one(), p.beta));
    BbsState::new(alphabet.n, alphabet.k, p.c1 as i64, cols)
}
