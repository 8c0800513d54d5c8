//! Box-ball states over `B^{k,1}`, carrier time evolution `T_l`, the
//! conserved energies `E_l`, the soliton spectrum `N_d` and the tableaux
//! conserved through Knuth equivalence.
//!
//! A state is a finite window of columns at an absolute offset; every site
//! outside the window holds the vacuum column `1_k`. States are kept
//! canonical: the first and last stored columns are non-vacuum.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::crystal::CrystalTensor;
use crate::error::{Error, Result};
use crate::insertion::rectify;
use crate::rmatrix::apply_r;
use crate::tableau::{Letter, Tableau, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BbsState {
    n: Letter,
    k: usize,
    offset: i64,
    columns: Vec<Tableau>,
}

/// Carrier states `b^{(0)} = c_l, b^{(1)}, ...` and the emitted columns of one
/// sweep, starting at absolute position `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrierTrace {
    pub start: i64,
    pub carriers: Vec<Tableau>,
    pub outputs: Vec<Tableau>,
    /// `H(b^{(j-1)} ⊗ b_j)` per site.
    pub energies: Vec<i64>,
}

/// Both sides of the Knuth identity across one evolution step, restricted to
/// small (`1..=k`) and large (`k+1..=n`) letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossStep {
    pub before_low: Tableau,
    pub after_low: Tableau,
    pub before_high: Tableau,
    pub after_high: Tableau,
    pub before_full: Tableau,
    pub after_full: Tableau,
}

impl CrossStep {
    pub fn holds(&self) -> bool {
        self.before_low == self.after_low
            && self.before_high == self.after_high
            && self.before_full == self.after_full
    }
}

fn check_params(n: Letter, k: usize) -> Result<()> {
    if k == 0 || k >= n as usize {
        return Err(Error::Invalid(format!("need 1 <= k < n, got n={n} k={k}")));
    }
    Ok(())
}

impl BbsState {
    pub fn new(n: Letter, k: usize, offset: i64, columns: Vec<Tableau>) -> Result<Self> {
        check_params(n, k)?;
        for c in &columns {
            if c.n() != n {
                return Err(Error::AlphabetMismatch(c.n(), n));
            }
            if c.num_cols() != 1 || c.num_rows() != k {
                return Err(Error::WrongShape { rows: k, cols: 1, shape: c.shape().rows().to_vec() });
            }
            c.validate()?;
        }
        Ok(BbsState { n, k, offset, columns }.canonical())
    }

    /// Builds a state from column letter lists (top to bottom).
    pub fn from_letters(n: Letter, k: usize, offset: i64, columns: &[Vec<Letter>]) -> Result<Self> {
        let cols = columns.iter().map(|c| Tableau::column(c, n)).collect::<Result<Vec<_>>>()?;
        BbsState::new(n, k, offset, cols)
    }

    pub fn vacuum(n: Letter, k: usize) -> Result<Self> {
        BbsState::new(n, k, 0, Vec::new())
    }

    fn canonical(mut self) -> Self {
        let vac = Tableau::vacuum_column(self.k, self.n);
        let lead = self.columns.iter().take_while(|c| **c == vac).count();
        if lead == self.columns.len() {
            self.columns.clear();
            self.offset = 0;
            return self;
        }
        let trail = self.columns.iter().rev().take_while(|c| **c == vac).count();
        self.columns.truncate(self.columns.len() - trail);
        self.columns.drain(..lead);
        self.offset += lead as i64;
        self
    }

    pub fn n(&self) -> Letter {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Absolute position of the first stored column.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// One past the last stored column.
    pub fn end(&self) -> i64 {
        self.offset + self.columns.len() as i64
    }

    pub fn columns(&self) -> &[Tableau] {
        &self.columns
    }

    pub fn is_vacuum(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn vacuum_column(&self) -> Tableau {
        Tableau::vacuum_column(self.k, self.n)
    }

    pub fn column_at(&self, pos: i64) -> Tableau {
        if pos >= self.offset && pos < self.end() {
            self.columns[(pos - self.offset) as usize].clone()
        } else {
            self.vacuum_column()
        }
    }

    /// Same state moved by `shift` sites.
    pub fn shifted(&self, shift: i64) -> Self {
        let mut s = self.clone();
        if !s.columns.is_empty() {
            s.offset += shift;
        }
        s
    }

    /// The stored window as a tensor of columns.
    pub fn tensor(&self) -> CrystalTensor {
        CrystalTensor::new(self.columns.clone(), self.n).expect("state columns are valid")
    }

    /// Replaces the stored window, keeping the offset.
    pub fn with_tensor(&self, ct: CrystalTensor) -> Result<Self> {
        BbsState::new(self.n, self.k, self.offset, ct.into_factors())
    }

    /// `e_i` on the state. Vacuum columns are neutral for `i != k`, so the
    /// operator acts on the stored window.
    pub fn apply_e(&self, i: usize) -> Result<Option<Self>> {
        match self.tensor().apply_e(i)? {
            Some(ct) => self.with_tensor(ct).map(Some),
            None => Ok(None),
        }
    }

    pub fn apply_f(&self, i: usize) -> Result<Option<Self>> {
        match self.tensor().apply_f(i)? {
            Some(ct) => self.with_tensor(ct).map(Some),
            None => Ok(None),
        }
    }

    /// Sweeps the carrier `c_l` through the state. The window is extended to
    /// the right with vacuum sites until the carrier is `c_l` again.
    pub fn sweep(&self, l: usize) -> Result<CarrierTrace> {
        if l == 0 {
            return Err(Error::Invalid("carrier width must be positive".into()));
        }
        let vacuum_carrier = Tableau::vacuum_rectangle(self.k, l, self.n);
        let vac = self.vacuum_column();
        let mut carrier = vacuum_carrier.clone();
        let mut trace = CarrierTrace {
            start: self.offset,
            carriers: vec![carrier.clone()],
            outputs: Vec::with_capacity(self.columns.len() + l),
            energies: Vec::with_capacity(self.columns.len() + l),
        };
        let step = |carrier: &mut Tableau, b: &Tableau, trace: &mut CarrierTrace| -> Result<()> {
            let r = apply_r(carrier, b)?;
            trace.outputs.push(r.left_out);
            trace.energies.push(r.energy);
            *carrier = r.right_out;
            trace.carriers.push(carrier.clone());
            Ok(())
        };
        for b in &self.columns {
            step(&mut carrier, b, &mut trace)?;
        }
        let bound = (self.columns.len() + l + 1) * self.k * l + l;
        let mut pad = 0;
        while carrier != vacuum_carrier {
            if pad == bound {
                return Err(Error::CarrierUnstable(bound));
            }
            step(&mut carrier, &vac, &mut trace)?;
            pad += 1;
        }
        Ok(trace)
    }

    /// `T_l`.
    pub fn evolve(&self, l: usize) -> Result<(BbsState, CarrierTrace)> {
        let trace = self.sweep(l)?;
        let next = BbsState::new(self.n, self.k, self.offset, trace.outputs.clone())?;
        Ok((next, trace))
    }

    /// `T_l^t`.
    pub fn evolve_times(&self, l: usize, t: usize) -> Result<BbsState> {
        let mut s = self.clone();
        for _ in 0..t {
            s = s.evolve(l)?.0;
        }
        Ok(s)
    }

    /// `E_l = -Σ H(b^{(j-1)} ⊗ b_j)`.
    pub fn energy(&self, l: usize) -> Result<u64> {
        let total: i64 = self.sweep(l)?.energies.iter().sum();
        u64::try_from(-total).map_err(|_| Error::Invalid(format!("E_{l} came out negative: {}", -total)))
    }

    /// `N_d` from `E_l = Σ_d min(d, l) N_d`. Only nonzero counts are listed.
    pub fn spectrum(&self) -> Result<BTreeMap<usize, u64>> {
        let mut energies: Vec<i64> = vec![0];
        let cap = self.columns.len() * self.k + 2;
        loop {
            let l = energies.len();
            let e = self.energy(l)? as i64;
            energies.push(e);
            if e == energies[l - 1] {
                break;
            }
            if l > cap {
                return Err(Error::Invalid(format!("E_l did not saturate by l={l}")));
            }
        }
        let top = energies.len() - 1;
        let mut out = BTreeMap::new();
        for d in 1..top {
            let nd = 2 * energies[d] - energies[d - 1] - energies[d + 1];
            if nd < 0 {
                return Err(Error::NegativeSpectrum { d, value: nd });
            }
            if nd > 0 {
                out.insert(d, nd as u64);
            }
        }
        Ok(out)
    }

    /// `row(b_L) row(b_{L-1}) ... row(b_1)` over the sites `start..end`.
    pub fn window_word(&self, start: i64, end: i64) -> Word {
        let mut w = Word::empty();
        for pos in (start..end).rev() {
            w.extend(&self.column_at(pos).row_word());
        }
        w
    }

    /// `(P_{≤k}, P_{>k})`: rectifications of the small and large letters of
    /// `row(b_L) ... row(b_1) row(c_l)`, over the window of the stored support
    /// padded with `l` vacuum sites on each side.
    pub fn p_tableaux(&self, l: usize) -> Result<(Tableau, Tableau)> {
        let pad = l as i64;
        let w = self
            .window_word(self.offset - pad, self.end() + pad)
            .concat(&Tableau::vacuum_rectangle(self.k, l, self.n).row_word());
        let k = self.k as Letter;
        Ok((rectify(&w.restrict(1, k), self.n)?, rectify(&w.restrict(k + 1, self.n), self.n)?))
    }

    /// Evaluates both sides of
    /// `row(b_L)...row(b_1) row(c_l) ~ row(c_l) row(b̃_L)...row(b̃_1)`
    /// where `b̃ = T_l(b)`, over one window covering the whole carrier sweep.
    pub fn cross_step(&self, l: usize) -> Result<CrossStep> {
        let (next, trace) = self.evolve(l)?;
        let pad = l as i64;
        let start = self.offset - pad;
        let end = (trace.start + trace.outputs.len() as i64).max(next.end()) + pad;
        let cl = Tableau::vacuum_rectangle(self.k, l, self.n).row_word();
        let before = self.window_word(start, end).concat(&cl);
        let after = cl.concat(&next.window_word(start, end));
        let (n, k) = (self.n, self.k as Letter);
        Ok(CrossStep {
            before_low: rectify(&before.restrict(1, k), n)?,
            after_low: rectify(&after.restrict(1, k), n)?,
            before_high: rectify(&before.restrict(k + 1, n), n)?,
            after_high: rectify(&after.restrict(k + 1, n), n)?,
            before_full: rectify(&before, n)?,
            after_full: rectify(&after, n)?,
        })
    }

    /// The column line of the state file, with sites from `origin` on.
    pub fn columns_line(&self, origin: i64) -> String {
        let mut out = String::new();
        if self.columns.is_empty() {
            return out;
        }
        let vac = self.vacuum_column();
        let lead = (self.offset - origin).max(0) as usize;
        let cells = std::iter::repeat_n(None, lead).chain(self.columns.iter().map(Some));
        for (i, c) in cells.enumerate() {
            if i > 0 {
                out.push(' ');
            }
            match c {
                Some(c) if *c != vac => out.push_str(&c.to_string()),
                _ => out.push('.'),
            }
        }
        out
    }

    fn header(&self, origin: i64) -> String {
        format!("n={} k={} offset={}", self.n, self.k, origin)
    }

    /// Two-line state file text.
    pub fn to_file_string(&self) -> String {
        format!("{}\n{}\n", self.header(self.offset), self.columns_line(self.offset))
    }
}

/// Leftmost occupied site over a trajectory (0 when all are vacuum).
fn origin_of(states: &[BbsState]) -> i64 {
    states.iter().filter(|s| !s.is_vacuum()).map(|s| s.offset).min().unwrap_or(0)
}

/// State file text for a trajectory: one header, then one column line per
/// state, all aligned to a common origin.
pub fn format_trajectory(states: &[BbsState]) -> String {
    let origin = origin_of(states);
    let mut out = String::new();
    if let Some(first) = states.first() {
        out.push_str(&first.header(origin));
        out.push('\n');
    }
    for s in states {
        out.push_str(&s.columns_line(origin));
        out.push('\n');
    }
    out
}

/// ASCII time-space diagram: each state as `k` text rows of stacked letters,
/// vacuum sites as `.`, steps separated by blank lines.
pub fn render_diagram(states: &[BbsState]) -> String {
    let Some(first) = states.first() else {
        return String::new();
    };
    let (n, k) = (first.n, first.k);
    let origin = origin_of(states);
    let width = states.iter().map(|s| (s.end() - origin).max(0)).max().unwrap_or(0);
    let wide = n >= 10;
    let cell_w = if wide { n.to_string().len() } else { 1 };
    let vac = Tableau::vacuum_column(k, n);
    let mut out = String::new();
    for (t, s) in states.iter().enumerate() {
        if t > 0 {
            out.push('\n');
        }
        for r in 0..k {
            let mut line = String::new();
            for pos in origin..origin + width {
                if wide && pos > origin {
                    line.push(' ');
                }
                let c = s.column_at(pos);
                if c == vac {
                    let _ = write!(line, "{:>cell_w$}", ".");
                } else {
                    let _ = write!(line, "{:>cell_w$}", c.rows()[r][0]);
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    out
}

/// A parsed state file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateFile {
    pub n: Letter,
    pub k: usize,
    pub offset: i64,
    pub states: Vec<BbsState>,
}

fn perr(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, column, msg: msg.into() }
}

fn parse_header(line: &str) -> Result<(Letter, usize, i64)> {
    let mut fields: [Option<i64>; 3] = [None; 3];
    let names = ["n", "k", "offset"];
    let mut col = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            col += 1;
            continue;
        }
        let (key, val) = tok.split_once('=').ok_or_else(|| perr(1, col, format!("expected key=value, got {tok:?}")))?;
        let idx = names
            .iter()
            .position(|&nm| nm == key)
            .ok_or_else(|| perr(1, col, format!("unknown header key {key:?}")))?;
        let v: i64 = val
            .parse()
            .map_err(|_| perr(1, col + key.len() + 1, format!("bad integer {val:?}")))?;
        fields[idx] = Some(v);
        col += tok.len() + 1;
    }
    let get = |i: usize| fields[i].ok_or_else(|| perr(1, 1, format!("missing header field {}", names[i])));
    let (n, k, offset) = (get(0)?, get(1)?, get(2)?);
    if !(2..=Letter::MAX as i64).contains(&n) {
        return Err(perr(1, 1, format!("n={n} out of range")));
    }
    if k < 1 || k >= n {
        return Err(perr(1, 1, format!("need 1 <= k < n, got k={k}")));
    }
    Ok((n as Letter, k as usize, offset))
}

fn parse_columns_line(line: &str, lineno: usize, n: Letter, k: usize, offset: i64) -> Result<BbsState> {
    let mut cols = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            col += 1;
            continue;
        }
        if tok == "." {
            cols.push(Tableau::vacuum_column(k, n));
        } else {
            let letters = tok
                .split('/')
                .map(|a| a.parse::<Letter>().map_err(|_| perr(lineno, col, format!("bad letter {a:?} in column {tok:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if letters.len() != k {
                return Err(perr(lineno, col, format!("column {tok:?} has {} letters, expected {k}", letters.len())));
            }
            let c = Tableau::column(&letters, n).map_err(|e| perr(lineno, col, format!("column {tok:?}: {e}")))?;
            cols.push(c);
        }
        col += tok.len() + 1;
    }
    BbsState::new(n, k, offset, cols)
}

/// Parses a state file: a header line and one or more column lines, each
/// line a state aligned to the header offset. A file with only a header is
/// the vacuum.
pub fn parse_state_file(text: &str) -> Result<StateFile> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| perr(1, 1, "empty input"))?;
    let (n, k, offset) = parse_header(header.trim_end_matches('\r'))?;
    let mut states = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim_end_matches('\r');
        states.push(parse_columns_line(line, i + 2, n, k, offset)?);
    }
    if states.is_empty() {
        states.push(BbsState::vacuum(n, k)?);
    }
    Ok(StateFile { n, k, offset, states })
}

/// Parses a file holding exactly one state.
pub fn parse_state(text: &str) -> Result<BbsState> {
    let mut f = parse_state_file(text)?;
    if f.states.len() != 1 {
        return Err(perr(3, 1, format!("expected one state line, found {}", f.states.len())));
    }
    Ok(f.states.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(v: &[&[Letter]]) -> Vec<Vec<Letter>> {
        v.iter().map(|c| c.to_vec()).collect()
    }

    #[test]
    fn canonical_trims_vacuum() {
        let s = BbsState::from_letters(4, 2, 5, &cols(&[&[1, 2], &[2, 4], &[1, 2], &[1, 3], &[1, 2]])).unwrap();
        assert_eq!(s.offset(), 6);
        assert_eq!(s.columns().len(), 3);
        let v = BbsState::from_letters(4, 2, 9, &cols(&[&[1, 2]])).unwrap();
        assert_eq!(v, BbsState::vacuum(4, 2).unwrap());
    }

    #[test]
    fn rejects_bad_columns() {
        assert!(BbsState::from_letters(4, 2, 0, &cols(&[&[1, 2, 3]])).is_err());
        assert!(BbsState::from_letters(4, 2, 0, &cols(&[&[2, 1]])).is_err());
        assert!(BbsState::vacuum(3, 3).is_err());
    }

    #[test]
    fn vacuum_is_stationary() {
        let v = BbsState::vacuum(5, 2).unwrap();
        for l in 1..4 {
            let (next, trace) = v.evolve(l).unwrap();
            assert_eq!(next, v);
            assert_eq!(trace.carriers, vec![Tableau::vacuum_rectangle(2, l, 5)]);
            assert_eq!(v.energy(l).unwrap(), 0);
        }
        assert!(v.spectrum().unwrap().is_empty());
        assert!(v.p_tableaux(2).unwrap().1.is_empty());
    }

    #[test]
    fn state_file_round_trip() {
        let text = "n=6 k=2 offset=-3\n2/4 . 3/5 2/5\n";
        let s = parse_state(text).unwrap();
        assert_eq!(s.offset(), -3);
        assert_eq!(s.to_file_string(), text);
        let traj = "n=4 k=2 offset=0\n2/4 2/4 1/3\n. . . 2/4 2/4 1/3\n";
        let f = parse_state_file(traj).unwrap();
        assert_eq!(f.states.len(), 2);
        assert_eq!(f.states[1].offset(), 3);
        assert_eq!(format_trajectory(&f.states), traj);
        assert_eq!(parse_state("n=4 k=2 offset=0\n\n").unwrap(), BbsState::vacuum(4, 2).unwrap());
    }

    #[test]
    fn state_file_errors_carry_positions() {
        match parse_state_file("n=4 k=2 offset=0\n2/4 1/5\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        match parse_state_file("n=4 k=2 offset=x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 16)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_state_file("n=4 k=2 offset=0\n2/4 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_state_file("n=4 k=4 offset=0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn diagram_stacks_columns() {
        let s = BbsState::from_letters(4, 2, 0, &cols(&[&[2, 4], &[2, 4], &[1, 3]])).unwrap();
        let t = s.evolve(3).unwrap().0;
        let d = render_diagram(&[s, t]);
        assert_eq!(d, "221...\n443...\n\n...221\n...443\n");
    }
}
