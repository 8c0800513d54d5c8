//! Kashiwara operators `e_i`, `f_i` (`i != 0`) on tensor products of
//! rectangular tableaux, computed with the signature rule.
//!
//! Each factor is flattened by the column splitting map `sp`: its columns
//! from right to left, each read top to bottom. Factors are then read left to
//! right. Letters `i` contribute `+`, letters `i+1` contribute `-`; adjacent
//! `+-` pairs (ignoring zeros) cancel until a `-...-+...+` normal form is
//! left. `f_i` changes the leftmost surviving `+`, `e_i` the rightmost
//! surviving `-`.

use std::fmt;

use crate::error::{Error, Result};
use crate::tableau::{Letter, Tableau};

/// An ordered tensor product `b_1 ⊗ b_2 ⊗ ... ⊗ b_m` of tableaux.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrystalTensor {
    factors: Vec<Tableau>,
    n: Letter,
}

/// Position of a letter inside a tensor: factor index and zero-based cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    factor: usize,
    row: usize,
    col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

/// One symbol per flattened letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Sign>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
                Sign::Zero => "0",
            })?;
        }
        Ok(())
    }
}

/// Surviving symbols after cancellation, as indices into the signature.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Reduced {
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl Signature {
    /// Single left-to-right stack pass: a `-` cancels the nearest unmatched
    /// `+` to its left.
    pub fn reduce(&self) -> Reduced {
        let mut out = Reduced::default();
        for (idx, s) in self.0.iter().enumerate() {
            match s {
                Sign::Plus => out.plus.push(idx),
                Sign::Minus => {
                    if out.plus.pop().is_none() {
                        out.minus.push(idx);
                    }
                }
                Sign::Zero => {}
            }
        }
        out
    }
}

impl CrystalTensor {
    pub fn new(factors: Vec<Tableau>, n: Letter) -> Result<Self> {
        for f in &factors {
            if f.n() != n {
                return Err(Error::AlphabetMismatch(f.n(), n));
            }
            f.validate()?;
        }
        Ok(CrystalTensor { factors, n })
    }

    pub fn factors(&self) -> &[Tableau] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Tableau> {
        self.factors
    }

    pub fn n(&self) -> Letter {
        self.n
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        for (fi, t) in self.factors.iter().enumerate() {
            let rows = t.rows();
            for col in (0..t.num_cols()).rev() {
                for (row, r) in rows.iter().enumerate() {
                    if col < r.len() {
                        out.push(Slot { factor: fi, row, col });
                    }
                }
            }
        }
        out
    }

    fn letter(&self, s: Slot) -> Letter {
        self.factors[s.factor].rows()[s.row][s.col]
    }

    /// The flattened letter sequence the signature rule reads.
    pub fn flattened(&self) -> Vec<Letter> {
        self.slots().into_iter().map(|s| self.letter(s)).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n as usize {
            return Err(Error::UnsupportedIndex { i, max: (self.n as usize).saturating_sub(1) });
        }
        Ok(())
    }

    pub fn signature(&self, i: usize) -> Result<Signature> {
        self.check_index(i)?;
        let (plus, minus) = (i as Letter, (i + 1) as Letter);
        Ok(Signature(
            self.flattened()
                .into_iter()
                .map(|a| {
                    if a == plus {
                        Sign::Plus
                    } else if a == minus {
                        Sign::Minus
                    } else {
                        Sign::Zero
                    }
                })
                .collect(),
        ))
    }

    fn replace(&self, slot: Slot, letter: Letter) -> Result<CrystalTensor> {
        let mut factors = self.factors.clone();
        let mut rows = factors[slot.factor].rows().to_vec();
        rows[slot.row][slot.col] = letter;
        factors[slot.factor] = Tableau::new(rows, self.n)?;
        Ok(CrystalTensor { factors, n: self.n })
    }

    /// `f_i`; `None` when the operator sends the element to 0.
    pub fn apply_f(&self, i: usize) -> Result<Option<CrystalTensor>> {
        let sig = self.signature(i)?;
        match sig.reduce().plus.first() {
            None => Ok(None),
            Some(&idx) => self.replace(self.slots()[idx], (i + 1) as Letter).map(Some),
        }
    }

    /// `e_i`; `None` when the operator sends the element to 0.
    pub fn apply_e(&self, i: usize) -> Result<Option<CrystalTensor>> {
        let sig = self.signature(i)?;
        match sig.reduce().minus.last() {
            None => Ok(None),
            Some(&idx) => self.replace(self.slots()[idx], i as Letter).map(Some),
        }
    }

    /// Whether `e_i` kills the element for every listed index.
    pub fn is_highest(&self, indices: &[usize]) -> Result<bool> {
        for &i in indices {
            if self.apply_e(i)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses factors joined by `*`.
    pub fn parse(s: &str, n: Letter) -> Result<Self> {
        let factors = s
            .split('*')
            .map(|f| Tableau::parse(f, n))
            .collect::<Result<Vec<_>>>()?;
        CrystalTensor::new(factors, n)
    }
}

impl fmt::Display for CrystalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `sp`: a rectangle to its columns, rightmost column first.
pub fn sp(t: &Tableau) -> Result<CrystalTensor> {
    t.rectangle_dims()?;
    let factors = t
        .columns()
        .iter()
        .rev()
        .map(|c| Tableau::column(c, t.n()))
        .collect::<Result<Vec<_>>>()?;
    CrystalTensor::new(factors, t.n())
}

/// Inverse of [`sp`]: columns given right to left are reassembled.
pub fn sp_inverse(ct: &CrystalTensor) -> Result<Tableau> {
    let mut columns = Vec::with_capacity(ct.len());
    for f in ct.factors().iter().rev() {
        if f.num_cols() != 1 {
            return Err(Error::Invalid(format!("factor {f} is not a single column")));
        }
        columns.push(f.columns().remove(0));
    }
    Tableau::from_columns(&columns, ct.n())
}

/// Indices `1..n` other than `skip`.
pub fn indices_except(n: Letter, skip: &[usize]) -> Vec<usize> {
    (1..n as usize).filter(|i| !skip.contains(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::{content_of, Content};

    fn ct(s: &str, n: Letter) -> CrystalTensor {
        CrystalTensor::parse(s, n).unwrap()
    }

    #[test]
    fn signature_of_worked_tensor() {
        let b = ct("1/2 * 2/3 * 4/6", 6);
        assert_eq!(b.signature(2).unwrap().to_string(), "0 + + - 0 0");
        let f = b.apply_f(2).unwrap().unwrap();
        assert_eq!(f, ct("1/3 * 2/3 * 4/6", 6));
        assert_eq!(f.apply_e(2).unwrap().unwrap(), b);
    }

    #[test]
    fn sp_reads_columns_right_to_left() {
        let x = Tableau::parse("1 1 2 / 2 3 3", 3).unwrap();
        assert_eq!(sp(&x).unwrap(), ct("2/3 * 1/3 * 1/2", 3));
        assert_eq!(sp_inverse(&sp(&x).unwrap()).unwrap(), x);
        let c = Tableau::vacuum_rectangle(2, 3, 4);
        assert_eq!(sp(&c).unwrap().factors(), &vec![Tableau::vacuum_column(2, 4); 3][..]);
        assert!(sp(&Tableau::parse("1 2 / 3", 3).unwrap()).is_err());
    }

    #[test]
    fn vacuum_signature_cancels() {
        let k = 3;
        let v = CrystalTensor::new(vec![Tableau::vacuum_column(k, 5)], 5).unwrap();
        for i in 1..k {
            let sig = v.signature(i).unwrap();
            assert_eq!(sig.0.iter().filter(|&&s| s == Sign::Plus).count(), 1);
            assert_eq!(sig.0.iter().filter(|&&s| s == Sign::Minus).count(), 1);
            assert!(v.apply_f(i).unwrap().is_none());
        }
        let many = CrystalTensor::new(vec![Tableau::vacuum_column(k, 5); 4], 5).unwrap();
        for i in (1..5).filter(|&i| i != k) {
            assert!(many.apply_e(i).unwrap().is_none());
        }
        // nothing to act on
        assert!(many.apply_e(4).unwrap().is_none() && many.apply_f(4).unwrap().is_none());
    }

    #[test]
    fn index_zero_is_rejected() {
        let b = ct("1/2", 3);
        assert!(matches!(b.apply_f(0), Err(Error::UnsupportedIndex { .. })));
        assert!(matches!(b.signature(3), Err(Error::UnsupportedIndex { .. })));
    }

    fn iterated_reduction(sig: &Signature) -> Vec<Sign> {
        // repeatedly cancel adjacent +- among non-zero symbols, in arbitrary order
        let mut s: Vec<Sign> = sig.0.iter().copied().filter(|&x| x != Sign::Zero).collect();
        loop {
            let pos = s.windows(2).rposition(|w| w == [Sign::Plus, Sign::Minus]);
            match pos {
                Some(p) => {
                    s.drain(p..p + 2);
                }
                None => return s,
            }
        }
    }

    #[test]
    fn stack_reduction_matches_iterated_cancellation() {
        for bits in 0u32..(1 << 10) {
            for len in 1..=10usize {
                let sig = Signature(
                    (0..len)
                        .map(|j| match (bits >> j) & 1 {
                            0 => Sign::Plus,
                            _ => Sign::Minus,
                        })
                        .collect(),
                );
                let r = sig.reduce();
                let mut normal = vec![Sign::Minus; r.minus.len()];
                normal.extend(vec![Sign::Plus; r.plus.len()]);
                assert_eq!(normal, iterated_reduction(&sig));
            }
        }
    }

    #[test]
    fn operators_on_rectangles_stay_in_the_crystal() {
        for k in 1..=2 {
            for l in 1..=2 {
                for x in Tableau::enumerate_rectangles(k, l, 4) {
                    let split = sp(&x).unwrap();
                    for i in 1..4 {
                        for img in [split.apply_f(i).unwrap(), split.apply_e(i).unwrap()].into_iter().flatten() {
                            let back = sp_inverse(&img).unwrap();
                            assert_eq!(back.rectangle_dims().unwrap(), (k, l));
                        }
                        if let Some(fx) = split.apply_f(i).unwrap() {
                            let mut expect: Content = content_of(x.row_word().iter().copied());
                            *expect.get_mut(&(i as Letter)).unwrap() -= 1;
                            *expect.entry((i + 1) as Letter).or_insert(0) += 1;
                            expect.retain(|_, v| *v > 0);
                            assert_eq!(content_of(fx.flattened()), expect);
                            assert_eq!(fx.apply_e(i).unwrap().unwrap(), split);
                        }
                    }
                }
            }
        }
    }
}
