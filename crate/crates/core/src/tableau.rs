//! Semi-standard tableaux, shapes, row words and letter content.
//!
//! A [`Tableau`] is stored row-major (top row first) together with the
//! alphabet bound `n`. Both rectangular tableaux (elements of `B^{k,l}`) and
//! the partition-shaped intermediates produced by row insertion use the same
//! type.
//!
//! Text form: rows separated by `/`, entries inside a row separated by single
//! spaces (`1 2 4 / 2 3 5 / 4 4 6`). A single column is written without
//! spaces (`2/5`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A letter of the alphabet `1..=n`.
pub type Letter = u8;

/// Letter multiplicities.
pub type Content = BTreeMap<Letter, usize>;

/// A (row, column) position, both zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// Row lengths of a Young diagram, weakly decreasing, no zero rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        let rows: Vec<usize> = rows.into_iter().filter(|&r| r > 0).collect();
        for (i, w) in rows.windows(2).enumerate() {
            if w[0] < w[1] {
                return Err(Error::NotAPartition { row: i + 1 });
            }
        }
        Ok(Shape(rows))
    }

    /// The rectangle `(l^k)`.
    pub fn rectangle(k: usize, l: usize) -> Self {
        if l == 0 {
            return Shape(Vec::new());
        }
        Shape(vec![l; k])
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn num_cols(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn cells(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_rectangle(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Cells whose removal leaves a partition shape.
    pub fn outer_corners(&self) -> Vec<Cell> {
        let rows = &self.0;
        (0..rows.len())
            .filter(|&r| r + 1 == rows.len() || rows[r + 1] < rows[r])
            .map(|r| Cell::new(r, rows[r] - 1))
            .collect()
    }

    /// Number of cells strictly right of column `col` (one-based column count).
    pub fn cells_east_of(&self, col: usize) -> usize {
        self.0.iter().map(|&r| r.saturating_sub(col)).sum()
    }

    pub fn contains(&self, other: &Shape) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

/// A finite sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// The subword of letters in `lo..=hi`, order preserved.
    pub fn restrict(&self, lo: Letter, hi: Letter) -> Word {
        Word(self.0.iter().copied().filter(|&a| lo <= a && a <= hi).collect())
    }

    pub fn content(&self) -> Content {
        content_of(self.0.iter().copied())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

pub fn content_of(letters: impl IntoIterator<Item = Letter>) -> Content {
    let mut c = Content::new();
    for a in letters {
        *c.entry(a).or_insert(0) += 1;
    }
    c
}

/// Sum of two contents.
pub fn content_sum(a: &Content, b: &Content) -> Content {
    let mut out = a.clone();
    for (&k, &v) in b {
        *out.entry(k).or_insert(0) += v;
    }
    out
}

/// A semi-standard tableau of partition shape over the alphabet `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<Letter>>,
    n: Letter,
}

impl Tableau {
    /// Builds a tableau from its rows (top row first), validating every
    /// invariant. Empty rows are dropped.
    pub fn new(rows: Vec<Vec<Letter>>, n: Letter) -> Result<Self> {
        let rows: Vec<Vec<Letter>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let t = Tableau { rows, n };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<Letter>>, n: Letter) -> Self {
        Tableau { rows, n }
    }

    pub fn empty(n: Letter) -> Self {
        Tableau { rows: Vec::new(), n }
    }

    /// The single-column tableau `^t[x_1, ..., x_k]`.
    pub fn column(letters: &[Letter], n: Letter) -> Result<Self> {
        Tableau::new(letters.iter().map(|&a| vec![a]).collect(), n)
    }

    /// Builds a rectangular tableau from its columns, left to right.
    pub fn from_columns(columns: &[Vec<Letter>], n: Letter) -> Result<Self> {
        let k = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != k) {
            return Err(Error::Invalid("columns of unequal height".into()));
        }
        let rows = (0..k).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        Tableau::new(rows, n)
    }

    /// The vacuum column `1_k = ^t[1, 2, ..., k]`.
    pub fn vacuum_column(k: usize, n: Letter) -> Self {
        Tableau::vacuum_rectangle(k, 1, n)
    }

    /// `c_l = 1_k^l`: row `i` filled with the letter `i`.
    pub fn vacuum_rectangle(k: usize, l: usize, n: Letter) -> Self {
        let rows = if l == 0 {
            Vec::new()
        } else {
            (1..=k).map(|i| vec![i as Letter; l]).collect()
        };
        Tableau { rows, n }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyAlphabet(0));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::Invalid(format!("empty row {}", r + 1)));
            }
            if r > 0 && row.len() > self.rows[r - 1].len() {
                return Err(Error::NotAPartition { row: r + 1 });
            }
            for (c, &a) in row.iter().enumerate() {
                if a == 0 || a > self.n {
                    return Err(Error::LetterOutOfRange { letter: a as usize, n: self.n as usize });
                }
                if c > 0 && row[c - 1] > a {
                    return Err(Error::RowNotWeak { row: r + 1, col: c + 1 });
                }
                if r > 0 && self.rows[r - 1][c] >= a {
                    return Err(Error::ColumnNotStrict { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> Letter {
        self.n
    }

    /// Same entries over a different alphabet bound.
    pub fn with_alphabet(&self, n: Letter) -> Result<Self> {
        Tableau::new(self.rows.clone(), n)
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Letter>> {
        self.rows
    }

    pub fn shape(&self) -> Shape {
        Shape(self.rows.iter().map(Vec::len).collect())
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_rectangular(&self) -> bool {
        self.shape().is_rectangle()
    }

    /// `(k, l)` for a rectangle in `B^{k,l}`.
    pub fn rectangle_dims(&self) -> Result<(usize, usize)> {
        if !self.is_rectangular() {
            return Err(Error::NotRectangular(self.shape().0));
        }
        Ok((self.num_rows(), self.num_cols()))
    }

    pub fn get(&self, cell: Cell) -> Option<Letter> {
        self.rows.get(cell.row).and_then(|r| r.get(cell.col)).copied()
    }

    /// Columns left to right, each read top to bottom.
    pub fn columns(&self) -> Vec<Vec<Letter>> {
        (0..self.num_cols())
            .map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect())
            .collect()
    }

    /// Row word: bottom row first, each row left to right.
    pub fn row_word(&self) -> Word {
        self.rows.iter().rev().flatten().copied().collect()
    }

    pub fn content(&self) -> Content {
        content_of(self.rows.iter().flatten().copied())
    }

    /// Vertical concatenation: the rows of `self` above the rows of `below`.
    pub fn stack(&self, below: &Tableau) -> Result<Tableau> {
        if self.n != below.n {
            return Err(Error::AlphabetMismatch(self.n, below.n));
        }
        let mut rows = self.rows.clone();
        rows.extend(below.rows.iter().cloned());
        Tableau::new(rows, self.n)
    }

    /// Splits off the first `at` rows.
    pub fn split_rows(&self, at: usize) -> (Tableau, Tableau) {
        let at = at.min(self.rows.len());
        (
            Tableau { rows: self.rows[..at].to_vec(), n: self.n },
            Tableau { rows: self.rows[at..].to_vec(), n: self.n },
        )
    }

    /// Parses the text form over an explicit alphabet bound.
    pub fn parse(s: &str, n: Letter) -> Result<Self> {
        Tableau::new(parse_rows(s)?, n)
    }

    /// Parses the text form, taking the alphabet bound to be the largest
    /// letter present (at least 1).
    pub fn parse_infer(s: &str) -> Result<Self> {
        let rows = parse_rows(s)?;
        let n = rows.iter().flatten().copied().max().unwrap_or(1).max(1);
        Tableau::new(rows, n)
    }

    /// All semi-standard tableaux of the given shape over `1..=n`, in
    /// lexicographic order of their row-major entries.
    pub fn enumerate(shape: &Shape, n: Letter) -> Vec<Tableau> {
        let cells: Vec<Cell> = shape
            .rows()
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| Cell::new(r, c)))
            .collect();
        let mut rows: Vec<Vec<Letter>> = shape.rows().iter().map(|&len| vec![0; len]).collect();
        let mut out = Vec::new();
        fill(&cells, 0, &mut rows, n, &mut out);
        out
    }

    /// All elements of `B^{k,l}` over `1..=n`.
    pub fn enumerate_rectangles(k: usize, l: usize, n: Letter) -> Vec<Tableau> {
        Tableau::enumerate(&Shape::rectangle(k, l), n)
    }
}

fn fill(cells: &[Cell], idx: usize, rows: &mut Vec<Vec<Letter>>, n: Letter, out: &mut Vec<Tableau>) {
    if idx == cells.len() {
        out.push(Tableau { rows: rows.clone(), n });
        return;
    }
    let Cell { row, col } = cells[idx];
    let mut lo: Letter = 1;
    if col > 0 {
        lo = lo.max(rows[row][col - 1]);
    }
    if row > 0 {
        lo = lo.max(rows[row - 1][col] + 1);
    }
    for a in lo..=n {
        rows[row][col] = a;
        fill(cells, idx + 1, rows, n, out);
    }
}

fn parse_rows(s: &str) -> Result<Vec<Vec<Letter>>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('/')
        .map(|row| {
            let row = row.trim();
            if row.is_empty() {
                return Err(Error::Invalid(format!("empty row in tableau text {s:?}")));
            }
            row.split_whitespace()
                .map(|tok| {
                    tok.parse::<Letter>()
                        .map_err(|_| Error::Invalid(format!("bad letter {tok:?} in tableau text")))
                })
                .collect()
        })
        .collect()
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single_column = self.rows.len() > 1 && self.rows.iter().all(|r| r.len() == 1);
        let sep = if single_column { "/" } else { " / " };
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            for (j, a) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}
