//! Schensted row insertion, its inverse, rectification and Knuth equivalence.

use crate::error::{Error, Result};
use crate::tableau::{Cell, Letter, Tableau, Word};

/// Result of inserting one letter: the new tableau and the cell it grew by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionOutcome {
    pub tableau: Tableau,
    pub new_cell: Cell,
}

/// Row-bumps `a` into `rows` in place.
///
/// In each row the leftmost entry strictly larger than the incoming letter
/// is replaced and carried down to the next row; equal entries are passed
/// over.
pub(crate) fn bump_in_place(rows: &mut Vec<Vec<Letter>>, mut a: Letter) -> Cell {
    for r in 0.. {
        if r == rows.len() {
            rows.push(vec![a]);
            return Cell::new(r, 0);
        }
        let row = &mut rows[r];
        let j = row.partition_point(|&x| x <= a);
        if j == row.len() {
            row.push(a);
            return Cell::new(r, j);
        }
        std::mem::swap(&mut row[j], &mut a);
    }
    unreachable!()
}

/// Reverse bump from the end of row `row`. The caller guarantees the cell is
/// an outer corner.
pub(crate) fn unbump_in_place(rows: &mut Vec<Vec<Letter>>, row: usize) -> Letter {
    let mut v = rows[row].pop().expect("corner row is non-empty");
    if rows[row].is_empty() {
        rows.pop();
    }
    for r in (0..row).rev() {
        let cur = &mut rows[r];
        // rightmost entry strictly smaller than v; exists because the column above is strict
        let j = cur.partition_point(|&x| x < v) - 1;
        std::mem::swap(&mut cur[j], &mut v);
    }
    v
}

fn check_letter(a: Letter, n: Letter) -> Result<()> {
    if a == 0 || a > n {
        return Err(Error::LetterOutOfRange { letter: a as usize, n: n as usize });
    }
    Ok(())
}

/// `t ← a`.
pub fn insert_letter(t: &Tableau, a: Letter) -> Result<InsertionOutcome> {
    check_letter(a, t.n())?;
    let mut rows = t.rows().to_vec();
    let new_cell = bump_in_place(&mut rows, a);
    Ok(InsertionOutcome { tableau: Tableau::from_rows_unchecked(rows, t.n()), new_cell })
}

/// `t ← w`, inserting the letters of `w` left to right.
pub fn insert_word(t: &Tableau, w: &Word) -> Result<Tableau> {
    for &a in w.iter() {
        check_letter(a, t.n())?;
    }
    let mut rows = t.rows().to_vec();
    for &a in w.iter() {
        bump_in_place(&mut rows, a);
    }
    Ok(Tableau::from_rows_unchecked(rows, t.n()))
}

/// Removes the outer corner `corner` by reverse bumping and returns the
/// smaller tableau with the letter that falls out of the first row.
pub fn uninsert(t: &Tableau, corner: Cell) -> Result<(Tableau, Letter)> {
    if !t.shape().outer_corners().contains(&corner) {
        return Err(Error::NotACorner { row: corner.row, col: corner.col });
    }
    let mut rows = t.rows().to_vec();
    let a = unbump_in_place(&mut rows, corner.row);
    Ok((Tableau::from_rows_unchecked(rows, t.n()), a))
}

/// The insertion tableau of `w` starting from the empty tableau.
pub fn rectify(w: &Word, n: Letter) -> Result<Tableau> {
    insert_word(&Tableau::empty(n), w)
}

/// Whether two words have the same rectification.
pub fn knuth_equivalent(u: &Word, v: &Word) -> bool {
    let n = u.iter().chain(v.iter()).copied().max().unwrap_or(1).max(1);
    // letters are bounded by n, so rectification cannot fail
    match (rectify(u, n), rectify(v, n)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}
