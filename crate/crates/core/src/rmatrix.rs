//! Combinatorial R on `B^{k,l} ⊗ B^{k',l'}` and the energy function H.
//!
//! `R(x ⊗ y) = x̃ ⊗ ỹ` is the unique pair with `x̃ ∈ B^{k',l'}`,
//! `ỹ ∈ B^{k,l}` and `y ← row(x) = ỹ ← row(x̃)`. The fast path reverse-bumps
//! the product `P = y ← row(x)` down to the rectangle `(l^k)`; the emitted
//! letters, reversed, are `row(x̃)`. Every answer is checked by forward
//! insertion.
//!
//! Zero-row tableaux are accepted: R on two of them is the identity and H is
//! 0.

use crate::error::{Error, Result};
use crate::insertion::{bump_in_place, insert_word, unbump_in_place};
use crate::tableau::{content_sum, Letter, Shape, Tableau, Word};

/// `R(left_in ⊗ right_in) = left_out ⊗ right_out`, with `H(left_in ⊗ right_in)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RResult {
    pub left_out: Tableau,
    pub right_out: Tableau,
    pub energy: i64,
}

fn dims(t: &Tableau) -> Result<(usize, usize)> {
    t.rectangle_dims()
}

fn check_pair(x: &Tableau, y: &Tableau) -> Result<((usize, usize), (usize, usize))> {
    if x.n() != y.n() {
        return Err(Error::AlphabetMismatch(x.n(), y.n()));
    }
    Ok((dims(x)?, dims(y)?))
}

fn energy_from_shape(p: &Shape, (k, l): (usize, usize), (k2, l2): (usize, usize)) -> i64 {
    if k == 0 || k2 == 0 {
        return 0;
    }
    p.cells_east_of(l.max(l2)) as i64 - (k.min(k2) * l.min(l2)) as i64
}

/// `H(x ⊗ y)`: cells of `y ← row(x)` strictly east of column `max(l, l')`,
/// minus `min(k, k') min(l, l')`.
pub fn energy_h(x: &Tableau, y: &Tableau) -> Result<i64> {
    let (dx, dy) = check_pair(x, y)?;
    if dx.0 == 0 || dy.0 == 0 {
        return Ok(0);
    }
    let p = insert_word(y, &x.row_word())?;
    Ok(energy_from_shape(&p.shape(), dx, dy))
}

/// Assembles `x̃` from emitted letters (top row right to left, then the next
/// row, ...).
fn assemble(emitted: &[Letter], k2: usize, l2: usize, n: Letter) -> Option<Tableau> {
    if emitted.len() != k2 * l2 {
        return None;
    }
    let rows: Vec<Vec<Letter>> = emitted
        .chunks(l2.max(1))
        .map(|c| c.iter().rev().copied().collect())
        .collect();
    Tableau::new(rows, n).ok()
}

fn finish(
    p: &Tableau,
    rows: Vec<Vec<Letter>>,
    emitted: &[Letter],
    target: &Shape,
    k2: usize,
    l2: usize,
) -> Option<(Tableau, Tableau)> {
    let x_out = if k2 == 0 { Tableau::empty(p.n()) } else { assemble(emitted, k2, l2, p.n())? };
    let y_out = Tableau::new(rows, p.n()).ok()?;
    if y_out.shape() != *target {
        return None;
    }
    // forward check: ỹ ← row(x̃) must reproduce P
    let mut fwd = y_out.rows().to_vec();
    for &a in x_out.row_word().iter() {
        bump_in_place(&mut fwd, a);
    }
    (fwd == p.rows()).then_some((x_out, y_out))
}

fn outside_corners(rows: &[Vec<Letter>], target: &Shape) -> Vec<usize> {
    let shape = Shape::new(rows.iter().map(Vec::len).collect()).expect("partition");
    let t = target.rows();
    shape
        .outer_corners()
        .into_iter()
        .filter(|c| c.row >= t.len() || c.col >= t[c.row])
        .map(|c| c.row)
        .collect()
}

/// Bottom-most outside corner at every step.
fn reverse_bottom_first(p: &Tableau, target: &Shape, k2: usize, l2: usize) -> Option<(Tableau, Tableau)> {
    let mut rows = p.rows().to_vec();
    let mut emitted = Vec::with_capacity(k2 * l2);
    for _ in 0..k2 * l2 {
        let row = *outside_corners(&rows, target).last()?;
        emitted.push(unbump_in_place(&mut rows, row));
    }
    finish(p, rows, &emitted, target, k2, l2)
}

/// Depth-first search over removal orders, pruned by the row and column
/// conditions `x̃` must satisfy.
fn reverse_search(p: &Tableau, target: &Shape, k2: usize, l2: usize) -> Option<(Tableau, Tableau)> {
    fn go(
        p: &Tableau,
        rows: &[Vec<Letter>],
        emitted: &mut Vec<Letter>,
        target: &Shape,
        k2: usize,
        l2: usize,
    ) -> Option<(Tableau, Tableau)> {
        if emitted.len() == k2 * l2 {
            return finish(p, rows.to_vec(), emitted, target, k2, l2);
        }
        let e = emitted.len();
        let (block, pos) = (e / l2, e % l2);
        for row in outside_corners(rows, target) {
            let mut next = rows.to_vec();
            let a = unbump_in_place(&mut next, row);
            if pos > 0 && a > emitted[e - 1] {
                continue;
            }
            if block > 0 && a <= emitted[e - l2] {
                continue;
            }
            emitted.push(a);
            if let Some(found) = go(p, &next, emitted, target, k2, l2) {
                return Some(found);
            }
            emitted.pop();
        }
        None
    }
    go(p, p.rows(), &mut Vec::with_capacity(k2 * l2), target, k2, l2)
}

/// The combinatorial R.
pub fn apply_r(x: &Tableau, y: &Tableau) -> Result<RResult> {
    let (dx, dy) = check_pair(x, y)?;
    if x.is_empty() && y.is_empty() {
        return Ok(RResult { left_out: y.clone(), right_out: x.clone(), energy: 0 });
    }
    let p = insert_word(y, &x.row_word())?;
    let target = Shape::rectangle(dx.0, dx.1);
    let energy = energy_from_shape(&p.shape(), dx, dy);
    let (k2, l2) = dy;
    let found = reverse_bottom_first(&p, &target, k2, l2).or_else(|| reverse_search(&p, &target, k2, l2));
    match found {
        Some((left_out, right_out)) => Ok(RResult { left_out, right_out, energy }),
        None => {
            let r = oracle_r(x, y)?;
            Ok(RResult { energy, ..r })
        }
    }
}

/// Brute-force R: enumerate every `(x̃, ỹ)` with the right shapes and total
/// content, keep the ones whose insertion product matches.
pub fn oracle_r(x: &Tableau, y: &Tableau) -> Result<RResult> {
    let (dx, dy) = check_pair(x, y)?;
    let lefts = Tableau::enumerate_rectangles(dy.0, dy.1, x.n());
    let rights = Tableau::enumerate_rectangles(dx.0, dx.1, x.n());
    oracle_r_among(x, y, &lefts, &rights)
}

/// [`oracle_r`] over precomputed candidate sets: `lefts` enumerates
/// `B^{k',l'}` and `rights` enumerates `B^{k,l}`.
pub fn oracle_r_among(x: &Tableau, y: &Tableau, lefts: &[Tableau], rights: &[Tableau]) -> Result<RResult> {
    let (dx, dy) = check_pair(x, y)?;
    let mut product_rows = y.rows().to_vec();
    for &a in x.row_word().iter() {
        bump_in_place(&mut product_rows, a);
    }
    let want = content_sum(&x.content(), &y.content());
    let mut hits = Vec::new();
    for xt in lefts {
        let cx = xt.content();
        let word: Word = xt.row_word();
        for yt in rights {
            if content_sum(&cx, &yt.content()) != want {
                continue;
            }
            let mut rows = yt.rows().to_vec();
            for &a in word.iter() {
                bump_in_place(&mut rows, a);
            }
            if rows == product_rows {
                hits.push((xt.clone(), yt.clone()));
            }
        }
    }
    if hits.len() != 1 {
        return Err(Error::OracleAmbiguous { count: hits.len() });
    }
    let (left_out, right_out) = hits.pop().expect("one hit");
    let shape = Shape::new(product_rows.iter().map(Vec::len).collect())?;
    Ok(RResult { left_out, right_out, energy: energy_from_shape(&shape, dx, dy) })
}

type Triple = (Tableau, Tableau, Tableau);

fn r12((a, b, c): Triple) -> Result<Triple> {
    let r = apply_r(&a, &b)?;
    Ok((r.left_out, r.right_out, c))
}

fn r23((a, b, c): Triple) -> Result<Triple> {
    let r = apply_r(&b, &c)?;
    Ok((a, r.left_out, r.right_out))
}

/// Both sides of `(R⊗1)(1⊗R)(R⊗1) = (1⊗R)(R⊗1)(1⊗R)` on `x ⊗ y ⊗ z`.
pub fn yang_baxter_sides(x: &Tableau, y: &Tableau, z: &Tableau) -> Result<(Triple, Triple)> {
    let start = (x.clone(), y.clone(), z.clone());
    let lhs = r12(r23(r12(start.clone())?)?)?;
    let rhs = r23(r12(r23(start)?)?)?;
    Ok((lhs, rhs))
}

pub fn check_yang_baxter(x: &Tableau, y: &Tableau, z: &Tableau) -> Result<bool> {
    let (lhs, rhs) = yang_baxter_sides(x, y, z)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, n: Letter) -> Tableau {
        Tableau::parse(s, n).unwrap()
    }

    #[test]
    fn worked_example() {
        let x = t("1 2 4 / 2 3 5 / 4 4 6", 6);
        let y = t("2/5", 6);
        let r = apply_r(&x, &y).unwrap();
        assert_eq!(r.left_out, t("2/4", 6));
        assert_eq!(r.right_out, t("1 2 3 / 2 4 5 / 4 5 6", 6));
        assert_eq!(r.energy, -1);
        assert_eq!(energy_h(&x, &y).unwrap(), -1);
        assert_eq!(oracle_r(&x, &y).unwrap(), r);
    }

    #[test]
    fn vacuum_pair_is_fixed() {
        for k in 1..=3 {
            for l in 1..=3 {
                let c = Tableau::vacuum_rectangle(k, l, 5);
                let v = Tableau::vacuum_column(k, 5);
                let r = apply_r(&c, &v).unwrap();
                assert_eq!((r.left_out, r.right_out.clone(), r.energy), (v.clone(), c.clone(), 0));
                assert_eq!(oracle_r(&c, &v).unwrap().right_out, c);
            }
        }
    }

    #[test]
    fn full_r_on_three_row_rectangles() {
        let u = t("1 1 1 1 2 / 2 2 3 3 3 / 4 4 4 5 5", 7);
        let v = t("1 1 2 / 2 3 3 / 5 6 7", 7);
        let r = apply_r(&u, &v).unwrap();
        assert_eq!(r.left_out, t("1 1 2 / 3 3 3 / 4 5 5", 7));
        assert_eq!(r.right_out, t("1 1 1 1 2 / 2 2 2 4 4 / 3 3 5 6 7", 7));
    }

    #[test]
    fn empty_factors() {
        let e = Tableau::empty(4);
        let r = apply_r(&e, &e).unwrap();
        assert_eq!((r.left_out.is_empty(), r.right_out.is_empty(), r.energy), (true, true, 0));
        let y = t("1 2 / 3 4", 4);
        let r = apply_r(&e, &y).unwrap();
        assert_eq!((r.left_out, r.right_out), (y.clone(), e.clone()));
        let r = apply_r(&y, &e).unwrap();
        assert_eq!((r.left_out, r.right_out), (e, y));
    }

    #[test]
    fn rejects_non_rectangles() {
        let bad = t("1 2 / 3", 4);
        assert!(apply_r(&bad, &t("1", 4)).is_err());
        assert!(apply_r(&t("1", 3), &t("1", 4)).is_err());
    }

    #[test]
    fn energy_is_nonpositive_for_equal_heights() {
        for k in 1..=2 {
            for l in 1..=3 {
                for l2 in 1..=2 {
                    for x in Tableau::enumerate_rectangles(k, l, 4) {
                        for y in Tableau::enumerate_rectangles(k, l2, 4) {
                            assert!(energy_h(&x, &y).unwrap() <= 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn yang_baxter_on_vacuum() {
        let x = Tableau::vacuum_rectangle(2, 3, 4);
        let y = Tableau::vacuum_rectangle(2, 2, 4);
        let z = Tableau::vacuum_column(2, 4);
        assert!(check_yang_baxter(&x, &y, &z).unwrap());
    }
}
