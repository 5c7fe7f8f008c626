//! Exact covers of the 1-entries of a boolean matrix by combinatorial rectangles.

use std::collections::HashSet;

use crate::error::{Error, Result, StepBudget};

/// Up to 128 rows/columns, one bitset per row.
pub const MAX_SIZE: usize = 128;

/// A rectangle `rows × cols`, as bitsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rectangle {
    pub rows: u128,
    pub cols: u128,
}

impl Rectangle {
    pub fn row_indices(&self) -> Vec<usize> {
        bits(self.rows)
    }

    pub fn col_indices(&self) -> Vec<usize> {
        bits(self.cols)
    }
}

pub(crate) fn bits(x: u128) -> Vec<usize> {
    (0..128).filter(|&i| x >> i & 1 == 1).collect()
}

/// Boolean matrix as row bitsets.
pub fn matrix_rows(entries: &[Vec<bool>]) -> Result<Vec<u128>> {
    let m = entries.len();
    if m > MAX_SIZE {
        return Err(Error::NotApplicable(format!("rectangle cover supports at most {MAX_SIZE} classes, got {m}")));
    }
    Ok(entries
        .iter()
        .map(|row| row.iter().enumerate().fold(0u128, |acc, (j, &b)| if b { acc | 1 << j } else { acc }))
        .collect())
}

/// Finds at most `k` rectangles covering exactly the 1-entries of `rows`.
///
/// Branches on the first uncovered 1-entry in row-major order over the maximal
/// rectangles containing it (largest first); failed states are memoized.
pub fn rectangle_cover(rows: &[u128], k: usize, budget: &mut StepBudget) -> Result<Option<Vec<Rectangle>>> {
    let mut search = Search { rows, failed: HashSet::new(), budget };
    let covered = vec![0u128; rows.len()];
    search.go(&covered, k)
}

struct Search<'a, 'b> {
    rows: &'a [u128],
    failed: HashSet<(Vec<u128>, usize)>,
    budget: &'b mut StepBudget,
}

impl Search<'_, '_> {
    fn go(&mut self, covered: &[u128], k: usize) -> Result<Option<Vec<Rectangle>>> {
        self.budget.tick()?;
        let target = (0..self.rows.len()).find_map(|i| {
            let rest = self.rows[i] & !covered[i];
            (rest != 0).then(|| (i, rest.trailing_zeros() as usize))
        });
        let Some((i, j)) = target else {
            return Ok(Some(Vec::new()));
        };
        if k == 0 {
            return Ok(None);
        }
        let key = (covered.to_vec(), k);
        if self.failed.contains(&key) {
            return Ok(None);
        }
        for rect in maximal_rectangles(self.rows, i, j) {
            let next: Vec<u128> = covered
                .iter()
                .enumerate()
                .map(|(r, &c)| if rect.rows >> r & 1 == 1 { c | rect.cols } else { c })
                .collect();
            if let Some(mut rest) = self.go(&next, k - 1)? {
                rest.insert(0, rect);
                return Ok(Some(rest));
            }
        }
        self.failed.insert(key);
        Ok(None)
    }
}

/// All maximal all-ones rectangles containing entry `(i, j)`, largest area first
/// (ties by row and column bitsets).
pub fn maximal_rectangles(rows: &[u128], i: usize, j: usize) -> Vec<Rectangle> {
    let jbit = 1u128 << j;
    let mut col_sets: HashSet<u128> = HashSet::from([rows[i]]);
    for (r, &row) in rows.iter().enumerate() {
        if r == i || row & jbit == 0 {
            continue;
        }
        let extra: Vec<u128> = col_sets.iter().map(|&c| c & row).collect();
        col_sets.extend(extra);
    }
    let mut out: Vec<Rectangle> = col_sets
        .into_iter()
        .map(|cols| {
            let rs = rows.iter().enumerate().fold(
                0u128,
                |acc, (r, &row)| {
                    if row & cols == cols {
                        acc | 1 << r
                    } else {
                        acc
                    }
                },
            );
            Rectangle { rows: rs, cols }
        })
        .collect();
    out.sort_by_key(|r| (std::cmp::Reverse(r.rows.count_ones() * r.cols.count_ones()), r.rows, r.cols));
    out.dedup();
    out
}
