//! Gaussian elimination over exact fields.
//!
//! Pivots are chosen as the first nonzero entry in a column; no numerical
//! pivoting is needed because no rounding ever happens.

use thiserror::Error;

use super::{CyclotomicNumber, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("rhs has {rhs} entries but the matrix has {rows} rows")]
    Dimension { rows: usize, rhs: usize },
    #[error("row {row} of the matrix has {len} entries, expected {cols}")]
    Ragged { row: usize, len: usize, cols: usize },
    #[error("system is inconsistent: row {row} reduces to 0 = nonzero")]
    Inconsistent { row: usize },
    #[error("system is underdetermined: rank {rank} < {cols} unknowns")]
    Underdetermined { rank: usize, cols: usize },
}

/// A linear system `matrix · x = rhs` over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<F = CyclotomicNumber> {
    matrix: Vec<Vec<F>>,
    rhs: Vec<F>,
    cols: usize,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(matrix: Vec<Vec<F>>, rhs: Vec<F>) -> Result<Self, SolveError> {
        if matrix.len() != rhs.len() {
            return Err(SolveError::Dimension {
                rows: matrix.len(),
                rhs: rhs.len(),
            });
        }
        let cols = matrix.first().map_or(0, Vec::len);
        if let Some((row, r)) = matrix.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(SolveError::Ragged {
                row,
                len: r.len(),
                cols,
            });
        }
        Ok(Self { matrix, rhs, cols })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matrix(&self) -> &[Vec<F>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[F] {
        &self.rhs
    }

    /// `matrix · x`.
    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(F::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }
}

fn scale_row<F: Field>(row: &mut [F], factor: &F) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.times(factor);
        }
    }
}

/// `target -= factor · source`, starting at column `from`.
fn eliminate<F: Field>(target: &mut [F], source: &[F], factor: &F, from: usize) {
    for (t, s) in target[from..].iter_mut().zip(&source[from..]) {
        if !s.is_zero() {
            *t = t.minus(&factor.times(s));
        }
    }
}

/// Reduces `rows` to reduced row echelon form considering only the first
/// `cols` columns as pivot candidates. Returns the pivot columns; pivot rows
/// occupy the first positions, in order. Row permutations are mirrored in `tags`.
fn rref_tagged<F: Field>(rows: &mut [Vec<F>], tags: &mut [usize], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        tags.swap(next, found);
        let inv = rows[next][col].inverse().expect("pivot is nonzero");
        scale_row(&mut rows[next][col..], &inv);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let factor = row[col].clone();
                eliminate(row, &pivot_row, &factor, col);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_echelon<F: Field>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut tags: Vec<usize> = (0..rows.len()).collect();
    rref_tagged(rows, &mut tags, cols)
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut work = rows.to_vec();
    row_echelon(&mut work).len()
}

/// A basis of `{x : rows · x = 0}`.
pub fn nullspace<F: Field>(rows: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut work = rows.to_vec();
    let mut tags: Vec<usize> = (0..work.len()).collect();
    let pivots = rref_tagged(&mut work, &mut tags, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = work[r][f].negated();
            }
            v
        })
        .collect()
}

/// Normalizes a row so its first nonzero entry among the first `cols`
/// columns is 1. Returns false for rows that are zero on those columns.
fn normalize_leading<F: Field>(row: &mut [F], cols: usize) -> bool {
    match row[..cols].iter().position(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = row[lead].inverse().expect("leading entry is nonzero");
            scale_row(&mut row[lead..], &inv);
            true
        }
        None => false,
    }
}

/// Solves the system exactly, demanding a unique solution.
///
/// Rows that are scalar multiples of an earlier row (augmented part
/// included) are merged before elimination; this is exact and keeps the
/// heavily overdetermined systems from point expansions cheap. Every other
/// row takes part in the consistency check.
pub fn solve_exact<F: Field>(system: &LinearSystem<F>) -> Result<Vec<F>, SolveError> {
    let cols = system.cols;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut tags: Vec<usize> = Vec::new();
    for (i, (row, b)) in system.matrix.iter().zip(&system.rhs).enumerate() {
        let mut aug = row.clone();
        aug.push(b.clone());
        if !normalize_leading(&mut aug, cols) {
            if !aug[cols].is_zero() {
                return Err(SolveError::Inconsistent { row: i });
            }
            continue;
        }
        if !rows.contains(&aug) {
            rows.push(aug);
            tags.push(i);
        }
    }
    let pivots = rref_tagged(&mut rows, &mut tags, cols);
    let rank = pivots.len();
    if let Some(row) = (rank..rows.len())
        .filter(|&r| !rows[r][cols].is_zero())
        .map(|r| tags[r])
        .min()
    {
        return Err(SolveError::Inconsistent { row });
    }
    if rank < cols {
        return Err(SolveError::Underdetermined { rank, cols });
    }
    Ok(rows.into_iter().take(cols).map(|mut r| r.swap_remove(cols)).collect())
}
