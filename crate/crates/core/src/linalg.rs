//! Sparse exact Gaussian elimination.
//!
//! Rows are sparse maps `column -> value`. Pivots are always the smallest
//! non-zero column of a row and the basis is kept in reduced row echelon
//! form, so the result depends only on the input rows and their order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Subtracts `factor * src` from `dst`.
fn axpy(dst: &mut SparseRow, factor: &Scalar, src: &SparseRow) {
    for (col, v) in src {
        let delta = factor * v;
        match dst.get_mut(col) {
            Some(x) => {
                *x -= delta;
                if x.is_zero() {
                    dst.remove(col);
                }
            }
            None => {
                dst.insert(*col, -delta);
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Row with the given pivot, normalized so the pivot entry is 1 and all
    /// other pivot columns are zero.
    pub fn row(&self, pivot: usize) -> Option<&SparseRow> {
        self.rows.get(&pivot)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut out = row.clone();
        let hits: Vec<usize> = row.keys().copied().filter(|c| self.is_pivot(*c)).collect();
        for col in hits {
            if let Some(factor) = out.get(&col).cloned() {
                axpy(&mut out, &factor, &self.rows[&col]);
            }
        }
        out
    }

    /// Adds a row to the span. Returns its pivot column when the row was
    /// independent of the rows seen so far.
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let mut row = self.reduce(&row);
        let (&pivot, lead) = row.iter().next()?;
        let inv = Scalar::one() / lead;
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(factor) = other.get(&pivot).cloned() {
                axpy(other, &factor, &row);
            }
        }
        self.rows.insert(pivot, row);
        Some(pivot)
    }
}

pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Outcome of solving a linear system over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    /// A particular solution (free variables set to zero) and the dimension
    /// of the solution space.
    Solvable { x: Vec<Scalar>, nullity: usize },
    /// Index of an equation that reduces to `0 = c` with `c != 0`.
    Inconsistent { equation: usize },
}

/// Solves `sum_j a[i][j] x_j = b_i` for `nvars` unknowns. Each equation is a
/// sparse row over `0..nvars` plus a right-hand side.
pub fn solve(nvars: usize, equations: &[(SparseRow, Scalar)]) -> Solution {
    let mut ech = Echelon::new();
    for (idx, (row, rhs)) in equations.iter().enumerate() {
        let mut r = row.clone();
        if !rhs.is_zero() {
            r.insert(nvars, rhs.clone());
        }
        if ech.insert(r) == Some(nvars) {
            return Solution::Inconsistent { equation: idx };
        }
    }
    let mut x = vec![Scalar::zero(); nvars];
    for (pivot, row) in ech.rows() {
        x[pivot] = row.get(&nvars).cloned().unwrap_or_else(Scalar::zero);
    }
    Solution::Solvable {
        nullity: nvars - ech.rank(),
        x,
    }
}

pub fn dense_to_sparse(values: &[Scalar]) -> SparseRow {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)]), row(&[(2, 1)])];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn keeps_reduced_form() {
        let mut e = Echelon::new();
        e.insert(row(&[(1, 1), (2, 1)]));
        e.insert(row(&[(0, 1), (1, 1)]));
        // row with pivot 0 must no longer mention column 1
        assert_eq!(e.row(0).unwrap(), &row(&[(0, 1), (2, -1)]));
        assert_eq!(e.reduce(&row(&[(0, 1)])), row(&[(2, 1)]));
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1
        let eqs = vec![(row(&[(0, 1), (1, 1)]), int(3)), (row(&[(0, 1), (1, -1)]), int(1))];
        assert_eq!(
            solve(2, &eqs),
            Solution::Solvable { x: vec![int(2), int(1)], nullity: 0 }
        );
        // 2x = 1 with a free y
        let eqs = vec![(row(&[(0, 2)]), int(1))];
        assert_eq!(
            solve(2, &eqs),
            Solution::Solvable { x: vec![frac(1, 2), int(0)], nullity: 1 }
        );
        let eqs = vec![(row(&[(0, 1)]), int(1)), (row(&[(0, 1)]), int(2))];
        assert_eq!(solve(1, &eqs), Solution::Inconsistent { equation: 1 });
    }
}
