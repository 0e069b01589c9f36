//! Exact Gaussian elimination over ℚ.
//!
//! Rows are stored sparsely. Elimination proceeds column by column; the
//! reduced row echelon form and therefore the returned particular solution
//! and kernel basis are canonical, whatever row is picked as pivot.

use std::collections::BTreeMap;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Sorted `(column, value)` pairs without zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Solution set `particular + span(kernel)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Solves `A x = rhs` exactly.
///
/// Free variables are set to zero in the particular solution; the kernel
/// basis has one vector per free column (in column order) with a 1 in that
/// column.
pub fn solve_linear_exact(a: &[Vec<Rational>], rhs: &[Rational]) -> Result<AffineSolution> {
    if a.len() != rhs.len() {
        return Err(Error::InvalidInput(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.len(),
            rhs.len()
        )));
    }
    let ncols = a.first().map_or(0, Vec::len);
    if let Some(bad) = a.iter().position(|r| r.len() != ncols) {
        return Err(Error::InvalidInput(format!(
            "row {bad} has {} entries, expected {ncols}",
            a[bad].len()
        )));
    }
    let rows = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            row.iter()
                .chain(std::iter::once(b))
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect()
        })
        .collect();
    let mut ech = Echelon::new(ncols + 1, rows);
    if ech.pivot_columns().any(|p| p == ncols) {
        return Err(Error::NoSolution);
    }
    ech.reduce();

    let mut particular = vec![Rational::zero(); ncols];
    let mut pivot_row = vec![None; ncols];
    for (i, row) in ech.rows.iter().enumerate() {
        let p = row[0].0;
        pivot_row[p] = Some(i);
        if let Some((_, v)) = row.iter().find(|(j, _)| *j == ncols) {
            particular[p] = v.clone();
        }
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|&j| pivot_row[j].is_none()) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for row in &ech.rows {
            if let Some((_, c)) = row.iter().find(|(j, _)| *j == free) {
                v[row[0].0] = -c;
            }
        }
        kernel.push(v);
    }
    Ok(AffineSolution { particular, kernel })
}

/// Row echelon form: each row's first entry is its pivot and equals 1;
/// pivot columns strictly increase down the rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize, rows: Vec<SparseRow>) -> Self {
        let mut buckets: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
        for row in rows {
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(row.iter().all(|(j, v)| *j < ncols && !v.is_zero()));
            if let Some(&(lead, _)) = row.first() {
                buckets.entry(lead).or_default().push(row);
            }
        }
        let mut out = Vec::new();
        while let Some((_, mut bucket)) = buckets.pop_first() {
            // Sparsest row as pivot keeps fill-in down.
            let idx = bucket
                .iter()
                .enumerate()
                .min_by_key(|(i, r)| (r.len(), *i))
                .map(|(i, _)| i)
                .unwrap();
            let mut pivot = bucket.remove(idx);
            let inv = pivot[0].1.recip();
            for (_, v) in pivot.iter_mut() {
                *v *= &inv;
            }
            for row in bucket {
                let factor = row[0].1.clone();
                let reduced = axpy(&row, &factor, &pivot);
                if let Some(&(lead, _)) = reduced.first() {
                    buckets.entry(lead).or_default().push(reduced);
                }
            }
            out.push(pivot);
        }
        Echelon { ncols, rows: out }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Back-eliminates to reduced row echelon form.
    pub fn reduce(&mut self) {
        for i in (0..self.rows.len()).rev() {
            let p = self.rows[i][0].0;
            let (upper, lower) = self.rows.split_at_mut(i);
            let pivot = &lower[0];
            for row in upper.iter_mut() {
                if let Ok(pos) = row.binary_search_by_key(&p, |(j, _)| *j) {
                    let factor = row[pos].1.clone();
                    *row = axpy(row, &factor, pivot);
                }
            }
        }
    }

    /// Solves for pivot variables by back substitution. `values` holds
    /// prescribed values (e.g. for trailing columns); unprescribed free
    /// columns become zero. Rows whose pivot is already prescribed are
    /// skipped, so the caller must have checked them for consistency.
    pub fn back_substitute(&self, values: &mut [Option<Rational>]) -> Vec<Rational> {
        assert_eq!(values.len(), self.ncols);
        for row in self.rows.iter().rev() {
            let p = row[0].0;
            if values[p].is_some() {
                continue;
            }
            let mut acc = Rational::zero();
            for (j, c) in &row[1..] {
                if let Some(v) = &values[*j] {
                    acc -= &(c * v);
                }
            }
            values[p] = Some(acc);
        }
        values
            .iter()
            .map(|v| v.clone().unwrap_or_else(Rational::zero))
            .collect()
    }
}

/// `row - factor * pivot`, merged in column order.
fn axpy(row: &SparseRow, factor: &Rational, pivot: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let ck = pivot.get(k).map_or(usize::MAX, |e| e.0);
        if ci < ck {
            out.push(row[i].clone());
            i += 1;
        } else if ck < ci {
            out.push((ck, -(factor * &pivot[k].1)));
            k += 1;
        } else {
            let v = &row[i].1 - &(factor * &pivot[k].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::integer(v)).collect())
            .collect()
    }

    #[test]
    fn identity_system() {
        let sol = solve_linear_exact(&m(&[&[1, 0], &[0, 1]]), &[q(1, 2), q(-3, 1)]).unwrap();
        assert_eq!(sol.particular, vec![q(1, 2), q(-3, 1)]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn underdetermined() {
        let sol = solve_linear_exact(&m(&[&[1, 1]]), &[Rational::zero()]).unwrap();
        assert_eq!(sol.particular, vec![Rational::zero(), Rational::zero()]);
        assert_eq!(sol.kernel, vec![vec![q(-1, 1), q(1, 1)]]);
    }

    #[test]
    fn kernel_convention_for_free_column() {
        // x + y = 0 has free column y: basis vector (-1, 1).
        // The canonical basis does not depend on row order.
        let a = m(&[&[2, 2, 0], &[1, 1, 1], &[0, 0, 3]]);
        let b = m(&[&[0, 0, 3], &[1, 1, 1], &[2, 2, 0]]);
        let z = vec![Rational::zero(); 3];
        assert_eq!(
            solve_linear_exact(&a, &z).unwrap(),
            solve_linear_exact(&b, &z).unwrap()
        );
    }

    #[test]
    fn inconsistent() {
        let err = solve_linear_exact(&m(&[&[1], &[2]]), &[q(1, 1), q(3, 1)]).unwrap_err();
        assert_eq!(err, Error::NoSolution);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(solve_linear_exact(&m(&[&[1, 2]]), &[]).is_err());
        assert!(solve_linear_exact(&m(&[&[1, 2], &[1]]), &[q(1, 1), q(1, 1)]).is_err());
    }
}
