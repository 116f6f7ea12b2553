//! Exact sparse Gaussian elimination over the rationals.
//!
//! Columns are eliminated left to right. Within a column the pivot is the
//! candidate entry of smallest bit-size (ties: shorter row, then lower row
//! index). The result is the reduced row echelon form, which depends only on
//! the row space and the column order, never on the order of the input rows.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::rational::{bit_size, Coeff};

pub(crate) type SparseRow = BTreeMap<usize, Coeff>;

/// Reduced row echelon form of a relation matrix. Each pivot column is
/// expressed through the free (non-pivot) columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Rref {
    ncols: usize,
    /// pivot column `c` maps to `t` with `x_c = sum_f t[f] x_f` over free columns.
    pivots: BTreeMap<usize, SparseRow>,
    free: Vec<usize>,
}

impl Rref {
    pub(crate) fn new(ncols: usize, rows: Vec<SparseRow>) -> Self {
        let mut rows: Vec<Option<SparseRow>> = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|_, v| !v.is_zero());
                (!r.is_empty()).then_some(r)
            })
            .collect();
        let mut by_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            if let Some(r) = r {
                for &c in r.keys() {
                    by_col[c].insert(i);
                }
            }
        }

        let mut echelon: BTreeMap<usize, SparseRow> = BTreeMap::new();
        let mut free = Vec::new();
        for col in 0..ncols {
            let candidates: Vec<usize> = by_col[col].iter().copied().collect();
            let Some(&best) = candidates.iter().min_by_key(|&&i| {
                let r = rows[i].as_ref().expect("active row");
                (bit_size(&r[&col]), r.len(), i)
            }) else {
                free.push(col);
                continue;
            };
            let mut pivot = rows[best].take().expect("active row");
            for &c in pivot.keys() {
                by_col[c].remove(&best);
            }
            let inv = Coeff::one() / &pivot[&col];
            pivot.values_mut().for_each(|v| *v *= &inv);

            for &other in candidates.iter().filter(|&&i| i != best) {
                let row = rows[other].as_mut().expect("active row");
                let factor = row[&col].clone();
                for (&c, v) in &pivot {
                    let entry = row.entry(c).or_insert_with(Coeff::zero);
                    let was_zero = entry.is_zero();
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        row.remove(&c);
                        by_col[c].remove(&other);
                    } else if was_zero {
                        by_col[c].insert(other);
                    }
                }
                if row.is_empty() {
                    rows[other] = None;
                }
            }
            echelon.insert(col, pivot);
        }

        // back substitution, last pivot first
        let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&col, row) in echelon.iter().rev() {
            let mut tail = SparseRow::new();
            for (&c, v) in row {
                if c == col {
                    continue;
                }
                match pivots.get(&c) {
                    Some(expr) => {
                        // x_c = expr, and the row reads x_col + v x_c + ... = 0
                        for (&f, e) in expr {
                            add_to(&mut tail, f, -(v * e));
                        }
                    }
                    None => add_to(&mut tail, c, -v.clone()),
                }
            }
            pivots.insert(col, tail);
        }

        Rref {
            ncols,
            pivots,
            free,
        }
    }

    pub(crate) fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rewrites a vector over all columns as a vector over the free columns.
    pub(crate) fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut out = SparseRow::new();
        for (&c, x) in v {
            match self.pivots.get(&c) {
                Some(expr) => {
                    for (&f, e) in expr {
                        add_to(&mut out, f, x * e);
                    }
                }
                None => add_to(&mut out, c, x.clone()),
            }
        }
        out
    }

    /// Sparse listing of the pivot expressions, for serialization.
    pub(crate) fn pivot_expressions(&self) -> &BTreeMap<usize, SparseRow> {
        &self.pivots
    }
}

pub(crate) fn add_to(row: &mut SparseRow, c: usize, v: Coeff) {
    if v.is_zero() {
        return;
    }
    let e = row.entry(c).or_insert_with(Coeff::zero);
    *e += v;
    if e.is_zero() {
        row.remove(&c);
    }
}

/// Rank of a small dense rational matrix.
pub(crate) fn rank(rows: &[Vec<Coeff>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let sparse = rows
        .iter()
        .map(|r| r.iter().cloned().enumerate().collect())
        .collect();
    Rref::new(ncols, sparse).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::coeff;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, coeff(v))).collect()
    }

    #[test]
    fn binomial_chain() {
        // x0 = x1, x1 = x2  ->  x0 = x2, x1 = x2
        let r = Rref::new(3, vec![row(&[(0, 1), (1, -1)]), row(&[(1, 1), (2, -1)])]);
        assert_eq!(r.free_columns(), &[2]);
        assert_eq!(r.reduce(&row(&[(0, 1)])), row(&[(2, 1)]));
        assert_eq!(r.reduce(&row(&[(0, 1), (1, -1)])), SparseRow::new());
    }

    #[test]
    fn independent_of_row_order() {
        let rows = vec![
            row(&[(0, 2), (1, -3), (3, 1)]),
            row(&[(1, 1), (2, 5)]),
            row(&[(0, 4), (2, 1), (3, 2)]),
            row(&[(0, 2), (1, -2), (2, 5), (3, 1)]),
        ];
        let a = Rref::new(4, rows.clone());
        let mut rev = rows;
        rev.reverse();
        let b = Rref::new(4, rev);
        assert_eq!(a, b);
    }

    #[test]
    fn rank_counts_dependencies() {
        let m = vec![
            vec![coeff(1), coeff(2), coeff(3)],
            vec![coeff(2), coeff(4), coeff(6)],
            vec![coeff(0), coeff(1), coeff(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn zero_rows_are_ignored() {
        let r = Rref::new(2, vec![SparseRow::new(), row(&[(1, 0)])]);
        assert_eq!(r.rank(), 0);
        assert_eq!(r.free_columns(), &[0, 1]);
    }
}
