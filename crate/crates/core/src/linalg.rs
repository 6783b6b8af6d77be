//! Sparse exact Gaussian elimination over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// Row-echelon accumulator. Rows are fed one at a time; each stored row has
/// leading coefficient 1 at its pivot column.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

fn axpy(target: &mut SparseRow, factor: &Q, src: &SparseRow) {
    for (c, v) in src {
        let entry = target.entry(*c).or_insert_with(Q::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(c);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the stored pivots. Returns true if it was
    /// independent (and is now stored).
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&c, _)) = row.iter().find(|(c, _)| self.pivots.contains_key(c)) {
            let factor = row[&c].clone();
            axpy(&mut row, &factor, &self.pivots[&c]);
        }
        let Some((&lead, lv)) = row.iter().next() else {
            return false;
        };
        let inv = Q::one() / lv;
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.pivots.insert(lead, row);
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Fully reduced row echelon form, keyed by pivot column.
    pub fn reduced(&self) -> BTreeMap<usize, SparseRow> {
        let mut rows = self.pivots.clone();
        let cols: Vec<usize> = rows.keys().copied().rev().collect();
        for &p in &cols {
            let prow = rows[&p].clone();
            for (_, r) in rows.range_mut(..p) {
                if let Some(f) = r.get(&p).cloned() {
                    axpy(r, &f, &prow);
                }
            }
        }
        rows
    }

    /// Basis of the kernel `{x : R x = 0}` in `ncols` unknowns, one vector per
    /// free column (that entry equal to 1).
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Q>> {
        let red = self.reduced();
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !red.contains_key(c)) {
            let mut v = vec![Q::zero(); ncols];
            v[free] = Q::one();
            for (p, row) in &red {
                if let Some(x) = row.get(&free) {
                    v[*p] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank_of(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.push(r);
    }
    e.rank()
}

/// Dense integer matrix helpers for block matrices.
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j]).collect())
        .collect()
}

pub fn is_symmetric(a: &[Vec<i64>]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, v)| *v == a[j][i]))
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}
