//! Incremental reduced row echelon form.
//!
//! Every linear solve in the crate funnels through [`RowEchelon`]: equations
//! are inserted one row at a time and the stored rows are kept fully reduced,
//! so the final state is the canonical RREF of everything inserted and the
//! kernel basis can be read off the free columns.

use num_traits::{One, Zero};

use super::rational::{axpy, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowEchelon {
    ncols: usize,
    /// Rows sorted by pivot column; each row has a 1 at its pivot and zeros
    /// in every other pivot column.
    rows: Vec<(usize, QVector)>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, rows: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = QVector>>(ncols: usize, rows: I) -> Self {
        let mut e = RowEchelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &QVector> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies in their span.
    pub fn reduce(&self, v: &[Rational]) -> QVector {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = -v[*p].clone();
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Inserts a row; returns `true` iff the rank grew.
    pub fn insert(&mut self, v: QVector) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        if !inv.is_one() {
            for x in v.iter_mut().skip(p) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -row[p].clone();
                axpy(row, &c, &v);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    /// Basis of `{x : r·x = 0 for every stored row r}`, one vector per free column,
    /// ordered by free column index.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![Rational::zero(); self.ncols];
                x[free] = Rational::one();
                for (p, row) in &self.rows {
                    if !row[free].is_zero() {
                        x[*p] = -row[free].clone();
                    }
                }
                x
            })
            .collect()
    }
}
