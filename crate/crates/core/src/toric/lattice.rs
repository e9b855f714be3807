//! Integer lattices: unimodular column reduction, kernel lattices, exact
//! membership, and diagonalization for saturation questions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;

/// Column-reduced form `A·U = [H | 0]` with `H` in lower echelon form.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub rows: usize,
    /// Reduced matrix, row-major, same shape as the input.
    pub h: Vec<IntVec>,
    /// Unimodular transform, `cols × cols`, row-major.
    pub u: Vec<IntVec>,
    /// Row of the leading entry of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

fn identity(n: usize) -> Vec<IntVec> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn swap_cols(m: &mut [IntVec], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col_dst −= q · col_src`.
fn sub_col(m: &mut [IntVec], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

/// Column echelon form of an `rows × cols` integer matrix given by rows.
pub fn column_echelon(a: &[IntVec], cols: usize) -> ColumnEchelon {
    let rows = a.len();
    let mut h: Vec<IntVec> = a.to_vec();
    let mut u = identity(cols);
    let mut pc = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..rows {
        if pc >= cols {
            break;
        }
        loop {
            let best = (pc..cols).filter(|&j| !h[i][j].is_zero()).min_by_key(|&j| h[i][j].abs());
            let Some(j) = best else { break };
            swap_cols(&mut h, j, pc);
            swap_cols(&mut u, j, pc);
            let mut clean = true;
            for j in pc + 1..cols {
                if !h[i][j].is_zero() {
                    let q = h[i][j].div_floor(&h[i][pc]);
                    sub_col(&mut h, j, pc, &q);
                    sub_col(&mut u, j, pc, &q);
                    clean &= h[i][j].is_zero();
                }
            }
            if clean {
                if h[i][pc].is_negative() {
                    for row in h.iter_mut().chain(u.iter_mut()) {
                        row[pc] = -row[pc].clone();
                    }
                }
                pivot_rows.push(i);
                pc += 1;
                break;
            }
        }
    }
    ColumnEchelon { rows, h, u, pivot_rows }
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn cols(&self) -> usize {
        self.u.len()
    }

    /// Columns `rank..cols` of `U`: a basis of `{z ∈ ℤ^cols : A z = 0}`.
    pub fn kernel_basis(&self) -> Vec<IntVec> {
        (self.rank()..self.cols()).map(|j| self.u.iter().map(|row| row[j].clone()).collect()).collect()
    }

    /// Basis of the column lattice: the first `rank` columns of `H`.
    pub fn lattice_basis(&self) -> Vec<IntVec> {
        (0..self.rank()).map(|j| self.h.iter().map(|row| row[j].clone()).collect()).collect()
    }

    /// Integer `y` with `H y = λ` over the pivot columns; `Err(true)` if `λ`
    /// is in the rational span but not the lattice, `Err(false)` if outside the span.
    pub fn solve_basis(&self, lambda: &[BigInt]) -> Result<IntVec, bool> {
        let m = self.rank();
        let mut y: IntVec = Vec::with_capacity(m);
        let mut integral = true;
        for (i, &p) in self.pivot_rows.iter().enumerate() {
            let mut r = lambda[p].clone();
            for (l, yl) in y.iter().enumerate() {
                r -= &self.h[p][l] * yl;
            }
            let (q, rem) = r.div_rem(&self.h[p][i]);
            if !rem.is_zero() {
                integral = false;
            }
            y.push(q);
        }
        if !integral {
            // distinguish by a rational check
            return Err(self.in_rational_span(lambda));
        }
        for (p, target) in lambda.iter().enumerate().take(self.rows) {
            let s: BigInt = (0..m).map(|l| &self.h[p][l] * &y[l]).sum();
            if &s != target {
                return Err(false);
            }
        }
        Ok(y)
    }

    fn in_rational_span(&self, lambda: &[BigInt]) -> bool {
        use crate::exactlin::{Rational, RowEchelon};
        let rows: Vec<Vec<Rational>> = self
            .lattice_basis()
            .into_iter()
            .map(|c| c.into_iter().map(Rational::from_integer).collect())
            .collect();
        let ech = RowEchelon::from_rows(self.rows, rows);
        ech.contains(&lambda.iter().cloned().map(Rational::from_integer).collect::<Vec<_>>())
    }

    /// Integer `z` with `A z = λ`, if one exists.
    pub fn solve(&self, lambda: &[BigInt]) -> Result<IntVec, bool> {
        let y = self.solve_basis(lambda)?;
        Ok((0..self.cols()).map(|r| (0..self.rank()).map(|l| &self.u[r][l] * &y[l]).sum()).collect())
    }
}

/// `W·A·V = D` with `D` diagonal (not necessarily in Smith order).
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub diag: IntVec,
    pub w_inv: Vec<IntVec>,
    pub v: Vec<IntVec>,
}

/// Diagonalizes an integer matrix by unimodular row and column operations.
pub fn diagonalize(a: &[IntVec], cols: usize) -> Diagonalization {
    let rows = a.len();
    let mut m: Vec<IntVec> = a.to_vec();
    let mut w_inv = identity(rows);
    let mut v = identity(cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Diagonalization { diag, w_inv, v };
            };
            m.swap(t, bi);
            // row swap on A is a column swap on W⁻¹
            swap_cols(&mut w_inv, t, bi);
            swap_cols(&mut m, t, bj);
            swap_cols(&mut v, t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    // R_i −= q R_t  ⇒  W⁻¹: C_t += q C_i
                    for j in 0..cols {
                        let x = &m[t][j] * &q;
                        m[i][j] -= x;
                    }
                    for row in w_inv.iter_mut() {
                        let x = &row[i] * &q;
                        row[t] += x;
                    }
                    clean &= m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    sub_col(&mut m, j, t, &q);
                    sub_col(&mut v, j, t, &q);
                    clean &= m[t][j].is_zero();
                }
            }
            if clean {
                diag.push(m[t][t].clone());
                break;
            }
        }
    }
    Diagonalization { diag, w_inv, v }
}

pub fn to_big(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Rows of the `r × q` matrix whose columns are the given vectors.
pub fn columns_to_rows(cols: &[IntVec], r: usize) -> Vec<IntVec> {
    (0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}
