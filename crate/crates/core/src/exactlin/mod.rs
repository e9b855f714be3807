//! Exact linear algebra over ℚ: rationals, dense matrices, polynomials and subspaces.

mod echelon;
mod matrix;
mod poly;
pub mod rational;
mod subspace;

pub use echelon::RowEchelon;
pub use matrix::QMatrix;
pub use poly::QPoly;
pub use rational::{frac, int, int_vec, QVector, Rational};
pub use subspace::Subspace;


use crate::error::{Error, Result};

pub fn rank(m: &QMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &QMatrix) -> Vec<QVector> {
    m.kernel_basis()
}

pub fn minimal_polynomial(m: &QMatrix) -> Result<QPoly> {
    m.minimal_polynomial()
}

pub fn squarefree_part(p: &QPoly) -> Result<QPoly> {
    p.squarefree_part()
}

/// Eigenvalues and eigenspaces of a matrix diagonalizable over ℚ, ascending by eigenvalue.
///
/// Fails unless the minimal polynomial is squarefree and splits into rational
/// linear factors.
pub fn eigenspaces(m: &QMatrix) -> Result<Vec<(Rational, Subspace)>> {
    let n = m.require_square()?;
    let minpoly = m.minimal_polynomial()?;
    if !minpoly.is_squarefree() {
        return Err(Error::NotDiagonalizable(format!("minimal polynomial {minpoly:?} has repeated roots")));
    }
    let roots = minpoly.rational_roots()?;
    if Some(roots.len()) != minpoly.degree() {
        return Err(Error::NotDiagonalizable(format!("minimal polynomial {minpoly:?} does not split over ℚ")));
    }
    Ok(roots
        .into_iter()
        .map(|lambda| {
            let shifted = m - &QMatrix::identity(n).scale(&lambda);
            let space = Subspace::span(n, shifted.kernel_basis());
            (lambda, space)
        })
        .collect())
}

/// `exp(t·m) = Σ tᵏmᵏ/k!` for nilpotent `m`; `None` if `m` is not nilpotent.
pub fn exp_nilpotent(m: &QMatrix, t: &Rational) -> Option<QMatrix> {
    let n = m.nrows();
    if !m.is_nilpotent() {
        return None;
    }
    let mut acc = QMatrix::identity(n);
    let mut term = QMatrix::identity(n);
    for k in 1..=n.max(1) {
        term = (&term * m).scale(&(t / int(k as i64)));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    Some(acc)
}

/// Projector onto the `lambda`-eigenspace along the others, as the Lagrange
/// polynomial `Π_{μ≠λ} (m − μ)/(λ − μ)`.
pub fn spectral_projector(m: &QMatrix, spectrum: &[Rational], lambda: &Rational) -> QMatrix {
    let n = m.nrows();
    let mut p = QPoly::one();
    for mu in spectrum.iter().filter(|mu| *mu != lambda) {
        p = &p * &QPoly::linear_root(mu).scale(&(lambda - mu).recip());
    }
    if p.is_zero() {
        return QMatrix::zeros(n, n);
    }
    p.eval_matrix(m)
}
