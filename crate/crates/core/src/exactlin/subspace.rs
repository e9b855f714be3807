//! Linear subspaces of ℚⁿ in canonical (RREF) form.

use num_traits::Zero;

use super::echelon::RowEchelon;
use super::matrix::QMatrix;
use super::rational::{QVector, Rational};

/// A subspace of ℚ^ambient. Two subspaces compare equal iff they are equal as sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ech: RowEchelon,
}

impl Subspace {
    pub fn span<I: IntoIterator<Item = QVector>>(ambient: usize, vectors: I) -> Self {
        Subspace { ech: RowEchelon::from_rows(ambient, vectors) }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ech: RowEchelon::new(ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, (0..ambient).map(|i| super::rational::unit_vec(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ech.ncols()
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.ech.is_full()
    }

    /// Canonical basis (reduced echelon rows).
    pub fn basis(&self) -> Vec<QVector> {
        self.ech.rows().cloned().collect()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.ambient(), &self.basis())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.ech.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ech.rows().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient(), self.ech.rows().chain(other.ech.rows()).cloned())
    }

    /// Rows of a matrix whose kernel is exactly this subspace.
    pub fn annihilator(&self) -> Vec<QVector> {
        self.ech.kernel_basis()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let eqs = RowEchelon::from_rows(
            self.ambient(),
            self.annihilator().into_iter().chain(other.annihilator()),
        );
        Subspace::span(self.ambient(), eqs.kernel_basis())
    }

    /// `{v : m·v ∈ self}` for a square `m` of matching size.
    pub fn preimage(&self, m: &QMatrix) -> Subspace {
        let rows: Vec<QVector> = self.annihilator().iter().map(|a| m.vec_mul(a)).collect();
        Subspace::span(self.ambient(), RowEchelon::from_rows(m.ncols(), rows).kernel_basis())
    }

    pub fn image(&self, m: &QMatrix) -> Subspace {
        Subspace::span(m.nrows(), self.ech.rows().map(|v| m.mul_vec(v)))
    }

    pub fn is_invariant_under(&self, m: &QMatrix) -> bool {
        self.ech.rows().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// Coordinates of `v` with respect to [`Subspace::basis`], if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVector> {
        let pivots = self.ech.pivots();
        let coords: QVector = pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![Rational::zero(); self.ambient()];
        for (c, row) in coords.iter().zip(self.ech.rows()) {
            super::rational::axpy(&mut recon, c, row);
        }
        (recon.as_slice() == v).then_some(coords)
    }
}
