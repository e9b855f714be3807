//! Lie algebras over ℚ given by structure constants.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::rational::{axpy, is_zero_vec, scale_vec, unit_vec, zero_vec};
use crate::exactlin::{QMatrix, QVector, Rational, RowEchelon, Subspace};

/// Structure constants `[aᵢ, aⱼ] = Σₖ c[i][j][k] aₖ` on a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    structure: Vec<Vec<QVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

impl LieAlgebra {
    /// Takes the full table as given; call [`LieAlgebra::validate`] before trusting it.
    pub fn from_table(names: Vec<String>, structure: Vec<Vec<QVector>>) -> Result<Self> {
        let n = names.len();
        if structure.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: structure.len() });
        }
        for row in &structure {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            if let Some(v) = row.iter().find(|v| v.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        Ok(LieAlgebra { names, structure })
    }

    /// Builds the table from the brackets `[aᵢ, aⱼ]` for listed pairs, filling in
    /// `[aⱼ, aᵢ] = −[aᵢ, aⱼ]` and zero for omitted pairs.
    pub fn from_brackets(names: Vec<String>, brackets: &[(usize, usize, QVector)]) -> Result<Self> {
        let n = names.len();
        let mut structure = vec![vec![zero_vec(n); n]; n];
        for (i, j, v) in brackets {
            if *i >= n || *j >= n {
                return Err(Error::DimensionMismatch { expected: n, found: (*i).max(*j) + 1 });
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            structure[*i][*j] = v.clone();
            if i != j {
                structure[*j][*i] = scale_vec(&Rational::from_integer((-1).into()), v);
            }
        }
        LieAlgebra::from_table(names, structure)
    }

    /// Structure constants of the span of linearly independent matrices closed
    /// under the commutator.
    pub fn from_matrices(names: Vec<String>, mats: &[QMatrix]) -> Result<Self> {
        let n = mats.len();
        if names.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: names.len() });
        }
        let Some(first) = mats.first() else {
            return LieAlgebra::from_table(names, Vec::new());
        };
        let size = first.require_square()?;
        let flat: Vec<QVector> = mats.iter().map(|m| m.entries().to_vec()).collect();
        let basis = QMatrix::from_columns(size * size, &flat);
        if basis.rank() != n {
            return Err(Error::Unsupported("matrices are linearly dependent".into()));
        }
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = mats[i].commutator(&mats[j]);
                let coords = basis.solve(c.entries()).ok_or(Error::NotSubalgebra(i, j))?;
                if !is_zero_vec(&coords) {
                    brackets.push((i, j, coords));
                }
            }
        }
        LieAlgebra::from_brackets(names, &brackets)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn basis_vector(&self, i: usize) -> QVector {
        unit_vec(self.dim(), i)
    }

    /// `[aᵢ, aⱼ]` in basis coordinates.
    pub fn structure(&self, i: usize, j: usize) -> &QVector {
        &self.structure[i][j]
    }

    /// Antisymmetry and Jacobi on all basis pairs and triples, checked exactly.
    pub fn validate(&self) -> std::result::Result<(), Vec<AxiomViolation>> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i..n {
                let sum: QVector = self.structure[i][j]
                    .iter()
                    .zip(&self.structure[j][i])
                    .map(|(a, b)| a + b)
                    .collect();
                if !is_zero_vec(&sum) {
                    bad.push(AxiomViolation::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !is_zero_vec(&self.jacobiator_basis(i, j, k)) {
                        bad.push(AxiomViolation::Jacobi { i, j, k });
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().map_err(Error::InvalidAlgebra)?;
        Ok(self)
    }

    /// `[[aᵢ,aⱼ],aₖ] + [[aⱼ,aₖ],aᵢ] + [[aₖ,aᵢ],aⱼ]`
    fn jacobiator_basis(&self, i: usize, j: usize, k: usize) -> QVector {
        let (ai, aj, ak) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
        let t1 = self.bracket_unchecked(&self.structure[i][j], &ak);
        let t2 = self.bracket_unchecked(&self.structure[j][k], &ai);
        let t3 = self.bracket_unchecked(&self.structure[k][i], &aj);
        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<QVector> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> QVector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &self.structure[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad(x) = [x, ·]` in the basis.
    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim();
        let cols: Vec<QVector> = (0..n).map(|j| self.bracket_unchecked(x, &self.basis_vector(j))).collect();
        QMatrix::from_columns(n, &cols)
    }

    /// Lower central series of the whole algebra.
    pub fn lower_central_series(&self) -> LowerCentralSeries {
        Subalgebra::whole(self).lower_central_series(self)
    }
}

/// Subalgebra spanned by vectors in parent coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    span: Subspace,
}

impl Subalgebra {
    pub fn new(g: &LieAlgebra, generators: Vec<QVector>) -> Result<Self> {
        let span = Subspace::span(g.dim(), generators);
        let basis = span.basis();
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate().skip(a + 1) {
                if !span.contains(&g.bracket(x, y)?) {
                    return Err(Error::NotSubalgebra(a, b));
                }
            }
        }
        Ok(Subalgebra { span })
    }

    pub fn whole(g: &LieAlgebra) -> Self {
        Subalgebra { span: Subspace::full(g.dim()) }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn basis(&self) -> Vec<QVector> {
        self.span.basis()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.span.contains(x)
    }

    pub fn is_abelian(&self, g: &LieAlgebra) -> bool {
        let b = self.basis();
        b.iter().enumerate().all(|(i, x)| b[i + 1..].iter().all(|y| is_zero_vec(&g.bracket_unchecked(x, y))))
    }

    /// `l⁰ = s`, `lᵏ⁺¹ = [s, lᵏ]`, computed until two consecutive terms span the same space.
    pub fn lower_central_series(&self, g: &LieAlgebra) -> LowerCentralSeries {
        let basis = self.basis();
        let mut terms = vec![self.span.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let mut next = RowEchelon::new(g.dim());
            for x in &basis {
                for y in last.basis() {
                    next.insert(g.bracket_unchecked(x, &y));
                }
            }
            let next = Subspace::span(g.dim(), next.rows().cloned());
            if &next == last {
                break;
            }
            terms.push(next);
        }
        LowerCentralSeries { terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    pub terms: Vec<Subspace>,
}

impl LowerCentralSeries {
    pub fn is_nilpotent(&self) -> bool {
        self.terms.last().is_some_and(Subspace::is_zero)
    }

    /// Nilpotency class `c` (`l^c = 0`, `l^{c−1} ≠ 0`); `None` when not nilpotent.
    pub fn class(&self) -> Option<usize> {
        self.is_nilpotent().then(|| self.terms.len() - 1)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}
