//! Finite-dimensional g-modules and the morphisms between them.
//!
//! Tensor products use the Kronecker convention with the first factor as the
//! major index: basis vector `vᵢ ⊗ wⱼ` sits at position `i·dim(W) + j`.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::rational::{is_zero_vec, zero_vec};
use crate::exactlin::{QMatrix, QVector, Rational, RowEchelon, Subspace};
use crate::liealg::LieAlgebra;

/// A g-module: one action matrix `ρ(aᵢ)` per basis element of the algebra.
#[derive(Clone, Debug)]
pub struct Module {
    algebra: Arc<LieAlgebra>,
    id: String,
    dim: usize,
    action: Vec<QMatrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.dim == other.dim && self.action == other.action && same_algebra(self, other)
    }
}

fn same_algebra(a: &Module, b: &Module) -> bool {
    Arc::ptr_eq(&a.algebra, &b.algebra) || a.algebra == b.algebra
}

/// Checks `ρ([aᵢ,aⱼ]) = [ρ(aᵢ), ρ(aⱼ)]` for `i < j`; returns the violating pairs.
pub fn check_module(g: &LieAlgebra, action: &[QMatrix]) -> std::result::Result<(), Vec<(usize, usize)>> {
    let n = g.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = lie_action(action, g.structure(i, j));
            if lhs != action[i].commutator(&action[j]) {
                bad.push((i, j));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// `Σ xᵢ ρ(aᵢ)`
pub fn lie_action(action: &[QMatrix], x: &[Rational]) -> QMatrix {
    let m = action.first().map_or(0, QMatrix::nrows);
    let mut acc = QMatrix::zeros(m, m);
    for (xi, a) in x.iter().zip(action) {
        if !xi.is_zero() {
            acc = &acc + &a.scale(xi);
        }
    }
    acc
}

fn wrap(id: &str) -> String {
    if id.contains('⊗') || id.contains('⊕') {
        format!("({id})")
    } else {
        id.to_string()
    }
}

impl Module {
    /// Validates shapes and the representation identity.
    pub fn new(algebra: Arc<LieAlgebra>, id: impl Into<String>, dim: usize, action: Vec<QMatrix>) -> Result<Self> {
        let id = id.into();
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: action.len() });
        }
        for a in &action {
            if a.nrows() != dim || a.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.nrows().max(a.ncols()) });
            }
        }
        check_module(&algebra, &action).map_err(|pairs| Error::InvalidModule { id: id.clone(), pairs })?;
        Ok(Module { algebra, id, dim, action })
    }

    pub fn trivial(algebra: Arc<LieAlgebra>, dim: usize) -> Self {
        let action = vec![QMatrix::zeros(dim, dim); algebra.dim()];
        let id = if dim == 1 { "triv".to_string() } else { format!("triv{dim}") };
        Module { algebra, id, dim, action }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[QMatrix] {
        &self.action
    }

    /// `ρ(x)` for a Lie element in basis coordinates.
    pub fn act(&self, x: &[Rational]) -> QMatrix {
        if self.action.is_empty() {
            return QMatrix::zeros(self.dim, self.dim);
        }
        lie_action(&self.action, x)
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(QMatrix::is_zero)
    }

    fn same_parent(&self, other: &Module) -> Result<()> {
        if same_algebra(self, other) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// `ρ(x) ⊗ I + I ⊗ ρ(x)` on `self ⊗ other`.
    pub fn tensor(&self, other: &Module) -> Result<Module> {
        self.same_parent(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.kron_sum(b)).collect();
        Ok(Module {
            algebra: self.algebra.clone(),
            id: format!("{}⊗{}", wrap(&self.id), wrap(&other.id)),
            dim: self.dim * other.dim,
            action,
        })
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        self.same_parent(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| QMatrix::block_diag(&[a, b])).collect();
        Ok(Module {
            algebra: self.algebra.clone(),
            id: format!("{}⊕{}", wrap(&self.id), wrap(&other.id)),
            dim: self.dim + other.dim,
            action,
        })
    }

    /// Dual module: `ρ*(x) = −ρ(x)ᵀ`.
    pub fn dual(&self) -> Module {
        let action = self.action.iter().map(|a| -&a.transpose()).collect();
        let id = match self.id.strip_suffix('*') {
            Some(base) if !base.is_empty() => base.to_string(),
            _ => format!("{}*", wrap(&self.id)),
        };
        Module { algebra: self.algebra.clone(), id, dim: self.dim, action }
    }

    /// Smallest invariant subspace containing `vectors`, saturated breadth-first
    /// over the basis actions. The basis of the result keeps discovery order.
    pub fn submodule_generated(&self, vectors: &[QVector]) -> Result<Submodule> {
        let mut ech = RowEchelon::new(self.dim);
        let mut basis: Vec<QVector> = Vec::new();
        for v in vectors {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
            if ech.insert(v.clone()) {
                basis.push(v.clone());
            }
        }
        let mut next = 0;
        while next < basis.len() {
            let v = basis[next].clone();
            for a in &self.action {
                let w = a.mul_vec(&v);
                if ech.insert(w.clone()) {
                    basis.push(w);
                }
            }
            next += 1;
        }
        if basis.is_empty() {
            return Err(Error::EmptySubmodule);
        }
        self.restrict_to(basis, format!("{}[{}]", self.id, ech.rank()))
    }

    /// Restriction to an invariant subspace with the given (independent) basis.
    pub fn restrict_to(&self, basis: Vec<QVector>, id: String) -> Result<Submodule> {
        let inclusion = QMatrix::from_columns(self.dim, &basis);
        let k = basis.len();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let mut cols = Vec::with_capacity(k);
            for b in &basis {
                let image = a.mul_vec(b);
                let c = inclusion.solve(&image).ok_or_else(|| {
                    Error::Unsupported(format!("subspace of {} is not invariant", self.id))
                })?;
                cols.push(c);
            }
            action.push(QMatrix::from_columns(k, &cols));
        }
        let module = Module { algebra: self.algebra.clone(), id: id.clone(), dim: k, action };
        let inclusion = Morphism { source: id, target: self.id.clone(), matrix: inclusion };
        Ok(Submodule { subspace: Subspace::span(self.dim, basis.clone()), basis, module, inclusion })
    }

    pub fn is_invariant_subspace(&self, subspace: &Subspace) -> bool {
        is_invariant_subspace(subspace, &self.action)
    }

    /// Basis of `End_g(V)`; its dimension is the commutant dimension.
    pub fn endomorphisms(&self) -> Vec<QMatrix> {
        hom_space(self, self).expect("same parent")
    }

    /// Basis of the associative algebra generated by the identity and the action.
    pub fn envelope(&self) -> Vec<QMatrix> {
        let n = self.dim;
        let mut ech = crate::exactlin::RowEchelon::new(n * n);
        let mut basis = Vec::new();
        let mut frontier = vec![QMatrix::identity(n)];
        while let Some(m) = frontier.pop() {
            if !ech.insert(m.entries().to_vec()) {
                continue;
            }
            for a in &self.action {
                frontier.push(a * &m);
            }
            basis.push(m);
        }
        basis
    }

    pub fn is_absolutely_irreducible(&self) -> bool {
        self.irreducibility().is_absolutely_irreducible()
    }

    pub fn irreducibility(&self) -> IrreducibilityCertificate {
        let commutant_dim = self.endomorphisms().len();
        IrreducibilityCertificate { dim: self.dim, commutant_dim, envelope_dim: self.envelope().len() }
    }
}

/// Evidence for irreducibility: commutant dimension and the dimension of the
/// associative algebra generated by the action (with identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub dim: usize,
    pub commutant_dim: usize,
    pub envelope_dim: usize,
}

impl IrreducibilityCertificate {
    /// Burnside: the envelope is all of `End(V)`.
    pub fn is_absolutely_irreducible(&self) -> bool {
        self.dim > 0 && self.envelope_dim == self.dim * self.dim
    }
}

#[derive(Clone, Debug)]
pub struct Submodule {
    pub basis: Vec<QVector>,
    pub subspace: Subspace,
    pub module: Module,
    pub inclusion: Morphism,
}

/// A linear map between modules, `target.dim × source.dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: String,
    pub target: String,
    pub matrix: QMatrix,
}

impl Morphism {
    pub fn intertwines(&self, source: &Module, target: &Module) -> bool {
        is_intertwiner(source, target, &self.matrix)
    }
}

pub fn is_intertwiner(source: &Module, target: &Module, a: &QMatrix) -> bool {
    a.nrows() == target.dim
        && a.ncols() == source.dim
        && source.action.iter().zip(&target.action).all(|(rv, rw)| &(a * rv) == &(rw * a))
}

/// Basis of `{A : A·ρ_V(aᵢ) = ρ_W(aᵢ)·A for all i}`, as `dim W × dim V` matrices.
pub fn hom_space(v: &Module, w: &Module) -> Result<Vec<QMatrix>> {
    v.same_parent(w)?;
    let (m, n) = (w.dim, v.dim);
    let unknowns = m * n;
    let mut ech = RowEchelon::new(unknowns);
    for (rv, rw) in v.action.iter().zip(&w.action) {
        for p in 0..m {
            for q in 0..n {
                // (A·ρV)[p,q] − (ρW·A)[p,q]
                let mut row = zero_vec(unknowns);
                for c in 0..n {
                    let x = &rv[(c, q)];
                    if !x.is_zero() {
                        row[p * n + c] += x;
                    }
                }
                for r in 0..m {
                    let x = &rw[(p, r)];
                    if !x.is_zero() {
                        row[r * n + q] -= x;
                    }
                }
                if !is_zero_vec(&row) {
                    ech.insert(row);
                }
            }
        }
    }
    Ok(ech
        .kernel_basis()
        .into_iter()
        .map(|x| QMatrix::from_row_major(m, n, x).expect("shape"))
        .collect())
}

/// True iff every matrix in `actors` maps the subspace into itself.
pub fn is_invariant_subspace(subspace: &Subspace, actors: &[QMatrix]) -> bool {
    actors.iter().all(|a| subspace.is_invariant_under(a))
}
