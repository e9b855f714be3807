//! Finite closures of the module category and computations on them: the
//! linear system for Lie(M), membership tests for M, reconstruction of points
//! from evaluation functionals, Peter–Weyl ranks and isotypic reassembly.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::rational::{dot, zero_vec};
use crate::exactlin::{QMatrix, QVector, Rational, RowEchelon, Subspace};
use crate::liealg::LieAlgebra;
use crate::repn::{hom_space, Module};
use crate::uea::{pbw_operators, MultiIndex};

/// How an object of a closure arose. Indices refer to earlier objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Trivial,
    Generator { index: usize },
    Dual { of: usize },
    Tensor { left: usize, right: usize },
    Submodule { parent: usize },
}

#[derive(Clone, Debug)]
pub struct ClosureObject {
    pub module: Module,
    pub provenance: Provenance,
    /// Basis of the subspace in the parent, for submodules.
    pub basis: Vec<QVector>,
}

/// A registered morphism `matrix : objects[source] → objects[target]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureMorphism {
    pub source: usize,
    pub target: usize,
    pub matrix: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Largest tensor degree formed from the letters (generators and duals).
    pub depth: usize,
    pub include_duals: bool,
    /// Add images and kernels of every hom-basis element among the base objects.
    pub extract_submodules: bool,
    pub max_objects: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { depth: 2, include_duals: false, extract_submodules: true, max_objects: 64 }
    }
}

impl ClosureOptions {
    pub fn with_depth(depth: usize) -> Self {
        ClosureOptions { depth, ..Default::default() }
    }
}

/// A finite full subcategory: object 0 is always the one-dimensional trivial module.
#[derive(Clone, Debug)]
pub struct CategoryClosure {
    algebra: Arc<LieAlgebra>,
    objects: Vec<ClosureObject>,
    morphisms: Vec<ClosureMorphism>,
    options: ClosureOptions,
}

pub fn build_closure(g: &Arc<LieAlgebra>, generators: &[Module], options: ClosureOptions) -> Result<CategoryClosure> {
    CategoryClosure::build(g, generators, options)
}

impl CategoryClosure {
    pub fn build(g: &Arc<LieAlgebra>, generators: &[Module], options: ClosureOptions) -> Result<CategoryClosure> {
        let mut b = Builder { objects: Vec::new(), ids: HashSet::new(), cap: options.max_objects };
        b.push(Module::trivial(g.clone(), 1), Provenance::Trivial, Vec::new())?;
        let mut letters = Vec::new();
        for (index, m) in generators.iter().enumerate() {
            if !Arc::ptr_eq(m.algebra(), g) && **m.algebra() != **g {
                return Err(Error::ParentMismatch);
            }
            letters.push(b.push(m.clone(), Provenance::Generator { index }, Vec::new())?);
        }
        if options.include_duals {
            for k in 0..letters.len() {
                let of = letters[k];
                let dual = b.objects[of].module.dual();
                letters.push(b.push(dual, Provenance::Dual { of }, Vec::new())?);
            }
        }
        // Left-nested tensor words with non-decreasing letters.
        let mut frontier: Vec<(usize, usize)> = letters.iter().enumerate().map(|(pos, &o)| (o, pos)).collect();
        for _ in 2..=options.depth {
            let mut next = Vec::new();
            for &(obj, last) in &frontier {
                for (pos, &letter) in letters.iter().enumerate().skip(last) {
                    let m = b.objects[obj].module.tensor(&b.objects[letter].module)?;
                    let o = b.push(m, Provenance::Tensor { left: obj, right: letter }, Vec::new())?;
                    next.push((o, pos));
                }
            }
            frontier = next;
        }
        if options.extract_submodules {
            let base = b.objects.len();
            let mut seen: HashSet<(usize, Subspace)> = HashSet::new();
            for s in 0..base {
                for t in 0..base {
                    for phi in hom_space(&b.objects[s].module, &b.objects[t].module)? {
                        let image = Subspace::span(phi.nrows(), phi.column_space());
                        let kernel = Subspace::span(phi.ncols(), phi.kernel_basis());
                        for (parent, sub) in [(t, image), (s, kernel)] {
                            if sub.is_zero() || sub.is_full() || !seen.insert((parent, sub.clone())) {
                                continue;
                            }
                            let basis = sub.basis();
                            let m = &b.objects[parent].module;
                            let id = format!("{}[{}]", m.id(), basis.len());
                            let restricted = m.restrict_to(basis.clone(), id)?;
                            b.push(restricted.module, Provenance::Submodule { parent }, basis)?;
                        }
                    }
                }
            }
        }
        let objects = b.objects;
        let mut morphisms = Vec::new();
        for s in 0..objects.len() {
            for t in 0..objects.len() {
                for matrix in hom_space(&objects[s].module, &objects[t].module)? {
                    morphisms.push(ClosureMorphism { source: s, target: t, matrix });
                }
            }
        }
        Ok(CategoryClosure { algebra: g.clone(), objects, morphisms, options })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn objects(&self) -> &[ClosureObject] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Module {
        &self.objects[i].module
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn morphisms(&self) -> &[ClosureMorphism] {
        &self.morphisms
    }

    pub fn options(&self) -> &ClosureOptions {
        &self.options
    }

    pub fn depth(&self) -> usize {
        self.options.depth
    }

    pub fn ids(&self) -> Vec<String> {
        self.objects.iter().map(|o| o.module.id().to_string()).collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.module.id() == id)
    }

    /// Objects that are generators or their duals: the free letters of the closure.
    pub fn letter_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| matches!(self.objects[i].provenance, Provenance::Generator { .. } | Provenance::Dual { .. }))
            .collect()
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| matches!(self.objects[i].provenance, Provenance::Generator { .. })).collect()
    }

    /// `(object, left, right)` for every recorded tensor product.
    pub fn tensor_triples(&self) -> Vec<(usize, usize, usize)> {
        self.objects
            .iter()
            .enumerate()
            .filter_map(|(i, o)| match o.provenance {
                Provenance::Tensor { left, right } => Some((i, left, right)),
                _ => None,
            })
            .collect()
    }

    /// Objects whose action is not identically zero.
    pub fn nontrivial_count(&self) -> usize {
        self.objects.iter().filter(|o| !o.module.is_trivial_action()).count()
    }

    /// `(ρ_V(x))_V`.
    pub fn lie_family(&self, x: &[Rational]) -> Result<NatFamily> {
        if x.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch { expected: self.algebra.dim(), found: x.len() });
        }
        Ok(NatFamily::from_closure(self, |_, m| m.act(x)))
    }
}

struct Builder {
    objects: Vec<ClosureObject>,
    ids: HashSet<String>,
    cap: usize,
}

impl Builder {
    fn push(&mut self, module: Module, provenance: Provenance, basis: Vec<QVector>) -> Result<usize> {
        if self.objects.len() >= self.cap {
            return Err(Error::ObjectCap { cap: self.cap });
        }
        let mut id = module.id().to_string();
        let mut n = 2;
        while self.ids.contains(&id) {
            id = format!("{}#{n}", module.id());
            n += 1;
        }
        self.ids.insert(id.clone());
        let module = module.with_id(id);
        self.objects.push(ClosureObject { module, provenance, basis });
        Ok(self.objects.len() - 1)
    }
}

/// One square matrix per closure object, in closure order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatFamily {
    ids: Vec<String>,
    entries: Vec<QMatrix>,
}

impl NatFamily {
    pub fn new(ids: Vec<String>, entries: Vec<QMatrix>) -> Result<Self> {
        if ids.len() != entries.len() {
            return Err(Error::FamilyShape { expected: ids.len(), found: entries.len() });
        }
        for m in &entries {
            m.require_square()?;
        }
        Ok(NatFamily { ids, entries })
    }

    pub fn for_closure(c: &CategoryClosure, entries: Vec<QMatrix>) -> Result<Self> {
        if entries.len() != c.len() {
            return Err(Error::FamilyShape { expected: c.len(), found: entries.len() });
        }
        for (i, m) in entries.iter().enumerate() {
            let d = c.object(i).dim();
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, found: m.nrows() });
            }
        }
        NatFamily::new(c.ids(), entries)
    }

    pub fn from_closure(c: &CategoryClosure, mut f: impl FnMut(usize, &Module) -> QMatrix) -> Self {
        let entries = (0..c.len()).map(|i| f(i, c.object(i))).collect();
        NatFamily { ids: c.ids(), entries }
    }

    pub fn identity(c: &CategoryClosure) -> Self {
        NatFamily::from_closure(c, |_, m| QMatrix::identity(m.dim()))
    }

    pub fn zero(c: &CategoryClosure) -> Self {
        NatFamily::from_closure(c, |_, m| QMatrix::zeros(m.dim(), m.dim()))
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn entries(&self) -> &[QMatrix] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &QMatrix {
        &self.entries[i]
    }

    pub fn get(&self, id: &str) -> Option<&QMatrix> {
        self.ids.iter().position(|x| x == id).map(|i| &self.entries[i])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn zip_with(&self, other: &NatFamily, f: impl Fn(&QMatrix, &QMatrix) -> QMatrix) -> Result<NatFamily> {
        if self.ids != other.ids {
            return Err(Error::FamilyShape { expected: self.len(), found: other.len() });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(NatFamily { ids: self.ids.clone(), entries })
    }

    /// Objectwise product `self_V · other_V`.
    pub fn compose(&self, other: &NatFamily) -> Result<NatFamily> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &NatFamily) -> Result<NatFamily> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn commutator(&self, other: &NatFamily) -> Result<NatFamily> {
        self.zip_with(other, |a, b| a.commutator(b))
    }

    pub fn scale(&self, c: &Rational) -> NatFamily {
        NatFamily { ids: self.ids.clone(), entries: self.entries.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn map(&self, f: impl Fn(&QMatrix) -> QMatrix) -> NatFamily {
        NatFamily { ids: self.ids.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn inverse(&self) -> Option<NatFamily> {
        let entries = self.entries.iter().map(QMatrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(NatFamily { ids: self.ids.clone(), entries })
    }

    /// `m · self · m⁻¹` objectwise.
    pub fn conjugate_by(&self, m: &NatFamily) -> Option<NatFamily> {
        let inv = m.inverse()?;
        m.compose(self).and_then(|p| p.compose(&inv)).ok()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(QMatrix::is_identity)
    }

    /// All entries concatenated, for span computations.
    pub fn flatten(&self) -> QVector {
        self.entries.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn flatten_at(&self, objects: &[usize]) -> QVector {
        objects.iter().flat_map(|&i| self.entries[i].entries().iter().cloned()).collect()
    }
}

impl Serialize for NatFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sorted: BTreeMap<&String, &QMatrix> = self.ids.iter().zip(&self.entries).collect();
        let mut map = s.serialize_map(Some(sorted.len()))?;
        for (k, v) in sorted {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Span of families as a subspace of the flattened coordinates.
pub fn family_span(families: &[NatFamily]) -> Option<Subspace> {
    let n = families.first()?.flatten().len();
    Some(Subspace::span(n, families.iter().map(NatFamily::flatten)))
}

pub fn in_span(basis: &[NatFamily], cand: &NatFamily) -> bool {
    match family_span(basis) {
        Some(s) => s.contains(&cand.flatten()),
        None => cand.entries.iter().all(QMatrix::is_zero),
    }
}

// ---------------------------------------------------------------------------
// Lie(M)

/// Matrix depending linearly on the unknowns: `Σ u_k · terms[k]`.
#[derive(Clone)]
struct LinMat {
    rows: usize,
    cols: usize,
    terms: BTreeMap<usize, QMatrix>,
}

impl LinMat {
    fn zero(rows: usize, cols: usize) -> Self {
        LinMat { rows, cols, terms: BTreeMap::new() }
    }

    fn accumulate(&mut self, k: usize, m: QMatrix) {
        if m.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = &*x + &m;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, m);
            }
        }
    }

    fn eval(&self, u: &[Rational]) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for (&k, m) in &self.terms {
            if !u[k].is_zero() {
                out = &out + &m.scale(&u[k]);
            }
        }
        out
    }
}

/// Expresses every object's unknown matrix through the free letters: tensor
/// objects by the derivation rule, submodules by restriction, the unit by zero.
fn symbolic_families(c: &CategoryClosure) -> (usize, Vec<LinMat>) {
    let mut nvars = 0;
    let mut sym: Vec<LinMat> = Vec::with_capacity(c.len());
    for obj in &c.objects {
        let d = obj.module.dim();
        let lm = match &obj.provenance {
            Provenance::Trivial => LinMat::zero(d, d),
            Provenance::Generator { .. } | Provenance::Dual { .. } => {
                let mut lm = LinMat::zero(d, d);
                for p in 0..d {
                    for q in 0..d {
                        let mut e = QMatrix::zeros(d, d);
                        e[(p, q)] = Rational::one();
                        lm.terms.insert(nvars, e);
                        nvars += 1;
                    }
                }
                lm
            }
            Provenance::Tensor { left, right } => {
                let (a, b) = (&sym[*left], &sym[*right]);
                let (ia, ib) = (QMatrix::identity(a.rows), QMatrix::identity(b.rows));
                let mut lm = LinMat::zero(d, d);
                for (&k, m) in &a.terms {
                    lm.accumulate(k, m.kron(&ib));
                }
                for (&k, m) in &b.terms {
                    lm.accumulate(k, ia.kron(m));
                }
                lm
            }
            Provenance::Submodule { parent } => {
                let iota = QMatrix::from_columns(c.object(*parent).dim(), &obj.basis);
                let gram = &iota.transpose() * &iota;
                let left = &gram.inverse().expect("independent basis") * &iota.transpose();
                let mut lm = LinMat::zero(d, d);
                for (&k, m) in &sym[*parent].terms {
                    lm.accumulate(k, &(&left * m) * &iota);
                }
                lm
            }
        };
        sym.push(lm);
    }
    (nvars, sym)
}

/// Basis of the solution space of the Lie(M) system on the closure:
/// naturality with every registered morphism, the derivation rule on every
/// recorded tensor pair, and zero on the trivial object.
pub fn lie_m_solve(c: &CategoryClosure) -> Vec<NatFamily> {
    let (nvars, sym) = symbolic_families(c);
    let mut ech = RowEchelon::new(nvars);
    for mor in &c.morphisms {
        let (a, b) = (&sym[mor.source], &sym[mor.target]);
        let keys: std::collections::BTreeSet<usize> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        let (rows, cols) = (mor.matrix.nrows(), mor.matrix.ncols());
        let mut eqs = vec![zero_vec(nvars); rows * cols];
        for k in keys {
            let mut block = QMatrix::zeros(rows, cols);
            if let Some(x) = a.terms.get(&k) {
                block = &mor.matrix * x;
            }
            if let Some(y) = b.terms.get(&k) {
                block = &block - &(y * &mor.matrix);
            }
            for (pos, v) in block.entries().iter().enumerate() {
                if !v.is_zero() {
                    eqs[pos][k] = v.clone();
                }
            }
        }
        for eq in eqs {
            if eq.iter().any(|x| !x.is_zero()) {
                ech.insert(eq);
            }
        }
    }
    ech.kernel_basis()
        .into_iter()
        .map(|u| NatFamily { ids: c.ids(), entries: sym.iter().map(|lm| lm.eval(&u)).collect() })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LieMReport {
    pub depth: usize,
    pub lie_m_dim: usize,
    pub previous_dim: usize,
    /// The solution space restricted to the letters is unchanged from `depth − 1`.
    pub stabilized: bool,
    pub basis: Vec<NatFamily>,
}

/// Solves at `depth` and `depth − 1` and compares the solution spaces on the letters.
pub fn lie_m_report(g: &Arc<LieAlgebra>, generators: &[Module], options: ClosureOptions) -> Result<(CategoryClosure, LieMReport)> {
    let closure = build_closure(g, generators, options.clone())?;
    let prev_opts = ClosureOptions { depth: options.depth.saturating_sub(1).max(1), ..options.clone() };
    let previous = if prev_opts.depth == options.depth { closure.clone() } else { build_closure(g, generators, prev_opts)? };
    let basis = lie_m_solve(&closure);
    let prev_basis = lie_m_solve(&previous);
    let letters = closure.letter_indices();
    let width: usize = letters.iter().map(|&i| closure.object(i).dim().pow(2)).sum();
    let project = |fams: &[NatFamily]| Subspace::span(width, fams.iter().map(|f| f.flatten_at(&letters)));
    let stabilized = project(&basis) == project(&prev_basis);
    let report = LieMReport {
        depth: options.depth,
        lie_m_dim: basis.len(),
        previous_dim: prev_basis.len(),
        stabilized,
        basis,
    };
    Ok((closure, report))
}

/// A failed identity, with enough provenance to locate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Shape { object: String },
    Unit { object: String },
    Tensor { object: String, left: String, right: String },
    Naturality { source: String, target: String, morphism: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { object } => write!(f, "wrong shape on {object}"),
            Violation::Unit { object } => write!(f, "not the identity on trivial object {object}"),
            Violation::Tensor { object, left, right } => write!(f, "tensor rule fails on {object} = {left} ⊗ {right}"),
            Violation::Naturality { source, target, morphism } => {
                write!(f, "not natural for morphism #{morphism} {source} → {target}")
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub certified: bool,
    pub violations: Vec<Violation>,
}

const MAX_VIOLATIONS: usize = 8;

enum Rule {
    Monoid,
    Lie,
}

fn check_family(c: &CategoryClosure, cand: &NatFamily, rule: Rule) -> MembershipReport {
    let ids = c.ids();
    let mut violations = Vec::new();
    let shape_ok = cand.len() == c.len()
        && cand.entries.iter().enumerate().all(|(i, m)| m.nrows() == c.object(i).dim() && m.ncols() == c.object(i).dim());
    if !shape_ok {
        let object = (0..c.len())
            .find(|&i| cand.entries.get(i).is_none_or(|m| m.nrows() != c.object(i).dim() || !m.is_square()))
            .map_or_else(|| "?".to_string(), |i| ids[i].clone());
        return MembershipReport { certified: false, violations: vec![Violation::Shape { object }] };
    }
    let unit_ok = match rule {
        Rule::Monoid => cand.entries[0].is_identity(),
        Rule::Lie => cand.entries[0].is_zero(),
    };
    if !unit_ok {
        violations.push(Violation::Unit { object: ids[0].clone() });
    }
    for (o, l, r) in c.tensor_triples() {
        let (a, b) = (&cand.entries[l], &cand.entries[r]);
        let expected = match rule {
            Rule::Monoid => a.kron(b),
            Rule::Lie => a.kron_sum(b),
        };
        if expected != cand.entries[o] {
            violations.push(Violation::Tensor { object: ids[o].clone(), left: ids[l].clone(), right: ids[r].clone() });
        }
    }
    for (k, mor) in c.morphisms.iter().enumerate() {
        if violations.len() >= MAX_VIOLATIONS {
            break;
        }
        if &mor.matrix * &cand.entries[mor.source] != &cand.entries[mor.target] * &mor.matrix {
            violations.push(Violation::Naturality {
                source: ids[mor.source].clone(),
                target: ids[mor.target].clone(),
                morphism: k,
            });
        }
    }
    violations.truncate(MAX_VIOLATIONS);
    MembershipReport { certified: violations.is_empty(), violations }
}

/// Checks `m_{V⊗W} = m_V ⊗ m_W`, identity on the trivial object, and naturality.
pub fn m_membership(c: &CategoryClosure, cand: &NatFamily) -> MembershipReport {
    check_family(c, cand, Rule::Monoid)
}

/// Checks the Lie(M) identities directly on a family.
pub fn lie_membership(c: &CategoryClosure, cand: &NatFamily) -> MembershipReport {
    check_family(c, cand, Rule::Lie)
}

/// Only the naturality squares.
pub fn naturality_violations(c: &CategoryClosure, cand: &NatFamily) -> Vec<Violation> {
    let ids = c.ids();
    c.morphisms
        .iter()
        .enumerate()
        .filter(|(_, mor)| &mor.matrix * &cand.entries[mor.source] != &cand.entries[mor.target] * &mor.matrix)
        .map(|(k, mor)| Violation::Naturality {
            source: ids[mor.source].clone(),
            target: ids[mor.target].clone(),
            morphism: k,
        })
        .collect()
}

/// True iff `cand` commutes with every basis family on every object.
pub fn is_central(lie_basis: &[NatFamily], cand: &NatFamily) -> bool {
    lie_basis.iter().all(|x| x.commutator(cand).is_ok_and(|z| z.entries.iter().all(QMatrix::is_zero)))
}

// ---------------------------------------------------------------------------
// Evaluation functionals

/// A linear functional on the span of matrix coefficients, given by its values
/// `α(f_{eᵢ* eⱼ})` on every object, stored as one matrix per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationFunctional {
    values: Vec<QMatrix>,
}

/// `α(f_{φv}) = value` on object `object`.
#[derive(Clone, Debug)]
pub struct CoefficientSample {
    pub object: usize,
    pub phi: QVector,
    pub v: QVector,
    pub value: Rational,
}

impl EvaluationFunctional {
    pub fn new(values: Vec<QMatrix>) -> Self {
        EvaluationFunctional { values }
    }

    /// `f ↦ f(m)`.
    pub fn of_family(m: &NatFamily) -> Self {
        EvaluationFunctional { values: m.entries.clone() }
    }

    /// Solves for the functional from values on spanning coefficients of each object.
    pub fn from_samples(c: &CategoryClosure, samples: &[CoefficientSample]) -> Result<Self> {
        let mut values = Vec::with_capacity(c.len());
        for o in 0..c.len() {
            let d = c.object(o).dim();
            let n = d * d;
            // unknown X (row-major), equation φᵀ X v = value, augmented column last.
            let mut ech = RowEchelon::new(n + 1);
            for s in samples.iter().filter(|s| s.object == o) {
                if s.phi.len() != d || s.v.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: s.phi.len().max(s.v.len()) });
                }
                let mut row = zero_vec(n + 1);
                for p in 0..d {
                    for q in 0..d {
                        row[p * d + q] = &s.phi[p] * &s.v[q];
                    }
                }
                row[n] = -s.value.clone();
                ech.insert(row);
            }
            if ech.pivots().contains(&n) {
                return Err(Error::InconsistentFunctional(format!("linear relations fail on {}", c.object(o).id())));
            }
            if ech.rank() < n {
                return Err(Error::InconsistentFunctional(format!(
                    "samples do not span the coefficients of {}",
                    c.object(o).id()
                )));
            }
            let mut x = zero_vec(n);
            for (pivot, row) in ech.pivots().into_iter().zip(ech.rows()) {
                x[pivot] = -row[n].clone();
            }
            values.push(QMatrix::from_row_major(d, d, x)?);
        }
        Ok(EvaluationFunctional { values })
    }

    pub fn values(&self) -> &[QMatrix] {
        &self.values
    }

    pub fn evaluate(&self, object: usize, phi: &[Rational], v: &[Rational]) -> Rational {
        dot(phi, &self.values[object].mul_vec(v))
    }
}

/// Reconstructs `α_V eⱼ = Σᵢ α(f_{eᵢ* eⱼ}) eᵢ` and certifies the result; a
/// functional that is not multiplicative is rejected with its witness.
pub fn specm_point_to_nat(c: &CategoryClosure, alpha: &EvaluationFunctional) -> Result<NatFamily> {
    let fam = NatFamily::for_closure(c, alpha.values.clone())?;
    let report = m_membership(c, &fam);
    if report.certified {
        Ok(fam)
    } else {
        Err(Error::InconsistentFunctional(report.violations[0].to_string()))
    }
}

// ---------------------------------------------------------------------------
// Peter–Weyl

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeterWeylReport {
    pub expected_dim: usize,
    pub achieved_rank: usize,
    pub previous_rank: usize,
    pub degree: u32,
    pub stabilized: bool,
    pub success: bool,
}

fn coefficient_rank(irreducibles: &[Module], d: u32) -> usize {
    let nvars = irreducibles.first().map_or(0, |m| m.action().len());
    let monomials = MultiIndex::all_up_to(nvars, d);
    let mut ech = RowEchelon::new(monomials.len());
    let ops: Vec<BTreeMap<MultiIndex, QMatrix>> = irreducibles.iter().map(|m| pbw_operators(m, d)).collect();
    for (m, op) in irreducibles.iter().zip(&ops) {
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                ech.insert(monomials.iter().map(|e| op[e][(i, j)].clone()).collect());
            }
        }
    }
    ech.rank()
}

/// Rank of the evaluation matrix of all coefficients `f_{eᵢ* eⱼ}` on PBW
/// monomials of degree ≤ d against `Σ dim(V)²/dim End(V)`.
pub fn peter_weyl_check(irreducibles: &[Module], d: u32) -> Result<PeterWeylReport> {
    let mut expected = 0;
    for (k, m) in irreducibles.iter().enumerate() {
        let cert = m.irreducibility();
        if !cert.is_absolutely_irreducible() {
            return Err(Error::NotIrreducible(m.id().to_string()));
        }
        expected += m.dim() * m.dim() / cert.commutant_dim;
        for other in &irreducibles[..k] {
            if !hom_space(other, m)?.is_empty() {
                return Err(Error::IsomorphicInputs(other.id().to_string(), m.id().to_string()));
            }
        }
    }
    let achieved = coefficient_rank(irreducibles, d);
    let previous = if d == 0 { achieved } else { coefficient_rank(irreducibles, d - 1) };
    let stabilized = previous == achieved;
    Ok(PeterWeylReport {
        expected_dim: expected,
        achieved_rank: achieved,
        previous_rank: previous,
        degree: d,
        stabilized,
        success: stabilized && achieved == expected,
    })
}

// ---------------------------------------------------------------------------
// Isotypic reassembly

/// Columns of an isomorphism `⊕ L^{mult} → V` built from hom bases, with the
/// irreducible index of each block.
fn isotypic_splitting(c: &CategoryClosure, irreducibles: &[usize], v: usize) -> Result<(QMatrix, Vec<usize>)> {
    let target = c.object(v);
    let mut ech = RowEchelon::new(target.dim());
    let mut cols: Vec<QVector> = Vec::new();
    let mut blocks = Vec::new();
    for (k, &l) in irreducibles.iter().enumerate() {
        for phi in hom_space(c.object(l), target)? {
            let images = phi.columns();
            let mut trial = ech.clone();
            if images.iter().all(|x| trial.insert(x.clone())) {
                ech = trial;
                cols.extend(images);
                blocks.push(k);
            }
        }
    }
    if cols.len() != target.dim() {
        return Err(Error::NotIsotypic(target.id().to_string()));
    }
    Ok((QMatrix::from_columns(target.dim(), &cols), blocks))
}

/// Assembles `n_V = α_V (⊕ n_L) α_V⁻¹` from one matrix per irreducible object.
pub fn nat_from_irr_components(c: &CategoryClosure, irreducibles: &[usize], components: &[QMatrix]) -> Result<NatFamily> {
    if irreducibles.len() != components.len() {
        return Err(Error::FamilyShape { expected: irreducibles.len(), found: components.len() });
    }
    for (k, (&l, n)) in irreducibles.iter().zip(components).enumerate() {
        let module = c.object(l);
        if n.nrows() != module.dim() || !n.is_square() {
            return Err(Error::DimensionMismatch { expected: module.dim(), found: n.nrows() });
        }
        if module.endomorphisms().iter().any(|s| &(s * n) != &(n * s)) {
            return Err(Error::CommutantViolation(module.id().to_string()));
        }
        if !module.is_absolutely_irreducible() {
            return Err(Error::NotIrreducible(module.id().to_string()));
        }
        for &l2 in &irreducibles[..k] {
            if !hom_space(c.object(l2), module)?.is_empty() {
                return Err(Error::IsomorphicInputs(c.object(l2).id().to_string(), module.id().to_string()));
            }
        }
    }
    let mut entries = Vec::with_capacity(c.len());
    for v in 0..c.len() {
        let (alpha, blocks) = isotypic_splitting(c, irreducibles, v)?;
        let parts: Vec<&QMatrix> = blocks.iter().map(|&k| &components[k]).collect();
        let inner = QMatrix::block_diag(&parts);
        let inv = alpha.inverse().expect("splitting is an isomorphism");
        entries.push(&(&alpha * &inner) * &inv);
    }
    NatFamily::for_closure(c, entries)
}

/// Restriction of a family to the listed irreducible objects.
pub fn irr_components(family: &NatFamily, irreducibles: &[usize]) -> Vec<QMatrix> {
    irreducibles.iter().map(|&l| family.entries[l].clone()).collect()
}
