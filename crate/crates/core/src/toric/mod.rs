//! Weight decompositions under an abelian subalgebra, the weight monoid `A`,
//! its faces, and points of `Ã = Hom(A, (ℚ,·))` given by their values on the
//! generators of `A`.

pub mod lattice;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::rational::{common_denominator, dot, pow_i64};
use crate::exactlin::{eigenspaces, int, QMatrix, QVector, Rational, RowEchelon, Subspace};
use crate::liealg::Subalgebra;
use crate::repn::Module;
use crate::tannaka::{CategoryClosure, NatFamily};
use lattice::{column_echelon, columns_to_rows, diagonalize, to_big, ColumnEchelon, IntVec};

/// Simultaneous eigenspaces of an abelian subalgebra, sorted by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub module: String,
    pub weights: Vec<(QVector, Subspace)>,
}

impl WeightDecomposition {
    pub fn weight_set(&self) -> BTreeSet<QVector> {
        self.weights.iter().map(|(w, _)| w.clone()).collect()
    }
}

pub fn weight_decomposition(v: &Module, h: &Subalgebra) -> Result<WeightDecomposition> {
    let actors: Vec<QMatrix> = h.basis().iter().map(|x| v.act(x)).collect();
    for (i, a) in actors.iter().enumerate() {
        for b in &actors[i + 1..] {
            if !a.commutator(b).is_zero() {
                return Err(Error::NonCommuting);
            }
        }
    }
    let d = v.dim();
    let mut blocks: Vec<(QVector, Subspace)> = vec![(Vec::new(), Subspace::full(d))];
    for a in &actors {
        let mut next = Vec::new();
        for (w, space) in blocks {
            let basis = space.basis();
            let cols: Vec<QVector> = basis
                .iter()
                .map(|b| space.coordinates(&a.mul_vec(b)).expect("commuting actions preserve eigenspaces"))
                .collect();
            let restricted = QMatrix::from_columns(basis.len(), &cols);
            let spaces = eigenspaces(&restricted).map_err(|_| Error::NotDiagonalizable(v.id().to_string()))?;
            for (lambda, esp) in spaces {
                let vecs = esp.basis().into_iter().map(|c| {
                    let mut out = vec![Rational::zero(); d];
                    for (ci, b) in c.iter().zip(&basis) {
                        crate::exactlin::rational::axpy(&mut out, ci, b);
                    }
                    out
                });
                let mut w2 = w.clone();
                w2.push(lambda);
                next.push((w2, Subspace::span(d, vecs)));
            }
        }
        blocks = next;
    }
    blocks.retain(|(_, s)| !s.is_zero());
    blocks.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(WeightDecomposition { module: v.id().to_string(), weights: blocks })
}

/// Finitely generated submonoid of `ℤ^rank`; weights are the actual weights
/// times `denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMonoid {
    pub rank: usize,
    pub denominator: i64,
    pub generators: Vec<Vec<i64>>,
    /// Basis of the lattice of integer relations `Σ zⱼ gⱼ = 0`.
    pub relations: Vec<Vec<i64>>,
}

fn big_to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Unsupported("integer overflow in lattice computation".into()))
}

impl WeightMonoid {
    /// Zero and repeated generators are dropped; the rest are sorted.
    pub fn new(rank: usize, denominator: i64, generators: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for g in generators {
            if g.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: g.len() });
            }
            if g.iter().any(|&x| x != 0) {
                set.insert(g);
            }
        }
        let generators: Vec<Vec<i64>> = set.into_iter().collect();
        let mut m = WeightMonoid { rank, denominator, generators, relations: Vec::new() };
        m.relations = m
            .echelon()
            .kernel_basis()
            .iter()
            .map(|z| z.iter().map(big_to_i64).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn echelon_of(&self, subset: &[usize]) -> ColumnEchelon {
        let cols: Vec<IntVec> = subset.iter().map(|&j| to_big(&self.generators[j])).collect();
        column_echelon(&columns_to_rows(&cols, self.rank), cols.len())
    }

    fn echelon(&self) -> ColumnEchelon {
        self.echelon_of(&(0..self.len()).collect::<Vec<_>>())
    }

    fn rational_generator(&self, j: usize) -> QVector {
        self.generators[j].iter().map(|&x| int(x)).collect()
    }

    /// Rank of the generated lattice.
    pub fn lattice_rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Whether `λ` lies in the generated lattice and in the cone (the saturation of `A`).
    pub fn in_saturation(&self, lambda: &[i64], faces: &FaceLattice) -> bool {
        if self.echelon().solve(&to_big(lambda)).is_err() {
            return false;
        }
        let l: QVector = lambda.iter().map(|&x| int(x)).collect();
        faces.facets.iter().all(|f| !dot(&faces.faces[*f].certificate, &l).is_negative())
    }
}

/// Weight monoid generated by the weights of the generator objects (and
/// duals) of a closure; tensor objects are checked for `P(V⊗W) = P(V)+P(W)`.
pub fn weight_monoid(c: &CategoryClosure, h: &Subalgebra) -> Result<WeightMonoid> {
    let decs: Vec<WeightDecomposition> =
        (0..c.len()).map(|i| weight_decomposition(c.object(i), h)).collect::<Result<_>>()?;
    for (o, l, r) in c.tensor_triples() {
        let sums: BTreeSet<QVector> = decs[l]
            .weight_set()
            .iter()
            .flat_map(|a| decs[r].weight_set().into_iter().map(move |b| a.iter().zip(&b).map(|(x, y)| x + y).collect()))
            .collect();
        if sums != decs[o].weight_set() {
            return Err(Error::Unsupported(format!("weights of {} are not additive", c.object(o).id())));
        }
    }
    let letters = c.letter_indices();
    let weights: Vec<QVector> = letters.iter().flat_map(|&i| decs[i].weight_set()).collect();
    let den = common_denominator(weights.iter().flatten());
    let denominator = big_to_i64(&den)?;
    let scale = Rational::from_integer(den);
    let gens = weights
        .iter()
        .map(|w| w.iter().map(|x| big_to_i64(&(x * &scale).to_integer())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    WeightMonoid::new(h.dim(), denominator, gens)
}

/// A face, by the generators it contains, with a functional `ℓ` that vanishes
/// on exactly those generators and is positive on the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub generators: Vec<usize>,
    #[serde(with = "crate::exactlin::rational::serde_qvector")]
    pub certificate: QVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceLattice {
    /// Sorted by size, then lexicographically; the last face is the whole monoid.
    pub faces: Vec<Face>,
    /// Indices of the facets in `faces`.
    pub facets: Vec<usize>,
}

pub const DEFAULT_GENERATOR_CAP: usize = 12;
pub const MAX_RANK: usize = 4;

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Face lattice of the cone over the generators: facets come from hyperplanes
/// through `rank − 1` independent generators with all generators on one side;
/// every other proper face is an intersection of facets.
pub fn faces(a: &WeightMonoid, cap: usize) -> Result<FaceLattice> {
    if a.len() > cap {
        return Err(Error::CapExceeded { cap, found: a.len() });
    }
    if a.rank > MAX_RANK {
        return Err(Error::CapExceeded { cap: MAX_RANK, found: a.rank });
    }
    let q = a.len();
    let gens: Vec<QVector> = (0..q).map(|j| a.rational_generator(j)).collect();
    let k = RowEchelon::from_rows(a.rank, gens.clone()).rank();
    let mut facets: Vec<(Vec<usize>, QVector)> = Vec::new();
    if k > 0 {
        for s in subsets_of_size(q, k - 1) {
            let ech = RowEchelon::from_rows(a.rank, s.iter().map(|&j| gens[j].clone()));
            if ech.rank() != k - 1 {
                continue;
            }
            let Some(mut ell) = ech.kernel_basis().into_iter().find(|l| gens.iter().any(|g| !dot(l, g).is_zero())) else {
                continue;
            };
            let vals: Vec<Rational> = gens.iter().map(|g| dot(&ell, g)).collect();
            if vals.iter().all(|v| !v.is_positive()) {
                ell = ell.iter().map(|x| -x).collect();
            } else if !vals.iter().all(|v| !v.is_negative()) {
                continue;
            }
            let zero: Vec<usize> = (0..q).filter(|&j| vals[j].is_zero()).collect();
            if !facets.iter().any(|(z, _)| *z == zero) {
                facets.push((zero, ell));
            }
        }
    }
    let mut sets: BTreeSet<Vec<usize>> = facets.iter().map(|(z, _)| z.clone()).collect();
    loop {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let mut grew = false;
        for (i, x) in current.iter().enumerate() {
            for y in &current[i + 1..] {
                let meet: Vec<usize> = x.iter().filter(|j| y.contains(j)).copied().collect();
                grew |= sets.insert(meet);
            }
        }
        if !grew {
            break;
        }
    }
    sets.insert((0..q).collect());
    let mut ordered: Vec<Vec<usize>> = sets.into_iter().collect();
    ordered.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let faces: Vec<Face> = ordered
        .iter()
        .map(|f| {
            let mut ell = vec![Rational::zero(); a.rank];
            for (z, l) in &facets {
                if f.iter().all(|j| z.contains(j)) {
                    ell = ell.iter().zip(l).map(|(x, y)| x + y).collect();
                }
            }
            Face { generators: f.clone(), certificate: ell }
        })
        .collect();
    let facet_idx = facets.iter().map(|(z, _)| ordered.iter().position(|f| f == z).expect("listed")).collect();
    Ok(FaceLattice { faces, facets: facet_idx })
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn full(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn index_of(&self, generators: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f.generators == generators)
    }

    /// `faces[i] ⊆ faces[j]`.
    pub fn is_subface(&self, i: usize, j: usize) -> bool {
        self.faces[i].generators.iter().all(|g| self.faces[j].generators.contains(g))
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m: Vec<usize> =
            self.faces[i].generators.iter().filter(|g| self.faces[j].generators.contains(g)).copied().collect();
        self.index_of(&m).expect("faces are closed under intersection")
    }

    /// Smallest face containing the given generators.
    pub fn minimal_face_containing(&self, generators: &[usize]) -> usize {
        (0..self.len())
            .find(|&i| generators.iter().all(|g| self.faces[i].generators.contains(g)))
            .expect("the whole monoid is a face")
    }

    /// Pairs `(i, j)` with `faces[i] ⊊ faces[j]`.
    pub fn order(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.is_subface(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A point of `Ã`: one value per generator of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtildePoint {
    #[serde(with = "crate::exactlin::rational::serde_qvector")]
    pub values: QVector,
}

impl AtildePoint {
    pub fn new(values: QVector) -> Self {
        AtildePoint { values }
    }

    pub fn unit(a: &WeightMonoid) -> Self {
        AtildePoint { values: vec![Rational::one(); a.len()] }
    }

    /// Pointwise product.
    pub fn multiply(&self, other: &AtildePoint) -> AtildePoint {
        AtildePoint { values: self.values.iter().zip(&other.values).map(|(x, y)| x * y).collect() }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&j| !self.values[j].is_zero()).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.multiply(self) == *self
    }

    /// Checks that the support is a face and that the values respect every
    /// integer relation among the support generators; returns the face index.
    pub fn validate(&self, a: &WeightMonoid, lat: &FaceLattice) -> Result<usize> {
        if self.values.len() != a.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), found: self.values.len() });
        }
        let support = self.support();
        let face = lat
            .index_of(&support)
            .ok_or_else(|| Error::RelationInconsistency(format!("support {support:?} is not a face")))?;
        for z in a.echelon_of(&support).kernel_basis() {
            let mut lhs = Rational::one();
            for (zj, &j) in z.iter().zip(&support) {
                lhs *= pow_i64(&self.values[j], big_to_i64(zj)?);
            }
            if !lhs.is_one() {
                return Err(Error::RelationInconsistency(format!("relation {:?} on support {support:?}", z)));
            }
        }
        Ok(face)
    }

    /// `α(λ)` for a weight `λ` of `A`: the character of the support face at
    /// `λ` when `λ` lies on that face, zero otherwise.
    pub fn evaluate(&self, a: &WeightMonoid, lat: &FaceLattice, lambda: &[i64]) -> Result<Rational> {
        let face = self.validate(a, lat)?;
        if !a.in_saturation(lambda, lat) {
            return Err(Error::WeightNotRepresentable(lambda.to_vec()));
        }
        let l: QVector = lambda.iter().map(|&x| int(x)).collect();
        if !dot(&lat.faces[face].certificate, &l).is_zero() {
            return Ok(Rational::zero());
        }
        let support = &lat.faces[face].generators;
        let z = a.echelon_of(support).solve(&to_big(lambda)).map_err(|_| Error::WeightNotRepresentable(lambda.to_vec()))?;
        let mut out = Rational::one();
        for (zj, &j) in z.iter().zip(support) {
            out *= pow_i64(&self.values[j], big_to_i64(zj)?);
        }
        Ok(out)
    }

    /// `α = t·e(F)` with `t` in the unit group `T(A)`.
    pub fn factor(&self, a: &WeightMonoid, lat: &FaceLattice) -> Result<(AtildePoint, usize)> {
        let face = self.validate(a, lat)?;
        let support = lat.faces[face].generators.clone();
        let all = a.echelon();
        let k = all.rank();
        let coords: Vec<IntVec> = (0..a.len())
            .map(|j| all.solve_basis(&to_big(&a.generators[j])).expect("generators lie in their lattice"))
            .collect();
        let sub: Vec<IntVec> = support.iter().map(|&j| coords[j].clone()).collect();
        let d = diagonalize(&columns_to_rows(&sub, k), sub.len());
        if d.diag.iter().any(|x| !x.abs().is_one()) {
            return Err(Error::Unsupported(format!("face {support:?} does not span a saturated sublattice")));
        }
        // χ on the basis w_i = columns of W⁻¹: w_i = d_i · Σ_j v_ji g_j for i < m, χ = 1 beyond.
        let mut chi = vec![Rational::one(); k];
        for (i, di) in d.diag.iter().enumerate() {
            let mut val = Rational::one();
            for (row, &j) in d.v.iter().zip(&support) {
                val *= pow_i64(&self.values[j], big_to_i64(&row[i])?);
            }
            chi[i] = if di.is_negative() { val.recip() } else { val };
        }
        let w_inv = QMatrix::from_rows(
            d.w_inv.iter().map(|r| r.iter().cloned().map(Rational::from_integer).collect()).collect(),
        )?;
        let w = w_inv.inverse().expect("unimodular");
        let mut values = Vec::with_capacity(a.len());
        for c in &coords {
            let cq: QVector = c.iter().cloned().map(Rational::from_integer).collect();
            let e = w.mul_vec(&cq);
            let mut t = Rational::one();
            for (ei, ci) in e.iter().zip(&chi) {
                let n = ei.to_integer();
                t *= pow_i64(ci, big_to_i64(&n)?);
            }
            values.push(t);
        }
        let t = AtildePoint { values };
        Ok((t, face))
    }
}

/// `e(F)`: one on the generators of `F`, zero elsewhere.
pub fn idempotent_of_face(a: &WeightMonoid, lat: &FaceLattice, face: usize) -> AtildePoint {
    let f = &lat.faces[face].generators;
    AtildePoint { values: (0..a.len()).map(|j| if f.contains(&j) { Rational::one() } else { Rational::zero() }).collect() }
}

/// Point with the given nonzero values on the generators of `F` and zero elsewhere.
pub fn torus_point(a: &WeightMonoid, lat: &FaceLattice, face: usize, unit_values: &[Rational]) -> Result<AtildePoint> {
    let f = &lat.faces[face].generators;
    if unit_values.len() != f.len() {
        return Err(Error::DimensionMismatch { expected: f.len(), found: unit_values.len() });
    }
    if unit_values.iter().any(Zero::is_zero) {
        return Err(Error::RelationInconsistency("torus values must be nonzero".into()));
    }
    let mut values = vec![Rational::zero(); a.len()];
    for (&j, v) in f.iter().zip(unit_values) {
        values[j] = v.clone();
    }
    let p = AtildePoint { values };
    p.validate(a, lat)?;
    Ok(p)
}

/// Values of the character `λ ↦ Π tᵢ^{λᵢ}` on the generators of `F`.
pub fn character_values(a: &WeightMonoid, lat: &FaceLattice, face: usize, t: &[Rational]) -> Vec<Rational> {
    lat.faces[face]
        .generators
        .iter()
        .map(|&j| a.generators[j].iter().zip(t).map(|(&e, ti)| pow_i64(ti, e)).product())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub saturated: bool,
    /// A lattice point of the cone that is not a sum of generators.
    pub witness: Option<Vec<i64>>,
    /// False when the search was bounded rather than complete.
    pub exhaustive: bool,
}

const BOX_LIMIT: u64 = 200_000;

fn representable(a: &WeightMonoid, lambda: &[i64], positive: Option<&QVector>, budget: usize) -> bool {
    fn go(a: &WeightMonoid, j: usize, rem: &mut Vec<i64>, pos: Option<&QVector>, left: usize) -> bool {
        if rem.iter().all(|&x| x == 0) {
            return true;
        }
        if j == a.len() {
            return false;
        }
        let g = &a.generators[j];
        let max = match pos {
            Some(ell) => {
                let r: QVector = rem.iter().map(|&x| int(x)).collect();
                let gq: QVector = g.iter().map(|&x| int(x)).collect();
                let (num, den) = (dot(ell, &r), dot(ell, &gq));
                if num.is_negative() {
                    return false;
                }
                (num / den).floor().to_integer().to_usize().unwrap_or(0)
            }
            None => left,
        };
        for n in 0..=max.min(left) {
            if go(a, j + 1, rem, pos, left - n) {
                for (x, y) in rem.iter_mut().zip(g) {
                    *x += (n as i64) * y;
                }
                return true;
            }
            for (x, y) in rem.iter_mut().zip(g) {
                *x -= y;
            }
        }
        for (x, y) in rem.iter_mut().zip(g) {
            *x += ((max.min(left) + 1) as i64) * y;
        }
        false
    }
    let mut rem = lambda.to_vec();
    go(a, 0, &mut rem, positive, budget)
}

/// Compares `A` with lattice points of its cone inside a box of radius
/// `Σ‖gⱼ‖∞`, which contains every fundamental parallelepiped of a
/// simplicial subcone; exhaustive for pointed cones.
pub fn saturation_check(a: &WeightMonoid, lat: &FaceLattice) -> SaturationReport {
    let bound: i64 = a.generators.iter().map(|g| g.iter().map(|x| x.abs()).max().unwrap_or(0)).sum();
    let side = (2 * bound + 1) as u64;
    let pointed = lat.faces[0].generators.is_empty();
    if side.saturating_pow(a.rank as u32) > BOX_LIMIT {
        return SaturationReport { saturated: true, witness: None, exhaustive: false };
    }
    let positive = pointed.then(|| lat.faces[0].certificate.clone());
    let budget = if pointed { usize::MAX } else { 4 * bound as usize + a.len() };
    let mut point = vec![-bound; a.rank];
    loop {
        if a.in_saturation(&point, lat) && !representable(a, &point, positive.as_ref(), budget) {
            return SaturationReport { saturated: false, witness: Some(point), exhaustive: pointed };
        }
        let mut i = 0;
        while i < a.rank {
            point[i] += 1;
            if point[i] <= bound {
                break;
            }
            point[i] = -bound;
            i += 1;
        }
        if i == a.rank {
            break;
        }
    }
    SaturationReport { saturated: true, witness: None, exhaustive: pointed }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToricReport {
    pub face_count: usize,
    pub idempotent_count: usize,
    pub meet_closed: bool,
    pub idempotent_products: bool,
    pub unit_group: bool,
    pub factorization: bool,
    pub factorization_samples: usize,
    pub principal_open: bool,
    pub principal_open_samples: usize,
    pub saturation: SaturationReport,
}

const SAMPLE_CHARACTERS: [(i64, i64); 4] = [(2, 1), (-3, 1), (1, 2), (5, 3)];

fn sample_character(rank: usize, shift: usize) -> Vec<Rational> {
    (0..rank)
        .map(|i| {
            let (n, d) = SAMPLE_CHARACTERS[(i + shift) % SAMPLE_CHARACTERS.len()];
            crate::exactlin::frac(n, d)
        })
        .collect()
}

/// Structural checks on `Ã`: idempotents are the `e(F)`, `e(F)e(G) = e(F∩G)`,
/// characters are units, points factor as torus·idempotent, and `D(λ)` is
/// the set of points supported on faces containing `λ`.
pub fn toric_structure_report(a: &WeightMonoid, lat: &FaceLattice) -> Result<ToricReport> {
    let n = lat.len();
    let idem: Vec<AtildePoint> = (0..n).map(|i| idempotent_of_face(a, lat, i)).collect();
    let mut idempotent_count = 0;
    for e in &idem {
        if e.is_idempotent() && e.validate(a, lat).is_ok() {
            idempotent_count += 1;
        }
    }
    let mut meet_closed = true;
    let mut idempotent_products = true;
    for i in 0..n {
        for j in 0..n {
            let m: Vec<usize> =
                lat.faces[i].generators.iter().filter(|g| lat.faces[j].generators.contains(g)).copied().collect();
            match lat.index_of(&m) {
                Some(k) => idempotent_products &= idem[i].multiply(&idem[j]) == idem[k],
                None => meet_closed = false,
            }
        }
    }
    let full = lat.full();
    let mut unit_group = true;
    for shift in 0..SAMPLE_CHARACTERS.len() {
        let vals = character_values(a, lat, full, &sample_character(a.rank, shift));
        let t = torus_point(a, lat, full, &vals)?;
        let inv = AtildePoint::new(t.values.iter().map(|v| v.recip()).collect());
        unit_group &= inv.validate(a, lat).is_ok() && t.multiply(&inv) == AtildePoint::unit(a);
    }
    let mut factorization = true;
    let mut factorization_samples = 0;
    let mut points = Vec::new();
    for f in 0..n {
        for shift in 0..2 {
            let vals = character_values(a, lat, f, &sample_character(a.rank, shift));
            let p = torus_point(a, lat, f, &vals)?;
            match p.factor(a, lat) {
                Ok((t, face)) => {
                    factorization &= face == f
                        && t.support().len() == a.len()
                        && t.validate(a, lat).is_ok()
                        && t.multiply(&idem[f]) == p;
                }
                Err(_) => factorization = false,
            }
            factorization_samples += 1;
            points.push((f, p));
        }
    }
    let mut principal_open = true;
    let mut principal_open_samples = 0;
    let mut sample_sets: Vec<Vec<usize>> = (0..a.len()).map(|j| vec![j]).collect();
    sample_sets.extend(subsets_of_size(a.len(), 2));
    sample_sets.push((0..a.len()).collect());
    for set in sample_sets {
        let lambda: Vec<i64> =
            (0..a.rank).map(|i| set.iter().map(|&j| a.generators[j][i]).sum()).collect();
        let g = lat.minimal_face_containing(&set);
        for (f, p) in &points {
            let direct: Rational = set.iter().map(|&j| p.values[j].clone()).product();
            let via_face = p.evaluate(a, lat, &lambda)?;
            principal_open &= direct == via_face && (!direct.is_zero()) == lat.is_subface(g, *f);
            principal_open_samples += 1;
        }
    }
    Ok(ToricReport {
        face_count: n,
        idempotent_count,
        meet_closed,
        idempotent_products,
        unit_group,
        factorization,
        factorization_samples,
        principal_open,
        principal_open_samples,
        saturation: saturation_check(a, lat),
    })
}

/// `α_V v_λ = α(λ) v_λ` on every object.
pub fn torus_action_family(
    c: &CategoryClosure,
    h: &Subalgebra,
    a: &WeightMonoid,
    lat: &FaceLattice,
    alpha: &AtildePoint,
) -> Result<NatFamily> {
    alpha.validate(a, lat)?;
    let scale = int(a.denominator);
    let mut entries = Vec::with_capacity(c.len());
    for i in 0..c.len() {
        let m = c.object(i);
        let dec = weight_decomposition(m, h)?;
        let mut cols = Vec::with_capacity(m.dim());
        let mut diag = Vec::with_capacity(m.dim());
        for (w, space) in &dec.weights {
            let scaled: Vec<Rational> = w.iter().map(|x| x * &scale).collect();
            if scaled.iter().any(|x| !x.is_integer()) {
                return Err(Error::WeightNotRepresentable(Vec::new()));
            }
            let lambda: Vec<i64> = scaled.iter().map(|x| big_to_i64(&x.to_integer())).collect::<Result<_>>()?;
            let value = alpha.evaluate(a, lat, &lambda)?;
            for b in space.basis() {
                cols.push(b);
                diag.push(value.clone());
            }
        }
        let p = QMatrix::from_columns(m.dim(), &cols);
        let pinv = p.inverse().expect("weight spaces span");
        entries.push(&(&p * &QMatrix::diag(&diag)) * &pinv);
    }
    NatFamily::for_closure(c, entries)
}

/// `gcd` of a list, used for monoids of rank one.
pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}
