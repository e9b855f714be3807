//! Unipotent groups of nilpotent Lie algebras through the truncated
//! Baker–Campbell–Hausdorff series, module filtrations `V_k` and the
//! annihilator ideals `I_k`.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::rational::{add_vec, scale_vec, zero_vec};
use crate::exactlin::{exp_nilpotent, frac, QVector, Rational, RowEchelon, Subspace};
use crate::liealg::{LieAlgebra, Subalgebra};
use crate::repn::Module;
use crate::tannaka::CategoryClosure;

/// Highest bracket degree in the built-in Dynkin table.
pub const MAX_CLASS: usize = 4;

/// Nested bracket word: letters applied right to left, `[a₀,[a₁,[…,aₖ]]]`,
/// with `false` for `x` and `true` for `y`.
struct DynkinTerm {
    word: &'static [bool],
    num: i64,
    den: i64,
}

const DYNKIN: &[DynkinTerm] = &[
    DynkinTerm { word: &[false], num: 1, den: 1 },
    DynkinTerm { word: &[true], num: 1, den: 1 },
    DynkinTerm { word: &[false, true], num: 1, den: 2 },
    DynkinTerm { word: &[false, false, true], num: 1, den: 12 },
    DynkinTerm { word: &[true, false, true], num: -1, den: 12 },
    DynkinTerm { word: &[true, false, false, true], num: -1, den: 24 },
];

#[derive(Clone, Debug)]
pub struct BCHGroup {
    algebra: Arc<LieAlgebra>,
    sub: Subalgebra,
    class: usize,
}

impl BCHGroup {
    pub fn new(g: &Arc<LieAlgebra>, sub: Subalgebra) -> Result<Self> {
        let lcs = sub.lower_central_series(g);
        let class = lcs.class().ok_or(Error::NotNilpotentAlgebra)?;
        if class > MAX_CLASS {
            return Err(Error::ClassTooLarge { class, max: MAX_CLASS });
        }
        Ok(BCHGroup { algebra: g.clone(), sub, class })
    }

    pub fn whole(g: &Arc<LieAlgebra>) -> Result<Self> {
        BCHGroup::new(g, Subalgebra::whole(g))
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.sub
    }

    fn check(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch { expected: self.algebra.dim(), found: v.len() });
        }
        if !self.sub.contains(v) {
            return Err(Error::Unsupported("element outside the nilpotent subalgebra".into()));
        }
        Ok(())
    }

    /// Dynkin series through bracket degree equal to the class.
    pub fn bch(&self, x: &[Rational], y: &[Rational]) -> Result<QVector> {
        self.check(x)?;
        self.check(y)?;
        let g = &self.algebra;
        let mut out = zero_vec(g.dim());
        for term in DYNKIN.iter().filter(|t| t.word.len() <= self.class.max(1)) {
            let pick = |b: bool| if b { y } else { x };
            let (last, rest) = term.word.split_last().expect("nonempty word");
            let mut v = pick(*last).to_vec();
            for &b in rest.iter().rev() {
                v = g.bracket_unchecked(pick(b), &v);
            }
            out = add_vec(&out, &scale_vec(&frac(term.num, term.den), &v));
        }
        Ok(out)
    }

    pub fn inverse(&self, x: &[Rational]) -> QVector {
        x.iter().map(|c| -c).collect()
    }
}

pub fn bch(group: &BCHGroup, x: &[Rational], y: &[Rational]) -> Result<QVector> {
    group.bch(x, y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleFiltration {
    pub module: String,
    /// `V₀ ⊆ V₁ ⊆ … ⊆ V_k = V`.
    #[serde(serialize_with = "serialize_dims")]
    pub subspaces: Vec<Subspace>,
}

fn serialize_dims<S: serde::Serializer>(v: &[Subspace], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(Subspace::dim).collect::<Vec<_>>().serialize(s)
}

impl ModuleFiltration {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    /// `V_k`, with `V_k = V` past the end and `V_{−1} = 0`.
    pub fn level(&self, k: isize) -> Subspace {
        let n = self.subspaces.last().map_or(0, Subspace::ambient);
        if k < 0 {
            Subspace::zero(n)
        } else {
            self.subspaces.get(k as usize).cloned().unwrap_or_else(|| Subspace::full(n))
        }
    }
}

/// `V_k = {v : n·v ⊆ V_{k−1}}`, iterated from `V_{−1} = 0` until it fills `V`.
pub fn filtration(v: &Module, n: &Subalgebra) -> Result<ModuleFiltration> {
    let actors: Vec<_> = n.basis().iter().map(|x| v.act(x)).collect();
    let mut prev = Subspace::zero(v.dim());
    let mut subspaces = Vec::new();
    loop {
        let next = actors.iter().fold(Subspace::full(v.dim()), |acc, a| acc.intersect(&prev.preimage(a)));
        if next == prev && !next.is_full() {
            return Err(Error::NotNilpotent { object: v.id().to_string() });
        }
        subspaces.push(next.clone());
        if next.is_full() {
            break;
        }
        prev = next;
    }
    Ok(ModuleFiltration { module: v.id().to_string(), subspaces })
}

/// `I_k = {x ∈ n : x·V_k = 0 on every object}`, in coordinates of `g`.
pub fn annihilator_ideal(c: &CategoryClosure, n: &Subalgebra, k: usize) -> Result<Subspace> {
    let g = c.algebra();
    let nb = n.basis();
    let mut ech = RowEchelon::new(nb.len());
    for i in 0..c.len() {
        let m = c.object(i);
        let f = filtration(m, n)?;
        let actors: Vec<_> = nb.iter().map(|x| m.act(x)).collect();
        for b in f.level(k as isize).basis() {
            let images: Vec<QVector> = actors.iter().map(|a| a.mul_vec(&b)).collect();
            for p in 0..m.dim() {
                let row: QVector = images.iter().map(|w| w[p].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    ech.insert(row);
                }
            }
        }
    }
    let vectors = ech.kernel_basis().into_iter().map(|cs| {
        cs.iter().zip(&nb).fold(zero_vec(g.dim()), |acc, (c, b)| add_vec(&acc, &scale_vec(c, b)))
    });
    Ok(Subspace::span(g.dim(), vectors))
}

/// `exp(ρ(bch(x,y))) = exp(ρ(x))·exp(ρ(y))` on every object of the closure.
pub fn exp_compat_check(group: &BCHGroup, c: &CategoryClosure, x: &[Rational], y: &[Rational]) -> Result<bool> {
    let z = group.bch(x, y)?;
    let one = Rational::from_integer(1.into());
    for i in 0..c.len() {
        let m = c.object(i);
        let nil = |v: &[Rational]| {
            exp_nilpotent(&m.act(v), &one).ok_or_else(|| Error::NotNilpotent { object: m.id().to_string() })
        };
        if nil(&z)? != &nil(x)? * &nil(y)? {
            return Ok(false);
        }
    }
    Ok(true)
}
