//! One-parameter elements of the reconstructed monoid on a closure: unipotent
//! families `exp(t·x)`, torus families `s^h`, and products of them.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::rational::{dot, format_rational, pow_i64};
use crate::exactlin::{eigenspaces, exp_nilpotent, spectral_projector, QMatrix, QPoly, QVector, Rational};
use crate::repn::Module;
use crate::tannaka::{m_membership, CategoryClosure, NatFamily};

/// A Lie element acting nilpotently on every object of a closure.
#[derive(Clone, Debug)]
pub struct UnipotentParam {
    generator: QVector,
    family: NatFamily,
}

impl UnipotentParam {
    pub fn new(c: &CategoryClosure, x: &[Rational]) -> Result<Self> {
        let family = c.lie_family(x)?;
        for (i, m) in family.entries().iter().enumerate() {
            if !m.is_nilpotent() {
                return Err(Error::NotNilpotent { object: c.object(i).id().to_string() });
            }
        }
        Ok(UnipotentParam { generator: x.to_vec(), family })
    }

    pub fn generator(&self) -> &[Rational] {
        &self.generator
    }

    pub fn family(&self) -> &NatFamily {
        &self.family
    }
}

/// `exp(t·ρ_V(x))` on every object, as a finite sum.
pub fn exp_family(x: &UnipotentParam, t: &Rational) -> NatFamily {
    x.family.map(|m| exp_nilpotent(m, t).expect("certified nilpotent"))
}

/// Exponential of a family of nilpotent matrices.
pub fn exp_of_family(x: &NatFamily, t: &Rational) -> Option<NatFamily> {
    let entries = x.entries().iter().map(|m| exp_nilpotent(m, t)).collect::<Option<Vec<_>>>()?;
    NatFamily::new(x.ids().to_vec(), entries).ok()
}

/// `τ ↦ φ(exp(τ·ρ(x)) v) = Σ φ(ρ(x)^k v / k!) τ^k`.
pub fn mc_restrict_unipotent(v_module: &Module, phi: &[Rational], v: &[Rational], x: &[Rational]) -> Result<QPoly> {
    let a = v_module.act(x);
    if !a.is_nilpotent() {
        return Err(Error::NotNilpotent { object: v_module.id().to_string() });
    }
    let mut coeffs = Vec::new();
    let mut w = v.to_vec();
    let mut k = 0i64;
    let mut fact = Rational::one();
    while w.iter().any(|c| !c.is_zero()) {
        coeffs.push(dot(phi, &w) / &fact);
        w = a.mul_vec(&w);
        k += 1;
        fact *= Rational::from_integer(k.into());
    }
    Ok(QPoly::new(coeffs))
}

/// Submonoid of `ℤ` generated by a finite set of integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueMonoid {
    pub generators: Vec<i64>,
}

impl EigenvalueMonoid {
    pub fn new(values: impl IntoIterator<Item = i64>) -> Self {
        let set: BTreeSet<i64> = values.into_iter().filter(|&v| v != 0).collect();
        EigenvalueMonoid { generators: set.into_iter().collect() }
    }

    fn gcd(&self) -> i64 {
        self.generators.iter().fold(0i64, |g, &v| g.gcd(&v))
    }

    /// With generators of both signs the monoid is the group `gcd·ℤ`.
    pub fn is_group(&self) -> bool {
        self.generators.first().is_some_and(|&v| v < 0) && self.generators.last().is_some_and(|&v| v > 0)
    }

    pub fn contains(&self, b: i64) -> bool {
        if b == 0 {
            return true;
        }
        if self.generators.is_empty() {
            return false;
        }
        if self.is_group() {
            return b % self.gcd() == 0;
        }
        let positive = self.generators[0] > 0;
        if (b > 0) != positive {
            return false;
        }
        let target = b.unsigned_abs() as usize;
        let gens: Vec<usize> = self.generators.iter().map(|g| g.unsigned_abs() as usize).collect();
        let mut reach = vec![false; target + 1];
        reach[0] = true;
        for n in 1..=target {
            reach[n] = gens.iter().any(|&g| g <= n && reach[n - g]);
        }
        reach[target]
    }
}

/// A Lie element acting diagonalizably with integer eigenvalues on every
/// object, with its spectral projectors.
#[derive(Clone, Debug)]
pub struct TorusParam {
    generator: QVector,
    projectors: Vec<Vec<(i64, QMatrix)>>,
    monoid: EigenvalueMonoid,
}

impl TorusParam {
    pub fn new(c: &CategoryClosure, h: &[Rational]) -> Result<Self> {
        let family = c.lie_family(h)?;
        let mut projectors = Vec::with_capacity(c.len());
        let mut all = Vec::new();
        for (i, m) in family.entries().iter().enumerate() {
            let id = c.object(i).id();
            let spaces = eigenspaces(m).map_err(|_| Error::NotDiagonalizable(id.to_string()))?;
            let spectrum: Vec<Rational> = spaces.iter().map(|(l, _)| l.clone()).collect();
            let mut per = Vec::new();
            for lambda in &spectrum {
                if !lambda.is_integer() {
                    return Err(Error::NonIntegerEigenvalue { object: id.to_string(), value: format_rational(lambda) });
                }
                let b: i64 = lambda.to_integer().try_into().map_err(|_| Error::Unsupported("eigenvalue too large".into()))?;
                all.push(b);
                per.push((b, spectral_projector(m, &spectrum, lambda)));
            }
            projectors.push(per);
        }
        Ok(TorusParam { generator: h.to_vec(), projectors, monoid: EigenvalueMonoid::new(all) })
    }

    pub fn generator(&self) -> &[Rational] {
        &self.generator
    }

    pub fn eigenvalue_monoid(&self) -> &EigenvalueMonoid {
        &self.monoid
    }

    /// Eigenvalues on object `i` with their spectral projectors.
    pub fn projectors(&self, i: usize) -> &[(i64, QMatrix)] {
        &self.projectors[i]
    }

    /// All eigenvalues occurring on the closure.
    pub fn eigenvalues(&self) -> BTreeSet<i64> {
        self.projectors.iter().flatten().map(|(b, _)| *b).collect()
    }
}

/// `s^h`: multiplication by `s^λ` on the `λ`-eigenspace of every object.
pub fn torus_family(c: &CategoryClosure, h: &TorusParam, s: &Rational) -> Result<NatFamily> {
    if s.is_zero() {
        return Err(Error::NotInvertible { witness: vec!["0".into()] });
    }
    let entries = (0..c.len())
        .map(|i| {
            let d = c.object(i).dim();
            h.projectors[i].iter().fold(QMatrix::zeros(d, d), |acc, (b, p)| &acc + &p.scale(&pow_i64(s, *b)))
        })
        .collect();
    NatFamily::for_closure(c, entries)
}

/// Laurent polynomial `s ↦ φ(s^h v) = Σ_λ φ(P_λ v) s^λ`, keyed by exponent.
pub fn torus_coefficient(h: &TorusParam, object: usize, phi: &[Rational], v: &[Rational]) -> BTreeMap<i64, Rational> {
    h.projectors[object]
        .iter()
        .map(|(b, p)| (*b, dot(phi, &p.mul_vec(v))))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Exponents of all pulled-back matrix coefficients `f_{eᵢ* eⱼ}` on the closure,
/// and whether each lies in the eigenvalue monoid.
#[derive(Clone, Debug, Serialize)]
pub struct ComorphismReport {
    pub eigenvalue_monoid: EigenvalueMonoid,
    pub exponents: Vec<i64>,
    pub contained: bool,
}

pub fn comorphism_check(c: &CategoryClosure, h: &TorusParam) -> ComorphismReport {
    let mut exps = BTreeSet::new();
    for i in 0..c.len() {
        let d = c.object(i).dim();
        for p in 0..d {
            for q in 0..d {
                let phi = crate::exactlin::rational::unit_vec(d, p);
                let v = crate::exactlin::rational::unit_vec(d, q);
                exps.extend(torus_coefficient(h, i, &phi, &v).into_keys());
            }
        }
    }
    let exponents: Vec<i64> = exps.into_iter().collect();
    let contained = exponents.iter().all(|&b| h.monoid.contains(b));
    ComorphismReport { eigenvalue_monoid: h.monoid.clone(), exponents, contained }
}

/// Checks `m·exp(t x)·m⁻¹ = exp(t·m x m⁻¹)` on every object.
pub fn conjugation_check(m: &NatFamily, x: &UnipotentParam, t: &Rational) -> bool {
    let Some(conj) = x.family.conjugate_by(m) else {
        return false;
    };
    let Some(rhs) = exp_of_family(&conj, t) else {
        return false;
    };
    exp_family(x, t).conjugate_by(m).is_some_and(|lhs| lhs == rhs)
}

#[derive(Clone, Debug)]
pub enum Param {
    Unipotent(UnipotentParam),
    Torus(TorusParam),
}

/// One factor of a word: parameter index and its value (`t` or `s`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Letter {
    pub param: usize,
    #[serde(with = "crate::exactlin::rational::serde_rational")]
    pub value: Rational,
}

pub fn instantiate(c: &CategoryClosure, param: &Param, value: &Rational) -> Result<NatFamily> {
    match param {
        Param::Unipotent(x) => Ok(exp_family(x, value)),
        Param::Torus(h) => torus_family(c, h, value),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratedElement {
    pub word: Vec<Letter>,
    pub family: NatFamily,
    pub certified: bool,
}

/// Products `w₀·w₁·…` of parameter instantiations, each checked for membership.
pub fn generate_me(c: &CategoryClosure, params: &[Param], words: &[Vec<Letter>]) -> Result<Vec<GeneratedElement>> {
    let mut out = Vec::with_capacity(words.len());
    for word in words {
        let mut fam = NatFamily::identity(c);
        for letter in word {
            let p = params.get(letter.param).ok_or_else(|| Error::Unknown(format!("parameter {}", letter.param)))?;
            fam = fam.compose(&instantiate(c, p, &letter.value)?)?;
        }
        let certified = m_membership(c, &fam).certified;
        out.push(GeneratedElement { word: word.clone(), family: fam, certified });
    }
    Ok(out)
}

/// All words of length at most `max_len` over the given letters, shortest first.
pub fn all_words(letters: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for l in letters {
                let mut w2: Vec<Letter> = w.clone();
                w2.push(l.clone());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Whether `subspace` of object `object` is invariant under every word of
/// length ≤ `max_len` in the letter matrices; stops at the first failure.
pub fn words_preserve(letter_mats: &[QMatrix], subspace: &crate::exactlin::Subspace, max_len: usize) -> bool {
    fn go(prefix: &QMatrix, mats: &[QMatrix], s: &crate::exactlin::Subspace, left: usize) -> bool {
        if !s.is_invariant_under(prefix) {
            return false;
        }
        left == 0 || mats.iter().all(|m| go(&(prefix * m), mats, s, left - 1))
    }
    let n = subspace.ambient();
    go(&QMatrix::identity(n), letter_mats, subspace, max_len)
}
