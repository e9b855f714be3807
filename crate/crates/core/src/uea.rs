//! Degree-truncated universal enveloping algebra: PBW monomials with divided
//! powers, their coproduct, and the convolution algebra on the dual.
//!
//! The PBW monomial of an exponent vector `e` is `b_e = Π aᵢ^{eᵢ}/eᵢ!` with the
//! factors in basis order, so the last basis element acts on a vector first.
//! Dual elements are finitely supported coefficient maps `e ↦ c_e` standing for
//! `Σ c_e h_e` with `h_e(b_f) = δ_{ef}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::rational::{dot, format_rational, int};
use crate::exactlin::{QMatrix, QVector, Rational};
use crate::repn::Module;

/// Exponent vector over the Lie algebra basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// `eᵢ = k` and zero elsewhere.
    pub fn single(n: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = k;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i).collect()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All exponent vectors in `n` variables of degree at most `d`, graded order.
    pub fn all_up_to(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for deg in 0..=d {
            let mut cur = vec![0u32; n];
            compositions(n, deg, 0, &mut cur, &mut out);
        }
        out.sort();
        out
    }
}

fn compositions(n: usize, remaining: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if n == 0 {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for k in (0..=remaining).rev() {
        cur[pos] = k;
        compositions(n, remaining - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Graded order: degree first, then reverse-lexicographic on exponents so that
/// `(1,0)` precedes `(0,1)`.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).map(int).product()
}

/// `b_e · v` in the module.
pub fn apply_pbw(module: &Module, e: &MultiIndex, v: &[Rational]) -> Result<QVector> {
    if v.len() != module.dim() {
        return Err(Error::DimensionMismatch { expected: module.dim(), found: v.len() });
    }
    if e.len() != module.action().len() {
        return Err(Error::DimensionMismatch { expected: module.action().len(), found: e.len() });
    }
    let mut w = v.to_vec();
    for (i, &k) in e.0.iter().enumerate().rev() {
        for _ in 0..k {
            w = module.action()[i].mul_vec(&w);
        }
        if k > 1 {
            let inv = factorial(k).recip();
            w.iter_mut().for_each(|x| *x *= &inv);
        }
    }
    Ok(w)
}

/// The operators `ρ(b_e)` for every `e` of degree at most `d`, built by
/// peeling off the leftmost factor so each operator costs one product.
pub fn pbw_operators(module: &Module, d: u32) -> BTreeMap<MultiIndex, QMatrix> {
    let n = module.action().len();
    let mut ops: BTreeMap<MultiIndex, QMatrix> = BTreeMap::new();
    for e in MultiIndex::all_up_to(n, d) {
        let op = match e.0.iter().position(|&k| k != 0) {
            None => QMatrix::identity(module.dim()),
            Some(i) => {
                let mut rest = e.clone();
                let k = rest.0[i];
                rest.0[i] = 0;
                let power = module.action()[i].pow(k).scale(&factorial(k).recip());
                &power * &ops[&rest]
            }
        };
        ops.insert(e, op);
    }
    ops
}

/// `Δ(b_f) = Σ_{e+ẽ=f} b_e ⊗ b_ẽ`: every ordered splitting, coefficient one.
pub fn coproduct_pbw(f: &MultiIndex) -> Vec<(MultiIndex, MultiIndex)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &fi in &f.0 {
        let mut next = Vec::with_capacity(out.len() * (fi as usize + 1));
        for (l, r) in &out {
            for k in 0..=fi {
                let (mut l2, mut r2): (Vec<u32>, Vec<u32>) = (l.clone(), r.clone());
                l2.push(k);
                r2.push(fi - k);
                next.push((l2, r2));
            }
        }
        out = next;
    }
    out.into_iter().map(|(l, r)| (MultiIndex(l), MultiIndex(r))).collect()
}

/// Antipode on generators: `S(x) = −x`.
pub fn antipode_generator(x: &[Rational]) -> QVector {
    x.iter().map(|c| -c).collect()
}

/// Element of `U(g)*` known up to PBW degree `bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedDual {
    nvars: usize,
    bound: u32,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl TruncatedDual {
    pub fn zero(nvars: usize, bound: u32) -> Self {
        TruncatedDual { nvars, bound, coeffs: BTreeMap::new() }
    }

    /// Counit `ε = h₀`, the unit of the convolution product.
    pub fn counit(nvars: usize, bound: u32) -> Self {
        let mut t = TruncatedDual::zero(nvars, bound);
        t.coeffs.insert(MultiIndex::zero(nvars), Rational::one());
        t
    }

    /// Drops zero coefficients and anything above the bound.
    pub fn from_coeffs(nvars: usize, bound: u32, coeffs: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        let mut t = TruncatedDual::zero(nvars, bound);
        for (e, c) in coeffs {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            if e.degree() <= bound && !c.is_zero() {
                *t.coeffs.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        t.coeffs.retain(|_, c| !c.is_zero());
        Ok(t)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least degree in the support; `None` stands for +∞ (the zero element).
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::degree).min()
    }

    /// Convolution product `(h·h̃)_f = Σ_{e+ẽ=f} c_e c̃_ẽ`, truncated at the bound.
    pub fn multiply(&self, other: &TruncatedDual) -> Result<TruncatedDual> {
        if self.bound != other.bound {
            return Err(Error::DimensionMismatch { expected: self.bound as usize, found: other.bound as usize });
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        let mut out: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let de = e.degree();
            for (f, d) in &other.coeffs {
                if de + f.degree() <= self.bound {
                    *out.entry(e.add(f)).or_insert_with(Rational::zero) += c * d;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(TruncatedDual { nvars: self.nvars, bound: self.bound, coeffs: out })
    }

    pub fn add(&self, other: &TruncatedDual) -> Result<TruncatedDual> {
        TruncatedDual::from_coeffs(
            self.nvars,
            self.bound.min(other.bound),
            self.coeffs.iter().chain(&other.coeffs).map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> TruncatedDual {
        let coeffs = self.coeffs.iter().map(|(e, x)| (e.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect();
        TruncatedDual { nvars: self.nvars, bound: self.bound, coeffs }
    }
}

/// `dual_multiply` under its operational name.
pub fn dual_multiply(h: &TruncatedDual, k: &TruncatedDual) -> Result<TruncatedDual> {
    h.multiply(k)
}

impl fmt::Debug for TruncatedDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coeffs.iter().map(|(e, c)| format!("{}·h{:?}", format_rational(c), e)).collect();
        write!(f, "TruncatedDual(d={}; {})", self.bound, terms.join(" + "))
    }
}

/// `g_{φv}(b_e) = φ(b_e v)` for all `e` of degree at most `d`.
pub fn matrix_coefficient(module: &Module, phi: &[Rational], v: &[Rational], d: u32) -> Result<TruncatedDual> {
    for x in [phi, v] {
        if x.len() != module.dim() {
            return Err(Error::DimensionMismatch { expected: module.dim(), found: x.len() });
        }
    }
    let nvars = module.action().len();
    let ops = pbw_operators(module, d);
    TruncatedDual::from_coeffs(nvars, d, ops.into_iter().map(|(e, op)| (e, dot(phi, &op.mul_vec(v)))))
}
