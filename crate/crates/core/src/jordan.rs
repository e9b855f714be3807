//! Additive and multiplicative Jordan–Chevalley decompositions over ℚ.
//!
//! The semisimple part is found without factoring: with `m` the minimal
//! polynomial of `x` and `p` its squarefree part, Newton's iteration
//! `S ← S − p(S)·p′(S)⁻¹` in `ℚ[t]/(m)` starting from `S = t` converges to the
//! polynomial `S` with `s = S(x)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::rational::format_rational;
use crate::exactlin::{QMatrix, QPoly, Rational, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditiveJC {
    pub s: QMatrix,
    pub n: QMatrix,
    /// `s = polynomial(x)`.
    #[serde(skip)]
    pub polynomial: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativeJC {
    pub e: QMatrix,
    pub s: QMatrix,
    pub u: QMatrix,
}

/// Polynomial `S` with `S(x)` the semisimple part of any matrix with minimal polynomial `m`.
pub fn semisimple_polynomial(m: &QPoly) -> Result<QPoly> {
    let p = m.squarefree_part()?;
    let dp = p.derivative();
    let mut s = QPoly::monomial(Rational::one(), 1).rem(m)?;
    loop {
        let ps = p.compose_mod(&s, m)?;
        if ps.is_zero() {
            return Ok(s);
        }
        let dps = dp.compose_mod(&s, m)?;
        let inv = dps.inverse_mod(m).expect("p′(S) is a unit modulo m");
        s = (&s - &(&ps * &inv)).rem(m)?;
    }
}

pub fn additive_jc(x: &QMatrix) -> Result<AdditiveJC> {
    x.require_square()?;
    let m = x.minimal_polynomial()?;
    let polynomial = semisimple_polynomial(&m)?;
    let s = polynomial.eval_matrix(x);
    let n = x - &s;
    Ok(AdditiveJC { s, n, polynomial })
}

impl AdditiveJC {
    /// Re-checks every defining property against `x`.
    pub fn verify(&self, x: &QMatrix) -> bool {
        &(&self.s + &self.n) == x
            && self.s.commutator(&self.n).is_zero()
            && self.n.is_nilpotent()
            && self.s.minimal_polynomial().is_ok_and(|p| p.is_squarefree())
            && self.polynomial.eval_matrix(x) == self.s
    }
}

fn witness(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Basis change `P = [image(e) | kernel(e)]` and the rank of `e`.
fn corner_basis(e: &QMatrix) -> (QMatrix, usize) {
    let mut cols = e.column_space();
    let r = cols.len();
    cols.extend(e.kernel_basis());
    (QMatrix::from_columns(e.nrows(), &cols), r)
}

fn block(m: &QMatrix, r: usize) -> QMatrix {
    let data = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect();
    QMatrix::from_row_major(r, r, data).expect("shape")
}

fn extend(m: &QMatrix, n: usize) -> QMatrix {
    let mut out = QMatrix::zeros(n, n);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = m[(i, j)].clone();
        }
    }
    out
}

/// `x = su = us` in the corner monoid `e·End(V)·e`, with `s` semisimple and
/// `u` unipotent on the image of `e`.
pub fn multiplicative_jc(x: &QMatrix, e: &QMatrix) -> Result<MultiplicativeJC> {
    let n = x.require_square()?;
    if e.nrows() != n || !e.is_square() {
        return Err(Error::DimensionMismatch { expected: n, found: e.nrows() });
    }
    if &(e * e) != e {
        return Err(Error::NotIdempotent);
    }
    if &(x * e) != x || &(e * x) != x {
        return Err(Error::IdempotentMismatch);
    }
    let (p, r) = corner_basis(e);
    let pinv = p.inverse().expect("image ⊕ kernel of an idempotent");
    let x0 = block(&(&(&pinv * x) * &p), r);
    let s0_inv_n0 = match x0.inverse() {
        Some(_) => {
            let jc = additive_jc(&x0)?;
            let s0_inv = jc.s.inverse().expect("semisimple part of an invertible map");
            (jc.s.clone(), &s0_inv * &jc.n)
        }
        None => {
            let k = x0.kernel_basis().remove(0);
            let mut full = k;
            full.resize(n, Rational::zero());
            return Err(Error::NotInvertible { witness: witness(&p.mul_vec(&full)) });
        }
    };
    let (s0, v0) = s0_inv_n0;
    let u0 = &QMatrix::identity(r) + &v0;
    let back = |m: &QMatrix| &(&p * &extend(m, n)) * &pinv;
    Ok(MultiplicativeJC { e: e.clone(), s: back(&s0), u: back(&u0) })
}

impl MultiplicativeJC {
    pub fn verify(&self, x: &QMatrix) -> bool {
        let (e, s, u) = (&self.e, &self.s, &self.u);
        &(e * e) == e
            && &(s * u) == x
            && &(u * s) == x
            && &(e * s) == s
            && &(s * e) == s
            && &(e * u) == u
            && &(u * e) == u
            && s.minimal_polynomial().is_ok_and(|p| p.is_squarefree())
            && (u - e).is_nilpotent()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub semisimple: bool,
    pub nilpotent: bool,
    pub unipotent: bool,
    pub weak_locally_unipotent: bool,
}

pub fn classify(x: &QMatrix) -> Result<Classification> {
    let n = x.require_square()?;
    let semisimple = x.minimal_polynomial()?.is_squarefree();
    let nilpotent = x.is_nilpotent();
    let id = QMatrix::identity(n);
    let unipotent = (x - &id).is_nilpotent();
    let image = Subspace::span(n, x.column_space());
    let kernel = Subspace::span(n, x.kernel_basis());
    let split = image.intersect(&kernel).is_zero() && image.dim() + kernel.dim() == n;
    let weak_locally_unipotent = split && {
        // x − id restricted to the image
        let shifted = x - &id;
        let cols: Vec<_> =
            image.basis().iter().map(|c| image.coordinates(&shifted.mul_vec(c)).expect("invariant")).collect();
        QMatrix::from_columns(image.dim(), &cols).is_nilpotent()
    };
    Ok(Classification { semisimple, nilpotent, unipotent, weak_locally_unipotent })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TensorJcReport {
    pub additive: bool,
    /// Present when both inputs are invertible.
    pub multiplicative: Option<bool>,
}

impl TensorJcReport {
    pub fn holds(&self) -> bool {
        self.additive && self.multiplicative.unwrap_or(true)
    }
}

/// Decomposition of `x⊗I + I⊗y` against the Kronecker sums of the parts, and
/// of `x⊗y` against the Kronecker products of the multiplicative parts.
pub fn tensor_jc_check(x: &QMatrix, y: &QMatrix) -> Result<TensorJcReport> {
    let (a, b) = (additive_jc(x)?, additive_jc(y)?);
    let sum = additive_jc(&x.kron_sum(y))?;
    let additive = sum.s == a.s.kron_sum(&b.s) && sum.n == a.n.kron_sum(&b.n);
    let multiplicative = match (x.inverse(), y.inverse()) {
        (Some(_), Some(_)) => {
            let (ix, iy) = (QMatrix::identity(x.nrows()), QMatrix::identity(y.nrows()));
            let mx = multiplicative_jc(x, &ix)?;
            let my = multiplicative_jc(y, &iy)?;
            let prod = multiplicative_jc(&x.kron(y), &ix.kron(&iy))?;
            Some(prod.s == mx.s.kron(&my.s) && prod.u == mx.u.kron(&my.u))
        }
        _ => None,
    };
    Ok(TensorJcReport { additive, multiplicative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int};

    #[test]
    fn unipotent_block() {
        let x = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        let jc = additive_jc(&x).unwrap();
        assert_eq!(jc.s, QMatrix::identity(2));
        assert_eq!(jc.n, QMatrix::from_ints(&[[0, 1], [0, 0]]));
        assert!(jc.verify(&x));
    }

    #[test]
    fn diagonalizable_is_its_own_semisimple_part() {
        let x = QMatrix::from_ints(&[[1, 0], [0, 2]]);
        let jc = additive_jc(&x).unwrap();
        assert_eq!(jc.s, x);
        assert!(jc.n.is_zero());
    }

    #[test]
    fn irrational_spectrum_needs_no_factoring() {
        // eigenvalues ±√2, each with a 2×2 Jordan block
        let x = QMatrix::from_ints(&[[0, 2, 1, 0], [1, 0, 0, 1], [0, 0, 0, 2], [0, 0, 1, 0]]);
        let jc = additive_jc(&x).unwrap();
        assert!(jc.verify(&x));
        assert!(!jc.n.is_zero());
        assert_eq!(jc.s.minimal_polynomial().unwrap(), QPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn multiplicative_examples() {
        let x = QMatrix::from_ints(&[[2, 1], [0, 2]]);
        let m = multiplicative_jc(&x, &QMatrix::identity(2)).unwrap();
        assert_eq!(m.s, QMatrix::identity(2).scale(&int(2)));
        let mut u = QMatrix::identity(2);
        u[(0, 1)] = frac(1, 2);
        assert_eq!(m.u, u);
        assert!(m.verify(&x));

        let e = QMatrix::from_ints(&[[1, 0], [0, 0]]);
        let m = multiplicative_jc(&e, &e).unwrap();
        assert_eq!((m.s.clone(), m.u.clone()), (e.clone(), e.clone()));

        let singular = QMatrix::from_ints(&[[1, 1], [1, 1]]);
        match multiplicative_jc(&singular, &QMatrix::identity(2)) {
            Err(Error::NotInvertible { witness }) => assert_eq!(witness.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(multiplicative_jc(&x, &x), Err(Error::NotIdempotent)));
    }

    #[test]
    fn corner_with_oblique_idempotent() {
        // e projects onto span(1,0,0),(0,1,0) along (1,1,1)
        let e = QMatrix::from_ints(&[[1, 0, -1], [0, 1, -1], [0, 0, 0]]);
        assert_eq!(&e * &e, e);
        let a = QMatrix::from_ints(&[[3, 1, 0], [0, 3, 0], [0, 0, 7]]);
        let x = &(&e * &a) * &e;
        let m = multiplicative_jc(&x, &e).unwrap();
        assert!(m.verify(&x));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&QMatrix::from_ints(&[[1, 0], [0, 0]])).unwrap();
        assert!(c.semisimple && c.weak_locally_unipotent && !c.nilpotent && !c.unipotent);
        let c = classify(&QMatrix::from_ints(&[[0, 1], [0, 0]])).unwrap();
        assert!(c.nilpotent && !c.weak_locally_unipotent && !c.semisimple);
        let c = classify(&QMatrix::identity(3)).unwrap();
        assert!(c.semisimple && c.unipotent && c.weak_locally_unipotent && !c.nilpotent);
    }

    #[test]
    fn tensor_examples() {
        let j = QMatrix::from_ints(&[[1, 1], [0, 1]]);
        let r = tensor_jc_check(&j, &j).unwrap();
        assert_eq!(r, TensorJcReport { additive: true, multiplicative: Some(true) });
        let d1 = QMatrix::from_ints(&[[1, 0], [0, 3]]);
        let d2 = QMatrix::from_ints(&[[2, 0], [0, -1]]);
        assert!(tensor_jc_check(&d1, &d2).unwrap().holds());
        let n = QMatrix::from_ints(&[[0, 1], [0, 0]]);
        let r = tensor_jc_check(&n, &n).unwrap();
        assert_eq!(r.multiplicative, None);
        assert!(r.additive);
        assert!(additive_jc(&n.kron_sum(&n)).unwrap().s.is_zero());
    }

    #[test]
    fn perturbed_semisimple_part_fails() {
        let x = QMatrix::from_ints(&[[2, 1, 0], [0, 2, 0], [0, 0, 5]]);
        let jc = additive_jc(&x).unwrap();
        let extra = QMatrix::from_ints(&[[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let s2 = &jc.s + &extra;
        assert!(s2.commutator(&jc.s).is_zero());
        assert!(!s2.minimal_polynomial().unwrap().is_squarefree());
    }
}
