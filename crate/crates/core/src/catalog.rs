//! Bundled algebras and modules: sl2, sl3, Heisenberg, strictly upper
//! triangular matrices, abelian algebras.

use std::sync::Arc;

use crate::exactlin::{int, int_vec, QMatrix};
use crate::liealg::LieAlgebra;
use crate::repn::Module;

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// Basis `h, e, f` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        names(&["h", "e", "f"]),
        &[(0, 1, int_vec(&[0, 2, 0])), (0, 2, int_vec(&[0, 0, -2])), (1, 2, int_vec(&[1, 0, 0]))],
    )
    .expect("sl2 table")
}

/// Basis `x, y, z` with `[x,y] = z`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_brackets(names(&["x", "y", "z"]), &[(0, 1, int_vec(&[0, 0, 1]))]).expect("heisenberg table")
}

pub fn abelian(n: usize) -> LieAlgebra {
    let ns = (0..n).map(|i| format!("t{i}")).collect();
    LieAlgebra::from_brackets(ns, &[]).expect("abelian table")
}

fn elementary(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    m[(i, j)] = int(1);
    m
}

/// Basis matrices `E_ij`, `i < j`, ordered lexicographically.
pub fn strictly_upper_triangular_matrices(n: usize) -> Vec<(String, QMatrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((format!("E{}{}", i + 1, j + 1), elementary(n, i, j)));
        }
    }
    out
}

/// Strictly upper triangular `n×n` matrices; nilpotent of class `n − 1`.
pub fn strictly_upper_triangular(n: usize) -> LieAlgebra {
    let (ns, mats): (Vec<String>, Vec<QMatrix>) = strictly_upper_triangular_matrices(n).into_iter().unzip();
    LieAlgebra::from_matrices(ns, &mats).expect("closed under commutators")
}

pub fn sl3_matrices() -> Vec<(String, QMatrix)> {
    let mut h1 = QMatrix::zeros(3, 3);
    h1[(0, 0)] = int(1);
    h1[(1, 1)] = int(-1);
    let mut h2 = QMatrix::zeros(3, 3);
    h2[(1, 1)] = int(1);
    h2[(2, 2)] = int(-1);
    let mut out = vec![("h1".to_string(), h1), ("h2".to_string(), h2)];
    for (i, j) in [(0, 1), (1, 2), (0, 2), (1, 0), (2, 1), (2, 0)] {
        out.push((format!("E{}{}", i + 1, j + 1), elementary(3, i, j)));
    }
    out
}

pub fn sl3() -> LieAlgebra {
    let (ns, mats): (Vec<String>, Vec<QMatrix>) = sl3_matrices().into_iter().unzip();
    LieAlgebra::from_matrices(ns, &mats).expect("sl3 closed")
}

/// Irreducible sl2-module of highest weight `n`, basis `v₀, …, vₙ` with
/// `h vₖ = (n−2k) vₖ`, `f vₖ = vₖ₊₁`, `e vₖ = k(n−k+1) vₖ₋₁`.
pub fn sl2_irrep(g: &Arc<LieAlgebra>, n: usize) -> Module {
    let d = n + 1;
    let mut h = QMatrix::zeros(d, d);
    let mut e = QMatrix::zeros(d, d);
    let mut f = QMatrix::zeros(d, d);
    for k in 0..d {
        h[(k, k)] = int(n as i64 - 2 * k as i64);
        if k + 1 < d {
            f[(k + 1, k)] = int(1);
        }
        if k > 0 {
            e[(k - 1, k)] = int((k * (n - k + 1)) as i64);
        }
    }
    Module::new(g.clone(), format!("L{n}"), d, vec![h, e, f]).expect("sl2 irreducible module")
}

/// Representation by the defining matrices of a matrix Lie algebra.
pub fn defining_module(g: &Arc<LieAlgebra>, id: &str, mats: Vec<QMatrix>) -> Module {
    let d = mats.first().map_or(0, QMatrix::nrows);
    Module::new(g.clone(), id, d, mats).expect("defining representation")
}

/// Faithful 3-dimensional representation `x = E12`, `y = E23`, `z = E13`.
pub fn heisenberg_standard(g: &Arc<LieAlgebra>) -> Module {
    defining_module(g, "V3", vec![elementary(3, 0, 1), elementary(3, 1, 2), elementary(3, 0, 2)])
}

pub fn upper_triangular_standard(g: &Arc<LieAlgebra>, n: usize) -> Module {
    let mats = strictly_upper_triangular_matrices(n).into_iter().map(|(_, m)| m).collect();
    defining_module(g, &format!("V{n}"), mats)
}

pub fn sl3_standard(g: &Arc<LieAlgebra>) -> Module {
    let mats = sl3_matrices().into_iter().map(|(_, m)| m).collect();
    defining_module(g, "V3", mats)
}

/// Diagonal module of an abelian algebra: `weights[k][i]` is the eigenvalue of
/// basis element `i` on the `k`-th basis vector.
pub fn abelian_weight_module(g: &Arc<LieAlgebra>, id: &str, weights: &[Vec<i64>]) -> Module {
    let d = weights.len();
    let action = (0..g.dim())
        .map(|i| QMatrix::diag(&weights.iter().map(|w| int(w[i])).collect::<Vec<_>>()))
        .collect();
    Module::new(g.clone(), id, d, action).expect("diagonal action of an abelian algebra")
}
