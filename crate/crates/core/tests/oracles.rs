//! Independent reference computations checked against the library.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use tannaka_core::catalog::{self, heisenberg_standard, sl2_irrep, upper_triangular_standard};
use tannaka_core::exactlin::rational::unit_vec;
use tannaka_core::exactlin::{exp_nilpotent, frac, int, QMatrix, QPoly, QVector, Rational, RowEchelon, Subspace};
use tannaka_core::nilgrp::BCHGroup;
use tannaka_core::tannaka::{build_closure, family_span, lie_m_solve, ClosureOptions, Provenance};
use tannaka_core::toric::{faces, WeightMonoid};
use tannaka_core::uea::{dual_multiply, MultiIndex, TruncatedDual};

/// Lie(M) from the unreduced system: one unknown matrix per object, the
/// derivation rule on every tensor object, zero on the unit, and naturality
/// for every listed morphism.
fn lie_m_full_system(c: &tannaka_core::tannaka::CategoryClosure) -> Subspace {
    let dims: Vec<usize> = (0..c.len()).map(|i| c.object(i).dim()).collect();
    let mut offset = vec![0; dims.len() + 1];
    for (i, d) in dims.iter().enumerate() {
        offset[i + 1] = offset[i] + d * d;
    }
    let n = offset[dims.len()];
    let var = |obj: usize, r: usize, s: usize| offset[obj] + r * dims[obj] + s;
    let mut eqs = RowEchelon::new(n);
    let mut push = |terms: Vec<(usize, Rational)>| {
        let mut row = vec![Rational::zero(); n];
        for (k, v) in terms {
            row[k] += v;
        }
        if row.iter().any(|x| !x.is_zero()) {
            eqs.insert(row);
        }
    };
    for (i, o) in c.objects().iter().enumerate() {
        match o.provenance {
            Provenance::Trivial => {
                for r in 0..dims[i] {
                    for s in 0..dims[i] {
                        push(vec![(var(i, r, s), int(1))]);
                    }
                }
            }
            Provenance::Tensor { left, right } => {
                let (a, b) = (dims[left], dims[right]);
                for r in 0..a * b {
                    for s in 0..a * b {
                        let (r1, r2, s1, s2) = (r / b, r % b, s / b, s % b);
                        let mut terms = vec![(var(i, r, s), int(1))];
                        if r2 == s2 {
                            terms.push((var(left, r1, s1), int(-1)));
                        }
                        if r1 == s1 {
                            terms.push((var(right, r2, s2), int(-1)));
                        }
                        push(terms);
                    }
                }
            }
            _ => {}
        }
    }
    for m in c.morphisms() {
        let (v, w, phi) = (m.source, m.target, &m.matrix);
        for r in 0..dims[w] {
            for s in 0..dims[v] {
                let mut terms = Vec::new();
                for k in 0..dims[v] {
                    terms.push((var(v, k, s), phi[(r, k)].clone()));
                }
                for k in 0..dims[w] {
                    terms.push((var(w, r, k), -phi[(k, s)].clone()));
                }
                push(terms);
            }
        }
    }
    Subspace::span(n, eqs.kernel_basis())
}

#[test]
fn lie_m_matches_unreduced_system() {
    let g = Arc::new(catalog::sl2());
    for (gens, depth) in [(vec![sl2_irrep(&g, 1)], 2), (vec![sl2_irrep(&g, 2)], 2), (vec![sl2_irrep(&g, 1)], 1)] {
        let c = build_closure(&g, &gens, ClosureOptions::with_depth(depth)).unwrap();
        let fast = family_span(&lie_m_solve(&c)).unwrap();
        assert_eq!(fast, lie_m_full_system(&c), "generators {:?} depth {depth}", c.ids());
    }
    let h = Arc::new(catalog::heisenberg());
    let c = build_closure(&h, &[heisenberg_standard(&h)], ClosureOptions::with_depth(2)).unwrap();
    assert_eq!(family_span(&lie_m_solve(&c)).unwrap(), lie_m_full_system(&c));
}

/// Symplectic invariance on L(1): `ω(Av,w) + ω(v,Aw) = 0` with `ω = [[0,1],[−1,0]]`
/// is `AᵀJ + JA = 0`, i.e. trace zero.
#[test]
fn lie_m_on_l1_is_symplectic() {
    let g = Arc::new(catalog::sl2());
    let c = build_closure(&g, &[sl2_irrep(&g, 1)], ClosureOptions::with_depth(2)).unwrap();
    let l1 = c.index_of("L1").unwrap();
    let j = QMatrix::from_ints(&[[0, 1], [-1, 0]]);
    let mut eqs = RowEchelon::new(4);
    for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        // entry (p,q) of AᵀJ + JA, A = [[a0,a1],[a2,a3]]
        let mut row = vec![Rational::zero(); 4];
        for k in 0..2 {
            row[k * 2 + p] += j[(k, q)].clone();
            row[q + 2 * k] += j[(p, k)].clone();
        }
        eqs.insert(row);
    }
    let oracle = Subspace::span(4, eqs.kernel_basis());
    let basis = lie_m_solve(&c);
    let on_l1 = Subspace::span(4, basis.iter().map(|f| f.flatten_at(&[l1])));
    assert_eq!(oracle.dim(), 3);
    assert_eq!(on_l1, oracle);
}

fn brute_force_faces(a: &WeightMonoid, bound: i64) -> Vec<Vec<usize>> {
    let q = a.len();
    let mut out = Vec::new();
    let mut ells = vec![vec![]];
    for _ in 0..a.rank {
        ells = ells
            .into_iter()
            .flat_map(|l: Vec<i64>| (-bound..=bound).map(move |x| [l.clone(), vec![x]].concat()))
            .collect();
    }
    for mask in 0u32..(1 << q) {
        let set: Vec<usize> = (0..q).filter(|j| mask & (1 << j) != 0).collect();
        let certified = ells.iter().any(|l| {
            (0..q).all(|j| {
                let v: i64 = l.iter().zip(&a.generators[j]).map(|(x, y)| x * y).sum();
                if set.contains(&j) {
                    v == 0
                } else {
                    v > 0
                }
            })
        });
        if certified {
            out.push(set);
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

#[test]
fn faces_match_brute_force() {
    let cases: Vec<(usize, Vec<Vec<i64>>, usize)> = vec![
        (2, vec![vec![1, 0], vec![0, 1]], 4),
        (1, vec![vec![1], vec![-1]], 1),
        (1, vec![vec![1]], 2),
        (1, vec![vec![2], vec![3]], 2),
        (2, vec![vec![1, 0], vec![1, 1], vec![1, 2]], 4),
        (2, vec![vec![1, 0], vec![0, 1], vec![-1, 0]], 2),
        (2, vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], 1),
        (3, vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]], 10),
        (3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 8),
        (3, vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 4),
        (2, vec![vec![1, -1], vec![-1, 2], vec![2, -1], vec![0, 1]], 4),
    ];
    for (rank, gens, expected) in cases {
        let a = WeightMonoid::new(rank, 1, gens.clone()).unwrap();
        let lat = faces(&a, 12).unwrap();
        let ours: Vec<Vec<usize>> = lat.faces.iter().map(|f| f.generators.clone()).collect();
        assert_eq!(ours, brute_force_faces(&a, 3), "generators {gens:?}");
        assert_eq!(ours.len(), expected, "generators {gens:?}");
        for f in &lat.faces {
            for (j, g) in a.generators.iter().enumerate() {
                let v: Rational = f.certificate.iter().zip(g).map(|(x, &y)| x * int(y)).sum();
                assert_eq!(v.is_zero(), f.generators.contains(&j));
                assert!(!v.is_negative());
            }
        }
    }
}

/// `log(I + N) = Σ (−1)^{k+1} N^k / k` for nilpotent `N`.
fn log_unipotent(m: &QMatrix) -> QMatrix {
    let n = m - &QMatrix::identity(m.nrows());
    let mut out = QMatrix::zeros(m.nrows(), m.ncols());
    let mut p = n.clone();
    for k in 1..=m.nrows() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = &out + &p.scale(&frac(sign, k as i64));
        p = &p * &n;
    }
    out
}

#[test]
fn bch_matches_matrix_logarithm() {
    let one = Rational::one();
    let g = Arc::new(catalog::heisenberg());
    let v = heisenberg_standard(&g);
    let grp = BCHGroup::whole(&g).unwrap();
    let (x, y) = (unit_vec(3, 0), unit_vec(3, 1));
    let z = grp.bch(&x, &y).unwrap();
    let prod = &exp_nilpotent(&v.act(&x), &one).unwrap() * &exp_nilpotent(&v.act(&y), &one).unwrap();
    assert_eq!(v.act(&z), log_unipotent(&prod));
    assert_eq!(z, vec![int(1), int(1), frac(1, 2)]);

    let n4 = Arc::new(catalog::strictly_upper_triangular(4));
    let v4 = upper_triangular_standard(&n4, 4);
    let grp4 = BCHGroup::whole(&n4).unwrap();
    assert_eq!(grp4.class(), 3);
    let samples: Vec<QVector> = vec![
        vec![int(1), int(2), frac(-1, 3), int(0), int(5), frac(1, 2)],
        vec![frac(3, 4), int(-1), int(1), int(2), int(0), int(-3)],
        vec![int(0), int(1), int(0), int(1), int(0), int(1)],
        vec![int(2), int(0), int(0), int(0), frac(-5, 2), int(0)],
    ];
    for a in &samples {
        for b in &samples {
            let z = grp4.bch(a, b).unwrap();
            let prod = &exp_nilpotent(&v4.act(a), &one).unwrap() * &exp_nilpotent(&v4.act(b), &one).unwrap();
            assert_eq!(v4.act(&z), log_unipotent(&prod));
        }
    }
}

#[test]
fn convolution_is_power_series_product() {
    let coeffs_a = vec![int(1), int(-2), int(3), int(0), int(5), frac(1, 2), int(7), int(0), int(-1)];
    let coeffs_b = vec![int(0), int(1), frac(-1, 3), int(4), int(0), int(0), int(2), int(1), int(1)];
    let bound = 8;
    let to_dual = |c: &[Rational]| {
        TruncatedDual::from_coeffs(1, bound, c.iter().enumerate().map(|(k, v)| (MultiIndex::new(vec![k as u32]), v.clone())))
            .unwrap()
    };
    let prod = dual_multiply(&to_dual(&coeffs_a), &to_dual(&coeffs_b)).unwrap();
    let series = &QPoly::new(coeffs_a.clone()) * &QPoly::new(coeffs_b.clone());
    for k in 0..=bound {
        assert_eq!(prod.coeff(&MultiIndex::new(vec![k])), series.coeff(k as usize), "degree {k}");
    }
}
