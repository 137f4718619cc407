use std::sync::OnceLock;

use proptest::prelude::*;

use hh1_core::algebra::{kronecker, smash_product, trivial_extension, truncated_polynomial};
use hh1_core::hochschild::{hh1, p_power, smash_hh1, HH1Presentation, DEFAULT_SEED};
use hh1_core::lie::{gl2, greedy_maximal_torus, nilpotent_ideal_witness, sl2, witt, RestrictedLie};
use hh1_core::linalg::{Fp, Mat, Subspace};

fn f3() -> Fp {
    Fp::new(3).unwrap()
}

fn mat_strategy(p: u32, max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |d| {
            let rows: Vec<Vec<u32>> = d.chunks(c).map(<[u32]>::to_vec).collect();
            Mat::from_residue_rows(Fp::new(p).unwrap(), c, &rows)
        })
    })
}

/// HH¹ presentations shared across proptest cases.
fn presentations() -> &'static Vec<(HH1Presentation, RestrictedLie)> {
    static CELL: OnceLock<Vec<(HH1Presentation, RestrictedLie)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for p in [3, 5] {
            let f = Fp::new(p).unwrap();
            let (a, d) = smash_product(f, 2, 1).unwrap();
            let algebras = vec![
                truncated_polynomial(f, &[1]).unwrap(),
                truncated_polynomial(f, &[2]).unwrap(),
                trivial_extension(&kronecker(f).unwrap()).unwrap(),
            ];
            let h = smash_hh1(&a, &d, DEFAULT_SEED).unwrap();
            let l = RestrictedLie::from_hh1(&h).unwrap();
            out.push((h, l));
            for a in algebras {
                let h = hh1(&a).unwrap();
                let l = RestrictedLie::from_hh1(&h).unwrap();
                out.push((h, l));
            }
        }
        out
    })
}

fn vec_for(l: &RestrictedLie, seed: &[u32]) -> Vec<u32> {
    (0..l.dim()).map(|i| seed[i % seed.len()] % l.p()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in mat_strategy(5, 6, 7)) {
        let once = m.rref().mat;
        prop_assert_eq!(once.rref().mat, once);
    }

    #[test]
    fn rank_nullity(m in mat_strategy(3, 7, 7)) {
        prop_assert_eq!(m.kernel().dim() + m.rank(), m.cols());
    }

    #[test]
    fn subspace_basis_is_canonical(m in mat_strategy(3, 5, 6), mix in prop::collection::vec(0u32..3, 25)) {
        let f = f3();
        let rows = m.to_rows();
        let s = Subspace::from_spanning(f, m.cols(), &rows);
        // random recombination of the same rows spans a subspace of s
        let mut other: Vec<Vec<u32>> = (0..rows.len())
            .map(|i| {
                let mut v = vec![0u32; m.cols()];
                for (j, r) in rows.iter().enumerate() {
                    let c = mix[(i * rows.len() + j) % mix.len()];
                    for (x, y) in v.iter_mut().zip(r) {
                        *x = f.add(*x, f.mul(c, *y));
                    }
                }
                v
            })
            .collect();
        other.extend(s.basis().iter().cloned());
        let t = Subspace::from_spanning(f, m.cols(), &other);
        prop_assert!(s.contains_subspace(&t) && t.contains_subspace(&s));
        prop_assert_eq!(s.basis(), t.basis());
    }

    #[test]
    fn jacobson_agrees_with_composition(which in 0usize..8, u in prop::collection::vec(0u32..5, 1..20)) {
        let (h, l) = &presentations()[which];
        let x = vec_for(l, &u);
        let via_derivations = h.class_of(&p_power(&h.representative(&x))).unwrap();
        prop_assert_eq!(l.p_power(&x), via_derivations);
    }

    #[test]
    fn restrictedness(which in 0usize..8, u in prop::collection::vec(0u32..5, 1..20)) {
        let (_, l) = &presentations()[which];
        let x = vec_for(l, &u);
        prop_assert_eq!(l.ad_matrix(&l.p_power(&x)), l.ad_matrix(&x).pow(l.p()));
    }

    #[test]
    fn bracket_is_antisymmetric(which in 0usize..8, u in prop::collection::vec(0u32..5, 1..20), v in prop::collection::vec(0u32..5, 1..20)) {
        let (_, l) = &presentations()[which];
        let (x, y) = (vec_for(l, &u), vec_for(l, &v));
        let s = l.add(&l.bracket(&x, &y), &l.bracket(&y, &x));
        prop_assert!(s.iter().all(|&c| c == 0));
        prop_assert!(l.bracket(&x, &x).iter().all(|&c| c == 0));
    }
}

#[test]
fn torus_certificates_reverify() {
    for (_, l) in presentations() {
        let t = greedy_maximal_torus(l, 9).unwrap();
        for (i, c) in t.certificates.iter().enumerate() {
            assert_eq!(l.p_power(&c.element), c.element);
            assert_eq!(c.p_image, c.element);
            for s in &t.torus_basis[..i] {
                assert!(l.bracket(s, &c.element).iter().all(|&x| x == 0));
            }
        }
    }
}

#[test]
fn mu_is_monotone_on_subalgebras() {
    for p in [3, 5] {
        let f = Fp::new(p).unwrap();
        let g = gl2(f).unwrap();
        // trace-zero part of gl2
        let sl = Subspace::from_spanning(
            f,
            4,
            &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![1, 0, 0, p - 1]],
        );
        assert!(g.is_subalgebra(&sl) && g.is_p_closed(&sl));
        let sub = g.subalgebra(&sl).unwrap();
        let mu_sub = greedy_maximal_torus(&sub, 1).unwrap().mu();
        assert_eq!(
            mu_sub,
            greedy_maximal_torus(&sl2(f).unwrap(), 1).unwrap().mu()
        );
        assert!(mu_sub <= greedy_maximal_torus(&g, 1).unwrap().mu());
    }
}

#[test]
fn nilpotent_ideals_are_toral_free() {
    for (p, e) in [(3u32, vec![2u32]), (3, vec![1, 2]), (5, vec![2])] {
        let w = nilpotent_ideal_witness(p, &e).unwrap();
        assert!(w.toral_free);
        let n = w.lie.subalgebra(&w.n_ideal).unwrap();
        assert_eq!(greedy_maximal_torus(&n, 3).unwrap().mu(), 0);
    }
}

#[test]
fn smash_grading_law() {
    for (p, n, r) in [(3, 1, 1), (3, 2, 1), (3, 3, 1), (3, 1, 2), (5, 2, 1)] {
        let f = Fp::new(p).unwrap();
        let (a, d) = smash_product(f, n, r).unwrap();
        let l = RestrictedLie::from_hh1(&smash_hh1(&a, &d, DEFAULT_SEED).unwrap()).unwrap();
        let m = l.dim();
        for i in 0..m {
            for j in 0..m {
                let b = l.bracket_basis(i, j);
                for (k, &c) in b.iter().enumerate() {
                    assert!(
                        c == 0 || k == i + j,
                        "[L_{i}, L_{j}] leaves L_{{i+j}} at p={p} n={n} r={r}"
                    );
                }
            }
        }
        let positive =
            Subspace::from_spanning(f, m, &(1..m).map(|i| l.basis_vec(i)).collect::<Vec<_>>());
        assert!(l.is_ideal(&positive));
    }
}

#[test]
fn constructed_lie_algebras_validate() {
    for p in [3, 5] {
        let f = Fp::new(p).unwrap();
        for l in [sl2(f).unwrap(), gl2(f).unwrap(), witt(f, 1).unwrap()] {
            l.validate().unwrap();
        }
    }
    for (_, l) in presentations() {
        l.validate().unwrap();
    }
}
