use serde::{Deserialize, Serialize};

use super::meataxe::is_simple;
use super::models::witt;
use super::torus::{greedy_maximal_torus, EXHAUSTIVE_LIMIT};
use super::{LieError, RestrictedLie, Vector};
use crate::algebra::truncated_polynomial;
use crate::hochschild::hh1;
use crate::linalg::{axpy, Mat, SpanSolver, Subspace};

const TORUS_SEED: u64 = 0x5eed;

/// `[S, T]` as a subspace.
fn bracket_span(l: &RestrictedLie, s: &Subspace, t: &Subspace) -> Subspace {
    let mut rows = Vec::new();
    for x in s.basis() {
        for y in t.basis() {
            rows.push(l.bracket(x, y));
        }
    }
    Subspace::from_spanning(l.field(), l.dim(), &rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// Dimensions `L ⊇ L' ⊇ L'' ⊇ …` up to the first repeat.
    pub derived_series: Vec<usize>,
    /// Dimensions `L ⊇ [L,L] ⊇ [L,[L,L]] ⊇ …` up to the first repeat.
    pub lower_central_series: Vec<usize>,
    pub center: Subspace,
    pub is_abelian: bool,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
}

fn iterate_series(l: &RestrictedLie, derived: bool) -> Vec<Subspace> {
    let full = Subspace::full(l.field(), l.dim());
    let mut out = vec![full.clone()];
    loop {
        let last = out.last().expect("nonempty");
        let next = if derived {
            bracket_span(l, last, last)
        } else {
            bracket_span(l, &full, last)
        };
        if next == *last {
            break;
        }
        let done = next.is_zero();
        out.push(next);
        if done {
            break;
        }
    }
    out
}

pub fn center(l: &RestrictedLie) -> Subspace {
    let n = l.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        // ad(b_j) x = 0 for every j
        rows.extend(l.ad_matrix(&l.basis_vec(j)).to_rows());
    }
    if rows.is_empty() {
        return Subspace::zero(l.field(), n);
    }
    Mat::from_residue_rows(l.field(), n, &rows).kernel()
}

pub fn series_and_predicates(l: &RestrictedLie) -> Series {
    let derived = iterate_series(l, true);
    let lower = iterate_series(l, false);
    Series {
        derived_series: derived.iter().map(Subspace::dim).collect(),
        lower_central_series: lower.iter().map(Subspace::dim).collect(),
        center: center(l),
        is_abelian: l.is_abelian(),
        is_solvable: derived.last().is_some_and(Subspace::is_zero),
        is_nilpotent: lower.last().is_some_and(Subspace::is_zero),
    }
}

pub fn derived_subalgebra(l: &RestrictedLie) -> Subspace {
    let full = Subspace::full(l.field(), l.dim());
    bracket_span(l, &full, &full)
}

/// Whether iterating the p-map on `x` reaches zero within `dim + 1` steps.
pub fn is_p_nilpotent(l: &RestrictedLie, x: &[u32]) -> bool {
    let mut v = x.to_vec();
    for _ in 0..=l.dim() {
        if v.iter().all(|&c| c == 0) {
            return true;
        }
        v = l.p_power(&v);
    }
    v.iter().all(|&c| c == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementAnalysis {
    pub is_toral: bool,
    pub is_p_nilpotent: bool,
    pub semisimple_part: Vector,
    pub nilpotent_part: Vector,
    /// `x, x^[p], x^[p²], …` up to the first dependent term.
    pub envelope: Vec<Vector>,
    /// Basis of the fixed points of the p-map on the semisimple part of the
    /// envelope; these are toral.
    pub toral_basis: Vec<Vector>,
}

/// Fitting decomposition of the p-map on the p-envelope of `x`. The
/// envelope is abelian, so the p-map is GF(p)-linear there.
pub fn element_analysis(l: &RestrictedLie, x: &[u32]) -> Result<ElementAnalysis, LieError> {
    let f = l.field();
    let n = l.dim();
    let mut envelope: Vec<Vector> = Vec::new();
    let mut cur = x.to_vec();
    let next_coords = loop {
        if envelope.is_empty() && cur.iter().all(|&c| c == 0) {
            break Vec::new();
        }
        if !envelope.is_empty() {
            let solver = SpanSolver::new(f, n, &envelope);
            if let Some(c) = solver.solve(&cur) {
                break c;
            }
        }
        envelope.push(cur.clone());
        cur = l.p_power(&cur);
    };
    let d = envelope.len();
    // companion matrix of the p-map in the basis x, x^[p], …
    let phi = Mat::from_fn(f, d, d, |r, c| {
        if c + 1 < d {
            u32::from(r == c + 1)
        } else {
            next_coords[r]
        }
    });
    let to_l = |coords: &[u32]| -> Vector {
        let mut v = vec![0u32; n];
        for (c, e) in coords.iter().zip(&envelope) {
            axpy(f, &mut v, *c, e);
        }
        v
    };
    let (semisimple_part, nilpotent_part, toral_basis) = if d == 0 {
        (vec![0; n], vec![0; n], Vec::new())
    } else {
        let stable = phi.pow(d as u32);
        let nil = stable.kernel();
        let image = Subspace::from_spanning(f, d, &stable.transpose().to_rows());
        let mut rows = nil.basis().to_vec();
        rows.extend(image.basis().iter().cloned());
        let solver = SpanSolver::new(f, d, &rows);
        let mut e0 = vec![0u32; d];
        e0[0] = 1;
        let sol = solver.solve(&e0).expect("Fitting decomposition spans");
        let k = nil.dim();
        let mut nil_part = vec![0u32; d];
        for (c, v) in sol[..k].iter().zip(nil.basis()) {
            axpy(f, &mut nil_part, *c, v);
        }
        let ss_part: Vec<u32> = e0
            .iter()
            .zip(&nil_part)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        let fixed = phi.sub(&Mat::identity(f, d)).kernel();
        let toral: Vec<Vector> = fixed.basis().iter().map(|v| to_l(v)).collect();
        let toral = Subspace::from_spanning(f, n, &toral).basis().to_vec();
        (to_l(&ss_part), to_l(&nil_part), toral)
    };
    Ok(ElementAnalysis {
        is_toral: l.p_power(x) == x,
        is_p_nilpotent: is_p_nilpotent(l, x),
        semisimple_part,
        nilpotent_part,
        envelope,
        toral_basis,
    })
}

/// Solvable, with a nilpotent derived subalgebra whose basis elements are
/// all p-nilpotent.
pub fn is_trigonalizable(l: &RestrictedLie) -> bool {
    let s = series_and_predicates(l);
    if !s.is_solvable {
        return false;
    }
    let d = derived_subalgebra(l);
    // lower central series of [L,L] inside L
    let mut cur = d.clone();
    for _ in 0..=l.dim() {
        if cur.is_zero() {
            break;
        }
        cur = bracket_span(l, &d, &cur);
    }
    cur.is_zero() && d.basis().iter().all(|v| is_p_nilpotent(l, v))
}

/// Isomorphism invariants used to recognize model algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub center_dim: usize,
    pub is_simple: bool,
    pub mu: usize,
    /// `|{x : x^[p] = 0}|`, when `p^dim` is small enough to enumerate.
    pub nullcone_size: Option<u64>,
    /// `|{x : x^[p] = x}|`, likewise.
    pub toral_count: Option<u64>,
}

pub fn fingerprint(l: &RestrictedLie) -> Result<Fingerprint, LieError> {
    let s = series_and_predicates(l);
    let total = (l.p() as u64)
        .checked_pow(l.dim() as u32)
        .unwrap_or(u64::MAX);
    let (nullcone_size, toral_count) = if total <= EXHAUSTIVE_LIMIT {
        let mut zero = 0u64;
        let mut toral = 0u64;
        for v in Subspace::full(l.field(), l.dim()).enumerate() {
            let q = l.p_power(&v);
            zero += u64::from(q.iter().all(|&c| c == 0));
            toral += u64::from(q == v);
        }
        (Some(zero), Some(toral))
    } else {
        (None, None)
    };
    Ok(Fingerprint {
        dim: l.dim(),
        derived_series: s.derived_series,
        lower_central_series: s.lower_central_series,
        center_dim: s.center.dim(),
        is_simple: is_simple(l)?,
        mu: greedy_maximal_torus(l, TORUS_SEED)?.mu(),
        nullcone_size,
        toral_count,
    })
}

pub fn same_fingerprint(a: &RestrictedLie, b: &RestrictedLie) -> Result<bool, LieError> {
    Ok(a.p() == b.p() && fingerprint(a)? == fingerprint(b)?)
}

#[derive(Clone, Debug)]
pub struct NilpotentIdealWitness {
    pub lie: RestrictedLie,
    pub n_ideal: Subspace,
    pub quotient: RestrictedLie,
    pub is_ideal: bool,
    /// Every basis element of the ideal is p-nilpotent and the ideal is a
    /// nilpotent Lie algebra.
    pub is_p_nilpotent: bool,
    /// No nonzero toral element in the ideal.
    pub toral_free: bool,
    /// Whether `toral_free` came from full enumeration.
    pub toral_free_exhaustive: bool,
    pub ideal_mu: usize,
    pub quotient_matches_witt: bool,
}

/// The ideal spanned by `x^α ∂_k` with some `α_i ≥ p` in the derivation
/// algebra of `k[x_1..x_n]/(x_i^{p^{a_i}})`, and the quotient by it.
pub fn nilpotent_ideal_witness(
    p: u32,
    exponents: &[u32],
) -> Result<NilpotentIdealWitness, LieError> {
    let field = crate::linalg::Fp::new(p)?;
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(LieError::Precondition(
            "exponents must be positive and nonempty".into(),
        ));
    }
    let a = truncated_polynomial(field, exponents)?;
    let h = hh1(&a)?;
    let lie = RestrictedLie::from_hh1(&h)?;
    let pres = a.presentation().ok_or_else(|| {
        LieError::Precondition("truncated polynomial algebra without presentation".into())
    })?;
    let nvars = exponents.len();
    let dim = a.dim();
    let mut classes = Vec::new();
    for (m, word) in pres.basis_words.iter().enumerate() {
        let mut alpha = vec![0u32; nvars];
        for &g in word {
            alpha[g] += 1;
        }
        if alpha.iter().all(|&e| e < p) {
            continue;
        }
        for k in 0..nvars {
            let mut coords = vec![0u32; h.system().coord_len()];
            coords[k * dim + m] = 1;
            classes.push(h.class_of_coords(&coords)?);
        }
    }
    let n_ideal = Subspace::from_spanning(field, lie.dim(), &classes);
    let is_ideal = lie.is_ideal(&n_ideal);
    let sub = lie.subalgebra(&n_ideal)?;
    let sub_series = series_and_predicates(&sub);
    let is_p_nilpotent =
        sub_series.is_nilpotent && n_ideal.basis().iter().all(|v| is_p_nilpotent(&lie, v));
    let total = (p as u64)
        .checked_pow(n_ideal.dim() as u32)
        .unwrap_or(u64::MAX);
    let toral_free_exhaustive = total <= EXHAUSTIVE_LIMIT;
    let toral_free = if toral_free_exhaustive {
        n_ideal
            .enumerate()
            .all(|v| v.iter().all(|&c| c == 0) || lie.p_power(&v) != v)
    } else {
        is_p_nilpotent
    };
    let ideal_mu = greedy_maximal_torus(&sub, TORUS_SEED)?.mu();
    let quotient = lie.quotient(&n_ideal)?;
    let quotient_matches_witt = same_fingerprint(&quotient, &witt(field, nvars)?)?;
    Ok(NilpotentIdealWitness {
        lie,
        n_ideal,
        quotient,
        is_ideal,
        is_p_nilpotent,
        toral_free,
        toral_free_exhaustive,
        ideal_mu,
        quotient_matches_witt,
    })
}
