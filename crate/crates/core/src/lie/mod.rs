//! Abstract restricted Lie algebras over GF(p): bracket structure constants
//! plus p-map images of the basis, with the Jacobson formula for arbitrary
//! elements.

mod analysis;
mod meataxe;
mod models;
mod torus;

pub use analysis::{
    center, derived_subalgebra, element_analysis, fingerprint, is_p_nilpotent, is_trigonalizable,
    nilpotent_ideal_witness, same_fingerprint, series_and_predicates, ElementAnalysis, Fingerprint,
    NilpotentIdealWitness, Series,
};
pub use meataxe::{adjoint_irreducibility, is_simple, is_simple_seeded, Irreducibility};
pub use models::{from_matrix_basis, gl2, sl2, witt};
pub use torus::{
    all_toral_elements, exhaustive_toral_rank, greedy_maximal_torus, MaximalityStatus,
    ToralCertificate, TorusReport, EXHAUSTIVE_LIMIT,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::hochschild::{HH1Presentation, HochschildError};
use crate::linalg::{axpy, Fp, LinalgError, Mat, SpanSolver, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error("bracket is not antisymmetric at ({0}, {1})")]
    AntisymmetryViolation(usize, usize),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("ad(b^[p]) != ad(b)^p for basis element {0}")]
    RestrictednessViolation(usize),
    #[error("subspace is not closed: {0}")]
    NotClosed(String),
    #[error("malformed Lie algebra data: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("irreducibility test gave no verdict within {0} attempts")]
    Inconclusive(usize),
}

pub type Vector = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedLie {
    field: Fp,
    labels: Vec<String>,
    // bracket[i][j] = [b_i, b_j]
    bracket: Vec<Vec<Vector>>,
    pmap: Vec<Vector>,
}

impl RestrictedLie {
    /// Builds and validates: antisymmetry, Jacobi on all basis triples, and
    /// `ad(b_i^[p]) = ad(b_i)^p`.
    pub fn new(
        field: Fp,
        labels: Vec<String>,
        bracket: Vec<Vec<Vector>>,
        pmap: Vec<Vector>,
    ) -> Result<Self, LieError> {
        let n = labels.len();
        let shape_ok = bracket.len() == n
            && bracket
                .iter()
                .all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && pmap.len() == n
            && pmap.iter().all(|v| v.len() == n);
        if !shape_ok {
            return Err(LieError::Malformed(
                "table shapes do not match the basis".into(),
            ));
        }
        let reduce = |v: Vector| -> Vector { v.into_iter().map(|x| x % field.p()).collect() };
        let l = RestrictedLie {
            field,
            labels,
            bracket: bracket
                .into_iter()
                .map(|r| r.into_iter().map(reduce).collect())
                .collect(),
            pmap: pmap.into_iter().map(reduce).collect(),
        };
        l.validate()?;
        Ok(l)
    }

    /// The restricted Lie algebra carried by an `HH¹` computation.
    pub fn from_hh1(h: &HH1Presentation) -> Result<Self, LieError> {
        RestrictedLie::new(
            h.algebra().field(),
            h.complement_labels().to_vec(),
            h.bracket_table().clone(),
            h.pmap_table().clone(),
        )
    }

    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim();
        let f = self.field;
        for i in 0..n {
            if self.bracket[i][i].iter().any(|&c| c != 0) {
                return Err(LieError::AntisymmetryViolation(i, i));
            }
            for j in i + 1..n {
                let neg: Vector = self.bracket[j][i].iter().map(|&c| f.neg(c)).collect();
                if self.bracket[i][j] != neg {
                    return Err(LieError::AntisymmetryViolation(i, j));
                }
            }
        }
        let ads: Vec<Mat> = (0..n).map(|i| self.ad_matrix(&self.basis_vec(i))).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    // [b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]]
                    let mut s = ads[i].mul_vec(&self.bracket[j][k]);
                    axpy(f, &mut s, 1, &ads[j].mul_vec(&self.bracket[k][i]));
                    axpy(f, &mut s, 1, &ads[k].mul_vec(&self.bracket[i][j]));
                    if s.iter().any(|&c| c != 0) {
                        return Err(LieError::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            if self.ad_matrix(&self.pmap[i]) != ads[i].pow(f.p()) {
                return Err(LieError::RestrictednessViolation(i));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pmap_basis(&self) -> &[Vector] {
        &self.pmap
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[u32] {
        &self.bracket[i][j]
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vector {
        let f = self.field;
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    axpy(f, &mut out, f.mul(a, b), &self.bracket[i][j]);
                }
            }
        }
        out
    }

    /// Matrix of `ad x`, columns `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[u32]) -> Mat {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.bracket(x, &self.basis_vec(j)))
            .collect();
        Mat::from_fn(self.field, n, n, |r, c| cols[c][r])
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket
            .iter()
            .all(|r| r.iter().all(|v| v.iter().all(|&c| c == 0)))
    }

    /// `x^[p]` by the Jacobson formula, folding over the basis expansion:
    /// `(u + v)^[p] = u^[p] + v^[p] + Σ s_i(u, v)`, where `i·s_i` is the
    /// coefficient of `t^{i−1}` in `ad(tu + v)^{p−1}(u)`.
    pub fn p_power(&self, x: &[u32]) -> Vector {
        let f = self.field;
        let mut acc = self.zero();
        let mut acc_p = self.zero();
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut term = self.zero();
            term[i] = c;
            // (c b)^[p] = c^p b^[p] = c b^[p] over GF(p)
            let term_p: Vector = self.pmap[i].iter().map(|&v| f.mul(c, v)).collect();
            let mixed = self.jacobson_sum(&acc, &term);
            acc_p = self.add(&self.add(&acc_p, &term_p), &mixed);
            acc = self.add(&acc, &term);
        }
        acc_p
    }

    /// `Σ_{i=1}^{p−1} s_i(u, v)`.
    pub fn jacobson_sum(&self, u: &[u32], v: &[u32]) -> Vector {
        let f = self.field;
        let p = f.p() as usize;
        if u.iter().all(|&c| c == 0) || v.iter().all(|&c| c == 0) {
            return self.zero();
        }
        // polynomial in t with vector coefficients; start with u (degree 0)
        let mut poly: Vec<Vector> = vec![u.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (d, coef) in poly.iter().enumerate() {
                // [t u + v, coef t^d] = t^{d+1}[u, coef] + t^d [v, coef]
                let hi = self.bracket(u, coef);
                let lo = self.bracket(v, coef);
                axpy(f, &mut next[d + 1], 1, &hi);
                axpy(f, &mut next[d], 1, &lo);
            }
            poly = next;
        }
        let mut out = self.zero();
        for i in 1..p {
            if let Some(coef) = poly.get(i - 1) {
                axpy(f, &mut out, f.inv(i as u32 % f.p()), coef);
            }
        }
        out
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vector {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vector {
        x.iter()
            .zip(y)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect()
    }

    /// Ideal generated by nothing more than being closed under `ad b_i`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| (0..self.dim()).all(|i| s.contains(&self.bracket(&self.basis_vec(i), v))))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter()
            .enumerate()
            .all(|(i, x)| b[i + 1..].iter().all(|y| s.contains(&self.bracket(x, y))))
    }

    /// Closed under the p-map on a basis; with closure under brackets this
    /// gives closure for all elements.
    pub fn is_p_closed(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| s.contains(&self.p_power(v)))
    }

    /// Restricted subalgebra on the canonical basis of `s`.
    pub fn subalgebra(&self, s: &Subspace) -> Result<RestrictedLie, LieError> {
        if !self.is_subalgebra(s) {
            return Err(LieError::NotClosed("bracket leaves the subspace".into()));
        }
        if !self.is_p_closed(s) {
            return Err(LieError::NotClosed("p-map leaves the subspace".into()));
        }
        let basis = s.basis();
        let coords = |v: &[u32]| s.coords(v).expect("closed subspace");
        let k = basis.len();
        let bracket = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| coords(&self.bracket(&basis[i], &basis[j])))
                    .collect()
            })
            .collect();
        let pmap = basis.iter().map(|b| coords(&self.p_power(b))).collect();
        let labels = s.pivots().iter().map(|&c| self.labels[c].clone()).collect();
        RestrictedLie::new(self.field, labels, bracket, pmap)
    }

    /// `L / I` for a p-ideal `I`, on the canonical complement of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<RestrictedLie, LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotClosed("not an ideal".into()));
        }
        if !self.is_p_closed(ideal) {
            return Err(LieError::NotClosed("not closed under the p-map".into()));
        }
        let n = self.dim();
        let reps = Subspace::full(self.field, n).quotient_basis(ideal)?;
        let k = reps.len();
        let mut rows = reps.clone();
        rows.extend(ideal.basis().iter().cloned());
        let solver = SpanSolver::new(self.field, n, &rows);
        let class = |v: &[u32]| -> Vector { solver.solve(v).expect("spans L")[..k].to_vec() };
        let bracket = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| class(&self.bracket(&reps[i], &reps[j])))
                    .collect()
            })
            .collect();
        let pmap = reps.iter().map(|r| class(&self.p_power(r))).collect();
        let labels = reps
            .iter()
            .map(|r| self.labels[r.iter().position(|&c| c != 0).unwrap_or(0)].clone())
            .collect();
        RestrictedLie::new(self.field, labels, bracket, pmap)
    }

    pub fn to_json(&self) -> LieJson {
        let n = self.dim();
        let mut bracket = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, &c) in self.bracket[i][j].iter().enumerate() {
                    if c != 0 {
                        bracket.push([i as i64, j as i64, k as i64, c as i64]);
                    }
                }
            }
        }
        LieJson {
            p: self.p(),
            labels: self.labels.clone(),
            bracket,
            pmap: self
                .pmap
                .iter()
                .map(|v| v.iter().map(|&c| c as i64).collect())
                .collect(),
        }
    }
}

/// Wire format: `bracket` lists every nonzero `[b_i, b_j]` coefficient as
/// `[i, j, k, c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieJson {
    pub p: u32,
    pub labels: Vec<String>,
    pub bracket: Vec<[i64; 4]>,
    pub pmap: Vec<Vec<i64>>,
}

impl LieJson {
    pub fn to_lie(&self) -> Result<RestrictedLie, LieError> {
        let f = Fp::new(self.p)?;
        let n = self.labels.len();
        let mut bracket = vec![vec![vec![0u32; n]; n]; n];
        for t in &self.bracket {
            let idx: Vec<usize> = t[..3]
                .iter()
                .map(|&x| usize::try_from(x).ok().filter(|&x| x < n))
                .collect::<Option<_>>()
                .ok_or_else(|| LieError::Malformed(format!("bad triple {t:?}")))?;
            let cell = &mut bracket[idx[0]][idx[1]][idx[2]];
            *cell = f.add(*cell, f.reduce(t[3]));
        }
        let pmap = self
            .pmap
            .iter()
            .map(|v| v.iter().map(|&c| f.reduce(c)).collect())
            .collect();
        RestrictedLie::new(f, self.labels.clone(), bracket, pmap)
    }
}
