use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::analysis::element_analysis;
use super::{LieError, RestrictedLie, Vector};
use crate::linalg::{Mat, Subspace};

/// Exhaustive enumeration runs when `p^dim` is at most this.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

const RANDOM_CANDIDATES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToralCertificate {
    pub element: Vector,
    pub p_image: Vector,
    pub commutes_with_previous: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalityStatus {
    /// No extension found by the greedy search; `dim` is a lower bound.
    GreedyMaximal,
    /// Every toral element was enumerated; `dim` is the maximal torus
    /// dimension over GF(p).
    ExhaustivelyCertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusReport {
    pub torus_basis: Vec<Vector>,
    pub dim: usize,
    /// Dimension reached by the greedy search alone.
    pub greedy_dim: usize,
    pub certificates: Vec<ToralCertificate>,
    pub maximality_status: MaximalityStatus,
}

impl TorusReport {
    pub fn mu(&self) -> usize {
        self.dim
    }
}

/// Centralizer of a list of elements.
fn centralizer(l: &RestrictedLie, elems: &[Vector]) -> Subspace {
    let n = l.dim();
    if elems.is_empty() {
        return Subspace::full(l.field(), n);
    }
    // stack ad(t) matrices; kernel of the stack
    let mut rows = Vec::new();
    for t in elems {
        rows.extend(l.ad_matrix(t).to_rows());
    }
    Mat::from_residue_rows(l.field(), n, &rows).kernel()
}

/// Grows a torus one toral element at a time, drawing candidates from the
/// current centralizer: its basis, then seeded random elements. A candidate
/// contributes the fixed points of the p-map on the semisimple part of its
/// p-envelope.
pub fn greedy_maximal_torus(l: &RestrictedLie, seed: u64) -> Result<TorusReport, LieError> {
    let f = l.field();
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut torus: Vec<Vector> = Vec::new();
    let mut span = Subspace::zero(f, n);
    'grow: loop {
        let c = centralizer(l, &torus);
        let mut candidates: Vec<Vector> = c.basis().to_vec();
        for _ in 0..RANDOM_CANDIDATES {
            let mut x = vec![0u32; n];
            for b in c.basis() {
                let s = rng.gen_range(0..f.p());
                crate::linalg::axpy(f, &mut x, s, b);
            }
            candidates.push(x);
        }
        for x in candidates {
            let an = element_analysis(l, &x)?;
            for t in an.toral_basis {
                if !span.contains(&t) {
                    span = span.sum(&Subspace::from_spanning(f, n, &[t.clone()]))?;
                    torus.push(t);
                    continue 'grow;
                }
            }
        }
        break;
    }
    let greedy_dim = torus.len();
    let total = (f.p() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    let (torus_basis, maximality_status) = if total <= EXHAUSTIVE_LIMIT {
        let (mu, best) = exhaustive_toral_rank(l);
        (
            if mu > greedy_dim { best } else { torus },
            MaximalityStatus::ExhaustivelyCertified,
        )
    } else {
        (torus, MaximalityStatus::GreedyMaximal)
    };
    Ok(TorusReport {
        dim: torus_basis.len(),
        certificates: certify(l, &torus_basis),
        torus_basis,
        greedy_dim,
        maximality_status,
    })
}

fn certify(l: &RestrictedLie, torus: &[Vector]) -> Vec<ToralCertificate> {
    torus
        .iter()
        .enumerate()
        .map(|(i, t)| ToralCertificate {
            element: t.clone(),
            p_image: l.p_power(t),
            commutes_with_previous: torus[..i]
                .iter()
                .all(|s| l.bracket(s, t).iter().all(|&c| c == 0)),
        })
        .collect()
}

/// Every `x` with `x^[p] = x`, up to scalars (leading coefficient 1).
pub fn all_toral_elements(l: &RestrictedLie) -> Vec<Vector> {
    let full = Subspace::full(l.field(), l.dim());
    full.enumerate()
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .filter(|v| l.p_power(v) == *v)
        .collect()
}

/// Maximal dimension of a torus, by depth-first search over spans of
/// pairwise commuting toral elements. Over GF(p) such a span is itself
/// toral, since the p-map is additive on abelian subalgebras.
pub fn exhaustive_toral_rank(l: &RestrictedLie) -> (usize, Vec<Vector>) {
    let f = l.field();
    let n = l.dim();
    let toral = all_toral_elements(l);
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut best: (usize, Vec<Vector>) = (0, Vec::new());
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(chosen) = stack.pop() {
        let elems: Vec<Vector> = chosen.iter().map(|&i| toral[i].clone()).collect();
        let span = Subspace::from_spanning(f, n, &elems);
        if !seen.insert(span.clone()) {
            continue;
        }
        if span.dim() > best.0 {
            best = (span.dim(), elems.clone());
        }
        for (i, t) in toral.iter().enumerate() {
            if span.contains(t)
                || elems
                    .iter()
                    .any(|s| l.bracket(s, t).iter().any(|&c| c != 0))
            {
                continue;
            }
            let mut next = chosen.clone();
            next.push(i);
            stack.push(next);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{gl2, sl2};
    use crate::linalg::Fp;

    #[test]
    fn model_tori() {
        for p in [3, 5] {
            let f = Fp::new(p).unwrap();
            let g = greedy_maximal_torus(&gl2(f).unwrap(), 1).unwrap();
            assert_eq!(g.mu(), 2);
            assert_eq!(g.maximality_status, MaximalityStatus::ExhaustivelyCertified);
            assert!(g
                .certificates
                .iter()
                .all(|c| c.p_image == c.element && c.commutes_with_previous));
            assert_eq!(greedy_maximal_torus(&sl2(f).unwrap(), 1).unwrap().mu(), 1);
        }
    }
}
