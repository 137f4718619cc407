//! Irreducibility of the adjoint module by Norton's test: pick random
//! elements `θ` of the enveloping algebra of `ad L` until one has a small
//! nullspace, then spin nullspace vectors of `θ` and of `θᵀ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LieError, RestrictedLie, Vector};
use crate::linalg::{axpy, Fp, Mat, Subspace};

const MAX_ATTEMPTS: usize = 500;
const MAX_NULLITY: usize = 3;
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero `ad`-invariant subspace, i.e. an ideal.
    Reducible(Subspace),
}

struct Echelon {
    field: Fp,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    fn new(field: Fp) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    /// Adds `v` if independent; returns whether it was.
    fn insert(&mut self, mut v: Vector) -> bool {
        let f = self.field;
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                axpy(f, &mut v, f.neg(c), row);
            }
        }
        match v.iter().position(|&c| c != 0) {
            Some(piv) => {
                let inv = f.inv(v[piv]);
                v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                self.rows.push((piv, v));
                true
            }
            None => false,
        }
    }
}

/// Smallest subspace containing `v` and stable under every matrix in `gens`.
fn spin(field: Fp, v: &[u32], gens: &[Mat]) -> Subspace {
    let mut ech = Echelon::new(field);
    let mut found = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if ech.insert(w.clone()) {
            for g in gens {
                queue.push(g.mul_vec(&w));
            }
            found.push(w);
        }
    }
    Subspace::from_spanning(field, v.len(), &found)
}

/// Nonzero vectors of `s` with leading coefficient 1.
fn projective_points(s: &Subspace) -> impl Iterator<Item = Vector> + '_ {
    s.enumerate()
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
}

pub fn adjoint_irreducibility(l: &RestrictedLie, seed: u64) -> Result<Irreducibility, LieError> {
    let f = l.field();
    let n = l.dim();
    if n == 0 {
        return Ok(Irreducibility::Irreducible);
    }
    let gens: Vec<Mat> = (0..n).map(|i| l.ad_matrix(&l.basis_vec(i))).collect();
    let gens_t: Vec<Mat> = gens.iter().map(Mat::transpose).collect();
    if gens.iter().all(Mat::is_zero) {
        // every subspace is invariant
        if n == 1 {
            return Ok(Irreducibility::Irreducible);
        }
        return Ok(Irreducibility::Reducible(Subspace::from_spanning(
            f,
            n,
            &[l.basis_vec(0)],
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Mat> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let identity = Mat::identity(f, n);
    for _ in 0..MAX_ATTEMPTS {
        let a = rng.gen_range(0..pool.len());
        let b = rng.gen_range(0..pool.len());
        let prod = pool[a].mul(&pool[b]);
        pool.push(prod);
        let mut theta = Mat::zeros(f, n, n);
        for m in &pool {
            theta.add_scaled(m, rng.gen_range(0..f.p()));
        }
        for c in f.elements() {
            let shifted = theta.sub(&identity.scale(c));
            let null = shifted.kernel();
            if null.is_zero() || null.dim() > MAX_NULLITY {
                continue;
            }
            for v in projective_points(&null) {
                let u = spin(f, &v, &gens);
                if u.dim() < n {
                    return Ok(Irreducibility::Reducible(u));
                }
            }
            let null_t = shifted.transpose().kernel();
            let w = projective_points(&null_t)
                .next()
                .expect("square matrix with a kernel");
            let dual = spin(f, &w, &gens_t);
            if dual.dim() < n {
                return Ok(Irreducibility::Reducible(dual.annihilator()));
            }
            return Ok(Irreducibility::Irreducible);
        }
        if pool.len() > 4 * n + 16 {
            pool.truncate(n);
        }
    }
    Err(LieError::Inconclusive(MAX_ATTEMPTS))
}

/// Nonabelian with irreducible adjoint module.
pub fn is_simple_seeded(l: &RestrictedLie, seed: u64) -> Result<bool, LieError> {
    if l.is_abelian() {
        return Ok(false);
    }
    Ok(adjoint_irreducibility(l, seed)? == Irreducibility::Irreducible)
}

pub fn is_simple(l: &RestrictedLie) -> Result<bool, LieError> {
    is_simple_seeded(l, DEFAULT_SEED)
}
