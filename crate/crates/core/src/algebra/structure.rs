use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{make_algebra, Algebra, AlgebraError, Element};
use crate::linalg::{Mat, SparseSystem, Subspace};

/// Solution space of `[z, e_i] = 0` over all basis elements.
pub fn center(a: &Algebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let mut sys = SparseSystem::new(f, n);
    for i in 0..n {
        // coefficient of e_k in Σ_m z_m (e_m e_i − e_i e_m)
        let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for m in 0..n {
            for &(k, c) in a.mul_basis(m, i) {
                rows[k as usize].push((m, c));
            }
            for &(k, c) in a.mul_basis(i, m) {
                rows[k as usize].push((m, f.neg(c)));
            }
        }
        for r in rows.into_iter().filter(|r| !r.is_empty()) {
            sys.add_equation(r);
        }
    }
    sys.kernel()
}

/// `span{e_i e_j − e_j e_i}`.
pub fn commutator_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = a.commutator(&a.basis_vec(i), &a.basis_vec(j));
            if c.iter().any(|&x| x != 0) {
                rows.push(c);
            }
        }
    }
    Subspace::from_spanning(a.field(), n, &rows)
}

/// `span{uv : u ∈ U, v ∈ V}` for subspaces given by their bases.
fn product_space(a: &Algebra, u: &Subspace, v: &Subspace) -> Subspace {
    let mut rows = Vec::new();
    for x in u.basis() {
        for y in v.basis() {
            let z = a.mul(x, y);
            if z.iter().any(|&c| c != 0) {
                rows.push(z);
            }
        }
    }
    Subspace::from_spanning(a.field(), a.dim(), &rows)
}

/// Two-sided ideal generated by `gens`.
fn ideal_closure(a: &Algebra, gens: &[Element]) -> Subspace {
    let n = a.dim();
    let mut span = Subspace::from_spanning(a.field(), n, gens);
    loop {
        let mut rows = span.basis().to_vec();
        for v in span.basis() {
            for i in 0..n {
                let e = a.basis_vec(i);
                rows.push(a.mul(&e, v));
                rows.push(a.mul(v, &e));
            }
        }
        let next = Subspace::from_spanning(a.field(), n, &rows);
        if next.dim() == span.dim() {
            return span;
        }
        span = next;
    }
}

/// Splits a commutative algebra with identity Frobenius, given modulo the
/// ideal `modulo`, into primitive idempotents. Returns `None` when some basis
/// element fails `b^p ≡ b`, i.e. the quotient is not a product of copies of
/// GF(p).
fn split_idempotents(
    a: &Algebra,
    one: &[u32],
    basis: &[Element],
    modulo: &Subspace,
) -> Option<Vec<Element>> {
    let f = a.field();
    let p = f.p() as u64;
    let red = |v: &[u32]| modulo.reduce(v);
    for b in basis {
        if red(&a.sub(&a.pow(b, p), b)).iter().any(|&c| c != 0) {
            return None;
        }
    }
    let mut idems = vec![red(one)];
    for b in basis {
        let mut next = Vec::new();
        for e in &idems {
            for c in f.elements() {
                // 1 − (b − c)^{p−1} is the indicator of the fibre b = c
                let shifted = a.sub(b, &a.scale(c, one));
                let ind = a.sub(one, &red(&a.pow(&shifted, p - 1)));
                let piece = red(&a.mul(e, &ind));
                if piece.iter().any(|&x| x != 0) {
                    next.push(piece);
                }
            }
        }
        idems = next;
    }
    Some(idems)
}

/// Structural report around the radical.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub commutator: Subspace,
    pub j: Subspace,
    pub j_squared: Subspace,
    pub commutator_in_j_squared: bool,
    /// Least `k` with `J^k = 0`.
    pub nilpotency_index: usize,
    /// Number of primitive idempotents of `A/J`, equal to `dim A/J`.
    pub simple_count: usize,
}

/// Computes `[A, A]`, the radical `J` (kernel of the counit, or the ideal
/// generated by the constructor's radical generators), `J²`, and whether
/// `[A, A] ⊆ J²`. `J` is verified nilpotent and `A/J` verified to be a
/// product of copies of GF(p) by splitting it into primitive idempotents.
pub fn commutator_and_radical_checks(a: &Algebra) -> Result<RadicalReport, AlgebraError> {
    let f = a.field();
    let n = a.dim();
    let j = if let Some(eps) = a.counit() {
        Mat::from_residue_rows(f, n, &[eps.to_vec()]).kernel()
    } else if let Some(gens) = a.radical_gens() {
        ideal_closure(a, gens)
    } else {
        return Err(AlgebraError::RadicalUnavailable);
    };
    for v in j.basis() {
        for i in 0..n {
            let e = a.basis_vec(i);
            if !j.contains(&a.mul(&e, v)) || !j.contains(&a.mul(v, &e)) {
                return Err(AlgebraError::RadicalInvalid("not a two-sided ideal".into()));
            }
        }
    }
    let j_squared = product_space(a, &j, &j);
    let mut power = j.clone();
    let mut nilpotency_index = 1;
    while !power.is_zero() {
        let next = product_space(a, &power, &j);
        if next.dim() == power.dim() {
            return Err(AlgebraError::RadicalInvalid("not nilpotent".into()));
        }
        power = next;
        nilpotency_index += 1;
    }
    let commutator = commutator_space(a);
    if !j.contains_subspace(&commutator) {
        return Err(AlgebraError::RadicalInvalid(
            "quotient is not commutative".into(),
        ));
    }
    let reps = Subspace::full(f, n).quotient_basis(&j)?;
    let idems = split_idempotents(a, a.unit(), &reps, &j)
        .ok_or_else(|| AlgebraError::RadicalInvalid("quotient is not split semisimple".into()))?;
    if idems.len() != reps.len() {
        return Err(AlgebraError::RadicalInvalid(
            "quotient is not split semisimple".into(),
        ));
    }
    let commutator_in_j_squared = j_squared.contains_subspace(&commutator);
    Ok(RadicalReport {
        commutator,
        j,
        j_squared,
        commutator_in_j_squared,
        nilpotency_index,
        simple_count: idems.len(),
    })
}

#[derive(Clone, Debug)]
pub struct Block {
    /// Central primitive idempotent cutting out the block.
    pub idempotent: Element,
    pub algebra: Algebra,
}

/// Block decomposition by central primitive idempotents.
///
/// `J(Z)` is the kernel of `z ↦ z^{p^e}` on the center with `p^e ≥ dim A`;
/// idempotents of `Z/J(Z)` are lifted by `e ← 3e² − 2e³`.
pub fn block_decomposition(a: &Algebra) -> Result<Vec<Block>, AlgebraError> {
    let f = a.field();
    let n = a.dim();
    let z = center(a);
    let mut q: u64 = f.p() as u64;
    while (q as usize) < n {
        q *= f.p() as u64;
    }
    let images: Vec<Element> = z.basis().iter().map(|b| a.pow(b, q)).collect();
    let frob = Mat::from_fn(f, n, z.dim(), |r, c| images[c][r]);
    let kernel = frob.kernel();
    let jz_rows: Vec<Element> = kernel
        .basis()
        .iter()
        .map(|coef| {
            let mut v = a.zero();
            for (c, b) in coef.iter().zip(z.basis()) {
                crate::linalg::axpy(f, &mut v, *c, b);
            }
            v
        })
        .collect();
    let jz = Subspace::from_spanning(f, n, &jz_rows);
    let reps = z.quotient_basis(&jz)?;
    let idems = split_idempotents(a, a.unit(), &reps, &jz).ok_or(AlgebraError::NonSplitCenter)?;
    if idems.len() != reps.len() {
        return Err(AlgebraError::NonSplitCenter);
    }
    let mut blocks = Vec::with_capacity(idems.len());
    for e0 in idems {
        let mut e = e0;
        loop {
            let e2 = a.mul(&e, &e);
            if e2 == e {
                break;
            }
            let e3 = a.mul(&e2, &e);
            e = a.sub(&a.scale(3, &e2), &a.scale(2, &e3));
        }
        let algebra = corner(a, &e)?;
        blocks.push(Block {
            idempotent: e,
            algebra,
        });
    }
    let total = blocks
        .iter()
        .fold(a.zero(), |acc, b| a.add(&acc, &b.idempotent));
    if total != a.unit() {
        return Err(AlgebraError::NonSplitCenter);
    }
    Ok(blocks)
}

/// `eA` for a central idempotent `e`, in the canonical basis of that
/// subspace; labels come from the pivot columns.
fn corner(a: &Algebra, e: &[u32]) -> Result<Algebra, AlgebraError> {
    let n = a.dim();
    let f = a.field();
    let rows: Vec<Element> = (0..n).map(|i| a.mul(e, &a.basis_vec(i))).collect();
    let sub = Subspace::from_spanning(f, n, &rows);
    let coords = |v: &[u32]| sub.coords(v).expect("corner is closed under products");
    let basis = sub.basis();
    let mut mult = Vec::new();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            for (k, c) in coords(&a.mul(x, y)).into_iter().enumerate() {
                if c != 0 {
                    mult.push((i, j, k, c as i64));
                }
            }
        }
    }
    let labels = sub
        .pivots()
        .iter()
        .map(|&c| a.labels()[c].clone())
        .collect();
    let mut out =
        make_algebra(f, labels, &mult, coords(e))?.with_name(format!("block of {}", a.name()));
    if let Some(gens) = a.radical_gens() {
        let g: Vec<Element> = gens
            .iter()
            .map(|g| coords(&a.mul(e, g)))
            .filter(|v| v.iter().any(|&c| c != 0))
            .collect();
        out = out.with_radical_gens(g)?;
    }
    if let Some(eps) = a.counit() {
        let apply = |v: &[u32]| {
            v.iter()
                .zip(eps)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        };
        if apply(e) == 1 {
            out = out.with_counit(basis.iter().map(|b| apply(b)).collect())?;
        }
    }
    Ok(out)
}

/// Associative symmetric form `B(a, b) = τ(ab)`.
#[derive(Clone, Debug)]
pub struct SymmetricForm {
    pub tau: Vec<u32>,
    pub gram: Mat,
}

impl SymmetricForm {
    pub fn pairing(&self, a: &[u32], b: &[u32]) -> u32 {
        let f = self.gram.field();
        let gb = self.gram.mul_vec(b);
        a.iter()
            .zip(&gb)
            .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.gram.rows()
    }
}

fn gram_of(a: &Algebra, tau: &[u32]) -> Mat {
    let f = a.field();
    let n = a.dim();
    Mat::from_fn(f, n, n, |i, j| {
        a.mul_basis(i, j)
            .iter()
            .fold(0, |acc, &(k, c)| f.add(acc, f.mul(c, tau[k as usize])))
    })
}

/// Every associative symmetric form is `τ(ab)` with `τ` vanishing on
/// `[A, A]`, so the solution space is the annihilator of the commutator
/// space. Samples `trials` seeded elements and returns the first
/// nondegenerate one; `None` means "not found", not "not symmetric".
pub fn symmetric_form_search(a: &Algebra, trials: usize, seed: u64) -> Option<SymmetricForm> {
    let f = a.field();
    let space = commutator_space(a).annihilator();
    if space.is_zero() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut tau = a.zero();
        for b in space.basis() {
            let c = rng.gen_range(0..f.p());
            crate::linalg::axpy(f, &mut tau, c, b);
        }
        let form = SymmetricForm {
            gram: gram_of(a, &tau),
            tau,
        };
        if form.is_nondegenerate() {
            return Some(form);
        }
    }
    None
}

/// Direct solve of `B(e_i e_j, e_k) = B(e_i, e_j e_k)`, `B_{ij} = B_{ji}` in
/// the `dim²` Gram entries. Intended as an oracle for small algebras.
pub fn associative_symmetric_forms(a: &Algebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let var = |i: usize, j: usize| i * n + j;
    let mut sys = SparseSystem::new(f, n * n);
    for i in 0..n {
        for j in i + 1..n {
            sys.add_equation(vec![(var(i, j), 1), (var(j, i), f.neg(1))]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut eq: Vec<(usize, u32)> = Vec::new();
                for &(m, c) in a.mul_basis(i, j) {
                    eq.push((var(m as usize, k), c));
                }
                for &(m, c) in a.mul_basis(j, k) {
                    eq.push((var(i, m as usize), f.neg(c)));
                }
                if !eq.is_empty() {
                    sys.add_equation(eq);
                }
            }
        }
    }
    sys.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        kronecker, smash_product, split_semisimple, trivial_extension, truncated_polynomial,
        u0_borel,
    };
    use crate::linalg::Fp;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn center_of_commutative_is_everything() {
        let a = truncated_polynomial(f(3), &[1, 1]).unwrap();
        assert_eq!(center(&a).dim(), 9);
    }

    #[test]
    fn center_of_smash_matches_power_span() {
        let (a, d) = smash_product(f(3), 2, 1).unwrap();
        let z = center(&a);
        assert_eq!(z.dim(), 3);
        for k in 0..3 {
            assert!(z.contains(&d.x_power(3 * k)));
        }
    }

    #[test]
    fn center_of_trivial_extension_kronecker() {
        let t = trivial_extension(&kronecker(f(3)).unwrap()).unwrap();
        let z = center(&t);
        // 1 plus the two socle elements e1*, e2*
        assert_eq!(z.dim(), 3);
        assert!(z.contains(t.unit()));
        assert!(z.contains(&t.basis_vec(4)));
        assert!(z.contains(&t.basis_vec(5)));
    }

    #[test]
    fn radical_of_truncated() {
        let a = truncated_polynomial(f(3), &[2]).unwrap();
        let r = commutator_and_radical_checks(&a).unwrap();
        assert!(r.commutator.is_zero());
        assert!(r.commutator_in_j_squared);
        assert_eq!(r.j.dim(), 8);
        assert_eq!(r.j_squared.dim(), 7);
        assert_eq!(r.nilpotency_index, 9);
    }

    #[test]
    fn radical_of_u0_borel_reports() {
        let a = u0_borel(f(3), 1).unwrap();
        let r = commutator_and_radical_checks(&a).unwrap();
        assert_eq!(r.j.dim(), 6);
        assert_eq!(r.simple_count, 3);
        // [t, x] = x lies in J but not in J²
        assert!(!r.commutator_in_j_squared);
    }

    #[test]
    fn missing_radical_data() {
        let a = truncated_polynomial(f(3), &[1]).unwrap();
        let t = trivial_extension(&a).unwrap();
        assert!(commutator_and_radical_checks(&t).is_ok());
        let bare = crate::algebra::AlgebraJson::parse(
            r#"{"p":3,"labels":["e"],"unit":[1],"mult":[[0,0,0,1]],"radical_gens":null,"counit":null}"#,
        )
        .unwrap();
        assert!(matches!(
            commutator_and_radical_checks(&bare),
            Err(AlgebraError::RadicalUnavailable)
        ));
    }

    #[test]
    fn bad_radical_generators_rejected() {
        let a = truncated_polynomial(f(3), &[1]).unwrap();
        let mut j = crate::algebra::AlgebraJson::from(&a);
        j.counit = None;
        j.radical_gens = Some(vec![vec![1, 0, 0]]);
        let bogus = j.to_algebra().unwrap();
        assert!(matches!(
            commutator_and_radical_checks(&bogus),
            Err(AlgebraError::RadicalInvalid(_))
        ));
    }

    #[test]
    fn blocks_of_split_semisimple() {
        let a = split_semisimple(f(3), 3).unwrap();
        let blocks = block_decomposition(&a).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.algebra.dim() == 1));
    }

    #[test]
    fn local_and_borel_have_one_block() {
        let a = truncated_polynomial(f(3), &[1, 1]).unwrap();
        assert_eq!(block_decomposition(&a).unwrap().len(), 1);
        let b = u0_borel(f(3), 1).unwrap();
        let blocks = block_decomposition(&b).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].algebra.dim(), 9);
    }

    #[test]
    fn symmetric_forms() {
        let a = truncated_polynomial(f(3), &[1]).unwrap();
        let form = symmetric_form_search(&a, 64, 7).unwrap();
        assert!(form.is_nondegenerate());
        // the Frobenius form δ_{i+j,2} is associative and symmetric
        let frob = Mat::from_fn(f(3), 3, 3, |i, j| u32::from(i + j == 2));
        let flat: Vec<u32> = frob.data().to_vec();
        assert!(associative_symmetric_forms(&a).contains(&flat));

        let s = split_semisimple(f(3), 2).unwrap();
        assert!(symmetric_form_search(&s, 64, 1).is_some());
        let t = trivial_extension(&kronecker(f(3)).unwrap()).unwrap();
        assert!(symmetric_form_search(&t, 64, 1).is_some());
    }

    #[test]
    fn tau_parametrization_matches_dense_solve() {
        for a in [
            truncated_polynomial(f(3), &[1, 1]).unwrap(),
            u0_borel(f(3), 1).unwrap(),
            trivial_extension(&kronecker(f(3)).unwrap()).unwrap(),
            smash_product(f(3), 1, 1).unwrap().0,
        ] {
            let dense = associative_symmetric_forms(&a);
            assert_eq!(
                dense.dim(),
                commutator_space(&a).annihilator().dim(),
                "{}",
                a.name()
            );
        }
    }
}
