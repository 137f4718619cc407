use super::HochschildError;
use crate::algebra::{Algebra, Element};
use crate::linalg::{Mat, SparseSystem, Subspace};

/// Linear endomorphism of an algebra satisfying the Leibniz rule; column `j`
/// of the matrix is the image of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    matrix: Mat,
}

impl Derivation {
    /// Checks shape and the Leibniz rule on every basis pair.
    pub fn from_matrix(a: &Algebra, matrix: Mat) -> Result<Self, HochschildError> {
        if matrix.rows() != a.dim() || matrix.cols() != a.dim() || matrix.field() != a.field() {
            return Err(HochschildError::DimensionMismatch);
        }
        if let Some((i, j)) = leibniz_violation(a, &matrix) {
            return Err(HochschildError::LeibnizViolation(i, j));
        }
        Ok(Derivation { matrix })
    }

    pub(crate) fn unchecked(matrix: Mat) -> Self {
        Derivation { matrix }
    }

    /// `ad x : y ↦ xy − yx`.
    pub fn inner(a: &Algebra, x: &[u32]) -> Self {
        Derivation {
            matrix: a.ad_matrix(x),
        }
    }

    pub fn zero(a: &Algebra) -> Self {
        Derivation {
            matrix: Mat::zeros(a.field(), a.dim(), a.dim()),
        }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[u32]) -> Element {
        self.matrix.mul_vec(v)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation {
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, c: u32) -> Derivation {
        Derivation {
            matrix: self.matrix.scale(c),
        }
    }

    /// Re-checks the Leibniz rule on every basis pair.
    pub fn is_derivation_of(&self, a: &Algebra) -> bool {
        self.matrix.rows() == a.dim() && leibniz_violation(a, &self.matrix).is_none()
    }
}

/// `[f, g] = f∘g − g∘f`.
pub fn bracket(f: &Derivation, g: &Derivation) -> Result<Derivation, HochschildError> {
    if f.dim() != g.dim() || f.matrix.field() != g.matrix.field() {
        return Err(HochschildError::DimensionMismatch);
    }
    let fg = f.matrix.mul(&g.matrix);
    let gf = g.matrix.mul(&f.matrix);
    Ok(Derivation {
        matrix: fg.sub(&gf),
    })
}

/// `f` composed with itself `p` times.
pub fn p_power(f: &Derivation) -> Derivation {
    let p = f.matrix.field().p();
    let mut acc = f.matrix.clone();
    for _ in 1..p {
        acc = acc.mul(&f.matrix);
    }
    Derivation { matrix: acc }
}

/// First basis pair `(i, j)` with `m(e_i e_j) ≠ m(e_i) e_j + e_i m(e_j)`.
pub fn leibniz_violation(a: &Algebra, m: &Mat) -> Option<(usize, usize)> {
    let n = a.dim();
    let f = a.field();
    let cols: Vec<Vec<(usize, u32)>> = (0..n)
        .map(|j| {
            (0..n)
                .filter_map(|i| {
                    let v = m.get(i, j);
                    (v != 0).then_some((i, v))
                })
                .collect()
        })
        .collect();
    let mut diff = vec![0u32; n];
    let mut touched: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in a.mul_basis(i, j) {
                for &(o, v) in &cols[k as usize] {
                    diff[o] = f.add(diff[o], f.mul(c, v));
                    touched.push(o);
                }
            }
            for &(mi, v) in &cols[i] {
                for &(o, c) in a.mul_basis(mi, j) {
                    let o = o as usize;
                    diff[o] = f.sub(diff[o], f.mul(c, v));
                    touched.push(o);
                }
            }
            for &(mj, v) in &cols[j] {
                for &(o, c) in a.mul_basis(i, mj) {
                    let o = o as usize;
                    diff[o] = f.sub(diff[o], f.mul(c, v));
                    touched.push(o);
                }
            }
            let bad = touched.iter().any(|&o| diff[o] != 0);
            for &o in &touched {
                diff[o] = 0;
            }
            touched.clear();
            if bad {
                return Some((i, j));
            }
        }
    }
    None
}

/// Coordinates for derivations: the concatenated values `f(g_s)` on a
/// generating set. With a presentation the generators are the presentation
/// generators; otherwise they are all basis elements and the coordinates are
/// the matrix columns.
#[derive(Clone, Debug)]
pub struct DerSystem {
    dim: usize,
    gens: Vec<Element>,
    gen_labels: Vec<String>,
    // per basis element, shortest words first: the prefix product (None for
    // an empty prefix) and the last generator; the unit's empty word is
    // skipped since f(1) = 0
    recursion: Option<Vec<(usize, Option<Element>, usize)>>,
}

impl DerSystem {
    /// Presentation-based coordinates when available.
    pub fn new(a: &Algebra) -> Self {
        let Some(pres) = a.presentation() else {
            return Self::dense(a);
        };
        let mut order: Vec<usize> = (0..a.dim()).collect();
        order.sort_by_key(|&m| pres.basis_words[m].len());
        let recursion = order
            .into_iter()
            .filter_map(|m| {
                let (&last, prefix) = pres.basis_words[m].split_last()?;
                let pv = (!prefix.is_empty()).then(|| a.eval_word(&pres.generators, prefix));
                Some((m, pv, last))
            })
            .collect();
        DerSystem {
            dim: a.dim(),
            gens: pres.generators.clone(),
            gen_labels: pres.generator_labels.clone(),
            recursion: Some(recursion),
        }
    }

    /// Full `dim²` coordinates, ignoring any presentation.
    pub fn dense(a: &Algebra) -> Self {
        DerSystem {
            dim: a.dim(),
            gens: (0..a.dim()).map(|i| a.basis_vec(i)).collect(),
            gen_labels: a.labels().to_vec(),
            recursion: None,
        }
    }

    pub fn is_dense(&self) -> bool {
        self.recursion.is_none()
    }

    pub fn coord_len(&self) -> usize {
        self.gens.len() * self.dim
    }

    pub fn gen_labels(&self) -> &[String] {
        &self.gen_labels
    }

    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    /// Concatenated values on the generators.
    pub fn coords_of_matrix(&self, m: &Mat) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.coord_len());
        for g in &self.gens {
            out.extend(m.mul_vec(g));
        }
        out
    }

    pub fn coords(&self, d: &Derivation) -> Vec<u32> {
        self.coords_of_matrix(d.matrix())
    }

    /// Coordinates of `ad x`.
    pub fn inner_coords(&self, a: &Algebra, x: &[u32]) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.coord_len());
        for g in &self.gens {
            out.extend(a.commutator(x, g));
        }
        out
    }

    /// The unique linear map with the given generator values that follows the
    /// Leibniz rule along the basis words. Only a derivation when the values
    /// kill every relation; callers validate.
    pub fn matrix_of_coords(&self, a: &Algebra, coords: &[u32]) -> Mat {
        let n = self.dim;
        let f = a.field();
        let value = |s: usize| &coords[s * n..(s + 1) * n];
        let mut m = Mat::zeros(f, n, n);
        match &self.recursion {
            None => {
                for s in 0..n {
                    for (k, &v) in value(s).iter().enumerate() {
                        m.set(k, s, v);
                    }
                }
            }
            Some(rec) => {
                let mut images: Vec<Element> = vec![vec![0; n]; n];
                for (target, prefix, last) in rec {
                    let img = match prefix {
                        None => value(*last).to_vec(),
                        Some(pv) => {
                            // f(P s) = f(P) s + P f(s), with f(P) from shorter words
                            let mut fp = vec![0u32; n];
                            for (i, &c) in pv.iter().enumerate() {
                                if c != 0 {
                                    crate::linalg::axpy(f, &mut fp, c, &images[i]);
                                }
                            }
                            let mut img = a.mul(&fp, &self.gens[*last]);
                            crate::linalg::axpy(f, &mut img, 1, &a.mul(pv, value(*last)));
                            img
                        }
                    };
                    images[*target] = img;
                }
                for (j, img) in images.into_iter().enumerate() {
                    for (k, v) in img.into_iter().enumerate() {
                        m.set(k, j, v);
                    }
                }
            }
        }
        m
    }

    /// Solution space of the derivation equations in these coordinates.
    pub fn solve(&self, a: &Algebra) -> Subspace {
        match &self.recursion {
            None => solve_dense(a),
            Some(_) => self.solve_presentation(a),
        }
    }

    fn solve_presentation(&self, a: &Algebra) -> Subspace {
        let n = self.dim;
        let f = a.field();
        let pres = a.presentation().expect("presentation coordinates");
        let mut sys = SparseSystem::new(f, self.coord_len());
        let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for rel in &pres.relations {
            for (c, word) in rel {
                for t in 0..word.len() {
                    let left = a.eval_word(&self.gens, &word[..t]);
                    let right = a.eval_word(&self.gens, &word[t + 1..]);
                    let s = word[t];
                    for k in 0..n {
                        let lk = a.mul(&left, &a.basis_vec(k));
                        if lk.iter().all(|&x| x == 0) {
                            continue;
                        }
                        let prod = a.mul(&lk, &right);
                        for (o, &v) in prod.iter().enumerate() {
                            if v != 0 {
                                rows[o].push((s * n + k, f.mul(*c, v)));
                            }
                        }
                    }
                }
            }
            for r in rows.iter_mut() {
                if !r.is_empty() {
                    sys.add_equation(std::mem::take(r));
                }
            }
        }
        sys.kernel()
    }
}

/// Leibniz system in the `dim²` matrix entries; coordinate `s·n + k` is the
/// coefficient of `e_k` in `f(e_s)`.
fn solve_dense(a: &Algebra) -> Subspace {
    let n = a.dim();
    let f = a.field();
    let var = |s: usize, k: usize| s * n + k;
    let mut sys = SparseSystem::new(f, n * n);
    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            // f(e_i e_j) − f(e_i) e_j − e_i f(e_j) = 0
            for &(m, c) in a.mul_basis(i, j) {
                for (k, row) in rows.iter_mut().enumerate() {
                    row.push((var(m as usize, k), c));
                }
            }
            for m in 0..n {
                for &(k, c) in a.mul_basis(m, j) {
                    rows[k as usize].push((var(i, m), f.neg(c)));
                }
                for &(k, c) in a.mul_basis(i, m) {
                    rows[k as usize].push((var(j, m), f.neg(c)));
                }
            }
            for r in rows.iter_mut() {
                if !r.is_empty() {
                    sys.add_equation(std::mem::take(r));
                }
            }
        }
    }
    sys.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{split_semisimple, truncated_polynomial};
    use crate::linalg::Fp;

    fn f3() -> Fp {
        Fp::new(3).unwrap()
    }

    #[test]
    fn inner_derivations_are_derivations() {
        let (a, d) = crate::algebra::smash_product(f3(), 1, 1).unwrap();
        for l in 0..3 {
            for j in 0..3 {
                assert!(Derivation::inner(&a, &d.monomial(l, j)).is_derivation_of(&a));
            }
        }
    }

    #[test]
    fn non_derivation_rejected() {
        let a = truncated_polynomial(f3(), &[1]).unwrap();
        let id = Mat::identity(f3(), 3);
        assert!(matches!(
            Derivation::from_matrix(&a, id),
            Err(HochschildError::LeibnizViolation(0, 0))
        ));
    }

    #[test]
    fn dense_solve_small_cases() {
        let a = truncated_polynomial(f3(), &[1]).unwrap();
        assert_eq!(DerSystem::dense(&a).solve(&a).dim(), 3);
        let s = split_semisimple(f3(), 3).unwrap();
        assert_eq!(DerSystem::dense(&s).solve(&s).dim(), 0);
    }

    #[test]
    fn bracket_with_self_vanishes() {
        let a = truncated_polynomial(f3(), &[1]).unwrap();
        let sys = DerSystem::dense(&a);
        let der = sys.solve(&a);
        for v in der.basis() {
            let d = Derivation::from_matrix(&a, sys.matrix_of_coords(&a, v)).unwrap();
            assert!(bracket(&d, &d).unwrap().is_zero());
        }
    }
}
