//! Finite-dimensional associative unital algebras given by structure
//! constants, together with the constructors and structural checks used
//! throughout the crate.

mod build;
mod json;
mod quiver;
mod structure;

pub use build::{
    kronecker, smash_product, split_semisimple, trivial_extension, truncated_polynomial, u0_borel,
    SmashDescriptor,
};
pub use json::AlgebraJson;
pub use quiver::{quiver_algebra, Arrow, QuiverPresentation};
pub use structure::{
    associative_symmetric_forms, block_decomposition, center, commutator_and_radical_checks,
    commutator_space, symmetric_form_search, Block, RadicalReport, SymmetricForm,
};

use thiserror::Error;

use crate::linalg::{axpy, Fp, LinalgError, Mat};

pub type Element = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("unit is not a two-sided identity on basis element {0}")]
    UnitViolation(usize),
    #[error("counit is not multiplicative on basis pair ({0}, {1})")]
    CounitViolation(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("relation {0} is not admissible (terms must have length >= 2)")]
    InadmissibleRelation(usize),
    #[error("quotient is not finite-dimensional within path length {0}")]
    InfiniteDimensional(usize),
    #[error("no radical data: algebra has neither a counit nor radical generators")]
    RadicalUnavailable,
    #[error("radical check failed: {0}")]
    RadicalInvalid(String),
    #[error("the semisimple quotient of the center does not split over GF(p)")]
    NonSplitCenter,
    #[error("malformed algebra data: {0}")]
    Malformed(String),
}

/// Generator-and-relation data attached by the constructors that know it.
///
/// Derivations are determined by their values on `generators`; they are
/// consistent exactly when they kill every relation. `basis_words[m]` is a
/// word whose product is basis element `m`, and every nonempty proper prefix
/// of it multiplies out to an element supported on basis elements with
/// shorter words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Element>,
    pub generator_labels: Vec<String>,
    /// Each relation is `Σ c·word = 0`; the empty word is the unit.
    pub relations: Vec<Vec<(u32, Vec<usize>)>>,
    pub basis_words: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Fp,
    name: String,
    labels: Vec<String>,
    // row-major (i, j) -> sparse product e_i e_j, sorted by output index
    table: Vec<Vec<(u32, u32)>>,
    unit: Element,
    radical_gens: Option<Vec<Element>>,
    counit: Option<Vec<u32>>,
    presentation: Option<Presentation>,
}

/// Validates structure constants and builds the algebra.
///
/// `mult` holds `(i, j, k, c)`: the coefficient of `e_k` in `e_i e_j`.
pub fn make_algebra(
    field: Fp,
    labels: Vec<String>,
    mult: &[(usize, usize, usize, i64)],
    unit: Element,
) -> Result<Algebra, AlgebraError> {
    let a = assemble(field, labels, mult, unit)?;
    a.validate()?;
    Ok(a)
}

/// Like [`make_algebra`], but checks associativity only on triples
/// `(e_i, e_j, g)` with `g` a generator of the presentation. Since every
/// basis element is a left-nested product of generators, this implies
/// associativity everywhere.
pub(crate) fn make_presented_algebra(
    field: Fp,
    labels: Vec<String>,
    mult: &[(usize, usize, usize, i64)],
    unit: Element,
    pres: Presentation,
) -> Result<Algebra, AlgebraError> {
    let a = assemble(field, labels, mult, unit)?.with_presentation(pres)?;
    let gens = a
        .presentation
        .as_ref()
        .map(|p| p.generators.clone())
        .unwrap_or_default();
    a.check_associative_on(&gens)?;
    a.check_unit()?;
    a.validate_counit()?;
    Ok(a)
}

fn assemble(
    field: Fp,
    labels: Vec<String>,
    mult: &[(usize, usize, usize, i64)],
    unit: Element,
) -> Result<Algebra, AlgebraError> {
    let dim = labels.len();
    if unit.len() != dim {
        return Err(AlgebraError::Malformed(format!(
            "unit has length {}, expected {dim}",
            unit.len()
        )));
    }
    let mut table: Vec<Vec<(u32, u32)>> = vec![Vec::new(); dim * dim];
    for &(i, j, k, c) in mult {
        if i >= dim || j >= dim || k >= dim {
            return Err(AlgebraError::Malformed(format!(
                "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
            )));
        }
        let c = field.reduce(c);
        if c != 0 {
            table[i * dim + j].push((k as u32, c));
        }
    }
    for cell in table.iter_mut() {
        cell.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(cell.len());
        for &(k, c) in cell.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 = field.add(last.1, c),
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|t| t.1 != 0);
        *cell = merged;
    }
    let unit = unit.into_iter().map(|x| x % field.p()).collect();
    let a = Algebra {
        field,
        name: String::from("algebra"),
        labels,
        table,
        unit,
        radical_gens: None,
        counit: None,
        presentation: None,
    };
    Ok(a)
}

impl Algebra {
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn p(&self) -> u32 {
        self.field.p()
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn radical_gens(&self) -> Option<&[Element]> {
        self.radical_gens.as_deref()
    }
    pub fn counit(&self) -> Option<&[u32]> {
        self.counit.as_deref()
    }
    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_radical_gens(mut self, gens: Vec<Element>) -> Result<Self, AlgebraError> {
        for g in &gens {
            self.check_len(g)?;
        }
        self.radical_gens = Some(gens);
        Ok(self)
    }

    pub fn with_counit(mut self, counit: Vec<u32>) -> Result<Self, AlgebraError> {
        self.check_len(&counit)?;
        self.counit = Some(counit.into_iter().map(|x| x % self.p()).collect());
        self.validate_counit()?;
        Ok(self)
    }

    /// Attaches a presentation after checking that each basis word multiplies
    /// out to its basis element, that prefixes only involve shorter words, and
    /// that every relation holds.
    pub fn with_presentation(mut self, pres: Presentation) -> Result<Self, AlgebraError> {
        if pres.basis_words.len() != self.dim() {
            return Err(AlgebraError::Malformed(
                "one basis word per basis element required".into(),
            ));
        }
        for g in &pres.generators {
            self.check_len(g)?;
        }
        let ng = pres.generators.len();
        for (m, w) in pres.basis_words.iter().enumerate() {
            if w.iter().any(|&s| s >= ng) {
                return Err(AlgebraError::Malformed(format!(
                    "basis word {m} uses unknown generator"
                )));
            }
            if self.eval_word(&pres.generators, w) != self.basis_vec(m) {
                return Err(AlgebraError::Malformed(format!(
                    "basis word for {} does not multiply out to it",
                    self.labels[m]
                )));
            }
            // an empty prefix is the unit, killed by every derivation
            if let Some((_, prefix)) = w.split_last().filter(|(_, pre)| !pre.is_empty()) {
                let pv = self.eval_word(&pres.generators, prefix);
                for (i, &c) in pv.iter().enumerate() {
                    if c != 0 && pres.basis_words[i].len() >= w.len() {
                        return Err(AlgebraError::Malformed(format!(
                            "prefix of basis word {m} involves a word that is not shorter"
                        )));
                    }
                }
            }
        }
        for (r, rel) in pres.relations.iter().enumerate() {
            let mut acc = self.zero();
            for (c, w) in rel {
                if w.iter().any(|&s| s >= ng) {
                    return Err(AlgebraError::Malformed(format!(
                        "relation {r} uses unknown generator"
                    )));
                }
                axpy(
                    self.field,
                    &mut acc,
                    *c,
                    &self.eval_word(&pres.generators, w),
                );
            }
            if acc.iter().any(|&x| x != 0) {
                return Err(AlgebraError::Malformed(format!(
                    "relation {r} does not hold"
                )));
            }
        }
        self.presentation = Some(pres);
        Ok(self)
    }

    /// Drops the presentation, forcing the dense code paths.
    pub fn without_presentation(mut self) -> Self {
        self.presentation = None;
        self
    }

    fn check_len(&self, v: &[u32]) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::Malformed(format!(
                "vector of length {} for an algebra of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Re-runs the associativity and unit checks.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let f = self.field;
        let mut lhs = vec![0u32; n];
        let mut rhs = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i * n + j];
                for k in 0..n {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for &(m, c) in ij {
                        for &(o, d) in &self.table[m as usize * n + k] {
                            let o = o as usize;
                            lhs[o] = f.add(lhs[o], f.mul(c, d));
                        }
                    }
                    for &(m, c) in &self.table[j * n + k] {
                        for &(o, d) in &self.table[i * n + m as usize] {
                            let o = o as usize;
                            rhs[o] = f.add(rhs[o], f.mul(c, d));
                        }
                    }
                    if lhs != rhs {
                        return Err(AlgebraError::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        self.check_unit()?;
        self.validate_counit()
    }

    fn check_associative_on(&self, gens: &[Element]) -> Result<(), AlgebraError> {
        let n = self.dim();
        let f = self.field;
        let sparse = |v: &[u32]| -> Vec<(usize, u32)> {
            v.iter()
                .enumerate()
                .filter(|t| *t.1 != 0)
                .map(|(i, &c)| (i, c))
                .collect()
        };
        let gens: Vec<Vec<(usize, u32)>> = gens.iter().map(|g| sparse(g)).collect();
        // e_j g for every g and j
        let right: Vec<Vec<Vec<(usize, u32)>>> = gens
            .iter()
            .map(|g| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![0u32; n];
                        for &(t, d) in g {
                            for &(k, c) in &self.table[j * n + t] {
                                v[k as usize] = f.add(v[k as usize], f.mul(c, d));
                            }
                        }
                        sparse(&v)
                    })
                    .collect()
            })
            .collect();
        let mut lhs = vec![0u32; n];
        let mut rhs = vec![0u32; n];
        let mut touched: Vec<usize> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i * n + j];
                for (gi, g) in gens.iter().enumerate() {
                    for &(m, c) in ij {
                        for &(t, d) in g {
                            let cd = f.mul(c, d);
                            for &(k, e) in &self.table[m as usize * n + t] {
                                lhs[k as usize] = f.add(lhs[k as usize], f.mul(cd, e));
                                touched.push(k as usize);
                            }
                        }
                    }
                    for &(m, c) in &right[gi][j] {
                        for &(k, e) in &self.table[i * n + m] {
                            rhs[k as usize] = f.add(rhs[k as usize], f.mul(c, e));
                            touched.push(k as usize);
                        }
                    }
                    let ok = touched.iter().all(|&k| lhs[k] == rhs[k]);
                    for &k in &touched {
                        lhs[k] = 0;
                        rhs[k] = 0;
                    }
                    touched.clear();
                    if !ok {
                        return Err(AlgebraError::AssociativityViolation(i, j, usize::MAX - gi));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            let e = self.basis_vec(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::UnitViolation(i));
            }
        }
        Ok(())
    }

    fn validate_counit(&self) -> Result<(), AlgebraError> {
        let Some(eps) = &self.counit else {
            return Ok(());
        };
        let f = self.field;
        let apply = |v: &[u32]| -> u32 {
            v.iter()
                .zip(eps)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        };
        if apply(&self.unit) != 1 {
            return Err(AlgebraError::CounitViolation(usize::MAX, usize::MAX));
        }
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul_basis_vec(i, j);
                if apply(&prod) != f.mul(eps[i], eps[j]) {
                    return Err(AlgebraError::CounitViolation(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> Element {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Element {
        self.unit.clone()
    }

    pub fn basis_vec(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// Sparse product `e_i e_j`.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(u32, u32)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul_basis_vec(&self, i: usize, j: usize) -> Element {
        let mut v = self.zero();
        for &(k, c) in self.mul_basis(i, j) {
            v[k as usize] = c;
        }
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Element {
        let n = self.dim();
        let f = self.field;
        let p = f.p() as u64;
        let mut acc = vec![0u64; n];
        let bs: Vec<(usize, u64)> = b
            .iter()
            .enumerate()
            .filter(|t| *t.1 != 0)
            .map(|(j, &v)| (j, v as u64))
            .collect();
        // each term is below p² ≤ 2^40, so 2^23 additions cannot overflow
        let mut pending = 0usize;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for &(j, bj) in &bs {
                let ab = (ai as u64 * bj) % p;
                let cell = &self.table[i * n + j];
                for &(k, c) in cell {
                    acc[k as usize] += ab * c as u64;
                }
                pending += cell.len();
            }
            if pending >= 1 << 23 {
                acc.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Element {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Element {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.sub(x, y))
            .collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Element {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn commutator(&self, a: &[u32], b: &[u32]) -> Element {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Element {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Product of the generators named by `word` (empty word = unit).
    pub fn eval_word(&self, gens: &[Element], word: &[usize]) -> Element {
        word.iter()
            .fold(self.one(), |acc, &g| self.mul(&acc, &gens[g]))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// Matrix of left multiplication by `a`, acting on coordinate columns.
    pub fn left_mul_matrix(&self, a: &[u32]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(self.field, n, n);
        for j in 0..n {
            let col = self.mul(a, &self.basis_vec(j));
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix of `ad a : y ↦ ay − ya`.
    pub fn ad_matrix(&self, a: &[u32]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(self.field, n, n);
        for j in 0..n {
            let e = self.basis_vec(j);
            let col = self.commutator(a, &e);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Structure constants `(i, j, k, c)` sorted by `(i, j, k)`.
    pub fn triples(&self) -> Vec<(usize, usize, usize, u32)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.mul_basis(i, j) {
                    out.push((i, j, k as usize, c));
                }
            }
        }
        out
    }

    /// Checks that the linear map `phi` (columns = images of our basis) is an
    /// algebra isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &Algebra, phi: &Mat) -> bool {
        let n = self.dim();
        if other.dim() != n || phi.rows() != n || phi.cols() != n || phi.rank() != n {
            return false;
        }
        if phi.mul_vec(&self.unit) != other.unit {
            return false;
        }
        let images: Vec<Element> = (0..n).map(|j| phi.col(j)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = phi.mul_vec(&self.mul_basis_vec(i, j));
                if lhs != other.mul(&images[i], &images[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Overwrites one structure constant without re-validating. Only meant
    /// for negative controls in the reproduction suite.
    #[doc(hidden)]
    pub fn inject_fault(&mut self, i: usize, j: usize, k: usize, c: u32) {
        let n = self.dim();
        let cell = &mut self.table[i * n + j];
        cell.retain(|t| t.0 as usize != k);
        let c = c % self.field.p();
        if c != 0 {
            cell.push((k as u32, c));
            cell.sort_unstable_by_key(|t| t.0);
        }
    }
}
