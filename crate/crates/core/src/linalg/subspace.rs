use serde::{Deserialize, Serialize};

use super::{Fp, LinalgError, Mat};

/// A subspace of GF(p)^n stored by its reduced row echelon basis.
///
/// The representation is canonical, so `==` is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Fp,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

/// Everything `subspace_ops` reports for a pair of subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
    pub a_contains_b: bool,
    pub b_contains_a: bool,
    pub quotient_basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(field: Fp, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Fp, ambient_dim: usize) -> Self {
        Self::from_mat(&Mat::identity(field, ambient_dim))
    }

    pub fn from_spanning(field: Fp, ambient_dim: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient_dim);
        }
        Self::from_mat(&Mat::from_residue_rows(field, ambient_dim, vectors))
    }

    pub fn from_mat(m: &Mat) -> Self {
        let rr = m.rref();
        Subspace {
            field: m.field(),
            ambient_dim: m.cols(),
            basis: (0..rr.rank).map(|i| rr.mat.row(i).to_vec()).collect(),
            pivots: rr.pivots,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient_dim);
        let f = self.field;
        let mut r = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &y) in r.iter_mut().zip(b) {
                if y != 0 {
                    *x = f.add(*x, f.mul(neg, y));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace::from_spanning(self.field, self.ambient_dim, &rows))
    }

    /// Zassenhaus: reduce `[a | a]` stacked on `[b | 0]`; rows whose left half
    /// vanishes carry the intersection in their right half.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let n = self.ambient_dim;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for a in &self.basis {
            let mut r = a.clone();
            r.extend_from_slice(a);
            rows.push(r);
        }
        for b in &other.basis {
            let mut r = b.clone();
            r.extend(std::iter::repeat(0).take(n));
            rows.push(r);
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(self.field, n));
        }
        let rr = Mat::from_residue_rows(self.field, 2 * n, &rows).rref();
        let inter: Vec<Vec<u32>> = (0..rr.rank)
            .map(|i| rr.mat.row(i))
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Ok(Subspace::from_spanning(self.field, n, &inter))
    }

    /// Vectors of `self` extending a basis of `self ∩ other` to a basis of
    /// `self`: the canonical basis rows of `self` are scanned in pivot order
    /// and kept when independent of everything kept so far.
    pub fn quotient_basis(&self, other: &Subspace) -> Result<Vec<Vec<u32>>, LinalgError> {
        let inter = self.intersection(other)?;
        let mut acc = inter;
        let mut out = Vec::new();
        for v in &self.basis {
            if !acc.contains(v) {
                out.push(v.clone());
                acc = acc.sum(&Subspace::from_spanning(
                    self.field,
                    self.ambient_dim,
                    &[v.clone()],
                ))?;
            }
        }
        Ok(out)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.field, self.ambient_dim);
        }
        Mat::from_residue_rows(self.field, self.ambient_dim, &self.basis).kernel()
    }

    /// Every vector of the subspace, in lexicographic coefficient order.
    pub fn enumerate(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let p = self.field.p() as u64;
        let total = p.pow(self.dim() as u32);
        let f = self.field;
        (0..total).map(move |mut idx| {
            let mut v = vec![0u32; self.ambient_dim];
            for b in &self.basis {
                let c = (idx % p) as u32;
                idx /= p;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
            }
            v
        })
    }
}

pub fn subspace_ops(a: &Subspace, b: &Subspace) -> Result<SubspaceOps, LinalgError> {
    Ok(SubspaceOps {
        sum: a.sum(b)?,
        intersection: a.intersection(b)?,
        a_contains_b: a.contains_subspace(b),
        b_contains_a: b.contains_subspace(a),
        quotient_basis: a.quotient_basis(b)?,
    })
}

/// Expresses vectors as combinations of a fixed, possibly dependent, list of
/// rows.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    field: Fp,
    width: usize,
    nrows: usize,
    reduced: Vec<Vec<u32>>,
    transforms: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanSolver {
    pub fn new(field: Fp, width: usize, rows: &[Vec<u32>]) -> Self {
        let m = rows.len();
        let aug: Vec<Vec<u32>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                assert_eq!(r.len(), width);
                let mut a = r.clone();
                a.extend((0..m).map(|j| (i == j) as u32));
                a
            })
            .collect();
        if m == 0 {
            return SpanSolver {
                field,
                width,
                nrows: 0,
                reduced: Vec::new(),
                transforms: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let rr = Mat::from_residue_rows(field, width + m, &aug).rref_limited(width);
        let (reduced, transforms) = (0..rr.rank)
            .map(|i| {
                let r = rr.mat.row(i);
                (r[..width].to_vec(), r[width..].to_vec())
            })
            .unzip();
        SpanSolver {
            field,
            width,
            nrows: m,
            reduced,
            transforms,
            pivots: rr.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `c` with `Σ c_i rows_i = v`, or `None` if `v` is outside
    /// the span.
    pub fn solve(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.width);
        let f = self.field;
        let mut resid = v.to_vec();
        let mut c = vec![0u32; self.nrows];
        for ((r, t), &pc) in self.reduced.iter().zip(&self.transforms).zip(&self.pivots) {
            let k = resid[pc];
            if k == 0 {
                continue;
            }
            let neg = f.neg(k);
            for (x, &y) in resid.iter_mut().zip(r) {
                if y != 0 {
                    *x = f.add(*x, f.mul(neg, y));
                }
            }
            for (x, &y) in c.iter_mut().zip(t) {
                if y != 0 {
                    *x = f.add(*x, f.mul(k, y));
                }
            }
        }
        resid.iter().all(|&x| x == 0).then_some(c)
    }
}

/// Serializable form of a subspace.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubspaceJson {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<u32>>,
}

impl From<&Subspace> for SubspaceJson {
    fn from(s: &Subspace) -> Self {
        SubspaceJson {
            ambient_dim: s.ambient_dim,
            basis: s.basis.clone(),
        }
    }
}
