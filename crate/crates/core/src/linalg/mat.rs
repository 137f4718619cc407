use std::fmt;

use super::{Fp, LinalgError, Subspace};

/// Dense matrix over GF(p), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: Fp, rows: &[R]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| field.reduce(x)));
        }
        Ok(Mat {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from already-reduced residue rows.
    pub fn from_residue_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().map(|&x| x % field.p()));
        }
        Mat {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from scalars, rejecting mixed characteristics.
    pub fn from_scalars(rows: &[Vec<super::Scalar>]) -> Result<Self, LinalgError> {
        let first = rows
            .iter()
            .flat_map(|r| r.iter())
            .next()
            .ok_or(LinalgError::Empty)?;
        let field = first.field();
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for s in r {
                if s.field() != field {
                    return Err(LinalgError::FieldMismatch(field.p(), s.field().p()));
                }
                data.push(s.value());
            }
        }
        Ok(Mat {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: Fp,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_same(&self, other: &Mat) {
        assert_eq!(self.field, other.field, "mixed-characteristic matrices");
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_same(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_same(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        Mat {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Mat, c: u32) {
        self.check_same(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = f.add(*a, f.mul(b, c));
            }
        }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.check_same(other);
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.field.p() as u64;
        let n = other.cols;
        let mut acc = vec![0u64; n];
        let mut out = Mat::zeros(self.field, self.rows, n);
        let safe = ((u64::MAX - p) / ((p - 1) * (p - 1))) as usize;
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0usize;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (s, &b) in acc.iter_mut().zip(orow) {
                    *s += a * b as u64;
                }
                pending += 1;
                if pending >= safe {
                    acc.iter_mut().for_each(|s| *s %= p);
                    pending = 0;
                }
            }
            for (o, s) in out.row_mut(i).iter_mut().zip(&acc) {
                *o = (s % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .filter(|(&a, &b)| a != 0 && b != 0)
                    .map(|(&a, &b)| (a as u64 * b as u64) % p)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form, choosing pivots only among the first
    /// `pivot_cols` columns (trailing columns ride along, e.g. for augmented
    /// systems).
    pub fn rref_limited(&self, pivot_cols: usize) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..pivot_cols.min(self.cols) {
            if r == m.rows {
                break;
            }
            let Some(sel) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if sel != r {
                for j in 0..m.cols {
                    m.data.swap(sel * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for x in m.row_mut(r)[c..].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row: Vec<u32> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                let row = m.row_mut(i);
                for j in c..pivot_row.len() {
                    if pivot_row[j] != 0 {
                        row[j] = f.add(row[j], f.mul(neg, pivot_row[j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            mat: m,
            rank: r,
            pivots,
        }
    }

    pub fn rref(&self) -> Rref {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right kernel `{v : M v = 0}` as a canonical subspace.
    pub fn kernel(&self) -> Subspace {
        let rr = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let f = self.field;
        let basis: Vec<Vec<u32>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (i, &pc) in rr.pivots.iter().enumerate() {
                    v[pc] = f.neg(rr.mat.get(i, fc));
                }
                v
            })
            .collect();
        Subspace::from_spanning(f, self.cols, &basis)
    }

    pub fn determinant_is_zero(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        self.rank() < self.rows
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn rref_identity() {
        let id = Mat::identity(f(3), 3);
        let rr = id.rref();
        assert_eq!(rr.mat, id);
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Mat::from_rows(f(5), &[[1i64, 2], [2, 4]]).unwrap();
        let rr = m.rref();
        assert_eq!(rr.mat, Mat::from_rows(f(5), &[[1i64, 2], [0, 0]]).unwrap());
        assert_eq!(rr.rank, 1);
    }

    #[test]
    fn rref_zero() {
        let z = Mat::zeros(f(3), 2, 2);
        let rr = z.rref();
        assert_eq!(rr.rank, 0);
        assert!(rr.mat.is_zero());
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(Mat::identity(f(3), 4).kernel().dim(), 0);
        assert_eq!(Mat::zeros(f(3), 2, 5).kernel().dim(), 5);
    }

    #[test]
    fn kernel_of_all_ones_row_matches_enumeration() {
        // Oracle: enumerate all 27 vectors of GF(3)^3 and keep those summing to 0.
        let fld = f(3);
        let m = Mat::from_rows(fld, &[[1i64, 1, 1]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        let mut brute = 0;
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    let v = [a, b, c];
                    let in_kernel = (a + b + c) % 3 == 0;
                    assert_eq!(k.contains(&v), in_kernel);
                    brute += in_kernel as usize;
                }
            }
        }
        assert_eq!(brute, 9);
        for v in k.basis() {
            assert_eq!(v.iter().sum::<u32>() % 3, 0);
        }
    }

    #[test]
    fn product_and_power() {
        let fld = f(7);
        let a = Mat::from_rows(fld, &[[1i64, 1], [0, 1]]).unwrap();
        assert_eq!(a.pow(7), Mat::identity(fld, 2));
        assert_eq!(a.mul(&Mat::identity(fld, 2)), a);
    }
}
