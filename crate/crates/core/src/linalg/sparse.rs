use super::{Fp, Subspace};

/// A sparse row: `(column, nonzero value)` pairs sorted by column.
pub type SparseRow = Vec<(usize, u32)>;

/// Incremental echelon form for large, sparse homogeneous systems.
///
/// Equations are reduced against stored rows by their leading term only;
/// full back-substitution happens once, in [`SparseSystem::kernel`].
#[derive(Clone, Debug)]
pub struct SparseSystem {
    field: Fp,
    nvars: usize,
    by_pivot: Vec<Option<SparseRow>>,
    rank: usize,
}

fn axpy(field: Fp, row: &SparseRow, c: u32, pivot_row: &SparseRow) -> SparseRow {
    // row - c * pivot_row
    let neg = field.neg(c);
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        let take_row = j == pivot_row.len() || (i < row.len() && row[i].0 < pivot_row[j].0);
        let take_piv = i == row.len() || (j < pivot_row.len() && pivot_row[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_piv {
            out.push((pivot_row[j].0, field.mul(neg, pivot_row[j].1)));
            j += 1;
        } else {
            let v = field.add(row[i].1, field.mul(neg, pivot_row[j].1));
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts and merges duplicate columns, dropping zeros.
pub fn normalize_row(field: Fp, mut terms: Vec<(usize, u32)>) -> SparseRow {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: SparseRow = Vec::with_capacity(terms.len());
    for (c, v) in terms {
        let v = v % field.p();
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = field.add(last.1, v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

impl SparseSystem {
    pub fn new(field: Fp, nvars: usize) -> Self {
        SparseSystem {
            field,
            nvars,
            by_pivot: vec![None; nvars],
            rank: 0,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds the equation `Σ v·x_c = 0`. Returns whether the rank grew.
    pub fn add_equation(&mut self, terms: Vec<(usize, u32)>) -> bool {
        let f = self.field;
        let mut row = normalize_row(f, terms);
        while let Some(&(lead, c)) = row.first() {
            debug_assert!(lead < self.nvars);
            match &self.by_pivot[lead] {
                Some(pr) => row = axpy(f, &row, c, pr),
                None => {
                    let inv = f.inv(c);
                    for t in row.iter_mut() {
                        t.1 = f.mul(t.1, inv);
                    }
                    self.by_pivot[lead] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }

    /// Canonical basis of the solution space: one vector per free variable,
    /// in increasing order, identical to what dense RREF would produce.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let mut reduced: Vec<Option<SparseRow>> = vec![None; self.nvars];
        for q in (0..self.nvars).rev() {
            let Some(row) = &self.by_pivot[q] else {
                continue;
            };
            let mut acc = row.clone();
            loop {
                // eliminate the first non-leading entry that is itself a pivot
                let hit = acc
                    .iter()
                    .skip(1)
                    .find(|(c, _)| reduced[*c].is_some())
                    .copied();
                match hit {
                    Some((c, v)) => {
                        let pr = reduced[c].as_ref().expect("pivot row present");
                        acc = axpy(f, &acc, v, pr);
                    }
                    None => break,
                }
            }
            reduced[q] = Some(acc);
        }
        let basis: Vec<Vec<u32>> = (0..self.nvars)
            .filter(|&c| reduced[c].is_none())
            .map(|free| {
                let mut v = vec![0u32; self.nvars];
                v[free] = 1;
                for (q, row) in reduced.iter().enumerate() {
                    if let Some(row) = row {
                        if let Ok(pos) = row.binary_search_by_key(&free, |t| t.0) {
                            v[q] = f.neg(row[pos].1);
                        }
                    }
                }
                v
            })
            .collect();
        // leading entries may sit in pivot columns; canonicalize
        Subspace::from_spanning(f, self.nvars, &basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_dense_kernel() {
        let f = Fp::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            let nvars = 6 + trial % 5;
            let neq = rng.gen_range(1..nvars + 3);
            let mut dense = Vec::new();
            let mut sys = SparseSystem::new(f, nvars);
            for _ in 0..neq {
                let row: Vec<u32> = (0..nvars)
                    .map(|_| {
                        if rng.gen_bool(0.35) {
                            rng.gen_range(1..5)
                        } else {
                            0
                        }
                    })
                    .collect();
                sys.add_equation(
                    row.iter()
                        .enumerate()
                        .filter(|t| *t.1 != 0)
                        .map(|(c, &v)| (c, v))
                        .collect(),
                );
                dense.push(row);
            }
            let m = Mat::from_residue_rows(f, nvars, &dense);
            assert_eq!(sys.kernel(), m.kernel());
            assert_eq!(sys.rank(), m.rank());
        }
    }
}
