use super::{LieError, RestrictedLie, Vector};
use crate::algebra::truncated_polynomial;
use crate::hochschild::hh1;
use crate::linalg::{Fp, Mat, SpanSolver};

/// Restricted Lie algebra spanned by matrices closed under commutators and
/// p-th powers, with the matrix p-th power as p-map.
pub fn from_matrix_basis(
    field: Fp,
    labels: Vec<String>,
    mats: &[Mat],
) -> Result<RestrictedLie, LieError> {
    let n = mats.len();
    let flat: Vec<Vector> = mats.iter().map(|m| m.data().to_vec()).collect();
    let width = flat.first().map_or(0, Vec::len);
    let solver = SpanSolver::new(field, width, &flat);
    if solver.rank() != n {
        return Err(LieError::Malformed(
            "matrices are linearly dependent".into(),
        ));
    }
    let coords = |m: &Mat| -> Result<Vector, LieError> {
        solver
            .solve(m.data())
            .ok_or_else(|| LieError::NotClosed("matrix span is not closed".into()))
    };
    let mut bracket = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            bracket[i][j] = coords(&mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i])))?;
        }
    }
    let pmap = mats
        .iter()
        .map(|m| coords(&m.pow(field.p())))
        .collect::<Result<_, _>>()?;
    RestrictedLie::new(field, labels, bracket, pmap)
}

fn unit_matrix(field: Fp, i: usize, j: usize) -> Mat {
    Mat::from_fn(field, 2, 2, |r, c| u32::from(r == i && c == j))
}

/// `sl₂` on `e, h, f`.
pub fn sl2(field: Fp) -> Result<RestrictedLie, LieError> {
    let e = unit_matrix(field, 0, 1);
    let f = unit_matrix(field, 1, 0);
    let h = unit_matrix(field, 0, 0).sub(&unit_matrix(field, 1, 1));
    from_matrix_basis(field, vec!["e".into(), "h".into(), "f".into()], &[e, h, f])
}

/// `gl₂` on the matrix units `E11, E12, E21, E22`.
pub fn gl2(field: Fp) -> Result<RestrictedLie, LieError> {
    let mats: Vec<Mat> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(i, j)| unit_matrix(field, i, j))
        .collect();
    let labels = ["E11", "E12", "E21", "E22"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    from_matrix_basis(field, labels, &mats)
}

/// The Witt algebra `W(n) = Der k[x_1..x_n]/(x_i^p)`, computed as `HH¹` of
/// the truncated polynomial algebra.
pub fn witt(field: Fp, n: usize) -> Result<RestrictedLie, LieError> {
    let a = truncated_polynomial(field, &vec![1u32; n])?;
    RestrictedLie::from_hh1(&hh1(&a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_dimensions() {
        for p in [3, 5] {
            let f = Fp::new(p).unwrap();
            assert_eq!(sl2(f).unwrap().dim(), 3);
            assert_eq!(gl2(f).unwrap().dim(), 4);
            assert_eq!(witt(f, 1).unwrap().dim(), p as usize);
        }
        assert_eq!(witt(Fp::new(3).unwrap(), 2).unwrap().dim(), 18);
    }

    #[test]
    fn sl2_brackets() {
        let l = sl2(Fp::new(5).unwrap()).unwrap();
        // [e, f] = h, [h, e] = 2e
        assert_eq!(l.bracket_basis(0, 2), &[0, 1, 0]);
        assert_eq!(l.bracket_basis(1, 0), &[2, 0, 0]);
        assert_eq!(l.pmap_basis()[1], vec![0, 1, 0]);
    }
}
