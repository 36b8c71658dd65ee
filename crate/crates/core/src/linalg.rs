//! Complex SVD helpers on top of faer.

use faer::{c64, Mat};

use crate::error::{Error, Result};

pub type CMatrix = Mat<c64>;

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    m.singular_values().map_err(|_| Error::SvdFailed)
}

/// Singular values (descending) and the left singular vectors beyond the leading `n`,
/// as the columns of a matrix.
pub fn trailing_left_basis(m: &CMatrix, n: usize) -> Result<(Vec<f64>, CMatrix)> {
    let svd = m.svd().map_err(|_| Error::SvdFailed)?;
    let values = svd.S().column_vector().iter().map(|s| s.re).collect();
    let u = svd.U();
    let k = u.ncols().saturating_sub(n);
    let basis = CMatrix::from_fn(u.nrows(), k, |i, j| u[(i, n + j)]);
    Ok((values, basis))
}

/// `|| basis^* v ||`.
pub fn projection_norm(basis: &CMatrix, v: &[c64]) -> f64 {
    (0..basis.ncols())
        .map(|j| {
            (0..basis.nrows())
                .map(|i| basis[(i, j)].conj() * v[i])
                .sum::<c64>()
                .norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn steering(x: f64, len: usize) -> Vec<c64> {
        (0..len).map(|k| c64::from_polar(1.0, 0.25 * x * k as f64)).collect()
    }

    fn outer(terms: &[(c64, &[c64])]) -> CMatrix {
        let len = terms[0].1.len();
        CMatrix::from_fn(len, len, |i, j| terms.iter().map(|(a, v)| a * v[i] * v[j]).sum())
    }

    #[test]
    fn rank_one_singular_values() {
        let a = c64::new(1.5, 0.3);
        let m = outer(&[(a, &steering(0.37, 5))]);
        let sv = singular_values(&m).unwrap();
        assert_eq!(sv.len(), 5);
        assert!((sv[0] - 5.0 * a.norm()).abs() < 1e-12);
        assert!(sv[1] / sv[0] < 1e-12);
    }

    #[test]
    fn trailing_basis_annihilates_signal_vectors() {
        let a = steering(0.37, 5);
        let b = steering(-1.1, 5);
        let m = outer(&[(c64::new(1.0, 0.0), &a), (c64::new(2.0, 0.0), &b)]);
        let (sv, basis) = trailing_left_basis(&m, 2).unwrap();
        assert!(sv.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!((basis.nrows(), basis.ncols()), (5, 3));
        for i in 0..3 {
            for j in 0..3 {
                let g: c64 = (0..5).map(|k| basis[(k, i)].conj() * basis[(k, j)]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((g - c64::new(target, 0.0)).norm() < 1e-12);
            }
        }
        assert!(projection_norm(&basis, &a) < 1e-12);
        assert!(projection_norm(&basis, &b) < 1e-12);
        let p = projection_norm(&basis, &steering(2.0, 5));
        assert!(p > 0.1 && p <= 5f64.sqrt() + 1e-12);
    }

    #[test]
    fn singular_values_match_frobenius_norm() {
        let m = CMatrix::from_fn(4, 4, |i, j| {
            c64::new((i * 3 + j) as f64 * 0.1 + 1.0 / (i + j + 1) as f64, (i as f64 - j as f64) * 0.2)
        });
        let sv = singular_values(&m).unwrap();
        let frob: f64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].norm_sqr()).sum();
        let sum_sq: f64 = sv.iter().map(|s| s * s).sum();
        assert!((frob - sum_sq).abs() < 1e-12 * frob);
    }
}
