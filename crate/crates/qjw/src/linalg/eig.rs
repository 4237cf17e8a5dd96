use super::{c, ComplexMatrix, HermitianOp, RealMatrix, C64};
use nalgebra::{SymmetricEigen, SVD};
use std::cmp::Ordering;

/// Eigenvalues in descending order with unit eigenvectors as columns.
///
/// Each eigenvector is rotated so its first component of magnitude above 1e-8
/// is real and positive; exact ties are ordered by comparing eigenvector
/// components lexicographically. This makes outputs reproducible.
pub fn hermitian_eig(a: &HermitianOp) -> (Vec<f64>, ComplexMatrix) {
    let n = a.dim();
    if n == 0 {
        return (Vec::new(), ComplexMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(a.matrix().clone());
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut cols: Vec<(f64, Vec<C64>)> = (0..n)
        .map(|k| {
            let mut v: Vec<C64> = eig.eigenvectors.column(k).iter().copied().collect();
            normalize_phase(&mut v);
            (eig.eigenvalues[k], v)
        })
        .collect();
    cols.sort_by(|x, y| {
        if (x.0 - y.0).abs() <= 1e-12 * scale {
            lex_cmp(&x.1, &y.1)
        } else {
            y.0.partial_cmp(&x.0).unwrap_or(Ordering::Equal)
        }
    });
    let vals = cols.iter().map(|x| x.0).collect();
    let vecs = ComplexMatrix::from_fn(n, n, |i, j| cols[j].1[i]);
    (vals, vecs)
}

fn normalize_phase(v: &mut [C64]) {
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    let pivot = v.iter().find(|x| x.norm() > 1e-8).copied().unwrap_or(c(1.0, 0.0));
    let phase = pivot.conj() / pivot.norm();
    for x in v.iter_mut() {
        *x = *x * phase / norm;
    }
}

fn lex_cmp(a: &[C64], b: &[C64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        for (p, q) in [(x.re, y.re), (x.im, y.im)] {
            if (p - q).abs() > 1e-12 {
                return q.partial_cmp(&p).unwrap_or(Ordering::Equal);
            }
        }
    }
    Ordering::Equal
}

pub fn min_eigenvalue(a: &HermitianOp) -> f64 {
    if a.dim() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(a.matrix().clone()).eigenvalues.iter().fold(f64::INFINITY, |m, &x| m.min(x))
}

/// Eigenvalues descending with eigenvectors as columns, for real symmetric input.
pub fn symmetric_eig(a: &RealMatrix) -> (Vec<f64>, RealMatrix) {
    let n = a.nrows();
    let sym = (a + a.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&x, &y| eig.eigenvalues[y].partial_cmp(&eig.eigenvalues[x]).unwrap_or(Ordering::Equal));
    let vals = idx.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = RealMatrix::from_fn(n, n, |i, j| {
        let col = eig.eigenvectors.column(idx[j]);
        let sign = col.iter().find(|x| x.abs() > 1e-8).map_or(1.0, |x| x.signum());
        col[i] * sign
    });
    (vals, vecs)
}

/// Number of singular values above `rel_tol * σ_max`.
pub fn numerical_rank(a: &ComplexMatrix, rel_tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let sv = SVD::new(a.clone(), false, false).singular_values;
    count_above(sv.as_slice(), rel_tol)
}

pub fn numerical_rank_real(a: &RealMatrix, rel_tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let sv = SVD::new(a.clone(), false, false).singular_values;
    count_above(sv.as_slice(), rel_tol)
}

fn count_above(sv: &[f64], rel_tol: f64) -> usize {
    let max = sv.iter().fold(0.0f64, |m, &x| m.max(x));
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&x| x > rel_tol * max).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, random_density, seeded_rng};

    #[test]
    fn eig_reconstructs_and_sorts() {
        let mut rng = seeded_rng(11);
        let a = random_density(5, &mut rng);
        let (vals, vecs) = hermitian_eig(&a);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        let d = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_iterator(5, vals.iter().map(|&x| c(x, 0.0))));
        let rec = &vecs * d * vecs.adjoint();
        assert!(frobenius(&(rec - a.matrix())) < 1e-12);
        let gram = vecs.adjoint() * &vecs;
        assert!(frobenius(&(gram - ComplexMatrix::identity(5, 5))) < 1e-12);
        for j in 0..5 {
            let pivot = vecs.column(j).iter().find(|x| x.norm() > 1e-8).copied().unwrap();
            assert!(pivot.im.abs() < 1e-12 && pivot.re > 0.0);
        }
    }

    #[test]
    fn eig_is_deterministic() {
        let mut rng = seeded_rng(2);
        let a = random_density(4, &mut rng);
        assert_eq!(hermitian_eig(&a), hermitian_eig(&a.clone()));
    }

    #[test]
    fn rank_of_projector() {
        let p = crate::linalg::sym_projector(3);
        assert_eq!(numerical_rank(p.matrix(), 1e-8), 6);
    }
}
