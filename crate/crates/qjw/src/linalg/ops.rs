use super::{c, ComplexMatrix, ComplexVector, HermitianOp, C64};
use crate::{Error, Result};

/// Standard Kronecker product, left factor outer.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Hilbert-Schmidt inner product `Tr(a^† b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn frobenius(a: &ComplexMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `||a - a^†||_F`.
pub fn hermitian_deviation(a: &ComplexMatrix) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    frobenius(&(a - a.adjoint()))
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

/// `(ab + ba)/2`.
pub fn jordan_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    (a * b + b * a) * c(0.5, 0.0)
}

/// Row-major vectorization.
pub fn vec_op(a: &ComplexMatrix) -> ComplexVector {
    let (n, m) = a.shape();
    ComplexVector::from_fn(n * m, |k, _| a[(k / m, k % m)])
}

pub fn unvec(v: &ComplexVector, n: usize) -> ComplexMatrix {
    let m = v.len() / n;
    ComplexMatrix::from_fn(n, m, |i, j| v[i * m + j])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

fn check_bipartite(rho: &ComplexMatrix, d1: usize, d2: usize) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::NotSquare { rows: rho.nrows(), cols: rho.ncols() });
    }
    if rho.nrows() != d1 * d2 {
        return Err(Error::DimensionMismatch { expected: d1 * d2, got: rho.nrows() });
    }
    Ok(())
}

/// Traces out one factor of an operator on `C^{d1} ⊗ C^{d2}`; `keep` names the
/// factor that survives.
pub fn partial_trace(rho: &HermitianOp, d1: usize, d2: usize, keep: Subsystem) -> Result<HermitianOp> {
    let m = rho.matrix();
    check_bipartite(m, d1, d2)?;
    let out = match keep {
        Subsystem::First => ComplexMatrix::from_fn(d1, d1, |i, j| (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum()),
        Subsystem::Second => ComplexMatrix::from_fn(d2, d2, |k, l| (0..d1).map(|i| m[(i * d2 + k, i * d2 + l)]).sum()),
    };
    Ok(HermitianOp::from_hermitian_part(out))
}

/// Partial transpose on the named factor.
pub fn partial_transpose(rho: &HermitianOp, d1: usize, d2: usize, which: Subsystem) -> Result<HermitianOp> {
    let m = rho.matrix();
    check_bipartite(m, d1, d2)?;
    let out = ComplexMatrix::from_fn(d1 * d2, d1 * d2, |r, s| {
        let (i, k) = (r / d2, r % d2);
        let (j, l) = (s / d2, s % d2);
        match which {
            Subsystem::Second => m[(i * d2 + l, j * d2 + k)],
            Subsystem::First => m[(j * d2 + k, i * d2 + l)],
        }
    });
    Ok(HermitianOp::from_hermitian_part(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_density, seeded_rng};

    #[test]
    fn kron_is_left_outer() {
        let a = ComplexMatrix::from_row_slice(2, 2, &[c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.)]);
        let b = ComplexMatrix::identity(2, 2);
        let k = kron(&a, &b);
        assert_eq!(k[(0, 2)], c(2., 0.));
        assert_eq!(k[(1, 3)], c(2., 0.));
        assert_eq!(k[(2, 0)], c(3., 0.));
    }

    #[test]
    fn partial_trace_of_product_recovers_factors() {
        let mut rng = seeded_rng(3);
        let a = random_density(2, &mut rng);
        let b = random_density(3, &mut rng);
        let ab = a.kron(&b);
        let ra = partial_trace(&ab, 2, 3, Subsystem::First).unwrap();
        let rb = partial_trace(&ab, 2, 3, Subsystem::Second).unwrap();
        assert!(frobenius(&(ra.matrix() - a.matrix())) < 1e-13);
        assert!(frobenius(&(rb.matrix() - b.matrix())) < 1e-13);
    }

    #[test]
    fn partial_transpose_of_product_transposes_one_factor() {
        let mut rng = seeded_rng(5);
        let a = random_density(2, &mut rng);
        let b = random_density(3, &mut rng);
        let ab = a.kron(&b);
        let pt2 = partial_transpose(&ab, 2, 3, Subsystem::Second).unwrap();
        let want = kron(a.matrix(), &b.matrix().transpose());
        assert!(frobenius(&(pt2.matrix() - want)) < 1e-13);
        let pt1 = partial_transpose(&ab, 2, 3, Subsystem::First).unwrap();
        let want = kron(&a.matrix().transpose(), b.matrix());
        assert!(frobenius(&(pt1.matrix() - want)) < 1e-13);
    }

    #[test]
    fn vec_roundtrip() {
        let a = ComplexMatrix::from_fn(2, 3, |i, j| c(i as f64, j as f64));
        assert_eq!(unvec(&vec_op(&a), 2), a);
        assert_eq!(vec_op(&a)[4], a[(1, 1)]);
    }
}
