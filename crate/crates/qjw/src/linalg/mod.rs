//! Dense complex linear algebra shared by every other module.
//!
//! Matrices are `nalgebra` dynamic matrices over `Complex64`. Tensor products
//! use the standard Kronecker convention: `kron(a, b)[(i*p + k, j*q + l)] =
//! a[(i, j)] * b[(k, l)]`, so the left factor is the outer index. Row-major
//! vectorization `vec(A)[i*n + j] = A[(i, j)]` is used whenever an operator is
//! treated as a vector.

mod bases;
mod block;
mod canonical;
mod eig;
mod ops;
mod quat;
mod random;
mod subspace;

pub use bases::{gell_mann, pauli, spin_generators, PAULI_I, PAULI_X, PAULI_Y, PAULI_Z};
pub use block::BlockMatrix;
pub use canonical::{
    antisym_projector, identity, max_entangled, max_entangled_projector, swap, sym_projector, transpose_superop,
};
pub use eig::{hermitian_eig, min_eigenvalue, numerical_rank, numerical_rank_real, symmetric_eig};
pub use ops::{
    commutator, frobenius, hermitian_deviation, hs_inner, jordan_product, kron, partial_trace, partial_transpose,
    unvec, vec_op, Subsystem,
};
pub use quat::{embedded_quaternionic_paulis, quaternionic_paulis, symplectic_embed, symplectic_form, QuatMatrix};
pub use random::{
    haar_unitary, random_density, random_orthogonal, random_pure_state, seeded_rng, standard_normal, SeededRng,
};
pub use subspace::{orthonormalize_real, Field, OperatorSubspace, RealSpan};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

pub use num_complex::Complex64 as C64;

pub type ComplexMatrix = nalgebra::DMatrix<C64>;
pub type ComplexVector = nalgebra::DVector<C64>;
pub type RealMatrix = nalgebra::DMatrix<f64>;
pub type RealVector = nalgebra::DVector<f64>;

pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Numerical tolerances used across the crate. Defaults follow the build contract.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative Hermiticity tolerance, multiplied by the Frobenius norm.
    pub herm: f64,
    /// Orthogonality and residual checks in design verification.
    pub orth: f64,
    /// Relative singular-value cut for numerical rank and span membership.
    pub rank: f64,
    /// Eigenvalue clustering.
    pub eig: f64,
    /// Unitarity of generated unitaries.
    pub unitary: f64,
    /// Positive semidefiniteness.
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { herm: 1e-10, orth: 1e-9, rank: 1e-8, eig: 1e-9, unitary: 1e-12, psd: 1e-9 }
    }
}

/// A Hermitian operator. Construction checks Hermiticity and stores the exact
/// Hermitian part so downstream code never sees drift.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOp(ComplexMatrix);

impl HermitianOp {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::default().herm)
    }

    pub fn with_tolerance(m: ComplexMatrix, rel_tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        let dev = hermitian_deviation(&m);
        let scale = frobenius(&m).max(1.0);
        if dev > rel_tol * scale {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self::from_hermitian_part(m))
    }

    /// `(m + m^†)/2` without any check.
    pub fn from_hermitian_part(m: ComplexMatrix) -> Self {
        let h = (&m + m.adjoint()) * c(0.5, 0.0);
        Self(h)
    }

    pub fn identity(d: usize) -> Self {
        Self(ComplexMatrix::identity(d, d))
    }

    pub fn zeros(d: usize) -> Self {
        Self(ComplexMatrix::zeros(d, d))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `Tr(self * other)`, real for Hermitian arguments.
    pub fn inner(&self, other: &HermitianOp) -> f64 {
        hs_inner(&self.0, &other.0).re
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(&self.0 * c(s, 0.0))
    }

    pub fn add(&self, other: &HermitianOp) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &HermitianOp) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn kron(&self, other: &HermitianOp) -> Self {
        Self(kron(&self.0, &other.0))
    }

    pub fn norm(&self) -> f64 {
        frobenius(&self.0)
    }

    /// Checks that `self` is a density operator: unit trace and PSD.
    pub fn validate_state(&self, tol: &Tolerances) -> Result<()> {
        let t = self.trace();
        if (t - 1.0).abs() > tol.herm.max(1e-10) {
            return Err(Error::NotUnitTrace(t));
        }
        let m = min_eigenvalue(self);
        if m < -tol.psd {
            return Err(Error::NotPsd(m));
        }
        Ok(())
    }
}

/// Density matrix of a pure state vector.
pub fn pure_state_op(psi: &ComplexVector) -> HermitianOp {
    HermitianOp::from_hermitian_part(psi * psi.adjoint())
}

/// Real-valued matrix lifted to complex entries.
pub fn complexify(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| c(x, 0.0))
}

/// Wire format for matrices: `{"rows", "cols", "entries"}` with row-major
/// `[re, im]` entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let entries = (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| [m[(i, j)].re, m[(i, j)].im])).collect();
        Self { rows: m.nrows(), cols: m.ncols(), entries }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(crate::error::invalid("empty matrix"));
        }
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: self.entries.len() });
        }
        Ok(ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.entries[i * self.cols + j];
            c(re, im)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_json_layout() {
        let m = ComplexMatrix::from_row_slice(
            2,
            3,
            &[c(1.0, 0.0), c(2.0, -1.0), c(0.0, 0.0), c(3.0, 0.5), c(4.0, 0.0), c(5.0, 0.0)],
        );
        let j = MatrixJson::from_matrix(&m);
        assert_eq!((j.rows, j.cols), (2, 3));
        assert_eq!(j.entries[1], [2.0, -1.0]);
        assert_eq!(j.entries[3], [3.0, 0.5]);
        assert_eq!(j.to_matrix().unwrap(), m);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with(r#"{"rows":2,"cols":3,"entries":[[1.0,0.0]"#), "{text}");
    }

    #[test]
    fn matrix_json_rejects_wrong_length() {
        let j = MatrixJson { rows: 2, cols: 2, entries: vec![[1.0, 0.0]; 3] };
        assert!(matches!(j.to_matrix(), Err(Error::DimensionMismatch { expected: 4, got: 3 })));
        assert!(MatrixJson { rows: 0, cols: 0, entries: vec![] }.to_matrix().is_err());
    }
}
