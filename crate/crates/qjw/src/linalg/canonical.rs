use super::{c, ComplexMatrix, ComplexVector, HermitianOp};

pub fn identity(d: usize) -> HermitianOp {
    HermitianOp::identity(d)
}

/// The swap `W(x ⊗ y) = y ⊗ x` on `C^d ⊗ C^d`.
pub fn swap(d: usize) -> HermitianOp {
    let mut w = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            w[(j * d + i, i * d + j)] = c(1.0, 0.0);
        }
    }
    HermitianOp::from_hermitian_part(w)
}

/// `(1 + W)/2`.
pub fn sym_projector(d: usize) -> HermitianOp {
    identity(d * d).add(&swap(d)).scaled(0.5)
}

/// `(1 - W)/2`.
pub fn antisym_projector(d: usize) -> HermitianOp {
    identity(d * d).sub(&swap(d)).scaled(0.5)
}

/// `|Φ+⟩ = Σ_i |ii⟩ / √d`.
pub fn max_entangled(d: usize) -> ComplexVector {
    let s = 1.0 / (d as f64).sqrt();
    ComplexVector::from_fn(d * d, |k, _| if k / d == k % d { c(s, 0.0) } else { c(0.0, 0.0) })
}

pub fn max_entangled_projector(d: usize) -> HermitianOp {
    super::pure_state_op(&max_entangled(d))
}

/// Matrix of `vec(X) ↦ vec(X^T)` in row-major vectorization. Numerically it
/// coincides with the swap.
pub fn transpose_superop(d: usize) -> ComplexMatrix {
    swap(d).into_matrix()
}
