use super::{c, ComplexMatrix, HermitianOp};
use crate::{error::invalid, Result};

/// Quaternionic `n×n` matrix `Γ1 + Γ2 j` with complex `Γ1`, `Γ2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatrix {
    pub g1: ComplexMatrix,
    pub g2: ComplexMatrix,
}

impl QuatMatrix {
    pub fn new(g1: ComplexMatrix, g2: ComplexMatrix) -> Result<Self> {
        if !g1.is_square() || g1.shape() != g2.shape() {
            return Err(invalid("quaternionic parts must be square and equal-sized"));
        }
        Ok(Self { g1, g2 })
    }

    pub fn n(&self) -> usize {
        self.g1.nrows()
    }

    /// Quaternionic Hermitian means `Γ1` Hermitian and `Γ2` antisymmetric.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        super::frobenius(&(&self.g1 - self.g1.adjoint())) <= tol
            && super::frobenius(&(&self.g2 + self.g2.transpose())) <= tol
    }
}

/// `Γ1 + Γ2 j ↦ [[Γ1, Γ2], [-conj(Γ2), conj(Γ1)]]`, a real-linear injective
/// *-homomorphism into `M_{2n}(C)`.
pub fn symplectic_embed(q: &QuatMatrix) -> ComplexMatrix {
    let n = q.n();
    let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(&q.g1);
    out.view_mut((0, n), (n, n)).copy_from(&q.g2);
    out.view_mut((n, 0), (n, n)).copy_from(&(-q.g2.conjugate()));
    out.view_mut((n, n), (n, n)).copy_from(&q.g1.conjugate());
    out
}

/// `J = [[0, 1], [-1, 0]]` in `n×n` blocks. The symplectic involution is
/// `X ↦ J X^T J^{-1}`.
pub fn symplectic_form(n: usize) -> ComplexMatrix {
    let mut j = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = c(1.0, 0.0);
        j[(n + i, i)] = c(-1.0, 0.0);
    }
    j
}

/// The six quaternionic Pauli matrices `q0..q5` spanning `QuatHerm(2)`.
pub fn quaternionic_paulis() -> Vec<QuatMatrix> {
    let z = ComplexMatrix::zeros(2, 2);
    let m = |e: [[(f64, f64); 2]; 2]| ComplexMatrix::from_fn(2, 2, |i, j| c(e[i][j].0, e[i][j].1));
    let q0 = m([[(1., 0.), (0., 0.)], [(0., 0.), (1., 0.)]]);
    let q1 = m([[(1., 0.), (0., 0.)], [(0., 0.), (-1., 0.)]]);
    let q2 = m([[(0., 0.), (1., 0.)], [(1., 0.), (0., 0.)]]);
    let q3 = m([[(0., 0.), (0., -1.)], [(0., 1.), (0., 0.)]]);
    // q4 = [[0, -j], [j, 0]] and q5 = [[0, -k], [k, 0]] with k = ij.
    let g4 = m([[(0., 0.), (-1., 0.)], [(1., 0.), (0., 0.)]]);
    let g5 = m([[(0., 0.), (0., -1.)], [(0., 1.), (0., 0.)]]);
    vec![
        QuatMatrix { g1: q0, g2: z.clone() },
        QuatMatrix { g1: q1, g2: z.clone() },
        QuatMatrix { g1: q2, g2: z.clone() },
        QuatMatrix { g1: q3, g2: z.clone() },
        QuatMatrix { g1: z.clone(), g2: g4 },
        QuatMatrix { g1: z, g2: g5 },
    ]
}

/// Embedded quaternionic Paulis as Hermitian operators on `C^4`.
pub fn embedded_quaternionic_paulis() -> Vec<HermitianOp> {
    quaternionic_paulis().iter().map(|q| HermitianOp::from_hermitian_part(symplectic_embed(q))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius;

    #[test]
    fn quaternionic_paulis_anticommute() {
        let q = embedded_quaternionic_paulis();
        let one = ComplexMatrix::identity(4, 4);
        for a in 1..6 {
            // each non-identity generator squares to the identity
            assert!(frobenius(&(q[a].matrix() * q[a].matrix() - &one)) < 1e-14);
            for b in (a + 1)..6 {
                let ac = q[a].matrix() * q[b].matrix() + q[b].matrix() * q[a].matrix();
                assert!(frobenius(&ac) < 1e-14, "q{a} q{b}");
            }
        }
        for x in quaternionic_paulis() {
            assert!(x.is_hermitian(1e-14));
        }
    }

    #[test]
    fn embedding_is_multiplicative() {
        // (Γ1 + Γ2 j)(Δ1 + Δ2 j) = (Γ1Δ1 - Γ2 conj(Δ2)) + (Γ1Δ2 + Γ2 conj(Δ1)) j
        let a = QuatMatrix {
            g1: ComplexMatrix::from_fn(2, 2, |i, j| c(i as f64 + 1.0, j as f64)),
            g2: ComplexMatrix::from_fn(2, 2, |i, j| c(j as f64 - 0.5, i as f64 * 0.3)),
        };
        let b = QuatMatrix {
            g1: ComplexMatrix::from_fn(2, 2, |i, j| c(0.2 * j as f64, 1.0 - i as f64)),
            g2: ComplexMatrix::from_fn(2, 2, |i, j| c(0.7, (i + j) as f64)),
        };
        let prod =
            QuatMatrix { g1: &a.g1 * &b.g1 - &a.g2 * b.g2.conjugate(), g2: &a.g1 * &b.g2 + &a.g2 * b.g1.conjugate() };
        let lhs = symplectic_embed(&a) * symplectic_embed(&b);
        assert!(frobenius(&(lhs - symplectic_embed(&prod))) < 1e-12);
    }

    #[test]
    fn embedded_hermitian_fixed_by_symplectic_involution() {
        let j = symplectic_form(2);
        let jinv = j.transpose();
        for q in embedded_quaternionic_paulis() {
            let m = q.matrix();
            let phi = &j * m.transpose() * &jinv;
            assert!(frobenius(&(phi - m)) < 1e-14);
        }
    }
}
