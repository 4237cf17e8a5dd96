use crate::linalg::{spin_generators, BlockMatrix, ComplexMatrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Element `λ₀ ⊕ λ⃗` of the spin factor `V_k = R ⊕ R^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinElement {
    pub scalar: f64,
    pub vector: Vec<f64>,
}

impl SpinElement {
    pub fn new(scalar: f64, vector: Vec<f64>) -> Self {
        Self { scalar, vector }
    }

    pub fn unit(k: usize) -> Self {
        Self { scalar: 1.0, vector: vec![0.0; k] }
    }

    /// The symmetry `s_a` (zero-based).
    pub fn symmetry(k: usize, a: usize) -> Self {
        let mut v = vec![0.0; k];
        v[a] = 1.0;
        Self { scalar: 0.0, vector: v }
    }

    pub fn k(&self) -> usize {
        self.vector.len()
    }

    /// `λ₀ 1 + Σ λ_p v_p` in the standard representation.
    pub fn embed(&self) -> Result<ComplexMatrix> {
        let gens = spin_generators(self.k())?;
        let n = gens[0].dim();
        let mut m = ComplexMatrix::identity(n, n) * crate::linalg::c(self.scalar, 0.0);
        for (l, g) in self.vector.iter().zip(&gens) {
            m += g.matrix() * crate::linalg::c(*l, 0.0);
        }
        Ok(m)
    }

    pub fn embed_block(&self) -> Result<BlockMatrix> {
        Ok(BlockMatrix::single(self.embed()?))
    }
}

/// `(λ₀ ⊕ λ⃗)∙(μ₀ ⊕ μ⃗) = (λ₀μ₀ + λ⃗·μ⃗) ⊕ (λ₀μ⃗ + μ₀λ⃗)`.
pub fn spin_product(x: &SpinElement, y: &SpinElement) -> Result<SpinElement> {
    if x.k() != y.k() {
        return Err(Error::DimensionMismatch { expected: x.k(), got: y.k() });
    }
    let dot: f64 = x.vector.iter().zip(&y.vector).map(|(a, b)| a * b).sum();
    let vector = x.vector.iter().zip(&y.vector).map(|(a, b)| x.scalar * b + y.scalar * a).collect();
    Ok(SpinElement { scalar: x.scalar * y.scalar + dot, vector })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, jordan_product, seeded_rng, standard_normal};

    #[test]
    fn symmetries_are_orthonormal() {
        for a in 0..4 {
            for b in 0..4 {
                let p = spin_product(&SpinElement::symmetry(4, a), &SpinElement::symmetry(4, b)).unwrap();
                let want = if a == b { SpinElement::unit(4) } else { SpinElement::new(0.0, vec![0.0; 4]) };
                assert_eq!(p, want);
            }
        }
        let x = SpinElement::new(0.3, vec![1.0, -2.0, 0.5]);
        assert_eq!(spin_product(&SpinElement::unit(3), &x).unwrap(), x);
        assert!(spin_product(&x, &SpinElement::unit(4)).is_err());
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let mut rng = seeded_rng(5);
        let mut draw =
            || SpinElement::new(standard_normal(&mut rng), (0..5).map(|_| standard_normal(&mut rng)).collect());
        let x = draw();
        let y = draw();
        let lhs = spin_product(&x, &y).unwrap().embed().unwrap();
        let rhs = jordan_product(&x.embed().unwrap(), &y.embed().unwrap());
        assert!(frobenius(&(lhs - rhs)) < 1e-12);
    }
}
