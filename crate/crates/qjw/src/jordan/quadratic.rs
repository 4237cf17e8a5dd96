use crate::linalg::{BlockMatrix, RealMatrix};
use crate::{Error, Result};

/// `U_a = 2L_a² - L_{a²}` as a real matrix on the Hermitian coordinates of
/// the ambient.
#[derive(Clone, Debug)]
pub struct QuadraticRep {
    shape: Vec<usize>,
    a: BlockMatrix,
    matrix: RealMatrix,
}

pub fn quadratic_rep(a: &BlockMatrix) -> Result<QuadraticRep> {
    let dev = a.hermitian_deviation();
    if dev > 1e-10 * a.frobenius().max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    let shape = a.shape();
    let len = BlockMatrix::herm_len(&shape);
    let a2 = a.mul(a);
    let mut matrix = RealMatrix::zeros(len, len);
    let mut e = vec![0.0; len];
    for k in 0..len {
        e[k] = 1.0;
        let x = BlockMatrix::from_herm_coords(&shape, &e);
        e[k] = 0.0;
        let u = a.jordan(&a.jordan(&x)).scale_re(2.0).sub(&a2.jordan(&x));
        matrix.column_mut(k).copy_from_slice(&u.herm_coords());
    }
    Ok(QuadraticRep { shape, a: a.clone(), matrix })
}

impl QuadraticRep {
    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn element(&self) -> &BlockMatrix {
        &self.a
    }

    pub fn apply(&self, x: &BlockMatrix) -> Result<BlockMatrix> {
        if x.shape() != self.shape {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                got: BlockMatrix::herm_len(&x.shape()),
            });
        }
        let v = crate::linalg::RealVector::from_vec(x.herm_coords());
        let out = &self.matrix * v;
        Ok(BlockMatrix::from_herm_coords(&self.shape, out.as_slice()))
    }

    /// `max_k ||U_a(e_k) - a e_k a||` over the coordinate basis.
    pub fn conjugation_residual(&self) -> f64 {
        let len = self.matrix.nrows();
        let mut e = vec![0.0; len];
        let mut worst = 0.0f64;
        for k in 0..len {
            e[k] = 1.0;
            let x = BlockMatrix::from_herm_coords(&self.shape, &e);
            e[k] = 0.0;
            let want = self.a.mul(&x).mul(&self.a);
            let got = BlockMatrix::from_herm_coords(&self.shape, self.matrix.column(k).as_slice());
            worst = worst.max(got.sub(&want).frobenius());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, min_eigenvalue, pauli, random_density, seeded_rng, HermitianOp};

    #[test]
    fn unit_gives_identity() {
        let u = quadratic_rep(&BlockMatrix::identity(&[2, 3])).unwrap();
        assert!((u.matrix() - RealMatrix::identity(13, 13)).amax() < 1e-14);
    }

    #[test]
    fn symmetry_flips_anticommuting_pauli() {
        let [_, x, _, z] = pauli();
        let u = quadratic_rep(&BlockMatrix::single(z)).unwrap();
        let got = u.apply(&BlockMatrix::single(x.clone())).unwrap();
        assert!(got.add(&BlockMatrix::single(x)).frobenius() < 1e-14);
        assert!(u.conjugation_residual() < 1e-14);
    }

    #[test]
    fn inverse_and_positivity() {
        let mut rng = seeded_rng(4);
        let a = random_density(3, &mut rng).into_matrix();
        let inv = a.clone().try_inverse().unwrap();
        let ua = quadratic_rep(&BlockMatrix::single(a)).unwrap();
        let ub = quadratic_rep(&BlockMatrix::single((&inv + inv.adjoint()) * c(0.5, 0.0))).unwrap();
        let prod = ua.matrix() * ub.matrix();
        assert!((prod - RealMatrix::identity(9, 9)).amax() < 1e-8);
        let rho = random_density(3, &mut rng);
        let out = ua.apply(&BlockMatrix::single(rho.into_matrix())).unwrap();
        assert!(min_eigenvalue(&HermitianOp::from_hermitian_part(out.block(0).clone())) > -1e-12);
    }
}
