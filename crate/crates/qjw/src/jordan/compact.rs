use super::tensor::pure_tensor_generators;
use super::{jordan_closure, EmbeddedEjc, Involution};
use crate::linalg::{
    c, haar_unitary, hermitian_eig, kron, seeded_rng, standard_normal, BlockMatrix, ComplexMatrix, HermitianOp, C64,
};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Complex-linear map between block ambients, stored as the matrix of its
/// action on matrix units (row-major within each block, blocks in order).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    from: Vec<usize>,
    to: Vec<usize>,
    matrix: ComplexMatrix,
}

fn units(shape: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (b, &n) in shape.iter().enumerate() {
        for r in 0..n {
            for s in 0..n {
                out.push((b, r, s));
            }
        }
    }
    out
}

fn unit_matrix(shape: &[usize], (b, r, s): (usize, usize, usize)) -> BlockMatrix {
    let mut m = BlockMatrix::zeros(shape);
    m.blocks_mut()[b][(r, s)] = c(1.0, 0.0);
    m
}

fn to_vector(x: &BlockMatrix) -> Vec<C64> {
    x.blocks().iter().flat_map(|b| b.transpose().iter().copied().collect::<Vec<_>>()).collect()
}

fn from_vector(shape: &[usize], v: &[C64]) -> BlockMatrix {
    let mut k = 0;
    let blocks = shape
        .iter()
        .map(|&n| {
            let m = ComplexMatrix::from_fn(n, n, |i, j| v[k + i * n + j]);
            k += n * n;
            m
        })
        .collect();
    BlockMatrix::new(blocks)
}

impl LinearMap {
    pub fn from_fn(from: &[usize], to: &[usize], f: impl Fn(&BlockMatrix) -> BlockMatrix) -> Self {
        let us = units(from);
        let rows: usize = to.iter().map(|n| n * n).sum();
        let mut matrix = ComplexMatrix::zeros(rows, us.len());
        for (j, u) in us.iter().enumerate() {
            let img = to_vector(&f(&unit_matrix(from, *u)));
            for (i, z) in img.into_iter().enumerate() {
                matrix[(i, j)] = z;
            }
        }
        Self { from: from.to_vec(), to: to.to_vec(), matrix }
    }

    pub fn identity(shape: &[usize]) -> Self {
        Self::from_fn(shape, shape, |x| x.clone())
    }

    /// `x ↦ Tr(a x)` into the one-dimensional ambient.
    pub fn functional(a: &BlockMatrix) -> Self {
        let a = a.clone();
        Self::from_fn(&a.shape(), &[1], move |x| {
            BlockMatrix::single(ComplexMatrix::from_element(1, 1, a.mul(x).trace()))
        })
    }

    pub fn from_shape(&self) -> &[usize] {
        &self.from
    }

    pub fn to_shape(&self) -> &[usize] {
        &self.to
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &BlockMatrix) -> Result<BlockMatrix> {
        if x.shape() != self.from {
            return Err(Error::DimensionMismatch { expected: self.matrix.ncols(), got: to_vector(x).len() });
        }
        let v = crate::linalg::ComplexVector::from_vec(to_vector(x));
        let out = &self.matrix * v;
        Ok(from_vector(&self.to, out.as_slice()))
    }

    /// `φ ⊗ id` on `ambient(from) ⊗ partner`, evaluated blockwise: each block
    /// `(i, j)` is split as `Σ E_rs ⊗ X_rs` and mapped to `Σ φ(E_rs) ⊗ X_rs`.
    pub fn apply_tensor_id(&self, x: &BlockMatrix, partner: &[usize]) -> Result<BlockMatrix> {
        let in_shape = BlockMatrix::kron_shape(&self.from, partner);
        if x.shape() != in_shape {
            return Err(Error::DimensionMismatch {
                expected: BlockMatrix::herm_len(&in_shape),
                got: BlockMatrix::herm_len(&x.shape()),
            });
        }
        let np = partner.len();
        let out_shape = BlockMatrix::kron_shape(&self.to, partner);
        let mut out = BlockMatrix::zeros(&out_shape);
        for (i, &n) in self.from.iter().enumerate() {
            for (j, &m) in partner.iter().enumerate() {
                let blk = x.block(i * np + j);
                for r in 0..n {
                    for s in 0..n {
                        let xrs = blk.view((r * m, s * m), (m, m)).clone_owned();
                        if xrs.iter().all(|z| z.norm() == 0.0) {
                            continue;
                        }
                        let img = self.apply(&unit_matrix(&self.from, (i, r, s)))?;
                        for (ip, b) in img.blocks().iter().enumerate() {
                            out.blocks_mut()[ip * np + j] += kron(b, &xrs);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Smallest eigenvalue over the Choi blocks `Σ E_rs ⊗ φ(E_rs)_k`.
    pub fn choi_min_eigenvalue(&self) -> Result<f64> {
        let mut worst = f64::INFINITY;
        for (i, &n) in self.from.iter().enumerate() {
            for (k, &m) in self.to.iter().enumerate() {
                let mut choi = ComplexMatrix::zeros(n * m, n * m);
                for r in 0..n {
                    for s in 0..n {
                        let img = self.apply(&unit_matrix(&self.from, (i, r, s)))?;
                        let mut e = ComplexMatrix::zeros(n, n);
                        e[(r, s)] = c(1.0, 0.0);
                        choi += kron(&e, img.block(k));
                    }
                }
                let (vals, _) = hermitian_eig(&HermitianOp::from_hermitian_part(choi));
                worst = worst.min(vals.last().copied().unwrap_or(0.0));
            }
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactReport {
    pub min_eigenvalue: f64,
    /// `max |⟨a⊗b̄, ε⟩ - ⟨a, b⟩|` over sampled pairs.
    pub pairing_residual: f64,
    /// Both zig-zag identities evaluated on the matrix-unit basis.
    pub snake_residuals: [f64; 2],
    /// `||(Φ⊗Φ̄)(ε) - ε||` when an involution was supplied.
    pub involution_residual: Option<f64>,
    pub pass: bool,
}

/// `ε = Σ e ⊗ ē` over a seeded random orthonormal basis of the ambient.
pub fn epsilon(shape: &[usize], seed: u64) -> (BlockMatrix, Vec<BlockMatrix>) {
    let mut rng = seeded_rng(seed);
    let kshape = BlockMatrix::kron_shape(shape, shape);
    let mut eps = BlockMatrix::zeros(&kshape);
    let mut basis = Vec::new();
    let nb = shape.len();
    for (b, &n) in shape.iter().enumerate() {
        // a unitary on the n²-dimensional block gives an orthonormal basis
        let u = haar_unitary(n * n, &mut rng);
        for col in 0..n * n {
            let e = ComplexMatrix::from_fn(n, n, |i, j| u[(i * n + j, col)]);
            eps.blocks_mut()[b * nb + b] += kron(&e, &e.conjugate());
            basis.push(BlockMatrix::embed_block(shape, b, e));
        }
    }
    (eps, basis)
}

/// Checks the compact-closed structure of an ambient: ε is positive, pairs
/// correctly with `a ⊗ b̄`, satisfies both snake identities, and is fixed by
/// `Φ ⊗ Φ̄` for the supplied involution.
pub fn compact_structure(shape: &[usize], involution: Option<&Involution>, seed: u64) -> Result<CompactReport> {
    let (eps, basis) = epsilon(shape, seed);
    let mut min_eigenvalue = f64::INFINITY;
    for b in eps.blocks() {
        let (vals, _) = hermitian_eig(&HermitianOp::from_hermitian_part(b.clone()));
        min_eigenvalue = min_eigenvalue.min(vals.last().copied().unwrap_or(0.0));
    }
    let mut rng = seeded_rng(seed ^ 0x5a5a);
    let rand = |rng: &mut crate::linalg::SeededRng| {
        let v: Vec<f64> = (0..BlockMatrix::full_len(shape)).map(|_| standard_normal(rng)).collect();
        BlockMatrix::from_full_coords(shape, &v)
    };
    let mut pairing_residual = 0.0f64;
    for _ in 0..50 {
        let a = rand(&mut rng);
        let b = rand(&mut rng);
        let lhs = a.kron(&b.conjugate()).hs_inner(&eps);
        let rhs = a.hs_inner(&b);
        pairing_residual = pairing_residual.max((lhs - rhs).norm() / (a.frobenius() * b.frobenius()));
    }
    // zig-zag: v ↦ Σ_e ⟨e, v⟩ e on the space and its conjugate on the dual
    let mut snake = [0.0f64; 2];
    for (k, &n) in shape.iter().enumerate() {
        for r in 0..n {
            for s in 0..n {
                let v = unit_matrix(shape, (k, r, s));
                let mut first = BlockMatrix::zeros(shape);
                let mut second = BlockMatrix::zeros(shape);
                for e in &basis {
                    first = first.add(&e.scale(e.hs_inner(&v)));
                    second = second.add(&e.conjugate().scale(e.hs_inner(&v).conj()));
                }
                snake[0] = snake[0].max(first.sub(&v).frobenius());
                snake[1] = snake[1].max(second.sub(&v.conjugate()).frobenius());
            }
        }
    }
    let involution_residual = match involution {
        Some(inv) => {
            let nf = inv.normal_form()?;
            if nf.shape() != shape {
                return Err(Error::DimensionMismatch {
                    expected: BlockMatrix::herm_len(shape),
                    got: BlockMatrix::herm_len(&nf.shape()),
                });
            }
            let both = nf.tensor(&nf.conjugate());
            Some(both.apply(&eps)?.sub(&eps).frobenius())
        }
        None => None,
    };
    let tol = 1e-10;
    let pass = min_eigenvalue > -tol
        && pairing_residual < tol
        && snake.iter().all(|s| *s < tol)
        && involution_residual.is_none_or(|r| r < tol);
    Ok(CompactReport { min_eigenvalue, pairing_residual, snake_residuals: snake, involution_residual, pass })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CjpVerdict {
    pub choi_min_eigenvalue: f64,
    pub completely_positive: bool,
    /// `max ||Φ_B(φ(x)) - φ(Φ_A(x))||` over matrix units.
    pub intertwining_residual: f64,
    /// Per partner `C`: largest relative distance of `(φ⊗id)(z)` from `B ⊙ C`
    /// over a basis `z` of `A ⊙ C`.
    pub partner_residuals: Vec<f64>,
    pub jordan_preserving: bool,
    pub pass: bool,
}

/// Checks that `φ: ambient(A) → ambient(B)` is completely positive,
/// intertwines the involutions, and maps `A ⊙ C` into `B ⊙ C` for each partner.
pub fn cjp_intertwiner_check(
    phi: &LinearMap,
    inv_a: &Involution,
    inv_b: &Involution,
    domain: &EmbeddedEjc,
    codomain: &EmbeddedEjc,
    partners: &[EmbeddedEjc],
) -> Result<CjpVerdict> {
    if phi.from_shape() != domain.shape() || phi.to_shape() != codomain.shape() {
        return Err(crate::error::invalid("map shapes do not match the supplied algebras"));
    }
    let tol = 1e-9;
    let choi = phi.choi_min_eigenvalue()?;
    let (fa, fb) = (inv_a.normal_form()?, inv_b.normal_form()?);
    let mut inter = 0.0f64;
    for u in units(phi.from_shape()) {
        let x = unit_matrix(phi.from_shape(), u);
        let lhs = fb.apply(&phi.apply(&x)?)?;
        let rhs = phi.apply(&fa.apply(&x)?)?;
        inter = inter.max(lhs.sub(&rhs).frobenius());
    }
    let mut partner_residuals = Vec::with_capacity(partners.len());
    for p in partners {
        let ac_shape = BlockMatrix::kron_shape(domain.shape(), p.shape());
        let bc_shape = BlockMatrix::kron_shape(codomain.shape(), p.shape());
        let ac = jordan_closure(&pure_tensor_generators(domain.generators(), p.generators()), &ac_shape)?;
        let bc = jordan_closure(&pure_tensor_generators(codomain.generators(), p.generators()), &bc_shape)?;
        let mut worst = 0.0f64;
        for z in ac.basis() {
            let img = phi.apply_tensor_id(z, p.shape())?;
            let n = img.frobenius();
            if n > 1e-12 {
                let dev = img.hermitian_deviation() / n;
                worst = worst.max(dev).max(bc.relative_residual(&img.hermitian_part()));
            }
        }
        partner_residuals.push(worst);
    }
    let completely_positive = choi > -tol;
    let jordan_preserving = partner_residuals.iter().all(|r| *r < 1e-8);
    let pass = completely_positive && inter < tol && jordan_preserving;
    Ok(CjpVerdict {
        choi_min_eigenvalue: choi,
        completely_positive,
        intertwining_residual: inter,
        partner_residuals,
        jordan_preserving,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{standard_embedding, universal_envelope, EjaDescriptor, Simple};
    use crate::linalg::{pauli, ComplexMatrix};

    fn trivial() -> EmbeddedEjc {
        EmbeddedEjc::new(EjaDescriptor::simple(Simple::real(1)), vec![1], vec![BlockMatrix::identity(&[1])]).unwrap()
    }

    #[test]
    fn trivial_ambient_has_unit_epsilon() {
        let r = compact_structure(&[1], Some(&Involution::Transpose(1)), 1).unwrap();
        assert!(r.pass, "{r:?}");
        let (eps, _) = epsilon(&[1], 1);
        assert!((eps.block(0)[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn pairing_and_invariance() {
        assert!(compact_structure(&[2], None, 2).unwrap().pass);
        let r = compact_structure(&[2], Some(&Involution::Transpose(2)), 3).unwrap();
        assert!(r.pass && r.involution_residual.unwrap() < 1e-12, "{r:?}");
        let cq = universal_envelope(&"complex:2+quat:2".parse().unwrap()).unwrap();
        assert!(compact_structure(cq.shape(), Some(&cq.involution), 4).unwrap().pass);
    }

    #[test]
    fn identity_map_passes() {
        let a = standard_embedding(&"real:2".parse().unwrap()).unwrap();
        let id = LinearMap::identity(a.shape());
        let v = cjp_intertwiner_check(
            &id,
            &Involution::Transpose(2),
            &Involution::Transpose(2),
            &a,
            &a,
            std::slice::from_ref(&a),
        )
        .unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn fixed_state_is_a_morphism_to_the_unit() {
        let a = standard_embedding(&"real:2".parse().unwrap()).unwrap();
        let [s0, x, _, z] = pauli();
        let rho = (s0 + x * c(0.3, 0.0) + z * c(0.2, 0.0)) * c(0.5, 0.0);
        let phi = LinearMap::functional(&BlockMatrix::single(rho));
        let partner = standard_embedding(&"real:2".parse().unwrap()).unwrap();
        let v = cjp_intertwiner_check(
            &phi,
            &Involution::Transpose(2),
            &Involution::Transpose(1),
            &a,
            &trivial(),
            &[partner],
        )
        .unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn tensor_id_matches_dense_evaluation() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c(0.0, 2.0);
        let phi = LinearMap::from_fn(&[2], &[2], |x| BlockMatrix::single(x.block(0).transpose()));
        let x = BlockMatrix::single(kron(&m, &ComplexMatrix::identity(3, 3)));
        let out = phi.apply_tensor_id(&x, &[3]).unwrap();
        let want = kron(&m.transpose(), &ComplexMatrix::identity(3, 3));
        assert!(crate::linalg::frobenius(&(out.block(0) - want)) < 1e-14);
    }
}
