use super::SPAN_TOL;
use crate::linalg::{
    c, kron, seeded_rng, standard_normal, symplectic_form, BlockMatrix, ComplexMatrix, Field, OperatorSubspace,
};
use crate::{error::invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Involutive *-antiautomorphism of a block ambient. Each tag carries its
/// block size so tensor products know their factor shapes.
#[derive(Clone, Debug, PartialEq)]
pub enum Involution {
    /// `x ↦ xᵀ` on `M_n`.
    Transpose(usize),
    /// `x ↦ J xᵀ J⁻¹ = -J xᵀ J` on `M_2n`.
    Symplectic(usize),
    /// `(a, b) ↦ (bᵀ, aᵀ)` on `M_n ⊕ M_n`.
    SwapTranspose(usize),
    /// `x ↦ C xᵀ C⁻¹` on `M_n` for unitary `C` with `C C̄ = ±1`.
    Congruence(ComplexMatrix),
    /// `(a, b) ↦ (C bᵀ C⁻¹, C aᵀ C⁻¹)` on `M_n ⊕ M_n`.
    SwapCongruence(ComplexMatrix),
    TensorOf(Box<Involution>, Box<Involution>),
    DirectSumOf(Vec<Involution>),
}

/// `Φ(x)_i = C_i x_{σ(i)}ᵀ C_i⁻¹`: every supported involution in one form.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub perm: Vec<usize>,
    pub conj: Vec<ComplexMatrix>,
    pub conj_inv: Vec<ComplexMatrix>,
}

impl NormalForm {
    pub fn shape(&self) -> Vec<usize> {
        self.conj.iter().map(|m| m.nrows()).collect()
    }

    pub fn apply(&self, x: &BlockMatrix) -> Result<BlockMatrix> {
        if x.shape() != self.shape() {
            return Err(Error::DimensionMismatch {
                expected: BlockMatrix::herm_len(&self.shape()),
                got: BlockMatrix::herm_len(&x.shape()),
            });
        }
        Ok(BlockMatrix::new(
            (0..self.perm.len())
                .map(|i| &self.conj[i] * x.block(self.perm[i]).transpose() * &self.conj_inv[i])
                .collect(),
        ))
    }

    /// `Φ ⊗ Ψ` on the Kronecker block shape.
    pub fn tensor(&self, other: &Self) -> Self {
        let nb = other.perm.len();
        let mut nf = NormalForm { perm: Vec::new(), conj: Vec::new(), conj_inv: Vec::new() };
        for i in 0..self.perm.len() {
            for j in 0..nb {
                nf.perm.push(self.perm[i] * nb + other.perm[j]);
                nf.conj.push(kron(&self.conj[i], &other.conj[j]));
                nf.conj_inv.push(kron(&self.conj_inv[i], &other.conj_inv[j]));
            }
        }
        nf
    }

    /// `x ↦ conj(Φ(conj x))`, the involution of the conjugate algebra.
    pub fn conjugate(&self) -> Self {
        Self {
            perm: self.perm.clone(),
            conj: self.conj.iter().map(|m| m.conjugate()).collect(),
            conj_inv: self.conj_inv.iter().map(|m| m.conjugate()).collect(),
        }
    }
}

fn single(m: ComplexMatrix) -> Result<NormalForm> {
    let inv = m.clone().try_inverse().ok_or_else(|| invalid("congruence matrix is singular"))?;
    Ok(NormalForm { perm: vec![0], conj: vec![m], conj_inv: vec![inv] })
}

fn swapped(m: ComplexMatrix) -> Result<NormalForm> {
    let inv = m.clone().try_inverse().ok_or_else(|| invalid("congruence matrix is singular"))?;
    Ok(NormalForm { perm: vec![1, 0], conj: vec![m.clone(), m], conj_inv: vec![inv.clone(), inv] })
}

impl Involution {
    pub fn normal_form(&self) -> Result<NormalForm> {
        match self {
            Self::Transpose(n) => single(ComplexMatrix::identity(*n, *n)),
            Self::Symplectic(n) => single(symplectic_form(*n)),
            Self::SwapTranspose(n) => swapped(ComplexMatrix::identity(*n, *n)),
            Self::Congruence(m) => single(m.clone()),
            Self::SwapCongruence(m) => swapped(m.clone()),
            Self::TensorOf(a, b) => Ok(a.normal_form()?.tensor(&b.normal_form()?)),
            Self::DirectSumOf(parts) => {
                let mut nf = NormalForm { perm: Vec::new(), conj: Vec::new(), conj_inv: Vec::new() };
                for p in parts {
                    let f = p.normal_form()?;
                    let off = nf.perm.len();
                    nf.perm.extend(f.perm.iter().map(|k| k + off));
                    nf.conj.extend(f.conj);
                    nf.conj_inv.extend(f.conj_inv);
                }
                Ok(nf)
            }
        }
    }

    pub fn shape(&self) -> Result<Vec<usize>> {
        Ok(self.normal_form()?.shape())
    }

    pub fn apply(&self, x: &BlockMatrix) -> Result<BlockMatrix> {
        self.normal_form()?.apply(x)
    }

    /// Short structural description, e.g. `Transpose(2) ⊗ Symplectic(2)`.
    pub fn describe(&self) -> String {
        match self {
            Self::Transpose(n) => format!("Transpose({n})"),
            Self::Symplectic(n) => format!("Symplectic({n})"),
            Self::SwapTranspose(n) => format!("SwapTranspose({n})"),
            Self::Congruence(m) => format!("Congruence({})", m.nrows()),
            Self::SwapCongruence(m) => format!("SwapCongruence({})", m.nrows()),
            Self::TensorOf(a, b) => format!("({}) ⊗ ({})", a.describe(), b.describe()),
            Self::DirectSumOf(v) => v.iter().map(|p| p.describe()).collect::<Vec<_>>().join(" ⊕ "),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionCheck {
    /// `max ||Φ(Φ(x)) - x||`.
    pub involutive: f64,
    /// `max ||Φ(xy) - Φ(y)Φ(x)||`.
    pub antimultiplicative: f64,
    /// `max ||Φ(x†) - Φ(x)†||`.
    pub star: f64,
    /// `max |⟨Φx, Φy⟩ - ⟨x, y⟩|`.
    pub unitary: f64,
    /// `max |⟨Φx, y⟩ - ⟨x, Φy⟩|`.
    pub self_adjoint: f64,
    pub pairs: usize,
}

impl InvolutionCheck {
    pub fn worst(&self) -> f64 {
        [self.involutive, self.antimultiplicative, self.star, self.unitary, self.self_adjoint]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn random_matrix(shape: &[usize], rng: &mut crate::linalg::SeededRng) -> BlockMatrix {
    let n = BlockMatrix::full_len(shape);
    let v: Vec<f64> = (0..n).map(|_| standard_normal(rng)).collect();
    let x = BlockMatrix::from_full_coords(shape, &v);
    let s = x.frobenius();
    x.scale(c(1.0 / s, 0.0))
}

/// Samples `pairs` random normalized pairs and reports the worst violation of
/// each defining property.
pub fn check_involution(inv: &Involution, pairs: usize, seed: u64) -> Result<InvolutionCheck> {
    let nf = inv.normal_form()?;
    let shape = nf.shape();
    let mut rng = seeded_rng(seed);
    let mut out =
        InvolutionCheck { involutive: 0.0, antimultiplicative: 0.0, star: 0.0, unitary: 0.0, self_adjoint: 0.0, pairs };
    for _ in 0..pairs {
        let x = random_matrix(&shape, &mut rng);
        let y = random_matrix(&shape, &mut rng);
        let fx = nf.apply(&x)?;
        let fy = nf.apply(&y)?;
        out.involutive = out.involutive.max(nf.apply(&fx)?.sub(&x).frobenius());
        out.antimultiplicative = out.antimultiplicative.max(nf.apply(&x.mul(&y))?.sub(&fy.mul(&fx)).frobenius());
        out.star = out.star.max(nf.apply(&x.adjoint())?.sub(&fx.adjoint()).frobenius());
        out.unitary = out.unitary.max((fx.hs_inner(&fy) - x.hs_inner(&y)).norm());
        out.self_adjoint = out.self_adjoint.max((fx.hs_inner(&y) - x.hs_inner(&fy)).norm());
    }
    Ok(out)
}

/// Orthonormal basis of `{x = x† : Φ(x) = x}`, from averaging `(x + Φx)/2`
/// over the Hermitian coordinate basis.
pub fn fixed_point_subalg(inv: &Involution) -> Result<OperatorSubspace> {
    let nf = inv.normal_form()?;
    let shape = nf.shape();
    let len = BlockMatrix::herm_len(&shape);
    let mut sub = OperatorSubspace::new(&shape, Field::Real, SPAN_TOL);
    let mut cands = Vec::with_capacity(len);
    let mut e = vec![0.0; len];
    for k in 0..len {
        e[k] = 1.0;
        let x = BlockMatrix::from_herm_coords(&shape, &e);
        e[k] = 0.0;
        let avg = x.add(&nf.apply(&x)?).scale_re(0.5).hermitian_part();
        cands.push(avg);
    }
    sub.extend_with_floor(&cands, 1.0);
    Ok(sub)
}
