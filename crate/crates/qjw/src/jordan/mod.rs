//! Euclidean Jordan algebras embedded in block-diagonal complex matrices.
//!
//! Every algebra lives in an ambient `⊕ M_{n_i}(C)` described by its block
//! shape. Real subspaces of Hermitian operators carry the trace form
//! `⟨x, y⟩ = Re Tr(xy)`.

mod closure;
mod compact;
mod descriptor;
mod embedding;
mod envelope;
mod identify;
mod involution;
mod quadratic;
mod reversible;
mod spin;
mod tensor;

pub use closure::{
    cstar_closure, is_jordan_closed, jordan_closure, jordan_closure_with, ClosureOptions, ClosureStats, ClosureStrategy,
};
pub use compact::{cjp_intertwiner_check, compact_structure, CjpVerdict, CompactReport, LinearMap};
pub use descriptor::{tensor_table, EjaDescriptor, Simple};
pub use embedding::{standard_embedding, EmbeddedEjc};
pub use envelope::{
    universal_envelope, universal_tensor, universal_tensor_smallcase, Envelope, SmallCase, UniversalTensorOutcome,
    DEFAULT_BUDGET,
};
pub use identify::{identify_eja, identify_eja_report, Identification};
pub use involution::{check_involution, fixed_point_subalg, Involution, InvolutionCheck, NormalForm};
pub use quadratic::{quadratic_rep, QuadraticRep};
pub use reversible::{check_reversible, check_reversible_with, ReversibilityReport, VIOLATION_TOL};
pub use spin::{spin_product, SpinElement};
pub use tensor::{canonical_tensor, canonical_tensor_with, composite_property_suite, CompositeReport, TensorResult};

use crate::linalg::{
    c, hermitian_eig, standard_normal, BlockMatrix, ComplexMatrix, HermitianOp, OperatorSubspace, SeededRng,
};
use crate::{Error, Result};

/// `a∙b = (ab + ba)/2`.
pub fn jordan_product(a: &HermitianOp, b: &HermitianOp) -> Result<HermitianOp> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    Ok(HermitianOp::from_hermitian_part(crate::linalg::jordan_product(a.matrix(), b.matrix())))
}

/// Relative tolerance for subspace membership and closure growth.
pub(crate) const SPAN_TOL: f64 = 1e-8;

/// Gap below which neighboring eigenvalues are merged into one spectral cluster.
pub(crate) const CLUSTER_GAP: f64 = 1e-6;

/// Spectral projections of a Hermitian block matrix for eigenvalues above
/// `floor`, clustered across all blocks. Returned in descending eigenvalue order.
pub(crate) fn spectral_projections(x: &BlockMatrix, floor: f64, gap: f64) -> Vec<(f64, BlockMatrix)> {
    let shape = x.shape();
    let mut pairs: Vec<(f64, usize, Vec<crate::linalg::C64>)> = Vec::new();
    for (bi, b) in x.blocks().iter().enumerate() {
        let (vals, vecs) = hermitian_eig(&HermitianOp::from_hermitian_part(b.clone()));
        for (k, v) in vals.iter().enumerate() {
            if *v > floor {
                pairs.push((*v, bi, vecs.column(k).iter().copied().collect()));
            }
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out: Vec<(f64, BlockMatrix)> = Vec::new();
    let mut last = f64::INFINITY;
    for (v, bi, vec) in pairs {
        if out.is_empty() || last - v > gap {
            out.push((v, BlockMatrix::zeros(&shape)));
        }
        last = v;
        let p = &mut out.last_mut().expect("pushed above").1.blocks_mut()[bi];
        let col = ComplexMatrix::from_column_slice(vec.len(), 1, &vec);
        *p += &col * col.adjoint();
    }
    out
}

/// Projection onto the range of a positive block matrix.
pub(crate) fn support_projection(x: &BlockMatrix, rel_tol: f64) -> BlockMatrix {
    let scale = x.blocks().iter().fold(0.0f64, |m, b| m.max(b.iter().fold(0.0f64, |a, z| a.max(z.norm()))));
    let shape = x.shape();
    let mut out = BlockMatrix::zeros(&shape);
    for (_, p) in spectral_projections(x, rel_tol * scale.max(f64::MIN_POSITIVE), f64::INFINITY) {
        out = out.add(&p);
    }
    out
}

/// Unit of the Jordan algebra spanned by `basis`: the support projection of `Σ b²`.
pub(crate) fn unit_of(basis: &[BlockMatrix], shape: &[usize]) -> BlockMatrix {
    let mut s = BlockMatrix::zeros(shape);
    for b in basis {
        s = s.add(&b.mul(b));
    }
    support_projection(&s.hermitian_part(), 1e-9)
}

/// Gaussian combination of a subspace basis, normalized.
pub(crate) fn random_element(sub: &OperatorSubspace, rng: &mut SeededRng) -> BlockMatrix {
    random_combination(sub.basis(), sub.shape(), rng)
}

pub(crate) fn random_combination(basis: &[BlockMatrix], shape: &[usize], rng: &mut SeededRng) -> BlockMatrix {
    let mut x = BlockMatrix::zeros(shape);
    for b in basis {
        x.add_scaled_mut(standard_normal(rng), b);
    }
    let n = x.frobenius();
    if n > 0.0 {
        x.scale(c(1.0 / n, 0.0))
    } else {
        x
    }
}
