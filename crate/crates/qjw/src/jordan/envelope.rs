use super::embedding::standard_simple;
use super::tensor::pure_tensor_generators;
use super::{
    cstar_closure, identify_eja_report, jordan_closure_with, ClosureOptions, ClosureStrategy, EjaDescriptor,
    EmbeddedEjc, Identification, Involution, Simple,
};
use crate::linalg::{c, hermitian_eig, kron, spin_generators, BlockMatrix, ComplexMatrix, HermitianOp};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Universal C*-envelope of an EJA: the ambient, the universal embedding
/// `ψ` (as an [`EmbeddedEjc`]) and the canonical involution fixing `ψ`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub embedding: EmbeddedEjc,
    pub involution: Involution,
    pub expected_complex_dim: usize,
    /// Complex dimension of the C*-algebra generated by `ψ`, computed when
    /// the ambient is small.
    pub verified_complex_dim: Option<usize>,
}

impl Envelope {
    pub fn shape(&self) -> &[usize] {
        self.embedding.shape()
    }

    /// E.g. `M2(C) ⊕ M2(C)`.
    pub fn description(&self) -> String {
        self.shape().iter().map(|n| format!("M{n}(C)")).collect::<Vec<_>>().join(" ⊕ ")
    }

    pub fn generates_ambient(&self) -> Option<bool> {
        self.verified_complex_dim.map(|d| d == self.expected_complex_dim)
    }
}

/// Ambient complex dimension up to which generation is verified by closure.
const VERIFY_LIMIT: usize = 64;

struct Part {
    shape: Vec<usize>,
    gens: Vec<BlockMatrix>,
    inv: Involution,
}

/// `C` with `C v_pᵀ C⁻¹ = sign_p v_p` for every `p`, scaled to be unitary.
/// `None` when no such `C` exists.
fn congruence_for(vs: &[ComplexMatrix], signs: &[f64]) -> Option<ComplexMatrix> {
    let n = vs[0].nrows();
    let id = ComplexMatrix::identity(n, n);
    // row-major vec: vec(C vᵀ) = (1 ⊗ v) vec C and vec(v C) = (v ⊗ 1) vec C
    let mut h = ComplexMatrix::zeros(n * n, n * n);
    for (v, s) in vs.iter().zip(signs) {
        let m = kron(&id, v) - kron(v, &id) * c(*s, 0.0);
        h += m.adjoint() * m;
    }
    let (vals, vecs) = hermitian_eig(&HermitianOp::from_hermitian_part(h));
    let last = vals.len() - 1;
    if vals[last] > 1e-10 {
        return None;
    }
    let v = vecs.column(last);
    let cm = ComplexMatrix::from_fn(n, n, |i, j| v[i * n + j]);
    let scale = ((cm.adjoint() * &cm).trace().re / n as f64).sqrt();
    Some(cm * c(1.0 / scale, 0.0))
}

/// Spin factor `V_k`: `1, v_1..v_k` on `C^{2^{k/2}}` for even `k`; for odd
/// `k` the doubled ambient with `v_k ↦ v_k ⊕ -v_k`.
fn spin_part(k: usize) -> Result<Part> {
    let vs: Vec<ComplexMatrix> = spin_generators(k)?.into_iter().map(|v| v.into_matrix()).collect();
    let n = vs[0].nrows();
    let id = ComplexMatrix::identity(n, n);
    let plus = vec![1.0; k];
    if k.is_multiple_of(2) {
        let cm = congruence_for(&vs, &plus)
            .ok_or_else(|| Error::Numerical(format!("no canonical involution found for Spin({k})")))?;
        let mut gens = vec![BlockMatrix::single(id)];
        gens.extend(vs.into_iter().map(BlockMatrix::single));
        return Ok(Part { shape: vec![n], gens, inv: Involution::Congruence(cm) });
    }
    let mut gens = vec![BlockMatrix::new(vec![id.clone(), id])];
    for (p, v) in vs.iter().enumerate() {
        let second = if p + 1 == k { -v.clone() } else { v.clone() };
        gens.push(BlockMatrix::new(vec![v.clone(), second]));
    }
    if let Some(cm) = congruence_for(&vs, &plus) {
        return Ok(Part {
            shape: vec![n, n],
            gens,
            inv: Involution::DirectSumOf(vec![Involution::Congruence(cm.clone()), Involution::Congruence(cm)]),
        });
    }
    let mut swapped = plus;
    swapped[k - 1] = -1.0;
    let cm = congruence_for(&vs, &swapped)
        .ok_or_else(|| Error::Numerical(format!("no canonical involution found for Spin({k})")))?;
    let ident = crate::linalg::frobenius(&(&cm - ComplexMatrix::identity(n, n))) < 1e-10;
    let inv = if ident { Involution::SwapTranspose(n) } else { Involution::SwapCongruence(cm) };
    Ok(Part { shape: vec![n, n], gens, inv })
}

fn simple_part(s: Simple) -> Result<Part> {
    let single = |n: usize, ms: Vec<ComplexMatrix>, inv| Part {
        shape: vec![n],
        gens: ms.into_iter().map(BlockMatrix::single).collect(),
        inv,
    };
    match s {
        Simple::Exceptional => Err(Error::ExceptionalFactor),
        Simple::RealSym { n } => {
            let (_, ms) = standard_simple(s)?;
            Ok(single(n, ms, Involution::Transpose(n)))
        }
        Simple::ComplexHerm { n: 1 } | Simple::QuatHerm { n: 1 } => simple_part(Simple::real(1)),
        Simple::ComplexHerm { n } => {
            let (_, ms) = standard_simple(s)?;
            let gens = ms.into_iter().map(|a| {
                let t = a.transpose();
                BlockMatrix::new(vec![a, t])
            });
            Ok(Part { shape: vec![n, n], gens: gens.collect(), inv: Involution::SwapTranspose(n) })
        }
        // five anticommuting symmetries: the quaternionic Paulis map to the
        // doubled spin representation, q5 with opposite signs on the two blocks
        Simple::QuatHerm { n: 2 } => spin_part(5),
        Simple::QuatHerm { n } => {
            let (m, ms) = standard_simple(s)?;
            Ok(single(m, ms, Involution::Symplectic(n)))
        }
        Simple::Spin { k } => spin_part(k),
    }
}

/// Universal envelope of a direct sum: the direct sum of the summands'
/// envelopes.
pub fn universal_envelope(desc: &EjaDescriptor) -> Result<Envelope> {
    if desc.has_exceptional() {
        return Err(Error::ExceptionalFactor);
    }
    if desc.summands.is_empty() {
        return Err(crate::error::invalid("empty descriptor"));
    }
    let parts = desc.summands.iter().map(|s| simple_part(*s)).collect::<Result<Vec<_>>>()?;
    let shape: Vec<usize> = parts.iter().flat_map(|p| p.shape.clone()).collect();
    let mut gens = Vec::new();
    let mut invs = Vec::new();
    let mut offset = 0;
    for p in parts {
        for g in &p.gens {
            let mut full = BlockMatrix::zeros(&shape);
            for (k, b) in g.blocks().iter().enumerate() {
                full.blocks_mut()[offset + k] = b.clone();
            }
            gens.push(full);
        }
        offset += p.shape.len();
        invs.push(p.inv);
    }
    let involution = if invs.len() == 1 { invs.pop().expect("one part") } else { Involution::DirectSumOf(invs) };
    let expected_complex_dim: usize = shape.iter().map(|n| n * n).sum();
    let verified_complex_dim =
        if expected_complex_dim <= VERIFY_LIMIT { Some(cstar_closure(&gens, &shape)?.dim()) } else { None };
    let embedding = EmbeddedEjc::new(desc.clone(), shape, gens)?;
    Ok(Envelope { embedding, involution, expected_complex_dim, verified_complex_dim })
}

#[derive(Clone, Debug)]
pub enum UniversalTensorOutcome {
    Computed { shape: Vec<usize>, dim: usize, identification: Identification },
    Skipped { reason: String, herm_len: usize },
}

impl UniversalTensorOutcome {
    pub fn descriptor(&self) -> Option<&EjaDescriptor> {
        match self {
            Self::Computed { identification, .. } => Some(&identification.descriptor),
            Self::Skipped { .. } => None,
        }
    }
}

/// Jordan closure of `ψ_A(A) ⊗ ψ_B(B)` inside `C*_u(A) ⊗ C*_u(B)`. Ambients
/// whose Hermitian dimension exceeds `budget` are skipped, not attempted.
/// `seed` drives the randomized closure and the identification.
pub fn universal_tensor(
    a: &EjaDescriptor,
    b: &EjaDescriptor,
    budget: usize,
    seed: u64,
) -> Result<UniversalTensorOutcome> {
    let (ea, eb) = (universal_envelope(a)?, universal_envelope(b)?);
    let shape = BlockMatrix::kron_shape(ea.shape(), eb.shape());
    let herm_len = BlockMatrix::herm_len(&shape);
    if herm_len > budget {
        return Ok(UniversalTensorOutcome::Skipped {
            reason: format!("ambient Hermitian dimension {herm_len} exceeds budget {budget}"),
            herm_len,
        });
    }
    let gens = pure_tensor_generators(ea.embedding.generators(), eb.embedding.generators());
    let opts = ClosureOptions { strategy: ClosureStrategy::GenericElement { seed }, ..Default::default() };
    let (sub, _) = jordan_closure_with(&gens, &shape, &opts)?;
    let identification = identify_eja_report(&sub, seed ^ 0x1de)?;
    Ok(UniversalTensorOutcome::Computed { shape, dim: sub.dim(), identification })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmallCase {
    /// `ComplexHerm(n) ⊗ ComplexHerm(m)` universally.
    Qudits { n: usize, m: usize },
    /// `QuatHerm(2) ⊗ QuatHerm(2)` universally; needs the long budget.
    Quabits,
}

/// Hermitian-dimension budget for routine runs; the quabit case needs 1024.
pub const DEFAULT_BUDGET: usize = 256;

pub fn universal_tensor_smallcase(case: SmallCase, long: bool) -> Result<UniversalTensorOutcome> {
    let budget = if long { usize::MAX } else { DEFAULT_BUDGET };
    let (a, b) = match case {
        SmallCase::Qudits { n, m } => (Simple::complex(n), Simple::complex(m)),
        SmallCase::Quabits => (Simple::quat(2), Simple::quat(2)),
    };
    universal_tensor(&EjaDescriptor::simple(a), &EjaDescriptor::simple(b), budget, 0x0b_5e55)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{check_involution, fixed_point_subalg};

    fn env(s: &str) -> Envelope {
        universal_envelope(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn table_shapes_and_generation() {
        for (s, desc, dim) in [
            ("real:3", "M3(C)", 9),
            ("complex:2", "M2(C) ⊕ M2(C)", 8),
            ("quat:2", "M4(C) ⊕ M4(C)", 32),
            ("quat:3", "M6(C)", 36),
            ("spin:4", "M4(C)", 16),
            ("spin:3", "M2(C) ⊕ M2(C)", 8),
            ("real:3+complex:2", "M3(C) ⊕ M2(C) ⊕ M2(C)", 17),
        ] {
            let e = env(s);
            assert_eq!(e.description(), desc, "{s}");
            assert_eq!(e.expected_complex_dim, dim);
            assert_eq!(e.generates_ambient(), Some(true), "{s}");
        }
    }

    #[test]
    fn involutions_fix_the_universal_image() {
        for s in ["real:2", "complex:2", "quat:2", "quat:3", "spin:4", "spin:5", "spin:6", "spin:7", "real:2+complex:2"]
        {
            let e = env(s);
            let chk = check_involution(&e.involution, 20, 3).unwrap();
            assert!(chk.worst() < 1e-12, "{s}: {chk:?}");
            let fixed = fixed_point_subalg(&e.involution).unwrap();
            for g in e.embedding.generators() {
                assert!(fixed.contains(g, 1e-10), "{s}");
            }
        }
    }

    #[test]
    fn exceptional_rejected() {
        assert!(matches!(universal_envelope(&"exceptional".parse().unwrap()), Err(Error::ExceptionalFactor)));
    }

    #[test]
    fn two_qudits_give_two_copies() {
        let out = universal_tensor_smallcase(SmallCase::Qudits { n: 2, m: 2 }, false).unwrap();
        let d = out.descriptor().unwrap();
        assert_eq!(d, &EjaDescriptor::new(vec![Simple::complex(4), Simple::complex(4)]));
        assert!(matches!(
            universal_tensor_smallcase(SmallCase::Quabits, false).unwrap(),
            UniversalTensorOutcome::Skipped { .. }
        ));
    }
}
