use super::{jordan_closure, unit_of, EjaDescriptor, Simple};
use crate::linalg::{
    c, embedded_quaternionic_paulis, gell_mann, spin_generators, symplectic_embed, BlockMatrix, ComplexMatrix,
    OperatorSubspace, QuatMatrix,
};
use crate::{Error, Result};
use std::f64::consts::FRAC_1_SQRT_2;

/// A Jordan algebra given by Hermitian generators inside a block ambient.
#[derive(Clone, Debug)]
pub struct EmbeddedEjc {
    descriptor: EjaDescriptor,
    shape: Vec<usize>,
    generators: Vec<BlockMatrix>,
    unit: BlockMatrix,
}

impl EmbeddedEjc {
    /// Generators must be Hermitian and match `shape`; the unit is the support
    /// projection of the generated algebra.
    pub fn new(descriptor: EjaDescriptor, shape: Vec<usize>, generators: Vec<BlockMatrix>) -> Result<Self> {
        for g in &generators {
            if g.shape() != shape {
                return Err(Error::DimensionMismatch {
                    expected: BlockMatrix::herm_len(&shape),
                    got: BlockMatrix::herm_len(&g.shape()),
                });
            }
            let dev = g.hermitian_deviation();
            if dev > 1e-10 * g.frobenius().max(1.0) {
                return Err(Error::NotHermitian(dev));
            }
        }
        let unit = unit_of(&generators, &shape);
        Ok(Self { descriptor, shape, generators, unit })
    }

    pub fn descriptor(&self) -> &EjaDescriptor {
        &self.descriptor
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn generators(&self) -> &[BlockMatrix] {
        &self.generators
    }

    pub fn unit(&self) -> &BlockMatrix {
        &self.unit
    }

    /// Generators that are not multiples of the unit; these are the letters
    /// of reversibility words.
    pub fn letters(&self) -> Vec<&BlockMatrix> {
        let uu = self.unit.hs_inner(&self.unit).re;
        self.generators
            .iter()
            .filter(|g| {
                let t = self.unit.hs_inner(g).re / uu.max(f64::MIN_POSITIVE);
                let mut r = (*g).clone();
                r.add_scaled_mut(-t, &self.unit);
                r.frobenius() > 1e-9 * g.frobenius()
            })
            .collect()
    }

    pub fn closure(&self) -> Result<OperatorSubspace> {
        jordan_closure(&self.generators, &self.shape)
    }
}

fn real_sym_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(i, i)] = c(1.0, 0.0);
        out.push(m);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = ComplexMatrix::zeros(n, n);
            m[(i, j)] = c(FRAC_1_SQRT_2, 0.0);
            m[(j, i)] = c(FRAC_1_SQRT_2, 0.0);
            out.push(m);
        }
    }
    out
}

fn complex_herm_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = vec![ComplexMatrix::identity(n, n) * c(1.0 / (n as f64).sqrt(), 0.0)];
    out.extend(gell_mann(n).into_iter().map(|g| g.into_matrix()));
    out
}

fn antisym_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for ph in [c(1.0, 0.0), c(0.0, 1.0)] {
                let mut m = ComplexMatrix::zeros(n, n);
                m[(i, j)] = ph * FRAC_1_SQRT_2;
                m[(j, i)] = -ph * FRAC_1_SQRT_2;
                out.push(m);
            }
        }
    }
    out
}

fn quat_herm_basis(n: usize) -> Vec<ComplexMatrix> {
    if n == 2 {
        return embedded_quaternionic_paulis().into_iter().map(|q| q.into_matrix()).collect();
    }
    let z = ComplexMatrix::zeros(n, n);
    let mut out: Vec<ComplexMatrix> =
        complex_herm_basis(n).into_iter().map(|g1| symplectic_embed(&QuatMatrix { g1, g2: z.clone() })).collect();
    out.extend(antisym_basis(n).into_iter().map(|g2| symplectic_embed(&QuatMatrix { g1: z.clone(), g2 })));
    out
}

/// Matrix size and orthonormal-ish generators of the standard embedding of
/// one simple factor.
pub(crate) fn standard_simple(s: Simple) -> Result<(usize, Vec<ComplexMatrix>)> {
    match s {
        Simple::RealSym { n } => Ok((n, real_sym_basis(n))),
        Simple::ComplexHerm { n } => Ok((n, complex_herm_basis(n))),
        Simple::QuatHerm { n } => Ok((2 * n, quat_herm_basis(n))),
        Simple::Spin { k } => {
            let v = spin_generators(k)?;
            let m = v[0].dim();
            let mut out = vec![ComplexMatrix::identity(m, m)];
            out.extend(v.into_iter().map(|g| g.into_matrix()));
            Ok((m, out))
        }
        Simple::Exceptional => Err(Error::ExceptionalFactor),
    }
}

/// Standard embedding of each summand in its own block: real symmetric
/// matrices, complex Hermitian matrices, the symplectic image of quaternionic
/// Hermitian matrices, and the Pauli-tensor representation of spin factors.
pub fn standard_embedding(desc: &EjaDescriptor) -> Result<EmbeddedEjc> {
    if desc.summands.is_empty() {
        return Err(crate::error::invalid("empty descriptor"));
    }
    let parts = desc.summands.iter().map(|s| standard_simple(*s)).collect::<Result<Vec<_>>>()?;
    let shape: Vec<usize> = parts.iter().map(|p| p.0).collect();
    let mut gens = Vec::new();
    for (idx, (_, ms)) in parts.into_iter().enumerate() {
        gens.extend(ms.into_iter().map(|m| BlockMatrix::embed_block(&shape, idx, m)));
    }
    EmbeddedEjc::new(desc.clone(), shape, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim_of(s: &str) -> (usize, usize) {
        let d: EjaDescriptor = s.parse().unwrap();
        let e = standard_embedding(&d).unwrap();
        (e.generators().len(), e.closure().unwrap().dim())
    }

    #[test]
    fn generator_counts_match_dimensions() {
        for (s, d) in [
            ("real:2", 3),
            ("real:3", 6),
            ("complex:3", 9),
            ("quat:2", 6),
            ("quat:3", 15),
            ("spin:3", 4),
            ("spin:4", 5),
            ("real:2+spin:3", 7),
        ] {
            assert_eq!(dim_of(s), (d, d), "{s}");
        }
    }

    #[test]
    fn unit_is_identity_of_ambient() {
        let e = standard_embedding(&"quat:2+real:1".parse().unwrap()).unwrap();
        assert_eq!(e.shape(), &[4, 1]);
        assert!(e.unit().sub(&BlockMatrix::identity(&[4, 1])).frobenius() < 1e-12);
        assert_eq!(e.letters().len(), 7);
    }

    #[test]
    fn exceptional_rejected() {
        let d = EjaDescriptor::simple(Simple::Exceptional);
        assert!(matches!(standard_embedding(&d), Err(Error::ExceptionalFactor)));
    }
}
