use super::{
    random_combination, random_element, spectral_projections, unit_of, EjaDescriptor, Simple, CLUSTER_GAP, SPAN_TOL,
};
use crate::linalg::{seeded_rng, symmetric_eig, BlockMatrix, Field, OperatorSubspace, RealMatrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Invariant-level identification of a Jordan-closed subspace: the center,
/// and per simple summand its dimension and rank.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Identification {
    pub descriptor: EjaDescriptor,
    pub dim: usize,
    pub center_dim: usize,
    pub summand_dims: Vec<usize>,
    pub summand_ranks: Vec<usize>,
    pub label: String,
}

const SEED: u64 = 0x1d_e17f;

pub fn identify_eja(sub: &OperatorSubspace) -> Result<EjaDescriptor> {
    identify_eja_report(sub, SEED).map(|r| r.descriptor)
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Identification(msg.into())
}

/// Elements of `sub` commuting with three random elements of `sub`. For a
/// Jordan algebra of matrices an element is central iff it commutes with
/// everything in the algebra, and a few generic elements already generate the
/// associative envelope, so this is the center with probability one.
fn center(sub: &OperatorSubspace, rng: &mut crate::linalg::SeededRng) -> Vec<BlockMatrix> {
    let n = sub.dim();
    let shape = sub.shape().to_vec();
    let probes: Vec<BlockMatrix> = (0..3).map(|_| random_element(sub, rng)).collect();
    let len = BlockMatrix::full_len(&shape);
    let mut a = RealMatrix::zeros(len * probes.len(), n);
    for (k, b) in sub.basis().iter().enumerate() {
        for (pi, r) in probes.iter().enumerate() {
            let comm = b.mul(r).sub(&r.mul(b));
            for (i, x) in comm.full_coords().into_iter().enumerate() {
                a[(pi * len + i, k)] = x;
            }
        }
    }
    let g = a.tr_mul(&a);
    let (vals, vecs) = symmetric_eig(&g);
    let top = vals.first().copied().unwrap_or(0.0).max(f64::MIN_POSITIVE);
    (0..n)
        .filter(|&j| vals[j] <= 1e-10 * top)
        .map(|j| {
            let mut z = BlockMatrix::zeros(&shape);
            for (k, b) in sub.basis().iter().enumerate() {
                z.add_scaled_mut(vecs[(k, j)], b);
            }
            z
        })
        .collect()
}

/// Spectral projections of a random element of `part` on the support of `unit`.
fn frame(part: &OperatorSubspace, unit: &BlockMatrix, rng: &mut crate::linalg::SeededRng) -> Vec<BlockMatrix> {
    let a = random_element(part, rng);
    let mut shifted = a.clone();
    shifted.add_scaled_mut(3.0 * a.frobenius() + 1.0, unit);
    spectral_projections(&shifted.hermitian_part(), 0.5, CLUSTER_GAP).into_iter().map(|x| x.1).collect()
}

pub fn identify_eja_report(sub: &OperatorSubspace, seed: u64) -> Result<Identification> {
    if sub.field() != Field::Real {
        return Err(fail("expected a real subspace of Hermitian operators"));
    }
    if sub.dim() == 0 {
        return Err(fail("empty subspace"));
    }
    let shape = sub.shape().to_vec();
    let unit = unit_of(sub.basis(), &shape);
    if sub.relative_residual(&unit) > 1e-6 {
        return Err(fail("subspace does not contain its unit; is it Jordan-closed?"));
    }
    let mut rng = seeded_rng(seed);
    let cen = center(sub, &mut rng);
    let z = random_combination(&cen, &shape, &mut rng);
    let mut shifted = z.clone();
    shifted.add_scaled_mut(3.0 * z.frobenius() + 1.0, &unit);
    let central: Vec<BlockMatrix> =
        spectral_projections(&shifted.hermitian_part(), 0.5, CLUSTER_GAP).into_iter().map(|x| x.1).collect();
    if central.len() != cen.len() {
        return Err(fail(format!("center has dimension {} but splits into {} projections", cen.len(), central.len())));
    }
    let mut parts = Vec::with_capacity(central.len());
    for p in &central {
        if sub.relative_residual(p) > 1e-6 {
            return Err(fail("central projection lies outside the algebra"));
        }
        let mut part = OperatorSubspace::new(&shape, Field::Real, SPAN_TOL);
        let cands: Vec<BlockMatrix> = sub.basis().iter().map(|b| p.mul(b).hermitian_part()).collect();
        part.extend_with_floor(&cands, 1.0);
        let mut ranks = 0;
        for q in frame(&part, p, &mut rng) {
            // a primitive idempotent has a one-dimensional Peirce 1-space
            let mut peirce = OperatorSubspace::new(&shape, Field::Real, SPAN_TOL);
            let cands: Vec<BlockMatrix> = part.basis().iter().map(|b| q.mul(b).mul(&q).hermitian_part()).collect();
            peirce.extend_with_floor(&cands, 1.0);
            if peirce.dim() != 1 {
                return Err(fail("spectral projection of a random element is not primitive"));
            }
            ranks += 1;
        }
        parts.push((part.dim(), ranks));
    }
    let total: usize = parts.iter().map(|p| p.0).sum();
    if total != sub.dim() {
        return Err(fail(format!("summand dimensions add to {total}, expected {}", sub.dim())));
    }
    let mut summands = parts.iter().map(|&(d, r)| Simple::classify(r, d)).collect::<Result<Vec<_>>>()?;
    summands.sort();
    Ok(Identification {
        descriptor: EjaDescriptor::new(summands),
        dim: sub.dim(),
        center_dim: cen.len(),
        summand_dims: parts.iter().map(|p| p.0).collect(),
        summand_ranks: parts.iter().map(|p| p.1).collect(),
        label: "identified (invariant-level)".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{jordan_closure, standard_embedding};

    fn ident(s: &str) -> EjaDescriptor {
        let e = standard_embedding(&s.parse().unwrap()).unwrap();
        identify_eja(&e.closure().unwrap()).unwrap()
    }

    #[test]
    fn standard_embeddings_identify_as_themselves() {
        for s in ["real:1", "real:3", "complex:3", "quat:2", "quat:3", "spin:4", "spin:6", "real:2+complex:2"] {
            let d: EjaDescriptor = s.parse().unwrap();
            assert_eq!(ident(s), d.canonical(), "{s}");
        }
        assert_eq!(ident("spin:3"), "complex:2".parse::<EjaDescriptor>().unwrap());
    }

    #[test]
    fn a_plus_a_transpose_is_one_summand() {
        let e = standard_embedding(&"complex:2".parse().unwrap()).unwrap();
        let gens: Vec<BlockMatrix> =
            e.generators().iter().map(|g| BlockMatrix::new(vec![g.block(0).clone(), g.block(0).transpose()])).collect();
        let sub = jordan_closure(&gens, &[2, 2]).unwrap();
        let r = identify_eja_report(&sub, 1).unwrap();
        assert_eq!(r.descriptor, EjaDescriptor::simple(Simple::complex(2)));
        assert_eq!(r.center_dim, 1);
    }

    #[test]
    fn non_closed_input_is_reported() {
        let e = standard_embedding(&"real:3".parse().unwrap()).unwrap();
        let mut sub = OperatorSubspace::new(&[3], Field::Real, SPAN_TOL);
        sub.extend(&e.generators()[3..]);
        assert!(identify_eja(&sub).is_err());
    }
}
