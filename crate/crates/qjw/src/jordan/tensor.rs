use super::{
    identify_eja_report, jordan_closure_with, random_element, spectral_projections, tensor_table, ClosureOptions,
    EjaDescriptor, EmbeddedEjc, Identification, CLUSTER_GAP,
};
use crate::linalg::{seeded_rng, BlockMatrix, OperatorSubspace, SeededRng};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct TensorResult {
    pub shape: Vec<usize>,
    pub subspace: OperatorSubspace,
    pub identification: Identification,
    /// Table prediction when every pair of summands has an entry.
    pub predicted: Option<EjaDescriptor>,
}

impl TensorResult {
    pub fn descriptor(&self) -> &EjaDescriptor {
        &self.identification.descriptor
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Whether the identified structure agrees with the table (`None` when
    /// the table has no entry).
    pub fn matches_table(&self) -> Option<bool> {
        self.predicted.as_ref().map(|p| p.isomorphic(self.descriptor()))
    }
}

/// Distributes the table over direct sums.
pub fn predict(a: &EjaDescriptor, b: &EjaDescriptor) -> Option<EjaDescriptor> {
    let mut out = Vec::new();
    for x in &a.summands {
        for y in &b.summands {
            out.push(tensor_table(*x, *y)?);
        }
    }
    Some(EjaDescriptor::new(out))
}

pub(crate) fn pure_tensor_generators(a: &[BlockMatrix], b: &[BlockMatrix]) -> Vec<BlockMatrix> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.kron(y));
        }
    }
    out
}

/// Jordan closure of all `kron(a_i, b_j)` with its identified structure.
pub fn canonical_tensor(a: &EmbeddedEjc, b: &EmbeddedEjc) -> Result<TensorResult> {
    canonical_tensor_with(a, b, &ClosureOptions::default(), 0x7e_2507)
}

/// `seed` drives the random elements used to identify the closure.
pub fn canonical_tensor_with(
    a: &EmbeddedEjc,
    b: &EmbeddedEjc,
    opts: &ClosureOptions,
    seed: u64,
) -> Result<TensorResult> {
    if a.descriptor().has_exceptional() || b.descriptor().has_exceptional() {
        return Err(Error::ExceptionalFactor);
    }
    let shape = BlockMatrix::kron_shape(a.shape(), b.shape());
    let gens = pure_tensor_generators(a.generators(), b.generators());
    let (subspace, _) = jordan_closure_with(&gens, &shape, opts)?;
    let identification = identify_eja_report(&subspace, seed)?;
    Ok(TensorResult { shape, subspace, identification, predicted: predict(a.descriptor(), b.descriptor()) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositeReport {
    /// `max ||(p⊗q)² - p⊗q||` over sampled primitive projections.
    pub projection_idempotent: f64,
    /// `max` relative distance of `p⊗q` from the composite.
    pub projection_in_closure: f64,
    /// `max |⟨a⊗x, b⊗y⟩ - ⟨a, b⟩⟨x, y⟩|`.
    pub inner_product: f64,
    /// `max ||[L_{a⊗u}, L_{u⊗b}] z||` over sampled composite elements.
    pub operator_commutation: f64,
    /// `max ||(a⊗u)∙(x⊗y) - (a∙x)⊗y||`.
    pub main_equation: f64,
    /// Matrix rank of `p⊗q` for primitive `p`, `q`.
    pub product_matrix_rank: usize,
    /// Matrix rank of a primitive idempotent of the composite.
    pub composite_primitive_rank: usize,
    /// Jordan rank of `p⊗q` inside the composite; above one means the product
    /// of pure states is mixed.
    pub product_jordan_rank: usize,
    pub samples: usize,
    pub pass: bool,
}

fn primitive(sub: &OperatorSubspace, unit: &BlockMatrix, rng: &mut SeededRng) -> BlockMatrix {
    let a = random_element(sub, rng);
    let mut s = a.clone();
    s.add_scaled_mut(3.0 * a.frobenius() + 1.0, unit);
    let mut frame = spectral_projections(&s.hermitian_part(), 0.5, CLUSTER_GAP);
    frame.sort_by(|x, y| x.1.trace().re.total_cmp(&y.1.trace().re));
    frame.swap_remove(0).1
}

fn rank_of(p: &BlockMatrix) -> usize {
    p.trace().re.round() as usize
}

/// Numerical checks of the composite axioms on sampled elements of `A ⊙ B`.
pub fn composite_property_suite(a: &EmbeddedEjc, b: &EmbeddedEjc, seed: u64) -> Result<CompositeReport> {
    let t = canonical_tensor(a, b)?;
    let ca = a.closure()?;
    let cb = b.closure()?;
    let (ua, ub) = (a.unit(), b.unit());
    let mut rng = seeded_rng(seed);
    let samples = 5;
    let mut r = CompositeReport {
        projection_idempotent: 0.0,
        projection_in_closure: 0.0,
        inner_product: 0.0,
        operator_commutation: 0.0,
        main_equation: 0.0,
        product_matrix_rank: 0,
        composite_primitive_rank: 0,
        product_jordan_rank: 0,
        samples,
        pass: false,
    };
    for s in 0..samples {
        let p = primitive(&ca, ua, &mut rng);
        let q = primitive(&cb, ub, &mut rng);
        let pq = p.kron(&q);
        r.projection_idempotent = r.projection_idempotent.max(pq.mul(&pq).sub(&pq).frobenius());
        r.projection_in_closure = r.projection_in_closure.max(t.subspace.relative_residual(&pq));
        if s == 0 {
            r.product_matrix_rank = rank_of(&pq);
        }

        let (x1, x2) = (random_element(&ca, &mut rng), random_element(&ca, &mut rng));
        let (y1, y2) = (random_element(&cb, &mut rng), random_element(&cb, &mut rng));
        let lhs = x1.kron(&y1).hs_inner(&x2.kron(&y2)).re;
        let rhs = x1.hs_inner(&x2).re * y1.hs_inner(&y2).re;
        r.inner_product = r.inner_product.max((lhs - rhs).abs());

        let la = x1.kron(ub);
        let lb = ua.kron(&y1);
        let z = random_element(&t.subspace, &mut rng);
        let comm = la.jordan(&lb.jordan(&z)).sub(&lb.jordan(&la.jordan(&z)));
        r.operator_commutation = r.operator_commutation.max(comm.frobenius());

        let main = la.jordan(&x2.kron(&y2)).sub(&x1.jordan(&x2).kron(&y2));
        r.main_equation = r.main_equation.max(main.frobenius());
    }
    let unit = super::unit_of(t.subspace.basis(), &t.shape);
    r.composite_primitive_rank = rank_of(&primitive(&t.subspace, &unit, &mut rng));
    r.product_jordan_rank = r.product_matrix_rank / r.composite_primitive_rank.max(1);
    r.pass =
        [r.projection_idempotent, r.projection_in_closure, r.inner_product, r.operator_commutation, r.main_equation]
            .iter()
            .all(|x| *x < 1e-10);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{standard_embedding, Simple};

    fn std(s: &str) -> EmbeddedEjc {
        standard_embedding(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_table_cells() {
        for (a, b, want, dim) in [
            ("real:2", "real:3", Simple::real(6), 21),
            ("complex:2", "complex:2", Simple::complex(4), 16),
            ("real:2", "complex:2", Simple::complex(4), 16),
            ("real:2", "quat:2", Simple::quat(4), 28),
        ] {
            let t = canonical_tensor(&std(a), &std(b)).unwrap();
            assert_eq!(t.dim(), dim, "{a} ⊙ {b}");
            assert_eq!(t.descriptor(), &EjaDescriptor::simple(want));
            assert_eq!(t.matches_table(), Some(true));
        }
    }

    #[test]
    fn suite_passes_for_real_pairs() {
        let r = composite_property_suite(&std("real:2"), &std("real:2"), 1).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.product_jordan_rank, 1);
    }

    #[test]
    fn exceptional_is_rejected() {
        assert!(predict(&"exceptional".parse().unwrap(), &"real:2".parse().unwrap()).is_none());
    }
}
