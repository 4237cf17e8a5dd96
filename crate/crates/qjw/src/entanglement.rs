//! Bipartite entanglement through conical designs: Schmidt decomposition,
//! concurrence from reduced purity and from design probabilities, witnesses
//! `N = Σ A⊗A` with their partial transposes, and Werner/isotropic families.

use crate::designs::{ConicalDesign, Povm};
use crate::linalg::{
    antisym_projector, c, identity, kron, max_entangled_projector, min_eigenvalue, partial_trace, partial_transpose,
    pure_state_op, sym_projector, ComplexMatrix, ComplexVector, HermitianOp, Subsystem,
};
use crate::{error::invalid, Error, Result};
use serde::{Deserialize, Serialize};

fn square_dim(len: usize) -> Result<usize> {
    let d = (len as f64).sqrt().round() as usize;
    if d * d != len || d < 2 {
        return Err(invalid(format!("ket length {len} is not d² with d >= 2")));
    }
    Ok(d)
}

fn check_unit(psi: &ComplexVector) -> Result<()> {
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-10 {
        return Err(invalid(format!("ket norm is {n}, expected 1")));
    }
    Ok(())
}

/// Coefficient matrix `C[i][j] = ψ[i d + j]`.
fn coefficient_matrix(psi: &ComplexVector, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |i, j| psi[i * d + j])
}

#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    pub d: usize,
    /// Descending, non-negative, squares summing to one.
    pub coefficients: Vec<f64>,
    /// Columns `e_j`.
    pub left: ComplexMatrix,
    /// Columns `f_j`.
    pub right: ComplexMatrix,
}

impl SchmidtDecomposition {
    /// `Σ λ_j e_j ⊗ f_j`.
    pub fn reconstruct(&self) -> ComplexVector {
        let d = self.d;
        let mut out = ComplexVector::zeros(d * d);
        for (j, &l) in self.coefficients.iter().enumerate() {
            let e = self.left.column(j).into_owned();
            let f = self.right.column(j).into_owned();
            out += e.kronecker(&f) * c(l, 0.0);
        }
        out
    }
}

/// Schmidt decomposition from the SVD `C = U Σ V^†` of the coefficient
/// matrix: `e_j = U_j`, `f_j = conj(V_j)`.
pub fn schmidt(psi: &ComplexVector) -> Result<SchmidtDecomposition> {
    let d = square_dim(psi.len())?;
    check_unit(psi)?;
    let svd = coefficient_matrix(psi, d).svd(true, true);
    let u = svd.u.ok_or_else(|| Error::Numerical("SVD without U".into()))?;
    let vt = svd.v_t.ok_or_else(|| Error::Numerical("SVD without V".into()))?;
    let mut idx: Vec<usize> = (0..d).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let coefficients = idx.iter().map(|&k| svd.singular_values[k]).collect();
    let left = ComplexMatrix::from_fn(d, d, |i, j| u[(i, idx[j])]);
    // rows of V^† are conj(v_j)^T, so f_j = row j of V^† read as a column
    let right = ComplexMatrix::from_fn(d, d, |i, j| vt[(idx[j], i)]);
    Ok(SchmidtDecomposition { d, coefficients, left, right })
}

/// `√(2 - 2 Tr ρ_A²)` from the reduced state.
pub fn concurrence_pure(psi: &ComplexVector) -> Result<f64> {
    let d = square_dim(psi.len())?;
    check_unit(psi)?;
    let rho = pure_state_op(psi);
    let ra = partial_trace(&rho, d, d, Subsystem::First)?;
    Ok((2.0 - 2.0 * ra.inner(&ra)).max(0.0).sqrt())
}

/// `√(2 - 2 Σ λ⁴)`.
pub fn concurrence_schmidt(coefficients: &[f64]) -> f64 {
    let s: f64 = coefficients.iter().map(|l| l.powi(4)).sum();
    (2.0 - 2.0 * s).max(0.0).sqrt()
}

/// Upper end of the concurrence range, `√(2(d-1)/d)`.
pub fn max_concurrence(d: usize) -> f64 {
    (2.0 * (d as f64 - 1.0) / d as f64).sqrt()
}

/// `p[α][β] = ⟨ψ|E_α ⊗ E_β|ψ⟩ = Tr(C^† E_α C E_β^T)`.
pub fn product_povm_probs(psi: &ComplexVector, povm: &Povm) -> Result<Vec<Vec<f64>>> {
    let d = square_dim(psi.len())?;
    check_unit(psi)?;
    if povm.d() != d {
        return Err(Error::DimensionMismatch { expected: d, got: povm.d() });
    }
    let cm = coefficient_matrix(psi, d);
    let left: Vec<ComplexMatrix> = povm.effects().iter().map(|e| cm.adjoint() * e.matrix() * &cm).collect();
    Ok(left
        .iter()
        .map(|l| {
            povm.effects().iter().map(|e| crate::linalg::hs_inner(&l.adjoint(), &e.matrix().transpose()).re).collect()
        })
        .collect())
}

/// Euclidean norm of a probability matrix.
pub fn prob_norm(p: &[Vec<f64>]) -> f64 {
    p.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// `2 √((k_s² - ||p||²)/(k_s² - k_a²))`, with negative radicands clamped to zero.
pub fn concurrence_from_design(pnorm: f64, ks: f64, ka: f64) -> Result<f64> {
    if !(ks > ka) {
        return Err(invalid(format!("need k_s > k_a, got k_s = {ks}, k_a = {ka}")));
    }
    let rad = (ks * ks - pnorm * pnorm) / (ks * ks - ka * ka);
    Ok(2.0 * rad.max(0.0).sqrt())
}

/// `||p||²` predicted from the Schmidt coefficients:
/// `(k_s² + k_a²)/2 + (k_s² - k_a²)/2 · Σλ⁴`.
pub fn predicted_prob_norm_sq(coefficients: &[f64], ks: f64, ka: f64) -> f64 {
    let s: f64 = coefficients.iter().map(|l| l.powi(4)).sum();
    0.5 * (ks * ks + ka * ka) + 0.5 * (ks * ks - ka * ka) * s
}

/// `N = Σ A⊗A`, its partial transpose, and the closed-form extrema of both on
/// separable (`s`) and arbitrary (`e`) states.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub d: usize,
    pub n: HermitianOp,
    pub n_pt: HermitianOp,
    pub kplus: f64,
    pub kminus: f64,
    pub bounds: WitnessBounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessBounds {
    pub s_minus_n: f64,
    pub s_plus_n: f64,
    pub e_minus_n: f64,
    pub e_plus_n: f64,
    pub s_minus_pt: f64,
    pub s_plus_pt: f64,
    pub e_minus_pt: f64,
    pub e_plus_pt: f64,
}

impl WitnessBounds {
    pub fn new(d: usize, kp: f64, km: f64) -> Self {
        let df = d as f64;
        Self {
            s_minus_n: kp,
            s_plus_n: kp + km,
            e_minus_n: kp - km,
            e_plus_n: kp + km,
            s_minus_pt: kp,
            s_plus_pt: kp + km,
            e_minus_pt: kp,
            e_plus_pt: kp + df * km,
        }
    }
}

pub fn witnesses_from_design(design: &ConicalDesign) -> Result<WitnessPair> {
    let d = design.d();
    let mut n = ComplexMatrix::zeros(d * d, d * d);
    for a in design.ops() {
        n += kron(a.matrix(), a.matrix());
    }
    let n = HermitianOp::from_hermitian_part(n);
    let n_pt = partial_transpose(&n, d, d, Subsystem::Second)?;
    let k = design.constants();
    Ok(WitnessPair { d, n, n_pt, kplus: k.kplus, kminus: k.kminus, bounds: WitnessBounds::new(d, k.kplus, k.kminus) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessVerdicts {
    /// `Tr(ρ N_PT) > s⁺ + tol`.
    pub lin_above: bool,
    /// `Tr(ρ N) < s⁻ - tol`.
    pub lin_below: bool,
    /// Quadratic test on `N_PT`.
    pub quad_above: bool,
    /// Quadratic test on `N`.
    pub quad_below: bool,
    pub tr_n: f64,
    pub tr_n_pt: f64,
    pub quad_n: f64,
    pub quad_n_pt: f64,
    pub quad_bound: f64,
}

impl WitnessVerdicts {
    pub fn any(&self) -> bool {
        self.lin_above || self.lin_below || self.quad_above || self.quad_below
    }
}

/// Evaluates the two linear and two quadratic criteria on a bipartite state.
pub fn witness_tests(rho: &HermitianOp, w: &WitnessPair, tol: f64) -> Result<WitnessVerdicts> {
    let d = w.d;
    if rho.dim() != d * d {
        return Err(Error::DimensionMismatch { expected: d * d, got: rho.dim() });
    }
    let r1 = partial_trace(rho, d, d, Subsystem::First)?;
    let r2 = partial_trace(rho, d, d, Subsystem::Second)?;
    let prod = r1.kron(&r2);
    let diff = rho.sub(&prod);
    let tr_n = w.n.inner(rho);
    let tr_n_pt = w.n_pt.inner(rho);
    let quad_n = w.n.inner(&diff).abs();
    let quad_n_pt = w.n_pt.inner(&diff).abs();
    let quad_bound = w.kminus * ((1.0 - r1.inner(&r1)).max(0.0) * (1.0 - r2.inner(&r2)).max(0.0)).sqrt();
    Ok(WitnessVerdicts {
        lin_above: tr_n_pt > w.bounds.s_plus_pt + tol,
        lin_below: tr_n < w.bounds.s_minus_n - tol,
        quad_above: quad_n_pt > quad_bound + tol,
        quad_below: quad_n > quad_bound + tol,
        tr_n,
        tr_n_pt,
        quad_n,
        quad_n_pt,
        quad_bound,
    })
}

/// Symmetric and antisymmetric weights of a Werner state.
pub fn werner_coefficients(d: usize, p: f64) -> (f64, f64) {
    let df = d as f64;
    (2.0 * (1.0 - p) / (df * (df + 1.0)), 2.0 * p / (df * (df - 1.0)))
}

/// `ρ_W = k_s Π_sym + k_a Π_asym`, entangled iff `p > 1/2`.
pub fn werner_state(d: usize, p: f64) -> Result<HermitianOp> {
    if d < 2 {
        return Err(invalid("Werner states need d >= 2"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("Werner parameter must lie in [0, 1], got {p}")));
    }
    let (ks, ka) = werner_coefficients(d, p);
    Ok(sym_projector(d).scaled(ks).add(&antisym_projector(d).scaled(ka)))
}

/// `ρ_I = (1-F)/(d²-1) 1 + (d²F-1)/(d²-1) |Φ+⟩⟨Φ+|`, separable iff `F <= 1/d`.
pub fn isotropic_state(d: usize, f: f64) -> Result<HermitianOp> {
    if d < 2 {
        return Err(invalid("isotropic states need d >= 2"));
    }
    if !(0.0..=1.0).contains(&f) {
        return Err(invalid(format!("fidelity must lie in [0, 1], got {f}")));
    }
    let df = (d * d) as f64;
    Ok(identity(d * d)
        .scaled((1.0 - f) / (df - 1.0))
        .add(&max_entangled_projector(d).scaled((df * f - 1.0) / (df - 1.0))))
}

/// Fidelity parameter of the partial transpose of `werner_state(d, p)`. That
/// partial transpose is `k₊ 1 + d k₋ |Φ+⟩⟨Φ+|`, a state only for `p <= 1/2`.
pub fn werner_pt_fidelity(d: usize, p: f64) -> f64 {
    let (ks, ka) = werner_coefficients(d, p);
    let kp = 0.5 * (ks + ka);
    1.0 - ((d * d) as f64 - 1.0) * kp
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WernerFit {
    pub p: f64,
    /// `||ΣA⊗A / Tr - werner_state(d, p)||_F`.
    pub residual: f64,
    /// `p <= (d-1)/(2d)`, where the design is a symmetric convex decomposition.
    pub decomposition_regime: bool,
    pub min_eigenvalue: f64,
}

/// Reads `ΣA⊗A`, normalized by its trace, as a Werner state.
pub fn werner_from_design(design: &ConicalDesign) -> Result<WernerFit> {
    let d = design.d();
    let df = d as f64;
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for a in design.ops() {
        m += kron(a.matrix(), a.matrix());
    }
    let m = HermitianOp::from_hermitian_part(m);
    let tr = m.trace();
    let normalized = m.scaled(1.0 / tr);
    // coefficient of Π_asym after normalization is k_a / Tr
    let ka = design.constants().ka / tr;
    let p = (ka * df * (df - 1.0) / 2.0).clamp(0.0, 1.0);
    let residual = normalized.sub(&werner_state(d, p)?).norm();
    Ok(WernerFit {
        p,
        residual,
        decomposition_regime: p <= (df - 1.0) / (2.0 * df) + 1e-12,
        min_eigenvalue: min_eigenvalue(&normalized),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_entangled, random_pure_state, seeded_rng};

    #[test]
    fn schmidt_examples() {
        let mut e = ComplexVector::zeros(4);
        e[0] = c(1.0, 0.0);
        let s = schmidt(&e).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-14 && s.coefficients[1].abs() < 1e-14);
        let s = schmidt(&max_entangled(2)).unwrap();
        for l in &s.coefficients {
            assert!((l - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        }
        let psi = random_pure_state(9, &mut seeded_rng(4));
        let s = schmidt(&psi).unwrap();
        assert!((s.reconstruct() - &psi).norm() < 1e-12);
        assert!(schmidt(&(psi * c(2.0, 0.0))).is_err());
    }

    #[test]
    fn concurrence_extremes() {
        assert!((concurrence_pure(&max_entangled(2)).unwrap() - 1.0).abs() < 1e-14);
        assert!((concurrence_pure(&max_entangled(3)).unwrap() - (4.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!(concurrence_from_design(0.1, 0.2, 0.2).is_err());
        assert_eq!(concurrence_from_design(0.5, 0.5, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn werner_parameter_bounds() {
        assert!(werner_state(2, 1.5).is_err());
        assert!(isotropic_state(2, -0.1).is_err());
        let w = werner_state(3, 1.0 / 3.0).unwrap();
        assert!(w.sub(&identity(9).scaled(1.0 / 9.0)).norm() < 1e-14);
    }
}
