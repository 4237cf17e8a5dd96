//! Conical 2-designs: constants, verification of the five equivalent
//! conditions, POVM rescaling and operator expansion, plus builders and the
//! projective/homogeneous special cases.

mod builders;
mod homogeneous;
mod projective;

pub use builders::{
    build_mub, build_mum, build_sic, build_sim, mum_constants, regular_simplex, sim_constants, traceless_frame,
};
pub use homogeneous::{
    build_from_projector, homogeneous_gram, lift_check, minimal_povm_is_sim, mum_projector, rescale_bloch,
    simplex_projector, CandidateProjector, LiftReport, SimVerdict,
};
pub use projective::{
    is_projective_2design, pd_coefficients, projective_povm, projective_probs, purity_from_probs, purity_test,
    reconstruct_state, PurityVerdict,
};

use crate::bloch::bloch_norm;
use crate::linalg::{
    c, haar_unitary, hs_inner, identity, kron, max_entangled, min_eigenvalue, seeded_rng, transpose_superop, vec_op,
    ComplexMatrix, HermitianOp, MatrixJson, Tolerances,
};
use crate::{error::invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Seed for the unitaries sampled when checking condition (i).
const COVARIANCE_SEED: u64 = 0x5eed_0001;
const COVARIANCE_SAMPLES: usize = 50;

/// Constants shared by every conical 2-design.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignConstants {
    pub ks: f64,
    pub ka: f64,
    pub kplus: f64,
    pub kminus: f64,
    /// RMS trace.
    pub t: f64,
    /// Trace-weighted RMS Bloch norm.
    pub kappa: f64,
}

/// A finite conical 2-design candidate with cached constants. Construction
/// validates PSD and nonzero elements but not the design conditions; run
/// [`verify_design`] for that.
#[derive(Clone, Debug)]
pub struct ConicalDesign {
    d: usize,
    ops: Vec<HermitianOp>,
    traces: Vec<f64>,
    constants: DesignConstants,
}

fn validate_elements(ops: &[HermitianOp], tol: &Tolerances) -> Result<usize> {
    let first = ops.first().ok_or_else(|| invalid("empty operator list"))?;
    let d = first.dim();
    if d < 2 {
        return Err(invalid("designs need d >= 2"));
    }
    for a in ops {
        if a.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: a.dim() });
        }
        let n = a.norm();
        if n < 1e-14 {
            return Err(invalid("design elements must be nonzero"));
        }
        let m = min_eigenvalue(a);
        if m < -tol.psd * n.max(1.0) {
            return Err(Error::NotPsd(m));
        }
    }
    Ok(d)
}

/// `(k_s, k_a)` from the trace identities `Σ(Tr A)^2 = k_s d(d+1)/2 + k_a d(d-1)/2`
/// and `Σ Tr(A^2) = k_s d(d+1)/2 - k_a d(d-1)/2`.
pub fn design_constants(ops: &[HermitianOp]) -> Result<(f64, f64)> {
    let first = ops.first().ok_or_else(|| invalid("empty operator list"))?;
    let d = first.dim() as f64;
    if first.dim() < 2 {
        return Err(invalid("designs need d >= 2"));
    }
    let s1: f64 = ops.iter().map(|a| a.trace().powi(2)).sum();
    let s2: f64 = ops.iter().map(|a| a.inner(a)).sum();
    Ok(((s1 + s2) / (d * (d + 1.0)), (s1 - s2) / (d * (d - 1.0))))
}

impl ConicalDesign {
    pub fn new(ops: Vec<HermitianOp>) -> Result<Self> {
        let d = validate_elements(&ops, &Tolerances::default())?;
        let (ks, ka) = design_constants(&ops)?;
        let n = ops.len() as f64;
        let df = d as f64;
        let traces: Vec<f64> = ops.iter().map(|a| a.trace()).collect();
        let t = (traces.iter().map(|x| x * x).sum::<f64>() / n).sqrt();
        let mut weighted = 0.0;
        for (a, &tj) in ops.iter().zip(&traces) {
            if tj.abs() < 1e-14 {
                return Err(invalid("design element with zero trace"));
            }
            let b = a.scaled(df / tj).sub(&identity(d));
            weighted += tj * tj * bloch_norm(&b)?.powi(2);
        }
        let kappa = (weighted / (n * t * t)).sqrt();
        let constants = DesignConstants { ks, ka, kplus: 0.5 * (ks + ka), kminus: 0.5 * (ks - ka), t, kappa };
        Ok(Self { d, ops, traces, constants })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[HermitianOp] {
        &self.ops
    }

    pub fn traces(&self) -> &[f64] {
        &self.traces
    }

    pub fn constants(&self) -> DesignConstants {
        self.constants
    }

    /// Bloch vectors `B_j = d A_j / t_j - 1`.
    pub fn bloch_vectors(&self) -> Vec<HermitianOp> {
        let df = self.d as f64;
        self.ops.iter().zip(&self.traces).map(|(a, &t)| a.scaled(df / t).sub(&identity(self.d))).collect()
    }

    /// `{U A_j U^†}`.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        let ops = self.ops.iter().map(|a| HermitianOp::from_hermitian_part(u * a.matrix() * u.adjoint())).collect();
        Self::new(ops)
    }

    /// Union of two designs on the same space.
    pub fn merged(&self, other: &Self) -> Result<Self> {
        Self::new(self.ops.iter().chain(&other.ops).cloned().collect())
    }

    pub fn to_file(&self) -> DesignFile {
        DesignFile {
            d: self.d,
            ops: self.ops.iter().map(|a| MatrixJson::from_matrix(a.matrix())).collect(),
            constants: FileConstants {
                ks: self.constants.ks,
                ka: self.constants.ka,
                kappa: self.constants.kappa,
                t: self.constants.t,
            },
        }
    }

    pub fn from_file(f: &DesignFile) -> Result<Self> {
        let ops = f.ops.iter().map(|m| HermitianOp::new(m.to_matrix()?)).collect::<Result<Vec<_>>>()?;
        if ops.iter().any(|a| a.dim() != f.d) {
            return Err(invalid("operator size does not match d"));
        }
        Self::new(ops)
    }
}

/// Serialized design: `{"d", "ops", "constants"}` with each operator in the
/// [`MatrixJson`] format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DesignFile {
    pub d: usize,
    pub ops: Vec<MatrixJson>,
    pub constants: FileConstants,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct FileConstants {
    pub ks: f64,
    pub ka: f64,
    pub kappa: f64,
    pub t: f64,
}

/// Residual of each condition, divided by `k_s`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConditionResiduals {
    pub i: f64,
    pub ii: f64,
    pub iii: f64,
    pub iv: f64,
    pub v: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConditionFlags {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
    pub v: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    pub d: usize,
    pub n: usize,
    pub ks: f64,
    pub ka: f64,
    pub kplus: f64,
    pub kminus: f64,
    /// `(k₊, k₋)` read off condition (iii) alone.
    pub recovered_iii: (f64, f64),
    /// `(k₊, k₋)` read off condition (v) alone.
    pub recovered_v: (f64, f64),
    pub residuals: ConditionResiduals,
    pub conditions: ConditionFlags,
    /// `k₋ > 1e-8 k₊`.
    pub spanning: bool,
    pub tol: f64,
    pub pass: bool,
    /// Structural problem that prevented the checks, if any.
    pub problem: Option<String>,
}

impl DesignReport {
    fn failed(problem: String, tol: f64) -> Self {
        Self {
            d: 0,
            n: 0,
            ks: f64::NAN,
            ka: f64::NAN,
            kplus: f64::NAN,
            kminus: f64::NAN,
            recovered_iii: (f64::NAN, f64::NAN),
            recovered_v: (f64::NAN, f64::NAN),
            residuals: ConditionResiduals::default(),
            conditions: ConditionFlags::default(),
            spanning: false,
            tol,
            pass: false,
            problem: Some(problem),
        }
    }
}

fn frob(m: &ComplexMatrix) -> f64 {
    crate::linalg::frobenius(m)
}

/// Checks all five equivalent design conditions plus spanning. Failures land
/// in the report rather than in an error.
pub fn verify_design(ops: &[HermitianOp], tol: f64) -> DesignReport {
    let d = match validate_elements(ops, &Tolerances::default()) {
        Ok(d) => d,
        Err(e) => return DesignReport::failed(e.to_string(), tol),
    };
    let (ks, ka) = match design_constants(ops) {
        Ok(k) => k,
        Err(e) => return DesignReport::failed(e.to_string(), tol),
    };
    let kp = 0.5 * (ks + ka);
    let km = 0.5 * (ks - ka);
    let df = d as f64;
    let dd = d * d;
    let scale = ks.abs().max(f64::MIN_POSITIVE);

    let one = ComplexMatrix::identity(dd, dd);
    let sym = crate::linalg::sym_projector(d).into_matrix();
    let asym = crate::linalg::antisym_projector(d).into_matrix();
    let phi = max_entangled(d);
    let phi_proj = &phi * phi.adjoint();
    let vec1 = vec_op(&ComplexMatrix::identity(d, d));
    let one_one = &vec1 * vec1.adjoint();
    let tsup = transpose_superop(d);

    let mut m2 = ComplexMatrix::zeros(dd, dd);
    let mut m3 = ComplexMatrix::zeros(dd, dd);
    let mut s5 = ComplexMatrix::zeros(dd, dd);
    let mut s4 = ComplexMatrix::zeros(dd, dd);
    for a in ops {
        let am = a.matrix();
        m2 += kron(am, am);
        m3 += kron(am, &am.conjugate());
        let v = vec_op(am);
        s5 += &v * v.adjoint();
        s4 += &v * v.transpose();
    }

    let r2 = frob(&(&m2 - (&sym * c(ks, 0.0) + &asym * c(ka, 0.0)))) / scale;
    let r3 = frob(&(&m3 - (&one * c(kp, 0.0) + &phi_proj * c(df * km, 0.0)))) / scale;
    let r5 = frob(&(&s5 - (&one_one * c(kp, 0.0) + &one * c(km, 0.0)))) / scale;
    let r4 = frob(&(&s4 - (&one_one * c(kp, 0.0) + &tsup * c(km, 0.0)))) / scale;

    let mut rng = seeded_rng(COVARIANCE_SEED);
    let mut r1 = 0.0f64;
    for _ in 0..COVARIANCE_SAMPLES {
        let u = haar_unitary(d, &mut rng);
        let uu = kron(&u, &u);
        let comm = &uu * &m2 - &m2 * &uu;
        r1 = r1.max(frob(&comm) / scale);
    }

    // k± from (iii): Tr M = d² k₊ + d k₋, ⟨Φ+|M|Φ+⟩ = k₊ + d k₋.
    let tr3 = m3.trace().re;
    let f3 = (phi.adjoint() * &m3 * &phi)[(0, 0)].re;
    let km3 = (f3 * df * df - tr3) / (df.powi(3) - df);
    let kp3 = f3 - df * km3;
    // k± from (v): Tr S = d k₊ + d² k₋, ⟨⟨1|S|1⟩⟩ = d² k₊ + d k₋.
    let tr5 = s5.trace().re;
    let u5 = hs_inner(&one_one, &s5).re;
    let km5 = (df * tr5 - u5) / (df.powi(3) - df);
    let kp5 = (tr5 - df * df * km5) / df;

    let residuals = ConditionResiduals { i: r1, ii: r2, iii: r3, iv: r4, v: r5 };
    let conditions = ConditionFlags { i: r1 <= tol, ii: r2 <= tol, iii: r3 <= tol, iv: r4 <= tol, v: r5 <= tol };
    let spanning = km > 1e-8 * kp;
    let pass = conditions.i && conditions.ii && conditions.iii && conditions.iv && conditions.v && spanning;
    DesignReport {
        d,
        n: ops.len(),
        ks,
        ka,
        kplus: kp,
        kminus: km,
        recovered_iii: (kp3, km3),
        recovered_v: (kp5, km5),
        residuals,
        conditions,
        spanning,
        tol,
        pass,
        problem: None,
    }
}

/// A POVM on `C^d`.
#[derive(Clone, Debug)]
pub struct Povm {
    d: usize,
    effects: Vec<HermitianOp>,
}

impl Povm {
    /// Validates PSD effects summing to the identity.
    pub fn new(effects: Vec<HermitianOp>, tol: &Tolerances) -> Result<Self> {
        let d = validate_elements(&effects, tol)?;
        let mut sum = HermitianOp::zeros(d);
        for e in &effects {
            sum = sum.add(e);
        }
        let dev = sum.sub(&identity(d)).norm();
        if dev > tol.orth.max(1e-9) {
            return Err(Error::Residual { what: "POVM completeness".into(), residual: dev, tol: tol.orth });
        }
        Ok(Self { d, effects })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn effects(&self) -> &[HermitianOp] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    /// Outcome probabilities `Tr(ρ E_j)`.
    pub fn probabilities(&self, rho: &HermitianOp) -> Vec<f64> {
        self.effects.iter().map(|e| e.inner(rho)).collect()
    }
}

/// `E_j = A_j d t_j / (n t²)`, a POVM built from any conical 2-design.
pub fn design_povm(design: &ConicalDesign) -> Result<Povm> {
    let k = design.constants();
    let n = design.n() as f64;
    let df = design.d() as f64;
    let effects =
        design.ops().iter().zip(design.traces()).map(|(a, &tj)| a.scaled(df * tj / (n * k.t * k.t))).collect();
    Povm::new(effects, &Tolerances::default())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

/// Expands a Hermitian `L` as `Σ c_j A_j` with
/// `c_j = (Tr(A_j L) - k₊ t_j Tr(L) / (d k₊ + k₋)) / k₋`.
pub fn expand_operator(l: &HermitianOp, design: &ConicalDesign, tol: f64) -> Result<Expansion> {
    if l.dim() != design.d() {
        return Err(Error::DimensionMismatch { expected: design.d(), got: l.dim() });
    }
    let k = design.constants();
    let df = design.d() as f64;
    let tr = l.trace();
    let coefficients: Vec<f64> = design
        .ops()
        .iter()
        .zip(design.traces())
        .map(|(a, &tj)| (a.inner(l) - k.kplus * tj * tr / (df * k.kplus + k.kminus)) / k.kminus)
        .collect();
    let mut rec = HermitianOp::zeros(design.d());
    for (a, &cj) in design.ops().iter().zip(&coefficients) {
        rec = rec.add(&a.scaled(cj));
    }
    let residual = rec.sub(l).norm();
    if !(residual <= tol * l.norm().max(1.0)) {
        return Err(Error::Residual { what: "design expansion".into(), residual, tol });
    }
    Ok(Expansion { coefficients, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_design_constants() {
        for d in 2..5 {
            let (ks, ka) = design_constants(&[HermitianOp::identity(d)]).unwrap();
            assert!((ks - 1.0).abs() < 1e-14 && (ka - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_design_is_not_spanning() {
        let h = HermitianOp::identity(2).scaled(0.5);
        let rep = verify_design(&[h.clone(), h], 1e-9);
        assert!(rep.conditions.ii && !rep.spanning && !rep.pass);
    }

    #[test]
    fn empty_input_reports_problem() {
        let rep = verify_design(&[], 1e-9);
        assert!(!rep.pass && rep.problem.is_some());
        assert!(design_constants(&[]).is_err());
    }

    #[test]
    fn non_psd_rejected() {
        let z = crate::linalg::pauli()[3].clone();
        assert!(matches!(ConicalDesign::new(vec![HermitianOp::new(z).unwrap()]), Err(Error::NotPsd(_))));
    }
}
