use super::{builders::traceless_frame, verify_design, ConicalDesign, Povm};
use crate::bloch::bloch_norm;
use crate::linalg::{c, identity, min_eigenvalue, symmetric_eig, vec_op, ComplexMatrix, HermitianOp, RealMatrix};
use crate::{error::invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Real symmetric `n×n` projector of rank `d²-1` with zero row sums and
/// constant diagonal `(d²-1)/n`: the Gram shape of a homogeneous design's Bloch
/// vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateProjector {
    pub n: usize,
    pub d: usize,
    pub p: RealMatrix,
}

impl CandidateProjector {
    pub fn new(d: usize, p: RealMatrix, tol: f64) -> Result<Self> {
        let n = p.nrows();
        if !p.is_square() {
            return Err(Error::NotSquare { rows: p.nrows(), cols: p.ncols() });
        }
        let cand = Self { n, d, p };
        let r = cand.residual();
        if r > tol {
            return Err(Error::Residual { what: "candidate projector".into(), residual: r, tol });
        }
        Ok(cand)
    }

    /// Worst deviation over symmetry, idempotence, trace, row sums and diagonal.
    pub fn residual(&self) -> f64 {
        let p = &self.p;
        let r = (self.d * self.d - 1) as f64;
        let diag = r / self.n as f64;
        let mut worst = (p - p.transpose()).amax();
        worst = worst.max((p * p - p).amax());
        worst = worst.max((p.trace() - r).abs());
        for i in 0..self.n {
            worst = worst.max(p.row(i).sum().abs());
            worst = worst.max((p[(i, i)] - diag).abs());
        }
        worst
    }
}

/// `I - J/n` with `n = d²`: the regular-simplex candidate.
pub fn simplex_projector(d: usize) -> CandidateProjector {
    let n = d * d;
    let p = RealMatrix::from_fn(n, n, |i, j| (if i == j { 1.0 } else { 0.0 }) - 1.0 / n as f64);
    CandidateProjector { n, d, p }
}

/// Block-diagonal `⊕_{d+1} (I_d - J_d/d)`, the MUM candidate with `n = d(d+1)`.
pub fn mum_projector(d: usize) -> CandidateProjector {
    let n = d * (d + 1);
    let p =
        RealMatrix::from_fn(
            n,
            n,
            |i, j| {
                if i / d != j / d {
                    0.0
                } else {
                    (if i == j { 1.0 } else { 0.0 }) - 1.0 / d as f64
                }
            },
        );
    CandidateProjector { n, d, p }
}

fn homogeneity(design: &ConicalDesign, tol: f64) -> Result<(f64, f64)> {
    let t = design.traces()[0];
    if design.traces().iter().any(|x| (x - t).abs() > tol * t.abs()) {
        return Err(invalid("design is not homogeneous: traces differ"));
    }
    let norms = design.bloch_vectors().iter().map(bloch_norm).collect::<Result<Vec<_>>>()?;
    let k0 = norms[0];
    if norms.iter().any(|k| (k - k0).abs() > tol.max(1e-9) * k0.max(1.0)) {
        return Err(invalid("design is not homogeneous: Bloch norms differ"));
    }
    Ok((t, k0))
}

/// `P = Gram(B)/λ` for a homogeneous design, with `λ = Tr(Gram)/(d²-1)`.
/// Fails if the result is not a candidate projector or if `κ` recovered from
/// `λ` disagrees with the design's stored `κ`.
pub fn homogeneous_gram(design: &ConicalDesign, tol: f64) -> Result<(CandidateProjector, f64)> {
    homogeneity(design, 1e-9)?;
    let b = design.bloch_vectors();
    let n = b.len();
    let d = design.d();
    let df = d as f64;
    let g = RealMatrix::from_fn(n, n, |i, j| b[i].inner(&b[j]));
    let lambda = g.trace() / (df * df - 1.0);
    let p = CandidateProjector::new(d, g / lambda, tol)?;
    let kappa = (lambda * (df + 1.0) / (n as f64 * df)).sqrt();
    let stored = design.constants().kappa;
    if (kappa - stored).abs() > tol.max(1e-9) {
        return Err(Error::Residual { what: "κ from λ".into(), residual: (kappa - stored).abs(), tol });
    }
    Ok((p, lambda))
}

/// Homogeneous design with `κ = 1/(d-1)` realizing `P`: Bloch vectors
/// `B_j = c Σ_a u_a[j] D_a` over the unit eigenvectors `u_a` of `P` and a seeded
/// traceless orthonormal frame `D_a`, with `c = √(nd/((d+1)(d-1)²))`.
pub fn build_from_projector(p: &CandidateProjector, t: f64, seed: u64) -> Result<ConicalDesign> {
    let r = p.residual();
    if r > 1e-9 {
        return Err(Error::Residual { what: "candidate projector".into(), residual: r, tol: 1e-9 });
    }
    if !(t > 0.0) {
        return Err(invalid("trace must be positive"));
    }
    let d = p.d;
    let df = d as f64;
    let n = p.n;
    let rank = d * d - 1;
    let (vals, vecs) = symmetric_eig(&p.p);
    if vals[rank - 1] < 0.5 || (rank < n && vals[rank] > 0.5) {
        return Err(invalid("projector rank is not d²-1"));
    }
    let frame = traceless_frame(d, seed);
    let scale = (n as f64 * df / ((df + 1.0) * (df - 1.0).powi(2))).sqrt();
    let ops: Vec<HermitianOp> = (0..n)
        .map(|j| {
            let mut b = HermitianOp::zeros(d);
            for (a, fa) in frame.iter().enumerate() {
                b = b.add(&fa.scaled(scale * vecs[(j, a)]));
            }
            identity(d).add(&b).scaled(t / df)
        })
        .collect();
    for a in &ops {
        let m = min_eigenvalue(a);
        if m < -1e-10 {
            return Err(Error::NotPsd(m));
        }
    }
    ConicalDesign::new(ops)
}

/// Same traces, Bloch vectors multiplied by `factor`. Shrinking keeps a
/// design a design by convexity.
pub fn rescale_bloch(design: &ConicalDesign, factor: f64) -> Result<ConicalDesign> {
    let df = design.d() as f64;
    let ops = design
        .bloch_vectors()
        .iter()
        .zip(design.traces())
        .map(|(b, &t)| identity(design.d()).add(&b.scaled(factor)).scaled(t / df))
        .collect();
    ConicalDesign::new(ops)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftReport {
    /// `||Σ B_j||_F`.
    pub sum_residual: f64,
    /// `||Σ|B⟩⟩⟨⟨B| - λ Π||_F / λ` with `Π` the projector onto traceless operators.
    pub frame_residual: f64,
    /// Spread of Bloch norms.
    pub norm_spread: f64,
    pub pass: bool,
}

/// Checks the Bloch-side characterization of homogeneous designs.
pub fn lift_check(design: &ConicalDesign, tol: f64) -> Result<LiftReport> {
    let d = design.d();
    let df = d as f64;
    let b = design.bloch_vectors();
    let n = b.len() as f64;
    let mut sum = HermitianOp::zeros(d);
    let mut frame = ComplexMatrix::zeros(d * d, d * d);
    let mut norms = Vec::with_capacity(b.len());
    for bj in &b {
        sum = sum.add(bj);
        let v = vec_op(bj.matrix());
        frame += &v * v.adjoint();
        norms.push(bloch_norm(bj)?);
    }
    let kappa = design.constants().kappa;
    let lambda = n * df * kappa * kappa / (df + 1.0);
    let v1 = vec_op(&ComplexMatrix::identity(d, d));
    let pi = ComplexMatrix::identity(d * d, d * d) - &v1 * v1.adjoint() * c(1.0 / df, 0.0);
    let frame_residual = crate::linalg::frobenius(&(frame - pi * c(lambda, 0.0))) / lambda;
    let max = norms.iter().cloned().fold(f64::MIN, f64::max);
    let min = norms.iter().cloned().fold(f64::MAX, f64::min);
    let sum_residual = sum.norm();
    let norm_spread = max - min;
    let pass = sum_residual <= tol && frame_residual <= tol && norm_spread <= tol;
    Ok(LiftReport { sum_residual, frame_residual, norm_spread, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimVerdict {
    pub is_sim: bool,
    pub kappa: f64,
    /// Worst deviation from `Tr(E_α E_β) = (d²κ²δ + d + 1 - κ²)/(d³(d+1))`.
    pub simcon_residual: f64,
}

/// A POVM with exactly `d²` effects is a conical 2-design iff it is a SIM.
pub fn minimal_povm_is_sim(povm: &Povm, tol: f64) -> Result<SimVerdict> {
    let d = povm.d();
    if povm.len() != d * d {
        return Err(invalid(format!("expected {} effects, got {}", d * d, povm.len())));
    }
    let rep = verify_design(povm.effects(), tol);
    let design = ConicalDesign::new(povm.effects().to_vec())?;
    let kappa = design.constants().kappa;
    let df = d as f64;
    let k2 = kappa * kappa;
    let mut worst = 0.0f64;
    for (i, a) in povm.effects().iter().enumerate() {
        for (j, b) in povm.effects().iter().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            let want = (df * df * k2 * delta + df + 1.0 - k2) / (df.powi(3) * (df + 1.0));
            worst = worst.max((a.inner(b) - want).abs());
        }
    }
    let scale = rep.ks.abs().max(f64::MIN_POSITIVE);
    let is_sim = rep.pass && worst / scale <= tol;
    Ok(SimVerdict { is_sim, kappa, simcon_residual: worst })
}
