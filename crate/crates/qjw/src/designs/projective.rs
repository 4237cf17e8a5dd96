use super::Povm;
use crate::linalg::{HermitianOp, Tolerances};
use crate::{error::invalid, Error, Result};
use serde::{Deserialize, Serialize};

fn check_unit_rank(projectors: &[HermitianOp]) -> Result<usize> {
    let first = projectors.first().ok_or_else(|| invalid("empty projector list"))?;
    let d = first.dim();
    for p in projectors {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, got: p.dim() });
        }
        let sq = HermitianOp::from_hermitian_part(p.matrix() * p.matrix());
        if (p.trace() - 1.0).abs() > 1e-9 || sq.sub(p).norm() > 1e-9 {
            return Err(invalid("projective design elements must be rank-one projectors"));
        }
    }
    Ok(d)
}

/// Frame-potential test: `ΣΣ (Tr π_α π_β)² ≥ 2n²/(d(d+1))` with equality
/// exactly for projective 2-designs. Returns the verdict and the relative gap.
pub fn is_projective_2design(projectors: &[HermitianOp], tol: f64) -> Result<(bool, f64)> {
    let d = check_unit_rank(projectors)? as f64;
    let n = projectors.len() as f64;
    let mut s = 0.0;
    for a in projectors {
        for b in projectors {
            s += a.inner(b).powi(2);
        }
    }
    let target = 2.0 * n * n / (d * (d + 1.0));
    let residual = (s - target) / target;
    Ok((n >= d * d && residual.abs() <= tol, residual))
}

/// The POVM `{(d/n) π_α}`.
pub fn projective_povm(projectors: &[HermitianOp]) -> Result<Povm> {
    let d = check_unit_rank(projectors)? as f64;
    let n = projectors.len() as f64;
    Povm::new(projectors.iter().map(|p| p.scaled(d / n)).collect(), &Tolerances::default())
}

/// `p_α = (d/n) Tr(ρ π_α)`.
pub fn projective_probs(rho: &HermitianOp, projectors: &[HermitianOp]) -> Vec<f64> {
    let n = projectors.len() as f64;
    let d = rho.dim() as f64;
    projectors.iter().map(|p| d / n * p.inner(rho)).collect()
}

/// Expansion `L = Σ ((d+1) p_α - (d/n) Tr L) π_α` with `p_α = (d/n) Tr(L π_α)`.
pub fn pd_coefficients(l: &HermitianOp, projectors: &[HermitianOp]) -> Vec<f64> {
    let n = projectors.len() as f64;
    let d = l.dim() as f64;
    let tr = l.trace();
    projective_probs(l, projectors).into_iter().map(|p| (d + 1.0) * p - d / n * tr).collect()
}

/// State from its projective-design probabilities.
pub fn reconstruct_state(probs: &[f64], projectors: &[HermitianOp]) -> Result<HermitianOp> {
    if probs.len() != projectors.len() {
        return Err(Error::DimensionMismatch { expected: projectors.len(), got: probs.len() });
    }
    let d = check_unit_rank(projectors)?;
    let n = projectors.len() as f64;
    let df = d as f64;
    let mut rho = HermitianOp::zeros(d);
    for (p, pi) in probs.iter().zip(projectors) {
        rho = rho.add(&pi.scaled((df + 1.0) * p - df / n));
    }
    Ok(rho)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PurityVerdict {
    pub pure: bool,
    pub quad: f64,
    pub quad_target: f64,
    pub cube: f64,
    pub cube_target: f64,
}

impl PurityVerdict {
    pub fn quad_residual(&self) -> f64 {
        (self.quad - self.quad_target).abs()
    }

    pub fn cube_residual(&self) -> f64 {
        (self.cube - self.cube_target).abs()
    }
}

/// Purity from probabilities alone: pure iff `Σp² = 2d/(n(d+1))` and
/// `Σ p_α p_β p_γ Re Tr(π_α π_β π_γ) = (d+7)/(d+1)³`.
pub fn purity_from_probs(probs: &[f64], projectors: &[HermitianOp], tol: f64) -> Result<PurityVerdict> {
    if probs.len() != projectors.len() {
        return Err(Error::DimensionMismatch { expected: projectors.len(), got: probs.len() });
    }
    let d = check_unit_rank(projectors)?;
    let df = d as f64;
    let n = projectors.len() as f64;
    let quad: f64 = probs.iter().map(|p| p * p).sum();
    // Σ_βγ p_β p_γ Tr(π_α π_β π_γ) = Tr(π_α X²) with X = Σ p_β π_β.
    let mut x = HermitianOp::zeros(d);
    for (p, pi) in probs.iter().zip(projectors) {
        x = x.add(&pi.scaled(*p));
    }
    let x3 = HermitianOp::from_hermitian_part(x.matrix() * x.matrix() * x.matrix());
    let cube = x3.trace();
    let quad_target = 2.0 * df / (n * (df + 1.0));
    let cube_target = (df + 7.0) / (df + 1.0).powi(3);
    let pure = (quad - quad_target).abs() <= tol && (cube - cube_target).abs() <= tol;
    Ok(PurityVerdict { pure, quad, quad_target, cube, cube_target })
}

/// Direct purity test `Tr ρ² = 1`.
pub fn purity_test(rho: &HermitianOp, tol: f64) -> bool {
    (rho.inner(rho) - 1.0).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{build_mub, build_sic};

    #[test]
    fn renes_targets() {
        let sic = build_sic(2).unwrap();
        let (ok, r) = is_projective_2design(&sic, 1e-10).unwrap();
        assert!(ok && r.abs() < 1e-12);
        let mub = build_mub(2).unwrap();
        assert!(is_projective_2design(&mub, 1e-10).unwrap().0);
        let z = sic[0].clone();
        let zs = vec![z.clone(), z.clone(), z.clone(), z];
        assert!(!is_projective_2design(&zs, 1e-10).unwrap().0);
        assert!(is_projective_2design(&[HermitianOp::identity(2)], 1e-10).is_err());
    }

    #[test]
    fn maximally_mixed_is_not_pure() {
        let sic = build_sic(2).unwrap();
        let rho = HermitianOp::identity(2).scaled(0.5);
        let p = projective_probs(&rho, &sic);
        let v = purity_from_probs(&p, &sic, 1e-10).unwrap();
        assert!(!v.pure && (v.quad - 0.25).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_roundtrip() {
        let mub = build_mub(3).unwrap();
        let rho = crate::linalg::random_density(3, &mut crate::linalg::seeded_rng(8));
        let p = projective_probs(&rho, &mub);
        let back = reconstruct_state(&p, &mub).unwrap();
        assert!(back.sub(&rho).norm() < 1e-12);
    }
}
