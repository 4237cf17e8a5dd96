//! Bloch representation `ρ = (1 + B)/d` with the metric
//! `⟨B1|B2⟩ = Tr(B1 B2) / (d(d-1))`. Pure states sit at norm 1, the largest
//! ball of guaranteed states has radius `1/(d-1)`.

use crate::linalg::{gell_mann, min_eigenvalue, HermitianOp, Tolerances};
use crate::{error::invalid, Error, Result};

fn check_d(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(invalid("Bloch metric needs d >= 2"));
    }
    Ok(d as f64)
}

/// `Tr(b1 b2) / (d(d-1))` with `d` the operator dimension.
pub fn metric_inner(b1: &HermitianOp, b2: &HermitianOp) -> Result<f64> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch { expected: b1.dim(), got: b2.dim() });
    }
    let d = check_d(b1.dim())?;
    Ok(b1.inner(b2) / (d * (d - 1.0)))
}

pub fn bloch_norm(b: &HermitianOp) -> Result<f64> {
    Ok(metric_inner(b, b)?.max(0.0).sqrt())
}

/// Bloch vector `dρ - 1` of a validated density operator.
pub fn state_to_bloch(rho: &HermitianOp, tol: &Tolerances) -> Result<HermitianOp> {
    let d = check_d(rho.dim())?;
    rho.validate_state(tol)?;
    Ok(rho.scaled(d).sub(&HermitianOp::identity(rho.dim())))
}

/// `(1 + B)/d`; fails for non-traceless `B`. The result need not be PSD.
pub fn bloch_to_operator(b: &HermitianOp) -> Result<HermitianOp> {
    let d = check_d(b.dim())?;
    let t = b.trace();
    if t.abs() > 1e-10 * b.norm().max(1.0) {
        return Err(invalid(format!("Bloch vector must be traceless (trace {t:.3e})")));
    }
    Ok(HermitianOp::identity(b.dim()).add(b).scaled(1.0 / d))
}

/// Like [`bloch_to_operator`] but also requires the result to be a state.
pub fn bloch_to_state(b: &HermitianOp, tol: &Tolerances) -> Result<HermitianOp> {
    let rho = bloch_to_operator(b)?;
    rho.validate_state(tol)?;
    Ok(rho)
}

/// Bloch vector of the normalized operator `A / Tr(A)`: `dA/Tr(A) - 1`,
/// together with `Tr(A)`.
pub fn operator_to_bloch(a: &HermitianOp) -> Result<(HermitianOp, f64)> {
    let d = check_d(a.dim())?;
    let t = a.trace();
    if t.abs() < 1e-14 {
        return Err(invalid("operator with zero trace has no Bloch vector"));
    }
    Ok((a.scaled(d / t).sub(&HermitianOp::identity(a.dim())), t))
}

/// Inside the ball of radius `1/(d-1)`, which guarantees positivity.
pub fn in_ball(b: &HermitianOp, tol: f64) -> Result<bool> {
    let d = check_d(b.dim())?;
    Ok(bloch_norm(b)? <= 1.0 / (d - 1.0) + tol)
}

/// Inside the unit ball, a necessary condition for being a state.
pub fn in_out_ball(b: &HermitianOp, tol: f64) -> Result<bool> {
    Ok(bloch_norm(b)? <= 1.0 + tol)
}

/// Whether `(1 + B)/d` is positive semidefinite.
pub fn is_state(b: &HermitianOp, tol: f64) -> Result<bool> {
    let rho = bloch_to_operator(b)?;
    Ok(min_eigenvalue(&rho) >= -tol)
}

/// Coordinates in the Gell-Mann basis scaled so the Euclidean norm equals the
/// Bloch metric norm.
pub fn bloch_coordinates(b: &HermitianOp) -> Result<Vec<f64>> {
    let d = check_d(b.dim())?;
    let s = 1.0 / (d * (d - 1.0)).sqrt();
    Ok(gell_mann(b.dim()).iter().map(|g| g.inner(b) * s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pure_state_op, random_density, random_pure_state, seeded_rng};

    #[test]
    fn pure_states_have_unit_norm() {
        let mut rng = seeded_rng(1);
        for d in 2..6 {
            let psi = random_pure_state(d, &mut rng);
            let b = state_to_bloch(&pure_state_op(&psi), &Default::default()).unwrap();
            assert!((bloch_norm(&b).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn roundtrip_and_norm_identity() {
        let mut rng = seeded_rng(2);
        let rho = random_density(3, &mut rng);
        let b = state_to_bloch(&rho, &Default::default()).unwrap();
        let back = bloch_to_state(&b, &Default::default()).unwrap();
        assert!(back.sub(&rho).norm() < 1e-13);
        // |B|^2 = (d Tr ρ^2 - 1)/(d - 1)
        let d = 3.0;
        let want = (d * rho.inner(&rho) - 1.0) / (d - 1.0);
        assert!((bloch_norm(&b).unwrap().powi(2) - want).abs() < 1e-12);
        let x = bloch_coordinates(&b).unwrap();
        let n: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((n - bloch_norm(&b).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn ball_boundaries() {
        assert!(bloch_to_operator(&HermitianOp::identity(2)).is_err());
        assert!(state_to_bloch(&HermitianOp::identity(1), &Default::default()).is_err());
        let mixed = HermitianOp::identity(3).scaled(1.0 / 3.0);
        let b = state_to_bloch(&mixed, &Default::default()).unwrap();
        assert!(in_ball(&b, 0.0).unwrap() && is_state(&b, 0.0).unwrap());
    }
}
