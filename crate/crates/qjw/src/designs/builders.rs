use super::ConicalDesign;
use crate::linalg::{
    c, gell_mann, identity, min_eigenvalue, pure_state_op, random_orthogonal, seeded_rng, ComplexVector, HermitianOp,
    RealMatrix,
};
use crate::{error::invalid, Error, Result};
use std::f64::consts::PI;

/// Vertices of a regular simplex with `n` vertices in `R^{n-1}`, centred at
/// the origin with squared radius `r2`. Built by Cholesky-factoring the leading
/// block of the target Gram matrix `r2 (n δ - 1)/(n - 1)`; the last vertex is
/// minus the sum of the others.
pub fn regular_simplex(n: usize, r2: f64) -> Result<Vec<Vec<f64>>> {
    if n < 2 {
        return Err(invalid("a simplex needs at least two vertices"));
    }
    let m = n - 1;
    let nf = n as f64;
    let g = RealMatrix::from_fn(m, m, |i, j| r2 * (if i == j { nf } else { 0.0 } - 1.0) / (nf - 1.0));
    let l = g.cholesky().ok_or_else(|| Error::Numerical("simplex Gram not positive definite".into()))?.l();
    let mut verts: Vec<Vec<f64>> = (0..m).map(|i| l.row(i).iter().copied().collect()).collect();
    let last: Vec<f64> = (0..m).map(|k| -verts.iter().map(|v| v[k]).sum::<f64>()).collect();
    verts.push(last);
    Ok(verts)
}

/// Orthonormal traceless basis: the Gell-Mann matrices rotated by a seeded
/// Haar orthogonal matrix.
pub fn traceless_frame(d: usize, seed: u64) -> Vec<HermitianOp> {
    let g = gell_mann(d);
    let q = random_orthogonal(g.len(), &mut seeded_rng(seed));
    (0..g.len())
        .map(|a| {
            let mut acc = HermitianOp::zeros(d);
            for (b, gb) in g.iter().enumerate() {
                acc = acc.add(&gb.scaled(q[(a, b)]));
            }
            acc
        })
        .collect()
}

fn combine(frame: &[HermitianOp], offset: usize, coords: &[f64]) -> HermitianOp {
    let mut acc = HermitianOp::zeros(frame[0].dim());
    for (k, &x) in coords.iter().enumerate() {
        acc = acc.add(&frame[offset + k].scaled(x));
    }
    acc
}

fn check_psd(ops: &[HermitianOp]) -> Result<()> {
    for a in ops {
        let m = min_eigenvalue(a);
        if m < -1e-12 {
            return Err(Error::NotPsd(m));
        }
    }
    Ok(())
}

/// Closed-form `(k_s, k_a)` of a SIM with contraction `κ`.
pub fn sim_constants(d: usize, kappa: f64) -> (f64, f64) {
    let df = d as f64;
    let k2 = kappa * kappa;
    ((1.0 + (df - 1.0) * k2 / (df + 1.0)) / (df * df), (1.0 - k2) / (df * df))
}

/// Closed-form `(k_s, k_a)` of a MUM with contraction `η`.
pub fn mum_constants(d: usize, eta: f64) -> (f64, f64) {
    let df = d as f64;
    let e2 = eta * eta;
    let pre = 1.0 / (df * (df + 1.0));
    (pre * (1.0 + (df - 1.0) * e2 / (df + 1.0)), pre * (1.0 - e2))
}

/// Symmetric informationally complete POVM: `d²` effects `(1 + B_α)/d²` whose
/// Bloch vectors form a regular simplex of radius `κ`.
pub fn build_sim(d: usize, kappa: f64, seed: u64) -> Result<ConicalDesign> {
    if d < 2 {
        return Err(invalid("SIM needs d >= 2"));
    }
    if !(kappa > 0.0 && kappa <= 1.0) {
        return Err(invalid(format!("SIM contraction must lie in (0, 1], got {kappa}")));
    }
    let df = d as f64;
    let n = d * d;
    let verts = regular_simplex(n, df * (df - 1.0) * kappa * kappa)?;
    let frame = traceless_frame(d, seed);
    let ops: Vec<HermitianOp> =
        verts.iter().map(|v| identity(d).add(&combine(&frame, 0, v)).scaled(1.0 / (df * df))).collect();
    check_psd(&ops)?;
    ConicalDesign::new(ops)
}

/// Mutually unbiased measurements: `d + 1` bands of `d` effects, each band's
/// Bloch vectors a regular simplex of radius `η` in its own orthogonal block.
pub fn build_mum(d: usize, eta: f64, seed: u64) -> Result<ConicalDesign> {
    if d < 2 {
        return Err(invalid("MUM needs d >= 2"));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(invalid(format!("MUM contraction must lie in (0, 1], got {eta}")));
    }
    let df = d as f64;
    let verts = regular_simplex(d, df * (df - 1.0) * eta * eta)?;
    let frame = traceless_frame(d, seed);
    let mut ops = Vec::with_capacity(d * (d + 1));
    for band in 0..=d {
        for v in &verts {
            let b = combine(&frame, band * (d - 1), v);
            ops.push(identity(d).add(&b).scaled(1.0 / (df * (df + 1.0))));
        }
    }
    check_psd(&ops)?;
    ConicalDesign::new(ops)
}

fn ket(entries: &[(f64, f64)]) -> ComplexVector {
    let v = ComplexVector::from_iterator(entries.len(), entries.iter().map(|&(r, i)| c(r, i)));
    let n = v.norm();
    v / c(n, 0.0)
}

/// SIC projectors for `d = 2` (Bloch tetrahedron) and `d = 3` (orbit of
/// `(0, 1, -1)/√2` under the Weyl-Heisenberg group).
pub fn build_sic(d: usize) -> Result<Vec<HermitianOp>> {
    match d {
        2 => {
            let p = crate::linalg::pauli();
            let s = 1.0 / 3f64.sqrt();
            let dirs = [[1., 1., 1.], [1., -1., -1.], [-1., 1., -1.], [-1., -1., 1.]];
            Ok(dirs
                .iter()
                .map(|r| {
                    let m = &p[0] + (&p[1] * c(r[0] * s, 0.) + &p[2] * c(r[1] * s, 0.) + &p[3] * c(r[2] * s, 0.));
                    HermitianOp::from_hermitian_part(m * c(0.5, 0.))
                })
                .collect())
        }
        3 => {
            let fid = [c(0., 0.), c(1., 0.), c(-1., 0.)];
            let w = |k: usize| c((2.0 * PI * k as f64 / 3.0).cos(), (2.0 * PI * k as f64 / 3.0).sin());
            let mut out = Vec::with_capacity(9);
            for a in 0..3 {
                for b in 0..3 {
                    // (X^a Z^b ψ)_k = ω^{b(k-a)} ψ_{k-a}
                    let v = ComplexVector::from_fn(3, |k, _| {
                        let j = (k + 3 - a) % 3;
                        fid[j] * w(b * j % 3)
                    });
                    let v = &v / c(v.norm(), 0.);
                    out.push(pure_state_op(&v));
                }
            }
            Ok(out)
        }
        _ => Err(crate::Error::Unsupported(format!("SIC construction ships only for d in {{2, 3}}, got {d}"))),
    }
}

fn is_prime(d: usize) -> bool {
    d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k))
}

/// Complete set of `d + 1` MUBs as `d(d+1)` rank-one projectors, grouped by
/// basis. `d = 2` uses the Pauli eigenbases; odd primes use the computational
/// basis plus the quadratic-phase bases `Σ_k ω^{a k² + b k}|k⟩/√d`.
pub fn build_mub(d: usize) -> Result<Vec<HermitianOp>> {
    if !is_prime(d) || d > 7 {
        return Err(crate::Error::Unsupported(format!("MUBs ship for primes d <= 7, got {d}")));
    }
    let mut out = Vec::with_capacity(d * (d + 1));
    if d == 2 {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let kets = [
            ket(&[(1., 0.), (0., 0.)]),
            ket(&[(0., 0.), (1., 0.)]),
            ket(&[(r, 0.), (r, 0.)]),
            ket(&[(r, 0.), (-r, 0.)]),
            ket(&[(r, 0.), (0., r)]),
            ket(&[(r, 0.), (0., -r)]),
        ];
        out.extend(kets.iter().map(pure_state_op));
        return Ok(out);
    }
    for k in 0..d {
        let mut v = ComplexVector::zeros(d);
        v[k] = c(1., 0.);
        out.push(pure_state_op(&v));
    }
    let s = 1.0 / (d as f64).sqrt();
    for a in 0..d {
        for b in 0..d {
            let v = ComplexVector::from_fn(d, |k, _| {
                let e = (a * k * k + b * k) % d;
                let th = 2.0 * PI * e as f64 / d as f64;
                c(s * th.cos(), s * th.sin())
            });
            out.push(pure_state_op(&v));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_gram() {
        let v = regular_simplex(5, 2.0).unwrap();
        for (i, a) in v.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let want = if i == j { 2.0 } else { -2.0 / 4.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sic_overlaps() {
        for d in [2usize, 3] {
            let p = build_sic(d).unwrap();
            assert_eq!(p.len(), d * d);
            for (i, a) in p.iter().enumerate() {
                for (j, b) in p.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 1.0 / (d as f64 + 1.0) };
                    assert!((a.inner(b) - want).abs() < 1e-12, "d={d}");
                }
            }
        }
        assert!(build_sic(4).is_err());
    }

    #[test]
    fn mub_overlaps() {
        for d in [2usize, 3, 5, 7] {
            let p = build_mub(d).unwrap();
            assert_eq!(p.len(), d * (d + 1));
            for (i, a) in p.iter().enumerate() {
                for (j, b) in p.iter().enumerate() {
                    let want = if i == j {
                        1.0
                    } else if i / d == j / d {
                        0.0
                    } else {
                        1.0 / d as f64
                    };
                    assert!((a.inner(b) - want).abs() < 1e-12, "d={d} i={i} j={j}");
                }
            }
        }
        assert!(build_mub(4).is_err() && build_mub(11).is_err());
    }

    #[test]
    fn oversized_kappa_fails_psd() {
        assert!(matches!(build_sim(3, 1.0, 1), Err(Error::NotPsd(_))));
        assert!(build_sim(3, 0.0, 1).is_err());
    }
}
