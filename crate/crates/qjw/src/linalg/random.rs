use super::{c, ComplexMatrix, ComplexVector, HermitianOp, RealMatrix};
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

/// The crate's only RNG; every randomized routine takes one explicitly.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// One standard normal draw.
pub fn standard_normal(rng: &mut SeededRng) -> f64 {
    StandardNormal.sample(rng)
}

fn gauss(rng: &mut SeededRng) -> f64 {
    standard_normal(rng)
}

fn ginibre(d: usize, rng: &mut SeededRng) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| c(gauss(rng), gauss(rng)) * std::f64::consts::FRAC_1_SQRT_2)
}

/// Haar-random unitary: QR of a Ginibre matrix with the diagonal phases of R
/// moved back into Q.
pub fn haar_unitary(d: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let qr = ginibre(d, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..d {
        let rjj = r[(j, j)];
        let ph = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { c(1.0, 0.0) };
        for i in 0..d {
            u[(i, j)] *= ph;
        }
    }
    u
}

/// Haar-random orthogonal matrix, same recipe over the reals.
pub fn random_orthogonal(n: usize, rng: &mut SeededRng) -> RealMatrix {
    let g = RealMatrix::from_fn(n, n, |_, _| gauss(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn random_pure_state(d: usize, rng: &mut SeededRng) -> ComplexVector {
    let v = ComplexVector::from_fn(d, |_, _| c(gauss(rng), gauss(rng)));
    let n = v.norm();
    v / c(n, 0.0)
}

/// Full-rank random density operator `G G^† / Tr(G G^†)`.
pub fn random_density(d: usize, rng: &mut SeededRng) -> HermitianOp {
    let g = ginibre(d, rng);
    let m = &g * g.adjoint();
    let t = m.trace().re;
    HermitianOp::from_hermitian_part(m / c(t, 0.0))
}
