use super::{c, kron, ComplexMatrix, HermitianOp};
use crate::{error::invalid, Result};

pub const PAULI_I: usize = 0;
pub const PAULI_X: usize = 1;
pub const PAULI_Y: usize = 2;
pub const PAULI_Z: usize = 3;

/// `[σ0, σx, σy, σz]`.
pub fn pauli() -> [ComplexMatrix; 4] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        ComplexMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        ComplexMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        ComplexMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        ComplexMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// Generalized Gell-Mann matrices, orthonormal under `Tr(AB)`. Order: the
/// symmetric off-diagonal ones by `(j, k)`, then the antisymmetric ones, then the
/// diagonal ones. For `d = 2` this is σx, σy, σz over √2.
pub fn gell_mann(d: usize) -> Vec<HermitianOp> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut sym = Vec::new();
    let mut asym = Vec::new();
    for j in 0..d {
        for k in (j + 1)..d {
            let mut a = ComplexMatrix::zeros(d, d);
            a[(j, k)] = c(s, 0.0);
            a[(k, j)] = c(s, 0.0);
            sym.push(HermitianOp::from_hermitian_part(a));
            let mut b = ComplexMatrix::zeros(d, d);
            b[(j, k)] = c(0.0, -s);
            b[(k, j)] = c(0.0, s);
            asym.push(HermitianOp::from_hermitian_part(b));
        }
    }
    let mut diag = Vec::new();
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut a = ComplexMatrix::zeros(d, d);
        for m in 0..l {
            a[(m, m)] = c(norm, 0.0);
        }
        a[(l, l)] = c(-(l as f64) * norm, 0.0);
        diag.push(HermitianOp::from_hermitian_part(a));
    }
    sym.into_iter().chain(asym).chain(diag).collect()
}

fn kron_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    factors.iter().fold(ComplexMatrix::identity(1, 1), |acc, f| kron(&acc, f))
}

/// Pairwise anticommuting symmetries `v_1..v_k` of size `2^⌊k/2⌋`, built from
/// tensor products of Pauli matrices. `v_p` for `p < k` (or every `p` when `k`
/// is even) is `σy^{⊗(c-1)} ⊗ (σz or σx) ⊗ 1^{⊗(L-c)}` with `c = ⌈p/2⌉`; for odd
/// `k` the last one is `σy^{⊗L}`.
pub fn spin_generators(k: usize) -> Result<Vec<HermitianOp>> {
    if k == 0 {
        return Err(invalid("spin factor needs k >= 1"));
    }
    let [s0, sx, sy, sz] = pauli();
    let l = k / 2;
    let mut out = Vec::with_capacity(k);
    for p in 1..=k {
        let m = if k % 2 == 1 && p == k {
            kron_all(&vec![sy.clone(); l])
        } else {
            let cc = p.div_ceil(2);
            let mut f = vec![sy.clone(); cc - 1];
            f.push(if p % 2 == 1 { sz.clone() } else { sx.clone() });
            f.extend(std::iter::repeat_n(s0.clone(), l - cc));
            kron_all(&f)
        };
        out.push(HermitianOp::from_hermitian_part(m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frobenius;

    #[test]
    fn gell_mann_orthonormal_traceless() {
        for d in 2..6 {
            let g = gell_mann(d);
            assert_eq!(g.len(), d * d - 1);
            for (a, x) in g.iter().enumerate() {
                assert!(x.trace().abs() < 1e-14);
                for (b, y) in g.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((x.inner(y) - want).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn spin_generators_anticommute_and_square_to_one() {
        for k in 1..8 {
            let v = spin_generators(k).unwrap();
            let n = 1usize << (k / 2);
            for (p, a) in v.iter().enumerate() {
                assert_eq!(a.dim(), n);
                for (q, b) in v.iter().enumerate() {
                    let ac = a.matrix() * b.matrix() + b.matrix() * a.matrix();
                    let want =
                        if p == q { ComplexMatrix::identity(n, n) * c(2.0, 0.0) } else { ComplexMatrix::zeros(n, n) };
                    assert!(frobenius(&(ac - want)) < 1e-13, "k={k} p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn spin_small_cases_match_paulis() {
        let [_, sx, sy, sz] = pauli();
        let v = spin_generators(3).unwrap();
        assert_eq!(v[0].matrix(), &sz);
        assert_eq!(v[1].matrix(), &sx);
        assert_eq!(v[2].matrix(), &sy);
    }
}
