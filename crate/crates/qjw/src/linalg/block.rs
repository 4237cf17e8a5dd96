use super::{c, frobenius, kron, ComplexMatrix, C64};
use std::f64::consts::SQRT_2;

/// Block-diagonal complex matrix `⊕_i M_{n_i}(C)`; the ambient of every
/// embedded Jordan algebra. A plain matrix is the one-block case.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix {
    blocks: Vec<ComplexMatrix>,
}

impl BlockMatrix {
    pub fn new(blocks: Vec<ComplexMatrix>) -> Self {
        debug_assert!(blocks.iter().all(|b| b.is_square()));
        Self { blocks }
    }

    pub fn single(m: ComplexMatrix) -> Self {
        Self::new(vec![m])
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Self::new(shape.iter().map(|&n| ComplexMatrix::zeros(n, n)).collect())
    }

    pub fn identity(shape: &[usize]) -> Self {
        Self::new(shape.iter().map(|&n| ComplexMatrix::identity(n, n)).collect())
    }

    /// `m` in block `idx`, zeros elsewhere.
    pub fn embed_block(shape: &[usize], idx: usize, m: ComplexMatrix) -> Self {
        let mut z = Self::zeros(shape);
        z.blocks[idx] = m;
        z
    }

    pub fn shape(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn blocks_mut(&mut self) -> &mut [ComplexMatrix] {
        &mut self.blocks
    }

    pub fn block(&self, i: usize) -> &ComplexMatrix {
        &self.blocks[i]
    }

    pub fn into_blocks(self) -> Vec<ComplexMatrix> {
        self.blocks
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix) -> Self {
        debug_assert_eq!(self.shape(), o.shape());
        Self::new(self.blocks.iter().zip(&o.blocks).map(|(a, b)| f(a, b)).collect())
    }

    fn map(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self::new(self.blocks.iter().map(f).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a * b)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|a| a * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    pub fn add_scaled_mut(&mut self, s: f64, o: &Self) {
        for (a, b) in self.blocks.iter_mut().zip(&o.blocks) {
            *a += b * c(s, 0.0);
        }
    }

    pub fn adjoint(&self) -> Self {
        self.map(|a| a.adjoint())
    }

    pub fn transpose(&self) -> Self {
        self.map(|a| a.transpose())
    }

    pub fn conjugate(&self) -> Self {
        self.map(|a| a.conjugate())
    }

    /// `(ab + ba)/2`.
    pub fn jordan(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| (a * b + b * a) * c(0.5, 0.0))
    }

    pub fn hermitian_part(&self) -> Self {
        self.map(|a| (a + a.adjoint()) * c(0.5, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.blocks.iter().map(|b| frobenius(b).powi(2)).sum::<f64>().sqrt()
    }

    /// `Tr(a^† b)`.
    pub fn hs_inner(&self, o: &Self) -> C64 {
        self.blocks.iter().zip(&o.blocks).map(|(a, b)| super::hs_inner(a, b)).sum()
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.sub(&self.adjoint()).frobenius()
    }

    /// Blockwise Kronecker product; block `(i, j)` lands at index `i * nb + j`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Vec::with_capacity(self.blocks.len() * o.blocks.len());
        for a in &self.blocks {
            for b in &o.blocks {
                out.push(kron(a, b));
            }
        }
        Self::new(out)
    }

    pub fn kron_shape(a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        Self::new(self.blocks.iter().chain(&o.blocks).cloned().collect())
    }

    /// The whole operator as one dense block-diagonal matrix.
    pub fn to_dense(&self) -> ComplexMatrix {
        let n: usize = self.shape().iter().sum();
        let mut out = ComplexMatrix::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            let k = b.nrows();
            out.view_mut((off, off), (k, k)).copy_from(b);
            off += k;
        }
        out
    }

    /// Length of the Hermitian coordinate vector for `shape`.
    pub fn herm_len(shape: &[usize]) -> usize {
        shape.iter().map(|n| n * n).sum()
    }

    /// Orthonormal real coordinates of the Hermitian part: diagonal entries,
    /// then `√2 Re, √2 Im` of each upper entry. Dot products of these vectors
    /// equal `Re Tr(xy)` on Hermitian inputs.
    pub fn herm_coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(Self::herm_len(&self.shape()));
        self.herm_coords_into(&mut out);
        out
    }

    pub fn herm_coords_into(&self, out: &mut Vec<f64>) {
        for b in &self.blocks {
            let n = b.nrows();
            for i in 0..n {
                out.push(b[(i, i)].re);
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let h = (b[(i, j)] + b[(j, i)].conj()) * 0.5;
                    out.push(SQRT_2 * h.re);
                    out.push(SQRT_2 * h.im);
                }
            }
        }
    }

    pub fn from_herm_coords(shape: &[usize], v: &[f64]) -> Self {
        let mut k = 0;
        let mut blocks = Vec::with_capacity(shape.len());
        for &n in shape {
            let mut b = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                b[(i, i)] = c(v[k], 0.0);
                k += 1;
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let z = c(v[k], v[k + 1]) / SQRT_2;
                    b[(i, j)] = z;
                    b[(j, i)] = z.conj();
                    k += 2;
                }
            }
            blocks.push(b);
        }
        Self::new(blocks)
    }

    pub fn full_len(shape: &[usize]) -> usize {
        2 * Self::herm_len(shape)
    }

    /// `[Re, Im]` of every entry, row-major per block. Dot products equal
    /// `Re Tr(x^† y)`.
    pub fn full_coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(Self::full_len(&self.shape()));
        for b in &self.blocks {
            let n = b.nrows();
            for i in 0..n {
                for j in 0..n {
                    out.push(b[(i, j)].re);
                    out.push(b[(i, j)].im);
                }
            }
        }
        out
    }

    pub fn from_full_coords(shape: &[usize], v: &[f64]) -> Self {
        let mut k = 0;
        let mut blocks = Vec::with_capacity(shape.len());
        for &n in shape {
            let mut b = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    b[(i, j)] = c(v[k], v[k + 1]);
                    k += 2;
                }
            }
            blocks.push(b);
        }
        Self::new(blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_density, seeded_rng};

    #[test]
    fn herm_coords_roundtrip_and_inner_product() {
        let mut rng = seeded_rng(1);
        let a = BlockMatrix::new(vec![
            random_density(3, &mut rng).into_matrix(),
            random_density(2, &mut rng).into_matrix(),
        ]);
        let b = BlockMatrix::new(vec![
            random_density(3, &mut rng).into_matrix(),
            random_density(2, &mut rng).into_matrix(),
        ]);
        let va = a.herm_coords();
        assert_eq!(va.len(), 13);
        let back = BlockMatrix::from_herm_coords(&[3, 2], &va);
        assert!(back.sub(&a).frobenius() < 1e-14);
        let dot: f64 = va.iter().zip(b.herm_coords()).map(|(x, y)| x * y).sum();
        assert!((dot - a.mul(&b).trace().re).abs() < 1e-14);
    }

    #[test]
    fn full_coords_roundtrip() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| c(i as f64, j as f64 + 1.0));
        let a = BlockMatrix::new(vec![m.clone(), m.adjoint()]);
        let v = a.full_coords();
        assert_eq!(BlockMatrix::from_full_coords(&[2, 2], &v), a);
    }

    #[test]
    fn kron_shape_order() {
        assert_eq!(BlockMatrix::kron_shape(&[2, 3], &[4, 5]), vec![8, 10, 12, 15]);
        let a = BlockMatrix::identity(&[2, 3]);
        let b = BlockMatrix::identity(&[4, 5]);
        assert_eq!(a.kron(&b).shape(), vec![8, 10, 12, 15]);
    }
}
