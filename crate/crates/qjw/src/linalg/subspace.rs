use super::{BlockMatrix, HermitianOp, RealMatrix};
use crate::{Error, Result};
use nalgebra::DMatrixView;
use serde::{Deserialize, Serialize};

/// Orthonormal basis of a subspace of `R^len`, grown by Gram-Schmidt with one
/// reorthogonalization pass. Columns are stored contiguously so projections of
/// candidate batches become two matrix products.
#[derive(Clone, Debug)]
pub struct RealSpan {
    len: usize,
    dim: usize,
    data: Vec<f64>,
    tol: f64,
}

impl RealSpan {
    pub fn new(len: usize, tol: f64) -> Self {
        Self { len, dim: 0, data: Vec::new(), tol }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim == 0
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.data[i * self.len..(i + 1) * self.len]
    }

    pub fn basis_matrix(&self) -> DMatrixView<'_, f64> {
        DMatrixView::from_slice(&self.data, self.len, self.dim)
    }

    fn subtract_projection(&self, r: &mut [f64], from: usize) {
        for k in from..self.dim {
            let b = self.vector(k);
            let p: f64 = b.iter().zip(r.iter()).map(|(x, y)| x * y).sum();
            if p != 0.0 {
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri -= p * bi;
                }
            }
        }
    }

    /// Coefficients of the orthogonal projection.
    pub fn coefficients(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|k| self.vector(k).iter().zip(v).map(|(x, y)| x * y).sum()).collect()
    }

    /// Component of `v` orthogonal to the span.
    pub fn residual(&self, v: &[f64]) -> Vec<f64> {
        let mut r = v.to_vec();
        self.subtract_projection(&mut r, 0);
        self.subtract_projection(&mut r, 0);
        r
    }

    pub fn residual_norm(&self, v: &[f64]) -> f64 {
        norm(&self.residual(v))
    }

    /// Adds the residual of `v` if its norm exceeds `tol * scale`. Returns the
    /// new basis index.
    pub fn push(&mut self, v: &[f64], scale: f64) -> Option<usize> {
        debug_assert_eq!(v.len(), self.len);
        let r = self.residual(v);
        self.accept(r, scale)
    }

    /// [`push`](Self::push) with the threshold relative to `||v||`.
    pub fn push_relative(&mut self, v: &[f64]) -> Option<usize> {
        let n = norm(v);
        if n == 0.0 {
            return None;
        }
        self.push(v, n)
    }

    fn accept(&mut self, mut r: Vec<f64>, scale: f64) -> Option<usize> {
        let n = norm(&r);
        if !(n > self.tol * scale) {
            return None;
        }
        r.iter_mut().for_each(|x| *x /= n);
        self.data.extend_from_slice(&r);
        self.dim += 1;
        Some(self.dim - 1)
    }

    /// Batch version of [`push_relative`](Self::push_relative) for the columns
    /// of `cands`, with the threshold scale never below `floor`. Returns the
    /// indices of accepted columns.
    pub fn extend_relative(&mut self, cands: &RealMatrix, floor: f64) -> Vec<usize> {
        debug_assert_eq!(cands.nrows(), self.len);
        let start = self.dim;
        let resid = if start == 0 {
            cands.clone()
        } else {
            let b = self.basis_matrix();
            let coef = b.tr_mul(cands);
            cands - b * coef
        };
        let mut accepted = Vec::new();
        for j in 0..cands.ncols() {
            let own = cands.column(j).norm();
            if own == 0.0 {
                continue;
            }
            let scale = own.max(floor);
            let mut r: Vec<f64> = resid.column(j).iter().copied().collect();
            self.subtract_projection(&mut r, start);
            if !(norm(&r) > self.tol * scale) {
                continue;
            }
            self.subtract_projection(&mut r, 0);
            if self.accept(r, scale).is_some() {
                accepted.push(j);
            }
        }
        accepted
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    /// Real span of Hermitian operators.
    Real,
    /// Complex span of arbitrary operators.
    Complex,
}

/// Subspace of a block-diagonal ambient with an orthonormal basis.
///
/// Real subspaces hold Hermitian operators with the inner product `Re Tr(xy)`.
/// Complex subspaces are stored as the real span of `{x, ix}` over full
/// coordinates, so the recorded basis is complex-orthonormal.
#[derive(Clone, Debug)]
pub struct OperatorSubspace {
    shape: Vec<usize>,
    field: Field,
    span: RealSpan,
    basis: Vec<BlockMatrix>,
}

impl OperatorSubspace {
    pub fn new(shape: &[usize], field: Field, tol: f64) -> Self {
        let len = match field {
            Field::Real => BlockMatrix::herm_len(shape),
            Field::Complex => BlockMatrix::full_len(shape),
        };
        Self { shape: shape.to_vec(), field, span: RealSpan::new(len, tol), basis: Vec::new() }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension over the subspace's own field.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BlockMatrix] {
        &self.basis
    }

    pub fn span(&self) -> &RealSpan {
        &self.span
    }

    pub fn coords(&self, x: &BlockMatrix) -> Vec<f64> {
        match self.field {
            Field::Real => x.herm_coords(),
            Field::Complex => x.full_coords(),
        }
    }

    pub fn from_coords(&self, v: &[f64]) -> BlockMatrix {
        match self.field {
            Field::Real => BlockMatrix::from_herm_coords(&self.shape, v),
            Field::Complex => BlockMatrix::from_full_coords(&self.shape, v),
        }
    }

    fn record(&mut self, idx: usize) {
        let m = self.from_coords(self.span.vector(idx));
        self.basis.push(m);
    }

    /// Adds `x` if it is not already in the span (threshold relative to `scale`).
    pub fn push_scaled(&mut self, x: &BlockMatrix, scale: f64) -> bool {
        let v = self.coords(x);
        match self.span.push(&v, scale) {
            Some(idx) => {
                self.record(idx);
                if self.field == Field::Complex {
                    let iv = self.coords(&x.scale(super::c(0.0, 1.0)));
                    // i·x is orthogonal to x in the real inner product; it is
                    // always new unless x is numerically zero.
                    let _ = self.span.push(&iv, scale);
                }
                true
            }
            None => false,
        }
    }

    pub fn push(&mut self, x: &BlockMatrix) -> bool {
        let s = x.frobenius();
        s > 0.0 && self.push_scaled(x, s)
    }

    /// Adds many candidates at once; returns how many were new.
    pub fn extend(&mut self, xs: &[BlockMatrix]) -> usize {
        self.extend_with_floor(xs, 0.0)
    }

    /// [`extend`](Self::extend) with the membership threshold scaled by at
    /// least `floor`. Products of unit-norm elements pass `floor = 1` so that
    /// roundoff-sized results are not mistaken for new directions.
    pub fn extend_with_floor(&mut self, xs: &[BlockMatrix], floor: f64) -> usize {
        if xs.is_empty() {
            return 0;
        }
        match self.field {
            Field::Real => {
                let len = self.span.len();
                let mut m = RealMatrix::zeros(len, xs.len());
                for (j, x) in xs.iter().enumerate() {
                    m.column_mut(j).copy_from_slice(&x.herm_coords());
                }
                let before = self.span.dim();
                let acc = self.span.extend_relative(&m, floor);
                for k in 0..acc.len() {
                    self.record(before + k);
                }
                acc.len()
            }
            Field::Complex => xs
                .iter()
                .filter(|x| {
                    let s = x.frobenius();
                    s > 0.0 && self.push_scaled(x, s.max(floor))
                })
                .count(),
        }
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &BlockMatrix) -> BlockMatrix {
        let v = self.coords(x);
        let r = self.span.residual(&v);
        let p: Vec<f64> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        self.from_coords(&p)
    }

    /// `||x - P(x)||`, restricted to the Hermitian part for real subspaces.
    pub fn distance(&self, x: &BlockMatrix) -> f64 {
        norm(&self.span.residual(&self.coords(x)))
    }

    /// Distance relative to `||x||`; zero for `x = 0`.
    pub fn relative_residual(&self, x: &BlockMatrix) -> f64 {
        let n = norm(&self.coords(x));
        if n == 0.0 {
            0.0
        } else {
            self.distance(x) / n
        }
    }

    pub fn contains(&self, x: &BlockMatrix, rel_tol: f64) -> bool {
        self.relative_residual(x) <= rel_tol
    }

    /// Coordinates of `x` in the stored basis (real subspaces only).
    pub fn basis_coefficients(&self, x: &BlockMatrix) -> Result<Vec<f64>> {
        if self.field != Field::Real {
            return Err(Error::Unsupported("coefficients of a complex subspace".into()));
        }
        Ok(self.span.coefficients(&self.coords(x)))
    }
}

/// Orthonormal basis of the real span of Hermitian operators, dropping inputs
/// whose residual is at most `tol * max||input||`.
pub fn orthonormalize_real(ops: &[HermitianOp], tol: f64) -> Result<OperatorSubspace> {
    let n = ops.first().map(|o| o.dim()).unwrap_or(0);
    if let Some(bad) = ops.iter().find(|o| o.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bad.dim() });
    }
    let scale = ops.iter().fold(0.0f64, |m, o| m.max(o.norm()));
    let mut sub = OperatorSubspace::new(&[n], Field::Real, tol);
    for o in ops {
        sub.push_scaled(&BlockMatrix::single(o.matrix().clone()), scale);
    }
    Ok(sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, gell_mann, ComplexMatrix};

    #[test]
    fn orthonormalize_drops_dependent_vectors() {
        let mut ops = gell_mann(3);
        let combo = ops[0].add(&ops[3].scaled(2.0));
        ops.push(combo);
        ops.push(HermitianOp::identity(3));
        let sub = orthonormalize_real(&ops, 1e-8).unwrap();
        assert_eq!(sub.dim(), 9);
        for (i, a) in sub.basis().iter().enumerate() {
            for (j, b) in sub.basis().iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.hs_inner(b).re - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn batch_and_single_agree() {
        let g = gell_mann(3);
        let xs: Vec<BlockMatrix> = g.iter().chain(g.iter()).map(|h| BlockMatrix::single(h.matrix().clone())).collect();
        let mut a = OperatorSubspace::new(&[3], Field::Real, 1e-8);
        let mut b = a.clone();
        assert_eq!(a.extend(&xs), 8);
        assert_eq!(xs.iter().filter(|x| b.push(x)).count(), 8);
    }

    #[test]
    fn complex_span_is_complex_dimension() {
        let mut s = OperatorSubspace::new(&[2], Field::Complex, 1e-8);
        let x = BlockMatrix::single(ComplexMatrix::from_fn(2, 2, |i, j| c(i as f64, j as f64)));
        assert!(s.push(&x));
        assert!(!s.push(&x.scale(c(0.3, -2.0))));
        assert_eq!(s.dim(), 1);
        assert_eq!(s.span().dim(), 2);
    }
}
