use super::{random_element, SPAN_TOL};
use crate::linalg::{seeded_rng, BlockMatrix, Field, OperatorSubspace};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// How new products are generated each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureStrategy {
    /// Every product of a basis element added last round with every basis
    /// element. Each pair is formed exactly once over the whole run.
    Pairwise,
    /// Products of one random element of the current span with the whole
    /// basis. If the span is not closed a generic element leaves it, so the
    /// loop stops after two consecutive random elements add nothing.
    GenericElement { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureOptions {
    pub strategy: ClosureStrategy,
    /// Relative residual below which a product counts as already present.
    pub tol: f64,
    pub max_rounds: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        Self { strategy: ClosureStrategy::Pairwise, tol: SPAN_TOL, max_rounds: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureStats {
    pub rounds: usize,
    pub products: usize,
}

const BATCH: usize = 256;

fn check_generators(gens: &[BlockMatrix], shape: &[usize]) -> Result<()> {
    for g in gens {
        if g.shape() != shape {
            return Err(Error::DimensionMismatch {
                expected: BlockMatrix::herm_len(shape),
                got: BlockMatrix::herm_len(&g.shape()),
            });
        }
        let dev = g.hermitian_deviation();
        if dev > 1e-10 * g.frobenius().max(1.0) {
            return Err(Error::NotHermitian(dev));
        }
    }
    Ok(())
}

/// Smallest Jordan subalgebra containing `gens`, by pairwise product adjunction.
pub fn jordan_closure(gens: &[BlockMatrix], shape: &[usize]) -> Result<OperatorSubspace> {
    jordan_closure_with(gens, shape, &ClosureOptions::default()).map(|(s, _)| s)
}

pub fn jordan_closure_with(
    gens: &[BlockMatrix],
    shape: &[usize],
    opts: &ClosureOptions,
) -> Result<(OperatorSubspace, ClosureStats)> {
    check_generators(gens, shape)?;
    let mut sub = OperatorSubspace::new(shape, Field::Real, opts.tol);
    sub.extend(gens);
    let mut stats = ClosureStats { rounds: 0, products: 0 };
    match opts.strategy {
        ClosureStrategy::Pairwise => {
            let mut start = 0;
            while start < sub.dim() {
                if stats.rounds == opts.max_rounds {
                    return Err(Error::ClosureCap(opts.max_rounds));
                }
                stats.rounds += 1;
                let end = sub.dim();
                let mut batch = Vec::with_capacity(BATCH);
                for i in start..end {
                    for j in 0..=i {
                        batch.push(sub.basis()[i].jordan(&sub.basis()[j]));
                        if batch.len() == BATCH {
                            stats.products += batch.len();
                            sub.extend_with_floor(&batch, 1.0);
                            batch.clear();
                        }
                    }
                }
                stats.products += batch.len();
                sub.extend_with_floor(&batch, 1.0);
                start = end;
            }
        }
        ClosureStrategy::GenericElement { seed } => {
            let mut rng = seeded_rng(seed);
            let mut quiet = 0;
            while quiet < 2 {
                if stats.rounds == opts.max_rounds {
                    return Err(Error::ClosureCap(opts.max_rounds));
                }
                stats.rounds += 1;
                let a = random_element(&sub, &mut rng);
                let cands: Vec<BlockMatrix> = sub.basis().iter().map(|b| a.jordan(b)).collect();
                stats.products += cands.len();
                let mut added = 0;
                for chunk in cands.chunks(BATCH) {
                    added += sub.extend_with_floor(chunk, 1.0);
                }
                quiet = if added == 0 { quiet + 1 } else { 0 };
            }
        }
    }
    Ok((sub, stats))
}

/// Largest relative residual of a basis-pair product outside the span.
pub fn is_jordan_closed(sub: &OperatorSubspace) -> f64 {
    let b = sub.basis();
    let mut worst = 0.0f64;
    for i in 0..b.len() {
        for j in 0..=i {
            worst = worst.max(sub.relative_residual(&b[i].jordan(&b[j])));
        }
    }
    worst
}

/// Smallest *-subalgebra containing `gens`, as a complex subspace.
pub fn cstar_closure(gens: &[BlockMatrix], shape: &[usize]) -> Result<OperatorSubspace> {
    for g in gens {
        if g.shape() != shape {
            return Err(Error::DimensionMismatch {
                expected: BlockMatrix::herm_len(shape),
                got: BlockMatrix::herm_len(&g.shape()),
            });
        }
    }
    let mut sub = OperatorSubspace::new(shape, Field::Complex, SPAN_TOL);
    for g in gens {
        sub.push(g);
        sub.push(&g.adjoint());
    }
    let mut start = 0;
    let mut rounds = 0;
    while start < sub.dim() {
        if rounds == 64 {
            return Err(Error::ClosureCap(64));
        }
        rounds += 1;
        let end = sub.dim();
        for i in start..end {
            let x = sub.basis()[i].clone();
            let mut cands = vec![x.adjoint()];
            for y in &sub.basis()[..end] {
                cands.push(x.mul(y));
                cands.push(y.mul(&x));
            }
            // basis elements have unit norm
            sub.extend_with_floor(&cands, 1.0);
        }
        start = end;
    }
    Ok(sub)
}
