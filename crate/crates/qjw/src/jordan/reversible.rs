use super::EmbeddedEjc;
use crate::linalg::{seeded_rng, BlockMatrix, OperatorSubspace};
use crate::{error::invalid, Result};
use rand::RngExt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReversibilityReport {
    pub reversible: bool,
    /// Zero-based letter indices of the first violating word.
    pub witness: Option<Vec<usize>>,
    /// The witness spelled as `t1 t2 ...` with one-based letters.
    pub witness_label: Option<String>,
    pub words_checked: usize,
    pub max_residual: f64,
    pub max_len: usize,
}

/// Words up to this length are enumerated completely.
const EXHAUSTIVE_LEN: usize = 4;
const SAMPLES_PER_LEN: usize = 1000;
const SEED: u64 = 0x7e7e_0001;
/// Default relative residual above which a word counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-8;

pub fn check_reversible(ejc: &EmbeddedEjc, max_len: usize) -> Result<ReversibilityReport> {
    check_reversible_with(ejc, max_len, SAMPLES_PER_LEN, SEED, VIOLATION_TOL)
}

pub fn label(word: &[usize]) -> String {
    word.iter().map(|i| format!("t{}", i + 1)).collect::<Vec<_>>().join(" ")
}

struct Checker<'a> {
    letters: Vec<&'a BlockMatrix>,
    closure: OperatorSubspace,
    checked: usize,
    worst: f64,
}

impl Checker<'_> {
    /// Relative distance of `w + reverse(w)` from the closure.
    fn residual(&mut self, word: &[usize]) -> f64 {
        let prod = |it: &mut dyn Iterator<Item = &usize>| {
            let mut acc: Option<BlockMatrix> = None;
            for &i in it {
                acc = Some(match acc {
                    None => self.letters[i].clone(),
                    Some(a) => a.mul(self.letters[i]),
                });
            }
            acc.expect("words are non-empty")
        };
        let fwd = prod(&mut word.iter());
        let rev = prod(&mut word.iter().rev());
        let sym = fwd.add(&rev).hermitian_part();
        let scale = fwd.frobenius().max(f64::MIN_POSITIVE);
        let r = self.closure.distance(&sym) / scale;
        self.checked += 1;
        self.worst = self.worst.max(r);
        r
    }
}

/// Checks `π(a₁)⋯π(a_m) + π(a_m)⋯π(a₁) ∈ closure` for words in the
/// non-unit generators: every word of length `2..=4` in lexicographic order,
/// then `samples` seeded random words for each longer length. A word violates
/// when its symmetrization sits farther than `tol` (relative) from the closure.
pub fn check_reversible_with(
    ejc: &EmbeddedEjc,
    max_len: usize,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ReversibilityReport> {
    if max_len < 2 {
        return Err(invalid("max_word_len must be at least 2"));
    }
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    let letters = ejc.letters();
    let n = letters.len();
    let mut ck = Checker { letters, closure: ejc.closure()?, checked: 0, worst: 0.0 };
    let done = |ck: &Checker, witness: Option<Vec<usize>>| ReversibilityReport {
        reversible: witness.is_none(),
        witness_label: witness.as_deref().map(label),
        witness,
        words_checked: ck.checked,
        max_residual: ck.worst,
        max_len,
    };
    if n == 0 {
        return Ok(done(&ck, None));
    }
    for m in 2..=max_len.min(EXHAUSTIVE_LEN) {
        let mut word = vec![0usize; m];
        loop {
            if ck.residual(&word) > tol {
                return Ok(done(&ck, Some(word)));
            }
            // next word in lexicographic order
            let mut p = m;
            while p > 0 && word[p - 1] == n - 1 {
                word[p - 1] = 0;
                p -= 1;
            }
            if p == 0 {
                break;
            }
            word[p - 1] += 1;
        }
    }
    let mut rng = seeded_rng(seed);
    for m in (EXHAUSTIVE_LEN + 1)..=max_len {
        for _ in 0..samples {
            let word: Vec<usize> = (0..m).map(|_| rng.random_range(0..n)).collect();
            if ck.residual(&word) > tol {
                return Ok(done(&ck, Some(word)));
            }
        }
    }
    Ok(done(&ck, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::standard_embedding;

    fn spin(k: usize, m: usize) -> ReversibilityReport {
        let e = standard_embedding(&format!("spin:{k}").parse().unwrap()).unwrap();
        check_reversible(&e, m).unwrap()
    }

    #[test]
    fn v4_fails_at_the_four_letter_word() {
        let r = spin(4, 4);
        assert!(!r.reversible);
        assert_eq!(r.witness_label.as_deref(), Some("t1 t2 t3 t4"));
    }

    #[test]
    fn v5_is_reversible() {
        assert!(spin(5, 5).reversible);
    }

    #[test]
    fn real_symmetric_is_reversible() {
        let e = standard_embedding(&"real:3".parse().unwrap()).unwrap();
        let r = check_reversible(&e, 4).unwrap();
        assert!(r.reversible, "{r:?}");
        assert!(r.max_residual < 1e-12);
    }

    #[test]
    fn short_words_rejected() {
        let e = standard_embedding(&"real:2".parse().unwrap()).unwrap();
        assert!(check_reversible(&e, 1).is_err());
    }
}
