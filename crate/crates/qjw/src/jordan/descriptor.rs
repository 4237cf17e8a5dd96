use crate::{error::invalid, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A simple Euclidean Jordan algebra, tagged by its type in the
/// Jordan-von Neumann-Wigner list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Simple {
    RealSym {
        n: usize,
    },
    ComplexHerm {
        n: usize,
    },
    QuatHerm {
        n: usize,
    },
    Spin {
        k: usize,
    },
    /// 3×3 octonionic Hermitian matrices. Tag only; every operation that needs
    /// an embedding rejects it.
    Exceptional,
}

impl Simple {
    pub fn real(n: usize) -> Self {
        Self::RealSym { n }
    }

    pub fn complex(n: usize) -> Self {
        Self::ComplexHerm { n }
    }

    pub fn quat(n: usize) -> Self {
        Self::QuatHerm { n }
    }

    pub fn spin(k: usize) -> Self {
        Self::Spin { k }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Self::RealSym { n } => n * (n + 1) / 2,
            Self::ComplexHerm { n } => n * n,
            Self::QuatHerm { n } => n * (2 * n).saturating_sub(1),
            Self::Spin { k } => k + 1,
            Self::Exceptional => 27,
        }
    }

    /// Size of a Jordan frame.
    pub fn rank(&self) -> usize {
        match *self {
            Self::RealSym { n } | Self::ComplexHerm { n } | Self::QuatHerm { n } => n,
            Self::Spin { .. } => 2,
            Self::Exceptional => 3,
        }
    }

    /// Picks one representative per isomorphism class: every rank-one algebra
    /// becomes `RealSym(1)`, and the spin factors `V2, V3, V5` become
    /// `RealSym(2), ComplexHerm(2), QuatHerm(2)`.
    pub fn canonical(&self) -> Self {
        match *self {
            Self::ComplexHerm { n: 1 } | Self::QuatHerm { n: 1 } => Self::RealSym { n: 1 },
            Self::Spin { k: 2 } => Self::RealSym { n: 2 },
            Self::Spin { k: 3 } => Self::ComplexHerm { n: 2 },
            Self::Spin { k: 5 } => Self::QuatHerm { n: 2 },
            s => s,
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, Self::Exceptional)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Self::RealSym { n } | Self::ComplexHerm { n } | Self::QuatHerm { n } if n == 0 => {
                Err(invalid("matrix algebra size must be positive"))
            }
            Self::Spin { k } if k < 2 => Err(invalid("spin factors need k >= 2")),
            _ => Ok(()),
        }
    }

    /// Simple algebra of the given rank and dimension. Rank-two algebras of
    /// dimension 3, 4, 6 get matrix tags.
    pub fn classify(rank: usize, dim: usize) -> Result<Self> {
        let fail = || Error::Identification(format!("no simple EJA has rank {rank} and dim {dim}"));
        match rank {
            0 => Err(fail()),
            1 if dim == 1 => Ok(Self::RealSym { n: 1 }),
            1 => Err(fail()),
            2 if dim >= 3 => Ok(Self::Spin { k: dim - 1 }.canonical()),
            2 => Err(fail()),
            r => {
                let pairs = r * (r - 1) / 2;
                if dim < r || !(dim - r).is_multiple_of(pairs) {
                    return Err(fail());
                }
                match (dim - r) / pairs {
                    1 => Ok(Self::RealSym { n: r }),
                    2 => Ok(Self::ComplexHerm { n: r }),
                    4 => Ok(Self::QuatHerm { n: r }),
                    8 if r == 3 => Ok(Self::Exceptional),
                    _ => Err(fail()),
                }
            }
        }
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RealSym { n } => write!(f, "RealSym({n})"),
            Self::ComplexHerm { n } => write!(f, "ComplexHerm({n})"),
            Self::QuatHerm { n } => write!(f, "QuatHerm({n})"),
            Self::Spin { k } => write!(f, "Spin({k})"),
            Self::Exceptional => write!(f, "Exceptional"),
        }
    }
}

impl FromStr for Simple {
    type Err = Error;

    /// `real:3`, `complex:2`, `quat:2`, `spin:5`, `exceptional`, or the
    /// display forms such as `QuatHerm(2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if lower == "exceptional" || lower == "octonion:3" || lower == "r" {
            return Ok(if lower == "r" { Self::RealSym { n: 1 } } else { Self::Exceptional });
        }
        let (kind, num) = if let Some((k, n)) = lower.split_once(':') {
            (k.to_string(), n.to_string())
        } else if let Some(open) = lower.find('(') {
            let close = lower.rfind(')').ok_or_else(|| invalid(format!("bad algebra tag {s:?}")))?;
            (lower[..open].to_string(), lower[open + 1..close].to_string())
        } else {
            return Err(invalid(format!("bad algebra tag {s:?}")));
        };
        let n: usize = num.trim().parse().map_err(|_| invalid(format!("bad size in {s:?}")))?;
        let out = match kind.trim() {
            "real" | "realsym" | "r" => Self::RealSym { n },
            "complex" | "complexherm" | "c" => Self::ComplexHerm { n },
            "quat" | "quatherm" | "h" => Self::QuatHerm { n },
            "spin" | "v" => Self::Spin { k: n },
            _ => return Err(invalid(format!("unknown algebra kind in {s:?}"))),
        };
        out.validate()?;
        Ok(out)
    }
}

/// Direct sum of simple EJAs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EjaDescriptor {
    pub summands: Vec<Simple>,
}

impl EjaDescriptor {
    pub fn new(summands: Vec<Simple>) -> Self {
        Self { summands }
    }

    pub fn simple(s: Simple) -> Self {
        Self { summands: vec![s] }
    }

    pub fn dim(&self) -> usize {
        self.summands.iter().map(Simple::dim).sum()
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(Simple::rank).sum()
    }

    pub fn has_exceptional(&self) -> bool {
        self.summands.iter().any(Simple::is_exceptional)
    }

    /// Canonical tags, sorted; two descriptors are isomorphic iff their
    /// canonical forms are equal.
    pub fn canonical(&self) -> Self {
        let mut s: Vec<Simple> = self.summands.iter().map(Simple::canonical).collect();
        s.sort();
        Self { summands: s }
    }

    pub fn isomorphic(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { summands: self.summands.iter().chain(&other.summands).copied().collect() }
    }
}

impl fmt::Display for EjaDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl FromStr for EjaDescriptor {
    type Err = Error;

    /// Summands separated by `+` or `⊕`.
    fn from_str(s: &str) -> Result<Self> {
        let summands = s.split(['+', '⊕']).map(str::parse).collect::<Result<Vec<Simple>>>()?;
        if summands.is_empty() {
            return Err(invalid("empty descriptor"));
        }
        Ok(Self { summands })
    }
}

/// Canonical tensor product of two simple matrix algebras under their
/// standard embeddings, from the classification table. `None` for spin
/// factors and for the exceptional algebra.
pub fn tensor_table(a: Simple, b: Simple) -> Option<Simple> {
    use Simple::*;
    let (a, b) = (a.canonical(), b.canonical());
    Some(match (a, b) {
        (RealSym { n: 1 }, x) | (x, RealSym { n: 1 }) if !matches!(x, Spin { .. } | Exceptional) => x,
        (RealSym { n: m }, RealSym { n }) => RealSym { n: n * m },
        (RealSym { n: m }, ComplexHerm { n }) | (ComplexHerm { n }, RealSym { n: m }) => ComplexHerm { n: n * m },
        (RealSym { n: m }, QuatHerm { n }) | (QuatHerm { n }, RealSym { n: m }) => QuatHerm { n: n * m },
        (ComplexHerm { n: m }, ComplexHerm { n }) => ComplexHerm { n: n * m },
        (ComplexHerm { n: m }, QuatHerm { n }) | (QuatHerm { n }, ComplexHerm { n: m }) => ComplexHerm { n: 2 * n * m },
        (QuatHerm { n: m }, QuatHerm { n }) => RealSym { n: 4 * n * m },
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_follow_the_classification() {
        assert_eq!(Simple::real(3).dim(), 6);
        assert_eq!(Simple::complex(3).dim(), 9);
        assert_eq!(Simple::quat(2).dim(), 6);
        assert_eq!(Simple::quat(3).dim(), 15);
        assert_eq!(Simple::spin(4).dim(), 5);
        assert_eq!(Simple::Exceptional.dim(), 27);
    }

    #[test]
    fn classify_inverts_rank_and_dim() {
        for s in [
            Simple::real(1),
            Simple::real(4),
            Simple::complex(3),
            Simple::quat(3),
            Simple::spin(4),
            Simple::spin(7),
            Simple::quat(2),
            Simple::complex(2),
            Simple::real(2),
        ] {
            assert_eq!(Simple::classify(s.rank(), s.dim()).unwrap(), s.canonical());
        }
        assert_eq!(Simple::classify(3, 27).unwrap(), Simple::Exceptional);
        assert!(Simple::classify(3, 10).is_err());
    }

    #[test]
    fn parse_and_display() {
        let d: EjaDescriptor = "real:3+complex:2".parse().unwrap();
        assert_eq!(d.to_string(), "RealSym(3) ⊕ ComplexHerm(2)");
        assert_eq!(d.to_string().parse::<EjaDescriptor>().unwrap(), d);
        assert_eq!("quat:2".parse::<Simple>().unwrap(), Simple::quat(2));
        assert!("spin:1".parse::<Simple>().is_err());
        assert!("frob:2".parse::<Simple>().is_err());
        let json = serde_json::to_string(&EjaDescriptor::simple(Simple::quat(2))).unwrap();
        assert_eq!(json, r#"{"summands":[{"kind":"QuatHerm","n":2}]}"#);
    }

    #[test]
    fn table_entries() {
        assert_eq!(tensor_table(Simple::quat(2), Simple::complex(2)), Some(Simple::complex(8)));
        assert_eq!(tensor_table(Simple::quat(2), Simple::quat(2)), Some(Simple::real(16)));
        assert_eq!(tensor_table(Simple::real(2), Simple::quat(2)), Some(Simple::quat(4)));
        assert_eq!(tensor_table(Simple::real(1), Simple::complex(3)), Some(Simple::complex(3)));
        assert_eq!(tensor_table(Simple::spin(4), Simple::real(2)), None);
    }
}
