//! Re-checkable certificates for matching-property verdicts.
//!
//! Every certificate carries enough data to be re-verified from the
//! matching and generating-function primitives without re-running the
//! search that produced it. `verified` is only set by [`Certificate::recheck`].

mod certify;
mod classify;
mod recheck;
mod sample;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::genfun::GenPoly;
use crate::matching::{ClassTable, SubsetPair};

pub use certify::{certify_amp, certify_coprime6, nonprime_counterexample};
pub use classify::{classify, ClassifyOptions};
pub use sample::{sample_integer_pairs, SampleSpec};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

/// Above this order, coprime-to-6 certificates rely on the polynomial
/// evidence alone.
pub const COPRIME6_ENUMERATION_LIMIT: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Cyclic { n: u32 },
    Integers,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic { n } => write!(f, "Z/{n}Z"),
            GroupDescriptor::Integers => f.write_str("Z"),
        }
    }
}

impl std::str::FromStr for GroupDescriptor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Z" | "z" | "integers" => Ok(GroupDescriptor::Integers),
            _ => match s.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(GroupDescriptor::Cyclic { n }),
                _ => Err(format!("expected a group order n >= 1 or \"Z\", got {s:?}")),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// ℤ/nℤ with gcd(n, 6) = 1, n > 5, lacks the acyclic matching property.
    Coprime6Failure {
        n: u32,
    },
    /// Composite ℤ/nℤ lacks even the matching property.
    NonprimeFailure {
        n: u32,
    },
    /// Exhaustive verdict on the acyclic matching property of ℤ/nℤ.
    AmpHolds {
        n: u32,
    },
    Classification {
        group: GroupDescriptor,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// The trivial group: no valid pair exists.
    VacuousHolds,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::VacuousHolds => "holds (vacuous)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Coprime6(Coprime6Evidence),
    Nonprime(NonprimeEvidence),
    Exhaustive(ExhaustiveEvidence),
    Sampled(SampledEvidence),
    Vacuous,
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Coprime6(_) => "coprime6",
            Evidence::Nonprime(_) => "nonprime",
            Evidence::Exhaustive(_) => "exhaustive",
            Evidence::Sampled(_) => "sampled",
            Evidence::Vacuous => "vacuous",
        }
    }
}

/// Generating-function evidence that the construction pair of ℤ/nℤ has no
/// singleton multiplicity class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coprime6Evidence {
    pub n: u32,
    /// 1 when n ≡ 1 (mod 6), 2 when n ≡ 5 (mod 6).
    pub case: u8,
    pub m: u32,
    pub pair: SubsetPair,
    pub polynomial: GenPoly,
    pub min_coefficient: u64,
    /// Sum of coefficients, i.e. the number of matchings of `pair`.
    pub total_matchings: u64,
    pub case1: Option<Case1Obstruction>,
    pub case2: Option<Vec<Case2Term>>,
    /// Full class table when `n` is small enough to enumerate.
    pub enumeration: Option<ClassTable>,
}

/// Every term of the m = 2 polynomial satisfies `3·w0 + 2·w1 = n − 2`. A
/// coefficient `C(w0 + w1, w1)` equals 1 only if `w0 = 0` or `w1 = 0`,
/// which would need `n − 2` even or divisible by 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Obstruction {
    pub rhs: u32,
    pub rhs_mod_2: u32,
    pub rhs_mod_3: u32,
    /// Support terms with `w0 = 0` or `w1 = 0`; must be empty.
    pub boundary_terms: Vec<[u32; 3]>,
}

/// One term of the m = 6 polynomial with its three binomial summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Term {
    pub w: [u32; 3],
    pub parts: [u64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonprimeEvidence {
    pub n: u32,
    /// Generator of the proper subgroup (smallest prime divisor of n).
    pub generator: i64,
    /// Smallest element outside the subgroup.
    pub outside: i64,
    pub pair: SubsetPair,
    pub matching_exists: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveEvidence {
    pub n: u32,
    pub symmetry: bool,
    pub holds: bool,
    pub pairs_checked: u64,
    pub digest: String,
    pub counterexample: Option<SubsetPair>,
    pub counterexample_classes: Option<ClassTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledEvidence {
    pub seed: u64,
    pub samples: u32,
    pub max_size: usize,
    pub range: [i64; 2],
    pub acyclic_found: u32,
    pub failures: Vec<SubsetPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub claim: Claim,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    fn unverified(claim: Claim, verdict: Verdict, evidence: Evidence) -> Self {
        Certificate {
            schema_version: CERTIFICATE_SCHEMA_VERSION,
            claim,
            verdict,
            evidence,
            verified: false,
            notes: Vec::new(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let subject = match self.claim {
            Claim::Coprime6Failure { n } | Claim::NonprimeFailure { n } | Claim::AmpHolds { n } => {
                format!("Z/{n}Z")
            }
            Claim::Classification { group } => group.to_string(),
        };
        let how = match (&self.evidence, self.verdict) {
            (Evidence::Exhaustive(_), Verdict::Holds) => " (exhaustive)",
            (Evidence::Sampled(_), _) => " (torsion-free, sampled)",
            (Evidence::Coprime6(_), _) => " (coprime-to-6 construction)",
            (Evidence::Nonprime(_), _) => " (no matching for subgroup pair)",
            (Evidence::Exhaustive(_), _) => " (exhaustive counterexample)",
            (Evidence::Vacuous, _) => "",
        };
        let status = if self.verified {
            "verified"
        } else {
            "NOT VERIFIED"
        };
        format!("{subject}: {}{how} [{status}]", self.verdict)
    }
}
