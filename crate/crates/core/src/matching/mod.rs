//! Matchings between equal-size subsets of an abelian group.
//!
//! A matching from `A` to `B` is a bijection `f: A → B` with `a + f(a) ∉ A`
//! for every `a`. Its multiplicity function counts how often each group
//! element occurs as a sum `a + f(a)`; a matching is acyclic when no other
//! matching shares its multiplicity function.

mod enumerate;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupCtx};

pub use enumerate::{
    acyclicity_report, enumerate_matchings, AcyclicityReport, ClassRow, ClassTable, Matchings,
    MultiplicityClass,
};
pub use search::{
    all_pairs, is_canonical_under_units, large_set_check, large_set_failure, verify_group_amp,
    AmpVerification,
};

/// Search limits shared by the enumeration and exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest `|A|` for which all matchings are enumerated.
    pub enumeration: usize,
    /// Largest group order for exhaustive pair sweeps.
    pub exhaustive_group: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: 20,
            exhaustive_group: 8,
        }
    }
}

/// O(1) membership for cyclic groups of order ≤ 128, binary search otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Membership {
    Mask(u128),
    Sorted,
}

/// An ordered pair `(A, B)` of equal-size finite subsets with `0 ∉ B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairRecord", into = "PairRecord")]
pub struct SubsetPair {
    group: GroupCtx,
    a: Vec<Element>,
    b: Vec<Element>,
    a_membership: Membership,
}

/// Wire form of a [`SubsetPair`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairRecord {
    pub group: GroupCtx,
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    #[serde(rename = "B")]
    pub b: Vec<i64>,
}

impl TryFrom<PairRecord> for SubsetPair {
    type Error = Error;

    fn try_from(r: PairRecord) -> Result<Self> {
        SubsetPair::new(r.group, r.a, r.b)
    }
}

impl From<SubsetPair> for PairRecord {
    fn from(p: SubsetPair) -> Self {
        PairRecord {
            group: p.group,
            a: p.a.iter().map(|e| e.0).collect(),
            b: p.b.iter().map(|e| e.0).collect(),
        }
    }
}

impl SubsetPair {
    /// Canonicalizes and sorts both sides, then checks `|A| = |B| ≥ 1`,
    /// `0 ∉ B`, and that neither side repeats an element.
    pub fn new(
        group: GroupCtx,
        a: impl IntoIterator<Item = i64>,
        b: impl IntoIterator<Item = i64>,
    ) -> Result<Self> {
        let a = canonical_set(&group, a, "A")?;
        let b = canonical_set(&group, b, "B")?;
        if a.is_empty() {
            return Err(Error::InvalidPair("A must be nonempty".into()));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidPair(format!(
                "|A| = {} differs from |B| = {}",
                a.len(),
                b.len()
            )));
        }
        if b.binary_search(&Element(0)).is_ok() {
            return Err(Error::InvalidPair("0 lies in B".into()));
        }
        if let GroupCtx::Integers { bound } = group {
            let peak = |v: &[Element]| v.iter().map(|e| e.0.abs()).max().unwrap_or(0);
            if peak(&a).saturating_add(peak(&b)) > bound {
                return Err(Error::Bounds(format!(
                    "sums a + b may leave the integer window ±{bound}"
                )));
            }
        }
        let a_membership = match group {
            GroupCtx::Cyclic { modulus } if modulus <= 128 => {
                Membership::Mask(a.iter().fold(0u128, |m, e| m | 1 << e.0))
            }
            _ => Membership::Sorted,
        };
        Ok(SubsetPair {
            group,
            a,
            b,
            a_membership,
        })
    }

    /// The pair `A = G ∖ {0, 1, 3}`, `B = G ∖ {0, 1, m}` in ℤ/nℤ used by the
    /// transfer-matrix construction.
    pub fn construction(n: u32, m: u32) -> Result<Self> {
        if m < 2 || n <= m.max(3) {
            return Err(Error::Precondition(format!(
                "construction needs m > 1 and n > max(m, 3); got n={n}, m={m}"
            )));
        }
        let n64 = i64::from(n);
        let m64 = i64::from(m);
        SubsetPair::new(
            GroupCtx::cyclic(n)?,
            (0..n64).filter(|x| ![0, 1, 3].contains(x)),
            (0..n64).filter(|&x| x != 0 && x != 1 && x != m64),
        )
    }

    pub fn group(&self) -> &GroupCtx {
        &self.group
    }

    pub fn a(&self) -> &[Element] {
        &self.a
    }

    pub fn b(&self) -> &[Element] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn in_a(&self, x: Element) -> bool {
        match self.a_membership {
            Membership::Mask(m) => (0..128).contains(&x.0) && m >> x.0 & 1 == 1,
            Membership::Sorted => self.a.binary_search(&x).is_ok(),
        }
    }

    /// Whether `a` may be sent to `b`, i.e. `a + b ∉ A`.
    pub fn compatible(&self, a: Element, b: Element) -> bool {
        !self.in_a(self.sum(a, b))
    }

    /// `a + b`; construction guarantees every such sum is representable.
    pub(crate) fn sum(&self, a: Element, b: Element) -> Element {
        self.group
            .add(a, b)
            .expect("pair sums fit the group window")
    }

    /// Image of the pair under `x ↦ u·x`.
    pub fn scaled(&self, u: i64) -> Result<SubsetPair> {
        let map = |v: &[Element]| -> Result<Vec<i64>> {
            v.iter()
                .map(|&x| self.group.scale(u, x).map(|e| e.0))
                .collect()
        };
        SubsetPair::new(self.group, map(&self.a)?, map(&self.b)?)
    }

    pub fn record(&self) -> PairRecord {
        self.clone().into()
    }
}

impl fmt::Display for SubsetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: A={{{}}} B={{{}}}",
            self.group,
            join(&self.a),
            join(&self.b)
        )
    }
}

fn join(v: &[Element]) -> String {
    v.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn canonical_set(
    group: &GroupCtx,
    xs: impl IntoIterator<Item = i64>,
    side: &str,
) -> Result<Vec<Element>> {
    let mut out = xs
        .into_iter()
        .map(|v| group.canonicalize(v))
        .collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    let before = out.len();
    out.dedup();
    if out.len() != before {
        return Err(Error::InvalidPair(format!("{side} repeats an element")));
    }
    Ok(out)
}

/// A bijection `A → B` with `a + f(a) ∉ A`. Entry `i` of the assignment is
/// the image of the `i`-th smallest element of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pair: Arc<SubsetPair>,
    assignment: Vec<Element>,
}

impl Matching {
    /// Checked constructor.
    pub fn new(pair: Arc<SubsetPair>, assignment: Vec<Element>) -> Result<Self> {
        if !is_matching(&pair, &assignment)? {
            return Err(Error::InvalidPair(format!(
                "[{}] is not a matching for {pair}",
                join(&assignment)
            )));
        }
        Ok(Matching { pair, assignment })
    }

    pub(crate) fn new_unchecked(pair: Arc<SubsetPair>, assignment: Vec<Element>) -> Self {
        debug_assert!(is_matching(&pair, &assignment).unwrap_or(false));
        Matching { pair, assignment }
    }

    pub fn pair(&self) -> &SubsetPair {
        &self.pair
    }

    pub fn assignment(&self) -> &[Element] {
        &self.assignment
    }

    /// The sums `a + f(a)` in `A` order.
    pub fn sums(&self) -> impl Iterator<Item = Element> + '_ {
        self.pair
            .a
            .iter()
            .zip(&self.assignment)
            .map(|(&a, &b)| self.pair.sum(a, b))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pair
            .a
            .iter()
            .zip(&self.assignment)
            .map(|(a, b)| format!("{a}->{b}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Whether `assignment` is a bijection onto `B` satisfying sum-avoidance.
///
/// Fails only when the length differs from `|A|`.
pub fn is_matching(pair: &SubsetPair, assignment: &[Element]) -> Result<bool> {
    if assignment.len() != pair.len() {
        return Err(Error::Precondition(format!(
            "assignment has length {}, expected {}",
            assignment.len(),
            pair.len()
        )));
    }
    let mut image = assignment.to_vec();
    image.sort_unstable();
    if image != pair.b {
        return Ok(false);
    }
    Ok(pair
        .a
        .iter()
        .zip(assignment)
        .all(|(&a, &b)| pair.compatible(a, b)))
}

/// The multiplicity function restricted to its support, sorted by element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityVector {
    entries: Vec<(Element, u32)>,
}

impl MultiplicityVector {
    pub fn entries(&self) -> &[(Element, u32)] {
        &self.entries
    }

    pub fn get(&self, x: Element) -> u32 {
        self.entries
            .binary_search_by_key(&x, |&(e, _)| e)
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| u64::from(c)).sum()
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn multiplicity(m: &Matching) -> MultiplicityVector {
    let mut counts: BTreeMap<Element, u32> = BTreeMap::new();
    for s in m.sums() {
        *counts.entry(s).or_default() += 1;
    }
    MultiplicityVector {
        entries: counts.into_iter().collect(),
    }
}

/// Decides whether a perfect matching exists in the compatibility graph
/// (`a ~ b` iff `a + b ∉ A`) by augmenting paths.
pub fn matching_exists(pair: &SubsetPair) -> bool {
    let k = pair.len();
    let adj: Vec<Vec<usize>> = pair
        .a
        .iter()
        .map(|&a| (0..k).filter(|&j| pair.compatible(a, pair.b[j])).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; k];
    for i in 0..k {
        let mut seen = vec![false; k];
        if !augment(i, &adj, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &j in &adj[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|o| augment(o, adj, owner, seen)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}
