//! Exhaustive sweeps over every valid subset pair of a small cyclic group.

use std::fmt::Write as _;

use itertools::Itertools;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::{acyclicity_report, enumerate::ClassTable, Bounds, SubsetPair};
use crate::error::{Error, Result};
use crate::group::{Element, GroupCtx};

/// Every valid pair of ℤ/nℤ with `|A| = k` for `k` in `sizes`, ordered by
/// `(|A|, lex A, lex B)`.
pub fn all_pairs(g: &GroupCtx, sizes: impl IntoIterator<Item = usize>) -> Result<Vec<SubsetPair>> {
    let n = i64::from(
        g.modulus()
            .ok_or_else(|| Error::Precondition("pair sweep requires a cyclic group".into()))?,
    );
    let mut out = Vec::new();
    for k in sizes {
        if k == 0 || k as i64 >= n {
            continue;
        }
        for a in (0..n).combinations(k) {
            for b in (1..n).combinations(k) {
                out.push(SubsetPair::new(*g, a.clone(), b)?);
            }
        }
    }
    Ok(out)
}

/// Whether `(A, B)` is the lexicographically least member of its orbit under
/// simultaneous scaling by units.
pub fn is_canonical_under_units(pair: &SubsetPair, units: &[Element]) -> Result<bool> {
    for &u in units {
        let img = pair.scaled(u.0)?;
        if (img.a(), img.b()) < (pair.a(), pair.b()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct AmpVerification {
    pub modulus: u32,
    pub symmetry: bool,
    pub holds: bool,
    /// Pairs actually examined, up to and including the counterexample.
    pub pairs_checked: u64,
    pub counterexample: Option<SubsetPair>,
    pub counterexample_classes: Option<ClassTable>,
    /// SHA-256 over one line per examined pair:
    /// `A|B|total matchings|classes|singleton classes`.
    pub digest: String,
}

fn check_bound(g: &GroupCtx, bounds: &Bounds) -> Result<u32> {
    let n = g
        .modulus()
        .ok_or_else(|| Error::Precondition("exhaustive sweep requires a cyclic group".into()))?;
    if n > bounds.exhaustive_group {
        return Err(Error::Resource {
            what: "group order for exhaustive sweep",
            actual: n as usize,
            limit: bounds.exhaustive_group as usize,
        });
    }
    Ok(n)
}

struct PairOutcome {
    total: u64,
    classes: usize,
    singletons: usize,
}

fn sweep(
    g: &GroupCtx,
    sizes: Vec<usize>,
    symmetry: bool,
    bounds: &Bounds,
) -> Result<AmpVerification> {
    let n = check_bound(g, bounds)?;
    let units = g.units()?;
    let mut hasher = Sha256::new();
    let mut checked = 0u64;

    for k in sizes {
        let pairs = all_pairs(g, [k])?;
        // ordered parallel map; the reduction below is sequential so the
        // first counterexample and digest match a sequential run
        let outcomes: Vec<Option<Result<PairOutcome>>> = pairs
            .par_iter()
            .map(|p| {
                if symmetry {
                    match is_canonical_under_units(p, &units) {
                        Ok(false) => return None,
                        Err(e) => return Some(Err(e)),
                        Ok(true) => {}
                    }
                }
                Some(
                    acyclicity_report(p, bounds.enumeration).map(|r| PairOutcome {
                        total: r.total_matchings,
                        classes: r.classes.len(),
                        singletons: r.classes.iter().filter(|c| c.count == 1).count(),
                    }),
                )
            })
            .collect();
        for (pair, outcome) in pairs.iter().zip(outcomes) {
            let Some(outcome) = outcome else { continue };
            let o = outcome?;
            checked += 1;
            let mut line = String::new();
            let _ = writeln!(
                line,
                "{}|{}|{}|{}|{}",
                pair.a().iter().join(","),
                pair.b().iter().join(","),
                o.total,
                o.classes,
                o.singletons
            );
            hasher.update(line.as_bytes());
            if o.singletons == 0 {
                let table = acyclicity_report(pair, bounds.enumeration)?.table();
                return Ok(AmpVerification {
                    modulus: n,
                    symmetry,
                    holds: false,
                    pairs_checked: checked,
                    counterexample: Some(pair.clone()),
                    counterexample_classes: Some(table),
                    digest: hex(&hasher.finalize()),
                });
            }
        }
    }
    Ok(AmpVerification {
        modulus: n,
        symmetry,
        holds: true,
        pairs_checked: checked,
        counterexample: None,
        counterexample_classes: None,
        digest: hex(&hasher.finalize()),
    })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Checks every valid pair of ℤ/nℤ for an acyclic matching.
///
/// With `use_symmetry`, only pairs that are least in their unit-scaling
/// orbit are examined. The first failing pair in `(|A|, lex A, lex B)`
/// order is always orbit-least, so the counterexample does not depend on
/// the flag.
pub fn verify_group_amp(
    g: &GroupCtx,
    use_symmetry: bool,
    bounds: &Bounds,
) -> Result<AmpVerification> {
    let n = check_bound(g, bounds)? as usize;
    sweep(g, (1..n).collect(), use_symmetry, bounds)
}

/// First pair with `|A| ∈ {n−1, n−2}` lacking an acyclic matching, if any.
pub fn large_set_failure(g: &GroupCtx, bounds: &Bounds) -> Result<AmpVerification> {
    let n = check_bound(g, bounds)?;
    if n < 3 {
        return Err(Error::Precondition(format!(
            "large-set check needs n >= 3, got {n}"
        )));
    }
    let n = n as usize;
    sweep(g, vec![n - 2, n - 1], true, bounds)
}

/// Whether every pair with `|A| ∈ {n−1, n−2}` has an acyclic matching.
pub fn large_set_check(g: &GroupCtx, bounds: &Bounds) -> Result<bool> {
    large_set_failure(g, bounds).map(|v| v.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> GroupCtx {
        GroupCtx::cyclic(n).unwrap()
    }

    #[test]
    fn pair_counts() {
        // Σ_k C(n,k)·C(n−1,k) over 1 ≤ k < n
        assert_eq!(all_pairs(&z(3), 1..3).unwrap().len(), 3 * 2 + 3);
        assert!(all_pairs(&z(1), 0..1).unwrap().is_empty());
        assert!(all_pairs(&GroupCtx::integers(), [1]).is_err());
    }

    #[test]
    fn pair_order_is_size_then_lex() {
        let ps = all_pairs(&z(4), 1..4).unwrap();
        let keys: Vec<_> = ps
            .iter()
            .map(|p| (p.len(), p.a().to_vec(), p.b().to_vec()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn small_primes_hold() {
        for n in [2, 3, 5] {
            for sym in [false, true] {
                let v = verify_group_amp(&z(n), sym, &Bounds::default()).unwrap();
                assert!(v.holds, "n={n} sym={sym}");
                assert!(v.counterexample.is_none());
            }
        }
    }

    #[test]
    fn trivial_group_holds_vacuously() {
        let v = verify_group_amp(&z(1), true, &Bounds::default()).unwrap();
        assert!(v.holds);
        assert_eq!(v.pairs_checked, 0);
    }

    #[test]
    fn z4_fails_for_lack_of_matching() {
        let v = verify_group_amp(&z(4), false, &Bounds::default()).unwrap();
        assert!(!v.holds);
        let table = v.counterexample_classes.unwrap();
        assert_eq!(table.total_matchings, 0);
    }

    #[test]
    fn bound_enforced() {
        let b = Bounds {
            enumeration: 20,
            exhaustive_group: 6,
        };
        assert!(matches!(
            verify_group_amp(&z(7), true, &b),
            Err(Error::Resource { .. })
        ));
        assert!(large_set_check(&z(2), &Bounds::default()).is_err());
    }

    #[test]
    fn symmetry_does_not_change_the_counterexample() {
        for n in 4..=7 {
            let full = verify_group_amp(&z(n), false, &Bounds::default()).unwrap();
            let red = verify_group_amp(&z(n), true, &Bounds::default()).unwrap();
            assert_eq!(full.holds, red.holds);
            assert_eq!(full.counterexample, red.counterexample);
            assert!(red.pairs_checked <= full.pairs_checked);
        }
    }
}
