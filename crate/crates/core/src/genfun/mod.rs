//! Generating functions for matchings of `A = ℤ/nℤ ∖ {0, 1, 3}` onto
//! `B = ℤ/nℤ ∖ {0, 1, m}`.
//!
//! Every sum `a + f(a)` of such a matching lies outside `A`, i.e. in
//! `{0, 1, 3}`, so a matching's multiplicity function is the monomial
//! `c0^w0 · c1^w1 · c3^w3` where `wk` counts the sums equal to `k`. The
//! generating function is the sum of these monomials over all matchings.

mod closed;
mod poly;
mod transfer;

pub use closed::{
    binom, binomial_family, closed_form_m2, closed_form_m6, recurrence_check,
    satisfies_constraints, support,
};
pub use poly::{GenPoly, Monomial};
pub use transfer::{closing_weights, transfer_genfun, TransferMatrix};

use crate::error::{Error, Result};
use crate::group::Element;
use crate::matching::{enumerate_matchings, multiplicity, SubsetPair};

/// Aggregates the monomials of every enumerated matching. Oracle for
/// [`transfer_genfun`].
///
/// Requires `m > 1`, `n > max(m, 3)` and `n − 3 ≤ enumeration_bound`.
pub fn brute_genfun(n: u32, m: u32, enumeration_bound: usize) -> Result<GenPoly> {
    let pair = SubsetPair::construction(n, m)?;
    let mut p = GenPoly::zero();
    for matching in enumerate_matchings(&pair, enumeration_bound)? {
        let mv = multiplicity(&matching);
        let mono = Monomial::new(mv.get(Element(0)), mv.get(Element(1)), mv.get(Element(3)));
        if u64::from(mono.w0 + mono.w1 + mono.w3) != mv.total() {
            return Err(Error::Verification(format!(
                "matching {matching} has a sum outside {{0, 1, 3}}: {mv}"
            )));
        }
        p.add_term(mono, 1)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::acyclicity_report;

    #[test]
    fn brute_small_cases() {
        assert_eq!(brute_genfun(6, 2, 20).unwrap(), GenPoly::mono(1, 0, 2, 1));
        assert_eq!(brute_genfun(7, 2, 20).unwrap(), GenPoly::mono(2, 1, 1, 2));
        assert_eq!(
            brute_genfun(10, 6, 20).unwrap(),
            transfer_genfun(10, 6).unwrap()
        );
    }

    #[test]
    fn brute_respects_bound() {
        assert!(matches!(
            brute_genfun(14, 2, 10),
            Err(Error::Resource { .. })
        ));
        assert!(brute_genfun(3, 2, 20).is_err());
    }

    #[test]
    fn coefficient_sum_is_matching_count() {
        for (n, m) in [(8, 2), (11, 2), (11, 6), (12, 6)] {
            let p = brute_genfun(n, m, 20).unwrap();
            let pair = SubsetPair::construction(n, m).unwrap();
            let r = acyclicity_report(&pair, 20).unwrap();
            assert_eq!(p.coefficient_sum().unwrap(), r.total_matchings);
            assert_eq!(p.len(), r.classes.len());
        }
    }

    #[test]
    fn transfer_agrees_with_brute_force_across_m() {
        for m in 2..=7 {
            for n in m + 4..=m + 9 {
                assert_eq!(
                    transfer_genfun(n, m).unwrap(),
                    brute_genfun(n, m, 20).unwrap(),
                    "n={n} m={m}"
                );
            }
        }
    }
}
