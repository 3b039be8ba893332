use super::*;
use crate::error::{Error, Result};
use crate::genfun::{binom, closed_form_m2, closed_form_m6, transfer_genfun, Monomial};
use crate::group::{gcd, is_prime, smallest_prime_factor, Element, GroupCtx};
use crate::matching::{acyclicity_report, matching_exists, verify_group_amp, Bounds};

/// Polynomial assembled from a class table: one monomial per class, with
/// the class size as coefficient.
pub(super) fn table_polynomial(table: &ClassTable) -> Result<GenPoly> {
    let mut p = GenPoly::zero();
    for row in &table.classes {
        let mono = Monomial::new(
            row.multiplicity.get(Element(0)),
            row.multiplicity.get(Element(1)),
            row.multiplicity.get(Element(3)),
        );
        p.add_term(mono, row.count)?;
    }
    Ok(p)
}

pub(super) fn case2_parts(w0: i64, w1: i64) -> Result<[u64; 3]> {
    Ok([
        binom(w0 + w1 - 2, w1)?,
        binom(w0 + w1 - 3, w1 - 1)?,
        binom(w0 + w1 - 3, w1 - 3)?,
    ])
}

/// Certificate that ℤ/nℤ (n > 5, gcd(n, 6) = 1) lacks the acyclic matching
/// property, witnessed by `A = ℤ/nℤ ∖ {0,1,3}`, `B = ℤ/nℤ ∖ {0,1,m}` with
/// `m = 2` for n ≡ 1 (mod 6) and `m = 6` for n ≡ 5 (mod 6).
///
/// The polynomial comes from the closed form and must agree with the
/// transfer matrix. For `n ≤ 14` the full class table is enumerated too and
/// must agree with both; a disagreement is a [`Error::Verification`] with a
/// dump of both sides. A coefficient equal to 1 yields an unverified
/// certificate with a note instead of an error.
pub fn certify_coprime6(n: u32, bounds: &Bounds) -> Result<Certificate> {
    if n <= 5 || gcd(u64::from(n), 6) != 1 {
        return Err(Error::Precondition(format!(
            "certify_coprime6 needs n > 5 coprime to 6, got {n}"
        )));
    }
    let (case, m) = if n % 6 == 1 { (1u8, 2u32) } else { (2, 6) };
    let closed = if m == 2 {
        closed_form_m2(n)?
    } else {
        closed_form_m6(n)?
    };
    let transfer = transfer_genfun(n, m)?;
    if closed != transfer {
        return Err(Error::Verification(format!(
            "closed form and transfer matrix disagree for n={n}, m={m}\n closed:   {closed}\n transfer: {transfer}"
        )));
    }
    let pair = SubsetPair::construction(n, m)?;

    let enumeration = if n <= COPRIME6_ENUMERATION_LIMIT && pair.len() <= bounds.enumeration {
        let table = acyclicity_report(&pair, bounds.enumeration)?.table();
        let from_table = table_polynomial(&table)?;
        if from_table != closed {
            return Err(Error::Verification(format!(
                "enumeration and generating function disagree for n={n}, m={m}\n enumerated: {from_table}\n closed:     {closed}"
            )));
        }
        Some(table)
    } else {
        None
    };

    let case1 = (case == 1).then(|| Case1Obstruction {
        rhs: n - 2,
        rhs_mod_2: (n - 2) % 2,
        rhs_mod_3: (n - 2) % 3,
        boundary_terms: closed
            .terms()
            .filter(|(t, _)| t.w0 == 0 || t.w1 == 0)
            .map(|(t, _)| [t.w0, t.w1, t.w3])
            .collect(),
    });
    let case2 = if case == 2 {
        Some(
            closed
                .terms()
                .map(|(t, _)| {
                    Ok(Case2Term {
                        w: [t.w0, t.w1, t.w3],
                        parts: case2_parts(i64::from(t.w0), i64::from(t.w1))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };

    let evidence = Coprime6Evidence {
        n,
        case,
        m,
        pair,
        min_coefficient: closed.min_coefficient().unwrap_or(0),
        total_matchings: closed.coefficient_sum()?,
        polynomial: closed,
        case1,
        case2,
        enumeration,
    };
    let mut cert = Certificate::unverified(
        Claim::Coprime6Failure { n },
        Verdict::Fails,
        Evidence::Coprime6(evidence),
    );
    cert.recheck(bounds)?;
    Ok(cert)
}

/// Certificate that composite ℤ/nℤ lacks the matching property: with `a` the
/// smallest prime divisor of `n` and `x` the least element outside `⟨a⟩`,
/// `A = ⟨a⟩` cannot be matched to `B = (⟨a⟩ ∪ {x}) ∖ {0}`.
pub fn nonprime_counterexample(n: u32) -> Result<Certificate> {
    let p = smallest_prime_factor(u64::from(n))
        .filter(|&p| p < u64::from(n))
        .ok_or_else(|| {
            Error::Precondition(format!(
                "nonprime_counterexample needs composite n, got {n}"
            ))
        })?;
    let g = GroupCtx::cyclic(n)?;
    let sub = g.subgroup_generated(Element(p as i64))?;
    let x = (0..i64::from(n))
        .map(Element)
        .find(|e| sub.binary_search(e).is_err())
        .expect("proper subgroup");
    let a: Vec<i64> = sub.iter().map(|e| e.0).collect();
    let b: Vec<i64> = a
        .iter()
        .copied()
        .chain(std::iter::once(x.0))
        .filter(|&v| v != 0)
        .collect();
    let pair = SubsetPair::new(g, a, b)?;
    let evidence = NonprimeEvidence {
        n,
        generator: p as i64,
        outside: x.0,
        matching_exists: matching_exists(&pair),
        pair,
    };
    let mut cert = Certificate::unverified(
        Claim::NonprimeFailure { n },
        Verdict::Fails,
        Evidence::Nonprime(evidence),
    );
    cert.recheck(&Bounds::default())?;
    Ok(cert)
}

/// Exhaustive verdict on the acyclic matching property of ℤ/nℤ.
pub fn certify_amp(n: u32, use_symmetry: bool, bounds: &Bounds) -> Result<Certificate> {
    let g = GroupCtx::cyclic(n)?;
    let v = verify_group_amp(&g, use_symmetry, bounds)?;
    let verdict = match (v.holds, n) {
        (true, 1) => Verdict::VacuousHolds,
        (true, _) => Verdict::Holds,
        (false, _) => Verdict::Fails,
    };
    let evidence = ExhaustiveEvidence {
        n,
        symmetry: v.symmetry,
        holds: v.holds,
        pairs_checked: v.pairs_checked,
        digest: v.digest,
        counterexample: v.counterexample,
        counterexample_classes: v.counterexample_classes,
    };
    let mut cert = Certificate::unverified(
        Claim::AmpHolds { n },
        verdict,
        Evidence::Exhaustive(evidence),
    );
    if is_prime(u64::from(n)) && n > 5 && v.holds {
        cert.notes
            .push("exhaustive search found no counterexample for a prime above 5".into());
    }
    cert.recheck(bounds)?;
    Ok(cert)
}
