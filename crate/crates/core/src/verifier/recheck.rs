use super::certify::{case2_parts, table_polynomial};
use super::sample::{run_samples, SampleSpec};
use super::*;
use crate::error::Result;
use crate::genfun::{closed_form_m2, closed_form_m6, satisfies_constraints, transfer_genfun};
use crate::group::{gcd, GroupCtx};
use crate::matching::{acyclicity_report, matching_exists, verify_group_amp, Bounds};

/// Collects failed checks instead of stopping at the first one, so a
/// certificate that does not verify explains every reason.
#[derive(Default)]
struct Findings(Vec<String>);

impl Findings {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

impl Certificate {
    /// Re-derives the evidence from the primitives and sets `verified`.
    ///
    /// Failed checks are appended to `notes`; only resource and arithmetic
    /// errors are returned as `Err`.
    pub fn recheck(&mut self, bounds: &Bounds) -> Result<()> {
        let mut f = Findings::default();
        f.require(self.schema_version == CERTIFICATE_SCHEMA_VERSION, || {
            format!("unsupported schema version {}", self.schema_version)
        });
        check_claim(self, &mut f);
        match &self.evidence {
            Evidence::Coprime6(e) => check_coprime6(e, bounds, &mut f)?,
            Evidence::Nonprime(e) => check_nonprime(e, &mut f)?,
            Evidence::Exhaustive(e) => check_exhaustive(e, self.verdict, bounds, &mut f)?,
            Evidence::Sampled(e) => check_sampled(e, bounds, &mut f)?,
            Evidence::Vacuous => {}
        }
        self.verified = f.0.is_empty();
        self.notes
            .extend(f.0.into_iter().map(|s| format!("check failed: {s}")));
        Ok(())
    }
}

fn evidence_order(e: &Evidence) -> Option<u32> {
    match e {
        Evidence::Coprime6(c) => Some(c.n),
        Evidence::Nonprime(c) => Some(c.n),
        Evidence::Exhaustive(c) => Some(c.n),
        Evidence::Sampled(_) => None,
        Evidence::Vacuous => Some(1),
    }
}

fn check_claim(c: &Certificate, f: &mut Findings) {
    let order = evidence_order(&c.evidence);
    let fails = c.verdict == Verdict::Fails;
    match (c.claim, &c.evidence) {
        (Claim::Coprime6Failure { n }, Evidence::Coprime6(_))
        | (Claim::NonprimeFailure { n }, Evidence::Nonprime(_)) => {
            f.require(order == Some(n), || {
                "claim and evidence disagree on n".into()
            });
            f.require(fails, || "failure claim must carry a fails verdict".into());
        }
        (Claim::AmpHolds { n }, Evidence::Exhaustive(_)) => {
            f.require(order == Some(n), || {
                "claim and evidence disagree on n".into()
            });
        }
        (Claim::Classification { group }, ev) => match (group, ev) {
            (GroupDescriptor::Integers, Evidence::Sampled(_)) => {
                f.require(c.verdict == Verdict::Holds, || {
                    "torsion-free classification must hold".into()
                });
            }
            (GroupDescriptor::Cyclic { n: 1 }, Evidence::Vacuous) => {
                f.require(c.verdict == Verdict::VacuousHolds, || {
                    "trivial group verdict must be vacuous".into()
                });
            }
            (GroupDescriptor::Cyclic { n }, Evidence::Coprime6(_) | Evidence::Nonprime(_)) => {
                f.require(order == Some(n), || {
                    "claim and evidence disagree on n".into()
                });
                f.require(fails, || {
                    "failure evidence must carry a fails verdict".into()
                });
            }
            (GroupDescriptor::Cyclic { n }, Evidence::Exhaustive(_)) => {
                f.require(order == Some(n), || {
                    "claim and evidence disagree on n".into()
                });
            }
            _ => {
                f.0.push(format!("evidence {} does not fit {group}", ev.kind()))
            }
        },
        (claim, ev) => {
            f.0.push(format!("evidence {} does not fit {claim:?}", ev.kind()))
        }
    }
}

fn check_coprime6(e: &Coprime6Evidence, bounds: &Bounds, f: &mut Findings) -> Result<()> {
    let n = e.n;
    f.require(n > 5 && gcd(u64::from(n), 6) == 1, || {
        format!("n={n} is not > 5 and coprime to 6")
    });
    if !f.0.is_empty() {
        return Ok(());
    }
    let (case, m) = if n % 6 == 1 { (1, 2) } else { (2, 6) };
    f.require(e.case == case && e.m == m, || {
        format!(
            "n={n} needs case {case} with m={m}, found case {} m={}",
            e.case, e.m
        )
    });
    if e.m != m {
        return Ok(());
    }
    f.require(e.pair == SubsetPair::construction(n, m)?, || {
        "witness pair is not the construction pair".into()
    });
    let transfer = transfer_genfun(n, m)?;
    let closed = if m == 2 {
        closed_form_m2(n)?
    } else {
        closed_form_m6(n)?
    };
    f.require(e.polynomial == transfer, || {
        format!("polynomial differs from transfer matrix: {transfer}")
    });
    f.require(e.polynomial == closed, || {
        format!("polynomial differs from closed form: {closed}")
    });
    f.require(satisfies_constraints(&e.polynomial, n, m), || {
        "polynomial violates the exponent constraints".into()
    });
    f.require(!e.polynomial.is_zero(), || "polynomial is zero".into());
    let min = e.polynomial.min_coefficient().unwrap_or(0);
    f.require(e.min_coefficient == min, || {
        format!(
            "recorded min coefficient {} but found {min}",
            e.min_coefficient
        )
    });
    f.require(min >= 2, || {
        format!("coefficient {min} < 2: some multiplicity class is a singleton")
    });
    f.require(e.total_matchings == e.polynomial.coefficient_sum()?, || {
        "total_matchings is not the coefficient sum".into()
    });

    match (case, &e.case1, &e.case2) {
        (1, Some(ob), None) => {
            f.require(ob.rhs == n - 2, || "obstruction rhs is not n − 2".into());
            f.require(ob.rhs % 2 == 1 && ob.rhs_mod_2 == 1, || {
                "n − 2 is even, so w0 = 0 is not excluded".into()
            });
            f.require(ob.rhs % 3 != 0 && ob.rhs_mod_3 == ob.rhs % 3, || {
                "n − 2 is divisible by 3, so w1 = 0 is not excluded".into()
            });
            f.require(ob.boundary_terms.is_empty(), || {
                format!("support has boundary terms {:?}", ob.boundary_terms)
            });
            for (t, _) in e.polynomial.terms() {
                f.require(
                    3 * u64::from(t.w0) + 2 * u64::from(t.w1) == u64::from(ob.rhs),
                    || format!("term {t:?} off the line 3·w0 + 2·w1 = {}", ob.rhs),
                );
                f.require(t.w0 != 0 && t.w1 != 0, || format!("boundary term {t:?}"));
            }
        }
        (2, None, Some(terms)) => {
            let poly_terms: Vec<_> = e.polynomial.terms().collect();
            f.require(terms.len() == poly_terms.len(), || {
                "case 2 term list does not cover the polynomial".into()
            });
            for (row, (t, c)) in terms.iter().zip(poly_terms) {
                f.require(row.w == [t.w0, t.w1, t.w3], || {
                    format!("case 2 term {:?} out of order", row.w)
                });
                let parts = case2_parts(i64::from(t.w0), i64::from(t.w1))?;
                f.require(row.parts == parts, || {
                    format!(
                        "case 2 term {:?}: recorded parts {:?}, computed {parts:?}",
                        row.w, row.parts
                    )
                });
                f.require(parts.iter().sum::<u64>() == c, || {
                    format!("case 2 term {:?}: parts do not sum to {c}", row.w)
                });
                f.require(!parts.contains(&1), || {
                    format!("case 2 term {:?} has a binomial summand equal to 1", row.w)
                });
                f.require(c >= 2, || {
                    format!("case 2 term {:?} has coefficient {c}", row.w)
                });
            }
        }
        _ => {
            f.0.push(format!("case {case} evidence block missing or misplaced"))
        }
    }

    let must_enumerate = n <= COPRIME6_ENUMERATION_LIMIT && e.pair.len() <= bounds.enumeration;
    match &e.enumeration {
        Some(table) => {
            let fresh = acyclicity_report(&e.pair, bounds.enumeration)?.table();
            f.require(&fresh == table, || {
                "class table does not re-enumerate".into()
            });
            f.require(table_polynomial(table)? == e.polynomial, || {
                "class table disagrees with the polynomial".into()
            });
            f.require(table.classes.iter().all(|c| c.count >= 2), || {
                "enumeration found a singleton class".into()
            });
        }
        None => f.require(!must_enumerate, || {
            format!("n={n} is within the enumeration limit but no class table is attached")
        }),
    }
    Ok(())
}

fn check_nonprime(e: &NonprimeEvidence, f: &mut Findings) -> Result<()> {
    let n = e.n;
    f.require(
        e.generator > 1 && e.generator < i64::from(n) && i64::from(n) % e.generator == 0,
        || format!("{} is not a proper divisor of {n}", e.generator),
    );
    if !f.0.is_empty() {
        return Ok(());
    }
    let g = GroupCtx::cyclic(n)?;
    let sub = g.subgroup_generated(crate::group::Element(e.generator))?;
    f.require(e.pair.group() == &g, || {
        "pair lives in another group".into()
    });
    f.require(e.pair.a() == &sub[..], || "A is not the subgroup".into());
    f.require(
        sub.binary_search(&crate::group::Element(e.outside))
            .is_err(),
        || format!("{} lies in the subgroup", e.outside),
    );
    let mut expected_b: Vec<i64> = sub
        .iter()
        .map(|x| x.0)
        .chain(std::iter::once(e.outside))
        .filter(|&v| v != 0)
        .collect();
    expected_b.sort_unstable();
    f.require(
        e.pair.b().iter().map(|x| x.0).collect::<Vec<_>>() == expected_b,
        || "B is not (subgroup ∪ {x}) ∖ {0}".into(),
    );
    let exists = matching_exists(&e.pair);
    f.require(!exists && !e.matching_exists, || {
        format!("pair {} admits a matching", e.pair)
    });
    Ok(())
}

fn check_exhaustive(
    e: &ExhaustiveEvidence,
    verdict: Verdict,
    bounds: &Bounds,
    f: &mut Findings,
) -> Result<()> {
    let g = GroupCtx::cyclic(e.n)?;
    let fresh = verify_group_amp(&g, e.symmetry, bounds)?;
    f.require(fresh.holds == e.holds, || {
        "verdict does not reproduce".into()
    });
    f.require(fresh.pairs_checked == e.pairs_checked, || {
        format!(
            "pairs_checked {} does not reproduce ({})",
            e.pairs_checked, fresh.pairs_checked
        )
    });
    f.require(fresh.digest == e.digest, || {
        "search digest does not reproduce".into()
    });
    f.require(fresh.counterexample == e.counterexample, || {
        "counterexample does not reproduce".into()
    });
    let expected = match (e.holds, e.n) {
        (true, 1) => Verdict::VacuousHolds,
        (true, _) => Verdict::Holds,
        (false, _) => Verdict::Fails,
    };
    f.require(verdict == expected, || {
        format!("verdict should be {expected}")
    });
    if let Some(pair) = &e.counterexample {
        let r = acyclicity_report(pair, bounds.enumeration)?;
        f.require(!r.has_acyclic_matching(), || {
            format!("counterexample {pair} has an acyclic matching")
        });
        f.require(
            e.counterexample_classes.as_ref() == Some(&r.table()),
            || "counterexample class table does not reproduce".into(),
        );
    }
    Ok(())
}

fn check_sampled(e: &SampledEvidence, bounds: &Bounds, f: &mut Findings) -> Result<()> {
    let spec = SampleSpec {
        seed: e.seed,
        samples: e.samples,
        max_size: e.max_size,
        range: e.range,
    };
    let fresh = run_samples(&spec, bounds)?;
    f.require(fresh.acyclic_found == e.acyclic_found, || {
        "sampled acyclic count does not reproduce".into()
    });
    f.require(fresh.failures == e.failures, || {
        "sampled failures do not reproduce".into()
    });
    f.require(
        e.failures.is_empty() && e.acyclic_found == e.samples,
        || {
            format!(
                "{} sampled pairs in Z lack an acyclic matching",
                e.failures.len()
            )
        },
    );
    Ok(())
}
