use super::certify::{certify_amp, certify_coprime6, nonprime_counterexample};
use super::sample::{run_samples, SampleSpec};
use super::*;
use crate::error::Result;
use crate::group::is_prime;
use crate::matching::Bounds;

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub bounds: Bounds,
    pub symmetry: bool,
    /// Spot check used for the torsion-free verdict.
    pub sampling: SampleSpec,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            bounds: Bounds::default(),
            symmetry: true,
            sampling: SampleSpec::default(),
        }
    }
}

/// Acyclic-matching-property verdict for ℤ or ℤ/nℤ.
///
/// - ℤ holds; the certificate carries a seeded brute-force spot check.
/// - ℤ/1ℤ holds vacuously.
/// - ℤ/2ℤ, ℤ/3ℤ, ℤ/5ℤ hold, shown by exhaustive search.
/// - Composite n fails for lack of a matching.
/// - Primes above 5 fail by the coprime-to-6 construction.
pub fn classify(group: GroupDescriptor, opts: &ClassifyOptions) -> Result<Certificate> {
    let claim = Claim::Classification { group };
    let mut discrepancy = false;
    let mut cert = match group {
        GroupDescriptor::Integers => {
            let ev = run_samples(&opts.sampling, &opts.bounds)?;
            let mut c = Certificate::unverified(claim, Verdict::Holds, Evidence::Sampled(ev));
            c.notes.push(
                "torsion-free groups have the property; evidence is a sampled spot check"
                    .into(),
            );
            c
        }
        GroupDescriptor::Cyclic { n: 1 } => {
            let mut c = Certificate::unverified(claim, Verdict::VacuousHolds, Evidence::Vacuous);
            c.notes.push(
                "trivial group: no pair with 0 ∉ B exists, so the property holds vacuously".into(),
            );
            c
        }
        GroupDescriptor::Cyclic { n } if n <= 5 && is_prime(u64::from(n)) => {
            let inner = certify_amp(n, opts.symmetry, &opts.bounds)?;
            let mut c = Certificate::unverified(claim, inner.verdict, inner.evidence);
            if inner.verdict != Verdict::Holds {
                discrepancy = true;
                c.notes.push(format!(
                    "exhaustive search disagrees with the expected positive verdict for Z/{n}Z"
                ));
            }
            c
        }
        GroupDescriptor::Cyclic { n } if is_prime(u64::from(n)) => {
            let inner = certify_coprime6(n, &opts.bounds)?;
            Certificate::unverified(claim, inner.verdict, inner.evidence)
        }
        GroupDescriptor::Cyclic { n } => {
            let inner = nonprime_counterexample(n)?;
            Certificate::unverified(claim, inner.verdict, inner.evidence)
        }
    };
    cert.recheck(&opts.bounds)?;
    if discrepancy {
        cert.verified = false;
    }
    Ok(cert)
}
