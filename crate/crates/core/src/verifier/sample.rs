//! Seeded random pairs of finite subsets of ℤ.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SampledEvidence;
use crate::error::Result;
use crate::group::GroupCtx;
use crate::matching::{acyclicity_report, Bounds, SubsetPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub seed: u64,
    pub samples: u32,
    /// Sizes are drawn uniformly from `1..=max_size`.
    pub max_size: usize,
    /// Inclusive element range.
    pub range: [i64; 2],
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            seed: 0x5eed,
            samples: 500,
            max_size: 5,
            range: [-6, 6],
        }
    }
}

/// Draws `spec.samples` pairs `(A, B)` with `|A| = |B|`, elements in the
/// range and `0 ∉ B`. Deterministic in the seed.
pub fn sample_integer_pairs(spec: &SampleSpec) -> Result<Vec<SubsetPair>> {
    let [lo, hi] = spec.range;
    let universe: Vec<i64> = (lo..=hi).collect();
    let nonzero: Vec<i64> = universe.iter().copied().filter(|&v| v != 0).collect();
    let max = spec.max_size.min(nonzero.len()).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let g = GroupCtx::integers();
    (0..spec.samples)
        .map(|_| {
            let k = rng.gen_range(1..=max);
            let a = sample(&mut rng, universe.len(), k)
                .into_iter()
                .map(|i| universe[i]);
            let b: Vec<i64> = sample(&mut rng, nonzero.len(), k)
                .into_iter()
                .map(|i| nonzero[i])
                .collect();
            SubsetPair::new(g, a, b)
        })
        .collect()
}

pub(super) fn run_samples(spec: &SampleSpec, bounds: &Bounds) -> Result<SampledEvidence> {
    let mut found = 0;
    let mut failures = Vec::new();
    for pair in sample_integer_pairs(spec)? {
        if acyclicity_report(&pair, bounds.enumeration)?.has_acyclic_matching() {
            found += 1;
        } else {
            failures.push(pair);
        }
    }
    Ok(SampledEvidence {
        seed: spec.seed,
        samples: spec.samples,
        max_size: spec.max_size,
        range: spec.range,
        acyclic_found: found,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Element;

    #[test]
    fn samples_are_valid_and_deterministic() {
        let spec = SampleSpec::default();
        let a = sample_integer_pairs(&spec).unwrap();
        let b = sample_integer_pairs(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 500);
        for p in &a {
            assert!((1..=5).contains(&p.len()));
            assert!(!p.b().contains(&Element(0)));
            assert!(p.a().iter().chain(p.b()).all(|e| (-6..=6).contains(&e.0)));
        }
        let other = sample_integer_pairs(&SampleSpec { seed: 1, ..spec }).unwrap();
        assert_ne!(a, other);
    }
}
