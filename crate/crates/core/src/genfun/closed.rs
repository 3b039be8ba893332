//! Binomial closed forms and the order-3 recurrence
//! `F(n) = c1·c3·F(n−2) + c0·c3²·F(n−3)`.

use super::poly::{GenPoly, Monomial};
use crate::error::{Error, Result};

/// `C(a, b)`, taken to be 0 whenever `a < 0`, `b < 0` or `b > a`.
pub fn binom(a: i64, b: i64) -> Result<u64> {
    if a < 0 || b < 0 || b > a {
        return Ok(0);
    }
    let k = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc·(a−i) is divisible by (i+1) at every step
        acc = acc.checked_mul(a - i).ok_or(Error::Overflow("binomial"))? / (i + 1);
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("binomial"))
}

/// Exponent triples `(w0, w1, w3)` with `w0 + w1 + w3 = n − 3` and
/// `2·w0 + w1 + 1 = w3 + m`, in ascending order.
pub fn support(n: u32, m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let Some(total) = n.checked_sub(3) else {
        return out;
    };
    for w0 in 0..=total {
        for w1 in 0..=total - w0 {
            let w3 = total - w0 - w1;
            if 2 * w0 + w1 + 1 == w3 + m {
                out.push(Monomial::new(w0, w1, w3));
            }
        }
    }
    out
}

/// Whether every term of `p` lies on the support of `(n, m)`.
pub fn satisfies_constraints(p: &GenPoly, n: u32, m: u32) -> bool {
    p.terms().all(|(t, _)| {
        u64::from(t.w0) + u64::from(t.w1) + u64::from(t.w3) + 3 == u64::from(n)
            && 2 * u64::from(t.w0) + u64::from(t.w1) + 1 == u64::from(t.w3) + u64::from(m)
    })
}

fn binomial_sum(n: u32, m: u32, coeff: impl Fn(i64, i64) -> Result<u64>) -> Result<GenPoly> {
    let mut p = GenPoly::zero();
    for t in support(n, m) {
        let c = coeff(i64::from(t.w0), i64::from(t.w1))?;
        p.add_term(t, c)?;
    }
    Ok(p)
}

/// `Σ C(w0 + w1 − d, w1 − e) · c0^w0 c1^w1 c3^w3` over the support of
/// `(n, m)`.
pub fn binomial_family(n: u32, d: i64, e: i64, m: u32) -> Result<GenPoly> {
    if m < 2 || n < 3 {
        return Err(Error::Precondition(format!(
            "binomial_family needs m >= 2 and n >= 3; got n={n}, m={m}"
        )));
    }
    binomial_sum(n, m, |w0, w1| binom(w0 + w1 - d, w1 - e))
}

/// Closed form of the generating function for `m = 2`, valid for `n ≥ 6`.
pub fn closed_form_m2(n: u32) -> Result<GenPoly> {
    if n < 6 {
        return Err(Error::Precondition(format!(
            "closed_form_m2 needs n >= 6, got {n}"
        )));
    }
    binomial_sum(n, 2, |w0, w1| binom(w0 + w1, w1))
}

/// Closed form for `m = 6`, valid for `n ≥ 10`:
/// `C(w0+w1−2, w1) + C(w0+w1−3, w1−1) + C(w0+w1−3, w1−3)`.
pub fn closed_form_m6(n: u32) -> Result<GenPoly> {
    if n < 10 {
        return Err(Error::Precondition(format!(
            "closed_form_m6 needs n >= 10, got {n}"
        )));
    }
    binomial_sum(n, 6, |w0, w1| {
        let terms = [
            binom(w0 + w1 - 2, w1)?,
            binom(w0 + w1 - 3, w1 - 1)?,
            binom(w0 + w1 - 3, w1 - 3)?,
        ];
        terms
            .iter()
            .try_fold(0u64, |acc, &t| acc.checked_add(t))
            .ok_or(Error::Overflow("closed_form_m6"))
    })
}

/// Whether `seq[i] = c1·c3·seq[i−2] + c0·c3²·seq[i−3]` for every `i ≥ 3`,
/// i.e. the sequence obeys the recurrence with characteristic polynomial
/// `x³ − c1c3·x − c0c3²`. Sequences shorter than 4 carry no check and
/// yield `false`.
pub fn recurrence_check(seq: &[GenPoly]) -> bool {
    if seq.len() < 4 {
        return false;
    }
    let c1c3 = GenPoly::mono(1, 0, 1, 1);
    let c0c3sq = GenPoly::mono(1, 1, 0, 2);
    (3..seq.len()).all(|i| {
        let rhs = c1c3
            .mul(&seq[i - 2])
            .and_then(|a| c0c3sq.mul(&seq[i - 3]).and_then(|b| a.add(&b)));
        rhs.is_ok_and(|r| r == seq[i])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pascal-triangle oracle, independent of the multiplicative formula.
    fn pascal(a: i64, b: i64) -> u64 {
        if a < 0 || b < 0 || b > a {
            return 0;
        }
        let mut row = vec![1u64];
        for _ in 0..a {
            let mut next = vec![1u64; row.len() + 1];
            for j in 1..row.len() {
                next[j] = row[j - 1] + row[j];
            }
            row = next;
        }
        row[b as usize]
    }

    /// Independent loop: solve `3·w0 + 2·w1 = n + m − 4` directly.
    fn family_oracle(n: u32, d: i64, e: i64, m: u32) -> GenPoly {
        let rhs = i64::from(n) + i64::from(m) - 4;
        let mut p = GenPoly::zero();
        for w0 in 0..=rhs.max(0) / 3 {
            let rest = rhs - 3 * w0;
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            let w1 = rest / 2;
            let w3 = i64::from(n) - 3 - w0 - w1;
            if w3 < 0 {
                continue;
            }
            let c = pascal(w0 + w1 - d, w1 - e);
            p.add_term(Monomial::new(w0 as u32, w1 as u32, w3 as u32), c)
                .unwrap();
        }
        p
    }

    #[test]
    fn binom_matches_pascal() {
        for a in -3..=40 {
            for b in -3..=42 {
                assert_eq!(binom(a, b).unwrap(), pascal(a, b), "C({a},{b})");
            }
        }
        assert!(binom(200, 100).is_err());
    }

    #[test]
    fn family_matches_oracle() {
        for n in 3..=24 {
            for m in [2, 3, 6, 7] {
                for d in -2..=3 {
                    for e in -2..=3 {
                        assert_eq!(
                            binomial_family(n, d, e, m).unwrap(),
                            family_oracle(n, d, e, m),
                            "n={n} d={d} e={e} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            binomial_family(5, 0, 0, 2).unwrap(),
            GenPoly::mono(1, 1, 0, 1)
        );
        for n in 6..=14 {
            assert_eq!(
                binomial_family(n, 0, 0, 2).unwrap(),
                closed_form_m2(n).unwrap()
            );
        }
        assert!(binomial_family(2, 0, 0, 2).is_err());
        assert!(binomial_family(5, 0, 0, 1).is_err());
    }

    #[test]
    fn m2_initial_terms() {
        assert_eq!(closed_form_m2(6).unwrap(), GenPoly::mono(1, 0, 2, 1));
        assert_eq!(closed_form_m2(7).unwrap(), GenPoly::mono(2, 1, 1, 2));
        assert!(closed_form_m2(5).is_err());
        assert!(closed_form_m6(9).is_err());
    }

    #[test]
    fn support_respects_constraints() {
        for n in 3..=30 {
            for m in 2..=8 {
                let s = support(n, m);
                let p = s.iter().fold(GenPoly::zero(), |mut p, &t| {
                    p.add_term(t, 1).unwrap();
                    p
                });
                assert!(satisfies_constraints(&p, n, m));
                assert!(!satisfies_constraints(&p, n + 1, m) || p.is_zero());
            }
        }
    }

    #[test]
    fn recurrence_rejects_mutation() {
        let seq: Vec<GenPoly> = (10..=16).map(|n| closed_form_m6(n).unwrap()).collect();
        assert!(recurrence_check(&seq));
        let mut bad = seq.clone();
        let (t, c) = bad[5].terms().next().unwrap();
        bad[5].add_term(t, c).unwrap();
        assert!(!recurrence_check(&bad));
        assert!(!recurrence_check(&seq[..3]));
    }
}
