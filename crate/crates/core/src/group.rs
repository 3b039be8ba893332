//! The ambient abelian group: a finite cyclic group ℤ/nℤ, or the integers
//! restricted to a window of bounded magnitude.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default magnitude window for integer-mode elements.
pub const DEFAULT_INTEGER_BOUND: i64 = 1 << 40;

/// A group element. In cyclic mode the value is the canonical residue in
/// `[0, n)`; in integer mode it is the integer itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub i64);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for Element {
    fn from(v: i64) -> Self {
        Element(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupCtx {
    Cyclic {
        modulus: u32,
    },
    /// ℤ, with every element and every sum required to satisfy `|x| <= bound`.
    Integers {
        bound: i64,
    },
}

impl GroupCtx {
    pub fn cyclic(modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Precondition(
                "cyclic group order must be >= 1".into(),
            ));
        }
        Ok(GroupCtx::Cyclic { modulus })
    }

    pub fn integers() -> Self {
        GroupCtx::Integers {
            bound: DEFAULT_INTEGER_BOUND,
        }
    }

    pub fn integers_bounded(bound: i64) -> Result<Self> {
        if bound < 0 {
            return Err(Error::Precondition(
                "integer bound must be non-negative".into(),
            ));
        }
        Ok(GroupCtx::Integers { bound })
    }

    pub fn modulus(&self) -> Option<u32> {
        match *self {
            GroupCtx::Cyclic { modulus } => Some(modulus),
            GroupCtx::Integers { .. } => None,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupCtx::Cyclic { .. })
    }

    /// Map an arbitrary integer to its canonical representative.
    ///
    /// Idempotent. Integer mode rejects values outside the magnitude window
    /// instead of clamping them.
    pub fn canonicalize(&self, v: i64) -> Result<Element> {
        match *self {
            GroupCtx::Cyclic { modulus } => Ok(Element(v.rem_euclid(i64::from(modulus)))),
            GroupCtx::Integers { bound } => {
                if v.checked_abs().is_some_and(|a| a <= bound) {
                    Ok(Element(v))
                } else {
                    Err(Error::Bounds(format!(
                        "|{v}| exceeds integer bound {bound}"
                    )))
                }
            }
        }
    }

    pub fn is_canonical(&self, x: Element) -> bool {
        self.canonicalize(x.0).is_ok_and(|c| c == x)
    }

    pub fn add(&self, x: Element, y: Element) -> Result<Element> {
        match *self {
            GroupCtx::Cyclic { modulus } => {
                let n = i64::from(modulus);
                // canonical residues are < 2^32, so the sum cannot overflow
                Ok(Element((x.0 + y.0).rem_euclid(n)))
            }
            GroupCtx::Integers { .. } => {
                let s =
                    x.0.checked_add(y.0)
                        .ok_or_else(|| Error::Bounds(format!("{x} + {y} overflows i64")))?;
                self.canonicalize(s)
            }
        }
    }

    pub fn neg(&self, x: Element) -> Result<Element> {
        match *self {
            GroupCtx::Cyclic { .. } => self.canonicalize(-x.0),
            GroupCtx::Integers { .. } => self.canonicalize(
                x.0.checked_neg()
                    .ok_or_else(|| Error::Bounds(format!("-{x} overflows i64")))?,
            ),
        }
    }

    /// `k·x` for an integer multiplier `k`.
    pub fn scale(&self, k: i64, x: Element) -> Result<Element> {
        match *self {
            GroupCtx::Cyclic { modulus } => {
                let n = i128::from(modulus);
                let v = (i128::from(k) * i128::from(x.0)).rem_euclid(n);
                Ok(Element(v as i64))
            }
            GroupCtx::Integers { .. } => {
                let v = k
                    .checked_mul(x.0)
                    .ok_or_else(|| Error::Bounds(format!("{k}·{x} overflows i64")))?;
                self.canonicalize(v)
            }
        }
    }

    /// The cyclic subgroup ⟨a⟩ as a sorted set.
    pub fn subgroup_generated(&self, a: Element) -> Result<Vec<Element>> {
        let n = self.require_cyclic("subgroup_generated")?;
        let a = self.canonicalize(a.0)?;
        let step = gcd(a.0 as u64, u64::from(n));
        // ⟨a⟩ = ⟨gcd(a, n)⟩ in ℤ/nℤ
        Ok((0..u64::from(n))
            .step_by(step as usize)
            .map(|v| Element(v as i64))
            .collect())
    }

    /// Residues `u` in `[1, n)` coprime to `n`; multiplication by any of them
    /// is an automorphism of ℤ/nℤ.
    pub fn units(&self) -> Result<Vec<Element>> {
        let n = self.require_cyclic("units")?;
        Ok((1..u64::from(n))
            .filter(|&u| gcd(u, u64::from(n)) == 1)
            .map(|u| Element(u as i64))
            .collect())
    }

    fn require_cyclic(&self, op: &str) -> Result<u32> {
        self.modulus()
            .ok_or_else(|| Error::Precondition(format!("{op} requires a cyclic group")))
    }
}

impl fmt::Display for GroupCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupCtx::Cyclic { modulus } => write!(f, "Z/{modulus}Z"),
            GroupCtx::Integers { .. } => f.write_str("Z"),
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .find(|d| n.is_multiple_of(*d))
        .or(Some(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[i64]) -> Vec<Element> {
        v.iter().copied().map(Element).collect()
    }

    #[test]
    fn add_examples() {
        let z7 = GroupCtx::cyclic(7).unwrap();
        assert_eq!(z7.add(Element(4), Element(5)).unwrap(), Element(2));
        assert_eq!(z7.add(Element(0), Element(3)).unwrap(), Element(3));
        let z = GroupCtx::integers();
        assert_eq!(z.add(Element(4), Element(5)).unwrap(), Element(9));
    }

    #[test]
    fn integer_bounds_are_enforced() {
        let z = GroupCtx::integers_bounded(10).unwrap();
        assert!(matches!(
            z.add(Element(6), Element(5)),
            Err(Error::Bounds(_))
        ));
        assert!(z.canonicalize(-11).is_err());
        assert_eq!(z.canonicalize(-10).unwrap(), Element(-10));
        let wide = GroupCtx::integers_bounded(i64::MAX).unwrap();
        assert!(wide.add(Element(i64::MAX), Element(1)).is_err());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let z9 = GroupCtx::cyclic(9).unwrap();
        for v in -30..30 {
            let c = z9.canonicalize(v).unwrap();
            assert_eq!(z9.canonicalize(c.0).unwrap(), c);
            assert!((0..9).contains(&c.0));
        }
    }

    #[test]
    fn subgroup_examples() {
        let z9 = GroupCtx::cyclic(9).unwrap();
        assert_eq!(z9.subgroup_generated(Element(3)).unwrap(), el(&[0, 3, 6]));
        assert_eq!(z9.subgroup_generated(Element(0)).unwrap(), el(&[0]));
        let z7 = GroupCtx::cyclic(7).unwrap();
        assert_eq!(
            z7.subgroup_generated(Element(2)).unwrap(),
            el(&[0, 1, 2, 3, 4, 5, 6])
        );
        assert!(GroupCtx::integers().subgroup_generated(Element(1)).is_err());
    }

    #[test]
    fn subgroup_is_closed_and_has_expected_size() {
        for n in 1..=12u32 {
            let g = GroupCtx::cyclic(n).unwrap();
            for a in 0..i64::from(n) {
                let h = g.subgroup_generated(Element(a)).unwrap();
                assert!(h.contains(&Element(0)));
                assert_eq!(h.len() as u64, u64::from(n) / gcd(a as u64, u64::from(n)));
                for &x in &h {
                    for &y in &h {
                        assert!(h.contains(&g.add(x, y).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn units_examples() {
        assert_eq!(
            GroupCtx::cyclic(7).unwrap().units().unwrap(),
            el(&[1, 2, 3, 4, 5, 6])
        );
        assert_eq!(
            GroupCtx::cyclic(9).unwrap().units().unwrap(),
            el(&[1, 2, 4, 5, 7, 8])
        );
        assert!(GroupCtx::cyclic(1).unwrap().units().unwrap().is_empty());
    }

    #[test]
    fn units_act_as_automorphisms() {
        for n in 1..=12u32 {
            let g = GroupCtx::cyclic(n).unwrap();
            for u in g.units().unwrap() {
                for x in 0..i64::from(n) {
                    for y in 0..i64::from(n) {
                        let (x, y) = (Element(x), Element(y));
                        let lhs = g.scale(u.0, g.add(x, y).unwrap()).unwrap();
                        let rhs = g
                            .add(g.scale(u.0, x).unwrap(), g.scale(u.0, y).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(GroupCtx::cyclic(0).is_err());
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(smallest_prime_factor(25), Some(5));
        assert_eq!(smallest_prime_factor(13), Some(13));
        assert_eq!(smallest_prime_factor(1), None);
    }
}
