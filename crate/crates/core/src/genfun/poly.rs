use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent triple of `c0^w0 · c1^w1 · c3^w3`. Ordered lexicographically by
/// `(w0, w1, w3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub w0: u32,
    pub w1: u32,
    pub w3: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        w0: 0,
        w1: 0,
        w3: 0,
    };

    pub fn new(w0: u32, w1: u32, w3: u32) -> Self {
        Monomial { w0, w1, w3 }
    }

    fn mul(self, o: Monomial) -> Result<Monomial> {
        let f = |x: u32, y: u32| x.checked_add(y).ok_or(Error::Overflow("exponent"));
        Ok(Monomial {
            w0: f(self.w0, o.w0)?,
            w1: f(self.w1, o.w1)?,
            w3: f(self.w3, o.w3)?,
        })
    }

    pub fn degree(&self) -> u64 {
        u64::from(self.w0) + u64::from(self.w1) + u64::from(self.w3)
    }
}

/// Sparse polynomial in `c0, c1, c3` with positive `u64` coefficients.
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenPoly {
    terms: BTreeMap<Monomial, u64>,
}

impl GenPoly {
    pub fn zero() -> Self {
        GenPoly::default()
    }

    pub fn one() -> Self {
        GenPoly::term(1, Monomial::ONE)
    }

    pub fn term(coeff: u64, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(mono, coeff);
        }
        GenPoly { terms }
    }

    /// `coeff · c0^w0 · c1^w1 · c3^w3`
    pub fn mono(coeff: u64, w0: u32, w1: u32, w3: u32) -> Self {
        GenPoly::term(coeff, Monomial::new(w0, w1, w3))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(w0, w1, w3)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, mono: Monomial) -> u64 {
        self.terms.get(&mono).copied().unwrap_or(0)
    }

    pub fn min_coefficient(&self) -> Option<u64> {
        self.terms.values().copied().min()
    }

    /// Value at `c0 = c1 = c3 = 1`.
    pub fn coefficient_sum(&self) -> Result<u64> {
        self.terms.values().try_fold(0u64, |acc, &c| {
            acc.checked_add(c).ok_or(Error::Overflow("coefficient sum"))
        })
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: u64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(mono).or_insert(0);
        *slot = slot
            .checked_add(coeff)
            .ok_or(Error::Overflow("polynomial addition"))?;
        Ok(())
    }

    pub fn add(&self, other: &GenPoly) -> Result<GenPoly> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &GenPoly) -> Result<GenPoly> {
        let mut out = GenPoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let c = c1
                    .checked_mul(c2)
                    .ok_or(Error::Overflow("polynomial multiplication"))?;
                out.add_term(m1.mul(m2)?, c)?;
            }
        }
        Ok(out)
    }

    /// Canonical JSON form: `[{"w":[w0,w1,w3],"c":coeff}, ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    w: [u32; 3],
    c: u64,
}

impl Serialize for GenPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms().map(|(m, c)| TermRecord {
            w: [m.w0, m.w1, m.w3],
            c,
        }))
    }
}

impl<'de> Deserialize<'de> for GenPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut p = GenPoly::zero();
        for r in records {
            if r.c == 0 {
                return Err(serde::de::Error::custom("zero coefficient in polynomial"));
            }
            p.add_term(Monomial::new(r.w[0], r.w[1], r.w[2]), r.c)
                .map_err(serde::de::Error::custom)?;
        }
        Ok(p)
    }
}

/// `2*c0*c1*c3^2 + c0^2*c3^3`-style canonical text; `0` for the zero
/// polynomial.
impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m == Monomial::ONE {
                factors.push(c.to_string());
            }
            for (name, w) in [("c0", m.w0), ("c1", m.w1), ("c3", m.w3)] {
                match w {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{w}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
