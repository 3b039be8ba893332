//! Transfer-matrix evaluation of the matching generating function for
//! `A = ℤ/nℤ ∖ {0, 1, 3}`, `B = ℤ/nℤ ∖ {0, 1, m}`.
//!
//! `B` is matched in ascending order. Below the gap at `m` the automaton
//! tracks which single element of `{1−b, 2−b, 3−b}` is still unmatched
//! (states s1, s2, s3); above it, which two are (s12, s13, s23). Each
//! transition is weighted by the sum it creates (`c0`, `c1` or `c3`).

use super::poly::GenPoly;
use crate::error::{Error, Result};

/// A 3×3 matrix over [`GenPoly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix(pub [[GenPoly; 3]; 3]);

fn c0() -> GenPoly {
    GenPoly::mono(1, 1, 0, 0)
}

fn c1() -> GenPoly {
    GenPoly::mono(1, 0, 1, 0)
}

fn c3() -> GenPoly {
    GenPoly::mono(1, 0, 0, 1)
}

fn z() -> GenPoly {
    GenPoly::zero()
}

impl TransferMatrix {
    /// Transitions for `b = m+1 ..= n−4` over states (s12, s13, s23):
    /// ```text
    /// ( 0  c3 0  )
    /// ( c1 0  c3 )
    /// ( c0 0  0  )
    /// ```
    pub fn upper() -> Self {
        TransferMatrix([[z(), c3(), z()], [c1(), z(), c3()], [c0(), z(), z()]])
    }

    /// Transitions for `b = 2 ..= m−1` over states (s1, s2, s3):
    /// ```text
    /// ( c1 0  c3 )
    /// ( c0 0  0  )
    /// ( 0  c0 0  )
    /// ```
    pub fn lower() -> Self {
        TransferMatrix([[c1(), z(), c3()], [c0(), z(), z()], [z(), c0(), z()]])
    }

    /// The gap at `m`: s1 → s12, s2 → s13, and s3 dies.
    pub fn gap() -> Self {
        let one = GenPoly::one;
        TransferMatrix([[one(), z(), z()], [z(), one(), z()], [z(), z(), z()]])
    }

    pub fn mul_vec(&self, v: &[GenPoly; 3]) -> Result<[GenPoly; 3]> {
        let mut out = [z(), z(), z()];
        for (i, row) in self.0.iter().enumerate() {
            for (entry, x) in row.iter().zip(v) {
                out[i] = out[i].add(&entry.mul(x)?)?;
            }
        }
        Ok(out)
    }

    pub fn vec_mul(&self, v: &[GenPoly; 3]) -> Result<[GenPoly; 3]> {
        let mut out = [z(), z(), z()];
        for (x, row) in v.iter().zip(&self.0) {
            for (j, entry) in row.iter().enumerate() {
                out[j] = out[j].add(&x.mul(entry)?)?;
            }
        }
        Ok(out)
    }
}

/// Row vector of final weights for matching `{n−3, n−2, n−1}` from states
/// s12, s13, s23: `(c1²c3, c0c3², c1c3²)`.
pub fn closing_weights() -> [GenPoly; 3] {
    [
        GenPoly::mono(1, 0, 2, 1),
        GenPoly::mono(1, 1, 0, 2),
        GenPoly::mono(1, 0, 1, 2),
    ]
}

/// `closing · upper^(n−m−4) · gap · lower^(m−2) · e1`.
///
/// Requires `m > 1` and `n ≥ m + 4`. Powers are applied one factor at a time
/// to the vectors on either side.
pub fn transfer_genfun(n: u32, m: u32) -> Result<GenPoly> {
    if m < 2 || n < m + 4 {
        return Err(Error::Precondition(format!(
            "transfer_genfun needs m > 1 and n >= m + 4; got n={n}, m={m}"
        )));
    }
    let lower = TransferMatrix::lower();
    let mut right = [GenPoly::one(), z(), z()];
    for _ in 0..m - 2 {
        right = lower.mul_vec(&right)?;
    }
    right = TransferMatrix::gap().mul_vec(&right)?;

    let upper = TransferMatrix::upper();
    let mut left = closing_weights();
    for _ in 0..n - m - 4 {
        left = upper.vec_mul(&left)?;
    }

    let mut out = GenPoly::zero();
    for (l, r) in left.iter().zip(&right) {
        out = out.add(&l.mul(r)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_pinned_at_n6_m2() {
        assert_eq!(transfer_genfun(6, 2).unwrap(), GenPoly::mono(1, 0, 2, 1));
    }

    #[test]
    fn base_cases() {
        assert_eq!(transfer_genfun(7, 2).unwrap(), GenPoly::mono(2, 1, 1, 2));
        let n8 = GenPoly::mono(1, 0, 3, 2)
            .add(&GenPoly::mono(1, 2, 0, 3))
            .unwrap();
        assert_eq!(transfer_genfun(8, 2).unwrap(), n8);
    }

    #[test]
    fn preconditions() {
        assert!(transfer_genfun(5, 2).is_err());
        assert!(transfer_genfun(9, 6).is_err());
        assert!(transfer_genfun(10, 1).is_err());
        assert!(transfer_genfun(10, 6).is_ok());
    }

    #[test]
    fn vec_mul_and_mul_vec_agree_on_transpose() {
        let m = TransferMatrix::upper();
        let mut t = m.clone();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = m.0[j][i].clone();
            }
        }
        let v = closing_weights();
        assert_eq!(m.vec_mul(&v).unwrap(), t.mul_vec(&v).unwrap());
    }
}
