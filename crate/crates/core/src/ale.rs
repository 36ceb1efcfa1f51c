//! Fixed points and Poincaré polynomials of `U(r)` instantons with `c_1 = 0`
//! on the `A_1` ALE space, via 2-colored Young diagrams and `Z_2`-invariant
//! parts of the `C^2` characters.
//!
//! This module shares no enumeration or index code with [`crate::counting`];
//! it only reuses the `C^2` character [`n_character`] and the character algebra.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{Character, LaurentError, OrderingSpec, TPolynomial};
use crate::localization::{n_character, Rational};
use crate::partitions::{diagram_tuples, ColoredDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AleError {
    #[error("invalid colored fixed point: {0}")]
    InvalidFixedPoint(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// An `r`-tuple of colored diagrams; the `α`-th diagram carries `e_α`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColoredFixedPointDatum {
    pub tableaux: Vec<ColoredDiagram>,
}

impl ColoredFixedPointDatum {
    pub fn rank(&self) -> usize {
        self.tableaux.len()
    }

    /// `(N_1, k_0, k_1)`: corners colored 1, and boxes of each color.
    pub fn color_totals(&self) -> (i64, i64, i64) {
        let mut n1 = 0;
        let mut k0 = 0;
        let mut k1 = 0;
        for d in &self.tableaux {
            n1 += i64::from(d.eps());
            let (a, b) = d.color_counts();
            k0 += i64::from(a);
            k1 += i64::from(b);
        }
        (n1, k0, k1)
    }

    /// Whether `c_1 = 0`, i.e. `N_1 + 2 (k_0 - k_1) = 0`.
    pub fn has_zero_first_chern_class(&self) -> bool {
        let (n1, k0, k1) = self.color_totals();
        n1 + 2 * (k0 - k1) == 0
    }

    /// `n = k_0 + N_1 / 4`.
    pub fn instanton_number(&self) -> Rational {
        let (n1, k0, _) = self.color_totals();
        Rational::from_integer(k0) + Rational::new(n1, 4)
    }

    pub fn eps(&self) -> Vec<u8> {
        self.tableaux.iter().map(ColoredDiagram::eps).collect()
    }

    /// Transpose every diagram (exchanges the roles of `t1` and `t2`).
    pub fn transpose(&self) -> Self {
        ColoredFixedPointDatum {
            tableaux: self.tableaux.iter().map(ColoredDiagram::transpose).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), AleError> {
        if self.tableaux.is_empty() {
            return Err(AleError::InvalidFixedPoint("rank must be at least 1".into()));
        }
        if !self.has_zero_first_chern_class() {
            return Err(AleError::InvalidFixedPoint(
                "coloring violates N1 + 2(k0 - k1) = 0".into(),
            ));
        }
        Ok(())
    }
}

/// All colored `r`-tuples with `c_1 = 0` and instanton number `n`.
///
/// Both constraints force the total box count to be `2n`.
pub fn enumerate_colored_fixed_points(r: usize, n: Rational) -> Vec<ColoredFixedPointDatum> {
    let twice = n * Rational::from_integer(2);
    if r == 0 || !twice.is_integer() || twice < Rational::from_integer(0) {
        return Vec::new();
    }
    let Some(total) = twice.to_integer().to_u32() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for diagrams in diagram_tuples(r, total) {
        for mask in 0u32..(1 << r) {
            let tableaux = diagrams
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    ColoredDiagram::new(d.clone(), ((mask >> (r - 1 - i)) & 1) as u8)
                        .expect("color is 0 or 1")
                })
                .collect();
            let fp = ColoredFixedPointDatum { tableaux };
            if fp.has_zero_first_chern_class() && fp.instanton_number() == n {
                out.push(fp);
            }
        }
    }
    out
}

/// `Σ_{α,β} (N_{α,β})^{Z_2}` at a colored fixed point.
pub fn ale_tangent_character(fp: &ColoredFixedPointDatum) -> Result<Character, AleError> {
    fp.validate()?;
    let r = fp.rank();
    let eps = fp.eps();
    let mut out = Character::zero(r);
    for (alpha, ya) in fp.tableaux.iter().enumerate() {
        for (beta, yb) in fp.tableaux.iter().enumerate() {
            let piece = n_character(ya.diagram(), yb.diagram(), alpha, beta, r).invariant_part(&eps);
            out = out.checked_add(&piece)?;
        }
    }
    let expected = fp.instanton_number() * Rational::from_integer(2 * r as i64);
    if !expected.is_integer() || BigInt::from(expected.to_integer()) != out.dimension() {
        return Err(AleError::InvalidFixedPoint(format!(
            "character dimension {} differs from 2rn = {expected}",
            out.dimension()
        )));
    }
    Ok(out)
}

/// Morse index at a colored fixed point under `ord`.
pub fn ale_index(fp: &ColoredFixedPointDatum, ord: &OrderingSpec) -> Result<u64, AleError> {
    let x = ale_tangent_character(fp)?;
    Ok(x.negative_count(ord)?.to_u64().expect("index fits in u64"))
}

/// `Σ t^{2 index}` with the ordering `t2 >> e1 > ... > er >> t1`.
pub fn ale_poincare(r: usize, n: Rational) -> TPolynomial {
    ale_poincare_with(r, n, &OrderingSpec::ale(r)).expect("enumerated points are valid")
}

/// As [`ale_poincare`] with an explicit ordering.
pub fn ale_poincare_with(r: usize, n: Rational, ord: &OrderingSpec) -> Result<TPolynomial, AleError> {
    let mut total = TPolynomial::zero();
    for fp in enumerate_colored_fixed_points(r, n) {
        let index = ale_index(&fp, ord)?;
        total.add_term(2 * index as u32, BigInt::from(1));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ExponentVector;
    use crate::partitions::PartitionDiagram;

    fn colored(rows: &[u32], eps: u8) -> ColoredDiagram {
        ColoredDiagram::new(PartitionDiagram::new(rows.to_vec()).unwrap(), eps).unwrap()
    }

    fn n(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_colored_fixed_points(2, n(1)).len(), 4);
        assert_eq!(enumerate_colored_fixed_points(2, n(2)).len(), 16);
        let r1 = enumerate_colored_fixed_points(1, n(1));
        assert_eq!(
            r1,
            vec![
                ColoredFixedPointDatum { tableaux: vec![colored(&[2], 0)] },
                ColoredFixedPointDatum { tableaux: vec![colored(&[1, 1], 0)] },
            ]
        );
        assert!(enumerate_colored_fixed_points(2, Rational::new(1, 3)).is_empty());
        assert!(enumerate_colored_fixed_points(2, n(-1)).is_empty());
    }

    #[test]
    fn fractional_sectors() {
        // one corner colored 1: N1 = 1 is odd, so c1 = 0 never holds in rank 1
        assert!(enumerate_colored_fixed_points(1, Rational::new(1, 4)).is_empty());
        // rank 2 with both corners colored 1 gives n ∈ Z + 1/2
        let half = enumerate_colored_fixed_points(2, Rational::new(1, 2));
        assert!(!half.is_empty());
        assert!(half.iter().all(|fp| fp.eps() == vec![1, 1]));
    }

    #[test]
    fn first_printed_character() {
        let fp = ColoredFixedPointDatum {
            tableaux: vec![colored(&[], 0), colored(&[1, 1], 0)],
        };
        let x = ale_tangent_character(&fp).unwrap();
        let expected = Character::from_terms(
            2,
            [
                (ExponentVector::new(1, -1, vec![0, 0]), 1),
                (ExponentVector::new(0, 2, vec![0, 0]), 1),
                (ExponentVector::new(1, 1, vec![1, -1]), 1),
                (ExponentVector::new(0, 0, vec![-1, 1]), 1),
            ],
        )
        .unwrap();
        assert_eq!(x, expected);
        assert_eq!(ale_index(&fp, &OrderingSpec::ale(2)).unwrap(), 2);
    }

    #[test]
    fn poincare_values() {
        let p = ale_poincare(2, n(1));
        assert_eq!(p.to_string(), "1 + 2*t^2 + t^4");
        assert_eq!(ale_poincare(2, n(2)).to_string(), "1 + 2*t^2 + 5*t^4 + 5*t^6 + 3*t^8");
        assert_eq!(ale_poincare(1, n(1)).to_string(), "1 + t^2");
    }

    #[test]
    fn invalid_points_are_rejected() {
        let bad = ColoredFixedPointDatum {
            tableaux: vec![colored(&[1], 0)],
        };
        assert!(ale_tangent_character(&bad).is_err());
        let empty = ColoredFixedPointDatum { tableaux: vec![] };
        assert!(empty.validate().is_err());
    }

    #[test]
    fn every_weight_is_z2_even() {
        for count in 1..=3 {
            for fp in enumerate_colored_fixed_points(2, n(count)) {
                let eps = fp.eps();
                let x = ale_tangent_character(&fp).unwrap();
                assert_eq!(x.invariant_part(&eps), x);
            }
        }
    }

    #[test]
    fn json_shape() {
        let fp = ColoredFixedPointDatum {
            tableaux: vec![colored(&[], 0), colored(&[1, 1], 0)],
        };
        assert_eq!(
            serde_json::to_string(&fp).unwrap(),
            r#"{"tableaux":[{"rows":[],"eps":0},{"rows":[1,1],"eps":0}]}"#
        );
    }
}
