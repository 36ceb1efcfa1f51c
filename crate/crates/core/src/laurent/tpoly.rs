use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A polynomial in a single variable `t` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl TPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(degree: u32, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff.into());
        p
    }

    /// Build from `(degree, coefficient)` pairs; repeated degrees add up.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (d, c) in pairs {
            p.add_term(d, c.into());
        }
        p
    }

    /// `1 + t^2 + ... + t^{2m}`, the Poincaré polynomial of `P^m`.
    pub fn projective_space(m: u32) -> Self {
        Self::from_pairs((0..=m).map(|i| (2 * i, 1)))
    }

    pub fn add_term(&mut self, degree: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(degree).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: u32) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Nonzero `(degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Multiply by `t^shift`.
    pub fn shifted(&self, shift: u32) -> Self {
        TPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&d, c)| (d + shift, c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        TPolynomial {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, c * k)).collect(),
        }
    }

    pub fn has_only_even_degrees(&self) -> bool {
        self.coeffs.keys().all(|d| d % 2 == 0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}

impl Add<&TPolynomial> for &TPolynomial {
    type Output = TPolynomial;

    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        for (&d, c) in &rhs.coeffs {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Add for TPolynomial {
    type Output = TPolynomial;

    fn add(self, rhs: TPolynomial) -> TPolynomial {
        &self + &rhs
    }
}

impl Mul<&TPolynomial> for &TPolynomial {
    type Output = TPolynomial;

    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = TPolynomial::zero();
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &rhs.coeffs {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Mul for TPolynomial {
    type Output = TPolynomial;

    fn mul(self, rhs: TPolynomial) -> TPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for TPolynomial {
    fn sum<I: Iterator<Item = TPolynomial>>(iter: I) -> Self {
        iter.fold(TPolynomial::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for TPolynomial {
    fn product<I: Iterator<Item = TPolynomial>>(iter: I) -> Self {
        iter.fold(TPolynomial::one(), |acc, p| &acc * &p)
    }
}

/// Ascending degree, explicit `*`, caret exponents: `1 + 2*t^2 + t^4`.
impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&d, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{var}")?,
                (_, false) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PairWire(u32, #[serde(with = "super::coeff")] BigInt);

/// JSON: ascending array of `[degree, coeff]`.
impl Serialize for TPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<PairWire> = self
            .coeffs
            .iter()
            .map(|(&d, c)| PairWire(d, c.clone()))
            .collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Vec::<PairWire>::deserialize(d)?;
        Ok(TPolynomial::from_pairs(wire.into_iter().map(|PairWire(d, c)| (d, c))))
    }
}
