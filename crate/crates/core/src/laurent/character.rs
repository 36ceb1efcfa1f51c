use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{LaurentError, OrderingSpec};

/// Exponents of `t1`, `t2` and `e1..er` in a monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector {
    pub t1: i64,
    pub t2: i64,
    pub e: Vec<i64>,
}

impl ExponentVector {
    pub fn new(t1: i64, t2: i64, e: Vec<i64>) -> Self {
        ExponentVector { t1, t2, e }
    }

    /// The constant monomial of the given rank.
    pub fn unit(rank: usize) -> Self {
        ExponentVector::new(0, 0, vec![0; rank])
    }

    /// `t1^a t2^b` with trivial framing weight.
    pub fn t(rank: usize, a: i64, b: i64) -> Self {
        ExponentVector::new(a, b, vec![0; rank])
    }

    /// `e_beta / e_alpha` (0-based indices).
    pub fn e_ratio(rank: usize, beta: usize, alpha: usize) -> Self {
        let mut e = vec![0; rank];
        e[beta] += 1;
        e[alpha] -= 1;
        ExponentVector::new(0, 0, e)
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn is_unit(&self) -> bool {
        self.t1 == 0 && self.t2 == 0 && self.e.iter().all(|&x| x == 0)
    }

    fn plus(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector {
            t1: self.t1 + other.t1,
            t2: self.t2 + other.t2,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
        }
    }

    fn negated(&self) -> ExponentVector {
        ExponentVector {
            t1: -self.t1,
            t2: -self.t2,
            e: self.e.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut push = |name: String, exp: i64| match exp {
            0 => {}
            1 => factors.push(name),
            _ => factors.push(format!("{name}^{exp}")),
        };
        push("t1".into(), self.t1);
        push("t2".into(), self.t2);
        for (i, &x) in self.e.iter().enumerate() {
            push(format!("e{}", i + 1), x);
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// An integer Laurent polynomial in `t1, t2, e1..er`.
///
/// Terms are kept in a sorted map with no zero coefficients, so two equal
/// characters have identical term maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    rank: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(ExponentVector::unit(rank), 1)
    }

    pub fn monomial(exp: ExponentVector, coeff: impl Into<BigInt>) -> Self {
        let mut c = Character::zero(exp.rank());
        c.add_term(exp, coeff.into());
        c
    }

    /// Build from `(exponent, coefficient)` pairs; all exponents must have
    /// `rank` e-entries.
    pub fn from_terms<I, C>(rank: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
        C: Into<BigInt>,
    {
        let mut c = Character::zero(rank);
        for (exp, coeff) in terms {
            if exp.rank() != rank {
                return Err(LaurentError::BadExponentLength {
                    expected: rank,
                    got: exp.rank(),
                });
            }
            c.add_term(exp, coeff.into());
        }
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Add `coeff * exp` in place. Panics on an exponent of the wrong rank.
    pub fn add_term(&mut self, exp: ExponentVector, coeff: BigInt) {
        assert_eq!(exp.rank(), self.rank, "exponent rank mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Character) -> Result<(), LaurentError> {
        if self.rank != other.rank {
            return Err(LaurentError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Character) -> Result<Character, LaurentError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Character) -> Result<Character, LaurentError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Character) -> Result<Character, LaurentError> {
        self.check_rank(other)?;
        let mut out = Character::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply by a single monomial.
    pub fn shifted(&self, by: &ExponentVector) -> Result<Character, LaurentError> {
        if by.rank() != self.rank {
            return Err(LaurentError::BadExponentLength {
                expected: self.rank,
                got: by.rank(),
            });
        }
        Ok(Character {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.plus(by), c.clone()))
                .collect(),
        })
    }

    /// Re-embed into a larger rank by padding e-exponents with zeros.
    pub fn with_rank(&self, rank: usize) -> Result<Character, LaurentError> {
        if rank < self.rank {
            return Err(LaurentError::RankShrink {
                from: self.rank,
                to: rank,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(exp, c)| {
                let mut e = exp.e.clone();
                e.resize(rank, 0);
                (ExponentVector::new(exp.t1, exp.t2, e), c.clone())
            })
            .collect();
        Ok(Character { rank, terms })
    }

    /// Apply the monomial substitution `(a, b) -> m * (a, b)` to the
    /// t-exponents; e-exponents are left alone.
    ///
    /// `m` need not be invertible: collapsing substitutions such as
    /// `t2 -> t1` merge terms and add their coefficients.
    pub fn substitute(&self, m: [[i64; 2]; 2]) -> Character {
        let mut out = Character::zero(self.rank);
        for (exp, c) in &self.terms {
            let a = m[0][0] * exp.t1 + m[0][1] * exp.t2;
            let b = m[1][0] * exp.t1 + m[1][1] * exp.t2;
            out.add_term(ExponentVector::new(a, b, exp.e.clone()), c.clone());
        }
        out
    }

    /// Terms fixed by `t1 -> -t1, t2 -> -t2, e_a -> (-1)^{eps_a} e_a`.
    pub fn invariant_part(&self, eps: &[u8]) -> Character {
        let terms = self
            .terms
            .iter()
            .filter(|(exp, _)| {
                let twist: i64 = exp
                    .e
                    .iter()
                    .zip(eps)
                    .map(|(&c, &s)| c * i64::from(s))
                    .sum();
                (exp.t1 + exp.t2 + twist).rem_euclid(2) == 0
            })
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Character {
            rank: self.rank,
            terms,
        }
    }

    /// Sum of all coefficients.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Replace every monomial by its inverse.
    pub fn conjugate(&self) -> Character {
        Character {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.negated(), c.clone()))
                .collect(),
        }
    }

    fn count_with_sign(&self, ord: &OrderingSpec, want: Ordering) -> BigInt {
        self.terms
            .iter()
            .filter(|(exp, _)| ord.sign(exp) == want)
            .map(|(_, c)| c)
            .sum()
    }

    fn require_nonnegative(&self) -> Result<(), LaurentError> {
        match self.terms.iter().find(|(_, c)| c.is_negative()) {
            Some((exp, c)) => Err(LaurentError::NegativeCoefficient {
                coeff: c.to_string(),
                monomial: exp.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Total multiplicity of weights that are negative under `ord`.
    pub fn negative_count(&self, ord: &OrderingSpec) -> Result<BigInt, LaurentError> {
        self.require_nonnegative()?;
        Ok(self.count_with_sign(ord, Ordering::Less))
    }

    /// Total multiplicity of weights that are positive under `ord`.
    pub fn positive_count(&self, ord: &OrderingSpec) -> Result<BigInt, LaurentError> {
        self.require_nonnegative()?;
        Ok(self.count_with_sign(ord, Ordering::Greater))
    }

    /// Total multiplicity of weights that vanish on every key of `ord`.
    pub fn zero_weight_count(&self, ord: &OrderingSpec) -> BigInt {
        self.count_with_sign(ord, Ordering::Equal)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if exp.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{exp}")?;
            } else {
                write!(f, "{mag}*{exp}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Character> for &Character {
            type Output = Character;

            /// Panics on rank mismatch; use the `checked_*` form to recover.
            fn $method(self, rhs: &Character) -> Character {
                self.$checked(rhs).expect("character rank mismatch")
            }
        }

        impl $trait for Character {
            type Output = Character;

            fn $method(self, rhs: Character) -> Character {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Character {
    type Output = Character;

    fn neg(self) -> Character {
        Character {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    #[serde(with = "super::coeff")]
    coeff: BigInt,
    t1: i64,
    t2: i64,
    e: Vec<i64>,
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<TermWire> = self
            .terms
            .iter()
            .map(|(exp, c)| TermWire {
                coeff: c.clone(),
                t1: exp.t1,
                t2: exp.t2,
                e: exp.e.clone(),
            })
            .collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Character {
    /// The rank is read off the first term; an empty list is the rank-0 zero.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Vec::<TermWire>::deserialize(d)?;
        let rank = wire.first().map_or(0, |t| t.e.len());
        Character::from_terms(
            rank,
            wire.into_iter()
                .map(|t| (ExponentVector::new(t.t1, t.t2, t.e), t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}
