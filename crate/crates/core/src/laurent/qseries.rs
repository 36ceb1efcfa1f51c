use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::TPolynomial;

/// Exponent of `q`; kept in lowest terms.
pub type QExponent = Ratio<i64>;

/// A power series in `q` with [`TPolynomial`] coefficients, truncated after
/// exponent `order` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    order: QExponent,
    coeffs: BTreeMap<QExponent, TPolynomial>,
}

impl QSeries {
    pub fn zero(order: impl Into<QExponent>) -> Self {
        QSeries {
            order: order.into(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: impl Into<QExponent>) -> Self {
        Self::monomial(QExponent::zero(), TPolynomial::one(), order)
    }

    pub fn monomial(q: impl Into<QExponent>, coeff: TPolynomial, order: impl Into<QExponent>) -> Self {
        let mut s = Self::zero(order);
        s.add_term(q.into(), &coeff);
        s
    }

    /// `1 / (1 - q^a t^b)` expanded up to `order`; `a` must be positive.
    pub fn geometric(a: impl Into<QExponent>, b: u32, order: impl Into<QExponent>) -> Self {
        let a = a.into();
        assert!(a.is_positive(), "geometric series needs a positive q-exponent");
        let mut s = Self::zero(order);
        let mut q = QExponent::zero();
        let mut t = 0u32;
        while q <= s.order {
            s.add_term(q, &TPolynomial::monomial(t, 1));
            q += a;
            t += b;
        }
        s
    }

    /// `1 - q^a t^b` truncated to `order`.
    pub fn one_minus(a: impl Into<QExponent>, b: u32, order: impl Into<QExponent>) -> Self {
        let mut s = Self::one(order);
        s.add_term(a.into(), &TPolynomial::monomial(b, -1));
        s
    }

    pub fn order(&self) -> QExponent {
        self.order
    }

    /// Add `coeff * q^exp`; terms beyond the truncation order are dropped.
    pub fn add_term(&mut self, exp: QExponent, coeff: &TPolynomial) {
        if exp > self.order || coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_default();
        *entry = &*entry + coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: impl Into<QExponent>) -> TPolynomial {
        self.coeffs.get(&exp.into()).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QExponent, &TPolynomial)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum, truncated at the smaller of the two orders.
    pub fn add(&self, other: &QSeries) -> QSeries {
        let mut out = QSeries::zero(self.order.min(other.order));
        for (&e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_term(e, c);
        }
        out
    }

    /// Product, truncated at the smaller of the two orders.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let mut out = QSeries::zero(self.order.min(other.order));
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e <= out.order {
                    out.add_term(e, &(ca * cb));
                }
            }
        }
        out
    }

    /// Multiply by `q^shift t^degree`.
    pub fn shifted(&self, shift: impl Into<QExponent>, degree: u32) -> QSeries {
        let shift = shift.into();
        let mut out = QSeries::zero(self.order);
        for (&e, c) in &self.coeffs {
            out.add_term(e + shift, &c.shifted(degree));
        }
        out
    }

    /// Re-truncate at a lower order.
    pub fn truncated(&self, order: impl Into<QExponent>) -> QSeries {
        let mut out = QSeries::zero(self.order.min(order.into()));
        for (&e, c) in &self.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

/// One line per nonzero coefficient: `q^2: 1 + 2*t^2`.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "q^{e}: {c}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermWire<'a> {
    q: String,
    poly: &'a TPolynomial,
}

/// JSON: list of `{"q": "a/b", "poly": [...]}` in ascending exponent.
impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<TermWire<'_>> = self
            .coeffs
            .iter()
            .map(|(e, poly)| TermWire {
                q: e.to_string(),
                poly,
            })
            .collect();
        wire.serialize(s)
    }
}
