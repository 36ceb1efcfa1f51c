//! Fixed-point enumeration, Morse indexes and Poincaré polynomials.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::laurent::{Character, LaurentError, OrderingSpec, QSeries, TPolynomial};
use crate::localization::{
    k_energy, reduced_tangent_character, FixedPointDatum, LocalizationError, ModuliParams, Rational,
    ReducedFixedPointDatum,
};
use crate::partitions::{diagram_tuples, PartitionDiagram};

/// Fixed points of one moduli space, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointEnumeration<T> {
    pub params: ModuliParams,
    pub items: Vec<T>,
}

impl<T> FixedPointEnumeration<T> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.items.iter()
    }
}

impl<T> IntoIterator for FixedPointEnumeration<T> {
    type Item = T;
    type IntoIter = std::vec::IntoIter<T>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

/// A reduced fixed point with its Morse index and component factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexedPoint {
    #[serde(flatten)]
    pub datum: ReducedFixedPointDatum,
    pub index: u64,
    pub factor: TPolynomial,
}

/// Nonemptiness criterion: `n - p k^2 (r-1)/2r ∈ Z` and `n ≥ p k (r-k)/2r`,
/// after twisting `k` into `[0, r)`.
pub fn check_nonempty(params: &ModuliParams) -> bool {
    let r = params.r as i64;
    let k = params.k.rem_euclid(r);
    let normalized = ModuliParams { k, ..*params };
    if !normalized.integrality_holds() {
        return false;
    }
    params.n >= Rational::new(i64::from(params.p) * k * (r - k), 2 * r)
}

/// All twist vectors `(k_1..k_r)` with `Σ k_α = k` and
/// `(p/2r) Σ_{α<β} (k_α-k_β)^2 ≤ n`, in lexicographic order.
pub fn twist_vectors(params: &ModuliParams) -> Vec<Vec<i64>> {
    let n = params.n;
    if n < Rational::zero() {
        return Vec::new();
    }
    let r = params.r;
    // Σ_α (k_α - k/r)^2 ≤ 2n/p bounds every entry around k/r.
    let radius = (2 * n.ceil().to_integer() / i64::from(params.p)).sqrt() + 2;
    let center = params.k.div_euclid(r as i64);
    let lo = center - radius;
    let hi = center + radius + 1;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn go(
        params: &ModuliParams,
        lo: i64,
        hi: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let r = params.r;
        if current.len() + 1 == r {
            let last = params.k - current.iter().sum::<i64>();
            current.push(last);
            if k_energy(params.p, current) <= params.n {
                out.push(current.clone());
            }
            current.pop();
            return;
        }
        for v in lo..=hi {
            current.push(v);
            go(params, lo, hi, current, out);
            current.pop();
        }
    }
    go(params, lo, hi, &mut current, &mut out);
    out
}

/// Remaining box count `n - energy(ks)` when it is a nonnegative integer.
fn box_budget(params: &ModuliParams, ks: &[i64]) -> Option<u32> {
    let rest = params.n - k_energy(params.p, ks);
    if rest.is_integer() && rest >= Rational::zero() {
        rest.to_integer().to_u32()
    } else {
        None
    }
}

/// Full-torus fixed points: twists plus diagram pairs at `p1` and `p2`.
pub fn enumerate_fixed_points(params: &ModuliParams) -> FixedPointEnumeration<FixedPointDatum> {
    let r = params.r;
    let mut items = Vec::new();
    for ks in twist_vectors(params) {
        let Some(boxes) = box_budget(params, &ks) else {
            continue;
        };
        for mut ys in diagram_tuples(2 * r, boxes) {
            let y2 = ys.split_off(r);
            items.push(FixedPointDatum {
                ks: ks.clone(),
                y1: ys,
                y2,
            });
        }
    }
    FixedPointEnumeration {
        params: *params,
        items,
    }
}

/// Fixed components of the one-parameter subgroup.
pub fn enumerate_reduced_fixed_points(params: &ModuliParams) -> FixedPointEnumeration<ReducedFixedPointDatum> {
    let mut items = Vec::new();
    for ks in twist_vectors(params) {
        let Some(boxes) = box_budget(params, &ks) else {
            continue;
        };
        for ys in diagram_tuples(params.r, boxes) {
            items.push(ReducedFixedPointDatum { ks: ks.clone(), ys });
        }
    }
    FixedPointEnumeration {
        params: *params,
        items,
    }
}

/// Number of negative boundary weights contributed by the pair `α < β`.
pub fn l_prime(p: u32, k_alpha: i64, k_beta: i64) -> u64 {
    let p = i64::from(p);
    let d = k_alpha - k_beta;
    let value = if d >= 0 {
        d * (p * (d - 1) + 2) / 2
    } else {
        (-d - 1) * (-p * d + 2) / 2
    };
    value as u64
}

/// Local positive-weight deficit for the pair `α < β`, `diff = k_α - k_β`.
pub fn n_prime(y_alpha: &PartitionDiagram, y_beta: &PartitionDiagram, diff: i64) -> u64 {
    let count = if diff >= 0 {
        y_alpha.columns_longer_than(diff)
    } else {
        y_beta.columns_longer_than(-diff - 1)
    };
    u64::from(count)
}

/// Morse index from the closed-form counts.
pub fn morse_index_closed(params: &ModuliParams, rfp: &ReducedFixedPointDatum) -> u64 {
    let diagonal: u64 = rfp
        .ys
        .iter()
        .map(|y| u64::from(y.size() - y.num_columns()))
        .sum();
    let mut off_diagonal = 0u64;
    for a in 0..params.r {
        for b in a + 1..params.r {
            let (ya, yb) = (&rfp.ys[a], &rfp.ys[b]);
            let diff = rfp.ks[a] - rfp.ks[b];
            off_diagonal += l_prime(params.p, rfp.ks[a], rfp.ks[b]) + u64::from(ya.size() + yb.size())
                - n_prime(ya, yb, diff);
        }
    }
    diagonal + off_diagonal
}

/// Number of strictly negative weights of `x` under `ord`.
pub fn morse_index_from_character(x: &Character, ord: &OrderingSpec) -> Result<u64, LaurentError> {
    let count = x.negative_count(ord)?;
    Ok(count.to_u64().expect("index fits in u64"))
}

/// `Π_i (1 + t^2 + ... + t^{2 m_i})` over the column multiplicities of `y`.
pub fn component_factor(y: &PartitionDiagram) -> TPolynomial {
    y.column_multiplicities()
        .values()
        .map(|&m| TPolynomial::projective_space(m))
        .product()
}

fn indexed(params: &ModuliParams, rfp: ReducedFixedPointDatum) -> IndexedPoint {
    let index = morse_index_closed(params, &rfp);
    let factor = rfp.ys.iter().map(component_factor).product();
    IndexedPoint {
        datum: rfp,
        index,
        factor,
    }
}

pub fn indexed_reduced_fixed_points(params: &ModuliParams) -> Vec<IndexedPoint> {
    enumerate_reduced_fixed_points(params)
        .into_iter()
        .map(|rfp| indexed(params, rfp))
        .collect()
}

/// Poincaré polynomial as a sum over fixed components of
/// `t^{2 index} · Π_α component_factor(Y_α)`. Zero when the space is empty.
pub fn poincare_polynomial(params: &ModuliParams) -> TPolynomial {
    enumerate_reduced_fixed_points(params)
        .items
        .into_par_iter()
        .map(|rfp| {
            let point = indexed(params, rfp);
            point.factor.shifted(2 * point.index as u32)
        })
        .reduce(TPolynomial::zero, |a, b| &a + &b)
}

/// Same sum as [`poincare_polynomial`] with each index read off the reduced
/// tangent character instead of the closed form.
pub fn poincare_polynomial_from_characters(params: &ModuliParams) -> Result<TPolynomial, LocalizationError> {
    let ord = OrderingSpec::main(params.r);
    let mut total = TPolynomial::zero();
    for rfp in enumerate_reduced_fixed_points(params) {
        let x = reduced_tangent_character(params, &rfp)?;
        let index = morse_index_from_character(&x, &ord)?;
        let factor: TPolynomial = rfp.ys.iter().map(component_factor).product();
        total = &total + &factor.shifted(2 * index as u32);
    }
    Ok(total)
}

/// Closed-form rank-2, `k = 0` generating series `Σ_n P_t q^n` through
/// `q^order`.
pub fn rank2_series_closed(p: u32, order: u32) -> QSeries {
    let n = i64::from(order);
    let mut prefactor = QSeries::one(n);
    for i in 1..=order {
        let q = i64::from(i);
        prefactor = prefactor
            .mul(&QSeries::geometric(q, 4 * i, n))
            .mul(&QSeries::geometric(q, 4 * i - 2, n))
            .mul(&QSeries::geometric(q, 4 * i - 2, n))
            .mul(&QSeries::geometric(q, 4 * i - 4, n));
    }

    // Π_{i=1}^{len} (1 - q^i t^{4i-4}) / (1 - q^i t^{4i})
    let ratio_product = |len: u32| {
        (1..=len).fold(QSeries::one(n), |acc, i| {
            acc.mul(&QSeries::one_minus(i64::from(i), 4 * i - 4, n))
                .mul(&QSeries::geometric(i64::from(i), 4 * i, n))
        })
    };

    let p64 = i64::from(p);
    let mut bracket = QSeries::zero(n);
    let mut h = 0i64;
    while p64 * h * h <= n {
        let q_shift = p64 * h * h;
        let t_even = 2 * h * (p64 * (2 * h - 1) + 2);
        bracket = bracket.add(&ratio_product(2 * h as u32).shifted(q_shift, t_even as u32));
        if h > 0 {
            let t_odd = 2 * (2 * h - 1) * (p64 * h + 1);
            bracket = bracket.add(&ratio_product(2 * h as u32 - 1).shifted(q_shift, t_odd as u32));
        }
        h += 1;
    }
    prefactor.mul(&bracket)
}

/// `Σ_{n ≤ order} P_t(M^p(2,0,n)) q^n` from fixed-point sums.
pub fn rank2_series_direct(p: u32, order: u32) -> QSeries {
    let mut out = QSeries::zero(i64::from(order));
    for n in 0..=order {
        let params = ModuliParams::integral(p, 2, 0, i64::from(n)).expect("valid rank-2 parameters");
        out.add_term(Rational::from_integer(i64::from(n)), &poincare_polynomial(&params));
    }
    out
}

/// Rank-1 series `Σ_n P_t(M^p(1,0,n)) q^n`, i.e. the Hilbert schemes of points.
pub fn hilbert_series_r1(p: u32, order: u32) -> QSeries {
    let mut out = QSeries::zero(i64::from(order));
    for n in 0..=order {
        let params = ModuliParams::integral(p, 1, 0, i64::from(n)).expect("valid rank-1 parameters");
        out.add_term(Rational::from_integer(i64::from(n)), &poincare_polynomial(&params));
    }
    out
}

/// Euler characteristic check value: `P_t(1)`.
pub fn euler_characteristic(params: &ModuliParams) -> BigInt {
    poincare_polynomial(params).eval_at_one()
}
