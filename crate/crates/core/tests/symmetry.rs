use std::collections::BTreeSet;

use framed_moduli::localization::Rational;
use framed_moduli::*;

fn swap_t(x: &Character) -> Character {
    x.substitute([[0, 1], [1, 0]])
}

fn swap_e(x: &Character) -> Character {
    let terms: Vec<_> = x
        .terms()
        .map(|(e, c)| {
            let mut exps = e.e.clone();
            exps.reverse();
            (ExponentVector::new(e.t1, e.t2, exps), c.clone())
        })
        .collect();
    Character::from_terms(2, terms).unwrap()
}

#[test]
fn transposition_and_reordering_close_the_colored_fixed_points() {
    for n in 1..=3 {
        let points = enumerate_colored_fixed_points(2, Rational::from_integer(n));
        let set: BTreeSet<_> = points.iter().cloned().collect();
        assert_eq!(set.len(), points.len());
        for fp in &points {
            let x = ale_tangent_character(fp).unwrap();

            let transposed = fp.transpose();
            assert!(set.contains(&transposed));
            assert_eq!(ale_tangent_character(&transposed).unwrap(), swap_t(&x));

            let mut tableaux = fp.tableaux.clone();
            tableaux.reverse();
            let reordered = ColoredFixedPointDatum { tableaux };
            assert!(set.contains(&reordered));
            assert_eq!(ale_tangent_character(&reordered).unwrap(), swap_e(&x));
        }
    }
}

#[test]
fn oracle_agrees_in_rank_one() {
    for n in 0..=4 {
        let main = poincare_polynomial(&ModuliParams::integral(2, 1, 0, n).unwrap());
        assert_eq!(ale_poincare(1, Rational::from_integer(n)), main, "n = {n}");
    }
}

#[test]
fn fixed_point_json_round_trip_preserves_characters() {
    let params = ModuliParams::integral(2, 2, 0, 2).unwrap();
    for fp in enumerate_fixed_points(&params) {
        let text = serde_json::to_string(&fp).unwrap();
        let back: FixedPointDatum = serde_json::from_str(&text).unwrap();
        let a = tangent_character(&params, &fp).unwrap();
        let b = tangent_character(&params, &back).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn poincare_polynomials_have_even_nonnegative_terms() {
    for p in 1..=3 {
        for n in 0..=3 {
            for r in 1..=3 {
                let poly = poincare_polynomial(&ModuliParams::integral(p, r, 0, n).unwrap());
                assert!(poly.has_only_even_degrees());
                assert!(poly.has_nonnegative_coefficients());
                // real dimension 4rn bounds the top degree
                if let Some(top) = poly.degree() {
                    assert!(i64::from(top) <= 4 * r as i64 * n, "p={p} r={r} n={n}");
                }
            }
        }
    }
}
