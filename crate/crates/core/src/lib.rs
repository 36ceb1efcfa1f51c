//! Exact torus-localization computations for moduli spaces of framed
//! torsion-free sheaves on Hirzebruch surfaces `F_p`.
//!
//! - [`partitions`]: Young diagrams, arm/leg statistics, 2-colored diagrams.
//! - [`laurent`]: integer Laurent characters, `t`-polynomials, `q`-series.
//! - [`localization`]: tangent characters at torus fixed points.
//! - [`counting`]: fixed-point enumeration, Morse indexes, Poincaré polynomials
//!   and generating series.
//! - [`ale`]: independent `A_1` ALE computation used as a cross-check for `p = 2`.

pub mod ale;
pub mod counting;
pub mod laurent;
pub mod localization;
pub mod partitions;

pub use ale::{ale_poincare, ale_poincare_with, ale_tangent_character, enumerate_colored_fixed_points, ColoredFixedPointDatum};
pub use counting::{
    check_nonempty, enumerate_fixed_points, enumerate_reduced_fixed_points, hilbert_series_r1,
    indexed_reduced_fixed_points, morse_index_closed, morse_index_from_character, poincare_polynomial,
    poincare_polynomial_from_characters, rank2_series_closed, rank2_series_direct, IndexedPoint,
};
pub use laurent::{Character, ExponentVector, OrderingSpec, QSeries, TPolynomial};
pub use localization::{
    reduced_tangent_character, tangent_character, FixedPointDatum, ModuliParams, Rational,
    ReducedFixedPointDatum,
};
pub use partitions::{ColoredDiagram, PartitionDiagram};
