//! Young diagram combinatorics.
//!
//! A diagram is stored as its weakly decreasing row lengths. Boxes are
//! addressed as `(c, r)`: `c` is the 1-based column index and `r` the 1-based
//! height inside that column, counted from the corner upward. With this
//! convention the arm of a box counts the boxes above it and the leg counts
//! the boxes to its right.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("row lengths must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("row lengths must be positive, got {0:?}")]
    ZeroRow(Vec<u32>),
    #[error("color must be 0 or 1, got {0}")]
    BadColor(u8),
}

/// A Young diagram given by its row lengths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct PartitionDiagram {
    rows: Vec<u32>,
}

/// A box position: column `c` and height `r` within the column, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxCoord {
    pub c: u32,
    pub r: u32,
}

impl BoxCoord {
    pub fn new(c: u32, r: u32) -> Self {
        BoxCoord { c, r }
    }
}

impl PartitionDiagram {
    pub fn new(rows: Vec<u32>) -> Result<Self, PartitionError> {
        if rows.contains(&0) {
            return Err(PartitionError::ZeroRow(rows));
        }
        if !rows.windows(2).all(|w| w[0] >= w[1]) {
            return Err(PartitionError::NotDecreasing(rows));
        }
        Ok(PartitionDiagram { rows })
    }

    pub fn empty() -> Self {
        PartitionDiagram { rows: Vec::new() }
    }

    /// A single column with `height` boxes.
    pub fn column(height: u32) -> Self {
        PartitionDiagram {
            rows: vec![1; height as usize],
        }
    }

    /// A single row with `width` boxes.
    pub fn row(width: u32) -> Self {
        if width == 0 {
            return Self::empty();
        }
        PartitionDiagram { rows: vec![width] }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Length of row `r` (1-based); zero beyond the diagram.
    pub fn row_length(&self, r: u32) -> u32 {
        if r == 0 {
            return 0;
        }
        self.rows.get(r as usize - 1).copied().unwrap_or(0)
    }

    /// Length of column `c` (1-based); zero beyond the diagram.
    pub fn column_length(&self, c: u32) -> u32 {
        if c == 0 {
            return 0;
        }
        self.rows.iter().take_while(|&&w| w >= c).count() as u32
    }

    pub fn num_rows(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn num_columns(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Column lengths, left to right.
    pub fn column_lengths(&self) -> Vec<u32> {
        (1..=self.num_columns()).map(|c| self.column_length(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        PartitionDiagram {
            rows: self.column_lengths(),
        }
    }

    pub fn contains(&self, s: BoxCoord) -> bool {
        s.c >= 1 && s.r >= 1 && s.r <= self.column_length(s.c)
    }

    /// All boxes, column by column from the left, bottom to top.
    pub fn boxes(&self) -> impl Iterator<Item = BoxCoord> + '_ {
        (1..=self.num_columns())
            .flat_map(move |c| (1..=self.column_length(c)).map(move |r| BoxCoord { c, r }))
    }

    /// `m_i`: the number of columns of length exactly `i`.
    pub fn column_multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for len in self.column_lengths() {
            *out.entry(len).or_insert(0) += 1;
        }
        out
    }

    /// Number of columns strictly longer than `bound`.
    pub fn columns_longer_than(&self, bound: i64) -> u32 {
        self.column_lengths()
            .into_iter()
            .filter(|&len| i64::from(len) > bound)
            .count() as u32
    }
}

impl TryFrom<Vec<u32>> for PartitionDiagram {
    type Error = PartitionError;

    fn try_from(rows: Vec<u32>) -> Result<Self, Self::Error> {
        PartitionDiagram::new(rows)
    }
}

impl From<PartitionDiagram> for Vec<u32> {
    fn from(y: PartitionDiagram) -> Self {
        y.rows
    }
}

impl fmt::Display for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "[")?;
        for (i, w) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// Arm of `s` measured in `y_meas`: `column_length(y_meas, s.c) - s.r`.
/// Negative when `s` lies above the measured column.
pub fn relative_arm(y_meas: &PartitionDiagram, s: BoxCoord) -> i64 {
    i64::from(y_meas.column_length(s.c)) - i64::from(s.r)
}

/// Leg of `s` measured in `y_meas`: `row_length(y_meas, s.r) - s.c`.
pub fn relative_leg(y_meas: &PartitionDiagram, s: BoxCoord) -> i64 {
    i64::from(y_meas.row_length(s.r)) - i64::from(s.c)
}

/// All partitions of `n` in decreasing lexicographic order of their rows.
pub fn enumerate_partitions(n: u32) -> Vec<PartitionDiagram> {
    fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<PartitionDiagram>) {
        if remaining == 0 {
            out.push(PartitionDiagram {
                rows: prefix.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `count`-tuples of diagrams whose sizes add up to `total`.
///
/// Ordered by the size composition (first entry largest first), then by the
/// per-slot enumeration order of [`enumerate_partitions`].
pub fn diagram_tuples(count: usize, total: u32) -> Vec<Vec<PartitionDiagram>> {
    let tables: Vec<Vec<PartitionDiagram>> = (0..=total).map(enumerate_partitions).collect();
    let mut out = Vec::new();
    if count == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = Vec::with_capacity(count);
    tuples_rec(&tables, count, total, &mut current, &mut out);
    out
}

fn tuples_rec(
    tables: &[Vec<PartitionDiagram>],
    slots: usize,
    remaining: u32,
    current: &mut Vec<PartitionDiagram>,
    out: &mut Vec<Vec<PartitionDiagram>>,
) {
    if slots == 1 {
        for y in &tables[remaining as usize] {
            current.push(y.clone());
            out.push(current.clone());
            current.pop();
        }
        return;
    }
    for size in (0..=remaining).rev() {
        for y in &tables[size as usize] {
            current.push(y.clone());
            tuples_rec(tables, slots - 1, remaining - size, current, out);
            current.pop();
        }
    }
}

/// A diagram whose boxes are checkerboard-colored 0/1, with the corner box
/// colored `eps`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoredWire", into = "ColoredWire")]
pub struct ColoredDiagram {
    diagram: PartitionDiagram,
    eps: u8,
}

#[derive(Serialize, Deserialize)]
struct ColoredWire {
    rows: PartitionDiagram,
    eps: u8,
}

impl TryFrom<ColoredWire> for ColoredDiagram {
    type Error = PartitionError;

    fn try_from(w: ColoredWire) -> Result<Self, Self::Error> {
        ColoredDiagram::new(w.rows, w.eps)
    }
}

impl From<ColoredDiagram> for ColoredWire {
    fn from(d: ColoredDiagram) -> Self {
        ColoredWire {
            rows: d.diagram,
            eps: d.eps,
        }
    }
}

impl ColoredDiagram {
    pub fn new(diagram: PartitionDiagram, eps: u8) -> Result<Self, PartitionError> {
        if eps > 1 {
            return Err(PartitionError::BadColor(eps));
        }
        Ok(ColoredDiagram { diagram, eps })
    }

    pub fn diagram(&self) -> &PartitionDiagram {
        &self.diagram
    }

    pub fn eps(&self) -> u8 {
        self.eps
    }

    pub fn color_of(&self, s: BoxCoord) -> u8 {
        ((u32::from(self.eps) + s.c + s.r) % 2) as u8
    }

    pub fn transpose(&self) -> Self {
        ColoredDiagram {
            diagram: self.diagram.transpose(),
            eps: self.eps,
        }
    }

    /// `(k0, k1)`: number of boxes of color 0 and of color 1.
    pub fn color_counts(&self) -> (u32, u32) {
        let ones = self
            .diagram
            .boxes()
            .filter(|&s| self.color_of(s) == 1)
            .count() as u32;
        (self.diagram.size() - ones, ones)
    }
}

impl fmt::Display for ColoredDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.diagram, self.eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(rows: &[u32]) -> PartitionDiagram {
        PartitionDiagram::new(rows.to_vec()).unwrap()
    }

    /// Brute-force partition count by counting multisets of parts.
    fn count_partitions_brute(n: u32) -> usize {
        fn go(n: u32, max: u32) -> usize {
            if n == 0 {
                return 1;
            }
            (1..=n.min(max)).map(|k| go(n - k, k)).sum()
        }
        go(n, n)
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_partitions(0), vec![PartitionDiagram::empty()]);
        assert_eq!(enumerate_partitions(2), vec![y(&[2]), y(&[1, 1])]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(
            enumerate_partitions(4),
            vec![y(&[4]), y(&[3, 1]), y(&[2, 2]), y(&[2, 1, 1]), y(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn enumeration_counts_and_uniqueness() {
        for n in 0..=12 {
            let all = enumerate_partitions(n);
            assert_eq!(all.len(), count_partitions_brute(n), "n = {n}");
            assert!(all.windows(2).all(|w| w[0].rows > w[1].rows), "order at n = {n}");
            assert!(all.iter().all(|d| d.size() == n));
        }
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(PartitionDiagram::new(vec![1, 2]).is_err());
        assert!(PartitionDiagram::new(vec![2, 0]).is_err());
        assert!(ColoredDiagram::new(y(&[1]), 2).is_err());
    }

    #[test]
    fn multiplicities() {
        assert!(PartitionDiagram::empty().column_multiplicities().is_empty());
        assert_eq!(
            y(&[2, 1]).column_multiplicities(),
            BTreeMap::from([(1, 1), (2, 1)])
        );
        assert_eq!(y(&[2]).column_multiplicities(), BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn arm_and_leg_examples() {
        assert_eq!(relative_arm(&y(&[1, 1]), BoxCoord::new(1, 1)), 1);
        assert_eq!(relative_arm(&PartitionDiagram::empty(), BoxCoord::new(1, 1)), -1);
        assert_eq!(relative_arm(&y(&[2, 2]), BoxCoord::new(2, 1)), 1);
        assert_eq!(relative_leg(&y(&[2]), BoxCoord::new(1, 1)), 1);
        assert_eq!(relative_leg(&PartitionDiagram::empty(), BoxCoord::new(1, 2)), -1);
        assert_eq!(relative_leg(&y(&[3, 1]), BoxCoord::new(1, 2)), 0);
    }

    #[test]
    fn color_count_examples() {
        let empty = ColoredDiagram::new(PartitionDiagram::empty(), 0).unwrap();
        assert_eq!(empty.color_counts(), (0, 0));
        let col = ColoredDiagram::new(PartitionDiagram::column(2), 0).unwrap();
        assert_eq!(col.color_counts(), (1, 1));
        let row = ColoredDiagram::new(PartitionDiagram::row(2), 1).unwrap();
        assert_eq!(row.color_counts(), (1, 1));
        assert_eq!(row.color_of(BoxCoord::new(1, 1)), 1);
        assert_eq!(row.color_of(BoxCoord::new(2, 1)), 0);
    }

    #[test]
    fn exhaustive_statistics_up_to_twelve() {
        for n in 0..=12 {
            for d in enumerate_partitions(n) {
                let boxes: Vec<_> = d.boxes().collect();
                assert_eq!(boxes.len() as u32, d.size());
                let weighted: u32 = d.column_multiplicities().iter().map(|(i, m)| i * m).sum();
                assert_eq!(weighted, d.size());
                let cols: u32 = d.column_multiplicities().values().sum();
                assert_eq!(cols, d.num_columns());
                let zero_arm = boxes.iter().filter(|&&s| relative_arm(&d, s) == 0).count();
                assert_eq!(zero_arm as u32, d.num_columns());
                for &s in &boxes {
                    assert!(d.contains(s));
                    assert!(relative_arm(&d, s) >= 0);
                    assert!(relative_leg(&d, s) >= 0);
                }
            }
        }
    }

    #[test]
    fn tuples_cover_all_size_splits() {
        let tuples = diagram_tuples(2, 3);
        // p(3)p(0) + p(2)p(1) + p(1)p(2) + p(0)p(3)
        assert_eq!(tuples.len(), 3 + 2 + 2 + 3);
        let mut sorted = tuples.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), tuples.len());
        assert_eq!(diagram_tuples(0, 0), vec![Vec::<PartitionDiagram>::new()]);
        assert!(diagram_tuples(0, 1).is_empty());
    }

    fn arb_diagram() -> impl Strategy<Value = PartitionDiagram> {
        proptest::collection::vec(1u32..6, 0..6).prop_map(|mut rows| {
            rows.sort_unstable_by(|a, b| b.cmp(a));
            PartitionDiagram::new(rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn transpose_is_involution(d in arb_diagram()) {
            prop_assert_eq!(d.transpose().transpose(), d);
        }

        #[test]
        fn transpose_swaps_arm_and_leg(d in arb_diagram(), c in 1u32..8, r in 1u32..8) {
            let t = d.transpose();
            prop_assert_eq!(relative_arm(&d, BoxCoord::new(c, r)), relative_leg(&t, BoxCoord::new(r, c)));
            prop_assert_eq!(relative_leg(&d, BoxCoord::new(c, r)), relative_arm(&t, BoxCoord::new(r, c)));
        }

        #[test]
        fn recoloring_swaps_counts(d in arb_diagram(), eps in 0u8..2) {
            let a = ColoredDiagram::new(d.clone(), eps).unwrap();
            let b = ColoredDiagram::new(d.clone(), 1 - eps).unwrap();
            let (k0, k1) = a.color_counts();
            prop_assert_eq!(b.color_counts(), (k1, k0));
            prop_assert_eq!(k0 + k1, d.size());
            prop_assert!((i64::from(k0) - i64::from(k1)).abs() <= i64::from(d.num_columns()));
        }

        #[test]
        fn json_round_trip(d in arb_diagram(), eps in 0u8..2) {
            let col = ColoredDiagram::new(d, eps).unwrap();
            let text = serde_json::to_string(&col).unwrap();
            let back: ColoredDiagram = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, col);
        }
    }

    #[test]
    fn json_shapes() {
        assert_eq!(serde_json::to_string(&y(&[3, 1, 1])).unwrap(), "[3,1,1]");
        let col = ColoredDiagram::new(y(&[2]), 0).unwrap();
        assert_eq!(serde_json::to_string(&col).unwrap(), r#"{"rows":[2],"eps":0}"#);
        assert!(serde_json::from_str::<PartitionDiagram>("[1,2]").is_err());
    }
}
