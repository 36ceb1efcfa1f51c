use std::cmp::Ordering;

use super::{ExponentVector, LaurentError};

/// A torus generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    T1,
    T2,
    /// Framing generator, 0-based.
    E(usize),
}

/// Lexicographic priority of generators used to decide the sign of a weight.
///
/// Each key is a group of variables whose exponents are summed; a monomial is
/// negative when the first key with nonzero summed exponent is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingSpec {
    rank: usize,
    keys: Vec<Vec<Variable>>,
}

impl OrderingSpec {
    pub fn new(rank: usize, keys: Vec<Vec<Variable>>) -> Result<Self, LaurentError> {
        let mut seen_t1 = 0;
        let mut seen_t2 = 0;
        let mut seen_e = vec![0usize; rank];
        for var in keys.iter().flatten() {
            match *var {
                Variable::T1 => seen_t1 += 1,
                Variable::T2 => seen_t2 += 1,
                Variable::E(i) if i < rank => seen_e[i] += 1,
                Variable::E(i) => {
                    return Err(LaurentError::InvalidOrdering(format!(
                        "e{} out of range for rank {rank}",
                        i + 1
                    )))
                }
            }
        }
        if keys.iter().any(Vec::is_empty) {
            return Err(LaurentError::InvalidOrdering("empty key".into()));
        }
        if seen_t1 != 1 || seen_t2 != 1 || seen_e.iter().any(|&c| c != 1) {
            return Err(LaurentError::InvalidOrdering(
                "every variable must appear in exactly one key".into(),
            ));
        }
        Ok(OrderingSpec { rank, keys })
    }

    /// `t1 + t2` grouped first, then `e1 > e2 > ... > er`.
    pub fn main(rank: usize) -> Self {
        let mut keys = vec![vec![Variable::T1, Variable::T2]];
        keys.extend((0..rank).map(|i| vec![Variable::E(i)]));
        OrderingSpec { rank, keys }
    }

    /// `t2 >> e1 > ... > er >> t1`.
    pub fn ale(rank: usize) -> Self {
        let mut keys = vec![vec![Variable::T2]];
        keys.extend((0..rank).map(|i| vec![Variable::E(i)]));
        keys.push(vec![Variable::T1]);
        OrderingSpec { rank, keys }
    }

    /// Build from single-variable keys in priority order.
    pub fn from_priority(rank: usize, vars: &[Variable]) -> Result<Self, LaurentError> {
        Self::new(rank, vars.iter().map(|&v| vec![v]).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn keys(&self) -> &[Vec<Variable>] {
        &self.keys
    }

    /// Sign of a monomial: `Less` for negative, `Equal` for zero weight.
    pub fn sign(&self, exp: &ExponentVector) -> Ordering {
        for key in &self.keys {
            let weight: i64 = key
                .iter()
                .map(|v| match *v {
                    Variable::T1 => exp.t1,
                    Variable::T2 => exp.t2,
                    Variable::E(i) => exp.e.get(i).copied().unwrap_or(0),
                })
                .sum();
            match weight.cmp(&0) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(OrderingSpec::from_priority(1, &[Variable::T1, Variable::T2, Variable::E(0)]).is_ok());
        assert!(OrderingSpec::from_priority(1, &[Variable::T1, Variable::E(0)]).is_err());
        assert!(OrderingSpec::from_priority(1, &[Variable::T1, Variable::T2, Variable::E(1)]).is_err());
        assert!(OrderingSpec::from_priority(
            1,
            &[Variable::T1, Variable::T1, Variable::T2, Variable::E(0)]
        )
        .is_err());
        assert!(OrderingSpec::new(1, vec![vec![], vec![Variable::T1, Variable::T2, Variable::E(0)]]).is_err());
    }

    #[test]
    fn grouped_key_sums_t_exponents() {
        let ord = OrderingSpec::main(2);
        // t1 t2^-1 e1: t-sum zero, e1 positive
        assert_eq!(ord.sign(&ExponentVector::new(1, -1, vec![1, -1])), Ordering::Greater);
        assert_eq!(ord.sign(&ExponentVector::new(1, -2, vec![1, -1])), Ordering::Less);
        assert_eq!(ord.sign(&ExponentVector::new(1, -1, vec![0, 0])), Ordering::Equal);
        assert_eq!(ord.sign(&ExponentVector::new(0, 0, vec![-1, 1])), Ordering::Less);
    }

    #[test]
    fn ale_ordering_checks_t2_first() {
        let ord = OrderingSpec::ale(2);
        assert_eq!(ord.sign(&ExponentVector::new(5, -1, vec![1, -1])), Ordering::Less);
        assert_eq!(ord.sign(&ExponentVector::new(-5, 0, vec![1, -1])), Ordering::Greater);
        assert_eq!(ord.sign(&ExponentVector::new(-5, 0, vec![0, 0])), Ordering::Less);
    }
}
