//! Height-indexed dynamic programme for weighted lattice paths.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// Per-step weights. A zero weight removes the step from the alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepWeights {
    pub up: Rational,
    pub flat: Rational,
    pub down: Rational,
}

impl StepWeights {
    /// Unit weights on `U` and `D`: the programme counts paths.
    pub fn counting_updown() -> Self {
        StepWeights {
            up: ratio(1, 1),
            flat: Rational::zero(),
            down: ratio(1, 1),
        }
    }

    /// Fair ±1 steps.
    pub fn fair_updown() -> Self {
        StepWeights {
            up: ratio(1, 2),
            flat: Rational::zero(),
            down: ratio(1, 2),
        }
    }

    /// Difference of two lazy racers: `U`, `D` with 1/4 each, `H` with 1/2.
    pub fn lazy_motzkin() -> Self {
        StepWeights {
            up: ratio(1, 4),
            flat: ratio(1, 2),
            down: ratio(1, 4),
        }
    }
}

/// Total weight of length-`len` paths from height 0, optionally restricted
/// to those never below zero and/or ending at `end`.
pub fn count_paths_dp(len: usize, weights: &StepWeights, nonneg: bool, end: Option<i64>) -> Result<Rational> {
    if [&weights.up, &weights.flat, &weights.down].iter().any(|w| w.is_negative()) {
        return Err(Error::domain("step weights must be nonnegative"));
    }
    let offset = len as i64;
    let width = 2 * len + 1;
    let mut layer = vec![Rational::zero(); width];
    layer[offset as usize] = ratio(1, 1);
    for _ in 0..len {
        let mut next = vec![Rational::zero(); width];
        for (idx, w) in layer.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (delta, sw) in [(1i64, &weights.up), (0, &weights.flat), (-1, &weights.down)] {
                if sw.is_zero() {
                    continue;
                }
                let h = idx as i64 + delta;
                if nonneg && h < offset {
                    continue;
                }
                next[h as usize] += w * sw;
            }
        }
        layer = next;
    }
    Ok(match end {
        Some(t) => {
            let idx = offset + t;
            if idx < 0 || idx as usize >= width {
                Rational::zero()
            } else {
                layer[idx as usize].clone()
            }
        }
        None => layer.into_iter().sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn dp_examples() {
        let c = StepWeights::counting_updown();
        assert_eq!(count_paths_dp(4, &c, true, None).unwrap(), int(6));
        assert_eq!(count_paths_dp(2, &StepWeights::lazy_motzkin(), true, None).unwrap(), ratio(5, 8));
        assert_eq!(count_paths_dp(4, &c, true, Some(0)).unwrap(), int(2));
    }

    #[test]
    fn unconstrained_totals() {
        let c = StepWeights::counting_updown();
        assert_eq!(count_paths_dp(5, &c, false, None).unwrap(), int(32));
        assert_eq!(count_paths_dp(6, &c, false, Some(0)).unwrap(), int(20));
        assert_eq!(count_paths_dp(6, &c, false, Some(9)).unwrap(), int(0));
        assert_eq!(count_paths_dp(0, &c, true, None).unwrap(), int(1));
        assert_eq!(count_paths_dp(7, &StepWeights::lazy_motzkin(), false, None).unwrap(), int(1));
    }

    #[test]
    fn negative_weight_rejected() {
        let w = StepWeights { up: int(-1), flat: int(0), down: int(1) };
        assert!(count_paths_dp(2, &w, true, None).is_err());
    }
}
