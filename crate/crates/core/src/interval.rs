//! Intervals of the rational line with open or closed ends.

use std::fmt;

use num_traits::Zero;

use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    pub lower: Scalar,
    pub upper: Scalar,
    pub lower_closed: bool,
    pub upper_closed: bool,
    pub empty: bool,
}

impl RationalInterval {
    /// Normalizes to the empty interval when the bounds admit no point.
    pub fn new(lower: Scalar, lower_closed: bool, upper: Scalar, upper_closed: bool) -> Self {
        let empty = lower > upper || (lower == upper && !(lower_closed && upper_closed));
        if empty {
            Self::empty()
        } else {
            Self {
                lower,
                upper,
                lower_closed,
                upper_closed,
                empty: false,
            }
        }
    }

    pub fn empty() -> Self {
        Self {
            lower: Scalar::zero(),
            upper: Scalar::zero(),
            lower_closed: false,
            upper_closed: false,
            empty: true,
        }
    }

    pub fn closed(lower: Scalar, upper: Scalar) -> Self {
        Self::new(lower, true, upper, true)
    }

    pub fn open(lower: Scalar, upper: Scalar) -> Self {
        Self::new(lower, false, upper, false)
    }

    /// `(0, 1)`, the admissible values of `p(t_h)`.
    pub fn unit_open() -> Self {
        Self::open(scalar::zero(), scalar::one())
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        if self.empty {
            return false;
        }
        let above = if self.lower_closed {
            *x >= self.lower
        } else {
            *x > self.lower
        };
        let below = if self.upper_closed {
            *x <= self.upper
        } else {
            *x < self.upper
        };
        above && below
    }

    pub fn intersect(&self, other: &Self) -> Self {
        if self.empty || other.empty {
            return Self::empty();
        }
        let (lower, lower_closed) = match self.lower.cmp(&other.lower) {
            std::cmp::Ordering::Less => (other.lower.clone(), other.lower_closed),
            std::cmp::Ordering::Greater => (self.lower.clone(), self.lower_closed),
            std::cmp::Ordering::Equal => {
                (self.lower.clone(), self.lower_closed && other.lower_closed)
            }
        };
        let (upper, upper_closed) = match self.upper.cmp(&other.upper) {
            std::cmp::Ordering::Less => (self.upper.clone(), self.upper_closed),
            std::cmp::Ordering::Greater => (other.upper.clone(), other.upper_closed),
            std::cmp::Ordering::Equal => {
                (self.upper.clone(), self.upper_closed && other.upper_closed)
            }
        };
        Self::new(lower, lower_closed, upper, upper_closed)
    }

    /// `self \ other` as at most two disjoint pieces.
    pub fn subtract(&self, other: &Self) -> Vec<Self> {
        if self.empty {
            return Vec::new();
        }
        if other.empty {
            return vec![self.clone()];
        }
        let left = Self::new(
            self.lower.clone(),
            self.lower_closed,
            other.lower.clone(),
            !other.lower_closed,
        )
        .intersect(self);
        let right = Self::new(
            other.upper.clone(),
            !other.upper_closed,
            self.upper.clone(),
            self.upper_closed,
        )
        .intersect(self);
        [left, right].into_iter().filter(|i| !i.empty).collect()
    }

    /// `self` minus every interval in `others`.
    pub fn difference(&self, others: &[&Self]) -> Vec<Self> {
        let mut pieces = vec![self.clone()];
        for other in others {
            pieces = pieces.iter().flat_map(|p| p.subtract(other)).collect();
        }
        pieces
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        !self.intersect(other).empty
    }

    /// A point of the interval: the midpoint, or the single point of a
    /// degenerate one.
    pub fn sample_point(&self) -> Option<Scalar> {
        if self.empty {
            None
        } else {
            Some(scalar::midpoint(&self.lower, &self.upper))
        }
    }

    fn render(&self, bound: impl Fn(&Scalar) -> String) -> String {
        if self.empty {
            return "empty".to_string();
        }
        format!(
            "{}{}, {}{}",
            if self.lower_closed { '[' } else { '(' },
            bound(&self.lower),
            bound(&self.upper),
            if self.upper_closed { ']' } else { ')' }
        )
    }

    /// Bounds rounded half-up to `places` decimals. Integer bounds stay bare.
    pub fn to_decimal_string(&self, places: u32) -> String {
        self.render(|x| {
            if x.is_integer() {
                x.numer().to_string()
            } else {
                scalar::round_half_up(x, places)
            }
        })
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(scalar::fraction))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn membership_respects_brackets() {
        let i = RationalInterval::new(ratio(11, 19), true, int(1), false);
        assert!(i.contains(&ratio(11, 19)));
        assert!(!i.contains(&int(1)));
        assert!(!i.contains(&ratio(10, 19)));
        assert_eq!(i.to_string(), "[11/19, 1)");
        assert_eq!(i.to_decimal_string(6), "[0.578947, 1)");
    }

    #[test]
    fn degenerate_bounds_normalize() {
        assert!(RationalInterval::new(int(1), true, int(1), false).is_empty());
        assert!(RationalInterval::closed(int(2), int(1)).is_empty());
        let point = RationalInterval::closed(half_(), half_());
        assert!(point.contains(&half_()));
        assert_eq!(point.sample_point(), Some(half_()));
        assert_eq!(RationalInterval::empty().to_string(), "empty");
    }

    fn half_() -> Scalar {
        ratio(1, 2)
    }

    #[test]
    fn intersection_keeps_the_tighter_bracket() {
        let a = RationalInterval::new(ratio(5, 49), true, ratio(31, 39), true);
        let b = RationalInterval::new(ratio(11, 19), true, int(1), false);
        assert_eq!(
            a.intersect(&b),
            RationalInterval::closed(ratio(11, 19), ratio(31, 39))
        );
        let c = RationalInterval::new(int(0), false, ratio(5, 19), true);
        let d = RationalInterval::new(ratio(5, 19), false, int(1), false);
        assert!(c.intersect(&d).is_empty());
    }

    #[test]
    fn subtraction_flips_brackets() {
        let lh = RationalInterval::closed(ratio(5, 49), ratio(31, 39));
        let ll = RationalInterval::new(int(0), false, ratio(5, 19), true);
        let hh = RationalInterval::new(ratio(11, 19), true, int(1), false);
        let left = lh.difference(&[&ll, &hh]);
        assert_eq!(
            left,
            vec![RationalInterval::open(ratio(5, 19), ratio(11, 19))]
        );

        let unit = RationalInterval::unit_open();
        let ll_only = ll.difference(&[&lh, &hh]);
        assert_eq!(
            ll_only,
            vec![RationalInterval::new(int(0), false, ratio(5, 49), false)]
        );
        assert_eq!(
            unit.subtract(&RationalInterval::empty()),
            vec![unit.clone()]
        );
        assert!(unit.subtract(&unit).is_empty());
    }
}
