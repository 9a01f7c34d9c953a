//! Expected net welfare `EW(s, p) = Π_1(s, s, p)` as a quadratic in `p(t_h)`
//! and pairwise dominance between strategies.
//!
//! `EW` is the per-employee figure, half of the expected total surplus.

use std::cmp::Ordering;

use crate::error::Result;
use crate::interval::RationalInterval;
use crate::model::{
    exante_payoffs, stage_payoffs, AgentType, CostModel, GrandState, PureStrategy, TamModel,
    TypeDistribution,
};
use crate::quadratic::{Quadratic, QuadraticNumber, SignSegment};
use crate::scalar::{int, one, zero, Scalar};
use crate::thresholds::sne_interval;

pub type WelfareCurve = Quadratic;

pub fn welfare_curve(model: &TamModel, cost: &CostModel, s: PureStrategy) -> WelfareCurve {
    let v = |t1: AgentType, t2: AgentType| {
        stage_payoffs(
            model,
            cost,
            GrandState::new(s.effort(t1), s.effort(t2), t1, t2),
        )
        .0
    };
    use AgentType::{High as TH, Low as TL};
    let v_ll = v(TL, TL);
    let cross = v(TL, TH) + v(TH, TL);
    let v_hh = v(TH, TH);
    Quadratic::new(&v_ll - &cross + v_hh, int(-2) * &v_ll + cross, v_ll)
}

pub fn welfare_at(
    model: &TamModel,
    cost: &CostModel,
    s: PureStrategy,
    p: &TypeDistribution,
) -> Scalar {
    exante_payoffs(model, cost, s, s, p).0
}

#[derive(Debug, Clone)]
pub struct DominanceReport {
    pub first: PureStrategy,
    pub second: PureStrategy,
    /// `EW(first) - EW(second)`.
    pub difference: Quadratic,
    pub discriminant: Scalar,
    /// All real roots of the difference, by multiplicity.
    pub roots: Vec<QuadraticNumber>,
    /// Sign pattern over `(0, 1)`.
    pub segments: Vec<SignSegment>,
    /// Where both strategies are SNEs.
    pub overlap: RationalInterval,
    pub overlap_segments: Vec<SignSegment>,
}

impl DominanceReport {
    pub fn identical(&self) -> bool {
        self.difference.is_zero()
    }

    pub fn roots_in_unit(&self) -> Vec<&QuadraticNumber> {
        let mut out: Vec<&QuadraticNumber> = Vec::new();
        for r in &self.roots {
            let inside = r.cmp_rational(&zero()) == Ordering::Greater
                && r.cmp_rational(&one()) == Ordering::Less;
            if inside && out.last() != Some(&r) {
                out.push(r);
            }
        }
        out
    }

    /// True when `first` is strictly better on the whole overlap, false when
    /// it is not, `None` when the overlap is empty.
    pub fn first_dominates_on_overlap(&self) -> Option<bool> {
        if self.overlap.is_empty() {
            return None;
        }
        Some(
            self.overlap_segments
                .iter()
                .all(|s| s.sign == Ordering::Greater),
        )
    }

    /// Pieces of the overlap where `first` is strictly better.
    pub fn first_better_on_overlap(&self) -> Vec<&SignSegment> {
        self.overlap_segments
            .iter()
            .filter(|s| s.sign == Ordering::Greater)
            .collect()
    }

    pub fn second_better_on_overlap(&self) -> Vec<&SignSegment> {
        self.overlap_segments
            .iter()
            .filter(|s| s.sign == Ordering::Less)
            .collect()
    }
}

pub fn welfare_dominance(
    model: &TamModel,
    cost: &CostModel,
    first: PureStrategy,
    second: PureStrategy,
) -> Result<DominanceReport> {
    let difference = welfare_curve(model, cost, first).sub(&welfare_curve(model, cost, second));
    let segments = difference.sign_segments(&zero(), false, &one(), false);
    let overlap = sne_interval(model, cost, first)?.intersect(&sne_interval(model, cost, second)?);
    let overlap_segments = if overlap.is_empty() {
        Vec::new()
    } else {
        difference.sign_segments(
            &overlap.lower,
            overlap.lower_closed,
            &overlap.upper,
            overlap.upper_closed,
        )
    };
    Ok(DominanceReport {
        first,
        second,
        discriminant: difference.discriminant(),
        roots: difference.real_roots(),
        difference,
        segments,
        overlap,
        overlap_segments,
    })
}
