//! Closed-form SNE intervals in `p(t_h)`, the inequality chains that decide
//! when they are non-trivial, rationalizability, and the two Farkas systems
//! for the all-high strategy.
//!
//! Player 1's incentive to raise effort at her own type is affine in
//! `p(t_h)`, and the ex-ante payoff separates by own type. So a symmetric
//! profile is an SNE exactly when one or two affine inequalities hold, and
//! every SNE set is an interval.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::equilibrium::enumerate_sne;
use crate::error::{Error, Result};
use crate::farkas::LinearSystem;
use crate::interval::RationalInterval;
use crate::model::{
    shapley_shares, AgentType, CostModel, EffortLevel, GrandState, PureStrategy, TamModel,
    TypeDistribution,
};
use crate::scalar::{int, one, zero, Scalar};
use crate::validate::{validate_concavity, ModelValidation};

use AgentType::{High as TH, Low as TL};
use EffortLevel::{High as EH, Low as EL};

/// Player 1's Shapley gain from raising her effort, the opponent's effort
/// held fixed: `Sh_1((e_h, opp), (own, other)) - Sh_1((e_l, opp), (own, other))`.
pub fn share_gain(
    model: &TamModel,
    opponent: EffortLevel,
    own: AgentType,
    other: AgentType,
) -> Scalar {
    let up = shapley_shares(model, GrandState::new(EH, opponent, own, other)).share_1;
    let down = shapley_shares(model, GrandState::new(EL, opponent, own, other)).share_1;
    up - down
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaQuantities {
    pub delta_cost_low: Scalar,
    pub delta_cost_high: Scalar,
    /// Keyed by (opponent effort, own type, other type).
    pub delta_sh: BTreeMap<(EffortLevel, AgentType, AgentType), Scalar>,
    pub margin_a: Scalar,
    pub margin_b: Scalar,
}

impl DeltaQuantities {
    pub fn gain(&self, opponent: EffortLevel, own: AgentType, other: AgentType) -> &Scalar {
        &self.delta_sh[&(opponent, own, other)]
    }

    pub fn delta_cost(&self, t: AgentType) -> &Scalar {
        match t {
            TL => &self.delta_cost_low,
            TH => &self.delta_cost_high,
        }
    }
}

pub fn compute_deltas(model: &TamModel, cost: &CostModel) -> DeltaQuantities {
    let mut delta_sh = BTreeMap::new();
    for opp in EffortLevel::ALL {
        for own in AgentType::ALL {
            for other in AgentType::ALL {
                delta_sh.insert((opp, own, other), share_gain(model, opp, own, other));
            }
        }
    }
    let delta_cost_low = cost.increment(TL);
    let delta_cost_high = cost.increment(TH);
    let margin_a = &delta_sh[&(EH, TL, TL)] - &delta_cost_low;
    let margin_b = &delta_sh[&(EH, TL, TH)] - &delta_cost_low;
    DeltaQuantities {
        delta_cost_low,
        delta_cost_high,
        delta_sh,
        margin_a,
        margin_b,
    }
}

/// `{p in (0,1) : base + p * slope >= rhs}` (or `<=` when `at_least` is
/// false). The slope may have any sign.
fn affine_region(base: &Scalar, slope: &Scalar, rhs: &Scalar, at_least: bool) -> RationalInterval {
    let unit = RationalInterval::unit_open();
    if slope.is_zero() {
        let holds = if at_least { base >= rhs } else { base <= rhs };
        return if holds {
            unit
        } else {
            RationalInterval::empty()
        };
    }
    let t = (rhs - base) / slope;
    let upward = at_least == slope.is_positive();
    let ray = if upward {
        RationalInterval::new(t, true, one(), false)
    } else {
        RationalInterval::new(zero(), false, t, true)
    };
    ray.intersect(&unit)
}

/// `p(t_h)` values where `(s, s)` is an SNE, from the closed-form share-gain conditions.
///
/// The all-high and all-low endpoints divide by a difference of share gains
/// that strict super-modularity keeps away from zero; a zero there is a
/// [`Error::DegenerateModel`]. The mixed strategy's endpoints are solved with
/// whatever signs the gains have.
pub fn sne_interval(
    model: &TamModel,
    cost: &CostModel,
    s: PureStrategy,
) -> Result<RationalInterval> {
    let d = compute_deltas(model, cost);
    let interval = match s {
        PureStrategy::HH => {
            let d0 = d.gain(EH, TL, TL);
            let d2 = d.gain(EH, TL, TH);
            let slope = d2 - d0;
            if slope.is_zero() {
                return Err(Error::DegenerateModel(
                    "share gains at (t_l,t_l) and (t_l,t_h) against e_h coincide, so super-modularity is not strict"
                        .to_string(),
                ));
            }
            affine_region(d0, &slope, &d.delta_cost_low, true)
        }
        PureStrategy::LL => {
            let e0 = d.gain(EL, TH, TL);
            let e1 = d.gain(EL, TH, TH);
            let slope = e1 - e0;
            if slope.is_zero() {
                return Err(Error::DegenerateModel(
                    "share gains at (t_h,t_l) and (t_h,t_h) against e_l coincide, so super-modularity is not strict"
                        .to_string(),
                ));
            }
            affine_region(e0, &slope, &d.delta_cost_high, false)
        }
        PureStrategy::LH => {
            let d1 = d.gain(EL, TL, TL);
            let d2 = d.gain(EH, TL, TH);
            let e0 = d.gain(EL, TH, TL);
            let e2 = d.gain(EH, TH, TH);
            let stay_low = affine_region(d1, &(d2 - d1), &d.delta_cost_low, false);
            let go_high = affine_region(e0, &(e2 - e0), &d.delta_cost_high, true);
            stay_low.intersect(&go_high)
        }
        PureStrategy::HL => RationalInterval::empty(),
    };
    Ok(interval)
}

#[derive(Debug, Clone)]
pub struct IntervalReport {
    pub intervals: BTreeMap<PureStrategy, RationalInterval>,
    /// Super-modular machine and sub-modular cost. Without them the
    /// intervals are formula output, not a characterization.
    pub supported: bool,
}

impl IntervalReport {
    pub fn get(&self, s: PureStrategy) -> &RationalInterval {
        &self.intervals[&s]
    }
}

pub fn interval_report(model: &TamModel, cost: &CostModel) -> Result<IntervalReport> {
    let mut intervals = BTreeMap::new();
    for s in PureStrategy::ALL {
        intervals.insert(s, sne_interval(model, cost, s)?);
    }
    Ok(IntervalReport {
        intervals,
        supported: ModelValidation::run(model, cost).hypotheses_hold(),
    })
}

/// A strict chain `left < middle < right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub left: Scalar,
    pub middle: Scalar,
    pub right: Scalar,
}

impl Chain {
    fn new(left: &Scalar, middle: &Scalar, right: &Scalar) -> Self {
        Self {
            left: left.clone(),
            middle: middle.clone(),
            right: right.clone(),
        }
    }

    pub fn holds(&self) -> bool {
        self.left < self.middle && self.middle < self.right
    }
}

#[derive(Debug, Clone)]
pub struct ExistenceReport {
    pub all_high: Chain,
    pub all_low: Chain,
    /// `[(i)(a), (i)(b), (ii)(a), (ii)(b)]` for the mixed strategy.
    pub mixed: [Chain; 4],
    /// Per strategy: some `p` makes it an SNE and some other `p` does not,
    /// read off the exact interval.
    pub nontrivial: BTreeMap<PureStrategy, bool>,
    pub margin_a: Scalar,
    pub margin_b: Scalar,
}

impl ExistenceReport {
    pub fn mixed_chain_holds(&self) -> bool {
        let first = self.mixed[0].holds() || self.mixed[1].holds();
        let second = self.mixed[2].holds() || self.mixed[3].holds();
        first != second
    }

    /// `A >= 0` implies `B > 0`, and `B <= 0` implies `A < 0`.
    pub fn margins_consistent(&self) -> bool {
        let a_ok = self.margin_a.is_negative() || self.margin_b.is_positive();
        let b_ok = self.margin_b.is_positive() || self.margin_a.is_negative();
        a_ok && b_ok
    }
}

pub fn existence_conditions(model: &TamModel, cost: &CostModel) -> Result<ExistenceReport> {
    let d = compute_deltas(model, cost);
    let (dcl, dch) = (&d.delta_cost_low, &d.delta_cost_high);
    let d0 = d.gain(EH, TL, TL);
    let d1 = d.gain(EL, TL, TL);
    let d2 = d.gain(EH, TL, TH);
    let e0 = d.gain(EL, TH, TL);
    let e1 = d.gain(EL, TH, TH);
    let e2 = d.gain(EH, TH, TH);

    let unit = RationalInterval::unit_open();
    let mut nontrivial = BTreeMap::new();
    for s in PureStrategy::ALL {
        let i = sne_interval(model, cost, s)?;
        nontrivial.insert(s, !i.is_empty() && i != unit);
    }
    Ok(ExistenceReport {
        all_high: Chain::new(d0, dcl, d2),
        all_low: Chain::new(e0, dch, e1),
        mixed: [
            Chain::new(d1, dcl, d2),
            Chain::new(e0, dch, e2),
            Chain::new(d2, dcl, d1),
            Chain::new(e2, dch, e0),
        ],
        nontrivial,
        margin_a: d.margin_a,
        margin_b: d.margin_b,
    })
}

#[derive(Debug, Clone)]
pub struct UniquenessWitness {
    pub p_high: Scalar,
    /// The brute-force SNE set at `p_high` is exactly `{s}`.
    pub confirmed: bool,
}

#[derive(Debug, Clone)]
pub struct RationalizabilityReport {
    pub intervals: BTreeMap<PureStrategy, RationalInterval>,
    /// Where each strategy is the only SNE, according to the intervals.
    pub unique_regions: BTreeMap<PureStrategy, Vec<RationalInterval>>,
    pub witnesses: BTreeMap<PureStrategy, Option<UniquenessWitness>>,
    pub overlapping: Vec<(PureStrategy, PureStrategy)>,
    pub hypotheses_hold: bool,
    pub concave: bool,
}

impl RationalizabilityReport {
    pub fn pairwise_disjoint(&self) -> bool {
        self.overlapping.is_empty()
    }

    pub fn rationalizable(&self, s: PureStrategy) -> bool {
        matches!(&self.witnesses[&s], Some(w) if w.confirmed)
    }

    pub fn rationalizable_set(&self) -> BTreeSet<PureStrategy> {
        PureStrategy::ALL
            .into_iter()
            .filter(|s| self.rationalizable(*s))
            .collect()
    }

    /// The concave case's disjointness claim; `None` when its hypotheses
    /// are not met.
    pub fn concave_disjointness(&self) -> Option<bool> {
        (self.hypotheses_hold && self.concave).then(|| self.pairwise_disjoint())
    }
}

pub fn rationalizability(model: &TamModel, cost: &CostModel) -> Result<RationalizabilityReport> {
    let report = interval_report(model, cost)?;
    let intervals = report.intervals;
    let mut unique_regions = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for s in PureStrategy::ALL {
        let others: Vec<&RationalInterval> = PureStrategy::ALL
            .iter()
            .filter(|o| **o != s)
            .map(|o| &intervals[o])
            .collect();
        let pieces = intervals[&s].difference(&others);
        let witness = pieces
            .first()
            .and_then(|piece| piece.sample_point())
            .map(|p_high| {
                let p = TypeDistribution::new(p_high.clone()).expect("sample lies in (0,1)");
                let sne = enumerate_sne(model, cost, &p).sne_set;
                UniquenessWitness {
                    confirmed: sne.len() == 1 && sne.contains(&s),
                    p_high,
                }
            });
        unique_regions.insert(s, pieces);
        witnesses.insert(s, witness);
    }
    let mut overlapping = Vec::new();
    for (i, a) in PureStrategy::ALL.iter().enumerate() {
        for b in &PureStrategy::ALL[i + 1..] {
            if intervals[a].overlaps(&intervals[b]) {
                overlapping.push((*a, *b));
            }
        }
    }
    Ok(RationalizabilityReport {
        intervals,
        unique_regions,
        witnesses,
        overlapping,
        hypotheses_hold: report.supported,
        concave: validate_concavity(model).passed,
    })
}

/// The systems `(Ph)` and `(Qh)` over `x = (p_l, p_h)`.
///
/// `(Ph)` is feasible iff some distribution makes `(s_hh, s_hh)` an SNE,
/// `(Qh)` iff some distribution does not.
pub fn build_farkas_systems(model: &TamModel, cost: &CostModel) -> (LinearSystem, LinearSystem) {
    let d = compute_deltas(model, cost);
    let dc = &d.delta_cost_low;
    let d0 = d.gain(EH, TL, TL);
    let d2 = d.gain(EH, TL, TH);
    let simplex = || vec![([int(1), int(1)], int(1)), ([int(-1), int(-1)], int(-1))];
    let mut ph_weak = vec![([dc - d0, dc - d2], zero())];
    ph_weak.extend(simplex());
    let ph = LinearSystem {
        weak_rows: ph_weak,
        strict_rows: vec![([int(0), int(-1)], zero()), ([int(-1), int(0)], zero())],
    };
    let qh = LinearSystem {
        weak_rows: simplex(),
        strict_rows: vec![
            ([d0 - dc, d2 - dc], zero()),
            ([int(-1), int(0)], zero()),
            ([int(0), int(-1)], zero()),
        ],
    };
    (ph, qh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farkas::{dual_by_enumeration, farkas_check, verify, FeasibilityResult};
    use crate::io::example1;
    use crate::scalar::{ratio, round_half_up};
    use PureStrategy as S;

    #[test]
    fn deltas_for_the_table() {
        let (m, c) = example1();
        let d = compute_deltas(&m, &c);
        assert_eq!(d.delta_cost_low, int(6));
        assert_eq!(d.delta_cost_high, ratio(53, 10));
        assert_eq!(*d.gain(EH, TL, TL), ratio(545, 100));
        assert_eq!(*d.gain(EH, TL, TH), ratio(64, 10));
        assert_eq!(*d.gain(EL, TH, TL), ratio(505, 100));
        assert_eq!(*d.gain(EL, TH, TH), int(6));
        assert_eq!(*d.gain(EH, TH, TH), ratio(75, 10));
        assert_eq!(*d.gain(EL, TL, TL), ratio(445, 100));
        assert_eq!(d.margin_a, ratio(-55, 100));
        assert_eq!(d.margin_b, ratio(4, 10));

        let z = compute_deltas(&m, &CostModel::zero());
        assert_eq!(z.delta_cost_low, int(0));
        assert_eq!(z.delta_cost_high, int(0));
    }

    #[test]
    fn table_three_intervals() {
        let (m, c) = example1();
        let hh = sne_interval(&m, &c, S::HH).unwrap();
        assert_eq!(
            hh,
            RationalInterval::new(ratio(11, 19), true, int(1), false)
        );
        assert_eq!(hh.to_string(), "[11/19, 1)");
        let ll = sne_interval(&m, &c, S::LL).unwrap();
        assert_eq!(ll, RationalInterval::new(int(0), false, ratio(5, 19), true));
        let lh = sne_interval(&m, &c, S::LH).unwrap();
        assert_eq!(lh, RationalInterval::closed(ratio(5, 49), ratio(31, 39)));
        assert!(sne_interval(&m, &c, S::HL).unwrap().is_empty());

        assert_eq!(round_half_up(&ratio(5, 19), 6), "0.263158");
        assert_eq!(lh.to_decimal_string(6), "[0.102041, 0.794872]");
    }

    #[test]
    fn flat_gains_are_degenerate() {
        let (m, _) = example1();
        let c = CostModel::zero();
        // Make the all-high gains at (t_l,t_l) and (t_l,t_h) equal.
        let m = m
            .with_grand_symmetric(GrandState::new(EH, EH, TL, TH), ratio(181, 10))
            .unwrap();
        assert!(matches!(
            sne_interval(&m, &c, S::HH),
            Err(Error::DegenerateModel(_))
        ));
    }

    #[test]
    fn affine_regions_handle_every_sign() {
        let r = affine_region(&int(0), &int(2), &int(1), true);
        assert_eq!(r, RationalInterval::new(ratio(1, 2), true, int(1), false));
        let r = affine_region(&int(0), &int(-2), &int(-1), true);
        assert_eq!(r, RationalInterval::new(int(0), false, ratio(1, 2), true));
        assert_eq!(
            affine_region(&int(1), &int(0), &int(1), true),
            RationalInterval::unit_open()
        );
        assert!(affine_region(&int(0), &int(0), &int(1), true).is_empty());
        assert_eq!(
            affine_region(&int(5), &int(1), &int(1), true),
            RationalInterval::unit_open()
        );
        assert!(affine_region(&int(5), &int(1), &int(1), false).is_empty());
    }

    #[test]
    fn existence_chains_for_the_table() {
        let (m, c) = example1();
        let e = existence_conditions(&m, &c).unwrap();
        assert!(e.all_high.holds());
        assert_eq!(
            e.all_high,
            Chain {
                left: ratio(545, 100),
                middle: int(6),
                right: ratio(64, 10)
            }
        );
        assert!(e.all_low.holds());
        assert!(e.nontrivial[&S::HH]);
        assert!(e.nontrivial[&S::LL]);
        assert!(e.nontrivial[&S::LH]);
        assert!(!e.nontrivial[&S::HL]);
        assert!(e.margin_a.is_negative() && e.margin_b.is_positive());
        assert!(e.margins_consistent());
        assert!(e.mixed_chain_holds());

        let z = existence_conditions(&m, &CostModel::zero()).unwrap();
        assert!(!z.all_high.holds());
    }

    #[test]
    fn rationalizability_on_the_table() {
        let (m, c) = example1();
        let r = rationalizability(&m, &c).unwrap();
        assert!(!r.concave);
        assert!(r.concave_disjointness().is_none());
        assert_eq!(r.overlapping, vec![(S::LL, S::LH), (S::LH, S::HH)]);

        let ll = r.witnesses[&S::LL].as_ref().unwrap();
        assert_eq!(ll.p_high, ratio(5, 98));
        assert!(ll.confirmed);
        let hh = r.witnesses[&S::HH].as_ref().unwrap();
        assert_eq!(hh.p_high, ratio(35, 39));
        assert!(hh.confirmed);
        // Between the all-low and all-high intervals only s_lh survives.
        assert_eq!(
            r.unique_regions[&S::LH],
            vec![RationalInterval::open(ratio(5, 19), ratio(11, 19))]
        );
        assert!(r.rationalizable(S::LH));
        assert!(r.witnesses[&S::HL].is_none());
        assert_eq!(r.rationalizable_set().len(), 3);
    }

    #[test]
    fn farkas_systems_for_the_table() {
        let (m, c) = example1();
        let (ph, qh) = build_farkas_systems(&m, &c);
        assert_eq!(ph.weak_rows[0].0, [ratio(55, 100), ratio(-4, 10)]);
        assert_eq!(ph.weak_rows[1], ([int(1), int(1)], int(1)));
        assert_eq!(ph.strict_rows[0], ([int(0), int(-1)], int(0)));
        assert_eq!(ph.strict_rows[1], ([int(-1), int(0)], int(0)));

        let example = [ratio(1, 4), ratio(3, 4)];
        assert!(crate::farkas::verify_primal(&ph, &example));
        assert!(crate::farkas::verify_primal(
            &qh,
            &[ratio(9, 10), ratio(1, 10)]
        ));

        for sys in [&ph, &qh] {
            let result = farkas_check(sys);
            assert!(matches!(result, FeasibilityResult::PrimalFeasible(_)));
            assert!(verify(sys, &result));
            assert!(dual_by_enumeration(sys).is_none());
        }
    }

    #[test]
    fn ph_goes_dual_when_high_effort_never_pays() {
        let (m, _) = example1();
        let c = CostModel::from_fn(|e, t| match (e, t) {
            (EH, TL) => int(20),
            (EL, TL) => int(2),
            (EH, TH) => int(15),
            (EL, TH) => int(1),
        });
        assert!(sne_interval(&m, &c, S::HH).unwrap().is_empty());
        let (ph, _) = build_farkas_systems(&m, &c);
        let result = farkas_check(&ph);
        assert!(!result.is_primal());
        assert!(verify(&ph, &result));
    }
}
