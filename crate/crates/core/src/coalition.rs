//! Coalition-dependent strategies: an employee may pick one effort for her
//! probation (working alone) and another for joint work.
//!
//! Singleton values in the Shapley share use probation efforts, the grand
//! value uses joint efforts, and both efforts are charged.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::equilibrium::grid;
use crate::error::Result;
use crate::model::{
    AgentType, CostModel, EffortLevel, GrandState, PureStrategy, SingletonState, TamModel,
    TypeDistribution,
};
use crate::scalar::{half, Scalar};
use crate::validate::ModelValidation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoalitionStrategy {
    pub probation: PureStrategy,
    pub joint: PureStrategy,
}

impl CoalitionStrategy {
    pub const fn new(probation: PureStrategy, joint: PureStrategy) -> Self {
        Self { probation, joint }
    }

    pub fn all() -> impl Iterator<Item = CoalitionStrategy> {
        PureStrategy::ALL
            .into_iter()
            .flat_map(|p| PureStrategy::ALL.into_iter().map(move |j| Self::new(p, j)))
    }

    /// The base-model embedding: same effort alone and together.
    pub fn tied(s: PureStrategy) -> Self {
        Self::new(s, s)
    }
}

impl fmt::Display for CoalitionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(probation {}, joint {})", self.probation, self.joint)
    }
}

/// Variations on the payoff and strategy space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoalitionRules {
    /// Charge `C(probation effort, type)` on top of the joint-work cost.
    pub charge_probation_cost: bool,
    /// Only strategies with `probation == joint` exist.
    pub tie_components: bool,
}

impl Default for CoalitionRules {
    fn default() -> Self {
        Self {
            charge_probation_cost: true,
            tie_components: false,
        }
    }
}

impl CoalitionRules {
    /// Tied components and a single cost: the base game.
    pub fn reduction() -> Self {
        Self {
            charge_probation_cost: false,
            tie_components: true,
        }
    }

    fn strategies(&self) -> Vec<CoalitionStrategy> {
        if self.tie_components {
            PureStrategy::ALL
                .into_iter()
                .map(CoalitionStrategy::tied)
                .collect()
        } else {
            CoalitionStrategy::all().collect()
        }
    }
}

fn player_payoff(
    model: &TamModel,
    cost: &CostModel,
    own: CoalitionStrategy,
    other: CoalitionStrategy,
    own_is_first: bool,
    p: &TypeDistribution,
    rules: CoalitionRules,
) -> Scalar {
    let mut total = Scalar::from_integer(0.into());
    for t_own in AgentType::ALL {
        for t_other in AgentType::ALL {
            let e_own = own.joint.effort(t_own);
            let e_other = other.joint.effort(t_other);
            let g = if own_is_first {
                GrandState::new(e_own, e_other, t_own, t_other)
            } else {
                GrandState::new(e_other, e_own, t_other, t_own)
            };
            let alone_own =
                model.singleton(SingletonState::new(own.probation.effort(t_own), t_own));
            let alone_other = model.singleton(SingletonState::new(
                other.probation.effort(t_other),
                t_other,
            ));
            let mut u = (model.grand(g) - alone_other + alone_own) * half();
            u -= cost.cost(e_own, t_own);
            if rules.charge_probation_cost {
                u -= cost.cost(own.probation.effort(t_own), t_own);
            }
            total += p.joint(t_own, t_other) * u;
        }
    }
    total
}

pub fn exante_payoffs_coalition_with(
    model: &TamModel,
    cost: &CostModel,
    s1: CoalitionStrategy,
    s2: CoalitionStrategy,
    p: &TypeDistribution,
    rules: CoalitionRules,
) -> (Scalar, Scalar) {
    (
        player_payoff(model, cost, s1, s2, true, p, rules),
        player_payoff(model, cost, s2, s1, false, p, rules),
    )
}

pub fn exante_payoffs_coalition(
    model: &TamModel,
    cost: &CostModel,
    s1: CoalitionStrategy,
    s2: CoalitionStrategy,
    p: &TypeDistribution,
) -> (Scalar, Scalar) {
    exante_payoffs_coalition_with(model, cost, s1, s2, p, CoalitionRules::default())
}

/// Symmetric profiles with no strictly profitable unilateral deviation,
/// checking every alternative strategy (not component by component).
pub fn enumerate_coalition_sne_with(
    model: &TamModel,
    cost: &CostModel,
    p: &TypeDistribution,
    rules: CoalitionRules,
) -> BTreeSet<CoalitionStrategy> {
    let space = rules.strategies();
    let mut out = BTreeSet::new();
    for &s in &space {
        let (base_1, base_2) = exante_payoffs_coalition_with(model, cost, s, s, p, rules);
        let stable = space.iter().filter(|alt| **alt != s).all(|&alt| {
            let dev_1 = player_payoff(model, cost, alt, s, true, p, rules);
            let dev_2 = player_payoff(model, cost, alt, s, false, p, rules);
            dev_1 <= base_1 && dev_2 <= base_2
        });
        if stable {
            out.insert(s);
        }
    }
    out
}

pub fn enumerate_coalition_sne(
    model: &TamModel,
    cost: &CostModel,
    p: &TypeDistribution,
) -> BTreeSet<CoalitionStrategy> {
    enumerate_coalition_sne_with(model, cost, p, CoalitionRules::default())
}

/// Net value of working alone at effort `e`: `M(e, t) / 2 - C(e, t)`.
pub fn probation_value(model: &TamModel, cost: &CostModel, e: EffortLevel, t: AgentType) -> Scalar {
    model.singleton_at(e, t) * half() - cost.cost(e, t)
}

/// Per type, the efforts maximizing the probation term. That term enters
/// the ex-ante payoff additively, so this is the probation best response
/// whatever `p` and the opponent do.
pub fn probation_best_efforts(
    model: &TamModel,
    cost: &CostModel,
) -> BTreeMap<AgentType, BTreeSet<EffortLevel>> {
    AgentType::ALL
        .into_iter()
        .map(|t| {
            let low = probation_value(model, cost, EffortLevel::Low, t);
            let high = probation_value(model, cost, EffortLevel::High, t);
            let best: BTreeSet<EffortLevel> = match low.cmp(&high) {
                std::cmp::Ordering::Greater => [EffortLevel::Low].into(),
                std::cmp::Ordering::Less => [EffortLevel::High].into(),
                std::cmp::Ordering::Equal => EffortLevel::ALL.into(),
            };
            (t, best)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct UniquenessViolation {
    pub p_high: Scalar,
    pub sne: Vec<CoalitionStrategy>,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct UniquenessReport {
    /// Super-modular and concave machine, sub-modular cost.
    pub supported: bool,
    pub points_checked: usize,
    pub points_without_sne: usize,
    pub violations: Vec<UniquenessViolation>,
}

impl UniquenessReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// On each grid point: all coalition SNEs share one joint component, and
/// every probation component is a probation best response.
pub fn verify_grand_component_uniqueness(
    model: &TamModel,
    cost: &CostModel,
    grid_n: usize,
) -> Result<UniquenessReport> {
    let checks = ModelValidation::run(model, cost);
    let supported = checks.hypotheses_hold() && checks.concavity.passed;
    let best = probation_best_efforts(model, cost);
    let points = grid(grid_n)?;
    let mut report = UniquenessReport {
        supported,
        points_checked: points.len(),
        points_without_sne: 0,
        violations: Vec::new(),
    };
    for p in points {
        let sne: Vec<CoalitionStrategy> = enumerate_coalition_sne(model, cost, &p)
            .into_iter()
            .collect();
        if sne.is_empty() {
            report.points_without_sne += 1;
            continue;
        }
        let joints: BTreeSet<PureStrategy> = sne.iter().map(|s| s.joint).collect();
        let mut reasons = Vec::new();
        if joints.len() > 1 {
            reasons.push(format!("{} distinct joint components", joints.len()));
        }
        for s in &sne {
            for t in AgentType::ALL {
                if !best[&t].contains(&s.probation.effort(t)) {
                    reasons.push(format!("{s} plays a non-best probation effort at {t}"));
                }
            }
        }
        if !reasons.is_empty() {
            report.violations.push(UniquenessViolation {
                p_high: p.p_high().clone(),
                sne,
                reason: reasons.join("; "),
            });
        }
    }
    Ok(report)
}
