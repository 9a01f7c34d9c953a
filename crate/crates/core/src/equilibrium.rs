//! Brute-force ex-ante Nash checks over the four pure strategies.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{exante_payoffs, CostModel, Player, PureStrategy, TamModel, TypeDistribution};
use crate::scalar::{ratio, Scalar};

/// A strictly profitable unilateral deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationWitness {
    pub deviator: Player,
    pub from: PureStrategy,
    pub to: PureStrategy,
    pub payoff_before: Scalar,
    pub payoff_after: Scalar,
}

pub type Profile = (PureStrategy, PureStrategy);

#[derive(Debug, Clone)]
pub struct EquilibriumReport {
    pub p: TypeDistribution,
    pub sne_set: BTreeSet<PureStrategy>,
    pub asymmetric_nash: BTreeSet<Profile>,
    /// Profitable deviations for every one of the 16 ordered profiles.
    pub witnesses: BTreeMap<Profile, Vec<DeviationWitness>>,
}

impl EquilibriumReport {
    pub fn is_sne(&self, s: PureStrategy) -> bool {
        self.sne_set.contains(&s)
    }
}

/// Π_1 and Π_2 for all 16 ordered profiles at one distribution.
struct PayoffTable {
    payoffs: BTreeMap<Profile, (Scalar, Scalar)>,
}

impl PayoffTable {
    fn build(model: &TamModel, cost: &CostModel, p: &TypeDistribution) -> Self {
        let mut payoffs = BTreeMap::new();
        for s1 in PureStrategy::ALL {
            for s2 in PureStrategy::ALL {
                payoffs.insert((s1, s2), exante_payoffs(model, cost, s1, s2, p));
            }
        }
        Self { payoffs }
    }

    fn violations(&self, s1: PureStrategy, s2: PureStrategy) -> Vec<DeviationWitness> {
        let (before_1, before_2) = &self.payoffs[&(s1, s2)];
        let mut out = Vec::new();
        for alt in PureStrategy::ALL {
            if alt != s1 {
                let after = &self.payoffs[&(alt, s2)].0;
                if after > before_1 {
                    out.push(DeviationWitness {
                        deviator: Player::One,
                        from: s1,
                        to: alt,
                        payoff_before: before_1.clone(),
                        payoff_after: after.clone(),
                    });
                }
            }
        }
        for alt in PureStrategy::ALL {
            if alt != s2 {
                let after = &self.payoffs[&(s1, alt)].1;
                if after > before_2 {
                    out.push(DeviationWitness {
                        deviator: Player::Two,
                        from: s2,
                        to: alt,
                        payoff_before: before_2.clone(),
                        payoff_after: after.clone(),
                    });
                }
            }
        }
        out
    }
}

/// Every strictly profitable unilateral deviation from `(s1, s2)`. Ties are
/// not deviations.
pub fn best_response_violations(
    model: &TamModel,
    cost: &CostModel,
    s1: PureStrategy,
    s2: PureStrategy,
    p: &TypeDistribution,
) -> Vec<DeviationWitness> {
    PayoffTable::build(model, cost, p).violations(s1, s2)
}

pub fn is_exante_nash(
    model: &TamModel,
    cost: &CostModel,
    s1: PureStrategy,
    s2: PureStrategy,
    p: &TypeDistribution,
) -> bool {
    best_response_violations(model, cost, s1, s2, p).is_empty()
}

pub fn enumerate_sne(
    model: &TamModel,
    cost: &CostModel,
    p: &TypeDistribution,
) -> EquilibriumReport {
    let table = PayoffTable::build(model, cost, p);
    let mut report = EquilibriumReport {
        p: p.clone(),
        sne_set: BTreeSet::new(),
        asymmetric_nash: BTreeSet::new(),
        witnesses: BTreeMap::new(),
    };
    for s1 in PureStrategy::ALL {
        for s2 in PureStrategy::ALL {
            let found = table.violations(s1, s2);
            if found.is_empty() {
                if s1 == s2 {
                    report.sne_set.insert(s1);
                } else {
                    report.asymmetric_nash.insert((s1, s2));
                }
            }
            report.witnesses.insert((s1, s2), found);
        }
    }
    report
}

/// The grid `p(t_h) = k / grid_n` for `k = 1 .. grid_n - 1`.
pub fn grid(grid_n: usize) -> Result<Vec<TypeDistribution>> {
    if grid_n < 2 {
        return Err(Error::GridTooSmall(grid_n));
    }
    Ok((1..grid_n)
        .map(|k| TypeDistribution::new(ratio(k as i64, grid_n as i64)).expect("k/n lies in (0,1)"))
        .collect())
}

pub fn sne_grid_sweep(
    model: &TamModel,
    cost: &CostModel,
    grid_n: usize,
) -> Result<Vec<(TypeDistribution, EquilibriumReport)>> {
    Ok(grid(grid_n)?
        .into_iter()
        .map(|p| {
            let report = enumerate_sne(model, cost, &p);
            (p, report)
        })
        .collect())
}
