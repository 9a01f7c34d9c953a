//! Machine, cost function, strategies, Shapley shares and payoffs.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, half, one, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EffortLevel {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AgentType {
    Low,
    High,
}

impl EffortLevel {
    pub const ALL: [EffortLevel; 2] = [EffortLevel::Low, EffortLevel::High];

    fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> Self {
        match self {
            EffortLevel::Low => EffortLevel::High,
            EffortLevel::High => EffortLevel::Low,
        }
    }

    /// Short tag used in document keys and strategy names.
    pub fn tag(self) -> &'static str {
        match self {
            EffortLevel::Low => "e_l",
            EffortLevel::High => "e_h",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "e_l" => Some(EffortLevel::Low),
            "e_h" => Some(EffortLevel::High),
            _ => None,
        }
    }
}

impl AgentType {
    pub const ALL: [AgentType; 2] = [AgentType::Low, AgentType::High];

    fn index(self) -> usize {
        self as usize
    }

    pub fn tag(self) -> &'static str {
        match self {
            AgentType::Low => "t_l",
            AgentType::High => "t_h",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "t_l" => Some(AgentType::Low),
            "t_h" => Some(AgentType::High),
            _ => None,
        }
    }
}

impl fmt::Display for EffortLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl fmt::Display for AgentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    One,
    Two,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::One => f.write_str("player 1"),
            Player::Two => f.write_str("player 2"),
        }
    }
}

/// One employee working alone (the probation coalition).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingletonState {
    pub effort: EffortLevel,
    pub agent_type: AgentType,
}

impl SingletonState {
    pub fn new(effort: EffortLevel, agent_type: AgentType) -> Self {
        Self { effort, agent_type }
    }

    pub fn all() -> impl Iterator<Item = SingletonState> {
        EffortLevel::ALL.into_iter().flat_map(|effort| {
            AgentType::ALL
                .into_iter()
                .map(move |agent_type| SingletonState::new(effort, agent_type))
        })
    }

    /// Document key, e.g. `e_h.t_l`.
    pub fn key(&self) -> String {
        format!("{}.{}", self.effort.tag(), self.agent_type.tag())
    }

    fn index(&self) -> usize {
        self.effort.index() * 2 + self.agent_type.index()
    }
}

impl fmt::Display for SingletonState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.effort, self.agent_type)
    }
}

/// Both employees present: `((effort_1, effort_2), (type_1, type_2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrandState {
    pub effort_1: EffortLevel,
    pub effort_2: EffortLevel,
    pub type_1: AgentType,
    pub type_2: AgentType,
}

impl GrandState {
    pub fn new(
        effort_1: EffortLevel,
        effort_2: EffortLevel,
        type_1: AgentType,
        type_2: AgentType,
    ) -> Self {
        Self {
            effort_1,
            effort_2,
            type_1,
            type_2,
        }
    }

    pub fn from_profiles(
        efforts: (EffortLevel, EffortLevel),
        types: (AgentType, AgentType),
    ) -> Self {
        Self::new(efforts.0, efforts.1, types.0, types.1)
    }

    /// All 16 states in a fixed order (effort_1, effort_2, type_1, type_2).
    pub fn all() -> impl Iterator<Item = GrandState> {
        (0..16).map(GrandState::from_index)
    }

    fn from_index(i: usize) -> Self {
        let e = |bit: usize| EffortLevel::ALL[(i >> bit) & 1];
        let t = |bit: usize| AgentType::ALL[(i >> bit) & 1];
        GrandState::new(e(3), e(2), t(1), t(0))
    }

    fn index(&self) -> usize {
        self.effort_1.index() * 8
            + self.effort_2.index() * 4
            + self.type_1.index() * 2
            + self.type_2.index()
    }

    /// The same state with the employees' roles exchanged.
    pub fn swap(&self) -> Self {
        GrandState::new(self.effort_2, self.effort_1, self.type_2, self.type_1)
    }

    pub fn efforts(&self) -> (EffortLevel, EffortLevel) {
        (self.effort_1, self.effort_2)
    }

    pub fn types(&self) -> (AgentType, AgentType) {
        (self.type_1, self.type_2)
    }

    pub fn singleton_1(&self) -> SingletonState {
        SingletonState::new(self.effort_1, self.type_1)
    }

    pub fn singleton_2(&self) -> SingletonState {
        SingletonState::new(self.effort_2, self.type_2)
    }

    /// Document key, e.g. `e_l.e_h.t_l.t_h`.
    pub fn key(&self) -> String {
        format!(
            "{}.{}.{}.{}",
            self.effort_1.tag(),
            self.effort_2.tag(),
            self.type_1.tag(),
            self.type_2.tag()
        )
    }
}

impl fmt::Display for GrandState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({},{}),({},{}))",
            self.effort_1, self.effort_2, self.type_1, self.type_2
        )
    }
}

/// The machine `M`: four singleton values, sixteen grand values, and the
/// empty coalition pinned at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TamModel {
    singleton: [Scalar; 4],
    grand: [Scalar; 16],
}

impl TamModel {
    /// Builds a machine from value functions. Values must be non-negative;
    /// symmetry is *not* enforced here so that it can be reported by
    /// [`crate::validate::validate_symmetry`].
    pub fn from_fn(
        mut singleton: impl FnMut(SingletonState) -> Scalar,
        mut grand: impl FnMut(GrandState) -> Scalar,
    ) -> Result<Self> {
        let singleton_values: Vec<Scalar> = SingletonState::all().map(&mut singleton).collect();
        let grand_values: Vec<Scalar> = GrandState::all().map(&mut grand).collect();
        for (state, value) in SingletonState::all().zip(&singleton_values) {
            check_non_negative(&state.to_string(), value)?;
        }
        for (state, value) in GrandState::all().zip(&grand_values) {
            check_non_negative(&state.to_string(), value)?;
        }
        Ok(Self {
            singleton: singleton_values.try_into().expect("4 singleton states"),
            grand: grand_values.try_into().expect("16 grand states"),
        })
    }

    pub fn singleton(&self, state: SingletonState) -> &Scalar {
        &self.singleton[state.index()]
    }

    pub fn singleton_at(&self, effort: EffortLevel, agent_type: AgentType) -> &Scalar {
        self.singleton(SingletonState::new(effort, agent_type))
    }

    pub fn grand(&self, state: GrandState) -> &Scalar {
        &self.grand[state.index()]
    }

    pub fn empty_value(&self) -> Scalar {
        Scalar::zero()
    }

    /// Copy with one grand value replaced (the mirror state is left alone).
    pub fn with_grand(&self, state: GrandState, value: Scalar) -> Result<Self> {
        check_non_negative(&state.to_string(), &value)?;
        let mut next = self.clone();
        next.grand[state.index()] = value;
        Ok(next)
    }

    /// Copy with a grand value replaced at both `state` and its mirror.
    pub fn with_grand_symmetric(&self, state: GrandState, value: Scalar) -> Result<Self> {
        self.with_grand(state, value.clone())?
            .with_grand(state.swap(), value)
    }

    pub fn with_singleton(&self, state: SingletonState, value: Scalar) -> Result<Self> {
        check_non_negative(&state.to_string(), &value)?;
        let mut next = self.clone();
        next.singleton[state.index()] = value;
        Ok(next)
    }
}

fn check_non_negative(state: &str, value: &Scalar) -> Result<()> {
    if value.is_negative() {
        return Err(Error::NegativeMachineValue {
            state: state.to_string(),
            value: scalar::exact(value),
        });
    }
    Ok(())
}

/// The effort cost `C(e, t)`. Signs are unrestricted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModel {
    cost: [Scalar; 4],
}

impl CostModel {
    pub fn from_fn(mut cost: impl FnMut(EffortLevel, AgentType) -> Scalar) -> Self {
        let values: Vec<Scalar> = SingletonState::all()
            .map(|s| cost(s.effort, s.agent_type))
            .collect();
        Self {
            cost: values.try_into().expect("4 cost entries"),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| Scalar::zero())
    }

    pub fn cost(&self, effort: EffortLevel, agent_type: AgentType) -> &Scalar {
        &self.cost[SingletonState::new(effort, agent_type).index()]
    }

    /// `C(e_h, t) - C(e_l, t)`.
    pub fn increment(&self, agent_type: AgentType) -> Scalar {
        self.cost(EffortLevel::High, agent_type) - self.cost(EffortLevel::Low, agent_type)
    }
}

/// A map from types to efforts. `s_XY` plays `X` at `t_l` and `Y` at `t_h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PureStrategy {
    pub at_low: EffortLevel,
    pub at_high: EffortLevel,
}

impl PureStrategy {
    pub const LL: PureStrategy = PureStrategy::new(EffortLevel::Low, EffortLevel::Low);
    pub const LH: PureStrategy = PureStrategy::new(EffortLevel::Low, EffortLevel::High);
    pub const HL: PureStrategy = PureStrategy::new(EffortLevel::High, EffortLevel::Low);
    pub const HH: PureStrategy = PureStrategy::new(EffortLevel::High, EffortLevel::High);
    pub const ALL: [PureStrategy; 4] = [Self::LL, Self::LH, Self::HL, Self::HH];

    pub const fn new(at_low: EffortLevel, at_high: EffortLevel) -> Self {
        Self { at_low, at_high }
    }

    pub fn effort(&self, agent_type: AgentType) -> EffortLevel {
        match agent_type {
            AgentType::Low => self.at_low,
            AgentType::High => self.at_high,
        }
    }

    /// Same strategy with the effort at one type replaced.
    pub fn with_effort(&self, agent_type: AgentType, effort: EffortLevel) -> Self {
        match agent_type {
            AgentType::Low => Self::new(effort, self.at_high),
            AgentType::High => Self::new(self.at_low, effort),
        }
    }

    /// Two-letter suffix, e.g. `lh`.
    pub fn code(&self) -> &'static str {
        match (self.at_low, self.at_high) {
            (EffortLevel::Low, EffortLevel::Low) => "ll",
            (EffortLevel::Low, EffortLevel::High) => "lh",
            (EffortLevel::High, EffortLevel::Low) => "hl",
            (EffortLevel::High, EffortLevel::High) => "hh",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let code = name.strip_prefix("s_").unwrap_or(name);
        Self::ALL.into_iter().find(|s| s.code() == code)
    }
}

impl fmt::Display for PureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{}", self.code())
    }
}

/// Two-point type distribution, stored as `p(t_h)` with `0 < p(t_h) < 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeDistribution {
    p_high: Scalar,
}

impl TypeDistribution {
    pub fn new(p_high: Scalar) -> Result<Self> {
        if p_high.is_positive() && p_high < one() {
            Ok(Self { p_high })
        } else {
            Err(Error::ProbabilityOutOfRange(scalar::exact(&p_high)))
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(scalar::parse_probability(text)?)
    }

    pub fn p_high(&self) -> &Scalar {
        &self.p_high
    }

    pub fn p_low(&self) -> Scalar {
        one() - &self.p_high
    }

    pub fn prob(&self, agent_type: AgentType) -> Scalar {
        match agent_type {
            AgentType::Low => self.p_low(),
            AgentType::High => self.p_high.clone(),
        }
    }

    /// `p(t_1) p(t_2)` for an i.i.d. draw.
    pub fn joint(&self, type_1: AgentType, type_2: AgentType) -> Scalar {
        self.prob(type_1) * self.prob(type_2)
    }
}

impl fmt::Display for TypeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p(t_h) = {}", scalar::exact(&self.p_high))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapleyShares {
    pub share_1: Scalar,
    pub share_2: Scalar,
}

/// Shapley shares of the characteristic-form game at a grand state. Each
/// employee gets half of their stand-alone value plus half of their marginal
/// contribution to the other's singleton.
pub fn shapley_shares(model: &TamModel, state: GrandState) -> ShapleyShares {
    let grand = model.grand(state);
    let alone_1 = model.singleton(state.singleton_1());
    let alone_2 = model.singleton(state.singleton_2());
    ShapleyShares {
        share_1: (grand - alone_2 + alone_1) * half(),
        share_2: (grand - alone_1 + alone_2) * half(),
    }
}

/// Shapley share net of own effort cost, for both players.
pub fn stage_payoffs(model: &TamModel, cost: &CostModel, state: GrandState) -> (Scalar, Scalar) {
    let shares = shapley_shares(model, state);
    (
        shares.share_1 - cost.cost(state.effort_1, state.type_1),
        shares.share_2 - cost.cost(state.effort_2, state.type_2),
    )
}

/// Ex-ante expected payoffs `(Π_1, Π_2)` of the profile `(s1, s2)`.
pub fn exante_payoffs(
    model: &TamModel,
    cost: &CostModel,
    s1: PureStrategy,
    s2: PureStrategy,
    p: &TypeDistribution,
) -> (Scalar, Scalar) {
    let mut total_1 = Scalar::zero();
    let mut total_2 = Scalar::zero();
    for type_1 in AgentType::ALL {
        for type_2 in AgentType::ALL {
            let state = GrandState::new(s1.effort(type_1), s2.effort(type_2), type_1, type_2);
            let (u1, u2) = stage_payoffs(model, cost, state);
            let weight = p.joint(type_1, type_2);
            total_1 += &weight * u1;
            total_2 += weight * u2;
        }
    }
    (total_1, total_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::example1;
    use crate::scalar::{int, ratio};
    use AgentType::{High as TH, Low as TL};
    use EffortLevel::{High as EH, Low as EL};

    #[test]
    fn grand_state_indexing_round_trips() {
        let states: Vec<_> = GrandState::all().collect();
        assert_eq!(states.len(), 16);
        for (i, s) in states.iter().enumerate() {
            assert_eq!(s.index(), i);
            assert_eq!(s.swap().swap(), *s);
        }
    }

    #[test]
    fn table_values_land_in_the_right_cells() {
        let (m, c) = example1();
        assert_eq!(*m.grand(GrandState::new(EL, EH, TL, TH)), ratio(131, 10));
        assert_eq!(*m.grand(GrandState::new(EH, EL, TL, TH)), int(13));
        assert_eq!(*m.singleton_at(EH, TL), ratio(129, 10));
        assert_eq!(*c.cost(EH, TH), ratio(63, 10));
        assert_eq!(m.empty_value(), int(0));
    }

    #[test]
    fn shapley_examples() {
        let (m, _) = example1();
        let top = shapley_shares(&m, GrandState::new(EH, EH, TH, TH));
        assert_eq!(top.share_1, ratio(25, 2));
        assert_eq!(top.share_2, ratio(25, 2));

        let mixed = shapley_shares(&m, GrandState::new(EL, EH, TL, TH));
        assert_eq!(mixed.share_1, ratio(205, 100));
        assert_eq!(mixed.share_2, ratio(1105, 100));
    }

    #[test]
    fn identical_players_split_evenly() {
        let (m, _) = example1();
        for state in GrandState::all().filter(|g| g.swap() == *g) {
            let shares = shapley_shares(&m, state);
            assert_eq!(shares.share_1, shares.share_2);
            assert_eq!(shares.share_1, m.grand(state) * half());
        }
    }

    #[test]
    fn stage_payoff_examples() {
        let (m, c) = example1();
        let (u1, u2) = stage_payoffs(&m, &c, GrandState::new(EH, EH, TH, TH));
        assert_eq!((u1, u2), (ratio(62, 10), ratio(62, 10)));
        let (u1, u2) = stage_payoffs(&m, &c, GrandState::new(EL, EH, TL, TH));
        assert_eq!((u1, u2), (ratio(5, 100), ratio(475, 100)));
    }

    #[test]
    fn zero_cost_payoffs_are_shares() {
        let (m, _) = example1();
        let c = CostModel::zero();
        for g in GrandState::all() {
            let shares = shapley_shares(&m, g);
            assert_eq!(stage_payoffs(&m, &c, g), (shares.share_1, shares.share_2));
        }
    }

    #[test]
    fn exante_low_low_at_one_half() {
        let (m, c) = example1();
        let p = TypeDistribution::new(half()).unwrap();
        let (pi1, pi2) = exante_payoffs(&m, &c, PureStrategy::LL, PureStrategy::LL, &p);
        assert_eq!(pi1, int(3));
        assert_eq!(pi2, int(3));
    }

    #[test]
    fn distribution_bounds_are_open() {
        assert!(TypeDistribution::new(int(0)).is_err());
        assert!(TypeDistribution::new(int(1)).is_err());
        assert!(TypeDistribution::new(ratio(-1, 2)).is_err());
        let p = TypeDistribution::parse("0.2").unwrap();
        assert_eq!(p.p_low(), ratio(4, 5));
        assert_eq!(p.joint(TL, TH), ratio(4, 25));
    }

    #[test]
    fn strategy_names() {
        assert_eq!(PureStrategy::LH.to_string(), "s_lh");
        assert_eq!(PureStrategy::from_name("s_hl"), Some(PureStrategy::HL));
        assert_eq!(PureStrategy::from_name("hh"), Some(PureStrategy::HH));
        assert_eq!(PureStrategy::from_name("s_xx"), None);
        assert_eq!(PureStrategy::LH.effort(TH), EH);
    }

    #[test]
    fn negative_machine_values_are_rejected() {
        let err = TamModel::from_fn(|_| int(-1), |_| int(0)).unwrap_err();
        assert!(matches!(err, Error::NegativeMachineValue { .. }));
    }
}
