//! Structural assumptions on the machine and the cost function.
//!
//! Every check is strict and runs over the whole (finite) domain, so a
//! passing report is a proof and a failing one carries hand-checkable
//! witnesses.

use std::fmt;

use crate::model::{AgentType, CostModel, EffortLevel, GrandState, SingletonState, TamModel};
use crate::scalar::{self, Scalar};

/// A cell of the machine or cost table named in a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coalition {
    Singleton(SingletonState),
    Grand(GrandState),
    Empty,
    Cost(SingletonState),
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coalition::Singleton(s) => write!(f, "M{s}"),
            Coalition::Grand(g) => write!(f, "M{g}"),
            Coalition::Empty => f.write_str("M(empty)"),
            Coalition::Cost(s) => write!(f, "C{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub assumption: &'static str,
    pub witnesses: Vec<Coalition>,
    pub values: Vec<Scalar>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.assumption, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub name: &'static str,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(name: &'static str, violations: Vec<Violation>) -> Self {
        Self {
            name,
            passed: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntelligenceMode {
    Strict,
    GrandOnly,
}

type Profile = (EffortLevel, EffortLevel);

const PROFILES: [Profile; 4] = [
    (EffortLevel::Low, EffortLevel::Low),
    (EffortLevel::Low, EffortLevel::High),
    (EffortLevel::High, EffortLevel::Low),
    (EffortLevel::High, EffortLevel::High),
];

/// Pairs `(a, b)` with `a < b` componentwise (no decrease, some increase).
/// `(l,h)` and `(h,l)` are incomparable.
fn comparable_pairs<T: Copy + Ord>(profiles: [(T, T); 4]) -> Vec<((T, T), (T, T))> {
    let mut pairs = Vec::new();
    for a in profiles {
        for b in profiles {
            if a != b && a.0 <= b.0 && a.1 <= b.1 {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn effort_pairs() -> Vec<(Profile, Profile)> {
    comparable_pairs(PROFILES)
}

fn type_profiles() -> [(AgentType, AgentType); 4] {
    PROFILES.map(|(a, b)| (to_type(a), to_type(b)))
}

fn to_type(e: EffortLevel) -> AgentType {
    match e {
        EffortLevel::Low => AgentType::Low,
        EffortLevel::High => AgentType::High,
    }
}

fn type_pairs() -> Vec<((AgentType, AgentType), (AgentType, AgentType))> {
    comparable_pairs(type_profiles())
}

fn pair_text<A: fmt::Display, B: fmt::Display>(p: (A, B)) -> String {
    format!("({},{})", p.0, p.1)
}

fn grand(model: &TamModel, e: Profile, t: (AgentType, AgentType)) -> (Coalition, Scalar) {
    let g = GrandState::from_profiles(e, t);
    (Coalition::Grand(g), model.grand(g).clone())
}

pub fn validate_symmetry(model: &TamModel) -> ValidationReport {
    let mut violations = Vec::new();
    for g in GrandState::all().filter(|g| *g < g.swap()) {
        let (a, b) = (model.grand(g), model.grand(g.swap()));
        if a != b {
            violations.push(Violation {
                assumption: "symmetry",
                witnesses: vec![Coalition::Grand(g), Coalition::Grand(g.swap())],
                values: vec![a.clone(), b.clone()],
                detail: format!(
                    "M{g} = {} but M{} = {}",
                    scalar::exact(a),
                    g.swap(),
                    scalar::exact(b)
                ),
            });
        }
    }
    ValidationReport::from_violations("symmetry", violations)
}

/// Distinct configurations must produce distinct outputs. Grand states are
/// compared modulo the player swap.
pub fn validate_intelligence(model: &TamModel, mode: IntelligenceMode) -> ValidationReport {
    let mut cells: Vec<(Coalition, Scalar)> = SingletonState::all()
        .map(|s| (Coalition::Singleton(s), model.singleton(s).clone()))
        .collect();
    cells.extend(
        GrandState::all()
            .filter(|g| *g <= g.swap())
            .map(|g| (Coalition::Grand(g), model.grand(g).clone())),
    );
    if mode == IntelligenceMode::Strict {
        cells.push((Coalition::Empty, model.empty_value()));
    }

    let mut violations = Vec::new();
    for (i, (a, va)) in cells.iter().enumerate() {
        for (b, vb) in &cells[i + 1..] {
            let same_class = matches!(
                (a, b),
                (Coalition::Singleton(_), Coalition::Singleton(_))
                    | (Coalition::Grand(_), Coalition::Grand(_))
            );
            let grand_vs_empty = matches!(
                (a, b),
                (Coalition::Grand(_), Coalition::Empty) | (Coalition::Empty, Coalition::Grand(_))
            );
            if va == vb && !grand_vs_empty && (same_class || mode == IntelligenceMode::Strict) {
                violations.push(Violation {
                    assumption: "intelligence",
                    witnesses: vec![*a, *b],
                    values: vec![va.clone(), vb.clone()],
                    detail: format!("{a} = {b} = {}", scalar::exact(va)),
                });
            }
        }
    }
    let name = match mode {
        IntelligenceMode::Strict => "intelligence (strict)",
        IntelligenceMode::GrandOnly => "intelligence (grand-only)",
    };
    ValidationReport::from_violations(name, violations)
}

fn increase_violation(
    assumption: &'static str,
    lower: (Coalition, Scalar),
    upper: (Coalition, Scalar),
) -> Option<Violation> {
    (lower.1 >= upper.1).then(|| Violation {
        assumption,
        detail: format!(
            "{} = {} is not below {} = {}",
            lower.0,
            scalar::exact(&lower.1),
            upper.0,
            scalar::exact(&upper.1)
        ),
        witnesses: vec![lower.0, upper.0],
        values: vec![lower.1, upper.1],
    })
}

/// Strict increase along the effort order (types fixed) and the type order
/// (efforts fixed), for grand and singleton values.
pub fn validate_machine_monotonicity(model: &TamModel) -> ValidationReport {
    let mut violations = Vec::new();
    for t in type_profiles() {
        for (lo, hi) in effort_pairs() {
            violations.extend(increase_violation(
                "effort monotonicity",
                grand(model, lo, t),
                grand(model, hi, t),
            ));
        }
    }
    for e in PROFILES {
        for (lo, hi) in type_pairs() {
            violations.extend(increase_violation(
                "type monotonicity",
                grand(model, e, lo),
                grand(model, e, hi),
            ));
        }
    }
    let single = |e, t| {
        let s = SingletonState::new(e, t);
        (Coalition::Singleton(s), model.singleton(s).clone())
    };
    for t in AgentType::ALL {
        violations.extend(increase_violation(
            "effort monotonicity",
            single(EffortLevel::Low, t),
            single(EffortLevel::High, t),
        ));
    }
    for e in EffortLevel::ALL {
        violations.extend(increase_violation(
            "type monotonicity",
            single(e, AgentType::Low),
            single(e, AgentType::High),
        ));
    }
    ValidationReport::from_violations("monotonicity", violations)
}

fn increment_violation(
    assumption: &'static str,
    context: String,
    small: [(Coalition, Scalar); 2],
    large: [(Coalition, Scalar); 2],
) -> Option<Violation> {
    let d_small = &small[1].1 - &small[0].1;
    let d_large = &large[1].1 - &large[0].1;
    (d_small >= d_large).then(|| Violation {
        assumption,
        detail: format!(
            "{context}: {} - {} = {} is not below {} - {} = {}",
            small[1].0,
            small[0].0,
            scalar::exact(&d_small),
            large[1].0,
            large[0].0,
            scalar::exact(&d_large)
        ),
        witnesses: vec![small[0].0, small[1].0, large[0].0, large[1].0],
        values: vec![
            small[0].1.clone(),
            small[1].1.clone(),
            large[0].1.clone(),
            large[1].1.clone(),
        ],
    })
}

/// Effort increments grow strictly with the type profile.
pub fn validate_supermodularity(model: &TamModel) -> ValidationReport {
    let mut violations = Vec::new();
    for (t_lo, t_hi) in type_pairs() {
        for (e_lo, e_hi) in effort_pairs() {
            violations.extend(increment_violation(
                "supermodularity",
                format!(
                    "efforts {} -> {}, types {} vs {}",
                    pair_text(e_lo),
                    pair_text(e_hi),
                    pair_text(t_lo),
                    pair_text(t_hi)
                ),
                [grand(model, e_lo, t_lo), grand(model, e_hi, t_lo)],
                [grand(model, e_lo, t_hi), grand(model, e_hi, t_hi)],
            ));
        }
    }
    let single = |e, t| {
        let s = SingletonState::new(e, t);
        (Coalition::Singleton(s), model.singleton(s).clone())
    };
    violations.extend(increment_violation(
        "supermodularity",
        "singleton".to_string(),
        [
            single(EffortLevel::Low, AgentType::Low),
            single(EffortLevel::High, AgentType::Low),
        ],
        [
            single(EffortLevel::Low, AgentType::High),
            single(EffortLevel::High, AgentType::High),
        ],
    ));
    ValidationReport::from_violations("supermodularity", violations)
}

/// Along both maximal effort chains at every type profile, the second
/// increment is strictly smaller than the first.
pub fn validate_concavity(model: &TamModel) -> ValidationReport {
    use EffortLevel::{High, Low};
    let chains = [
        [(Low, Low), (Low, High), (High, High)],
        [(Low, Low), (High, Low), (High, High)],
    ];
    let mut violations = Vec::new();
    for t in type_profiles() {
        for chain in chains {
            let [a, b, c] = chain.map(|e| grand(model, e, t));
            let first = &b.1 - &a.1;
            let second = &c.1 - &b.1;
            if second >= first {
                violations.push(Violation {
                    assumption: "concavity",
                    detail: format!(
                        "types {}, via {}: chain {}, {}, {} has increments {} then {}",
                        pair_text(t),
                        b.0,
                        scalar::exact(&a.1),
                        scalar::exact(&b.1),
                        scalar::exact(&c.1),
                        scalar::exact(&first),
                        scalar::exact(&second)
                    ),
                    witnesses: vec![a.0, b.0, c.0],
                    values: vec![a.1, b.1, c.1],
                });
            }
        }
    }
    ValidationReport::from_violations("concavity", violations)
}

/// Effort is costly, the efficient type pays less, and the efficient type's
/// cost increment is smaller.
pub fn validate_cost(cost: &CostModel) -> ValidationReport {
    let cell = |e, t| {
        let s = SingletonState::new(e, t);
        (Coalition::Cost(s), cost.cost(e, t).clone())
    };
    let mut violations = Vec::new();
    for t in AgentType::ALL {
        violations.extend(increase_violation(
            "cost effort monotonicity",
            cell(EffortLevel::Low, t),
            cell(EffortLevel::High, t),
        ));
    }
    for e in EffortLevel::ALL {
        violations.extend(increase_violation(
            "cost type efficiency",
            cell(e, AgentType::High),
            cell(e, AgentType::Low),
        ));
    }
    violations.extend(increment_violation(
        "cost sub-modularity",
        "effort increment".to_string(),
        [
            cell(EffortLevel::Low, AgentType::High),
            cell(EffortLevel::High, AgentType::High),
        ],
        [
            cell(EffortLevel::Low, AgentType::Low),
            cell(EffortLevel::High, AgentType::Low),
        ],
    ));
    ValidationReport::from_violations("cost", violations)
}

/// Every validator run on one model.
#[derive(Debug, Clone)]
pub struct ModelValidation {
    pub symmetry: ValidationReport,
    pub intelligence: ValidationReport,
    pub intelligence_strict: ValidationReport,
    pub monotonicity: ValidationReport,
    pub supermodularity: ValidationReport,
    pub concavity: ValidationReport,
    pub cost: ValidationReport,
}

impl ModelValidation {
    pub fn run(model: &TamModel, cost: &CostModel) -> Self {
        Self {
            symmetry: validate_symmetry(model),
            intelligence: validate_intelligence(model, IntelligenceMode::GrandOnly),
            intelligence_strict: validate_intelligence(model, IntelligenceMode::Strict),
            monotonicity: validate_machine_monotonicity(model),
            supermodularity: validate_supermodularity(model),
            concavity: validate_concavity(model),
            cost: validate_cost(cost),
        }
    }

    /// Super-modular machine and sub-modular cost: what the interval
    /// characterizations rest on.
    pub fn hypotheses_hold(&self) -> bool {
        self.symmetry.passed && self.supermodularity.passed && self.cost.passed
    }

    /// The checks that decide the `validate` exit code. Strict intelligence
    /// and concavity are informational.
    pub fn required_pass(&self) -> bool {
        self.symmetry.passed
            && self.intelligence.passed
            && self.monotonicity.passed
            && self.supermodularity.passed
            && self.cost.passed
    }

    pub fn reports(&self) -> [&ValidationReport; 7] {
        [
            &self.symmetry,
            &self.intelligence,
            &self.intelligence_strict,
            &self.monotonicity,
            &self.supermodularity,
            &self.concavity,
            &self.cost,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::example1;
    use crate::scalar::{int, ratio};
    use AgentType::{High as TH, Low as TL};
    use EffortLevel::{High as EH, Low as EL};

    fn constant_model(v: i64) -> TamModel {
        TamModel::from_fn(|_| int(v), |_| int(v)).unwrap()
    }

    #[test]
    fn symmetry_on_table_and_injected_break() {
        let (m, _) = example1();
        assert!(validate_symmetry(&m).passed);
        assert!(validate_symmetry(&constant_model(3)).passed);

        let broken = m
            .with_grand(GrandState::new(EH, EL, TH, TL), int(13))
            .unwrap();
        let report = validate_symmetry(&broken);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(
            report.violations[0].witnesses,
            vec![
                Coalition::Grand(GrandState::new(EL, EH, TL, TH)),
                Coalition::Grand(GrandState::new(EH, EL, TH, TL)),
            ]
        );
    }

    #[test]
    fn intelligence_on_table() {
        let (m, _) = example1();
        let grand_only = validate_intelligence(&m, IntelligenceMode::GrandOnly);
        // 16 shows up at (h,h | l,l) and at the mixed-effort (t_h,t_h) class.
        assert!(!grand_only.passed);
        assert_eq!(grand_only.violations.len(), 1);
        assert_eq!(
            grand_only.violations[0].witnesses,
            vec![
                Coalition::Grand(GrandState::new(EL, EH, TH, TH)),
                Coalition::Grand(GrandState::new(EH, EH, TL, TL)),
            ]
        );

        let strict = validate_intelligence(&m, IntelligenceMode::Strict);
        assert!(strict.violations.iter().any(|v| v.witnesses
            == vec![
                Coalition::Singleton(SingletonState::new(EH, TH)),
                Coalition::Grand(GrandState::new(EH, EH, TL, TL)),
            ]));
        assert_eq!(strict.violations.len(), 4);
    }

    #[test]
    fn intelligence_catches_injected_collision() {
        let (m, _) = example1();
        let m = m
            .with_grand(GrandState::new(EL, EL, TL, TL), int(25))
            .unwrap();
        for mode in [IntelligenceMode::GrandOnly, IntelligenceMode::Strict] {
            let report = validate_intelligence(&m, mode);
            assert!(report.violations.iter().any(|v| v.witnesses
                == vec![
                    Coalition::Grand(GrandState::new(EL, EL, TL, TL)),
                    Coalition::Grand(GrandState::new(EH, EH, TH, TH)),
                ]));
        }
    }

    #[test]
    fn zero_singleton_fails_strict_only() {
        let (m, _) = example1();
        let m = m
            .with_singleton(SingletonState::new(EL, TL), int(0))
            .unwrap();
        let has_empty = |mode| {
            validate_intelligence(&m, mode)
                .violations
                .iter()
                .any(|v| v.witnesses.contains(&Coalition::Empty))
        };
        assert!(has_empty(IntelligenceMode::Strict));
        assert!(!has_empty(IntelligenceMode::GrandOnly));
    }

    #[test]
    fn monotonicity() {
        let (m, _) = example1();
        assert!(validate_machine_monotonicity(&m).passed);

        let flat = validate_machine_monotonicity(&constant_model(5));
        assert_eq!(flat.violations.len(), 20 + 20 + 2 + 2);

        let dented = m
            .with_grand(GrandState::new(EH, EH, TL, TL), int(10))
            .unwrap();
        let report = validate_machine_monotonicity(&dented);
        assert!(report.violations.iter().any(|v| v.witnesses
            == vec![
                Coalition::Grand(GrandState::new(EL, EH, TL, TL)),
                Coalition::Grand(GrandState::new(EH, EH, TL, TL)),
            ]
            && v.values == vec![int(11), int(10)]));
    }

    #[test]
    fn supermodularity() {
        let (m, _) = example1();
        assert!(validate_supermodularity(&m).passed);

        let additive = TamModel::from_fn(
            |s| int(s.effort as i64 * 3 + s.agent_type as i64 * 5),
            |g| {
                int(g.effort_1 as i64 * 3
                    + g.effort_2 as i64 * 3
                    + g.type_1 as i64 * 5
                    + g.type_2 as i64 * 5)
            },
        )
        .unwrap();
        let report = validate_supermodularity(&additive);
        assert_eq!(report.violations.len(), 26);

        let flattened = m
            .with_grand(GrandState::new(EH, EH, TH, TH), int(17))
            .unwrap();
        let report = validate_supermodularity(&flattened);
        assert!(report.violations.iter().any(|v| v.witnesses
            == vec![
                Coalition::Grand(GrandState::new(EL, EL, TL, TL)),
                Coalition::Grand(GrandState::new(EH, EH, TL, TL)),
                Coalition::Grand(GrandState::new(EL, EL, TH, TH)),
                Coalition::Grand(GrandState::new(EH, EH, TH, TH)),
            ]));
    }

    #[test]
    fn concavity_fails_on_table_at_low_low() {
        let (m, _) = example1();
        let report = validate_concavity(&m);
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| v.values == vec![int(8), int(11), int(16)]));
    }

    #[test]
    fn concavity_on_constructed_chains() {
        let (m, _) = example1();
        let along = |v: i64| {
            m.with_grand_symmetric(GrandState::new(EH, EH, TL, TL), int(v))
                .unwrap()
        };
        let concave = validate_concavity(&along(13));
        assert!(concave
            .violations
            .iter()
            .all(|v| v.witnesses[0] != Coalition::Grand(GrandState::new(EL, EL, TL, TL))));

        let straight = validate_concavity(&along(14));
        assert_eq!(
            straight
                .violations
                .iter()
                .filter(|v| v.values == vec![int(8), int(11), int(14)])
                .count(),
            2
        );
    }

    #[test]
    fn cost_checks() {
        let (_, c) = example1();
        assert!(validate_cost(&c).passed);

        let zero = validate_cost(&CostModel::zero());
        assert!(zero
            .violations
            .iter()
            .any(|v| v.assumption == "cost effort monotonicity"));

        let steep = CostModel::from_fn(|e, t| match (e, t) {
            (EH, TH) => ratio(72, 10),
            _ => c.cost(e, t).clone(),
        });
        let report = validate_cost(&steep);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].assumption, "cost sub-modularity");
    }

    #[test]
    fn summary_for_table() {
        let (m, c) = example1();
        let v = ModelValidation::run(&m, &c);
        assert!(v.hypotheses_hold());
        assert!(!v.required_pass());
    }
}
