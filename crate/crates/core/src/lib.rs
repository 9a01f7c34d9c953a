//! Exact analysis of the two-employee incomplete-information game induced by
//! an intelligent task aggregator machine (TAM).
//!
//! A TAM maps admissible coalitions (who is present, with which effort and
//! efficiency type) to output. Each grand machine state induces a two-player
//! characteristic-form game whose Shapley shares, net of effort costs, are
//! the employees' stage payoffs. Types are drawn i.i.d. from a two-point
//! distribution, so every question about symmetric ex-ante equilibria reduces
//! to exact rational arithmetic in `p(t_h)`.
//!
//! Modules:
//! - [`model`]: machine, cost, strategies, Shapley shares and payoffs.
//! - [`validate`]: structural assumption checks with hand-checkable witnesses.
//! - [`equilibrium`]: brute-force ex-ante Nash checks and SNE enumeration.
//! - [`thresholds`]: closed-form SNE intervals, existence chains,
//!   rationalizability, and the Farkas systems built from them.
//! - [`farkas`]: exact two-variable feasibility with primal/dual certificates.
//! - [`welfare`]: expected net welfare curves and dominance analysis.
//! - [`coalition`]: probation/joint coalition strategies.
//! - [`io`], [`sweep`], [`cli`]: model documents, CSV sweeps, command line.

pub mod cli;
pub mod coalition;
pub mod equilibrium;
pub mod error;
pub mod farkas;
pub mod interval;
pub mod io;
pub mod model;
pub mod quadratic;
pub mod scalar;
pub mod sweep;
pub mod thresholds;
pub mod validate;
pub mod welfare;

pub use error::{Error, Result};
pub use interval::RationalInterval;
pub use model::{
    AgentType, CostModel, EffortLevel, GrandState, Player, PureStrategy, ShapleyShares,
    SingletonState, TamModel, TypeDistribution,
};
pub use scalar::Scalar;
