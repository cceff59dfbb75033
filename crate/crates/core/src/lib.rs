//! Strategic-alliance blockchain governance game for drone swarm security.
//!
//! A swarm of `M` drones keeps a shared ledger. An attacker captures nodes as
//! a compound Poisson process observed at exponentially spaced epochs; the
//! swarm may, one epoch before the attacker reaches a strict majority, reserve
//! up to `M/2 - 1` allied nodes (each accepting with probability `rho`) to
//! raise the bar the attacker must clear.
//!
//! The crate is organised by concern:
//!
//! - [`poisson`]: probability kernels (Poisson pmf/cdf/tail, binomial pmf).
//! - [`model`]: closed-form burst probabilities, the total defense cost and
//!   the two-strategy cost matrix game.
//! - [`series`]: dense truncated power series in three auxiliary variables.
//! - [`fluctuation`]: the first-excess joint functional and the exit-index
//!   generating function built on [`series`].
//! - [`sim`]: a reproducible Monte Carlo simulator of the attacker/swarm race,
//!   used as an independent oracle for the analytic quantities.
//! - [`optimize`]: cost sweeps and the minimizing alliance probability.
//! - [`config`] and [`cli`]: the `key = value` run configuration and the
//!   command-line front end.

pub mod cli;
pub mod config;
pub mod error;
pub mod fluctuation;
pub mod model;
pub mod optimize;
pub mod poisson;
pub mod probability;
pub mod series;
pub mod sim;

pub use error::{Error, Result};
pub use model::{CostBreakdown, CostMatrix, Feasibility, Strategy, StrategyChoice, StrategyKind, SwarmParams};
pub use probability::Probability;
