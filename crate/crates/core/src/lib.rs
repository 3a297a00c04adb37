//! Potential-field guided actor-critic learning.
//!
//! The crate blends a learned reward critic with an analytic artificial
//! potential field critic when improving a policy, and ships a small
//! continuous predator-prey world to exercise it:
//!
//! - [`potential_field`]: attractive/repulsive potentials, the field force and
//!   the field action value `q_pf(s, a) = -U(s) (1 - cos chi)` with its action
//!   gradient.
//! - [`approximator`]: a minimal MLP with exact backpropagation, optimizers,
//!   soft target updates and a lossless checkpoint format.
//! - [`environment`]: bounded 2-D particle world, N predators vs one prey,
//!   sparse cooperative capture reward.
//! - [`algorithms`]: DDPG, the field-guided PGDDPG, the on-policy Sarsa
//!   actor-critic-2 and the stochastic actor-critic-2 learners.
//! - [`harness`]: experiment loop, windowed metrics, evaluation and prey
//!   pretraining.
//! - [`config`] and [`cli`]: JSON run configuration and the `pfac` command.
//!
//! See `examples/` for one runnable program per capability.

pub mod algorithms;
pub mod approximator;
pub mod cli;
pub mod config;
pub mod environment;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod potential_field;

pub use error::{Error, Result};
pub use geometry::Vec2;
