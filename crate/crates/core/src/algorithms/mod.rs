//! Actor-critic learners with a weighted list of critics.
//!
//! Every agent improves its actor with a blend of critics. The reward critic
//! is a learned network (`Q^w` or `V^w`); the potential-field critic is the
//! analytic `q_pf` of [`crate::potential_field`]. DDPG uses the reward critic
//! alone; the other modes weight it by `beta` and the field by `1 - beta`.

mod buffer;
mod learner;

pub use buffer::{ReplayBuffer, Transition};
pub use learner::{ActionChoice, AgentLearner, LearnerCheckpoint, LEARNER_CHECKPOINT_VERSION};

use serde::{Deserialize, Serialize};

use crate::approximator::OptimizerKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Deterministic actor, replay + target networks, reward critic only.
    Ddpg,
    /// DDPG machinery with the actor gradient blended with the field critic.
    Pgddpg,
    /// On-policy deterministic actor-critic-2 with a Sarsa critic.
    SarsaAc2,
    /// Gaussian policy with an advantage (state value) critic and the field
    /// critic.
    StochasticAc2,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Ddpg, Mode::Pgddpg, Mode::SarsaAc2, Mode::StochasticAc2];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Ddpg => "ddpg",
            Mode::Pgddpg => "pgddpg",
            Mode::SarsaAc2 => "sarsa_ac2",
            Mode::StochasticAc2 => "stochastic_ac2",
        }
    }

    pub fn uses_replay(self) -> bool {
        matches!(self, Mode::Ddpg | Mode::Pgddpg)
    }

    pub fn uses_field(self) -> bool {
        !matches!(self, Mode::Ddpg)
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm {s:?}")))
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HyperParams {
    /// Weight of the reward critic; the field critic gets `1 - beta`.
    pub beta: f64,
    /// Reward discount.
    pub gamma1: f64,
    /// Field discount. Only 0 is supported: the field critic is `q_pf`
    /// itself, without bootstrapping.
    pub gamma2: f64,
    pub actor_lr: f64,
    pub critic_lr: f64,
    pub tau: f64,
    /// Exploration noise (deterministic modes) or policy standard deviation
    /// (stochastic mode).
    pub noise_sigma: f64,
    pub batch_size: usize,
    pub buffer_capacity: usize,
    pub warmup_steps: usize,
    /// Environment steps between replay updates.
    pub update_every: usize,
    pub hidden_sizes: Vec<usize>,
    pub optimizer: OptimizerKind,
    /// Global L2 clip on actor gradients.
    pub max_grad_norm: Option<f64>,
}

impl Default for HyperParams {
    fn default() -> Self {
        HyperParams {
            beta: 0.5,
            gamma1: 0.99,
            gamma2: 0.0,
            actor_lr: 1e-3,
            critic_lr: 1e-3,
            tau: 0.01,
            noise_sigma: 0.3,
            batch_size: 64,
            buffer_capacity: 100_000,
            warmup_steps: 1_000,
            update_every: 1,
            hidden_sizes: vec![64, 64],
            optimizer: OptimizerKind::ADAM,
            max_grad_norm: None,
        }
    }
}

impl HyperParams {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::Config(msg)) };
        check(
            (0.0..=1.0).contains(&self.beta),
            format!("beta must lie in [0, 1], got {}", self.beta),
        )?;
        check(
            (0.0..1.0).contains(&self.gamma1),
            format!("gamma1 must lie in [0, 1), got {}", self.gamma1),
        )?;
        check(
            self.gamma2 == 0.0,
            format!(
                "gamma2 = {} is not supported; the field critic is not bootstrapped (use 0)",
                self.gamma2
            ),
        )?;
        check(
            self.actor_lr > 0.0 && self.actor_lr.is_finite(),
            format!("actor_lr must be positive, got {}", self.actor_lr),
        )?;
        check(
            self.critic_lr > 0.0 && self.critic_lr.is_finite(),
            format!("critic_lr must be positive, got {}", self.critic_lr),
        )?;
        check(
            self.tau > 0.0 && self.tau <= 1.0,
            format!("tau must lie in (0, 1], got {}", self.tau),
        )?;
        check(
            self.noise_sigma >= 0.0 && self.noise_sigma.is_finite(),
            format!("noise_sigma must be nonnegative, got {}", self.noise_sigma),
        )?;
        check(self.batch_size > 0, "batch_size must be positive".to_string())?;
        check(
            self.buffer_capacity >= self.batch_size,
            "buffer_capacity must be at least batch_size".to_string(),
        )?;
        check(self.update_every > 0, "update_every must be positive".to_string())?;
        check(
            self.hidden_sizes.iter().all(|&h| h > 0),
            "hidden sizes must be positive".to_string(),
        )?;
        if let Some(c) = self.max_grad_norm {
            check(c > 0.0, format!("max_grad_norm must be positive, got {c}"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticKind {
    RewardQ,
    PotentialField,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticHandle {
    pub kind: CriticKind,
    pub weight: f64,
    pub discount: f64,
}

/// The critic list for a mode: `[reward: 1]` for DDPG, otherwise
/// `[reward: beta, field: 1 - beta]`.
pub fn critics_for(mode: Mode, hyper: &HyperParams) -> Vec<CriticHandle> {
    let reward = |weight| CriticHandle {
        kind: CriticKind::RewardQ,
        weight,
        discount: hyper.gamma1,
    };
    if mode.uses_field() {
        vec![
            reward(hyper.beta),
            CriticHandle {
                kind: CriticKind::PotentialField,
                weight: 1.0 - hyper.beta,
                discount: hyper.gamma2,
            },
        ]
    } else {
        vec![reward(1.0)]
    }
}
