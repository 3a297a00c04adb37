use std::path::Path;

use ndarray::{s, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::buffer::{ReplayBuffer, Transition};
use super::{critics_for, CriticHandle, CriticKind, HyperParams, Mode};
use crate::approximator::{
    Activation, Direction, MlpCheckpoint, MlpParams, MlpSpec, Optimizer, ParamGrads,
};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::potential_field::{evaluate_field, gradient_from_field, value_from_field};

pub const ACTION_DIM: usize = 2;
pub const LEARNER_CHECKPOINT_VERSION: u32 = 1;

/// The action sent to the world and the one recorded for learning.
///
/// They differ only in the stochastic mode, where the unclipped Gaussian
/// sample is kept so its log-density is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionChoice {
    pub executed: Vec2,
    pub stored: Vec2,
}

/// One agent's networks, optimizers, replay memory and noise source.
///
/// Nothing here is shared between agents: an update only ever reads the
/// learner's own parameters and buffer.
#[derive(Debug, Clone)]
pub struct AgentLearner {
    pub actor: MlpParams,
    pub actor_target: MlpParams,
    /// `Q^w(s, a)` on `[obs, action]`, or `V^w(s)` in the stochastic mode.
    pub critic: MlpParams,
    pub critic_target: MlpParams,
    pub critics: Vec<CriticHandle>,
    pub hyper: HyperParams,
    pub buffer: ReplayBuffer,
    pub mode: Mode,
    actor_opt: Optimizer,
    critic_opt: Optimizer,
    rng: ChaCha8Rng,
    steps_seen: usize,
}

fn clip_unit(a: Vec2) -> Vec2 {
    Vec2::new(a.x.clamp(-1.0, 1.0), a.y.clamp(-1.0, 1.0))
}

fn rows(vectors: impl ExactSizeIterator<Item = Vec<f64>>, width: usize) -> Result<Array2<f64>> {
    let n = vectors.len();
    let mut flat = Vec::with_capacity(n * width);
    for v in vectors {
        if v.len() != width {
            return Err(Error::Usage(format!(
                "vector of length {} where {width} was expected",
                v.len()
            )));
        }
        flat.extend(v);
    }
    Array2::from_shape_vec((n, width), flat).map_err(|e| Error::Usage(e.to_string()))
}

fn choose_action<R: Rng + ?Sized>(
    actor: &MlpParams,
    mode: Mode,
    sigma: f64,
    obs: &[f64],
    explore: bool,
    rng: &mut R,
) -> Result<ActionChoice> {
    let mean = Vec2::from_slice(&actor.forward(obs)?);
    if !explore || sigma == 0.0 {
        let a = clip_unit(mean);
        return Ok(ActionChoice {
            executed: a,
            stored: a,
        });
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| Error::Usage(e.to_string()))?;
    let sample = mean + Vec2::new(normal.sample(rng), normal.sample(rng));
    let executed = clip_unit(sample);
    let stored = match mode {
        Mode::StochasticAc2 => sample,
        _ => executed,
    };
    Ok(ActionChoice { executed, stored })
}

fn concat(obs: &[f64], action: Vec2) -> Vec<f64> {
    let mut v = Vec::with_capacity(obs.len() + ACTION_DIM);
    v.extend_from_slice(obs);
    v.push(action.x);
    v.push(action.y);
    v
}

fn ensure_finite(net: &MlpParams, what: &str) -> Result<()> {
    if net.is_finite() {
        Ok(())
    } else {
        Err(Error::Diverged(format!("{what} parameters became non-finite")))
    }
}

impl AgentLearner {
    pub fn new(mode: Mode, hyper: HyperParams, obs_dim: usize, seed: u64) -> Result<Self> {
        hyper.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let actor_spec = MlpSpec::with_hidden(
            obs_dim,
            &hyper.hidden_sizes,
            ACTION_DIM,
            Activation::Relu,
            Activation::Tanh,
        )?;
        let critic_in = match mode {
            Mode::StochasticAc2 => obs_dim,
            _ => obs_dim + ACTION_DIM,
        };
        let critic_spec = MlpSpec::with_hidden(
            critic_in,
            &hyper.hidden_sizes,
            1,
            Activation::Relu,
            Activation::Identity,
        )?;
        let actor = MlpParams::init(actor_spec, &mut rng)?;
        let critic = MlpParams::init(critic_spec, &mut rng)?;
        let buffer_seed = rng.random();
        Ok(Self::from_networks(mode, hyper, actor, critic, buffer_seed, rng))
    }

    fn from_networks(
        mode: Mode,
        hyper: HyperParams,
        actor: MlpParams,
        critic: MlpParams,
        buffer_seed: u64,
        rng: ChaCha8Rng,
    ) -> Self {
        AgentLearner {
            actor_target: actor.clone(),
            critic_target: critic.clone(),
            actor,
            critic,
            critics: critics_for(mode, &hyper),
            buffer: ReplayBuffer::new(hyper.buffer_capacity, buffer_seed),
            actor_opt: Optimizer::new(hyper.optimizer),
            critic_opt: Optimizer::new(hyper.optimizer),
            hyper,
            mode,
            rng,
            steps_seen: 0,
        }
    }

    pub fn obs_dim(&self) -> usize {
        self.actor.input_dim()
    }

    /// Changes the blend weight; the critic list is rebuilt.
    pub fn set_beta(&mut self, beta: f64) -> Result<()> {
        let hyper = HyperParams { beta, ..self.hyper.clone() };
        hyper.validate()?;
        self.critics = critics_for(self.mode, &hyper);
        self.hyper = hyper;
        Ok(())
    }

    fn critic_weight(&self, kind: CriticKind) -> f64 {
        self.critics
            .iter()
            .filter(|c| c.kind == kind)
            .map(|c| c.weight)
            .sum()
    }

    fn check_obs(&self, obs: &[f64]) -> Result<()> {
        if obs.len() != self.obs_dim() {
            return Err(Error::Usage(format!(
                "observation has {} entries, actor expects {}",
                obs.len(),
                self.obs_dim()
            )));
        }
        Ok(())
    }

    /// Policy output for `obs`: the deterministic action, or the Gaussian
    /// mean in the stochastic mode.
    pub fn policy_mean(&self, obs: &[f64]) -> Result<Vec2> {
        self.check_obs(obs)?;
        Ok(Vec2::from_slice(&self.actor.forward(obs)?))
    }

    /// Acts with the given noise source; the executed action is clipped to
    /// `[-1, 1]^2`. Without exploration every mode returns the clipped mean.
    pub fn select_action<R: Rng + ?Sized>(
        &self,
        obs: &[f64],
        explore: bool,
        rng: &mut R,
    ) -> Result<ActionChoice> {
        self.check_obs(obs)?;
        choose_action(&self.actor, self.mode, self.hyper.noise_sigma, obs, explore, rng)
    }

    /// [`select_action`](Self::select_action) with the learner's own noise
    /// source.
    pub fn act(&mut self, obs: &[f64], explore: bool) -> Result<ActionChoice> {
        self.check_obs(obs)?;
        choose_action(
            &self.actor,
            self.mode,
            self.hyper.noise_sigma,
            obs,
            explore,
            &mut self.rng,
        )
    }

    /// Mean over the batch of `grad_theta mu(s) . g_a`, where `g_a` is the
    /// critic-weighted action gradient
    /// `beta grad_a Q^w(s, a) + (1 - beta) grad_a q_pf(s, a)` at
    /// `a = mu(s)`. Critics with zero weight are skipped.
    pub fn blended_actor_gradient(&self, batch: &[&Transition]) -> Result<ParamGrads> {
        if batch.is_empty() {
            return Err(Error::Usage("actor gradient of an empty batch".to_string()));
        }
        if self.mode == Mode::StochasticAc2 {
            return Err(Error::Usage(
                "the stochastic mode has no deterministic actor gradient".to_string(),
            ));
        }
        let obs_dim = self.obs_dim();
        let x = rows(batch.iter().map(|t| t.obs.clone()), obs_dim)?;
        let actions = self.actor.forward_batch(&x)?;
        let n = batch.len();
        let mut g_a = Array2::<f64>::zeros((n, ACTION_DIM));

        let reward_w = self.critic_weight(CriticKind::RewardQ);
        if reward_w != 0.0 {
            let mut critic_in = Array2::<f64>::zeros((n, obs_dim + ACTION_DIM));
            critic_in.slice_mut(s![.., ..obs_dim]).assign(&x);
            critic_in.slice_mut(s![.., obs_dim..]).assign(&actions);
            let ones = Array2::<f64>::ones((n, 1));
            let (_, input_grad) = self.critic.backward_batch(&critic_in, &ones)?;
            g_a.scaled_add(reward_w, &input_grad.slice(s![.., obs_dim..]));
        }

        let field_w = self.critic_weight(CriticKind::PotentialField);
        if field_w != 0.0 {
            for (i, t) in batch.iter().enumerate() {
                let spec = t.pf_spec_snapshot.as_ref().ok_or_else(|| {
                    Error::Usage("transition carries no potential field snapshot".to_string())
                })?;
                let field = evaluate_field(spec, t.raw_state_pos);
                let a = Vec2::new(actions[[i, 0]], actions[[i, 1]]);
                let g = gradient_from_field(spec, &field, a);
                g_a[[i, 0]] += field_w * g.x;
                g_a[[i, 1]] += field_w * g.y;
            }
        }

        let (mut grads, _) = self.actor.backward_batch(&x, &g_a)?;
        grads.scale(1.0 / n as f64);
        Ok(grads)
    }

    fn actor_ascent(&mut self, mut grads: ParamGrads) -> Result<()> {
        if let Some(c) = self.hyper.max_grad_norm {
            grads.clip_norm(c);
        }
        self.actor_opt
            .step(&mut self.actor, &grads, self.hyper.actor_lr, Direction::Ascent)?;
        ensure_finite(&self.actor, "actor")
    }

    /// One deterministic actor step on `batch`.
    pub fn update_actor(&mut self, batch: &[&Transition]) -> Result<()> {
        let grads = self.blended_actor_gradient(batch)?;
        self.actor_ascent(grads)
    }

    fn q_value(&self, net: &MlpParams, obs: &[f64], action: Vec2) -> Result<f64> {
        Ok(net.forward(&concat(obs, action))?[0])
    }

    /// On-policy Sarsa step:
    /// `delta = R + gamma1 Q(s', a') - Q(s, a)`, `w += critic_lr delta grad_w Q(s, a)`.
    /// Returns `delta`.
    pub fn sarsa_critic_update(&mut self, t: &Transition) -> Result<f64> {
        if self.mode != Mode::SarsaAc2 {
            return Err(Error::Usage(format!(
                "Sarsa critic update in {} mode",
                self.mode
            )));
        }
        let next_action = t.next_action.ok_or_else(|| {
            Error::Usage("Sarsa update needs the next action".to_string())
        })?;
        let input = concat(&t.obs, t.action);
        let q = self.critic.forward(&input)?[0];
        let bootstrap = if t.done {
            0.0
        } else {
            self.hyper.gamma1 * self.q_value(&self.critic, &t.next_obs, next_action)?
        };
        let delta = t.reward + bootstrap - q;
        let mut grads = self.critic.backward(&input, &[1.0])?.params;
        grads.scale(delta);
        self.critic_opt
            .step(&mut self.critic, &grads, self.hyper.critic_lr, Direction::Ascent)?;
        ensure_finite(&self.critic, "critic")?;
        Ok(delta)
    }

    /// TD targets `y = R + gamma1 (1 - done) Q'(s', mu'(s'))` from the target
    /// networks.
    pub fn ddpg_targets(&self, batch: &[&Transition]) -> Result<Vec<f64>> {
        let obs_dim = self.obs_dim();
        let next = rows(batch.iter().map(|t| t.next_obs.clone()), obs_dim)?;
        let next_actions = self.actor_target.forward_batch(&next)?;
        let mut critic_in = Array2::<f64>::zeros((batch.len(), obs_dim + ACTION_DIM));
        critic_in.slice_mut(s![.., ..obs_dim]).assign(&next);
        critic_in.slice_mut(s![.., obs_dim..]).assign(&next_actions);
        let next_q = self.critic_target.forward_batch(&critic_in)?;
        Ok(batch
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if t.done {
                    t.reward
                } else {
                    t.reward + self.hyper.gamma1 * next_q[[i, 0]]
                }
            })
            .collect())
    }

    /// Mean squared TD error of the online critic and its gradient in `w`.
    pub fn critic_loss_and_grad(&self, batch: &[&Transition]) -> Result<(f64, ParamGrads)> {
        if batch.is_empty() {
            return Err(Error::Usage("critic update on an empty batch".to_string()));
        }
        if !self.mode.uses_replay() {
            return Err(Error::Usage(format!("replay critic update in {} mode", self.mode)));
        }
        let targets = self.ddpg_targets(batch)?;
        let input = rows(
            batch.iter().map(|t| concat(&t.obs, t.action)),
            self.obs_dim() + ACTION_DIM,
        )?;
        let q = self.critic.forward_batch(&input)?;
        let n = batch.len() as f64;
        let mut upstream = Array2::<f64>::zeros((batch.len(), 1));
        let mut loss = 0.0;
        for (i, y) in targets.iter().enumerate() {
            let err = q[[i, 0]] - y;
            loss += err * err;
            upstream[[i, 0]] = 2.0 * err / n;
        }
        let (grads, _) = self.critic.backward_batch(&input, &upstream)?;
        Ok((loss / n, grads))
    }

    /// One descent step on the squared TD error, then soft updates of both
    /// target networks. Returns the loss before the step.
    pub fn ddpg_critic_update(&mut self, batch: &[&Transition]) -> Result<f64> {
        let (loss, grads) = self.critic_loss_and_grad(batch)?;
        self.critic_opt
            .step(&mut self.critic, &grads, self.hyper.critic_lr, Direction::Descent)?;
        ensure_finite(&self.critic, "critic")?;
        self.actor_target.soft_update(&self.actor, self.hyper.tau)?;
        self.critic_target.soft_update(&self.critic, self.hyper.tau)?;
        Ok(loss)
    }

    /// `grad_theta log pi(a | s)` for the fixed-sigma Gaussian policy:
    /// `grad_theta mean(s) . (a - mean(s)) / sigma^2`.
    pub fn log_prob_gradient(&self, obs: &[f64], action: Vec2) -> Result<ParamGrads> {
        let sigma = self.hyper.noise_sigma;
        if sigma <= 0.0 {
            return Err(Error::Usage(
                "log-density of a zero-variance policy is undefined".to_string(),
            ));
        }
        let mean = self.policy_mean(obs)?;
        let var = sigma * sigma;
        let upstream = [(action.x - mean.x) / var, (action.y - mean.y) / var];
        Ok(self.actor.backward(obs, &upstream)?.params)
    }

    fn state_value(&self, obs: &[f64]) -> Result<f64> {
        Ok(self.critic.forward(obs)?[0])
    }

    /// On-policy stochastic actor-critic-2 step. The actor moves along
    /// `(beta A + (1 - beta) q_pf(s, a)) grad log pi(a | s)` with advantage
    /// `A = R + gamma1 V(s') - V(s)`; the critic then ascends
    /// `A grad_w V(s)`. Returns `A`.
    pub fn stochastic_update(&mut self, t: &Transition) -> Result<f64> {
        if self.mode != Mode::StochasticAc2 {
            return Err(Error::Usage(format!("stochastic update in {} mode", self.mode)));
        }
        let score = self.log_prob_gradient(&t.obs, t.action)?;
        let value = self.state_value(&t.obs)?;
        let bootstrap = if t.done {
            0.0
        } else {
            self.hyper.gamma1 * self.state_value(&t.next_obs)?
        };
        let advantage = t.reward + bootstrap - value;

        let mut weight = 0.0;
        for critic in &self.critics {
            if critic.weight == 0.0 {
                continue;
            }
            weight += critic.weight
                * match critic.kind {
                    CriticKind::RewardQ => advantage,
                    CriticKind::PotentialField => {
                        let spec = t.pf_spec_snapshot.as_ref().ok_or_else(|| {
                            Error::Usage("transition carries no potential field snapshot".to_string())
                        })?;
                        let field = evaluate_field(spec, t.raw_state_pos);
                        value_from_field(spec, &field, t.action)
                    }
                };
        }
        if weight != 0.0 {
            let mut step = score;
            step.scale(weight);
            self.actor_ascent(step)?;
        }

        let mut grads = self.critic.backward(&t.obs, &[1.0])?.params;
        grads.scale(advantage);
        self.critic_opt
            .step(&mut self.critic, &grads, self.hyper.critic_lr, Direction::Ascent)?;
        ensure_finite(&self.critic, "critic")?;
        Ok(advantage)
    }

    /// Feeds one transition to the learner and performs whatever update its
    /// mode calls for: replay modes store it and train every
    /// `update_every` steps once `warmup_steps` have been seen, on-policy
    /// modes update immediately.
    pub fn observe(&mut self, t: Transition) -> Result<()> {
        self.steps_seen += 1;
        match self.mode {
            Mode::Ddpg | Mode::Pgddpg => {
                self.buffer.push(t);
                let ready = self.buffer.len() >= self.hyper.batch_size
                    && self.steps_seen >= self.hyper.warmup_steps;
                if ready && self.steps_seen % self.hyper.update_every == 0 {
                    self.replay_update()?;
                }
                Ok(())
            }
            Mode::SarsaAc2 => {
                self.sarsa_critic_update(&t)?;
                self.update_actor(&[&t])
            }
            Mode::StochasticAc2 => self.stochastic_update(&t).map(|_| ()),
        }
    }

    /// Samples a batch, updates the critic (and targets), then the actor.
    pub fn replay_update(&mut self) -> Result<()> {
        let batch_size = self.hyper.batch_size;
        let mut buffer = std::mem::take(&mut self.buffer);
        let result = (|| {
            let batch = buffer.sample(batch_size)?;
            self.ddpg_critic_update(&batch)?;
            self.update_actor(&batch)
        })();
        self.buffer = buffer;
        result
    }

    pub fn to_checkpoint(&self) -> LearnerCheckpoint {
        LearnerCheckpoint {
            format_version: LEARNER_CHECKPOINT_VERSION,
            mode: self.mode,
            hyper: self.hyper.clone(),
            actor: self.actor.to_checkpoint(),
            actor_target: self.actor_target.to_checkpoint(),
            critic: self.critic.to_checkpoint(),
            critic_target: self.critic_target.to_checkpoint(),
        }
    }

    /// Restores networks and settings. Optimizer moments, replay contents
    /// and the noise stream start fresh from `seed`.
    pub fn from_checkpoint(ckpt: LearnerCheckpoint, seed: u64) -> Result<Self> {
        if ckpt.format_version != LEARNER_CHECKPOINT_VERSION {
            return Err(Error::Config(format!(
                "unsupported learner checkpoint version {}",
                ckpt.format_version
            )));
        }
        ckpt.hyper.validate()?;
        let actor = MlpParams::from_checkpoint(ckpt.actor)?;
        let critic = MlpParams::from_checkpoint(ckpt.critic)?;
        let actor_target = MlpParams::from_checkpoint(ckpt.actor_target)?;
        let critic_target = MlpParams::from_checkpoint(ckpt.critic_target)?;
        if actor.spec() != actor_target.spec() || critic.spec() != critic_target.spec() {
            return Err(Error::Config(
                "target networks do not match their online networks".to_string(),
            ));
        }
        if actor.output_dim() != ACTION_DIM {
            return Err(Error::Config(format!(
                "actor emits {} values, expected {ACTION_DIM}",
                actor.output_dim()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let buffer_seed = rng.random();
        let mut learner =
            Self::from_networks(ckpt.mode, ckpt.hyper, actor, critic, buffer_seed, rng);
        learner.actor_target = actor_target;
        learner.critic_target = critic_target;
        Ok(learner)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(&self.to_checkpoint())
            .map_err(|e| Error::json("serializing learner", e))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path, seed: u64) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let ckpt: LearnerCheckpoint = serde_json::from_str(&text)
            .map_err(|e| Error::json(path.display().to_string(), e))?;
        Self::from_checkpoint(ckpt, seed)
    }
}

/// Versioned per-agent document: mode, hyperparameters and all four
/// networks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearnerCheckpoint {
    pub format_version: u32,
    pub mode: Mode,
    pub hyper: HyperParams,
    pub actor: MlpCheckpoint,
    pub actor_target: MlpCheckpoint,
    pub critic: MlpCheckpoint,
    pub critic_target: MlpCheckpoint,
}
