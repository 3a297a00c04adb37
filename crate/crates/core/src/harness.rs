//! Training and evaluation loops for the predator-prey experiments.
//!
//! Each predator acts on its own observation and learns from its own
//! transitions only; there is no shared state between agents. The prey is a
//! frozen pretrained policy, a learner trained at the same time, or a
//! scripted controller.

use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algorithms::{ActionChoice, AgentLearner, HyperParams, LearnerCheckpoint, Mode, Transition};
use crate::environment::{
    self, field_spec_for_agent, FieldConfig, WorldConfig, WorldState, CAPTURE_REWARD,
};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::potential_field::evaluate_field;

pub const SUCCESS_WINDOW: usize = 200;
pub const REWARD_WINDOW: usize = 500;
pub const METRICS_HEADER: [&str; 6] = [
    "episode",
    "reward",
    "success",
    "success_rate_w200",
    "reward_avg_w500",
    "wall_clock_s",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    OneVOne,
    ThreeVOnePretrained,
    ThreeVOneSimultaneous,
}

impl Scenario {
    pub fn n_predators(self) -> usize {
        match self {
            Scenario::OneVOne => 1,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scenario::OneVOne => "one_v_one",
            Scenario::ThreeVOnePretrained => "three_v_one_pretrained",
            Scenario::ThreeVOneSimultaneous => "three_v_one_simultaneous",
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Scenario::OneVOne,
            Scenario::ThreeVOnePretrained,
            Scenario::ThreeVOneSimultaneous,
        ]
        .into_iter()
        .find(|sc| sc.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown scenario {s:?}")))
    }
}

/// Hand-written controllers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScriptedPolicy {
    /// Unit step along the agent's field force: pure pursuit for predators,
    /// flight for the prey.
    FieldFollower,
    Stationary,
    /// Uniform in `[-1, 1]^2` every step.
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PreyPolicy {
    PretrainedCheckpoint { path: PathBuf },
    TrainedSimultaneously,
    Random,
    Stationary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub predator_algo: Mode,
    pub prey_policy: PreyPolicy,
    /// Learner used for a prey trained alongside the predators, and for
    /// prey pretraining.
    pub prey_algo: Mode,
    pub total_episodes: usize,
    /// Episodes between progress reports and checkpoint refreshes.
    pub eval_every: usize,
    /// Budget for [`pretrain_prey`].
    pub pretrain_episodes: usize,
    pub world: WorldConfig,
    pub hyper: HyperParams,
    pub field: FieldConfig,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            scenario: Scenario::OneVOne,
            predator_algo: Mode::Pgddpg,
            prey_policy: PreyPolicy::Random,
            prey_algo: Mode::Ddpg,
            total_episodes: 20_000,
            eval_every: 500,
            pretrain_episodes: 3_000,
            world: WorldConfig::default(),
            hyper: HyperParams::default(),
            field: FieldConfig::default(),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    /// Forces the predator count implied by the scenario.
    pub fn normalized(mut self) -> Self {
        self.world.n_predators = self.scenario.n_predators();
        self.world.seed = self.seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.world.validate()?;
        self.hyper.validate()?;
        self.field.validate()?;
        if self.world.n_predators != self.scenario.n_predators() {
            return Err(Error::Config(format!(
                "scenario {} needs {} predator(s), world has {}",
                self.scenario.name(),
                self.scenario.n_predators(),
                self.world.n_predators
            )));
        }
        if self.total_episodes == 0 || self.eval_every == 0 {
            return Err(Error::Config(
                "total_episodes and eval_every must be positive".to_string(),
            ));
        }
        match (self.scenario, &self.prey_policy) {
            (Scenario::ThreeVOneSimultaneous, PreyPolicy::TrainedSimultaneously) => {}
            (Scenario::ThreeVOneSimultaneous, _) => {
                return Err(Error::Config(
                    "three_v_one_simultaneous trains the prey; use prey_policy trained_simultaneously"
                        .to_string(),
                ))
            }
            (Scenario::ThreeVOnePretrained, PreyPolicy::PretrainedCheckpoint { .. }) => {}
            (Scenario::ThreeVOnePretrained, _) => {
                return Err(Error::Config(
                    "three_v_one_pretrained needs prey_policy pretrained_checkpoint".to_string(),
                ))
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub episode: usize,
    /// Mean over predators of the episode's summed reward.
    pub episode_reward_per_predator: f64,
    pub success: bool,
    pub success_rate_w200: f64,
    pub reward_avg_w500: f64,
    /// Simulated time elapsed since the start of training
    /// (`total steps * dt`); deterministic, unlike host time.
    pub wall_clock_s: f64,
}

/// Success rate over the latest 200 episodes and mean predator reward over
/// the latest 500; shorter histories use everything available.
pub fn compute_windowed_metrics(history: &[(f64, bool)]) -> Result<(f64, f64)> {
    if history.is_empty() {
        return Err(Error::Usage("windowed metrics of an empty history".to_string()));
    }
    let tail = |w: usize| &history[history.len().saturating_sub(w)..];
    let recent = tail(SUCCESS_WINDOW);
    let success = recent.iter().filter(|(_, s)| *s).count() as f64 / recent.len() as f64;
    let recent = tail(REWARD_WINDOW);
    let reward = recent.iter().map(|(r, _)| r).sum::<f64>() / recent.len() as f64;
    Ok((success, reward))
}

/// Streams metrics rows with the fixed column layout.
pub struct MetricsWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> MetricsWriter<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(METRICS_HEADER)?;
        Ok(MetricsWriter { inner })
    }

    pub fn write(&mut self, r: &MetricsRecord) -> Result<()> {
        self.inner.write_record([
            r.episode.to_string(),
            r.episode_reward_per_predator.to_string(),
            (r.success as u8).to_string(),
            r.success_rate_w200.to_string(),
            r.reward_avg_w500.to_string(),
            format!("{:.3}", r.wall_clock_s),
        ])?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner.flush().map_err(|e| Error::io("metrics stream", e))
    }
}

/// Reads a metrics CSV back into records.
pub fn read_metrics(path: &Path) -> Result<Vec<MetricsRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let field = |i: usize| -> Result<f64> {
            row[i]
                .parse()
                .map_err(|_| Error::Config(format!("bad metrics value {:?}", &row[i])))
        };
        out.push(MetricsRecord {
            episode: field(0)? as usize,
            episode_reward_per_predator: field(1)?,
            success: field(2)? != 0.0,
            success_rate_w200: field(3)?,
            reward_avg_w500: field(4)?,
            wall_clock_s: field(5)?,
        });
    }
    Ok(out)
}

/// What drives one agent.
#[derive(Debug, Clone)]
pub enum Controller {
    /// Explores and learns during training.
    Learner(Box<AgentLearner>),
    /// A trained policy acting greedily, never updated.
    Frozen(Box<AgentLearner>),
    Scripted(ScriptedPolicy),
}

impl Controller {
    fn act(
        &mut self,
        ctx: &StepContext<'_>,
        agent: usize,
        obs: &[f64],
        explore: bool,
        rng: &mut ChaCha8Rng,
    ) -> Result<ActionChoice> {
        match self {
            Controller::Learner(l) => l.act(obs, explore),
            Controller::Frozen(l) => l.act(obs, false),
            Controller::Scripted(policy) => {
                let a = scripted_action(*policy, ctx, agent, rng)?;
                Ok(ActionChoice {
                    executed: a,
                    stored: a,
                })
            }
        }
    }

    pub fn learner(&self) -> Option<&AgentLearner> {
        match self {
            Controller::Learner(l) | Controller::Frozen(l) => Some(l),
            Controller::Scripted(_) => None,
        }
    }
}

struct StepContext<'a> {
    state: &'a WorldState,
    world: &'a WorldConfig,
    fields: &'a FieldConfig,
}

fn scripted_action(
    policy: ScriptedPolicy,
    ctx: &StepContext<'_>,
    agent: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec2> {
    Ok(match policy {
        ScriptedPolicy::Stationary => Vec2::ZERO,
        ScriptedPolicy::Random => {
            Vec2::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
        }
        ScriptedPolicy::FieldFollower => {
            let spec = field_spec_for_agent(ctx.state, ctx.world, ctx.fields, agent)?;
            let f = evaluate_field(&spec, ctx.state.positions[agent]).force;
            let n = f.norm();
            if n > spec.epsilon_dist {
                f * (1.0 / n)
            } else {
                Vec2::ZERO
            }
        }
    })
}

/// How a learning prey is paid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PreyReward {
    /// The world's zero-sum payoff: -10 on capture.
    ZeroSum,
    /// +10 for lasting the whole episode, terminal at every episode end.
    Survival,
}

/// Per-agent seeds derived from the run seed (SplitMix64 finalizer).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base
        .wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const ENV_STREAM: u64 = 1_000;
const SCRIPT_STREAM: u64 = 1_001;

struct EpisodeOutcome {
    predator_reward: f64,
    captured: bool,
    steps: usize,
}

/// A self-contained group of controllers sharing one world.
struct Arena {
    world: WorldConfig,
    fields: FieldConfig,
    agents: Vec<Controller>,
    prey_reward: PreyReward,
    env_rng: ChaCha8Rng,
    script_rng: ChaCha8Rng,
}

impl Arena {
    fn new(
        world: WorldConfig,
        fields: FieldConfig,
        agents: Vec<Controller>,
        prey_reward: PreyReward,
        seed: u64,
    ) -> Result<Self> {
        world.validate()?;
        if agents.len() != world.n_agents() {
            return Err(Error::Config(format!(
                "{} controllers for {} agents",
                agents.len(),
                world.n_agents()
            )));
        }
        for (i, c) in agents.iter().enumerate() {
            if let Some(l) = c.learner() {
                if l.obs_dim() != world.observation_dim() {
                    return Err(Error::Config(format!(
                        "agent {i} policy expects {} observation entries, the world provides {}",
                        l.obs_dim(),
                        world.observation_dim()
                    )));
                }
            }
        }
        Ok(Arena {
            world,
            fields,
            agents,
            prey_reward,
            env_rng: ChaCha8Rng::seed_from_u64(derive_seed(seed, ENV_STREAM)),
            script_rng: ChaCha8Rng::seed_from_u64(derive_seed(seed, SCRIPT_STREAM)),
        })
    }

    /// Plays one episode. With `learn`, learners explore and are updated
    /// from their own transitions.
    fn run_episode(
        &mut self,
        learn: bool,
        mut trajectory: Option<(&mut environment::TrajectoryWriter<Box<dyn Write>>, usize)>,
    ) -> Result<EpisodeOutcome> {
        let episode_seed = self.env_rng.random();
        let (mut state, mut obs) = environment::reset(&self.world, episode_seed)?;
        let n = self.world.n_agents();
        let prey = self.world.prey_index();
        let mut pending: Vec<Option<Transition>> = vec![None; n];
        let mut predator_reward = 0.0;

        loop {
            let ctx = StepContext {
                state: &state,
                world: &self.world,
                fields: &self.fields,
            };
            let mut choices = Vec::with_capacity(n);
            for i in 0..n {
                choices.push(self.agents[i].act(&ctx, i, &obs[i], learn, &mut self.script_rng)?);
            }
            // Field snapshots for agents whose learning uses them.
            let mut snapshots = vec![None; n];
            if learn {
                for (i, agent) in self.agents.iter().enumerate() {
                    if matches!(agent, Controller::Learner(l) if l.mode.uses_field()) {
                        snapshots[i] =
                            Some(field_spec_for_agent(&state, &self.world, &self.fields, i)?);
                    }
                }
            }
            let actions: Vec<Vec2> = choices.iter().map(|c| c.executed).collect();
            let (next, result) = environment::step(&state, &self.world, &actions)?;
            if let Some((writer, episode)) = trajectory.as_mut() {
                writer.record(*episode, &next, &actions, &result)?;
            }
            predator_reward += result.rewards[..self.world.n_predators].iter().sum::<f64>();

            if learn {
                for i in 0..n {
                    let Controller::Learner(learner) = &mut self.agents[i] else {
                        continue;
                    };
                    let (reward, terminal) = if i == prey && self.prey_reward == PreyReward::Survival
                    {
                        let survived = result.done && !result.captured;
                        (if survived { CAPTURE_REWARD } else { 0.0 }, result.done)
                    } else {
                        (result.rewards[i], result.captured)
                    };
                    let t = Transition {
                        obs: std::mem::take(&mut obs[i]),
                        action: choices[i].stored,
                        reward,
                        next_obs: result.observations[i].clone(),
                        next_action: None,
                        done: terminal,
                        pf_spec_snapshot: snapshots[i].take(),
                        raw_state_pos: state.positions[i],
                    };
                    if learner.mode == Mode::SarsaAc2 {
                        // The Sarsa target needs the action taken from
                        // next_obs, known only one step later.
                        if let Some(mut prev) = pending[i].take() {
                            prev.next_action = Some(t.action);
                            learner.observe(prev)?;
                        }
                        if result.done {
                            let mut last = t;
                            last.next_action = Some(learner.act(&last.next_obs, true)?.stored);
                            learner.observe(last)?;
                        } else {
                            pending[i] = Some(t);
                        }
                    } else {
                        learner.observe(t)?;
                    }
                }
            }

            state = next;
            obs = result.observations;
            if result.done {
                return Ok(EpisodeOutcome {
                    predator_reward: predator_reward / self.world.n_predators as f64,
                    captured: result.captured,
                    steps: state.step_count,
                });
            }
        }
    }
}

/// Loads a prey (or predator) policy document.
pub fn load_controller(path: &Path, seed: u64) -> Result<Controller> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: PolicyDocument =
        serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
    match doc {
        PolicyDocument::Learner(ckpt) => Ok(Controller::Learner(Box::new(
            AgentLearner::from_checkpoint(ckpt, seed)?,
        ))),
        PolicyDocument::Scripted(s) => {
            if s.format_version != crate::algorithms::LEARNER_CHECKPOINT_VERSION {
                return Err(Error::Config(format!(
                    "unsupported policy document version {}",
                    s.format_version
                )));
            }
            Ok(Controller::Scripted(s.scripted))
        }
    }
}

/// Writes a scripted-policy document that [`load_controller`] accepts.
pub fn save_scripted(path: &Path, policy: ScriptedPolicy) -> Result<()> {
    let doc = ScriptedDocument {
        format_version: crate::algorithms::LEARNER_CHECKPOINT_VERSION,
        scripted: policy,
    };
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::json("policy", e))?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum PolicyDocument {
    Learner(LearnerCheckpoint),
    Scripted(ScriptedDocument),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScriptedDocument {
    format_version: u32,
    scripted: ScriptedPolicy,
}

/// Final state of a training run.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub records: Vec<MetricsRecord>,
    pub predators: Vec<AgentLearner>,
    /// Present when the prey was trained alongside the predators.
    pub prey: Option<AgentLearner>,
}

/// Trains predators per `config`, handing each episode's record to `sink`.
/// The sink may stop the run early by returning `ControlFlow::Break`.
///
/// A NaN/Inf parameter aborts with [`Error::Diverged`]; records already
/// handed to the sink stay valid.
pub fn run_experiment<F>(config: &ExperimentConfig, mut sink: F) -> Result<ExperimentOutcome>
where
    F: FnMut(&MetricsRecord) -> Result<ControlFlow<()>>,
{
    config.validate()?;
    let world = config.world.clone();
    let obs_dim = world.observation_dim();
    let mut agents = Vec::with_capacity(world.n_agents());
    for i in 0..world.n_predators {
        let learner = AgentLearner::new(
            config.predator_algo,
            config.hyper.clone(),
            obs_dim,
            derive_seed(config.seed, i as u64),
        )?;
        agents.push(Controller::Learner(Box::new(learner)));
    }
    let prey_seed = derive_seed(config.seed, world.prey_index() as u64);
    let prey = match &config.prey_policy {
        PreyPolicy::PretrainedCheckpoint { path } => load_controller(path, prey_seed)?,
        PreyPolicy::TrainedSimultaneously => Controller::Learner(Box::new(AgentLearner::new(
            config.prey_algo,
            config.hyper.clone(),
            obs_dim,
            prey_seed,
        )?)),
        PreyPolicy::Random => Controller::Scripted(ScriptedPolicy::Random),
        PreyPolicy::Stationary => Controller::Scripted(ScriptedPolicy::Stationary),
    };
    let prey_learns = matches!(config.prey_policy, PreyPolicy::TrainedSimultaneously);
    agents.push(if prey_learns { prey } else { freeze(prey) });

    let mut arena = Arena::new(
        world.clone(),
        config.field,
        agents,
        PreyReward::ZeroSum,
        config.seed,
    )?;

    let mut history = Vec::with_capacity(config.total_episodes);
    let mut records = Vec::with_capacity(config.total_episodes);
    let mut total_steps = 0usize;
    for episode in 0..config.total_episodes {
        let outcome = arena.run_episode(true, None)?;
        total_steps += outcome.steps;
        history.push((outcome.predator_reward, outcome.captured));
        let (success_rate_w200, reward_avg_w500) = compute_windowed_metrics(&history)?;
        let record = MetricsRecord {
            episode,
            episode_reward_per_predator: outcome.predator_reward,
            success: outcome.captured,
            success_rate_w200,
            reward_avg_w500,
            wall_clock_s: total_steps as f64 * world.dt,
        };
        records.push(record);
        if (episode + 1) % config.eval_every == 0 {
            log::info!(
                "{} {} episode {}: success_rate_w200 {:.3}, reward_avg_w500 {:.3}",
                config.scenario.name(),
                config.predator_algo,
                episode + 1,
                success_rate_w200,
                reward_avg_w500
            );
        }
        if sink(&record)?.is_break() {
            break;
        }
    }

    let mut predators = Vec::with_capacity(world.n_predators);
    let mut prey = None;
    for (i, agent) in arena.agents.into_iter().enumerate() {
        if let Controller::Learner(l) = agent {
            if i < world.n_predators {
                predators.push(*l);
            } else {
                prey = Some(*l);
            }
        }
    }
    Ok(ExperimentOutcome {
        records,
        predators,
        prey,
    })
}

/// Turns a learner into a greedy policy that is never updated.
pub fn freeze(c: Controller) -> Controller {
    match c {
        Controller::Learner(l) => Controller::Frozen(l),
        other => other,
    }
}

/// One greedy evaluation episode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalEpisode {
    pub captured: bool,
    pub steps: usize,
}

/// Plays `n_episodes` greedy episodes without learning.
///
/// `controllers` holds one controller per agent, predators first.
pub fn evaluate_episodes(
    controllers: Vec<Controller>,
    world: &WorldConfig,
    fields: &FieldConfig,
    n_episodes: usize,
    seed: u64,
) -> Result<Vec<EvalEpisode>> {
    if n_episodes == 0 {
        return Err(Error::Usage("evaluation needs at least one episode".to_string()));
    }
    let mut arena = Arena::new(world.clone(), *fields, controllers, PreyReward::ZeroSum, seed)?;
    (0..n_episodes)
        .map(|_| {
            arena.run_episode(false, None).map(|o| EvalEpisode {
                captured: o.captured,
                steps: o.steps,
            })
        })
        .collect()
}

/// Fraction of `n_episodes` greedy episodes that end in capture.
pub fn evaluate_policy(
    controllers: Vec<Controller>,
    world: &WorldConfig,
    fields: &FieldConfig,
    n_episodes: usize,
    seed: u64,
) -> Result<f64> {
    let episodes = evaluate_episodes(controllers, world, fields, n_episodes, seed)?;
    Ok(episodes.iter().filter(|e| e.captured).count() as f64 / n_episodes as f64)
}

/// Greedy evaluation that also writes every step to `trajectory`.
pub fn record_trajectories(
    controllers: Vec<Controller>,
    world: &WorldConfig,
    fields: &FieldConfig,
    n_episodes: usize,
    seed: u64,
    out: Box<dyn Write>,
) -> Result<f64> {
    if n_episodes == 0 {
        return Err(Error::Usage("evaluation needs at least one episode".to_string()));
    }
    let mut writer = environment::TrajectoryWriter::new(out)?;
    let mut arena = Arena::new(world.clone(), *fields, controllers, PreyReward::ZeroSum, seed)?;
    let mut captures = 0usize;
    for episode in 0..n_episodes {
        if arena.run_episode(false, Some((&mut writer, episode)))?.captured {
            captures += 1;
        }
    }
    writer.flush()?;
    Ok(captures as f64 / n_episodes as f64)
}

/// Trains a prey learner (`config.prey_algo`) against field-following
/// predators for `config.pretrain_episodes` episodes. The prey earns +10 for
/// surviving a full episode and nothing otherwise.
pub fn pretrain_prey(config: &ExperimentConfig) -> Result<AgentLearner> {
    pretrain_prey_with(config, |_, _| Ok(()))
}

/// [`pretrain_prey`], calling `on_episode(episodes_done, prey)` after every
/// episode.
pub fn pretrain_prey_with<F>(config: &ExperimentConfig, mut on_episode: F) -> Result<AgentLearner>
where
    F: FnMut(usize, &AgentLearner) -> Result<()>,
{
    let world = config.world.clone();
    world.validate()?;
    config.hyper.validate()?;
    if config.pretrain_episodes == 0 {
        return Err(Error::Config("pretrain_episodes must be positive".to_string()));
    }
    let prey_seed = derive_seed(config.seed, world.prey_index() as u64);
    let mut agents: Vec<Controller> = (0..world.n_predators)
        .map(|_| Controller::Scripted(ScriptedPolicy::FieldFollower))
        .collect();
    agents.push(Controller::Learner(Box::new(AgentLearner::new(
        config.prey_algo,
        config.hyper.clone(),
        world.observation_dim(),
        prey_seed,
    )?)));
    let mut arena = Arena::new(world.clone(), config.field, agents, PreyReward::Survival, config.seed)?;
    for episode in 0..config.pretrain_episodes {
        arena.run_episode(true, None)?;
        if (episode + 1) % config.eval_every == 0 {
            log::info!("prey pretraining: episode {}", episode + 1);
        }
        if let Some(prey) = arena.agents.last().and_then(Controller::learner) {
            on_episode(episode + 1, prey)?;
        }
    }
    match arena.agents.pop() {
        Some(Controller::Learner(l)) => Ok(*l),
        _ => unreachable!("the prey slot holds the learner"),
    }
}
