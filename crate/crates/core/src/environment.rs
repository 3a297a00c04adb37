//! Continuous 2-D predator-prey world.
//!
//! Agents `0..n_predators` are predators and the last agent is the prey.
//! Predators live in `[-predator_bound, predator_bound]^2` and the prey in the
//! smaller `[-prey_bound, prey_bound]^2`. All agents share one top speed.
//! Reward is sparse: when every predator is within `capture_distance` of the
//! prey on the same step the episode ends, each predator receives +10 and the
//! prey -10. Every other step pays 0.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::potential_field::PotentialFieldSpec;

pub const CAPTURE_REWARD: f64 = 10.0;
const PLACEMENT_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Predator,
    Prey,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorldConfig {
    pub n_predators: usize,
    /// Half-extent of the predators' square.
    pub predator_bound: f64,
    /// Half-extent of the prey's square.
    pub prey_bound: f64,
    pub predator_radius: f64,
    pub prey_radius: f64,
    pub max_speed: f64,
    pub dt: f64,
    pub damping: f64,
    pub accel_scale: f64,
    pub episode_max_steps: usize,
    pub capture_distance: f64,
    pub seed: u64,
}

impl Default for WorldConfig {
    fn default() -> Self {
        WorldConfig {
            n_predators: 1,
            predator_bound: 1.0,
            prey_bound: 0.8,
            predator_radius: 0.05,
            prey_radius: 0.05,
            max_speed: 1.0,
            dt: 0.1,
            damping: 0.75,
            accel_scale: 5.0,
            episode_max_steps: 100,
            capture_distance: 0.12,
            seed: 0,
        }
    }
}

impl WorldConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("predator_bound", self.predator_bound),
            ("prey_bound", self.prey_bound),
            ("predator_radius", self.predator_radius),
            ("prey_radius", self.prey_radius),
            ("max_speed", self.max_speed),
            ("dt", self.dt),
            ("accel_scale", self.accel_scale),
            ("capture_distance", self.capture_distance),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("world {name} must be positive, got {v}")));
            }
        }
        if self.n_predators == 0 {
            return Err(Error::Config("world needs at least one predator".to_string()));
        }
        if self.prey_bound >= self.predator_bound {
            return Err(Error::Config(format!(
                "prey_bound ({}) must be smaller than predator_bound ({})",
                self.prey_bound, self.predator_bound
            )));
        }
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::Config(format!(
                "damping must lie in [0, 1), got {}",
                self.damping
            )));
        }
        if self.episode_max_steps == 0 {
            return Err(Error::Config("episode_max_steps must be positive".to_string()));
        }
        Ok(())
    }

    pub fn n_agents(&self) -> usize {
        self.n_predators + 1
    }

    pub fn prey_index(&self) -> usize {
        self.n_predators
    }

    pub fn role(&self, agent: usize) -> Role {
        if agent < self.n_predators {
            Role::Predator
        } else {
            Role::Prey
        }
    }

    pub fn bound(&self, role: Role) -> f64 {
        match role {
            Role::Predator => self.predator_bound,
            Role::Prey => self.prey_bound,
        }
    }

    fn radius(&self, role: Role) -> f64 {
        match role {
            Role::Predator => self.predator_radius,
            Role::Prey => self.prey_radius,
        }
    }

    pub fn observation_dim(&self) -> usize {
        4 * self.n_agents()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub positions: Vec<Vec2>,
    pub velocities: Vec<Vec2>,
    pub step_count: usize,
    pub done: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub observations: Vec<Vec<f64>>,
    pub rewards: Vec<f64>,
    /// Capture or step limit.
    pub done: bool,
    pub captured: bool,
}

/// Places every agent uniformly in its square with no overlapping bodies.
pub fn reset(config: &WorldConfig, rng_seed: u64) -> Result<(WorldState, Vec<Vec<f64>>)> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n = config.n_agents();
    let mut positions: Vec<Vec2> = Vec::with_capacity(n);
    for agent in 0..n {
        let role = config.role(agent);
        let bound = config.bound(role);
        let radius = config.radius(role);
        let placed = (0..PLACEMENT_ATTEMPTS).find_map(|_| {
            let p = Vec2::new(
                rng.random_range(-bound..=bound),
                rng.random_range(-bound..=bound),
            );
            let clear = positions.iter().enumerate().all(|(other, &q)| {
                p.distance(q) > radius + config.radius(config.role(other))
            });
            clear.then_some(p)
        });
        match placed {
            Some(p) => positions.push(p),
            None => {
                return Err(Error::Config(format!(
                    "could not place agent {agent} without overlap after {PLACEMENT_ATTEMPTS} attempts"
                )))
            }
        }
    }
    let state = WorldState {
        positions,
        velocities: vec![Vec2::ZERO; n],
        step_count: 0,
        done: false,
    };
    let obs = observe_all(&state, config);
    Ok((state, obs))
}

/// Advances the world by one step. Action components are clipped to
/// `[-1, 1]`.
pub fn step(
    state: &WorldState,
    config: &WorldConfig,
    actions: &[Vec2],
) -> Result<(WorldState, StepResult)> {
    let n = config.n_agents();
    if actions.len() != n || state.positions.len() != n {
        return Err(Error::Usage(format!(
            "expected {n} actions, got {}",
            actions.len()
        )));
    }
    if let Some(i) = actions.iter().position(|a| !a.is_finite()) {
        return Err(Error::Usage(format!("action for agent {i} is not finite")));
    }
    if state.done {
        return Err(Error::Usage("stepping a finished episode".to_string()));
    }

    let mut next = state.clone();
    for (i, action) in actions.iter().enumerate() {
        let a = Vec2::new(action.x.clamp(-1.0, 1.0), action.y.clamp(-1.0, 1.0));
        let mut v = config.damping * state.velocities[i] + (config.dt * config.accel_scale) * a;
        let speed = v.norm();
        if speed > config.max_speed {
            v = v * (config.max_speed / speed);
        }
        let mut p = state.positions[i] + config.dt * v;
        let bound = config.bound(config.role(i));
        if p.x.abs() > bound {
            p.x = p.x.clamp(-bound, bound);
            v.x = 0.0;
        }
        if p.y.abs() > bound {
            p.y = p.y.clamp(-bound, bound);
            v.y = 0.0;
        }
        next.positions[i] = p;
        next.velocities[i] = v;
    }
    next.step_count += 1;

    let captured = capture_predicate(&next, config);
    let done = captured || next.step_count >= config.episode_max_steps;
    next.done = done;

    let mut rewards = vec![0.0; n];
    if captured {
        for (i, r) in rewards.iter_mut().enumerate() {
            *r = match config.role(i) {
                Role::Predator => CAPTURE_REWARD,
                Role::Prey => -CAPTURE_REWARD,
            };
        }
    }
    let observations = observe_all(&next, config);
    Ok((
        next,
        StepResult {
            observations,
            rewards,
            done,
            captured,
        },
    ))
}

/// True iff every predator is within `capture_distance` (inclusive) of the
/// prey.
pub fn capture_predicate(state: &WorldState, config: &WorldConfig) -> bool {
    let prey = state.positions[config.prey_index()];
    state.positions[..config.n_predators]
        .iter()
        .all(|p| p.distance(prey) <= config.capture_distance)
}

/// Own position and velocity, then the position and velocity of every other
/// agent relative to this one, in agent order.
pub fn observe(state: &WorldState, config: &WorldConfig, agent_index: usize) -> Result<Vec<f64>> {
    if agent_index >= config.n_agents() {
        return Err(Error::Usage(format!(
            "agent index {agent_index} out of range for {} agents",
            config.n_agents()
        )));
    }
    Ok(observe_unchecked(state, agent_index))
}

fn observe_unchecked(state: &WorldState, agent: usize) -> Vec<f64> {
    let p = state.positions[agent];
    let v = state.velocities[agent];
    let mut obs = Vec::with_capacity(4 * state.positions.len());
    obs.extend_from_slice(&[p.x, p.y, v.x, v.y]);
    for other in (0..state.positions.len()).filter(|&j| j != agent) {
        let dp = state.positions[other] - p;
        let dv = state.velocities[other] - v;
        obs.extend_from_slice(&[dp.x, dp.y, dv.x, dv.y]);
    }
    obs
}

pub fn observe_all(state: &WorldState, config: &WorldConfig) -> Vec<Vec<f64>> {
    (0..config.n_agents())
        .map(|i| observe_unchecked(state, i))
        .collect()
}

/// Gains of one role's field. Goal and obstacle points come from the world.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldGains {
    pub xi: f64,
    pub eta: f64,
    pub d0: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon_dist: f64,
}

fn default_epsilon() -> f64 {
    crate::potential_field::DEFAULT_EPSILON_DIST
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FieldConfig {
    pub predator: FieldGains,
    pub prey: FieldGains,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            predator: FieldGains {
                xi: 1.0,
                eta: 1e-4,
                d0: 0.3,
                epsilon_dist: default_epsilon(),
            },
            prey: FieldGains {
                xi: 0.05,
                eta: 0.05,
                d0: 0.6,
                epsilon_dist: default_epsilon(),
            },
        }
    }
}

impl FieldConfig {
    pub fn validate(&self) -> Result<()> {
        self.predator.spec().validate()?;
        self.prey.spec().validate()
    }
}

impl FieldGains {
    fn spec(&self) -> PotentialFieldSpec {
        PotentialFieldSpec {
            xi: self.xi,
            eta: self.eta,
            d0: self.d0,
            goal_points: Vec::new(),
            obstacle_points: Vec::new(),
            epsilon_dist: self.epsilon_dist,
        }
    }
}

/// The field an agent would follow in the current state.
///
/// A predator is pulled towards the prey and pushed away from the other
/// predators. The prey is pushed away from every predator and weakly pulled
/// towards the centre of the arena.
pub fn field_spec_for_agent(
    state: &WorldState,
    config: &WorldConfig,
    fields: &FieldConfig,
    agent_index: usize,
) -> Result<PotentialFieldSpec> {
    if agent_index >= config.n_agents() {
        return Err(Error::Usage(format!("agent index {agent_index} out of range")));
    }
    let prey = config.prey_index();
    let predators = &state.positions[..config.n_predators];
    let spec = match config.role(agent_index) {
        Role::Predator => {
            let mut spec = fields.predator.spec();
            spec.goal_points.push(state.positions[prey]);
            spec.obstacle_points.extend(
                predators
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != agent_index)
                    .map(|(_, &p)| p),
            );
            spec
        }
        Role::Prey => {
            let mut spec = fields.prey.spec();
            spec.goal_points.push(Vec2::ZERO);
            spec.obstacle_points.extend_from_slice(predators);
            spec
        }
    };
    Ok(spec)
}

/// Writes one CSV row per agent per step for offline plotting.
pub struct TrajectoryWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> TrajectoryWriter<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record([
            "episode", "step", "agent", "x", "y", "vx", "vy", "ax", "ay", "reward", "done",
        ])?;
        Ok(TrajectoryWriter { inner })
    }

    /// Records the state reached after applying `actions`.
    pub fn record(
        &mut self,
        episode: usize,
        state: &WorldState,
        actions: &[Vec2],
        result: &StepResult,
    ) -> Result<()> {
        for (i, a) in actions.iter().enumerate() {
            let p = state.positions[i];
            let v = state.velocities[i];
            self.inner.write_record([
                episode.to_string(),
                state.step_count.to_string(),
                i.to_string(),
                p.x.to_string(),
                p.y.to_string(),
                v.x.to_string(),
                v.y.to_string(),
                a.x.to_string(),
                a.y.to_string(),
                result.rewards[i].to_string(),
                (result.done as u8).to_string(),
            ])?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner
            .flush()
            .map_err(|e| Error::io("trajectory stream", e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_predators: usize) -> WorldConfig {
        WorldConfig {
            n_predators,
            ..WorldConfig::default()
        }
    }

    fn still_state(positions: Vec<Vec2>) -> WorldState {
        let n = positions.len();
        WorldState {
            positions,
            velocities: vec![Vec2::ZERO; n],
            step_count: 0,
            done: false,
        }
    }

    #[test]
    fn reset_places_agents_inside_their_bounds() {
        let cfg = config(1);
        let (state, obs) = reset(&cfg, 3).unwrap();
        assert_eq!(state.positions.len(), 2);
        assert!(state.positions[0].x.abs() <= 1.0 && state.positions[0].y.abs() <= 1.0);
        assert!(state.positions[1].x.abs() <= 0.8 && state.positions[1].y.abs() <= 0.8);
        assert!(state.velocities.iter().all(|v| *v == Vec2::ZERO));
        assert_eq!(state.step_count, 0);
        assert_eq!(obs.len(), 2);
    }

    #[test]
    fn reset_is_seeded() {
        let cfg = config(3);
        assert_eq!(reset(&cfg, 11).unwrap(), reset(&cfg, 11).unwrap());
        assert_ne!(reset(&cfg, 11).unwrap().0, reset(&cfg, 12).unwrap().0);
    }

    #[test]
    fn reset_keeps_bodies_apart() {
        let cfg = config(3);
        for seed in 0..50 {
            let (state, _) = reset(&cfg, seed).unwrap();
            for i in 0..4 {
                for j in (i + 1)..4 {
                    assert!(state.positions[i].distance(state.positions[j]) > 0.1);
                }
            }
        }
    }

    #[test]
    fn crowded_arena_is_a_config_error() {
        let cfg = WorldConfig {
            n_predators: 8,
            predator_radius: 0.9,
            prey_radius: 0.7,
            ..WorldConfig::default()
        };
        assert!(matches!(reset(&cfg, 0), Err(Error::Config(_))));
    }

    #[test]
    fn zero_actions_leave_a_still_world_still() {
        let cfg = config(1);
        let state = still_state(vec![Vec2::new(-0.5, 0.5), Vec2::new(0.5, -0.5)]);
        let (next, result) = step(&state, &cfg, &[Vec2::ZERO; 2]).unwrap();
        assert_eq!(next.positions, state.positions);
        assert_eq!(result.rewards, vec![0.0, 0.0]);
        assert!(!result.done && !result.captured);
        assert_eq!(next.step_count, 1);
    }

    #[test]
    fn capture_in_one_v_one() {
        let cfg = config(1);
        let state = still_state(vec![Vec2::new(0.1, 0.0), Vec2::new(0.0, 0.0)]);
        let (_, result) = step(&state, &cfg, &[Vec2::ZERO; 2]).unwrap();
        assert!(result.captured && result.done);
        assert_eq!(result.rewards, vec![10.0, -10.0]);
    }

    #[test]
    fn three_v_one_needs_every_predator() {
        let cfg = config(3);
        let state = still_state(vec![
            Vec2::new(0.05, 0.0),
            Vec2::new(-0.05, 0.0),
            Vec2::new(0.9, 0.9),
            Vec2::ZERO,
        ]);
        let (_, result) = step(&state, &cfg, &[Vec2::ZERO; 4]).unwrap();
        assert!(!result.captured && !result.done);
        assert!(result.rewards.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn capture_boundary_is_closed() {
        let cfg = config(1);
        let on_edge = still_state(vec![Vec2::new(cfg.capture_distance, 0.0), Vec2::ZERO]);
        assert!(capture_predicate(&on_edge, &cfg));
        let far = still_state(vec![Vec2::new(10.0 * cfg.capture_distance, 0.0), Vec2::ZERO]);
        assert!(!capture_predicate(&far, &cfg));
        let cfg3 = config(3);
        let piled = still_state(vec![Vec2::new(0.2, 0.2); 4]);
        assert!(capture_predicate(&piled, &cfg3));
    }

    #[test]
    fn observation_layout() {
        assert_eq!(observe(&still_state(vec![Vec2::ZERO; 2]), &config(1), 0).unwrap().len(), 8);
        let origin = still_state(vec![Vec2::ZERO; 4]);
        let obs = observe(&origin, &config(3), 2).unwrap();
        assert_eq!(obs, vec![0.0; 16]);
        assert!(observe(&origin, &config(3), 4).is_err());

        let mut state = still_state(vec![Vec2::new(0.1, 0.2), Vec2::new(0.5, 0.0)]);
        state.velocities[1] = Vec2::new(0.0, 0.3);
        let obs = observe(&state, &config(1), 0).unwrap();
        assert_eq!(obs, vec![0.1, 0.2, 0.0, 0.0, 0.4, -0.2, 0.0, 0.3]);
    }

    #[test]
    fn walls_clamp_position_and_zero_velocity() {
        let cfg = config(1);
        let mut state = still_state(vec![Vec2::new(0.99, 0.0), Vec2::new(0.79, 0.0)]);
        state.velocities = vec![Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)];
        let (next, _) = step(&state, &cfg, &[Vec2::new(1.0, 0.0); 2]).unwrap();
        assert_eq!(next.positions[0].x, 1.0);
        assert_eq!(next.positions[1].x, 0.8);
        assert_eq!(next.velocities[0].x, 0.0);
        assert_eq!(next.velocities[1].x, 0.0);
    }

    #[test]
    fn step_errors() {
        let cfg = config(1);
        let state = still_state(vec![Vec2::ZERO, Vec2::new(0.5, 0.5)]);
        assert!(matches!(step(&state, &cfg, &[Vec2::ZERO]), Err(Error::Usage(_))));
        assert!(matches!(
            step(&state, &cfg, &[Vec2::new(f64::NAN, 0.0), Vec2::ZERO]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn episode_times_out() {
        let cfg = WorldConfig {
            episode_max_steps: 3,
            ..config(1)
        };
        let mut state = still_state(vec![Vec2::new(-0.9, -0.9), Vec2::new(0.7, 0.7)]);
        for _ in 0..3 {
            let (next, result) = step(&state, &cfg, &[Vec2::ZERO; 2]).unwrap();
            state = next;
            assert_eq!(result.done, state.step_count == 3);
        }
        assert!(step(&state, &cfg, &[Vec2::ZERO; 2]).is_err());
    }

    #[test]
    fn field_specs() {
        let fields = FieldConfig::default();
        let cfg1 = config(1);
        let s1 = still_state(vec![Vec2::ZERO, Vec2::new(0.5, 0.5)]);
        let spec = field_spec_for_agent(&s1, &cfg1, &fields, 0).unwrap();
        assert_eq!(spec.goal_points, vec![Vec2::new(0.5, 0.5)]);
        assert!(spec.obstacle_points.is_empty());
        assert_eq!(spec.d0, 0.3);

        let cfg3 = config(3);
        let s3 = still_state(vec![
            Vec2::new(0.1, 0.0),
            Vec2::new(0.2, 0.0),
            Vec2::new(0.3, 0.0),
            Vec2::new(0.4, 0.0),
        ]);
        let spec = field_spec_for_agent(&s3, &cfg3, &fields, 0).unwrap();
        assert_eq!(spec.goal_points, vec![Vec2::new(0.4, 0.0)]);
        assert_eq!(spec.obstacle_points, vec![Vec2::new(0.2, 0.0), Vec2::new(0.3, 0.0)]);

        let prey = field_spec_for_agent(&s3, &cfg3, &fields, 3).unwrap();
        assert_eq!(prey.goal_points, vec![Vec2::ZERO]);
        assert_eq!(prey.obstacle_points.len(), 3);
        assert_eq!(prey.d0, 0.6);
        assert_eq!(prey.xi, fields.prey.xi);
    }

    #[test]
    fn trajectory_rows() {
        let cfg = config(1);
        let (state, _) = reset(&cfg, 0).unwrap();
        let actions = [Vec2::new(1.0, 0.0), Vec2::ZERO];
        let (next, result) = step(&state, &cfg, &actions).unwrap();
        let mut buf = Vec::new();
        {
            let mut w = TrajectoryWriter::new(&mut buf).unwrap();
            w.record(0, &next, &actions, &result).unwrap();
            w.flush().unwrap();
        }
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("episode,step,agent"));
    }
}
