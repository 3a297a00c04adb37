//! Sarsa critic on a two-state, two-action chain, compared with the exact
//! action values of the fixed policy.

use pfac::algorithms::{AgentLearner, HyperParams, Mode, Transition};
use pfac::approximator::OptimizerKind;
use pfac::Vec2;

const GAMMA: f64 = 0.9;

fn state(s: usize) -> Vec<f64> {
    if s == 0 { vec![1.0, 0.0] } else { vec![0.0, 1.0] }
}

fn action(a: usize) -> Vec2 {
    if a == 0 { Vec2::new(1.0, 0.0) } else { Vec2::new(0.0, 1.0) }
}

/// Action 0 switches state, action 1 stays. The policy takes action 0 in
/// state 0 and action 1 in state 1.
fn next_state(s: usize, a: usize) -> usize {
    if a == 0 { 1 - s } else { s }
}

fn reward(s: usize, a: usize) -> f64 {
    [[0.1, 0.0], [0.0, 0.2]][s][a]
}

fn main() -> pfac::Result<()> {
    // Fixed point of Q(s, a) = r + gamma Q(s', pi(s')).
    let q11 = 0.2 / (1.0 - GAMMA);
    let q00 = 0.1 + GAMMA * q11;
    let exact = [q00, GAMMA * q00, GAMMA * q00, q11];

    let hyper = HyperParams {
        gamma1: GAMMA,
        critic_lr: 0.02,
        hidden_sizes: vec![32],
        optimizer: OptimizerKind::Sgd,
        ..HyperParams::default()
    };
    let mut learner = AgentLearner::new(Mode::SarsaAc2, hyper, 2, 5)?;
    for k in 0..10_000 {
        let (s, a) = (k % 4 / 2, k % 2);
        let s2 = next_state(s, a);
        learner.sarsa_critic_update(&Transition {
            obs: state(s),
            action: action(a),
            reward: reward(s, a),
            next_obs: state(s2),
            next_action: Some(action(s2)),
            done: false,
            pf_spec_snapshot: None,
            raw_state_pos: Vec2::ZERO,
        })?;
    }
    for k in 0..4 {
        let (s, a) = (k / 2, k % 2);
        let mut x = state(s);
        x.extend(action(a).to_array());
        println!("Q(s{s}, a{a}) = {:.4}   exact {:.4}", learner.critic.forward(&x)?[0], exact[k]);
    }
    Ok(())
}
