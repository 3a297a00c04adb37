use pfac::environment::*;
use pfac::Vec2;
use proptest::prelude::*;

fn action() -> impl Strategy<Value = Vec2> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| Vec2::new(x, y))
}

fn world(n_predators: usize) -> WorldConfig {
    WorldConfig { n_predators, ..WorldConfig::default() }
}

/// Runs `actions` (one row per step, cycled over agents) and returns every
/// state visited plus the per-step rewards.
fn rollout(config: &WorldConfig, seed: u64, actions: &[Vec2]) -> (Vec<WorldState>, Vec<StepResult>) {
    let n = config.n_agents();
    let (mut state, _) = reset(config, seed).unwrap();
    let mut states = vec![state.clone()];
    let mut results = Vec::new();
    for row in actions.chunks_exact(n) {
        if state.done {
            state = reset(config, seed.wrapping_add(states.len() as u64)).unwrap().0;
        }
        let (next, result) = step(&state, config, row).unwrap();
        states.push(next.clone());
        results.push(result);
        state = next;
    }
    (states, results)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn states_stay_in_bounds_and_under_speed(
        n in 1usize..4, seed in any::<u64>(), actions in prop::collection::vec(action(), 400),
    ) {
        let config = world(n);
        let (states, _) = rollout(&config, seed, &actions);
        for s in &states {
            for i in 0..config.n_agents() {
                let b = config.bound(config.role(i));
                let (p, v) = (s.positions[i], s.velocities[i]);
                prop_assert!(p.is_finite() && v.is_finite());
                prop_assert!(p.x.abs() <= b && p.y.abs() <= b);
                prop_assert!(v.norm() <= config.max_speed * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn identical_inputs_give_identical_trajectories(
        seed in any::<u64>(), actions in prop::collection::vec(action(), 200),
    ) {
        let config = world(3);
        prop_assert_eq!(rollout(&config, seed, &actions).0, rollout(&config, seed, &actions).0);
    }

    #[test]
    fn predators_share_the_capture_reward(
        n in 1usize..4, seed in any::<u64>(), actions in prop::collection::vec(action(), 300),
    ) {
        let config = world(n);
        let (_, results) = rollout(&config, seed, &actions);
        for r in &results {
            let predator_total: f64 = r.rewards[..n].iter().sum();
            let expected = if r.captured { CAPTURE_REWARD * n as f64 } else { 0.0 };
            prop_assert_eq!(predator_total, expected);
        }
    }

    #[test]
    fn approaching_the_prey_never_breaks_capture(
        seed in any::<u64>(), mover in 0usize..3, frac in 0.0..1.0f64,
    ) {
        let config = world(3);
        let (mut state, _) = reset(&config, seed).unwrap();
        let prey = state.positions[config.prey_index()];
        for p in state.positions[..3].iter_mut() {
            *p = prey + 0.5 * (*p - prey) * (config.capture_distance / p.distance(prey).max(1e-9));
        }
        prop_assert!(capture_predicate(&state, &config));
        let p = state.positions[mover];
        state.positions[mover] = prey + frac * (p - prey);
        prop_assert!(capture_predicate(&state, &config));
    }
}

#[test]
fn observations_are_relative_to_the_observer() {
    let config = world(3);
    let (state, obs) = reset(&config, 4).unwrap();
    for (i, o) in obs.iter().enumerate() {
        assert_eq!(o.len(), config.observation_dim());
        assert_eq!(o[0], state.positions[i].x);
        assert_eq!(o[1], state.positions[i].y);
    }
}
