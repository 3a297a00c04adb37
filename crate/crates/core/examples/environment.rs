//! Random rollout in the 3-vs-1 arena, written as a trajectory CSV to stdout.

use pfac::environment::{reset, step, TrajectoryWriter, WorldConfig};
use pfac::Vec2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> pfac::Result<()> {
    let config = WorldConfig { n_predators: 3, episode_max_steps: 20, ..WorldConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut state, _) = reset(&config, 1)?;
    let mut out = TrajectoryWriter::new(std::io::stdout())?;
    while !state.done {
        let actions: Vec<Vec2> = (0..config.n_agents())
            .map(|_| Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let (next, result) = step(&state, &config, &actions)?;
        out.record(0, &next, &actions, &result)?;
        state = next;
    }
    out.flush()
}
