//! Three PGDDPG predators and a DDPG prey learning at the same time.

use std::ops::ControlFlow;

use pfac::algorithms::Mode;
use pfac::harness::{run_experiment, ExperimentConfig, PreyPolicy, Scenario};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

fn main() -> pfac::Result<()> {
    let config = ExperimentConfig {
        scenario: Scenario::ThreeVOneSimultaneous,
        predator_algo: Mode::Pgddpg,
        prey_policy: PreyPolicy::TrainedSimultaneously,
        prey_algo: Mode::Ddpg,
        total_episodes: 200,
        seed: 9,
        ..ExperimentConfig::default()
    }
    .normalized();
    let out = run_experiment(&config, |r| {
        if (r.episode + 1) % 50 == 0 {
            println!("episode {:>4}  success_rate_w200 {:.3}", r.episode + 1, r.success_rate_w200);
        }
        Ok(ControlFlow::Continue(()))
    })?;
    println!(
        "{} predators and {} learning prey after {} episodes",
        out.predators.len(),
        out.prey.iter().count(),
        out.records.len()
    );
    Ok(())
}
