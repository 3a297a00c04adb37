//! Stochastic actor-critic-2 (Gaussian policy, state-value critic) against a
//! stationary prey, with and without the field critic.

use std::ops::ControlFlow;

use pfac::algorithms::Mode;
use pfac::harness::{run_experiment, ExperimentConfig, PreyPolicy};

fn main() -> pfac::Result<()> {
    for beta in [1.0, 0.5] {
        let mut config = ExperimentConfig {
            predator_algo: Mode::StochasticAc2,
            prey_policy: PreyPolicy::Stationary,
            total_episodes: 300,
            seed: 4,
            ..ExperimentConfig::default()
        }
        .normalized();
        config.hyper.beta = beta;
        config.hyper.actor_lr = 1e-4;
        let out = run_experiment(&config, |_| Ok(ControlFlow::Continue(())))?;
        let last = out.records.last().expect("records");
        println!(
            "beta {beta}: success_rate_w200 {:.3}, simulated seconds {:.1}",
            last.success_rate_w200, last.wall_clock_s
        );
    }
    Ok(())
}
