//! Short 1-vs-1 training run of PGDDPG against a randomly moving prey.
//!
//! Usage: `train_one_v_one [episodes] [beta]`

use std::ops::ControlFlow;

use pfac::algorithms::Mode;
use pfac::harness::{run_experiment, ExperimentConfig};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

fn main() -> pfac::Result<()> {
    let mut args = std::env::args().skip(1);
    let episodes = args.next().map_or(Ok(400), |s| s.parse()).expect("episodes");
    let beta = args.next().map_or(Ok(0.5), |s| s.parse()).expect("beta");

    let mut config = ExperimentConfig {
        predator_algo: Mode::Pgddpg,
        total_episodes: episodes,
        seed: 3,
        ..ExperimentConfig::default()
    }
    .normalized();
    config.hyper.beta = beta;

    let outcome = run_experiment(&config, |r| {
        if (r.episode + 1) % 50 == 0 {
            println!(
                "episode {:>5}  success_rate_w200 {:.3}  reward_avg_w500 {:.3}",
                r.episode + 1,
                r.success_rate_w200,
                r.reward_avg_w500
            );
        }
        Ok(ControlFlow::Continue(()))
    })?;
    let last = outcome.records.last().expect("at least one episode");
    println!("final success rate {:.3}", last.success_rate_w200);
    Ok(())
}
