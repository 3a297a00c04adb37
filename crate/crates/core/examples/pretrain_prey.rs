//! Pretrains a prey against pure-pursuit predators and compares it with an
//! untrained prey.
//!
//! Usage: `pretrain_prey [episodes] [out.json]`

use pfac::algorithms::AgentLearner;
use pfac::harness::{evaluate_policy, freeze, pretrain_prey_with, Controller, ExperimentConfig, ScriptedPolicy};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

fn capture_rate(prey: AgentLearner, predator: ScriptedPolicy, config: &ExperimentConfig) -> pfac::Result<f64> {
    let controllers = vec![Controller::Scripted(predator), freeze(Controller::Learner(Box::new(prey)))];
    evaluate_policy(controllers, &config.world, &config.field, 300, 99)
}

fn main() -> pfac::Result<()> {
    let mut args = std::env::args().skip(1);
    let episodes = args.next().map_or(Ok(1000), |s| s.parse()).expect("episodes");
    let out = args.next().unwrap_or_else(|| "prey.json".to_string());

    let config = ExperimentConfig { pretrain_episodes: episodes, ..ExperimentConfig::default() }.normalized();
    let prey = pretrain_prey_with(&config, |done, _| {
        if done % 250 == 0 {
            println!("pretraining episode {done}");
        }
        Ok(())
    })?;
    prey.save(std::path::Path::new(&out))?;

    let untrained = AgentLearner::new(prey.mode, config.hyper.clone(), config.world.observation_dim(), 1)?;
    for predator in [ScriptedPolicy::FieldFollower, ScriptedPolicy::Random] {
        println!(
            "{predator:?} predator captures: pretrained {:.3}, untrained {:.3}",
            capture_rate(prey.clone(), predator, &config)?,
            capture_rate(untrained.clone(), predator, &config)?
        );
    }
    println!("saved {out}");
    Ok(())
}
