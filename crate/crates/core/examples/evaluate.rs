//! Greedy evaluation: pure pursuit against a stationary and a fleeing prey,
//! plus checkpoint loading.

use pfac::environment::{FieldConfig, WorldConfig};
use pfac::harness::{evaluate_episodes, load_controller, save_scripted, Controller, ScriptedPolicy};

fn main() -> pfac::Result<()> {
    let world = WorldConfig::default();
    let fields = FieldConfig::default();
    for prey in [ScriptedPolicy::Stationary, ScriptedPolicy::Random, ScriptedPolicy::FieldFollower] {
        let controllers = vec![Controller::Scripted(ScriptedPolicy::FieldFollower), Controller::Scripted(prey)];
        let episodes = evaluate_episodes(controllers, &world, &fields, 200, 5)?;
        let captured: Vec<_> = episodes.iter().filter(|e| e.captured).collect();
        let mean_steps = captured.iter().map(|e| e.steps as f64).sum::<f64>() / captured.len().max(1) as f64;
        println!(
            "pursuit vs {prey:?}: capture rate {:.3}, mean steps to capture {mean_steps:.1}",
            captured.len() as f64 / episodes.len() as f64
        );
    }

    // Policy documents on disk load through the same path as learned checkpoints.
    let dir = std::env::temp_dir().join("pfac-evaluate-example");
    std::fs::create_dir_all(&dir).map_err(|e| pfac::Error::io(&dir, e))?;
    let path = dir.join("pursuit.json");
    save_scripted(&path, ScriptedPolicy::FieldFollower)?;
    let loaded = load_controller(&path, 0)?;
    println!("loaded {} as {loaded:?}", path.display());
    Ok(())
}
