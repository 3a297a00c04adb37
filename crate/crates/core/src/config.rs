//! JSON run configuration.
//!
//! ```json
//! {
//!   "world":      { "n_predators": 1, "dt": 0.1, ... },
//!   "hyper":      { "beta": 0.5, "actor_lr": 0.001, ... },
//!   "field":      { "predator": { "xi": 1.0, "eta": 0.0001, "d0": 0.3 }, ... },
//!   "experiment": { "scenario": "one_v_one", "predator_algo": "pgddpg", ... }
//! }
//! ```
//!
//! Every key is optional; unknown keys are rejected. `world.n_predators` and
//! `world.seed` are overridden by the scenario and the experiment seed.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algorithms::{HyperParams, Mode};
use crate::environment::{FieldConfig, WorldConfig};
use crate::error::{Error, Result};
use crate::harness::{ExperimentConfig, PreyPolicy, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSection {
    pub scenario: Scenario,
    pub predator_algo: Mode,
    pub prey_policy: PreyPolicy,
    pub prey_algo: Mode,
    pub total_episodes: usize,
    pub eval_every: usize,
    pub pretrain_episodes: usize,
    pub seed: u64,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        let d = ExperimentConfig::default();
        ExperimentSection {
            scenario: d.scenario,
            predator_algo: d.predator_algo,
            prey_policy: d.prey_policy,
            prey_algo: d.prey_algo,
            total_episodes: d.total_episodes,
            eval_every: d.eval_every,
            pretrain_episodes: d.pretrain_episodes,
            seed: d.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfigFile {
    pub world: WorldConfig,
    pub hyper: HyperParams,
    pub field: FieldConfig,
    pub experiment: ExperimentSection,
}

impl RunConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::json("run configuration", e))
    }

    /// Reads a config file. A relative prey checkpoint path is taken
    /// relative to the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: RunConfigFile = serde_json::from_str(&text)
            .map_err(|e| Error::json(path.display().to_string(), e))?;
        if let PreyPolicy::PretrainedCheckpoint { path: prey } = &mut cfg.experiment.prey_policy {
            if prey.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                *prey = absolutize(&base.join(&*prey));
            }
        }
        Ok(cfg)
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::json("run configuration", e))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_pretty()?).map_err(|e| Error::io(path, e))
    }

    /// The experiment this file describes, with the scenario's predator count
    /// and the experiment seed applied.
    pub fn experiment_config(&self) -> ExperimentConfig {
        let e = &self.experiment;
        ExperimentConfig {
            scenario: e.scenario,
            predator_algo: e.predator_algo,
            prey_policy: e.prey_policy.clone(),
            prey_algo: e.prey_algo,
            total_episodes: e.total_episodes,
            eval_every: e.eval_every,
            pretrain_episodes: e.pretrain_episodes,
            world: self.world.clone(),
            hyper: self.hyper.clone(),
            field: self.field,
            seed: e.seed,
        }
        .normalized()
    }

    /// Writes the normalized values back so the file is self-consistent.
    pub fn resolved(&self) -> Self {
        let exp = self.experiment_config();
        RunConfigFile {
            world: exp.world,
            ..self.clone()
        }
    }
}

fn absolutize(p: &Path) -> PathBuf {
    std::fs::canonicalize(p).unwrap_or_else(|_| {
        std::env::current_dir()
            .map(|d| d.join(p))
            .unwrap_or_else(|_| p.to_path_buf())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let cfg = RunConfigFile::from_json("{}").unwrap();
        assert_eq!(cfg, RunConfigFile::default());
        assert_eq!(cfg.hyper.beta, 0.5);
        assert_eq!(cfg.hyper.gamma1, 0.99);
        assert_eq!(cfg.world.prey_bound, 0.8);
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = RunConfigFile::from_json(r#"{"hyper": {"betta": 0.3}}"#).unwrap_err();
        assert!(err.to_string().contains("betta"), "{err}");
        let err = RunConfigFile::from_json(r#"{"extra": 1}"#).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn partial_sections_merge_with_defaults() {
        let cfg = RunConfigFile::from_json(
            r#"{"experiment": {"scenario": "three_v_one_simultaneous",
                               "prey_policy": {"kind": "trained_simultaneously"},
                               "predator_algo": "ddpg", "seed": 9},
                "field": {"predator": {"xi": 2.0, "eta": 0.01, "d0": 0.25}}}"#,
        )
        .unwrap();
        let exp = cfg.experiment_config();
        assert_eq!(exp.world.n_predators, 3);
        assert_eq!(exp.world.seed, 9);
        assert_eq!(exp.predator_algo, Mode::Ddpg);
        assert_eq!(exp.field.predator.xi, 2.0);
        assert_eq!(exp.field.prey, FieldConfig::default().prey);
        assert!(exp.validate().is_ok());
    }

    #[test]
    fn resolved_config_round_trips() {
        let cfg = RunConfigFile::default().resolved();
        let back = RunConfigFile::from_json(&cfg.to_json_pretty().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }
}
