//! The `pfac` command: `train`, `eval` and `pretrain-prey`.

use std::ffi::OsString;
use std::fs::File;
use std::io::BufWriter;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algorithms::Mode;
use crate::config::RunConfigFile;
use crate::error::{Error, Result};
use crate::harness::{
    self, evaluate_episodes, load_controller, save_scripted, Controller, MetricsWriter,
    PreyPolicy, Scenario, ScriptedPolicy,
};

pub const RESOLVED_CONFIG: &str = "config-resolved.json";
pub const METRICS_FILE: &str = "metrics.csv";
pub const EVAL_FILE: &str = "eval.csv";
pub const PREY_FILE: &str = "prey.json";

pub fn predator_file(i: usize) -> String {
    format!("predator_{i}.json")
}

#[derive(Debug, Parser)]
#[command(name = "pfac", version, about = "Potential-field guided actor-critic predator-prey runs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train predators and write metrics.csv, config-resolved.json and checkpoints.
    Train(TrainArgs),
    /// Greedy evaluation of a checkpoint directory; prints the capture rate.
    Eval(EvalArgs),
    /// Pretrain a prey policy against field-following predators.
    PretrainPrey(TrainArgs),
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// JSON run configuration; defaults are used for anything it omits.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// one_v_one, three_v_one_pretrained or three_v_one_simultaneous.
    #[arg(long)]
    pub scenario: Option<String>,
    /// Training episodes (pretraining episodes for pretrain-prey).
    #[arg(long)]
    pub episodes: Option<usize>,
    /// ddpg, pgddpg, sarsa_ac2 or stochastic_ac2.
    #[arg(long)]
    pub algo: Option<String>,
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Directory holding predator_<i>.json, prey.json and optionally
    /// config-resolved.json.
    #[arg(long)]
    pub dir: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub episodes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use this prey policy document instead of <dir>/prey.json.
    #[arg(long)]
    pub prey: Option<PathBuf>,
    /// Where to write eval.csv (defaults to --dir).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a per-step trajectory CSV here.
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Train(args) => cmd_train(&args),
        Command::Eval(args) => cmd_eval(&args).map(|rate| println!("{rate:?}")),
        Command::PretrainPrey(args) => cmd_pretrain_prey(&args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

fn load_config(args: &TrainArgs) -> Result<RunConfigFile> {
    let mut cfg = match &args.config {
        Some(path) => RunConfigFile::load(path)?,
        None => RunConfigFile::default(),
    };
    if let Some(seed) = args.seed {
        cfg.experiment.seed = seed;
    }
    if let Some(s) = &args.scenario {
        cfg.experiment.scenario = s.parse::<Scenario>()?;
    }
    if let Some(algo) = &args.algo {
        cfg.experiment.predator_algo = algo.parse::<Mode>()?;
    }
    if let Some(beta) = args.beta {
        cfg.hyper.beta = beta;
    }
    Ok(cfg.resolved())
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

pub fn cmd_train(args: &TrainArgs) -> Result<()> {
    let mut cfg = load_config(args)?;
    if let Some(n) = args.episodes {
        cfg.experiment.total_episodes = n;
    }
    let exp = cfg.experiment_config();
    exp.validate()?;
    create_dir(&args.out)?;
    cfg.save(&args.out.join(RESOLVED_CONFIG))?;

    let metrics_path = args.out.join(METRICS_FILE);
    let file = File::create(&metrics_path).map_err(|e| Error::io(&metrics_path, e))?;
    let mut writer = MetricsWriter::new(BufWriter::new(file))?;
    let outcome = harness::run_experiment(&exp, |record| {
        writer.write(record)?;
        Ok(ControlFlow::Continue(()))
    });
    // Keep whatever was recorded, even when the run aborted.
    writer.flush()?;
    let outcome = outcome?;

    for (i, learner) in outcome.predators.iter().enumerate() {
        learner.save(&args.out.join(predator_file(i)))?;
    }
    let prey_path = args.out.join(PREY_FILE);
    match (&exp.prey_policy, &outcome.prey) {
        (_, Some(prey)) => prey.save(&prey_path)?,
        (PreyPolicy::PretrainedCheckpoint { path }, None) => {
            std::fs::copy(path, &prey_path).map_err(|e| Error::io(path, e))?;
        }
        (PreyPolicy::Stationary, None) => save_scripted(&prey_path, ScriptedPolicy::Stationary)?,
        (_, None) => save_scripted(&prey_path, ScriptedPolicy::Random)?,
    }
    Ok(())
}

/// Returns the capture rate over the evaluation episodes.
pub fn cmd_eval(args: &EvalArgs) -> Result<f64> {
    if args.episodes == 0 {
        return Err(Error::Usage("--episodes must be positive".to_string()));
    }
    let resolved = args.dir.join(RESOLVED_CONFIG);
    let cfg = if resolved.exists() {
        RunConfigFile::load(&resolved)?
    } else {
        let n_predators = (0..)
            .take_while(|&i| args.dir.join(predator_file(i)).exists())
            .count();
        if n_predators == 0 {
            return Err(Error::Config(format!(
                "no {} found in {}",
                predator_file(0),
                args.dir.display()
            )));
        }
        let mut cfg = RunConfigFile::default();
        cfg.world.n_predators = n_predators;
        cfg
    };
    let world = cfg.world.clone();
    world.validate()?;

    let mut controllers: Vec<Controller> = Vec::with_capacity(world.n_agents());
    for i in 0..world.n_predators {
        let path = args.dir.join(predator_file(i));
        controllers.push(harness::freeze(load_controller(&path, args.seed)?));
    }
    let prey_path = args.prey.clone().unwrap_or_else(|| args.dir.join(PREY_FILE));
    controllers.push(harness::freeze(load_controller(&prey_path, args.seed)?));

    let out_dir = args.out.clone().unwrap_or_else(|| args.dir.clone());
    create_dir(&out_dir)?;
    if let Some(path) = &args.trajectory {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        harness::record_trajectories(
            controllers.clone(),
            &world,
            &cfg.field,
            args.episodes,
            args.seed,
            Box::new(BufWriter::new(file)),
        )?;
    }
    let episodes = evaluate_episodes(controllers, &world, &cfg.field, args.episodes, args.seed)?;

    let eval_path = out_dir.join(EVAL_FILE);
    let mut w = csv::Writer::from_path(&eval_path)?;
    w.write_record(["episode", "success", "steps"])?;
    for (i, e) in episodes.iter().enumerate() {
        w.write_record([i.to_string(), (e.captured as u8).to_string(), e.steps.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(&eval_path, e))?;
    Ok(episodes.iter().filter(|e| e.captured).count() as f64 / episodes.len() as f64)
}

pub fn cmd_pretrain_prey(args: &TrainArgs) -> Result<()> {
    let mut cfg = load_config(args)?;
    if let Some(n) = args.episodes {
        cfg.experiment.pretrain_episodes = n;
    }
    let exp = cfg.experiment_config();
    create_dir(&args.out)?;
    let prey = harness::pretrain_prey(&exp)?;
    cfg.save(&args.out.join(RESOLVED_CONFIG))?;
    prey.save(&args.out.join(PREY_FILE))
}
