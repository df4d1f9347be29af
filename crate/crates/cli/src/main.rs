use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use erasure_core::game::{self, Player2Kind, StrategyAdapter, Winner};
use erasure_core::generators::InputSpec;
use erasure_core::harness::{verify, Experiment, ExperimentConfig, OutputFormat};
use erasure_core::model::BooleanFunction;
use erasure_core::adversaries;
use erasure_core::generators::InputKind;

#[derive(Parser)]
#[command(name = "erasure-sim", version, about = "Property testing against online erasures and corruptions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single trial and print its verdict.
    Trial {
        #[command(flatten)]
        exp: ExpArgs,
        #[arg(long, default_value_t = 0)]
        index: u64,
        /// Write the query transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Run many trials and report the rejection rate.
    Estimate {
        #[command(flatten)]
        exp: ExpArgs,
        /// Run trials on one thread.
        #[arg(long)]
        serial: bool,
    },
    /// Run the exhaustive structural checks.
    VerifyStructure,
    /// Play the quadraticity game.
    Game {
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// passive, random, greedy, or an oracle strategy name.
        #[arg(long, default_value = "greedy")]
        player2: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        games: u64,
        #[arg(long)]
        move_cap: Option<u64>,
        /// Write the move log of the first game here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Write a generated input in the text format.
    Generate {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 0)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        n: u64,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ExpArgs {
    /// Flat key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra key=value settings; these override the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
}

impl ExpArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::read(p).with_context(|| format!("reading {}", p.display()))?,
            None => ExperimentConfig::default(),
        };
        let mut eps_given = false;
        for s in &self.sets {
            let (k, v) = s.split_once('=').with_context(|| format!("expected KEY=VALUE, got `{s}`"))?;
            cfg.set(k.trim(), v.trim())?;
            eps_given |= k.trim() == "input_eps";
        }
        if !eps_given && self.sets.iter().any(|s| s.starts_with("epsilon=") || s.starts_with("eps=")) {
            cfg.input.eps = cfg.epsilon;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        if let Some(f) = &self.format {
            cfg.format = f.parse::<OutputFormat>()?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Trial { exp, index, transcript } => {
            let e = Experiment::new(exp.config()?)?;
            let (out, dump) = e.run_trial_with_transcript(index)?;
            if let Some(p) = transcript {
                std::fs::write(&p, dump)?;
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Estimate { exp, serial } => {
            let cfg = exp.config()?;
            let e = Experiment::new(cfg.clone())?;
            let report = e.estimate_with(!serial)?;
            match &cfg.out {
                Some(p) => report.append(p, cfg.format)?,
                None => match cfg.format {
                    OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                    OutputFormat::Csv => {
                        let r = report.row();
                        println!(
                            "{} {} t={} vs {}: rejected {}/{} = {:.4} (99% CI {:.4}..{:.4}), mean queries {:.1}, erasure rate {:.3}, {:.2}s",
                            r.tester, r.input, r.t, r.strategy, r.rejects, r.trials, r.rejection_rate, r.ci_lo, r.ci_hi, r.mean_queries,
                            r.erasure_rate, r.wall_seconds
                        );
                    }
                },
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
        }
        Command::VerifyStructure => {
            let results = verify::run_all();
            for r in &results {
                println!("{:<32} {} ({:.2}s) {}", r.name, if r.passed { "PASS" } else { "FAIL" }, r.seconds, r.detail);
            }
            if results.iter().any(|r| !r.passed) {
                bail!("structural checks failed");
            }
        }
        Command::Game { t, player2, seed, games, move_cap, log } => {
            let cap = move_cap.unwrap_or(game::strategy_moves(t)?);
            let carrier = BooleanFunction::zero(20)?;
            let mut wins = 0;
            for g in 0..games {
                let mut p2: Box<dyn game::Player2 + '_> = match player2.parse::<Player2Kind>() {
                    Ok(kind) => kind.build(),
                    Err(_) => Box::new(StrategyAdapter::new(&carrier, adversaries::by_name(&player2, t)?, t, seed + g)),
                };
                let r = game::play(t, p2.as_mut(), seed + g, cap, g == 0 && log.is_some())?;
                if let (0, Some(p)) = (g, &log) {
                    std::fs::write(p, r.log.join("\n") + "\n")?;
                }
                wins += u64::from(r.winner == Winner::Player1);
                println!(
                    "game {g}: {:?} after {} moves, {} Player 2 steps, {} rejected turns",
                    r.winner, r.moves, r.p2_steps, r.rejected_turns
                );
            }
            println!("Player 1 won {wins}/{games}");
        }
        Command::Generate { input, d, n, eps, seed, out } => {
            let kind: InputKind = input.parse()?;
            let spec = InputSpec { kind, d, n, eps, path: None };
            let text = spec.generate(seed)?.to_text();
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}
