mod play;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use arcade_core::config::{parse_game_config, validate, GameConfig};
use arcade_core::curriculum::load_curriculum;
use arcade_core::env::{
    episode_seed, run_episode, scripted_agent, trace_digest, write_ndrec, AgentKind, EnvError, EnvInstance,
};
use arcade_core::games::{find_game, list_games, load_variant, Difficulty};
use arcade_core::render::{write_dump, write_png};
use arcade_core::sim::Action;
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "arcade", version, about = "Configurable 2D arcade games with pixel observations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in games.
    Games,
    /// Check a game definition and print its issues.
    Validate { config: String },
    /// Play a game in the terminal (arrows move, space fires, r restarts, q quits).
    Play {
        game: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a scripted policy for a number of episodes.
    Rollout {
        game: String,
        #[arg(long, value_parser = parse_policy, default_value = "random")]
        policy: AgentKind,
        #[arg(long, default_value_t = 1)]
        episodes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write episode records as JSON lines.
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Export observations of a random-policy run.
    Frames {
        game: String,
        #[arg(long, default_value_t = 100)]
        steps: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FrameFormat::Png)]
        format: FrameFormat,
    },
    /// Measure headless random-policy steps per second.
    Bench {
        game: String,
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Drive a curriculum to its end with a scripted policy.
    CurriculumRun {
        spec: PathBuf,
        #[arg(long, value_parser = parse_policy, default_value = "random")]
        policy: AgentKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Print digests of seeded random-action runs, for comparing builds or
    /// machines.
    Trace {
        /// Games to trace; all built-in games when omitted.
        games: Vec<String>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 200)]
        steps: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameFormat {
    Png,
    /// One raw file holding every frame.
    Dump,
}

fn parse_policy(s: &str) -> Result<AgentKind, String> {
    s.parse().map_err(|e: arcade_core::env::AgentError| e.to_string())
}

/// A registry game, a variant, or a path to a definition file.
fn load_definition(arg: &str) -> Result<(String, GameConfig)> {
    let path = Path::new(arg);
    if path.extension().is_some_and(|e| e == "json") || path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let parsed = parse_game_config(&text).with_context(|| format!("parsing {arg}"))?;
        let name = path.file_stem().map_or(arg.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((name, parsed.config));
    }
    if let Ok(cfg) = load_variant(arg) {
        return Ok((arg.to_string(), cfg));
    }
    let entry = find_game(arg)?;
    Ok((entry.key.clone(), entry.config.clone()))
}

fn cmd_games() -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{:<16} {:<20} {:<10} elements", "key", "name", "difficulty")?;
    for g in list_games() {
        let difficulty = match g.difficulty {
            Difficulty::Challenge => "challenge",
            Difficulty::SolvableByBaseline => "baseline",
        };
        writeln!(out, "{:<16} {:<20} {:<10} {}", g.key, g.name, difficulty, g.elements.names().join(", "))?;
    }
    Ok(())
}

fn cmd_validate(arg: &str) -> Result<bool> {
    let path = Path::new(arg);
    let report = if path.exists() {
        let text = std::fs::read_to_string(path)?;
        match parse_game_config(&text) {
            Ok(parsed) => {
                let mut r = validate(&parsed.config);
                r.merge(parsed.warnings);
                r
            }
            Err(e) => {
                println!("error: {e}");
                return Ok(false);
            }
        }
    } else {
        validate(&load_definition(arg)?.1)
    };
    println!("{report}");
    Ok(report.ok)
}

fn open_record(path: &Option<PathBuf>) -> Result<Option<BufWriter<File>>> {
    path.as_ref()
        .map(|p| File::create(p).map(BufWriter::new).with_context(|| format!("creating {}", p.display())))
        .transpose()
}

fn cmd_rollout(game: &str, policy: AgentKind, episodes: u64, seed: u64, record: &Option<PathBuf>) -> Result<()> {
    let (name, cfg) = load_definition(game)?;
    let mut env = EnvInstance::new(cfg, seed)?;
    let mut out = open_record(record)?;
    let mut total = 0i64;
    for ep in 0..episodes {
        env.reset(None)?;
        let mut agent = scripted_agent(policy, env.config().expect("just reset"), episode_seed(seed, ep))?;
        let rec = run_episode(&mut env, &mut *agent, &name)?;
        println!(
            "episode {ep}: score {} length {} {}",
            rec.final_score,
            rec.length(),
            rec.status.name()
        );
        total += rec.final_score as i64;
        if let Some(w) = out.as_mut() {
            write_ndrec(w, &rec)?;
        }
    }
    if let Some(mut w) = out {
        w.flush()?;
    }
    println!("mean score {:.2} over {episodes} episodes", total as f64 / episodes.max(1) as f64);
    Ok(())
}

fn cmd_frames(game: &str, steps: u32, out: &Path, seed: u64, format: FrameFormat) -> Result<()> {
    let (_, cfg) = load_definition(game)?;
    std::fs::create_dir_all(out)?;
    let mut env = EnvInstance::new(cfg, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut frames = vec![env.reset(None)?];
    for _ in 0..steps {
        let r = env.step(Action::Discrete(rng.random_range(0..6)))?;
        frames.push(r.frame);
        if r.done {
            frames.push(env.reset(None)?);
        }
    }
    match format {
        FrameFormat::Png => {
            for (i, f) in frames.iter().enumerate() {
                write_png(f, &out.join(format!("frame_{i:05}.png")))?;
            }
        }
        FrameFormat::Dump => write_dump(BufWriter::new(File::create(out.join("frames.arcf"))?), &frames)?,
    }
    println!("wrote {} frames to {}", frames.len(), out.display());
    Ok(())
}

fn cmd_bench(game: &str, steps: u64, seed: u64) -> Result<()> {
    let (name, cfg) = load_definition(game)?;
    let mut env = EnvInstance::new(cfg, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    env.reset(None)?;
    let start = Instant::now();
    for _ in 0..steps {
        if env.step(Action::Discrete(rng.random_range(0..6)))?.done {
            env.reset(None)?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    println!("{name}: {steps} steps in {secs:.3}s, {:.0} steps/s", steps as f64 / secs);
    Ok(())
}

fn cmd_curriculum(spec: &Path, policy: AgentKind, seed: u64, record: &Option<PathBuf>) -> Result<()> {
    let spec = load_curriculum(spec)?;
    let mut env = EnvInstance::from_curriculum(spec, seed);
    let mut out = open_record(record)?;
    let mut ep = 0u64;
    loop {
        match env.reset(None) {
            Ok(_) => {}
            Err(EnvError::EndOfCurriculum) => break,
            Err(e) => return Err(e.into()),
        }
        let info = env.stage_info().cloned().expect("curriculum episode");
        let mut agent = scripted_agent(policy, env.config().expect("just reset"), episode_seed(seed, ep))?;
        let rec = run_episode(&mut env, &mut *agent, &format!("stage{}", info.stage_index))?;
        let t = info.t.map(|t| format!(" t {t:.3}")).unwrap_or_default();
        let pick = info.pool_choice.map(|i| format!(" game {i}")).unwrap_or_default();
        println!(
            "episode {ep}: stage {} {}{t}{pick} score {} length {}",
            info.stage_index,
            info.kind,
            rec.final_score,
            rec.length()
        );
        if let Some(w) = out.as_mut() {
            write_ndrec(w, &rec)?;
        }
        ep += 1;
    }
    if let Some(mut w) = out {
        w.flush()?;
    }
    println!("curriculum finished after {ep} episodes");
    Ok(())
}

fn cmd_trace(games: &[String], seeds: u64, steps: u32) -> Result<()> {
    let targets: Vec<(String, GameConfig)> = if games.is_empty() {
        list_games().iter().map(|g| (g.key.clone(), g.config.clone())).collect()
    } else {
        games.iter().map(|g| load_definition(g)).collect::<Result<_>>()?
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (name, cfg) in &targets {
        for seed in 0..seeds {
            writeln!(out, "{name} {seed} {}", trace_digest(cfg, seed, steps)?)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Games => cmd_games()?,
        Command::Validate { config } => {
            if !cmd_validate(&config)? {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Play { game, seed } => {
            let (name, cfg) = load_definition(&game)?;
            play::run(&name, cfg, seed)?;
        }
        Command::Rollout {
            game,
            policy,
            episodes,
            seed,
            record,
        } => cmd_rollout(&game, policy, episodes, seed, &record)?,
        Command::Frames {
            game,
            steps,
            out,
            seed,
            format,
        } => cmd_frames(&game, steps, &out, seed, format)?,
        Command::Bench { game, steps, seed } => cmd_bench(&game, steps, seed)?,
        Command::CurriculumRun {
            spec,
            policy,
            seed,
            record,
        } => cmd_curriculum(&spec, policy, seed, &record)?,
        Command::Trace { games, seeds, steps } => {
            if seeds == 0 {
                bail!("--seeds must be at least 1");
            }
            cmd_trace(&games, seeds, steps)?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        // Output cut short by a closed pipe (e.g. `| head`) is not a failure.
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
