//! The environment facade: reset/step over observations, scripted agents
//! and episode recording.

pub mod agents;
mod instance;
pub mod record;
pub mod seed;

pub use agents::{scripted_agent, AgentError, AgentKind, Policy};
pub use instance::{EnvError, EnvInstance, GameSource, RenderMode, StepInfo, StepResult};
pub use record::{write_ndrec, EpisodeRecord, StepRecord};
pub use seed::episode_seed;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::config::GameConfig;
use crate::sim::Action;

/// Plays one episode from the current reset state with `policy`, returning
/// its record. The environment must have just been reset.
pub fn run_episode(
    env: &mut EnvInstance,
    policy: &mut dyn Policy,
    game: &str,
) -> Result<EpisodeRecord, EnvError> {
    let world = env.world().ok_or(EnvError::StepBeforeReset)?;
    let mut rec = EpisodeRecord::new(
        game,
        env.episodes_started().saturating_sub(1),
        env.episode_seed().unwrap_or_default(),
        world.cfg.digest(),
    );
    loop {
        let world = env.world().expect("episode active");
        let a = policy.act(world);
        let r = env.step(a)?;
        rec.push(a, r.reward, &r.info.events);
        if r.done {
            rec.finish(r.info.score, r.info.status);
            return Ok(rec);
        }
    }
}

/// Digest of a seeded random-action run of `steps` steps, covering every
/// observation and reward. Episodes that end early are reset and continued.
/// Equal digests on two machines mean the runs were bit-identical.
pub fn trace_digest(cfg: &GameConfig, seed: u64, steps: u32) -> Result<String, EnvError> {
    let mut env = EnvInstance::new(cfg.clone(), seed)?;
    let mut actions = ChaCha8Rng::seed_from_u64(seed);
    let mut h = Sha256::new();
    h.update(env.reset(Some(seed))?.as_bytes());
    for _ in 0..steps {
        let r = env.step(Action::Discrete(actions.random_range(0..6)))?;
        h.update(r.frame.as_bytes());
        h.update(r.reward.to_le_bytes());
        if r.done {
            h.update(env.reset(None)?.as_bytes());
        }
    }
    Ok(hex::encode(h.finalize()))
}
