use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::seed::episode_seed;
use crate::config::{sample, validate, ConcreteConfig, GameConfig};
use crate::curriculum::{CurriculumError, CurriculumSpec, Scheduler, StageInfo, Unit};
use crate::render::{observe, BadRotation, Frame};
use crate::sim::{init_world, step_world, Action, ScoreEvent, Status, StepError, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RenderMode {
    #[default]
    Headless,
    /// A viewer is attached; observations are unaffected.
    Window,
}

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("invalid game definition:\n{0}")]
    InvalidConfig(String),
    #[error("the curriculum has no more episodes")]
    EndOfCurriculum,
    #[error(transparent)]
    Curriculum(CurriculumError),
    #[error("step called before reset")]
    StepBeforeReset,
    #[error("step called after the episode ended")]
    StepAfterDone,
    #[error(transparent)]
    Step(#[from] StepError),
    #[error(transparent)]
    Render(#[from] BadRotation),
}

#[derive(Debug, Clone)]
pub enum GameSource {
    Single(GameConfig),
    Curriculum(Scheduler),
}

/// Per-step extras.
#[derive(Debug, Clone, PartialEq)]
pub struct StepInfo {
    pub score: i32,
    pub step_count: u32,
    pub events: Vec<ScoreEvent>,
    pub status: Status,
}

#[derive(Debug, Clone)]
pub struct StepResult {
    pub frame: Frame,
    pub reward: i32,
    pub done: bool,
    pub info: StepInfo,
}

#[derive(Debug, Clone)]
struct Episode {
    seed: u64,
    world: WorldState,
    stage: Option<StageInfo>,
    /// Whether this episode's steps were reported to a step-based curriculum.
    reported: bool,
}

/// A game environment with a reset/step loop over pixel observations.
#[derive(Debug, Clone)]
pub struct EnvInstance {
    source: GameSource,
    master_seed: u64,
    episodes_started: u64,
    episode: Option<Episode>,
    render_mode: RenderMode,
}

impl EnvInstance {
    pub fn new(game: GameConfig, master_seed: u64) -> Result<Self, EnvError> {
        let report = validate(&game);
        if !report.ok {
            return Err(EnvError::InvalidConfig(report.to_string()));
        }
        Ok(Self::with_source(GameSource::Single(game), master_seed))
    }

    pub fn from_curriculum(spec: impl Into<Arc<CurriculumSpec>>, master_seed: u64) -> Self {
        Self::with_source(GameSource::Curriculum(Scheduler::new(spec)), master_seed)
    }

    fn with_source(source: GameSource, master_seed: u64) -> Self {
        EnvInstance {
            source,
            master_seed,
            episodes_started: 0,
            episode: None,
            render_mode: RenderMode::Headless,
        }
    }

    pub fn set_render_mode(&mut self, mode: RenderMode) {
        self.render_mode = mode;
    }

    pub fn render_mode(&self) -> RenderMode {
        self.render_mode
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Episodes started so far; also the index of the next one.
    pub fn episodes_started(&self) -> u64 {
        self.episodes_started
    }

    pub fn source(&self) -> &GameSource {
        &self.source
    }

    /// Starts a new episode and returns its first observation.
    ///
    /// Without `seed` the episode seed comes from the master seed and the
    /// episode index.
    pub fn reset(&mut self, seed: Option<u64>) -> Result<Frame, EnvError> {
        let index = self.episodes_started;
        let seed = seed.unwrap_or_else(|| episode_seed(self.master_seed, index));
        // An episode abandoned mid-way still used up its steps.
        if let Some(ep) = self.episode.as_mut() {
            report_steps(&mut self.source, ep)?;
        }
        let (cfg, world_seed, stage): (ConcreteConfig, u64, Option<StageInfo>) = match &mut self.source {
            GameSource::Single(game) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let cfg = sample(game, &mut rng);
                (cfg, rng.random(), None)
            }
            GameSource::Curriculum(s) => match s.next_config() {
                Ok((cfg, info)) => (cfg, seed, Some(info)),
                Err(CurriculumError::Finished) => return Err(EnvError::EndOfCurriculum),
                Err(e) => return Err(EnvError::Curriculum(e)),
            },
        };
        self.episodes_started += 1;
        let world = init_world(cfg, world_seed);
        let frame = observe(&world)?;
        self.episode = Some(Episode {
            seed,
            world,
            stage,
            reported: false,
        });
        Ok(frame)
    }

    pub fn step(&mut self, a: Action) -> Result<StepResult, EnvError> {
        let ep = self.episode.as_mut().ok_or(EnvError::StepBeforeReset)?;
        if !ep.world.is_running() {
            return Err(EnvError::StepAfterDone);
        }
        let out = step_world(&mut ep.world, a)?;
        if out.terminal {
            report_steps(&mut self.source, ep)?;
        }
        let frame = observe(&ep.world)?;
        Ok(StepResult {
            frame,
            reward: out.reward,
            done: out.terminal,
            info: StepInfo {
                score: out.score,
                step_count: out.step_count,
                events: out.events,
                status: out.status,
            },
        })
    }

    /// Observation of the current state.
    pub fn render(&self) -> Result<Frame, EnvError> {
        let ep = self.episode.as_ref().ok_or(EnvError::StepBeforeReset)?;
        Ok(observe(&ep.world)?)
    }

    pub fn world(&self) -> Option<&WorldState> {
        self.episode.as_ref().map(|e| &e.world)
    }

    pub fn episode_seed(&self) -> Option<u64> {
        self.episode.as_ref().map(|e| e.seed)
    }

    pub fn stage_info(&self) -> Option<&StageInfo> {
        self.episode.as_ref().and_then(|e| e.stage.as_ref())
    }

    pub fn config(&self) -> Option<&ConcreteConfig> {
        self.world().map(|w| &*w.cfg)
    }
}

fn report_steps(source: &mut GameSource, ep: &mut Episode) -> Result<(), EnvError> {
    if let GameSource::Curriculum(s) = source {
        if !ep.reported && s.spec().unit == Unit::Steps {
            s.notify_steps(ep.world.step_count as u64).map_err(EnvError::Curriculum)?;
        }
    }
    ep.reported = true;
    Ok(())
}
