use std::sync::Arc;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::spec::{CurriculumError, CurriculumSpec, StageKind, Unit};
use crate::config::{interpolate, sample, ConcreteConfig};

/// Progress through a curriculum.
#[derive(Debug, Clone, PartialEq)]
pub struct SchedulerState {
    pub stage_index: usize,
    pub units_consumed: u64,
    pub finished: bool,
    pub rng: ChaCha8Rng,
}

/// What produced a config.
#[derive(Debug, Clone, PartialEq)]
pub struct StageInfo {
    pub stage_index: usize,
    pub kind: &'static str,
    /// Units consumed in the stage before this config.
    pub units_consumed: u64,
    /// Interpolation parameter, for interpolation stages.
    pub t: Option<f64>,
    /// Chosen game, for pool stages.
    pub pool_choice: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Scheduler {
    spec: Arc<CurriculumSpec>,
    state: SchedulerState,
}

impl Scheduler {
    /// Starts at the first stage with the curriculum's own seed.
    pub fn new(spec: impl Into<Arc<CurriculumSpec>>) -> Self {
        let spec = spec.into();
        let seed = spec.seed;
        Self::with_seed(spec, seed)
    }

    pub fn with_seed(spec: impl Into<Arc<CurriculumSpec>>, seed: u64) -> Self {
        Scheduler {
            spec: spec.into(),
            state: SchedulerState {
                stage_index: 0,
                units_consumed: 0,
                finished: false,
                rng: ChaCha8Rng::seed_from_u64(seed),
            },
        }
    }

    pub fn spec(&self) -> &CurriculumSpec {
        &self.spec
    }

    pub fn state(&self) -> &SchedulerState {
        &self.state
    }

    pub fn is_finished(&self) -> bool {
        self.state.finished
    }

    fn advance_stage(&mut self) {
        self.state.stage_index += 1;
        self.state.units_consumed = 0;
        if self.state.stage_index >= self.spec.stages.len() {
            self.state.finished = true;
        }
    }

    /// Samples the config for the next episode.
    ///
    /// In episode units each call consumes one unit. In step units the
    /// call first crosses any stage boundary that reported steps have
    /// reached; steps beyond a stage's duration are dropped.
    pub fn next_config(&mut self) -> Result<(ConcreteConfig, StageInfo), CurriculumError> {
        if self.state.finished {
            return Err(CurriculumError::Finished);
        }
        if self.spec.unit == Unit::Steps {
            while !self.state.finished && self.state.units_consumed >= self.spec.stages[self.state.stage_index].duration {
                self.advance_stage();
            }
            if self.state.finished {
                return Err(CurriculumError::Finished);
            }
        }
        let spec = self.spec.clone();
        let stage = &spec.stages[self.state.stage_index];
        let consumed = self.state.units_consumed;
        let mut info = StageInfo {
            stage_index: self.state.stage_index,
            kind: stage.kind_name(),
            units_consumed: consumed,
            t: None,
            pool_choice: None,
        };
        let rng = &mut self.state.rng;
        let cfg = match &stage.kind {
            StageKind::Fixed(g) => sample(g, rng),
            StageKind::Pool { games, weights } => {
                let i = WeightedIndex::new(weights).expect("weights checked at parse time").sample(rng);
                info.pool_choice = Some(i);
                sample(&games[i], rng)
            }
            StageKind::Interpolate { from, to } => {
                let t = if stage.duration <= 1 {
                    0.0
                } else {
                    consumed.min(stage.duration - 1) as f64 / (stage.duration - 1) as f64
                };
                info.t = Some(t);
                let blended = interpolate(from, to, t).expect("endpoints checked at parse time");
                sample(&blended, rng)
            }
        };
        if self.spec.unit == Unit::Episodes {
            self.state.units_consumed += 1;
            if self.state.units_consumed >= stage.duration {
                self.advance_stage();
            }
        }
        Ok((cfg, info))
    }

    /// Reports steps played. Boundaries are only crossed by the next
    /// [`Scheduler::next_config`] call, never mid-episode.
    pub fn notify_steps(&mut self, n: u64) -> Result<(), CurriculumError> {
        if self.spec.unit != Unit::Steps {
            return Err(CurriculumError::NotStepBased);
        }
        if !self.state.finished {
            self.state.units_consumed = self.state.units_consumed.saturating_add(n);
        }
        Ok(())
    }
}
