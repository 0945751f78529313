//! Episode records and the line-delimited `.ndrec` format.
//!
//! Each episode is written as a header line, one line per step and an
//! `episode_end` line, every line a JSON object with a `type` field.

use std::io::{self, Write};

use serde::Serialize;

use crate::sim::{Action, ScoreEvent, Status};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub action: u8,
    pub reward: i32,
    pub events: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeRecord {
    pub game: String,
    pub episode: u64,
    pub seed: u64,
    pub config_digest: String,
    pub steps: Vec<StepRecord>,
    pub final_score: i32,
    pub status: Status,
}

impl EpisodeRecord {
    pub fn new(game: impl Into<String>, episode: u64, seed: u64, config_digest: String) -> Self {
        Self {
            game: game.into(),
            episode,
            seed,
            config_digest,
            steps: Vec::new(),
            final_score: 0,
            status: Status::Running,
        }
    }

    pub fn push(&mut self, action: Action, reward: i32, events: &[ScoreEvent]) {
        let action = match action {
            Action::Discrete(i) => i,
            // Continuous actions are recorded by their fire flag only.
            Action::Continuous { fire, .. } => u8::from(fire >= crate::sim::action::FIRE_THRESHOLD) * 5,
        };
        self.steps.push(StepRecord {
            action,
            reward,
            events: events.iter().map(|e| e.kind.name()).collect(),
        });
    }

    pub fn finish(&mut self, final_score: i32, status: Status) {
        self.final_score = final_score;
        self.status = status;
    }

    pub fn length(&self) -> usize {
        self.steps.len()
    }

    pub fn reward_sum(&self) -> i32 {
        self.steps.iter().map(|s| s.reward).sum()
    }
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum Line<'a> {
    Header {
        game: &'a str,
        episode: u64,
        seed: u64,
        config_digest: &'a str,
    },
    Step {
        episode: u64,
        step: usize,
        action: u8,
        reward: i32,
        events: &'a [&'static str],
    },
    EpisodeEnd {
        episode: u64,
        score: i32,
        length: usize,
        status: &'a str,
    },
}

fn line<W: Write>(out: &mut W, l: &Line) -> io::Result<()> {
    serde_json::to_writer(&mut *out, l)?;
    out.write_all(b"\n")
}

pub fn write_ndrec<W: Write>(out: &mut W, rec: &EpisodeRecord) -> io::Result<()> {
    line(
        out,
        &Line::Header {
            game: &rec.game,
            episode: rec.episode,
            seed: rec.seed,
            config_digest: &rec.config_digest,
        },
    )?;
    for (i, s) in rec.steps.iter().enumerate() {
        line(
            out,
            &Line::Step {
                episode: rec.episode,
                step: i,
                action: s.action,
                reward: s.reward,
                events: &s.events,
            },
        )?;
    }
    line(
        out,
        &Line::EpisodeEnd {
            episode: rec.episode,
            score: rec.final_score,
            length: rec.steps.len(),
            status: rec.status.name(),
        },
    )
}
