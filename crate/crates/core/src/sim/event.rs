use std::fmt;

/// Score bounds for every game.
pub const MAX_SCORE: i32 = 100;
pub const MIN_SCORE: i32 = -100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    PlayerPassedOppositeSide,
    PlayerHitCollectable,
    PlayerHitHazard,
    BallPassedOpponentSide,
    BallPassedPlayerSide,
    BallHitCollectable,
    BulletHitCollectable,
    BulletHitOpponent,
    BulletHitPlayer,
    BlockFellPastPlayer,
    /// The required number of ball returns was reached in a survive game.
    ReturnQuotaReached,
    Timeout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventEffect {
    Win,
    Loss,
    /// Adds the block value and leaves the episode running.
    Collect,
    /// Ends the episode without changing the score.
    End,
}

impl EventKind {
    pub const ALL: [EventKind; 12] = [
        EventKind::PlayerPassedOppositeSide,
        EventKind::PlayerHitCollectable,
        EventKind::PlayerHitHazard,
        EventKind::BallPassedOpponentSide,
        EventKind::BallPassedPlayerSide,
        EventKind::BallHitCollectable,
        EventKind::BulletHitCollectable,
        EventKind::BulletHitOpponent,
        EventKind::BulletHitPlayer,
        EventKind::BlockFellPastPlayer,
        EventKind::ReturnQuotaReached,
        EventKind::Timeout,
    ];

    pub fn effect(self) -> EventEffect {
        use EventKind::*;
        match self {
            PlayerPassedOppositeSide | BallPassedOpponentSide | BulletHitOpponent | ReturnQuotaReached => {
                EventEffect::Win
            }
            PlayerHitHazard | BallPassedPlayerSide | BulletHitPlayer | BlockFellPastPlayer => EventEffect::Loss,
            PlayerHitCollectable | BallHitCollectable | BulletHitCollectable => EventEffect::Collect,
            Timeout => EventEffect::End,
        }
    }

    /// The delta of kinds that do not carry a block value.
    pub fn fixed_delta(self) -> Option<i32> {
        match self.effect() {
            EventEffect::Win => Some(MAX_SCORE),
            EventEffect::Loss => Some(MIN_SCORE),
            EventEffect::End => Some(0),
            EventEffect::Collect => None,
        }
    }

    pub fn is_terminal(self) -> bool {
        self.effect() != EventEffect::Collect
    }

    pub fn name(self) -> &'static str {
        use EventKind::*;
        match self {
            PlayerPassedOppositeSide => "player_passed_opposite_side",
            PlayerHitCollectable => "player_hit_collectable",
            PlayerHitHazard => "player_hit_hazard",
            BallPassedOpponentSide => "ball_passed_opponent_side",
            BallPassedPlayerSide => "ball_passed_player_side",
            BallHitCollectable => "ball_hit_collectable",
            BulletHitCollectable => "bullet_hit_collectable",
            BulletHitOpponent => "bullet_hit_opponent",
            BulletHitPlayer => "bullet_hit_player",
            BlockFellPastPlayer => "block_fell_past_player",
            ReturnQuotaReached => "return_quota_reached",
            Timeout => "timeout",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreEvent {
    pub kind: EventKind,
    pub delta: i32,
}

impl ScoreEvent {
    /// An event with a fixed delta.
    ///
    /// Panics for collect kinds, which need a block value.
    pub fn fixed(kind: EventKind) -> Self {
        let delta = kind
            .fixed_delta()
            .unwrap_or_else(|| panic!("{kind} carries a block value"));
        Self { kind, delta }
    }

    /// A collect event worth `value` points.
    pub fn collect(kind: EventKind, value: i32) -> Self {
        assert_eq!(kind.effect(), EventEffect::Collect, "{kind} has a fixed delta");
        Self { kind, delta: value }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Running,
    Won,
    Lost,
    TimedOut,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Running => "running",
            Status::Won => "won",
            Status::Lost => "lost",
            Status::TimedOut => "timed_out",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one fixed timestep.
///
/// `reward` is the change actually applied to the cumulative score, so it
/// differs from the sum of event deltas only when the score hits a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub reward: i32,
    pub events: Vec<ScoreEvent>,
    pub terminal: bool,
    pub score: i32,
    pub step_count: u32,
    pub status: Status,
}

/// Reduces one frame's events to the ones that count. When any win or loss
/// fires, only the first of them is kept and collect events are dropped.
pub fn resolve_events(events: Vec<ScoreEvent>) -> Vec<ScoreEvent> {
    match events.iter().find(|e| e.kind.is_terminal()) {
        Some(first) => vec![*first],
        None => events,
    }
}
