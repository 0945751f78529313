use std::fmt;

use super::{GameConfig, Goal, NormRect, Orientation, ParamKind, ParamValue, RawColor};

/// Lowest allowed normalized coordinate (block areas may start off-screen).
pub const GEOMETRY_MIN: f64 = -1.0;
/// Highest allowed normalized coordinate.
pub const GEOMETRY_MAX: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }

    /// Adds issues found elsewhere (e.g. parse warnings) and recomputes `ok`.
    pub fn merge(&mut self, issues: impl IntoIterator<Item = Issue>) {
        self.issues.extend(issues);
        self.ok = !self.issues.iter().any(|i| i.severity == Severity::Error);
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev}: {}: {}", self.path, self.message)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        write!(f, "{}", if self.ok { "ok" } else { "invalid" })
    }
}

#[derive(Default)]
struct Collector {
    issues: Vec<Issue>,
}

impl Collector {
    fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue {
            path: path.into(),
            severity: Severity::Error,
            message: message.into(),
        });
    }

    fn warning(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue {
            path: path.into(),
            severity: Severity::Warning,
            message: message.into(),
        });
    }
}

/// Checks a definition for out-of-range values and inconsistent sections.
/// Never fails; all findings are carried in the report.
pub fn validate(cfg: &GameConfig) -> ValidationReport {
    let mut c = Collector::default();

    for (path, kind, value) in cfg.params() {
        check_param(&mut c, &path, kind, value);
    }

    let el = &cfg.game_elements;
    let missing = [
        (el.ball, cfg.ball_settings.is_none(), "ball_settings", "missing ball settings"),
        (el.opponent, cfg.opponent_settings.is_none(), "opponent_settings", "missing opponent settings"),
        (el.blocks, cfg.blocks_settings.is_none(), "blocks_settings", "missing blocks settings"),
        (
            el.static_barriers,
            cfg.static_barrier_settings.is_none(),
            "static_barrier_settings",
            "missing static barrier settings",
        ),
    ];
    for (enabled, absent, path, msg) in missing {
        if enabled && absent {
            c.error(path, msg);
        }
    }

    if let Some(b) = &cfg.blocks_settings {
        check_rect(&mut c, "blocks_settings.creation_area", &b.creation_area);
        // per_row may be 0, which leaves every row empty.
        for (name, v) in [("rows", &b.rows), ("cols", &b.cols)] {
            if let ParamValue::Static(x) = v {
                if *x < 1.0 {
                    c.error(format!("blocks_settings.{name}"), "must be at least 1");
                }
            }
        }
        if let (ParamValue::Static(per_row), ParamValue::Static(cols)) = (&b.per_row, &b.cols) {
            if per_row > cols {
                c.error("blocks_settings.per_row", "per_row exceeds cols");
            }
        }
        if let ParamValue::Static(s) = b.spacing {
            if s >= 1.0 {
                c.error("blocks_settings.spacing", "spacing must be below 1");
            }
        }
    }
    if let Some(b) = &cfg.static_barrier_settings {
        for (i, r) in b.layout.iter().enumerate() {
            check_rect(&mut c, &format!("static_barrier_settings.layout[{i}]"), r);
        }
        if el.static_barriers && b.layout.is_empty() {
            c.warning("static_barrier_settings.layout", "barriers enabled but layout is empty");
        }
    }
    if let ParamValue::Static(m) = cfg.episode.max_steps {
        if m < 1.0 {
            c.error("episode.max_steps", "must be at least 1");
        }
    }

    let a = &cfg.actions;
    match cfg.episode.goal {
        Goal::ClearBlocks if !el.blocks => c.error("episode.goal", "clear_blocks requires blocks"),
        Goal::DefeatOpponent if !el.opponent => {
            c.error("episode.goal", "defeat_opponent requires an opponent")
        }
        Goal::Survive => {
            if !el.ball {
                c.error("episode.goal", "survive requires a ball");
            }
            if cfg.episode.quota == ParamValue::Static(0.0) {
                c.error("episode.quota", "survive requires a positive quota");
            }
        }
        Goal::Cross => {
            let forward = match cfg.player_settings.orientation {
                Orientation::Bottom => a.up,
                Orientation::Left => a.right,
            };
            if !forward {
                c.error("episode.goal", "cross requires movement toward the opposite side");
            }
        }
        _ => {}
    }
    if a.fire && !el.blocks && !el.opponent {
        c.warning("actions.fire", "fire enabled but nothing can be shot");
    }

    let ok = !c.issues.iter().any(|i| i.severity == Severity::Error);
    ValidationReport { ok, issues: c.issues }
}

fn check_rect(c: &mut Collector, path: &str, r: &NormRect) {
    if r.iter().any(|v| !v.is_finite()) {
        c.error(path, "non-finite coordinate");
        return;
    }
    if r[2] < 0.0 || r[3] < 0.0 {
        c.error(path, "negative extent");
    }
    let lo = r[0].min(r[1]);
    let hi = (r[0] + r[2]).max(r[1] + r[3]);
    if lo < GEOMETRY_MIN || hi > GEOMETRY_MAX {
        c.error(path, format!("geometry outside [{GEOMETRY_MIN}, {GEOMETRY_MAX}]"));
    }
}

fn color_ok(c: &RawColor) -> bool {
    c.iter().all(|v| (0..=255).contains(v))
}

fn range_for(kind: ParamKind) -> Option<(f64, f64)> {
    match kind {
        ParamKind::Size => Some((GEOMETRY_MIN, GEOMETRY_MAX)),
        ParamKind::Speed => Some((0.0, GEOMETRY_MAX)),
        ParamKind::Unit => Some((0.0, 1.0)),
        ParamKind::Integer => Some((0.0, f64::MAX)),
        ParamKind::QuarterTurn => Some((0.0, 360.0)),
        ParamKind::Real | ParamKind::Color => None,
    }
}

fn check_number(c: &mut Collector, path: &str, kind: ParamKind, v: f64, what: &str) {
    if !v.is_finite() {
        c.error(path, format!("{what} is not finite"));
        return;
    }
    if let Some((lo, hi)) = range_for(kind) {
        if v < lo || v > hi {
            c.error(path, format!("{what} {v} outside [{lo}, {hi}]"));
        }
    }
}

fn check_param(c: &mut Collector, path: &str, kind: ParamKind, value: &ParamValue) {
    if !value.fits(kind) {
        c.error(path, format!("{} value on a {kind:?} field", value.variant_name()));
        return;
    }
    match value {
        ParamValue::Static(v) => {
            check_number(c, path, kind, *v, "value");
            match kind {
                ParamKind::Size if *v <= 0.0 => c.error(path, "size must be positive"),
                ParamKind::Integer if v.fract() != 0.0 => c.error(path, "expected an integer"),
                ParamKind::QuarterTurn if ![0.0, 90.0, 180.0, 270.0].contains(v) => {
                    c.error(path, "rotation must be one of 0, 90, 180, 270")
                }
                _ => {}
            }
        }
        ParamValue::StaticColor(col) => {
            if !color_ok(col) {
                c.error(path, "color channel outside [0, 255]");
            }
        }
        ParamValue::Gaussian { mean, std } => {
            check_number(c, path, kind, *mean, "mean");
            if !std.is_finite() || *std < 0.0 {
                c.error(path, "gaussian std must be a finite value >= 0");
            }
        }
        ParamValue::Uniform { low, high } => {
            check_number(c, path, kind, *low, "low");
            check_number(c, path, kind, *high, "high");
            if low > high {
                c.error(path, format!("uniform bounds inverted: low {low} > high {high}"));
            }
        }
        ParamValue::ColorUniform { low, high } => {
            if !color_ok(low) || !color_ok(high) {
                c.error(path, "color channel outside [0, 255]");
            }
            if (0..3).any(|i| low[i] > high[i]) {
                c.error(path, "color_uniform bounds inverted");
            }
        }
        ParamValue::ColorSet(choices) => {
            if choices.is_empty() {
                c.error(path, "color_set has no choices");
            }
            if !choices.iter().all(color_ok) {
                c.error(path, "color channel outside [0, 255]");
            }
        }
    }
}
