//! Training schedules over game definitions: fixed repetition, weighted
//! pools and interpolation stages, counted in episodes or steps.

mod envelope;
mod scheduler;
mod spec;

pub use envelope::{envelope_schedule, union_envelope};
pub use scheduler::{Scheduler, SchedulerState, StageInfo};
pub use spec::{parse_curriculum, CurriculumError, CurriculumSpec, Stage, StageKind, Unit};

use std::path::Path;

/// Reads and parses a curriculum file; relative game paths resolve against
/// the file's folder.
pub fn load_curriculum(path: &Path) -> Result<CurriculumSpec, CurriculumError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CurriculumError::Format(format!("{}: {e}", path.display())))?;
    parse_curriculum(&text, path.parent())
}
