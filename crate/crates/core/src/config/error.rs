use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("type mismatch at {path}: expected {expected}")]
    TypeMismatch { path: String, expected: String },
    #[error("illegal value {value:?} at {path}; allowed: {allowed}")]
    IllegalEnum {
        path: String,
        value: String,
        allowed: String,
    },
    #[error("structure mismatch at {path}: {detail}")]
    StructureMismatch { path: String, detail: String },
    #[error("variant mismatch at {path}: {left} vs {right}")]
    VariantMismatch {
        path: String,
        left: String,
        right: String,
    },
    #[error("interpolation parameter {0} outside [0, 1]")]
    OutOfRange(f64),
}

impl ConfigError {
    pub(crate) fn mismatch(path: &str, expected: &str) -> Self {
        ConfigError::TypeMismatch {
            path: path.to_string(),
            expected: expected.to_string(),
        }
    }
}
