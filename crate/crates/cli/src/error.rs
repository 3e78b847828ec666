use std::fmt;

use nrank_core::Error;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
/// A regression check did not match.
pub const EXIT_MISMATCH: i32 = 4;

/// Failure with the exit code it maps to and the stage that raised it.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub stage: String,
    pub message: String,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError {
            code: EXIT_USAGE,
            stage: "arguments".into(),
            message,
        }
    }

    pub fn parse(stage: &str, message: String) -> Self {
        CliError {
            code: EXIT_PARSE,
            stage: stage.into(),
            message,
        }
    }

    pub fn resource(stage: &str, message: String) -> Self {
        CliError {
            code: EXIT_RESOURCE,
            stage: stage.into(),
            message,
        }
    }

    /// Map a library error raised during `stage`.
    pub fn at(stage: &str) -> impl Fn(Error) -> CliError + '_ {
        move |e| {
            let code = if e.is_resource() {
                EXIT_RESOURCE
            } else if matches!(e, Error::Parse(_)) {
                EXIT_PARSE
            } else {
                EXIT_USAGE
            };
            CliError {
                code,
                stage: stage.into(),
                message: e.to_string(),
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.message)
    }
}
