use gorenstein_core::AlgebraError;
use serde_json::{json, Value};

/// A failed invocation, classified by exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// The job or its flags could not be read.
    #[error("{0}")]
    Input(String),
    /// A mathematical check failed.
    #[error("{message}")]
    Check { kind: String, message: String },
    /// An internal lift failed: some exactness assumption was violated.
    #[error("{0}")]
    Lift(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Check { .. } => 2,
            CliError::Lift(_) => 3,
        }
    }

    pub fn check(kind: &str, message: impl Into<String>) -> Self {
        CliError::Check { kind: kind.into(), message: message.into() }
    }

    pub fn to_json(&self, command: &str) -> Value {
        let (kind, message) = match self {
            CliError::Input(m) => ("MalformedInput".to_string(), m.clone()),
            CliError::Check { kind, message } => (kind.clone(), message.clone()),
            CliError::Lift(m) => ("LiftFailed".to_string(), m.clone()),
        };
        json!({
            "schema": "v1",
            "command": command,
            "status": "error",
            "exit_code": self.exit_code(),
            "error": { "kind": kind, "message": message },
        })
    }
}

/// The variant name of an algebra error, e.g. `MiddleMapNotSymmetric`.
pub fn kind_of(e: &AlgebraError) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_ascii_alphanumeric()).next().unwrap_or_default().to_string()
}

/// Errors raised while computing: lift failures exit with 3, the rest with 2.
impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        if e.is_lift_failure() {
            CliError::Lift(e.to_string())
        } else {
            CliError::Check { kind: kind_of(&e), message: e.to_string() }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_failures_exit_with_three() {
        let lift = CliError::from(AlgebraError::LiftFailed("no preimage".into()));
        assert_eq!(lift.exit_code(), 3);
        assert_eq!(lift.to_json("certify")["error"]["kind"], "LiftFailed");
        let check = CliError::from(AlgebraError::OddCodimRequired(2));
        assert_eq!(check.exit_code(), 2);
        assert_eq!(check.to_json("certify")["error"]["kind"], "OddCodimRequired");
        assert_eq!(CliError::Input("x".into()).exit_code(), 1);
    }
}
