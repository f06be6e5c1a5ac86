use serde::Serialize;

/// Failures reported by the front end. All of them exit with status 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// The problem document (or a flag folded into it) is malformed.
    Schema {
        pointer: String,
        message: String,
    },
    Core(twind_core::Error),
    /// `branch` was given a torus element that is not W_G-invariant.
    NotInvariant,
    Io(String),
}

impl From<twind_core::Error> for CliError {
    fn from(e: twind_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Serialize)]
struct Record<'a> {
    code: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pointer: Option<&'a str>,
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Schema { .. } => "schema_violation",
            CliError::Core(e) => e.code(),
            CliError::NotInvariant => "not_wg_invariant",
            CliError::Io(_) => "io",
        }
    }

    pub fn pointer(&self) -> Option<&str> {
        match self {
            CliError::Schema { pointer, .. } => Some(pointer),
            _ => None,
        }
    }

    /// The machine-readable record `{"error": {code, message, pointer?}}`.
    pub fn to_value(&self) -> serde_json::Value {
        let record = Record {
            code: self.code(),
            message: self.to_string(),
            pointer: self.pointer(),
        };
        serde_json::json!({ "error": record })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Schema { pointer, message } if pointer.is_empty() => write!(f, "{message}"),
            CliError::Schema { pointer, message } => write!(f, "{pointer}: {message}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::NotInvariant => write!(f, "input is not W_G-invariant"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}
