use std::fmt;
use std::path::Path;

/// A problem with user input: unreadable files, malformed JSON, invalid
/// geometry or out-of-range options. Maps to exit code 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct InputError {
    pub origin: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(origin: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { origin: origin.into(), line: None, column: None, message: message.into() }
    }

    pub fn at(mut self, line: usize, column: Option<usize>) -> Self {
        self.line = Some(line);
        self.column = column;
        self
    }

    pub fn option(message: impl Into<String>) -> Self {
        InputError::new("options", message)
    }

    pub(crate) fn io(path: &Path, err: std::io::Error) -> Self {
        InputError::new(path.display().to_string(), err.to_string())
    }

    pub(crate) fn json(origin: &str, err: serde_json::Error) -> Self {
        let line = err.line();
        let column = err.column();
        InputError::new(origin, strip_position(&err.to_string())).at(line, Some(column))
    }
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.origin)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
            if let Some(col) = self.column {
                write!(f, ":{col}")?;
            }
        }
        write!(f, ": {}", self.message)
    }
}
