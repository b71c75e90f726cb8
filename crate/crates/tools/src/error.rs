/*
 * SPDX-License-Identifier: Apache-2.0
 */

use std::fmt;

use spocode_core::Error as CoreError;

/// A problem in a presentation file, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl ToolError {
    /// Process exit status: 2 usage, 3 parse, 4 resource cap, 5 io.
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Usage(_) => 2,
            ToolError::Parse(_) => 3,
            ToolError::Core(CoreError::ResourceCap { .. }) => 4,
            ToolError::Core(_) => 2,
            ToolError::Io(_) => 5,
        }
    }
}

pub type ToolResult<T> = Result<T, ToolError>;
