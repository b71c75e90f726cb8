/*
 * SPDX-License-Identifier: Apache-2.0
 */

use alloc::string::String;

/// Errors raised by constructions and bounded analyses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("construction error: {0}")]
    Construction(String),
    /// A configurable budget was exhausted. Never a silent truncation.
    #[error("resource cap exceeded: more than {cap} {what}")]
    ResourceCap { what: &'static str, cap: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
