/*
 * SPDX-License-Identifier: Apache-2.0
 */

//! File formats, reports and the command-line front-end for
//! [`spocode_core`].

pub mod error;
pub mod format;
pub mod report;
pub mod run;
pub mod table;

pub use error::{ParseError, ToolError, ToolResult};
pub use format::{parse_document, Document, System};
pub use report::Report;
pub use run::{execute, run, run_document, Command, Format, Request};
pub use table::{parse_table, serialize_table};
