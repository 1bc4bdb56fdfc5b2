//! Spec documents, the builtin example corpus and analysis reports.

pub mod builtins;
pub mod parse;
pub mod report;

pub use builtins::{builtin, builtin_source, UnknownBuiltin, BUILTIN_NAMES};
pub use parse::{is_valid_name, parse_spec, ParseError};
pub use report::{analyze, render_json, render_text, AnalyzeError, AnalyzeOptions, Report};
