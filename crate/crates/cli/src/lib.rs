//! Library side of the `sympindex` command-line tool.

pub mod document;
pub mod report;
pub mod table;

pub use document::{DocumentError, PathSpecDocument, SCHEMA_VERSION};
pub use report::IndexReport;
pub use table::OscillatorTable;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A verification suite or the oscillator table found a mismatch.
    pub const CHECK_FAILED: i32 = 1;
    /// Unreadable, malformed or invalid input.
    pub const INVALID_INPUT: i32 = 2;
    /// A numerical-integrity failure.
    pub const INTEGRITY: i32 = 3;
}
