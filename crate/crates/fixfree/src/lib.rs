//! Frontend for `fixfree-core`: argument grammar, report formats, the group
//! table cache and the threaded GL stream.

pub mod args;
pub mod cache;
pub mod commands;
pub mod parallel;
pub mod presets;
pub mod report;

pub use commands::run;

/// Process exit codes.
pub mod exit {
    use fixfree_core::Error;

    pub const PASS: u8 = 0;
    /// A verification failed, or a construction/internal error.
    pub const FAIL: u8 = 1;
    /// Bad arguments or a value outside the supported domain.
    pub const USAGE: u8 = 2;
    /// A size cap was hit.
    pub const RESOURCE: u8 = 3;

    pub fn code_for(e: &anyhow::Error) -> u8 {
        match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
            Some(Error::Argument(_) | Error::Domain(_)) => USAGE,
            Some(Error::Resource(_)) => RESOURCE,
            _ => FAIL,
        }
    }
}
