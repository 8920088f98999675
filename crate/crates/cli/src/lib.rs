//! IO, statistics, random test instances, invariant suites, and the
//! experiment protocols behind the `submax` binary. Everything here is
//! std-side plumbing around the core library.

pub mod experiment;
pub mod formats;
pub mod randinst;
pub mod stats;
pub mod verify;
