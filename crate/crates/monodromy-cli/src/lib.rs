//! Fixture loading, the verification pipeline, and report rendering for the
//! `monodromy` binary. Everything lives in the library so integration tests
//! can drive the exact code paths the binary runs.

pub mod fixture;
pub mod pipeline;
pub mod report;
