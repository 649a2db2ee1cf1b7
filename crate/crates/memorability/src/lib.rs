//! File formats, configuration, the analysis pipeline and the quiz server
//! on top of `memorability-core`.

pub mod config;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod quiz;
pub mod report;
