//! File formats, the remote diacritizer client, the line pipeline and the
//! `nikud` command-line tool, on top of `nikud-core`.

pub mod cli;
pub mod io;
pub mod pipeline;
pub mod remote;

pub use pipeline::{LineOutput, Pipeline, PipelineConfig, PipelineError, Session};
pub use remote::{diacritize_remote, RemoteClient, RemoteConfig, RemoteError};
