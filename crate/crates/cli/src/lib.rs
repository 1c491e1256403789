//! IO, file formats and orchestration around `topicgran-core`: TSV
//! corpus ingestion, the synthetic-corpus generator, pipeline
//! subcommands and their report files.

pub mod config;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod pipeline;
pub mod synthgen;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
