use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("corpus error: {0}")]
    Corpus(String),

    #[error("graph error: {0}")]
    Graph(topicgran_core::GraphError),

    #[error("baseline error: {0}")]
    Baseline(topicgran_core::baseline::BaselineError),

    #[error("clustering error: {0}")]
    Cluster(topicgran_core::cluster::ClusterError),

    #[error("comparison error: {0}")]
    Compare(topicgran_core::compare::CompareError),

    #[error("analytics error: {0}")]
    Analytics(topicgran_core::analytics::AnalyticsError),

    #[error("sweep error: {0}")]
    Sweep(String),

    #[error("synthetic corpus error: {0}")]
    Synthgen(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

impl From<topicgran_core::GraphError> for Error {
    fn from(e: topicgran_core::GraphError) -> Error {
        Error::Graph(e)
    }
}

impl From<topicgran_core::baseline::BaselineError> for Error {
    fn from(e: topicgran_core::baseline::BaselineError) -> Error {
        Error::Baseline(e)
    }
}

impl From<topicgran_core::cluster::ClusterError> for Error {
    fn from(e: topicgran_core::cluster::ClusterError) -> Error {
        Error::Cluster(e)
    }
}

impl From<topicgran_core::compare::CompareError> for Error {
    fn from(e: topicgran_core::compare::CompareError) -> Error {
        Error::Compare(e)
    }
}

impl From<topicgran_core::analytics::AnalyticsError> for Error {
    fn from(e: topicgran_core::analytics::AnalyticsError) -> Error {
        Error::Analytics(e)
    }
}
