//! Corpus generation, oracle verification, timing and diagrams for
//! `convex-locate`. The `convex-locate` binary is a thin CLI over these modules.

use std::path::PathBuf;

pub mod bench;
pub mod corpus;
pub mod queries;
pub mod svg;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("corpus: {0}")]
    Corpus(String),

    #[error("{spec}: no convex sample after {attempts} attempts")]
    GenerationFailed { spec: String, attempts: usize },

    #[error(transparent)]
    Geometry(#[from] convex_locate::GeometryError),

    #[error("mismatch: {0}")]
    Mismatch(Box<verify::Mismatch>),

    #[error("cannot write {}: {source}", path.display())]
    FileWrite { path: PathBuf, source: std::io::Error },
}
