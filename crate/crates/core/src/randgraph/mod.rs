//! Seeded random structures: `G(n, p)`, uniform configurations on a degree
//! sequence, and the re-sampler over configurations sharing one set of
//! RW-information.

mod config;
mod gnp;
mod rw;

use thiserror::Error;

pub use config::{
    project_multigraph, sample_configuration, sample_simple_with_degrees, Configuration, Projection, SimpleSample,
};
pub use gnp::gen_gnp;
pub use rw::{rw_extract, sample_from_rw, RwInfo, SplitDegree, VertexClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandGraphError {
    #[error("degree sum {0} is odd")]
    OddDegreeSum(u64),
    #[error("no simple configuration after {attempts} attempts")]
    Exhausted { attempts: usize },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("infeasible RW-information: {0}")]
    Infeasible(String),
}
