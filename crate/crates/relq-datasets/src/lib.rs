//! Embedded datasets and the applied procedures run on them.
//!
//! [`transport`] estimates peak hours from a partitioned passenger series,
//! [`chemical`] fits a structured flow network, [`bonded`] evaluates the
//! expert matrices of the silk-weaver study. [`registry`] addresses every
//! embedded table by name.

pub mod bonded;
pub mod chemical;
pub mod registry;
pub mod transport;

use relq_neutro::NeutroError;
use relq_relation::RelationError;
use relq_solve::SolveError;

pub use bonded::{
    bonded_labor_q, bonded_labor_r, demo_bonded_labor, expert_matrix, Direction, PUBLISHED_FORWARD, PUBLISHED_INVERSE,
};
pub use chemical::{
    chemical_mask, chemical_targets, demo_chemical_flow, demo_chemical_flow_with, ChemicalFlowReport, CHEMICAL_FLOWS,
    CHEMICAL_HIDDEN,
};
pub use registry::{dataset, hiv_checklist, hiv_observations, Dataset, Table, DATASET_NAMES};
pub use transport::{
    estimate_block_relations, pallavan, pallavan_partition, BlockEstimate, PallavanRun, PartitionedSeries, PALLAVAN_COUNTS,
    PALLAVAN_HOURS,
};

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("row {row} ({label}) of block {block} is infeasible: no product reaches {target}")]
    InfeasibleRow { block: usize, row: usize, label: String, target: f64 },
    #[error("unknown dataset {0:?}; available: {names}", names = DATASET_NAMES.join(", "))]
    Unknown(String),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Neutro(#[from] NeutroError),
}
