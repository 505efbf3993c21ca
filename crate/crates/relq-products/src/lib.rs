//! Relational products and the reasoning procedures built on them.
//!
//! [`triangle`] holds the mean-implication products between subjects and
//! criteria plus the checklist measures, [`diagnosis`] the set-based
//! abductive diagnosis, [`control`] rule-based fuzzy control on
//! discretized universes.

pub mod control;
pub mod diagnosis;
pub mod triangle;

use relq_grade::GradeError;
use relq_relation::RelationError;

pub use control::{centroid, mamdani_control, possibility, ControlMethod, Rule};
pub use diagnosis::{
    diagnose, diagnose_joint, explain_at_least_k, joint_sets, Coverage, DiagnoseOptions, DiagnosisKnowledge,
    DiagnosisReport, JointCandidate, JointEntry, JointReport, Relevance,
};
pub use triangle::{
    alpha_report, checklist_product, classical_support, contingency, round_to, triangle_product_criteria,
    triangle_product_subjects, ContingencyTable, ObservationMatrix,
};

#[derive(Debug, thiserror::Error)]
pub enum ProductError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("empty control: the output membership is zero everywhere")]
    EmptyControl,
    #[error(transparent)]
    Grade(#[from] GradeError),
    #[error(transparent)]
    Relation(#[from] RelationError),
}
