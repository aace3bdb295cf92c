//! Finite line geometry.
//!
//! Lines and a reflexive symmetric incidence relation are the only
//! primitives. Points and planes are derived as sets of lines (brackets of
//! triads) and told apart by a seeded, verified labeling; exchanging the two
//! labels is the duality involution. The crate checks the six line axioms,
//! verifies the theorems that follow from them, and generates PG(3,q) models
//! over prime fields.

pub mod axioms;
pub mod cli;
pub mod error;
pub mod field;
pub mod format;
pub mod incidence;
pub mod labeling;
pub mod models;
pub mod report;
pub mod sigma;
pub mod theorems;

pub use error::{Error, Result};
pub use incidence::{IncidenceStructure, LineId, LineSet};
pub use labeling::{GeometryModel, Kind, SecondaryElement, Seed};
pub use report::{CheckReport, Outcome, Stats, Witness};
pub use sigma::SigmaPartition;
