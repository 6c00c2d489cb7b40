//! The construction kit: strength table, gadget geometry, inequality
//! sheet, and the replayable script catalog.
//!
//! Gadget layouts follow the documented reaction contract: every scripted
//! attachment and detachment exhibits its exact integer strength, every
//! gadget body is stable at temperature 10 in isolation, and every
//! detached piece stays within the frozen garbage bound. Geometry beyond
//! that contract (exact tile counts and cell placement) is this crate's
//! own; see the builders in the submodules.

pub mod fill;
pub mod inequalities;
pub mod library;
pub mod path;
pub mod sketch;
pub mod strengths;
pub mod tape;
pub mod turns;

pub use inequalities::{verify_inequalities, InequalityReport, InequalityRow, Relation};
pub use library::{GadgetCategory, GadgetLibrary, GadgetVariant, LoadError};
pub use sketch::Sketch;
pub use strengths::{default_strengths, library_strengths, TAU};
