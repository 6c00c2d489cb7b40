//! Two-handed tile self-assembly with attractive and repulsive glues.
//!
//! The crate has three layers:
//!
//! * a reaction engine over grid assemblies: stability via bounded min-cut
//!   search with negative edge weights, two-handed combination, breaking,
//!   producibility closures, and deterministic script replay;
//! * a gadget library reproducing the construction kit of the temperature-10
//!   system — tape sections, overlay, read, walk, extension, reduction and
//!   fill assemblies — together with the strength table, the inequality
//!   sheet, and a replayable script for every documented reaction sequence;
//! * a compiler from connected polyomino shapes to complete systems that
//!   assemble the shape at scale 24, plus the audit machinery that runs the
//!   scripted pipeline and checks the terminal shape and garbage bounds.

pub mod assembly;
pub mod audit;
pub mod combine;
pub mod compiler;
pub mod gadgets;
pub mod pipeline;
pub mod cuts;
pub mod geom;
pub mod glue;
pub mod replay;
pub mod system;
pub mod verifier;

pub use assembly::{Assembly, AssemblyError, BondGraph, PositionedAssembly, Shape, Tile};
pub use combine::{combinations, combine_at, boundary_strength, Combination, CombineError};
pub use cuts::{
    enumerate_cuts, enumerate_cuts_exact, find_breaks, is_tau_stable, Cut, CutBounds, CutError,
    CutSearch, SearchMode, StabilityVerdict,
};
pub use geom::{Pos, Side};
pub use glue::{GlueError, GlueLabel, StrengthTable, INFINITE_STRENGTH};
pub use replay::{ReactionEvent, ReactionKind, ReplayError, ReplayOutcome, TraceScript, TraceStep};
pub use system::{
    check_unique_shape, is_terminal, producible_set, ProducibleSet, SystemConfig, SystemError,
    UniqueShapeReport,
};
