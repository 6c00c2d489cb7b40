//! Deterministic replay of scripted reaction sequences.
//!
//! A trace script names a starting assembly and an ordered list of
//! reactions, each with the exact integer strength it must exhibit: the
//! boundary sum for a combination, the cut strength for a break. Replay
//! executes the steps in order and fails loudly on the first divergence.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::assembly::{Assembly, PositionedAssembly};
use crate::combine::combinations;
use crate::cuts::find_breaks;
use crate::system::{SystemConfig, SystemError};

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("trace {trace:?} step {step}: {reason}")]
    Divergence {
        trace: String,
        step: usize,
        reason: String,
    },
    #[error("trace {trace:?}: unknown assembly {name:?}")]
    UnknownAssembly { trace: String, name: String },
    #[error(transparent)]
    System(#[from] SystemError),
}

/// One scripted reaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// Attach one copy of the named supply assembly; the deterministic
    /// placement must exhibit exactly this boundary strength.
    Combine { gadget: String, expected: i64 },
    /// Break off a piece along a cut of exactly this strength. The side
    /// with more tiles continues as the main assembly.
    Break { expected: i64 },
}

impl TraceStep {
    pub fn expected(&self) -> i64 {
        match self {
            TraceStep::Combine { expected, .. } => *expected,
            TraceStep::Break { expected } => *expected,
        }
    }
}

/// A named reaction script against a starting assembly from the supply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceScript {
    pub name: String,
    /// Name of the supply assembly the script starts from.
    pub initial: String,
    pub steps: Vec<TraceStep>,
}

/// One executed reaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReactionKind {
    Combine,
    Break,
}

/// Log entry for one executed reaction. Strength is the boundary sum for
/// combinations and the cut strength for breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionEvent {
    pub kind: ReactionKind,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub strength: i64,
    pub main_size: usize,
    pub detached_size: Option<usize>,
}

impl fmt::Display for ReactionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ReactionKind::Combine => "combine",
            ReactionKind::Break => "break",
        };
        write!(
            f,
            "{kind} in={} out={} strength={} main={}",
            self.inputs.join("+"),
            self.outputs.join("+"),
            self.strength,
            self.main_size,
        )?;
        if let Some(d) = self.detached_size {
            write!(f, " detached={d}")?;
        }
        Ok(())
    }
}

/// Outcome of a full replay: the event log and the final main assembly.
#[derive(Clone, Debug)]
pub struct ReplayOutcome {
    pub events: Vec<ReactionEvent>,
    pub final_assembly: Assembly,
    /// Detached pieces, in break order.
    pub detached: Vec<Assembly>,
}

/// Replays a script against a system. Every step must apply with exactly
/// the scripted strength; otherwise the replay diverges with the step
/// index and reason.
pub fn replay(script: &TraceScript, cfg: &SystemConfig) -> Result<ReplayOutcome, ReplayError> {
    let initial = cfg
        .gadget(&script.initial)
        .ok_or_else(|| ReplayError::UnknownAssembly {
            trace: script.name.clone(),
            name: script.initial.clone(),
        })?;
    let mut main: PositionedAssembly = initial.positioned();
    let mut events = Vec::new();
    let mut detached = Vec::new();
    let mut step_id = 0usize;

    for (i, step) in script.steps.iter().enumerate() {
        match step {
            TraceStep::Combine { gadget, expected } => {
                let body = cfg
                    .gadget(gadget)
                    .ok_or_else(|| ReplayError::UnknownAssembly {
                        trace: script.name.clone(),
                        name: gadget.clone(),
                    })?;
                let combos = combinations(&main, &body.positioned(), &cfg.strengths, cfg.tau)
                    .map_err(SystemError::from)?;
                let mut matching: Vec<_> = combos
                    .iter()
                    .filter(|c| c.boundary_strength == *expected)
                    .collect();
                matching.sort_by_key(|c| c.offset);
                let Some(chosen) = matching.first() else {
                    let seen: Vec<i64> = combos.iter().map(|c| c.boundary_strength).collect();
                    return Err(ReplayError::Divergence {
                        trace: script.name.clone(),
                        step: i,
                        reason: format!(
                            "no placement of {gadget:?} with boundary {expected} (placements seen: {seen:?})"
                        ),
                    });
                };
                main = main
                    .union(&body.positioned().translate(chosen.offset))
                    .map_err(SystemError::from)?;
                events.push(ReactionEvent {
                    kind: ReactionKind::Combine,
                    inputs: vec![format!("main{step_id}"), gadget.clone()],
                    outputs: vec![format!("main{}", step_id + 1)],
                    strength: *expected,
                    main_size: main.len(),
                    detached_size: None,
                });
            }
            TraceStep::Break { expected } => {
                let breaks = find_breaks(&main, &cfg.strengths, cfg.tau, &cfg.bounds)
                    .map_err(SystemError::from)?;
                let mut matching: Vec<_> =
                    breaks.iter().filter(|(_, _, s)| s == expected).collect();
                matching.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
                let Some((p1, p2, s)) = matching.first() else {
                    let seen: BTreeSet<i64> = breaks.iter().map(|(_, _, s)| *s).collect();
                    return Err(ReplayError::Divergence {
                        trace: script.name.clone(),
                        step: i,
                        reason: format!(
                            "no cut of strength {expected} below tau (cuts seen: {seen:?})"
                        ),
                    });
                };
                let (keep, gone) = if p1.len() >= p2.len() {
                    (p1, p2)
                } else {
                    (p2, p1)
                };
                main = keep.positioned();
                detached.push((*gone).clone());
                events.push(ReactionEvent {
                    kind: ReactionKind::Break,
                    inputs: vec![format!("main{step_id}")],
                    outputs: vec![
                        format!("main{}", step_id + 1),
                        format!("garbage{}", detached.len()),
                    ],
                    strength: *s,
                    main_size: main.len(),
                    detached_size: Some(gone.len()),
                });
            }
        }
        step_id += 1;
    }

    Ok(ReplayOutcome {
        events,
        final_assembly: Assembly::canonicalize(&main).map_err(SystemError::from)?,
        detached,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::fig1_system_with_names;

    #[test]
    fn empty_script_yields_empty_log() {
        let (cfg, _) = fig1_system_with_names();
        let script = TraceScript {
            name: "noop".into(),
            initial: "fig1-tri".into(),
            steps: vec![],
        };
        let out = replay(&script, &cfg).unwrap();
        assert!(out.events.is_empty());
        assert_eq!(out.final_assembly.len(), 3);
    }

    #[test]
    fn fig1_script_replays_attach_then_break() {
        let (cfg, script) = fig1_system_with_names();
        let out = replay(&script, &cfg).unwrap();
        assert_eq!(out.events.len(), 2);
        assert_eq!(out.events[0].strength, 1);
        assert_eq!(out.events[1].strength, 0);
        assert_eq!(out.final_assembly.len(), 3);
        assert_eq!(out.detached.len(), 1);
        assert_eq!(out.detached[0].len(), 1);
    }

    #[test]
    fn wrong_expected_strength_diverges() {
        let (cfg, mut script) = fig1_system_with_names();
        script.steps[0] = TraceStep::Combine {
            gadget: "fig1-single".into(),
            expected: 5,
        };
        let err = replay(&script, &cfg).unwrap_err();
        assert!(matches!(err, ReplayError::Divergence { step: 0, .. }));
    }
}
