//! System configuration and the producibility closure.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::assembly::{Assembly, AssemblyError, PositionedAssembly, Tile};
use crate::combine::{combinations, CombineError};
use crate::cuts::{find_breaks, is_tau_stable, CutBounds, CutError, StabilityVerdict};
use crate::glue::{GlueError, StrengthTable};

pub use crate::assembly::Shape;

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("temperature must be at least 1, got {0}")]
    BadTemperature(i64),
    #[error("glue {glue:?} on {what} does not resolve in the strength table")]
    UnresolvedGlue { glue: String, what: String },
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Combine(#[from] CombineError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

/// A two-handed system: temperature, strength function, singleton tiles,
/// and pre-built assemblies available in unbounded supply.
#[derive(Clone, Debug)]
pub struct SystemConfig {
    pub tau: i64,
    pub strengths: StrengthTable,
    pub tiles: Vec<Arc<Tile>>,
    pub gadget_supply: Vec<(String, Assembly)>,
    pub bounds: CutBounds,
}

impl SystemConfig {
    pub fn new(tau: i64, strengths: StrengthTable) -> Result<Self, SystemError> {
        if tau < 1 {
            return Err(SystemError::BadTemperature(tau));
        }
        Ok(SystemConfig {
            tau,
            strengths,
            tiles: Vec::new(),
            gadget_supply: Vec::new(),
            bounds: CutBounds::default(),
        })
    }

    pub fn add_tile(&mut self, tile: Arc<Tile>) {
        self.tiles.push(tile);
    }

    pub fn add_gadget(&mut self, name: &str, body: Assembly) {
        self.gadget_supply.push((name.to_string(), body));
    }

    pub fn gadget(&self, name: &str) -> Option<&Assembly> {
        self.gadget_supply
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
    }

    /// Every supplied assembly, singleton tiles first.
    pub fn supply(&self) -> Vec<Assembly> {
        let mut out: Vec<Assembly> = self
            .tiles
            .iter()
            .map(|t| Assembly::single(t.clone()))
            .collect();
        out.extend(self.gadget_supply.iter().map(|(_, a)| a.clone()));
        out
    }

    /// Checks that every glue on every tile and gadget resolves in the
    /// strength table.
    pub fn validate(&self) -> Result<(), SystemError> {
        for (i, t) in self.tiles.iter().enumerate() {
            for (_, g) in t.glues() {
                self.strengths
                    .strength(g)
                    .map_err(|_| SystemError::UnresolvedGlue {
                        glue: g.name().to_string(),
                        what: format!("tile #{i}"),
                    })?;
            }
        }
        for (name, a) in &self.gadget_supply {
            for (_, t) in a.iter() {
                for (_, g) in t.glues() {
                    self.strengths
                        .strength(g)
                        .map_err(|_| SystemError::UnresolvedGlue {
                            glue: g.name().to_string(),
                            what: format!("gadget {name}"),
                        })?;
                }
            }
        }
        Ok(())
    }

    pub fn stability(&self, a: &PositionedAssembly) -> Result<StabilityVerdict, CutError> {
        is_tau_stable(a, &self.strengths, self.tau, &self.bounds)
    }
}

/// Result of the bounded producibility closure.
#[derive(Clone, Debug)]
pub struct ProducibleSet {
    pub assemblies: BTreeSet<Assembly>,
    /// Whether the closure saturated within the requested bounds.
    pub saturated: bool,
}

/// Closure of the supply under combination and breaking, breadth-first by
/// reaction count with canonical-form tie-break, truncated at
/// `max_assemblies` distinct assemblies and `max_size` tiles.
pub fn producible_set(
    cfg: &SystemConfig,
    max_assemblies: usize,
    max_size: usize,
) -> Result<ProducibleSet, SystemError> {
    let mut known: BTreeSet<Assembly> = BTreeSet::new();
    let mut queue: VecDeque<Assembly> = VecDeque::new();
    let mut saturated = true;

    for a in cfg.supply() {
        if a.len() > max_size {
            saturated = false;
            continue;
        }
        if known.insert(a.clone()) {
            queue.push_back(a);
        }
    }

    while let Some(a) = queue.pop_front() {
        if known.len() >= max_assemblies {
            saturated = saturated && queue.is_empty();
            break;
        }
        let pa = a.positioned();
        // Breaks of a.
        for (p1, p2, _) in find_breaks(&pa, &cfg.strengths, cfg.tau, &cfg.bounds)? {
            for piece in [p1, p2] {
                if known.len() >= max_assemblies {
                    saturated = false;
                    break;
                }
                if known.insert(piece.clone()) {
                    queue.push_back(piece);
                }
            }
        }
        // Combinations with every known partner (including itself).
        let partners: Vec<Assembly> = known.iter().cloned().collect();
        for b in partners {
            if a.len() + b.len() > max_size {
                saturated = false;
                continue;
            }
            for combo in combinations(&pa, &b.positioned(), &cfg.strengths, cfg.tau)? {
                if known.len() >= max_assemblies {
                    saturated = false;
                    break;
                }
                if known.insert(combo.combined.clone()) {
                    queue.push_back(combo.combined);
                }
            }
        }
    }
    if !queue.is_empty() {
        saturated = false;
    }
    Ok(ProducibleSet {
        assemblies: known,
        saturated,
    })
}

/// Terminal check relative to a witness set: stable and not combinable
/// with any witness. The verdict is only as strong as the witness set.
pub fn is_terminal(
    a: &Assembly,
    cfg: &SystemConfig,
    witnesses: &BTreeSet<Assembly>,
) -> Result<bool, SystemError> {
    let pa = a.positioned();
    let verdict = cfg.stability(&pa)?;
    if !verdict.stable {
        return Ok(false);
    }
    for w in witnesses {
        if !combinations(&pa, &w.positioned(), &cfg.strengths, cfg.tau)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the bounded unique-shape check.
#[derive(Clone, Debug)]
pub enum UniqueShapeReport {
    /// Every producible above the garbage bound reaches a terminal
    /// assembly of the target shape.
    Pass {
        producibles: usize,
        terminals: usize,
    },
    /// Some assembly above the bound cannot reach a target-shaped
    /// terminal assembly.
    Fail { witness: Assembly },
    /// The closure did not saturate within the bounds; no verdict.
    Inconclusive { explored: usize },
}

/// Bounded check of unique shape assembly: saturate the producible set,
/// then verify every assembly larger than `garbage_bound` can grow into a
/// terminal assembly of shape `target`.
pub fn check_unique_shape(
    cfg: &SystemConfig,
    target: &Shape,
    garbage_bound: usize,
    max_assemblies: usize,
    max_size: usize,
) -> Result<UniqueShapeReport, SystemError> {
    let prod = producible_set(cfg, max_assemblies, max_size)?;
    if !prod.saturated {
        return Ok(UniqueShapeReport::Inconclusive {
            explored: prod.assemblies.len(),
        });
    }
    let all = &prod.assemblies;

    // Terminal assemblies of the target shape.
    let mut good_terminals: BTreeSet<Assembly> = BTreeSet::new();
    for a in all {
        if a.shape() == *target && is_terminal(a, cfg, all)? {
            good_terminals.insert(a.clone());
        }
    }

    // Forward reachability toward the good terminals over the reaction
    // relation restricted to producibles.
    let indexed: Vec<Assembly> = all.iter().cloned().collect();
    let index: BTreeMap<&Assembly, usize> = indexed.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut reaches: Vec<bool> = indexed.iter().map(|a| good_terminals.contains(a)).collect();

    // Successor map: combinations with any producible, plus break pieces.
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); indexed.len()];
    for (i, a) in indexed.iter().enumerate() {
        let pa = a.positioned();
        for (p1, p2, _) in find_breaks(&pa, &cfg.strengths, cfg.tau, &cfg.bounds)? {
            for piece in [p1, p2] {
                if let Some(&j) = index.get(&piece) {
                    succs[i].push(j);
                }
            }
        }
        for b in &indexed {
            if a.len() + b.len() > max_size {
                continue;
            }
            for combo in combinations(&pa, &b.positioned(), &cfg.strengths, cfg.tau)? {
                if let Some(&j) = index.get(&combo.combined) {
                    succs[i].push(j);
                }
            }
        }
    }
    // Fixpoint: propagate reachability backwards.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..indexed.len() {
            if !reaches[i] && succs[i].iter().any(|&j| reaches[j]) {
                reaches[i] = true;
                changed = true;
            }
        }
    }
    for (i, a) in indexed.iter().enumerate() {
        if a.len() > garbage_bound && !reaches[i] {
            return Ok(UniqueShapeReport::Fail { witness: a.clone() });
        }
    }
    Ok(UniqueShapeReport::Pass {
        producibles: indexed.len(),
        terminals: good_terminals.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::fig1_system;

    #[test]
    fn fig1_producibles_contain_the_figure_assemblies() {
        let (cfg, tri, square, pieces) = fig1_system();
        let prod = producible_set(&cfg, 64, 8).unwrap();
        assert!(prod.saturated);
        assert!(prod.assemblies.contains(&tri));
        assert!(prod.assemblies.contains(&square));
        assert!(prod.assemblies.contains(&pieces.0));
        assert!(prod.assemblies.contains(&pieces.1));
    }

    #[test]
    fn fig1_square_is_not_terminal() {
        let (cfg, _, square, _) = fig1_system();
        let prod = producible_set(&cfg, 64, 8).unwrap();
        assert!(!is_terminal(&square, &cfg, &prod.assemblies).unwrap());
    }

    #[test]
    fn fig1_fails_unique_square_shape() {
        let (cfg, _, square, _) = fig1_system();
        let target = square.shape();
        let report = check_unique_shape(&cfg, &target, 1, 64, 8).unwrap();
        assert!(matches!(report, UniqueShapeReport::Fail { .. }));
    }

    #[test]
    fn single_loner_tile_saturates() {
        use crate::assembly::Tile;
        let cfg = {
            let mut c = SystemConfig::new(1, StrengthTable::new()).unwrap();
            c.add_tile(Tile::new(None, None, None, None));
            c
        };
        let prod = producible_set(&cfg, 10, 10).unwrap();
        assert!(prod.saturated);
        assert_eq!(prod.assemblies.len(), 1);
    }
}
