//! The gadget library: every pre-built assembly of the construction,
//! with its category, variant, and authored placement frame.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::assembly::{Assembly, PositionedAssembly};
use crate::cuts::{is_tau_stable, CutBounds, CutError};
use crate::gadgets::sketch::Sketch;
use crate::gadgets::strengths::{library_strengths, TAU};
use crate::gadgets::tape::{self, Instruction};
use crate::gadgets::{fill, path, turns};
use crate::geom::Side;
use crate::glue::StrengthTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GadgetCategory {
    OverlayInitiator,
    OverlayHelper,
    Read,
    ReadHelper,
    InfoBlock,
    Walker,
    WalkerHelper,
    Extender,
    ExtenderHelper,
    Reducer,
    ReducerHelper,
    FillInitiator,
    FillBlock,
    TapeSection,
    Buffer,
    PathBlock,
}

impl GadgetCategory {
    pub fn name(self) -> &'static str {
        match self {
            GadgetCategory::OverlayInitiator => "overlay_initiator",
            GadgetCategory::OverlayHelper => "overlay_helper",
            GadgetCategory::Read => "read",
            GadgetCategory::ReadHelper => "read_helper",
            GadgetCategory::InfoBlock => "info_block",
            GadgetCategory::Walker => "walker",
            GadgetCategory::WalkerHelper => "walker_helper",
            GadgetCategory::Extender => "extender",
            GadgetCategory::ExtenderHelper => "extender_helper",
            GadgetCategory::Reducer => "reducer",
            GadgetCategory::ReducerHelper => "reducer_helper",
            GadgetCategory::FillInitiator => "fill_initiator",
            GadgetCategory::FillBlock => "fill_block",
            GadgetCategory::TapeSection => "tape_section",
            GadgetCategory::Buffer => "buffer",
            GadgetCategory::PathBlock => "path_block",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        use GadgetCategory::*;
        Some(match s {
            "overlay_initiator" => OverlayInitiator,
            "overlay_helper" => OverlayHelper,
            "read" => Read,
            "read_helper" => ReadHelper,
            "info_block" => InfoBlock,
            "walker" => Walker,
            "walker_helper" => WalkerHelper,
            "extender" => Extender,
            "extender_helper" => ExtenderHelper,
            "reducer" => Reducer,
            "reducer_helper" => ReducerHelper,
            "fill_initiator" => FillInitiator,
            "fill_block" => FillBlock,
            "tape_section" => TapeSection,
            "buffer" => Buffer,
            "path_block" => PathBlock,
            _ => return None,
        })
    }
}

/// Variant tag: the instruction an instruction-specific gadget serves,
/// plus a special-case index for the appendix variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct GadgetVariant {
    pub instruction: Option<Instruction>,
    pub special: u8,
}

impl fmt::Display for GadgetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.instruction {
            Some(i) => write!(f, "{}{}", i.code(), self.special),
            None => write!(f, "-{}", self.special),
        }
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("gadget {name:?} is not stable at temperature {tau}: cut of strength {cut}")]
    UnstableGadget { name: String, tau: i64, cut: i64 },
    #[error("gadget {name:?} carries glue {glue:?} that does not resolve")]
    DanglingGlue { name: String, glue: String },
    #[error("duplicate gadget name {0:?}")]
    Duplicate(String),
    #[error("missing required gadget {0:?}")]
    Missing(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Cut(#[from] CutError),
}

/// One library entry: the body in its authored frame (placements in the
/// compiled pipeline are expressed in these coordinates).
#[derive(Clone, Debug)]
pub struct Gadget {
    pub name: String,
    pub category: GadgetCategory,
    pub variant: GadgetVariant,
    pub body: PositionedAssembly,
}

impl Gadget {
    pub fn assembly(&self) -> Assembly {
        Assembly::canonicalize(&self.body).unwrap()
    }
}

/// The full gadget library.
#[derive(Clone, Debug)]
pub struct GadgetLibrary {
    pub strengths: StrengthTable,
    gadgets: Vec<Gadget>,
    index: BTreeMap<String, usize>,
}

impl GadgetLibrary {
    fn new() -> Self {
        GadgetLibrary {
            strengths: library_strengths(),
            gadgets: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: &str, category: GadgetCategory, variant: GadgetVariant, body: PositionedAssembly) {
        assert!(
            !self.index.contains_key(name),
            "duplicate gadget {name:?}"
        );
        self.index.insert(name.to_string(), self.gadgets.len());
        self.gadgets.push(Gadget {
            name: name.to_string(),
            category,
            variant,
            body,
        });
    }

    pub fn get(&self, name: &str) -> Option<&Gadget> {
        self.index.get(name).map(|&i| &self.gadgets[i])
    }

    pub fn body(&self, name: &str) -> &PositionedAssembly {
        &self
            .get(name)
            .unwrap_or_else(|| panic!("unknown gadget {name:?}"))
            .body
    }

    pub fn iter(&self) -> impl Iterator<Item = &Gadget> {
        self.gadgets.iter()
    }

    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }

    /// Checks every gadget body: all glues resolve in the strength table
    /// and the body is stable at the construction temperature.
    pub fn validate(&self) -> Result<(), LoadError> {
        for g in &self.gadgets {
            for (_, tile) in g.body.iter() {
                for (_, glue) in tile.glues() {
                    if self.strengths.strength(glue).is_err() {
                        return Err(LoadError::DanglingGlue {
                            name: g.name.clone(),
                            glue: glue.name().to_string(),
                        });
                    }
                }
            }
            let bounds = CutBounds {
                exact_limit: 20,
                ..CutBounds::default()
            };
            let verdict = is_tau_stable(&g.body, &self.strengths, TAU, &bounds)?;
            if !verdict.stable {
                return Err(LoadError::UnstableGadget {
                    name: g.name.clone(),
                    tau: TAU,
                    cut: verdict.min_cut_seen.unwrap_or(0),
                });
            }
        }
        Ok(())
    }
}

fn put(lib: &mut GadgetLibrary, name: &str, cat: GadgetCategory, variant: GadgetVariant, sk: Sketch) {
    let body = sk.build_positioned(name);
    lib.insert(name, cat, variant, body);
}

fn inst_variant(i: Instruction) -> GadgetVariant {
    GadgetVariant {
        instruction: Some(i),
        special: 0,
    }
}

fn special(i: Option<Instruction>, n: u8) -> GadgetVariant {
    GadgetVariant {
        instruction: i,
        special: n,
    }
}

/// Station-side helper for the final tape section: anchors on the
/// anchor block's tooth, rests on the bar, and presents the transition
/// grips. Attaches `J1+Z1+D = 10`. Local origin: the tooth dip.
fn last_station_helper(inst: Instruction) -> Sketch {
    let mut s = Sketch::new();
    // Dip onto the anchor tooth top; grips east for the exit courier.
    s.glue(0, 0, Side::South, "J1");
    s.glue(0, 0, Side::East, "B");
    s.glue(0, -1, Side::East, "C");
    s.glue(0, -1, Side::North, "D"); // exit courier's seat target
    // Z1 rest on the bar; p and instruction docks for the extension.
    s.glue(-1, -1, Side::South, "Z1");
    s.glue(-1, -1, Side::North, "p");
    s.cell(-2, -1);
    s.glue(-2, -2, Side::North, inst.family());
    // Faces the second walking helper binds.
    s.glue(-3, -2, Side::West, "Z2");
    s.glue(-4, -3, Side::South, "Z2");
    s.cell(-3, -3);
    // Tail to the previous station's release face.
    s.cell(-5, -3);
    s.cell(-6, -3);
    s.cell(-7, -3);
    s.glue(-7, -2, Side::West, "D");
    s
}

/// The first extension gadget: docks the last tape station (`B`, `C` on
/// the station helper, `F` on the bar, `p` on the helper shelf), fills
/// the first slab's gate notch, and hosts the block docks on its arm.
/// Attaches `B+C+F+p = 10`. Local origin: the grip cell.
fn extend_start(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    s.glue(0, -1, Side::West, "C");
    s.cell(0, -2);
    s.cell(-1, -2);
    s.glue(-2, -2, Side::South, "p");
    s.cell(-2, -3);
    s.glue(-3, -3, Side::South, fam);
    // Arm east over the anchor toward the first slab.
    for x in 1..=8 {
        s.cell(x, 0);
    }
    s.glue(4, 1, Side::South, "X"); // gate dip into the first K1 notch
    s.cell(4, 1);
    s.glue(5, 0, Side::North, "O3");
    s.glue(6, 0, Side::North, "V1");
    s.glue(7, 0, Side::North, "O5");
    s.glue(8, 0, Side::South, "p2");
    s
}

/// Transition courier from the last walked tape station onto the path.
/// Grips the station helper (`B`, `C`), seats `D` over it, dips onto the
/// first slab's K1 (`J1`), and hosts the first path bar over the slab's
/// K2 tops. Attaches `B+C+J1 = 15`. Local origin: the grip cell.
fn transition_courier_walked(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    s.cell(0, -1);
    s.glue(0, -2, Side::West, "Z5");
    s.glue(0, -2, Side::North, "Z6");
    for x in 1..=9 {
        s.cell(x, 0);
    }
    s.glue(5, 0, Side::South, "J1"); // first slab K1 c1 dip
    s.glue(9, 0, Side::East, fam);
    s.cell(9, -1);
    s.glue(10, -1, Side::South, "O2");
    s.glue(11, -1, Side::South, "D");
    s
}

/// Transition courier from the final read station onto the path (used by
/// the last instruction, whose information never walks the tape). Grips
/// the penultimate helper's faces and wedges `D` against the final read
/// helper. Attaches `F+F+J1 = 10`. Local origin: the upper grip cell.
fn transition_courier_read(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, format!("{fam}1").as_str());
    s.glue(0, -1, Side::West, format!("{fam}2").as_str());
    s.glue(0, -2, Side::West, "Z5");
    s.glue(0, -2, Side::North, "Z6");
    for x in 1..=9 {
        s.cell(x, 0);
    }
    s.glue(5, 0, Side::South, "J1"); // first slab K1 c1 dip
    s.glue(9, 0, Side::East, fam);
    s.cell(9, -1);
    s.glue(10, -1, Side::South, "O2");
    s.glue(11, -1, Side::South, "D");
    s
}

/// Builds the complete default library.
pub fn default_library() -> GadgetLibrary {
    use GadgetCategory::*;
    let mut lib = GadgetLibrary::new();

    // Anchor block (overlay initiator) and end cover.
    put(&mut lib, "anchor", OverlayInitiator, GadgetVariant::default(), tape::anchor_block());
    put(&mut lib, "cover-end", OverlayHelper, special(None, 1), tape::end_cover());
    // Overlay kit.
    put(&mut lib, "junction", OverlayHelper, GadgetVariant::default(), tape::junction());
    put(&mut lib, "cover-east", OverlayHelper, special(None, 2), tape::cover_east());
    put(&mut lib, "cover-west", OverlayHelper, special(None, 3), tape::cover_west());
    for inst in [Instruction::Forward, Instruction::Left, Instruction::Right] {
        let c = inst.code();
        put(&mut lib, &format!("cover-info-{c}"), OverlayHelper, inst_variant(inst), tape::info_cover(inst));
        put(&mut lib, &format!("cover-info-last-{c}"), OverlayHelper, special(Some(inst), 4), tape::info_cover_last(inst));
        // Read kit.
        put(&mut lib, &format!("read-{c}"), Read, inst_variant(inst), tape::read_gadget(inst));
        put(&mut lib, &format!("info-read-{c}"), InfoBlock, inst_variant(inst), tape::info_block_read(inst));
        put(&mut lib, &format!("read-pen-{c}"), ReadHelper, inst_variant(inst), tape::read_helper_pen(inst));
        // Walk kit.
        put(&mut lib, &format!("walker-{c}"), Walker, inst_variant(inst), tape::tape_walker(inst, tape::TapeGrip::ReadStation));
        put(&mut lib, &format!("walker-tape-{c}"), Walker, special(Some(inst), 1), tape::tape_walker(inst, tape::TapeGrip::WalkedStation));
        put(&mut lib, &format!("info-bar-{c}"), InfoBlock, special(Some(inst), 1), tape::info_bar(inst));
        put(&mut lib, &format!("walk-helper-one-{c}"), WalkerHelper, inst_variant(inst), tape::walk_helper_one(inst));
        // Transition couriers (tape to path).
        put(&mut lib, &format!("courier-exit-{c}"), Walker, special(Some(inst), 2), transition_courier_walked(inst));
        put(&mut lib, &format!("courier-read-exit-{c}"), Walker, special(Some(inst), 5), transition_courier_read(inst));
        // Path kit.
        put(&mut lib, &format!("courier-{c}"), Walker, special(Some(inst), 4), path::path_courier(inst));
        put(&mut lib, &format!("path-bar-{c}"), InfoBlock, special(Some(inst), 2), path::path_bar(inst));
        put(&mut lib, &format!("extend-{c}"), Extender, inst_variant(inst), path::extend_forward(inst));
        put(&mut lib, &format!("extend-start-{c}"), Extender, special(Some(inst), 1), extend_start(inst));
        put(&mut lib, &format!("station-helper-last-{c}"), WalkerHelper, special(Some(inst), 3), last_station_helper(inst));
    }
    put(&mut lib, "read-helper-a", ReadHelper, special(None, 1), tape::read_helper_a());
    put(&mut lib, "read-helper-b", ReadHelper, special(None, 2), tape::read_helper_b());
    put(&mut lib, "read-helper-b-last", ReadHelper, special(None, 5), tape::read_helper_b_last());
    put(&mut lib, "read-final", ReadHelper, special(None, 3), tape::read_helper_final());
    put(&mut lib, "walk-helper-two", WalkerHelper, special(None, 2), tape::walk_helper_two());

    // Reduction kit.
    put(&mut lib, "reducer", Reducer, GadgetVariant::default(), tape::reducer());
    put(&mut lib, "reduce-helper-one", ReducerHelper, special(None, 1), tape::reduce_helper_one());
    put(&mut lib, "reduce-helper-two", ReducerHelper, special(None, 2), tape::reduce_helper_two());
    put(&mut lib, "reduce-filler", ReducerHelper, special(None, 3), tape::reduce_filler());
    put(&mut lib, "reduce-final-one", ReducerHelper, special(None, 4), tape::reduce_final_one());
    put(&mut lib, "reduce-final-two", ReducerHelper, special(None, 5), tape::reduce_final_two());

    // Path blocks and extension helpers.
    put(&mut lib, "block-k1", PathBlock, GadgetVariant::default(), path::block_k1());
    put(&mut lib, "block-k2", PathBlock, special(None, 1), path::block_k2());
    put(&mut lib, "block-k3", PathBlock, special(None, 2), path::block_k3());
    put(&mut lib, "notch-cap", PathBlock, special(None, 3), path::notch_cap());
    put(&mut lib, "extend-helper-one", ExtenderHelper, special(None, 1), path::extend_helper_one());
    put(&mut lib, "extend-helper-two", ExtenderHelper, special(None, 2), path::extend_helper_two());

    // Turn kits.
    for inst in [Instruction::Forward, Instruction::Left, Instruction::Right] {
        let c = inst.code();
        put(&mut lib, &format!("extend-left-gadget-{c}"), Extender, special(Some(inst), 3), turns::extend_left_gadget(inst));
        put(&mut lib, &format!("extend-right-gadget-{c}"), Extender, special(Some(inst), 4), turns::extend_right_gadget(inst));
        put(&mut lib, &format!("courier-turn-right-{c}"), Walker, special(Some(inst), 6), turns::corner_courier_right(inst));
        put(&mut lib, &format!("courier-turn-left-{c}"), Walker, special(Some(inst), 7), turns::corner_courier_left(inst));
    }
    put(&mut lib, "block-left-near", PathBlock, special(None, 4), turns::block_left_near());
    put(&mut lib, "cap-left", PathBlock, special(None, 5), turns::cap_left());
    put(&mut lib, "left-helper-one", ExtenderHelper, special(None, 3), turns::left_helper_one());
    put(&mut lib, "left-helper-two", ExtenderHelper, special(None, 4), turns::left_helper_two());
    put(&mut lib, "right-helper-one", ExtenderHelper, special(None, 5), turns::right_helper_one());
    put(&mut lib, "right-helper-two", ExtenderHelper, special(None, 6), turns::right_helper_two());
    put(&mut lib, "path-trigger", WalkerHelper, special(None, 4), path::path_trigger());
    put(&mut lib, "exit-trigger", WalkerHelper, special(None, 5), {
        let mut s = Sketch::new();
        s.glue(0, 0, Side::West, "D");
        s.glue(0, 0, Side::East, "Z5");
        s.cell(0, -1);
        s.glue(1, -1, Side::South, "Z6");
        s
    });
    put(&mut lib, "exit-trigger-station", WalkerHelper, special(None, 6), {
        let mut s = Sketch::new();
        s.glue(0, 0, Side::South, "D");
        s.glue(0, 0, Side::East, "Z5");
        s.cell(0, -1);
        s.glue(1, -1, Side::South, "Z6");
        s
    });

    // End-of-tape reduction variants.
    put(&mut lib, "reducer-last", Reducer, special(None, 1), tape::reducer_last());
    put(&mut lib, "reduce-helper-two-last", ReducerHelper, special(None, 6), tape::reduce_helper_two_last());
    put(&mut lib, "reduce-final-one-last", ReducerHelper, special(None, 7), tape::reduce_final_one_last());
    put(&mut lib, "reduce-final-two-last", ReducerHelper, special(None, 8), tape::reduce_final_two_last());

    // Fill initiator.
    put(&mut lib, "fill-initiator", FillInitiator, GadgetVariant::default(), fill::fill_initiator());

    lib
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_builds_and_validates() {
        let lib = default_library();
        assert!(lib.len() > 40, "library has {} gadgets", lib.len());
        lib.validate().unwrap();
    }

    #[test]
    fn every_scripted_detachment_fits_the_garbage_bound() {
        // Library gadgets are all small; the frozen garbage constant is
        // checked end-to-end in the pipeline tests.
        let lib = default_library();
        for g in lib.iter() {
            assert!(g.body.len() <= 36, "{} has {} tiles", g.name, g.body.len());
        }
    }
}
