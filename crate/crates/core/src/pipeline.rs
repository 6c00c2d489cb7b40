//! The scripted assembly pipeline: overlay, then read / walk / extend /
//! reduce per instruction, then fill. The driver computes every placement
//! from the compiled layout; the reaction engine validates every step
//! (boundary strength at attachment, cut strength and connectedness at
//! detachment), so the script is checked, never trusted.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::assembly::{Assembly, AssemblyError, PositionedAssembly, Shape};
use crate::combine::{boundary_strength, CombineError};
use crate::compiler::{tree_outline_instructions, CompileError};
use crate::cuts::{partition_strength, CutError};
use crate::gadgets::library::{default_library, GadgetLibrary};
use crate::gadgets::sketch::{rotate_left, rotate_right};
use crate::gadgets::strengths::TAU;
use crate::gadgets::tape::{self, offsets as TO, Instruction, SECTION_PITCH};
use crate::gadgets::{fill, path};
use crate::geom::{Pos, Side};
use crate::glue::GlueError;
use crate::replay::{ReactionEvent, ReactionKind};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("step {step} ({what}): attachment at {at} has boundary {got}, below tau {tau}")]
    WeakAttachment {
        step: usize,
        what: String,
        at: Pos,
        got: i64,
        tau: i64,
    },
    #[error("step {step} ({what}): attachment overlaps at {at}")]
    Overlap { step: usize, what: String, at: Pos },
    #[error("step {step} ({what}): detachment cut has strength {got}, not below tau {tau}")]
    StableCut {
        step: usize,
        what: String,
        got: i64,
        tau: i64,
    },
    #[error("step {step} ({what}): detached piece is not connected")]
    BrokenPiece { step: usize, what: String },
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Combine(#[from] CombineError),
}

/// Placement frame: a quarter-turn rotation followed by a translation.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    /// Number of left quarter turns applied to authored (east-heading)
    /// coordinates.
    pub rot: u8,
    pub t: Pos,
}

impl Frame {
    pub fn east(t: Pos) -> Frame {
        Frame { rot: 0, t }
    }

    pub fn rot_pos(rot: u8, p: Pos) -> Pos {
        match rot % 4 {
            0 => p,
            1 => Pos::new(p.y, -p.x),
            2 => Pos::new(-p.x, -p.y),
            _ => Pos::new(-p.y, p.x),
        }
    }

    pub fn apply(&self, p: Pos) -> Pos {
        Self::rot_pos(self.rot, p) + self.t
    }

    pub fn body(&self, b: &PositionedAssembly) -> PositionedAssembly {
        let mut out = b.clone();
        for _ in 0..(self.rot % 4) {
            out = rotate_left(&out);
        }
        out
    }

    /// Rotation turning east into `heading`.
    pub fn rot_for(heading: Side) -> u8 {
        match heading {
            Side::East => 0,
            Side::North => 1,
            Side::West => 2,
            Side::South => 3,
        }
    }
}

/// A running scripted assembly.
pub struct Run {
    pub lib: GadgetLibrary,
    pub main: PositionedAssembly,
    pub events: Vec<ReactionEvent>,
    pub detached: Vec<Assembly>,
    step: usize,
}

impl Run {
    pub fn new(lib: GadgetLibrary, start: PositionedAssembly) -> Run {
        Run {
            lib,
            main: start,
            events: Vec::new(),
            detached: Vec::new(),
            step: 0,
        }
    }

    /// Attaches a copy of `body` translated by `frame`; the authored
    /// origin cell (0,0) lands at `frame.apply(origin_at)`. Returns the
    /// verified boundary strength.
    pub fn attach_body(
        &mut self,
        what: &str,
        body: &PositionedAssembly,
        frame: Frame,
        origin_at: Pos,
    ) -> Result<i64, PipelineError> {
        self.step += 1;
        let rotated = frame.body(body);
        let offset = frame.apply(origin_at);
        for p in rotated.positions() {
            if self.main.contains(p + offset) {
                return Err(PipelineError::Overlap {
                    step: self.step,
                    what: what.to_string(),
                    at: p + offset,
                });
            }
        }
        let s = boundary_strength(&self.main, &rotated, offset, &self.lib.strengths)?
            .expect("overlap checked");
        if s < TAU {
            use crate::geom::SIDES;
            for (p, t) in rotated.iter() {
                for side in SIDES {
                    let q = p + offset + side.delta();
                    if let Some(other) = self.main.tile_at(q) {
                        let w = self
                            .lib
                            .strengths
                            .bond(t.glue(side), other.glue(side.opposite()))
                            .unwrap_or(0);
                        let mine = t.glue(side).map(|g| g.name().to_string()).unwrap_or("-".into());
                        let theirs = other
                            .glue(side.opposite())
                            .map(|g| g.name().to_string())
                            .unwrap_or("-".into());
                        if mine != "-" || theirs != "-" {
                            eprintln!("  contact {}{} {}|{} = {}", p + offset, side.name(), mine, theirs, w);
                        }
                    }
                }
            }
            return Err(PipelineError::WeakAttachment {
                step: self.step,
                what: what.to_string(),
                at: offset,
                got: s,
                tau: TAU,
            });
        }
        self.main = self.main.union(&rotated.translate(offset))?;
        self.events.push(ReactionEvent {
            kind: ReactionKind::Combine,
            inputs: vec![format!("main{}", self.step - 1), what.to_string()],
            outputs: vec![format!("main{}", self.step)],
            strength: s,
            main_size: self.main.len(),
            detached_size: None,
        });
        Ok(s)
    }

    /// Attaches a library gadget by name.
    pub fn attach(
        &mut self,
        gadget: &str,
        frame: Frame,
        origin_at: Pos,
    ) -> Result<i64, PipelineError> {
        let body = self.lib.body(gadget).clone();
        self.attach_body(gadget, &body, frame, origin_at)
    }

    /// Detaches the piece holding the given cells, verifying the cut is
    /// below tau and both sides stay connected through positive bonds.
    pub fn detach(&mut self, what: &str, cells: &BTreeSet<Pos>) -> Result<i64, PipelineError> {
        self.step += 1;
        let (cut, _) = partition_strength(&self.main, &self.lib.strengths, cells)?;
        if cut >= TAU {
            for (p, q, name, w) in self.crossing_bonds(cells) {
                eprintln!("  crossing {p}->{q} {name} = {w}");
            }
            return Err(PipelineError::StableCut {
                step: self.step,
                what: what.to_string(),
                got: cut,
                tau: TAU,
            });
        }
        let mut piece = PositionedAssembly::new();
        let mut rest = PositionedAssembly::new();
        for (p, t) in self.main.iter() {
            if cells.contains(&p) {
                piece.place(p, t.clone()).unwrap();
            } else {
                rest.place(p, t.clone()).unwrap();
            }
        }
        assert_eq!(piece.len(), cells.len(), "{what}: piece cells missing");
        if !piece.is_connected(&self.lib.strengths)? || !rest.is_connected(&self.lib.strengths)? {
            return Err(PipelineError::BrokenPiece {
                step: self.step,
                what: what.to_string(),
            });
        }
        let piece_size = piece.len();
        self.detached.push(Assembly::canonicalize(&piece)?);
        self.main = rest;
        self.events.push(ReactionEvent {
            kind: ReactionKind::Break,
            inputs: vec![format!("main{}", self.step - 1)],
            outputs: vec![
                format!("main{}", self.step),
                format!("garbage{}", self.detached.len()),
            ],
            strength: cut,
            main_size: self.main.len(),
            detached_size: Some(piece_size),
        });
        Ok(cut)
    }

    /// Names and strengths of the bonds crossing a candidate partition;
    /// for diagnosing scripted cuts.
    pub fn crossing_bonds(&self, cells: &BTreeSet<Pos>) -> Vec<(Pos, Pos, String, i64)> {
        use crate::geom::SIDES;
        let mut out = Vec::new();
        for (p, t) in self.main.iter() {
            if !cells.contains(&p) {
                continue;
            }
            for side in SIDES {
                let q = p.neighbor(side);
                if cells.contains(&q) || !self.main.contains(q) {
                    continue;
                }
                let ga = t.glue(side);
                let gb = self.main.tile_at(q).unwrap().glue(side.opposite());
                let w = self.lib.strengths.bond(ga, gb).unwrap_or(0);
                if w != 0 {
                    let name = ga.map(|g| g.name().to_string()).unwrap_or_default();
                    out.push((p, q, name, w));
                }
            }
        }
        out
    }

    /// Cells of the most recently attached bodies, for building detach
    /// sets: collects the placed footprint of a gadget.
    pub fn footprint(&self, body: &PositionedAssembly, frame: Frame, origin_at: Pos) -> BTreeSet<Pos> {
        let rotated = frame.body(body);
        let offset = frame.apply(origin_at);
        rotated.positions().map(|p| p + offset).collect()
    }
}

/// Everything the audit needs about one compiled shape.
pub struct CompiledSystem {
    pub lib: GadgetLibrary,
    pub instructions: Vec<Instruction>,
    pub headings: Vec<Side>,
    pub cycle: Vec<Pos>,
    pub tape: PositionedAssembly,
    pub tape_frame: Frame,
    pub target: Shape,
    pub anchor_origin: Pos,
}

/// Compiles a shape: instruction sequence, tape assembly positioned in
/// the global frame, and the scale-24 target.
pub fn compile(shape: &Shape) -> Result<CompiledSystem, PipelineError> {
    let (instructions, headings, cycle) = tree_outline_instructions(shape);
    let lib = default_library();
    let n = instructions.len() as i32;
    let c0 = cycle[0];
    // Anchor block = center block of the start cell's region; the tape
    // extends west of it. Region of scale-2 cell (u,v): 12x12 tiles at
    // (12u, 12v); center block columns 12u+4..12u+7, band rows
    // 12v+4..12v+7 (tape rows -3..0 in authored coordinates).
    let anchor_origin = Pos::new(12 * c0.x + 4, 12 * c0.y + 7);
    let tape_t = Pos::new(
        anchor_origin.x - (SECTION_PITCH * (n - 1) + 6),
        anchor_origin.y,
    );
    let tape_frame = Frame::east(tape_t);
    let tape = tape::build_tape(&instructions, tape_t);
    let target = shape.scale(24)?;
    Ok(CompiledSystem {
        lib,
        instructions,
        headings,
        cycle,
        tape,
        tape_frame,
        target,
        anchor_origin,
    })
}

/// Region helpers: block-grid coordinates. A scale-2 cell (u,v) owns the
/// 3x3 blocks at block coordinates (3u+i, 3v+j). Block (bx,by) covers
/// tiles (4bx..4bx+3, 4by..4by+3).
pub fn block_nw(bx: i32, by: i32) -> Pos {
    Pos::new(4 * bx, 4 * by)
}

pub fn center_block(cell: Pos) -> (i32, i32) {
    (3 * cell.x + 1, 3 * cell.y + 1)
}

pub fn side_delta(side: Side) -> (i32, i32) {
    let d = side.delta();
    (d.x, d.y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::parse_shape;

    #[test]
    fn frames_rotate_consistently() {
        let f = Frame { rot: 1, t: Pos::new(10, 10) };
        // East-heading (1,0) becomes north (0,-1).
        assert_eq!(f.apply(Pos::new(1, 0)) - f.apply(Pos::new(0, 0)), Pos::new(0, -1));
    }

    #[test]
    fn compile_single_cell_layout() {
        let shape = parse_shape("#").unwrap();
        let sys = compile(&shape).unwrap();
        assert_eq!(sys.instructions.len(), 3);
        assert_eq!(sys.target.len(), 576);
        // The anchor column range ends where the tape ends.
        assert_eq!(sys.anchor_origin, Pos::new(4, 7));
        assert_eq!(sys.tape.len(), 2 * 14 + 12);
    }
}
