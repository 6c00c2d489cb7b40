//! Tape geometry and the tape-lane gadget kits: sections, buffer columns,
//! the overlay cover, the read complex, walking, and tape reduction.
//!
//! ## Layout (y grows downward; the tape occupies rows -3..=1)
//!
//! Each instruction occupies one section of pitch 7. Section `k` starts at
//! column `X = 7k` and owns columns `X..X+5` plus the buffer column `X+6`:
//!
//! ```text
//! row -3   [V1][V2]  .   .   .  [H1b-dock][walker-dock]     (machinery docks)
//! row -2   [V1][V2][OV][OV][OV][J ][J ]                     (overlay)
//! row -1   [N0][N1][T1][T2][N4][N5][BF]                     (bit row)
//! row  0   [B0][B1][B2][B3][B4][B5][BF]                     (base row)
//! ```
//!
//! `T1`/`T2` carry the instruction bit upward; the overlay relays it.
//! The buffer column bonds the next section with the two strength-8 seam
//! glues `u1`/`u2` that the reduction step later severs. Each section plus
//! its buffer is internally welded, so the only finite seams in the bare
//! tape are between sections.
//!
//! Stations (resting places for walked information blocks) sit at row -4,
//! walker and helper machinery at rows -5..-7. The read complex hooks the
//! leftmost section from below (rows 1) and from the vacated buffer
//! column to its west, which is what enforces leftmost-only reading.

use crate::assembly::PositionedAssembly;
use crate::geom::{Pos, Side};
use crate::gadgets::sketch::Sketch;

/// Horizontal pitch of one tape section (columns per instruction).
pub const SECTION_PITCH: i32 = 7;

/// One path instruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Instruction {
    Forward,
    Left,
    Right,
}

impl Instruction {
    /// Strength-1 instruction family carried by info blocks and read by
    /// instruction-specific gadgets.
    pub fn family(self) -> &'static str {
        match self {
            Instruction::Forward => "F",
            Instruction::Left => "L",
            Instruction::Right => "R",
        }
    }

    /// Strength-2 bit family on the first bit tile.
    pub fn bit(self) -> &'static str {
        match self {
            Instruction::Forward => "f",
            Instruction::Left => "l",
            Instruction::Right => "r",
        }
    }

    /// Strength-3 starred bit family on the second bit tile.
    pub fn bit_star(self) -> &'static str {
        match self {
            Instruction::Forward => "f*",
            Instruction::Left => "l*",
            Instruction::Right => "r*",
        }
    }

    pub fn code(self) -> char {
        match self {
            Instruction::Forward => 'F',
            Instruction::Left => 'L',
            Instruction::Right => 'R',
        }
    }

    pub fn from_code(c: char) -> Option<Instruction> {
        match c {
            'F' => Some(Instruction::Forward),
            'L' => Some(Instruction::Left),
            'R' => Some(Instruction::Right),
            _ => None,
        }
    }
}

/// Builds one tape section (with its trailing buffer column unless it is
/// the final section) at local origin (0,0) = the base row west tile.
///
/// The final section instead exposes the tape-end faces `t1`/`h^` that
/// only the anchor block can bind, plus the end-cover docks.
fn section_sketch(inst: Instruction, is_last: bool) -> Sketch {
    let mut s = Sketch::new();
    // Base row.
    for x in 0..6 {
        s.cell(x, 0);
    }
    s.glue(0, 0, Side::South, "n");
    s.glue(1, 0, Side::South, "T");
    s.glue(0, 0, Side::West, "u1");
    // Bit row.
    s.glue(0, -1, Side::West, "u2");
    s.glue(0, -1, Side::North, "q2");
    s.glue(1, -1, Side::North, "q1");
    s.glue(2, -1, Side::North, inst.bit());
    s.glue(3, -1, Side::North, inst.bit_star());
    s.glue(4, -1, Side::North, "i1");
    if is_last {
        s.glue(5, -1, Side::North, "h*");
        s.glue(5, -1, Side::East, "h^");
        s.glue(5, 0, Side::East, "t1");
    } else {
        s.glue(5, -1, Side::North, "q3");
        // Buffer column, welded into this section.
        s.glue(6, 0, Side::East, "u1");
        s.glue(6, -1, Side::East, "u2");
        s.glue(6, -1, Side::North, "w");
    }
    s
}

/// A fully assembled tape for an instruction sequence, positioned with
/// section 0's base-row west tile at `origin`. Returns the positioned
/// assembly; the caller owns placement in the global frame.
pub fn build_tape(instructions: &[Instruction], origin: Pos) -> PositionedAssembly {
    assert!(!instructions.is_empty(), "tape needs at least one section");
    let mut out = PositionedAssembly::new();
    for (k, inst) in instructions.iter().enumerate() {
        let is_last = k + 1 == instructions.len();
        let sk = section_sketch(*inst, is_last);
        let body = sk.build_positioned(&format!("tape{k}"));
        let shift = Pos::new(origin.x + SECTION_PITCH * k as i32, origin.y);
        for (p, t) in body.iter() {
            out.place(p + shift, t.clone()).unwrap();
        }
    }
    out
}

/// Number of tiles in one interior section (with buffer) and in the final
/// section.
pub const SECTION_TILES: usize = 14;
pub const LAST_SECTION_TILES: usize = 12;

// ---------------------------------------------------------------------
// Overlay kit
// ---------------------------------------------------------------------

/// Junction block: covers a section's east column and its buffer column,
/// and docks the next section's west cover. Attaches `q3+w+e = 10`.
pub fn junction() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "q3");
    s.glue(0, 0, Side::North, "J1"); // read helper dock
    s.glue(1, 0, Side::South, "w");
    s.glue(1, 0, Side::North, "J1"); // walker dip dock
    s.glue(1, 0, Side::East, "e");
    s
}

/// Information cover: the three-tile horizontal piece that covers the bit
/// pair and relays the instruction upward. Attaches `f+f*+i1 = 10`.
pub fn info_cover(inst: Instruction) -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, inst.bit());
    s.glue(0, 0, Side::West, "i3");
    s.glue(0, 0, Side::North, inst.family()); // read gadget dock
    s.glue(1, 0, Side::South, inst.bit_star());
    s.glue(1, 0, Side::North, "K"); // read helper dock
    s.glue(2, 0, Side::South, "i1");
    s
}

/// Eastern vertical cover domino. Attaches `q1+i3 = 10`.
pub fn cover_east() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "q1");
    s.glue(0, 0, Side::West, "i2");
    s.glue(0, 0, Side::East, "i3");
    s.glue(0, -1, Side::North, "X"); // walked-bar dock
    s.cell(0, -1);
    s
}

/// Western vertical cover domino. Attaches `q2+i2 = 10`.
pub fn cover_west() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "q2");
    s.glue(0, 0, Side::East, "i2");
    s.glue(0, 0, Side::West, "e"); // previous junction's dock
    s.glue(0, -1, Side::North, "o"); // reduction destabilizer dock
    s.glue(0, -1, Side::West, "o"); // reduction destabilizer dock
    s
}

/// End cover: the tile unique to the end of a completed tape. Attaches
/// `h+h*+i1 = 10` against the final section and the anchor block.
pub fn end_cover() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "h*");
    s.glue(0, 0, Side::East, "h");
    s.glue(0, 0, Side::North, "i1");
    s
}

/// Final-section information cover: carries an extra helper dock on its
/// east cell, standing in for the junction that interior sections have.
pub fn info_cover_last(inst: Instruction) -> Sketch {
    let mut s = info_cover(inst);
    s.glue(2, 0, Side::North, "J1");
    s
}

/// Final-section second read helper: single tile docking the cover's
/// extra face. Attaches `J1+A1 = 10`.
pub fn read_helper_b_last() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "A1");
    s.glue(0, 0, Side::South, "J1");
    s.glue(0, 0, Side::North, "A2");
    s
}

/// The anchor block: a full 4x4 block that caps the completed tape
/// (attaching `t1+h^ = 10`), exposes the path-start faces on its east
/// side, carries the first station on top, and finally becomes the first
/// pixel block of the shape.
pub fn anchor_block() -> Sketch {
    let mut s = Sketch::new();
    for x in 0..4 {
        for y in -3..=0 {
            s.cell(x, y);
        }
    }
    // Tooth over the end cover: receives it (`i1`) and anchors the last
    // station's helper (`J1`).
    s.glue(-1, -3, Side::South, "i1");
    s.glue(-1, -3, Side::North, "J1");
    s.glue(-1, -3, Side::West, "G1");
    // West: tape end docks.
    s.glue(0, 0, Side::West, "t1");
    s.glue(0, -1, Side::West, "h^");
    s.glue(0, -2, Side::West, "h");
    // Tops: final-reduction destabilizer docks.
    s.glue(2, -3, Side::North, "o");
    s.glue(3, -3, Side::North, "o");
    // East: path start profile.
    s.glue(3, 0, Side::East, "H1");
    // South: fill initiator docks.
    s.glue(0, 0, Side::South, "H");
    s.glue(1, 0, Side::South, "I");
    s
}

// ---------------------------------------------------------------------
// Read complex
// ---------------------------------------------------------------------

/// The read gadget for one instruction. Hooks the leftmost section from
/// below (`n`, `T`) and reads the instruction from the overlay (`F`).
/// Its west column occupies the vacated buffer footprint, which is what
/// restricts reading to the leftmost section. Attaches `n+T+F = 10`;
/// detaches along the strength-6 cut after the final helper arrives.
pub fn read_gadget(inst: Instruction) -> Sketch {
    let mut s = Sketch::new();
    // Under-hooks and west gate column.
    s.glue(0, 1, Side::North, "n");
    s.glue(1, 1, Side::North, "T");
    s.cell(-1, 1).cell(-1, 0).cell(-1, -1);
    // Mast.
    for y in -6..=-2 {
        s.cell(-1, y);
    }
    s.glue(-1, -6, Side::East, "D");
    // Arm over the overlay and the dip that reads the instruction.
    s.glue(0, -4, Side::North, inst.family());
    s.glue(1, -4, Side::North, inst.family());
    s.cell(2, -4);
    s.glue(2, -4, Side::East, "M");
    s.glue(2, -3, Side::South, inst.family());
    s
}

/// First read helper: docks the info cover (`K`) and the read gadget arm
/// (`M`). Carries the info block dock on top and a helper dock east.
pub fn read_helper_a() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "K");
    s.glue(0, 0, Side::East, "A1");
    s.glue(0, -1, Side::West, "M");
    s.glue(0, -1, Side::North, "J2");
    s.glue(0, -1, Side::East, "A2");
    s.cell(0, 0);
    s
}

/// Second read helper: docks the junction (`J1`) and the first helper
/// (`A1`). Its tops anchor the penultimate helper and later the reducer.
pub fn read_helper_b() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "A1");
    s.glue(0, 0, Side::North, "A2");
    s.glue(1, 0, Side::South, "J1");
    s.glue(1, 0, Side::North, "U");
    s.glue(1, 0, Side::East, "s");
    s
}

/// The read-born information block: a five-wide bar that sits on the read
/// gadget's arm (`F+F`) and the first helper (`J2`).
pub fn info_block_read(inst: Instruction) -> Sketch {
    let mut s = Sketch::new();
    for x in 0..5 {
        s.cell(x, 0);
    }
    s.glue(0, 0, Side::South, inst.family());
    s.glue(1, 0, Side::South, inst.family());
    s.glue(3, 0, Side::South, "J2");
    s.glue(1, 0, Side::North, "J3");
    s.glue(2, 0, Side::North, "J3");
    s.glue(3, 0, Side::North, "Q");
    s.glue(4, 0, Side::North, "O2");
    s.glue(4, 0, Side::East, "O1");
    s
}

/// Penultimate read helper: grips the info block (`O1`, `A2`) and the
/// helper shelf (`A2`), and presents the walker dock faces east.
pub fn read_helper_pen(inst: Instruction) -> Sketch {
    let mut s = Sketch::new();
    // Cells: (0,0) on the shelf, (1,0) beside it, (1,-1) gripping east of
    // the info block.
    s.glue(0, 0, Side::West, "A2"); // read helper a east face
    s.glue(0, 0, Side::South, "A2"); // read helper b west top
    s.glue(1, -1, Side::West, "O1"); // info block east face
    s.glue(1, 0, Side::East, format!("{}1", inst.family()).as_str());
    s.glue(1, -1, Side::East, format!("{}2", inst.family()).as_str());
    s.cell(1, 0);
    s
}

/// Final read helper: the five-wide bar over the info block whose hidden
/// strength -7 contact onto the read gadget mast destabilizes it.
/// Attaches `J3+J3+Q (+O2-D) = 12`.
pub fn read_helper_final() -> Sketch {
    let mut s = Sketch::new();
    for x in 0..5 {
        s.cell(x, 0);
    }
    s.glue(0, 0, Side::West, "D");
    s.glue(1, 0, Side::South, "J3");
    s.glue(2, 0, Side::South, "J3");
    s.glue(3, 0, Side::South, "Q");
    s.glue(4, 0, Side::South, "O2");
    s.glue(4, 0, Side::East, "D");
    s
}

// ---------------------------------------------------------------------
// Walking kit
// ---------------------------------------------------------------------

/// Which surface a tape walker grips: the read complex presents the
/// instruction faces `F1/F2`, every walked station presents `F3/F4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TapeGrip {
    /// Fresh read station (the standard walking gadget).
    ReadStation,
    /// A walked station (special walking gadget 1).
    WalkedStation,
}

/// A tape walking gadget. Grips the old station's two instruction faces,
/// dips its dock onto the junction top (`J1`), and presents the faces the
/// new information bar binds. Attaches `F+F+J1 = 10`; detaches at
/// `F+O2+J1+D = 9` once the second walking helper arrives.
pub fn tape_walker(inst: Instruction, grip: TapeGrip) -> Sketch {
    let fam = inst.family();
    let (g1, g2) = match grip {
        TapeGrip::ReadStation => (format!("{fam}1"), format!("{fam}2")),
        TapeGrip::WalkedStation => (format!("{fam}3"), format!("{fam}4")),
    };
    let mut s = Sketch::new();
    // Dip, hug column, bridge, overhang. Local origin: dip cell at (0,0)
    // sits over the junction's east top.
    s.glue(0, 0, Side::South, "J1");
    s.glue(0, -1, Side::West, &g1);
    s.glue(0, -2, Side::West, &g2);
    s.glue(1, -1, Side::East, fam); // new bar west dock
    s.cell(1, -2);
    s.glue(2, -2, Side::South, "O2"); // new bar north dock
    s.glue(2, -2, Side::North, "D"); // second helper dock
    s
}

/// The walked information bar: rests on a cover top (`X`), binds the
/// walker (`F`, `O2`), and carries the helper docks. Presents the
/// station's `F3` face east for the next hop.
pub fn info_bar(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    for x in 0..4 {
        s.cell(x, 0);
    }
    s.glue(0, 0, Side::West, fam);
    s.glue(0, 0, Side::North, "O2");
    s.glue(0, 0, Side::South, "X");
    s.glue(1, 0, Side::North, fam);
    s.glue(3, 0, Side::North, "Z1");
    s
}

/// First walking helper: anchors the new station and destabilizes the old
/// one. It dips its `J1` dock onto the next junction's west top, rests
/// `Z1` on the new bar, runs a tail west over the walker to press `D`
/// against the old station, and exposes the grip faces and dock points
/// the next hop will use. Attaches `J1+Z1+D = 10`.
///
/// Local origin is the junction dip cell; the bar sits at rows -1, the
/// tail at rows -3/-4.
pub fn walk_helper_one(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    // Dip column onto the next junction west top.
    s.glue(0, 0, Side::South, "J1");
    s.glue(0, -1, Side::East, format!("{fam}3").as_str());
    s.glue(0, -2, Side::East, format!("{fam}4").as_str());
    // Z1 rest on the bar, then west along the bar tops.
    s.glue(-1, -2, Side::South, "Z1");
    s.glue(-1, -3, Side::East, "D"); // next hop's destabilizer target
    s.cell(-2, -2);
    s.cell(-3, -2);
    // Jog up over the walker; the two faces the second helper binds.
    s.glue(-3, -3, Side::West, "Z2");
    s.glue(-4, -4, Side::South, "Z2");
    s.cell(-3, -4);
    // Tail west at row -4 to the old station's D face.
    s.cell(-5, -4);
    s.cell(-6, -4);
    s.cell(-7, -4);
    s.glue(-7, -3, Side::West, "D");
    s
}

/// Second walking helper: the single tile that wedges between the walker
/// and the first helper, destabilizing the walker. Attaches
/// `Z2+Z2+D = 11`.
pub fn walk_helper_two() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "D");
    s.glue(0, 0, Side::East, "Z2");
    s.glue(0, 0, Side::North, "Z2");
    s
}

// ---------------------------------------------------------------------
// Reduction kit
// ---------------------------------------------------------------------

/// The tape reduction gadget: re-binds the read leftovers (`A2`, `U`).
pub fn reducer() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "A2");
    s.glue(1, 0, Side::South, "U");
    s.glue(0, 0, Side::North, "u3");
    s.glue(1, 0, Side::North, "u1");
    s.glue(1, 0, Side::East, "u4");
    s
}

/// First reduction helper pair member. Attaches `u1+u3 = 16`.
pub fn reduce_helper_one() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "u3");
    s.glue(1, 0, Side::South, "u1");
    s.glue(1, 0, Side::North, "s");
    s.glue(1, 0, Side::East, "u2");
    s
}

/// Second reduction helper. Attaches `u2+u4 = 16`.
pub fn reduce_helper_two() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "u4");
    s.glue(0, -1, Side::West, "u2");
    s.glue(0, -1, Side::North, "s");
    s.glue(0, 0, Side::South, "m");
    s.glue(0, 0, Side::East, "m");
    s.glue(0, -1, Side::East, "s");
    s
}

/// Filler pair strengthening the tower. Attaches `s+s = 16`.
pub fn reduce_filler() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "s");
    s.glue(1, 0, Side::South, "s");
    s
}

/// First destabilizing helper: wedges into the vacated walker dip cell,
/// rebinding the leftovers (`s`, `m`) and pressing its repulsive `o`
/// face against the next section's west cover. Attaches `s+m+o = 11`.
pub fn reduce_final_one() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "s");
    s.glue(0, 0, Side::North, "m");
    s.glue(0, 0, Side::East, "o");
    s
}

/// Second destabilizing helper: presses `o` down onto the next section's
/// cover top. Attaches `s+m+o = 11`.
pub fn reduce_final_two() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "m");
    s.glue(0, -1, Side::West, "s");
    s.glue(0, 0, Side::South, "o");
    s
}

/// End-of-tape reducer: re-binds the final read leftovers. Attaches
/// `J2+A2 = 10` onto the dangling helper tops.
pub fn reducer_last() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "J2");
    s.glue(0, 0, Side::North, "u3");
    s.cell(1, 0);
    s.glue(1, 0, Side::North, "u1");
    s.glue(1, 1, Side::South, "A2");
    s.cell(1, 1);
    s.glue(1, 0, Side::East, "m");
    s.glue(1, 1, Side::East, "m2");
    s
}

/// End variant of the second reduction helper. Attaches `m+u2 = 16`.
pub fn reduce_helper_two_last() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "m");
    s.glue(0, -1, Side::West, "u2");
    s.glue(0, 0, Side::East, "m");
    s.glue(0, -1, Side::East, "s");
    s
}

/// First destabilizer of the final reduction: reaches east over the
/// spent machinery and presses `o` onto the anchor block's first
/// repulsion dock. Attaches `s+m+o = 11`.
pub fn reduce_final_one_last() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "s");
    s.glue(0, 1, Side::West, "m");
    s.cell(0, 2);
    s.cell(1, 2);
    s.glue(2, 2, Side::South, "o");
    s.glue(2, 2, Side::East, "m3");
    s.glue(2, 2, Side::North, "s5");
    s.cell(2, 2);
    s
}

/// Second destabilizer of the final reduction: presses `o` onto the
/// anchor's second repulsion dock. Attaches `m3+s5+o = 11`.
pub fn reduce_final_two_last() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "s5");
    s.cell(1, 0);
    s.glue(1, 1, Side::West, "m3");
    s.glue(1, 1, Side::South, "o");
    s.cell(1, 1);
    s
}

// ---------------------------------------------------------------------
// Placement table
// ---------------------------------------------------------------------

/// Where each kit piece lands, relative to a section origin (the base-row
/// west tile of section `k` at `(7k, 0)` in tape frame). These offsets are
/// the single source of truth for both the figure scenes and the compiled
/// pipeline script.
pub mod offsets {
    use crate::geom::Pos;

    // Overlay (per section k at X = 7k).
    pub const JUNCTION: Pos = Pos::new(5, -2);
    pub const INFO_COVER: Pos = Pos::new(2, -2);
    pub const COVER_EAST: Pos = Pos::new(1, -2); // 2-tall: rows -2,-3
    pub const COVER_WEST: Pos = Pos::new(0, -2);
    pub const END_COVER: Pos = Pos::new(5, -2);
    pub const ANCHOR: Pos = Pos::new(6, 0);

    // Read complex.
    pub const READ: Pos = Pos::new(0, 0);
    pub const READ_HELPER_A: Pos = Pos::new(3, -3);
    pub const READ_HELPER_B: Pos = Pos::new(4, -3);
    pub const INFO_READ: Pos = Pos::new(0, -5);
    pub const READ_HELPER_PEN: Pos = Pos::new(4, -4);
    pub const READ_HELPER_FINAL: Pos = Pos::new(0, -6);

    // Walk hop from the read station of section k onto section k+1.
    pub const WALKER: Pos = Pos::new(6, -3);
    pub const INFO_BAR: Pos = Pos::new(8, -4);
    pub const WALK_HELPER_ONE: Pos = Pos::new(12, -3);
    pub const WALK_HELPER_TWO: Pos = Pos::new(8, -6);

    // Reduction kit.
    pub const REDUCER: Pos = Pos::new(4, -4);
    pub const REDUCE_HELPER_ONE: Pos = Pos::new(4, -5);
    pub const REDUCE_HELPER_TWO: Pos = Pos::new(6, -4);
    pub const REDUCE_FILLER: Pos = Pos::new(5, -6);
    pub const REDUCE_FINAL_ONE: Pos = Pos::new(6, -3);
    pub const REDUCE_FINAL_TWO: Pos = Pos::new(7, -4);
}
