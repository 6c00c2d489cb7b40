//! Turn kits: the gadgets that extend the path left or right, and the
//! corner couriers that carry information around a finished turn.
//!
//! All pieces here are authored in the frame of the leg being left
//! (heading east); the driver rotates whole kits for other headings. A
//! left turn continues north, a right turn south. Right turns mirror the
//! forward kit almost exactly (the new first block hangs below the band,
//! clear of the station); left turns build top-down — the far blocks
//! arrive on the spent kit's scaffold and the near block docks last,
//! into the cells the departing station vacates.

use crate::gadgets::sketch::Sketch;
use crate::gadgets::tape::Instruction;
use crate::geom::Side;

/// Left-turn extension gadget. Docks the station like the forward
/// gadget (`B+C+L+p = 10`) and carries the near-block dock on its back.
pub fn extend_left_gadget(inst: Instruction) -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    s.glue(0, 0, Side::South, "p");
    s.glue(0, -1, Side::North, "p3"); // near block dock
    s.glue(-1, -1, Side::South, "C");
    s.glue(-2, -1, Side::South, inst.family());
    s.glue(-3, -1, Side::West, "O3"); // helper dock
    s
}

/// The near block of a left turn: the first block of the northward slab
/// minus the six cells the station and gadget still occupy; the cap
/// closes those after the kit departs. Attaches `H1+p3 = 10`.
/// Authored at the block's north-west corner (local y grows south).
pub fn block_left_near() -> Sketch {
    let mut s = Sketch::new();
    for x in 0..4 {
        for y in 0..2 {
            s.cell(x, y);
        }
    }
    s.cell(3, 2);
    s.cell(3, 3);
    // Docks: the path top and the spent gadget's back.
    s.glue(3, 3, Side::South, "H1");
    s.glue(2, 1, Side::South, "p3");
    // Release face for the turn helper.
    s.glue(0, 1, Side::West, "D");
    // Cap docks (close the vacated station cells).
    s.glue(0, 1, Side::South, "x3");
    s.glue(1, 1, Side::South, "x4");
    // Ledge for the rotated middle block.
    s.glue(3, 0, Side::North, "H2");
    s.glue(2, 0, Side::North, "P1");
    // Corner courier dip dock.
    s.glue(3, 2, Side::East, "J1");
    // Fill dock on the west flank.
    s.glue(0, 0, Side::West, "G1");
    s
}

/// Cap for the left turn: the six cells the station and gadget vacate.
/// Attaches `x3+x4+p3+G1 = 26` against the near block and the path.
pub fn cap_left() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::North, "x3");
    s.glue(1, 0, Side::North, "x4");
    s.glue(2, 0, Side::North, "p3");
    s.glue(0, 1, Side::South, "G1");
    s.cell(1, 1);
    s.cell(2, 1);
    s
}

/// Left-turn helper one: rebinds the gadget and the spent bar.
/// Attaches `O3+O2 = 14`.
pub fn left_helper_one() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::East, "O3");
    s.glue(0, 0, Side::South, "O2");
    s.glue(0, 0, Side::West, "V0");
    s.glue(0, 0, Side::North, "V0");
    s
}

/// Left-turn helper two: rides helper one and presses `D` onto the near
/// block, severing the spent kit. Attaches `V0+V0+D = 11`.
pub fn left_helper_two() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::East, "V0");
    s.cell(0, -1);
    s.glue(1, -1, Side::South, "V0");
    s.cell(2, -1);
    s.glue(2, -1, Side::East, "D");
    s
}

/// Right-turn extension gadget: station docks plus the arm that scaffolds
/// the southward slab. Attaches `B+C+R+p = 10`.
pub fn extend_right_gadget(inst: Instruction) -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    s.glue(0, 0, Side::South, "p");
    s.cell(0, -1);
    s.glue(-1, -1, Side::South, "C");
    s.glue(-2, -1, Side::South, inst.family());
    s.cell(-3, -1);
    // Arm east then south along the outside of the turn. Local y grows
    // southward here (same frame as the band).
    s.cell(1, 0);
    for y in 0..=9 {
        s.cell(2, y);
    }
    s.glue(1, 5, Side::West, "X"); // gate dip into the south block notch
    s.cell(1, 5);
    s.glue(2, 3, Side::East, "O3");
    s.glue(2, 4, Side::East, "V1");
    s.glue(2, 9, Side::West, "p2"); // middle block dock
    s
}

/// Right-turn helper one: binds the gadget arm's east side.
/// Attaches `O3+V1 = 16`.
pub fn right_helper_one() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "O3");
    s.glue(0, 1, Side::West, "V1");
    s.glue(0, 0, Side::East, "V0");
    s.glue(0, 1, Side::East, "V0");
    s
}

/// Right-turn helper two: rides helper one and runs down the outside of
/// the turn to press `D` onto the middle block. Attaches `V0+V0+D = 11`.
pub fn right_helper_two() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "V0");
    s.glue(0, 1, Side::West, "V0");
    for y in 2..=7 {
        s.cell(0, y);
    }
    s.cell(-1, 7);
    s.glue(-2, 7, Side::West, "D");
    s.cell(-2, 7);
    s
}

/// Straight corner courier for a right turn: grips the pre-turn station
/// bar, dips onto the turn slab's first block, and hosts the rotated bar
/// along the southward leg. Attaches `B+J1 = 11`.
pub fn corner_courier_right(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    s.cell(0, -1);
    s.cell(-1, -1);
    s.glue(-2, -1, Side::West, "Z5");
    s.glue(-2, -1, Side::North, "Z6");
    s.cell(1, 0);
    for y in 0..=10 {
        s.cell(2, y);
    }
    s.glue(2, 6, Side::West, "J1");
    s.glue(2, 10, Side::South, fam);
    s.cell(3, 10);
    s.glue(3, 11, Side::West, "O2");
    s.cell(3, 11);
    s.glue(3, 12, Side::West, "D");
    s.cell(3, 12);
    s
}

/// Corner courier for a left turn: routes over the finished turn slab to
/// host the rotated bar on its west side. Attaches `B+J1 = 11`.
pub fn corner_courier_left(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    s.cell(0, -1);
    s.cell(-1, -1);
    s.glue(-2, -1, Side::West, "Z5");
    s.glue(-2, -1, Side::North, "Z6");
    s.cell(1, 0);
    s.cell(2, 0);
    s.glue(2, -1, Side::West, "J1");
    s.cell(2, -1);
    // Climb the outside of the turn and cross over the slab.
    for y in -12..=-2 {
        s.cell(2, y);
    }
    for x in -4..=1 {
        s.cell(x, -12);
    }
    for y in -11..=-5 {
        s.cell(-4, y);
    }
    s.glue(-3, -5, Side::North, fam);
    s.cell(-3, -5);
    s.glue(-4, -6, Side::East, "O2");
    s.glue(-4, -7, Side::East, "D");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turn_pieces_build() {
        assert!(extend_left_gadget(Instruction::Left).len() >= 5);
        assert_eq!(block_left_near().len(), 11);
        assert!(corner_courier_left(Instruction::Forward).len() > 20);
    }
}
