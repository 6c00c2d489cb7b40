//! Path-side kits: slab blocks, extension gadgets, and path couriers.
//!
//! The path is built from 4x4 blocks in the same horizontal band as the
//! tape (rows -3..=0 heading east; other headings are quarter-turn
//! rotations of the whole kit). One extension deposits a three-block slab
//! `[K1][K2][K3]`: K1 docks the previous end block (`X+H1`), K2 follows
//! (`p2+H2`), the kit detaches, and K3 completes the slab (`P2+P2`).
//!
//! K1 carries a notch at its north-west cell. The extension gadget's gate
//! dip fills the notch while it works, so a second extension can never
//! start anywhere but at the open end of the path: everywhere else the
//! notch position is already capped. A cap tile closes the notch after
//! the kit departs (`x1+X`).
//!
//! Information moves along the path as a relay of bars: a courier gadget
//! grips the resting bar, a fresh bar binds ahead of it, the repulsive
//! contacts sever first the old bar and then the courier itself. The
//! tape-side walk figures carry the published strength arithmetic; the
//! courier reactions are this library's own, with every step still a
//! plain two-handed reaction at temperature 10.

use crate::geom::Side;
use crate::gadgets::sketch::Sketch;
use crate::gadgets::tape::Instruction;

/// Block edge length.
pub const BLOCK: i32 = 4;
/// Slab length in tiles (three blocks).
pub const SLAB_LEN: i32 = 12;

/// First block of a slab: 4x4 minus the north-west notch cell. Attaches
/// `X+H1 = 10` against the extension gadget's gate dip and the previous
/// end block.
pub fn block_k1() -> Sketch {
    let mut s = Sketch::new();
    for x in 0..4 {
        for y in -3..=0 {
            if (x, y) != (0, -3) {
                s.cell(x, y);
            }
        }
    }
    s.glue(0, 0, Side::West, "H1");
    s.glue(0, -2, Side::North, "X"); // gate dip dock, later the cap dock
    s.glue(1, -3, Side::West, "x1"); // notch cap dock
    s.glue(1, -3, Side::North, "J1"); // courier dip dock
    s.glue(2, -3, Side::North, "G1"); // fill dock
    s.glue(3, -3, Side::North, "G1"); // fill dock
    s.glue(3, 0, Side::East, "H2");
    s.glue(1, 0, Side::South, "G3");
    s.glue(2, 0, Side::South, "G3");
    s
}

/// Cap tile closing the K1 notch. Attaches `x1+X = 10`.
pub fn notch_cap() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::East, "x1");
    s.glue(0, 0, Side::South, "X");
    s.glue(0, 0, Side::North, "G1"); // fill dock
    s
}

/// Middle block. Attaches `p2+H2 = 10` (extension underside, K1 east).
pub fn block_k2() -> Sketch {
    let mut s = Sketch::new();
    for x in 0..4 {
        for y in -3..=0 {
            s.cell(x, y);
        }
    }
    s.glue(0, 0, Side::West, "H2");
    s.glue(0, -1, Side::West, "P1"); // turn-block dock (rotated legs)
    s.glue(0, -3, Side::North, "p2"); // extension underside dock
    s.glue(1, -3, Side::North, "D"); // second extension helper target
    s.glue(2, -3, Side::North, "X"); // station bar dock
    s.glue(3, -3, Side::North, "G1"); // station bar dock / fill dock
    s.glue(3, 0, Side::East, "P2");
    s.glue(3, -3, Side::East, "P2");
    s.glue(1, 0, Side::South, "G3");
    s.glue(2, 0, Side::South, "G3");
    s
}

/// End block, the second half that completes a slab after the kit
/// departs (`P2+P2 = 18`). Its east face carries the uniform path-end
/// profile, its tops the extension dock and fill docks.
pub fn block_k3() -> Sketch {
    let mut s = Sketch::new();
    for x in 0..4 {
        for y in -3..=0 {
            s.cell(x, y);
        }
    }
    s.glue(0, 0, Side::West, "P2");
    s.glue(0, -3, Side::West, "P2");
    s.glue(0, -3, Side::North, "G1"); // fill dock
    s.glue(1, -3, Side::North, "G1"); // fill dock
    s.glue(2, -3, Side::North, "p"); // extension grip dock
    s.glue(3, -3, Side::North, "H1"); // left-turn block dock
    s.glue(3, 0, Side::East, "H1"); // next slab's K1 dock
    s.glue(0, 0, Side::South, "H1"); // right-turn block dock
    s.glue(1, 0, Side::South, "G3");
    s.glue(2, 0, Side::South, "G3");
    s
}

/// A path information bar: rests on the K2 tops (`X`, `G1`), binds the
/// courier that delivered it (`F`, `O2`, `D`), and presents the grips the
/// next courier or the extension gadget uses. The instruction face on
/// top is what makes an extension direction-specific.
pub fn path_bar(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    for x in 0..4 {
        s.cell(x, 0);
    }
    s.glue(0, 0, Side::West, fam); // courier east dock
    s.glue(0, 0, Side::North, "O2"); // courier overhang dock
    s.glue(0, 0, Side::South, "X"); // K2 c2 top
    s.glue(1, 0, Side::South, "G1"); // K2 c3 top
    s.glue(1, 0, Side::North, "D"); // trigger destabilizer seat
    s.glue(2, 0, Side::North, fam); // extension F dock
    s.glue(3, 0, Side::North, "C"); // extension C dock
    s.glue(3, 0, Side::East, "B"); // courier grip / extension B dock
    s
}

/// The path courier for one instruction: grips the resting bar (`B`),
/// dips onto the next slab's K1 (`J1`), and hosts the fresh bar at its
/// east end. Attaches `B+J1 = 11`. Once the trigger severs the old bar,
/// the fresh bar's own `D` contact releases the courier and trigger
/// together (`J1+F+O2+D = 9`).
///
/// Local origin: the grip cell (west face `B`), one row above the bar.
pub fn path_courier(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    // Seat arm over the old bar; the trigger tile binds these faces.
    s.cell(0, -1);
    s.cell(-1, -1);
    s.glue(-2, -1, Side::West, "Z5");
    s.glue(-2, -1, Side::North, "Z6");
    // Bridge east, dipping J1 onto the next slab's K1.
    for x in 1..=7 {
        s.cell(x, 0);
    }
    s.glue(3, 0, Side::South, "J1");
    s.glue(7, 0, Side::East, fam); // fresh bar west dock
    // Overhang hosting the fresh bar and its release contact.
    s.cell(7, -1);
    s.glue(8, -1, Side::South, "O2");
    s.glue(9, -1, Side::South, "D");
    s
}

/// The trigger tile that severs a spent path bar: wedges between the
/// courier's seat faces and presses its repulsive `D` onto the bar.
/// Attaches `Z2+Z2+D = 11`.
pub fn path_trigger() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "D");
    s.glue(0, 0, Side::East, "Z5");
    s.cell(0, -1);
    s.glue(1, -1, Side::South, "Z6");
    s
}

/// The forward extension gadget at a path station. Docks the station
/// (`B`, `C`, `F` on the bar, `p` on the end block top), fills the next
/// K1 notch with its gate dip, and carries the block and helper docks on
/// its arm. Attaches `B+C+F+p = 10`.
///
/// Local origin: the grip cell (west face `B`, south face `p`).
pub fn extend_forward(inst: Instruction) -> Sketch {
    let fam = inst.family();
    let mut s = Sketch::new();
    s.glue(0, 0, Side::West, "B");
    s.glue(0, 0, Side::South, "p");
    s.cell(0, -1);
    s.glue(-1, -1, Side::South, "C");
    s.glue(-2, -1, Side::South, fam);
    // Arm east over the new slab at the bar row.
    for x in 1..=6 {
        s.cell(x, 0);
    }
    s.glue(2, 1, Side::South, "X"); // gate dip into the K1 notch
    s.cell(2, 1);
    s.glue(3, 0, Side::North, "O3"); // helper one dock
    s.glue(4, 0, Side::North, "V1"); // helper one dock
    s.glue(5, 0, Side::North, "O5"); // helper two counterweight
    s.glue(6, 0, Side::South, "p2"); // K2 dock
    s
}

/// First extension helper. Attaches `O3+V1 = 16` onto the gadget arm.
pub fn extend_helper_one() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "O3");
    s.glue(1, 0, Side::South, "V1");
    s.glue(0, 0, Side::North, "V0");
    s.glue(1, 0, Side::North, "V0");
    s
}

/// Second extension helper: rides the first, leans on the arm (`O5`),
/// and presses its repulsive `D` onto the new K2 top, severing the spent
/// kit. Attaches `V0+V0 (+O5-D) = 18`.
pub fn extend_helper_two() -> Sketch {
    let mut s = Sketch::new();
    s.glue(0, 0, Side::South, "V0");
    s.glue(1, 0, Side::South, "V0");
    s.cell(2, 0);
    s.glue(2, 1, Side::South, "O5");
    s.cell(3, 1);
    s.cell(4, 1);
    s.glue(4, 2, Side::South, "D");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_have_expected_sizes() {
        assert_eq!(block_k1().len(), 15);
        assert_eq!(block_k2().len(), 16);
        assert_eq!(block_k3().len(), 16);
    }
}
