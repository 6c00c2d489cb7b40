//! Fill kit: the 4x4 blocks that flood the buffer space around the
//! finished path, completing the scale-24 shape.
//!
//! A fill block binds the assembly through explicit dock faces: `G`-family
//! bonds onto slab faces (strength 8) and `Y`-family bonds chaining fill
//! blocks to each other (strength 9). Every attachment needs two docks to
//! reach the temperature, and blocks carry no glue on faces that would
//! point out of the shape, so runs terminate at the boundary by
//! construction: a lone dangling bond is below temperature.

use crate::geom::Side;
use crate::gadgets::sketch::Sketch;

/// A 4x4 fill block with the given dock glues. Each dock is
/// `(cell_x, cell_y, side, glue)` with cells in `0..4` of the block.
pub fn fill_block(docks: &[(i32, i32, Side, &str)]) -> Sketch {
    let mut s = Sketch::new();
    for x in 0..4 {
        for y in 0..4 {
            s.cell(x, y);
        }
    }
    for &(x, y, side, glue) in docks {
        s.glue(x, y, side, glue);
    }
    s
}

/// The fill initiator: the block that starts the flood, binding the
/// anchor block's underside. Attaches `H+I = 13`.
pub fn fill_initiator() -> Sketch {
    fill_block(&[
        (0, 0, Side::North, "H"),
        (1, 0, Side::North, "I"),
        (0, 0, Side::West, "Y2"),
        (3, 0, Side::East, "Y2"),
        (0, 3, Side::South, "Y3"),
        (3, 3, Side::South, "Y4"),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fill_blocks_are_full_blocks() {
        assert_eq!(fill_initiator().len(), 16);
        assert_eq!(fill_block(&[(0, 0, Side::West, "Y2")]).len(), 16);
    }
}
