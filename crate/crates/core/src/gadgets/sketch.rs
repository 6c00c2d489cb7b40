//! Small builder for authoring gadget geometry.
//!
//! A sketch places tiles by coordinate with explicit finite glues, then
//! wires the body together with unique infinite bonds along a spanning
//! tree so the finished assembly can never be cut below temperature
//! through its interior.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::assembly::{Assembly, PositionedAssembly, Tile};
use crate::geom::{Pos, Side, SIDES};
use crate::glue::GlueLabel;

/// Glue assignments for one tile of a sketch, keyed by side.
#[derive(Clone, Debug, Default)]
struct Slot {
    glues: [Option<GlueLabel>; 4],
}

/// An in-progress gadget drawing.
#[derive(Clone, Debug, Default)]
pub struct Sketch {
    cells: BTreeMap<Pos, Slot>,
    /// Pairs wired with an explicit infinite bond instead of the
    /// automatic spanning tree.
    welds: BTreeSet<(Pos, Pos)>,
    infinite_counter: u32,
}

impl Sketch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a tile with no glues.
    pub fn cell(&mut self, x: i32, y: i32) -> &mut Self {
        self.cells.entry(Pos::new(x, y)).or_default();
        self
    }

    /// Adds (or extends) a tile and sets one finite glue.
    pub fn glue(&mut self, x: i32, y: i32, side: Side, label: &str) -> &mut Self {
        let slot = self.cells.entry(Pos::new(x, y)).or_default();
        debug_assert!(
            slot.glues[side.index()].is_none(),
            "glue already set at ({x},{y}) {side}"
        );
        slot.glues[side.index()] = Some(GlueLabel::new(label));
        self
    }

    /// Marks an explicit infinite bond between two adjacent cells.
    pub fn weld(&mut self, a: Pos, b: Pos) -> &mut Self {
        assert!(a.neighbors().contains(&b), "weld cells must be adjacent");
        self.cell(a.x, a.y).cell(b.x, b.y);
        let key = if a <= b { (a, b) } else { (b, a) };
        self.welds.insert(key);
        self
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.cells.contains_key(&p)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Finishes the sketch: welds a spanning tree of infinite bonds over
    /// the (4-connected) body, applies explicit welds, and returns the
    /// positioned assembly. `tag` salts the infinite bond names so
    /// distinct gadget types can never weld to each other.
    pub fn build_positioned(mut self, tag: &str) -> PositionedAssembly {
        assert!(!self.cells.is_empty(), "empty sketch");
        // Spanning tree over the cells; the sketch must be 4-connected.
        let positions: Vec<Pos> = self.cells.keys().copied().collect();
        let start = positions[0];
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        let mut tree: Vec<(Pos, Pos)> = Vec::new();
        // Only faces free of finite glues may carry a weld.
        let free = |a: Pos, b: Pos| {
            let side = SIDES.into_iter().find(|s| a.neighbor(*s) == b).unwrap();
            self.cells[&a].glues[side.index()].is_none()
                && self.cells[&b].glues[side.opposite().index()].is_none()
        };
        while let Some(p) = queue.pop_front() {
            for n in p.neighbors() {
                if self.cells.contains_key(&n) && !seen.contains(&n) && free(p, n) {
                    seen.insert(n);
                    tree.push((p, n));
                    queue.push_back(n);
                }
            }
        }
        assert_eq!(
            seen.len(),
            self.cells.len(),
            "sketch {tag:?} is not 4-connected"
        );
        for (a, b) in tree {
            let key = if a <= b { (a, b) } else { (b, a) };
            self.welds.insert(key);
        }

        let welds = std::mem::take(&mut self.welds);
        for (a, b) in welds {
            let name = format!("{}~{}", tag, self.infinite_counter);
            self.infinite_counter += 1;
            let side = SIDES
                .into_iter()
                .find(|s| a.neighbor(*s) == b)
                .expect("weld cells adjacent");
            let label = GlueLabel::infinite(&name);
            let slot_a = self.cells.get_mut(&a).unwrap();
            assert!(
                slot_a.glues[side.index()].is_none(),
                "weld overwrites glue at {a:?} {side} in {tag:?}"
            );
            slot_a.glues[side.index()] = Some(label.clone());
            let slot_b = self.cells.get_mut(&b).unwrap();
            assert!(
                slot_b.glues[side.opposite().index()].is_none(),
                "weld overwrites glue at {b:?} in {tag:?}"
            );
            slot_b.glues[side.opposite().index()] = Some(label);
        }

        let mut out = PositionedAssembly::new();
        for (pos, slot) in self.cells {
            let [n, e, s, w] = slot.glues;
            out.place(pos, Tile::new(n, e, s, w)).unwrap();
        }
        out
    }

    pub fn build(self, tag: &str) -> Assembly {
        Assembly::canonicalize(&self.build_positioned(tag)).unwrap()
    }
}

/// Rotates a positioned assembly a quarter turn to the left (heading east
/// becomes heading north on a y-down grid), renaming nothing: glue labels
/// travel with their sides. `(x, y) -> (y, -x)`.
pub fn rotate_left(a: &PositionedAssembly) -> PositionedAssembly {
    transform(a, |p| Pos::new(p.y, -p.x), Side::left)
}

/// Rotates a quarter turn to the right: `(x, y) -> (-y, x)`.
pub fn rotate_right(a: &PositionedAssembly) -> PositionedAssembly {
    transform(a, |p| Pos::new(-p.y, p.x), Side::right)
}

fn transform(
    a: &PositionedAssembly,
    map: impl Fn(Pos) -> Pos,
    turn: impl Fn(Side) -> Side,
) -> PositionedAssembly {
    let mut out = PositionedAssembly::new();
    for (p, tile) in a.iter() {
        let mut glues: [Option<GlueLabel>; 4] = [None, None, None, None];
        for (side, g) in tile.glues() {
            glues[turn(side).index()] = Some(g.clone());
        }
        let [n, e, s, w] = glues;
        out.place(map(p), Tile::new(n, e, s, w)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{is_tau_stable, CutBounds};
    use crate::glue::StrengthTable;

    #[test]
    fn sketch_builds_a_stable_body() {
        let mut s = Sketch::new();
        s.cell(0, 0).cell(1, 0).cell(1, 1).cell(2, 1);
        s.glue(0, 0, Side::West, "a");
        let asm = s.build_positioned("t");
        assert_eq!(asm.len(), 4);
        let verdict = is_tau_stable(&asm, &StrengthTable::new(), 10, &CutBounds::default()).unwrap();
        assert!(verdict.stable);
    }

    #[test]
    fn rotation_moves_glues_with_their_sides() {
        let mut s = Sketch::new();
        s.glue(0, 0, Side::East, "a");
        let asm = s.build_positioned("t");
        let rot = rotate_left(&asm);
        // heading east -> north: the east glue now faces north.
        let (p, tile) = rot.iter().next().unwrap();
        assert_eq!(p, Pos::new(0, 0));
        assert_eq!(tile.glue(Side::North).unwrap().name(), "a");
        assert!(tile.glue(Side::East).is_none());
    }

    #[test]
    fn four_left_rotations_are_identity() {
        let mut s = Sketch::new();
        s.glue(0, 0, Side::West, "a").glue(2, 1, Side::South, "b");
        s.cell(1, 0).cell(1, 1).cell(2, 0);
        let asm = s.build_positioned("t");
        let r4 = rotate_left(&rotate_left(&rotate_left(&rotate_left(&asm))));
        let c0 = Assembly::canonicalize(&asm).unwrap();
        let c4 = Assembly::canonicalize(&r4).unwrap();
        assert_eq!(c0, c4);
    }
}
