//! Tiles, positioned assemblies, translation-free assemblies, and shapes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{Pos, Side, SIDES};
use crate::glue::{GlueError, GlueLabel, StrengthTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("empty assembly")]
    EmptyAssembly,
    #[error("scale factor must be at least 1")]
    InvalidScale,
    #[error("tile already present at {0}")]
    Occupied(Pos),
    #[error(transparent)]
    Glue(#[from] GlueError),
}

/// An axis-aligned unit square with a glue on each side. Tiles that carry
/// the same glues are the same type; assemblies share them via `Arc`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    glues: [Option<GlueLabel>; 4],
}

impl Tile {
    pub fn new(
        north: Option<GlueLabel>,
        east: Option<GlueLabel>,
        south: Option<GlueLabel>,
        west: Option<GlueLabel>,
    ) -> Arc<Tile> {
        Arc::new(Tile {
            glues: [north, east, south, west],
        })
    }

    pub fn glue(&self, side: Side) -> Option<&GlueLabel> {
        self.glues[side.index()].as_ref()
    }

    pub fn glues(&self) -> impl Iterator<Item = (Side, &GlueLabel)> {
        SIDES
            .into_iter()
            .filter_map(|s| self.glues[s.index()].as_ref().map(|g| (s, g)))
    }
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tile[")?;
        for (i, s) in SIDES.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.glue(*s) {
                Some(g) => write!(f, "{g}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}

/// A set of tiles at unique coordinates.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PositionedAssembly {
    tiles: BTreeMap<Pos, Arc<Tile>>,
}

impl PositionedAssembly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place(&mut self, pos: Pos, tile: Arc<Tile>) -> Result<(), AssemblyError> {
        if self.tiles.contains_key(&pos) {
            return Err(AssemblyError::Occupied(pos));
        }
        self.tiles.insert(pos, tile);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile_at(&self, pos: Pos) -> Option<&Arc<Tile>> {
        self.tiles.get(&pos)
    }

    pub fn contains(&self, pos: Pos) -> bool {
        self.tiles.contains_key(&pos)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pos, &Arc<Tile>)> {
        self.tiles.iter().map(|(p, t)| (*p, t))
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        self.tiles.keys().copied()
    }

    pub fn translate(&self, v: Pos) -> PositionedAssembly {
        PositionedAssembly {
            tiles: self.tiles.iter().map(|(p, t)| (*p + v, t.clone())).collect(),
        }
    }

    /// Row-major lexicographically minimal occupied coordinate.
    pub fn min_pos(&self) -> Option<Pos> {
        self.tiles.keys().next().copied()
    }

    /// The glue presented by the tile at `pos` toward `side`, if any.
    pub fn glue_at(&self, pos: Pos, side: Side) -> Option<&GlueLabel> {
        self.tiles.get(&pos).and_then(|t| t.glue(side))
    }

    /// Whether the occupied cells form one 4-connected component. An empty
    /// assembly is not considered connected.
    pub fn is_contiguous(&self) -> bool {
        let Some(&start) = self.tiles.keys().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for n in p.neighbors() {
                if self.tiles.contains_key(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.tiles.len()
    }

    /// Whether every pair of tiles is joined by a path of strictly positive
    /// bonds (the model's notion of a connected assembly).
    pub fn is_connected(&self, strengths: &StrengthTable) -> Result<bool, GlueError> {
        let Some(&start) = self.tiles.keys().next() else {
            return Ok(false);
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for side in SIDES {
                let n = p.neighbor(side);
                if seen.contains(&n) {
                    continue;
                }
                if !self.tiles.contains_key(&n) {
                    continue;
                }
                let w = strengths.bond(self.glue_at(p, side), self.glue_at(n, side.opposite()))?;
                if w > 0 {
                    seen.insert(n);
                    queue.push_back(n);
                }
            }
        }
        Ok(seen.len() == self.tiles.len())
    }

    /// Union of two non-overlapping positioned assemblies.
    pub fn union(&self, other: &PositionedAssembly) -> Result<PositionedAssembly, AssemblyError> {
        let mut out = self.clone();
        for (p, t) in other.iter() {
            out.place(p, t.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Debug for PositionedAssembly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PositionedAssembly({} tiles)", self.len())
    }
}

/// Translation-free assembly: a positioned assembly normalized so its
/// row-major minimal coordinate sits at the origin.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly {
    tiles: Vec<(Pos, Arc<Tile>)>,
}

impl Assembly {
    /// Canonicalize a positioned assembly. Errors on empty input.
    pub fn canonicalize(a: &PositionedAssembly) -> Result<Assembly, AssemblyError> {
        let min = a.min_pos().ok_or(AssemblyError::EmptyAssembly)?;
        let shifted = a.translate(Pos::new(-min.x, -min.y));
        Ok(Assembly {
            tiles: shifted.iter().map(|(p, t)| (p, t.clone())).collect(),
        })
    }

    pub fn from_positioned(a: PositionedAssembly) -> Result<Assembly, AssemblyError> {
        Self::canonicalize(&a)
    }

    pub fn single(tile: Arc<Tile>) -> Assembly {
        Assembly {
            tiles: vec![(Pos::new(0, 0), tile)],
        }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// A positioned representative with the canonical placement.
    pub fn positioned(&self) -> PositionedAssembly {
        PositionedAssembly {
            tiles: self.tiles.iter().cloned().collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pos, &Arc<Tile>)> {
        self.tiles.iter().map(|(p, t)| (*p, t))
    }

    /// The shape: canonical set of occupied coordinates.
    pub fn shape(&self) -> Shape {
        Shape::canonical(self.tiles.iter().map(|(p, _)| *p))
    }
}

impl fmt::Debug for Assembly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assembly({} tiles)", self.len())
    }
}

/// A translation-free set of grid cells, canonicalized the same way as
/// assemblies.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Shape {
    cells: BTreeSet<Pos>,
}

impl Shape {
    pub fn canonical(cells: impl IntoIterator<Item = Pos>) -> Shape {
        let raw: BTreeSet<Pos> = cells.into_iter().collect();
        let Some(&min) = raw.iter().next() else {
            return Shape::default();
        };
        Shape {
            cells: raw
                .into_iter()
                .map(|p| Pos::new(p.x - min.x, p.y - min.y))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = Pos> + '_ {
        self.cells.iter().copied()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.cells.contains(&p)
    }

    pub fn is_contiguous(&self) -> bool {
        let Some(&start) = self.cells.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for n in p.neighbors() {
                if self.cells.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// Replace each cell by a `c`-by-`c` block.
    pub fn scale(&self, c: u32) -> Result<Shape, AssemblyError> {
        if c == 0 {
            return Err(AssemblyError::InvalidScale);
        }
        let c = c as i32;
        let mut cells = BTreeSet::new();
        for p in self.cells() {
            for dy in 0..c {
                for dx in 0..c {
                    cells.insert(Pos::new(p.x * c + dx, p.y * c + dy));
                }
            }
        }
        Ok(Shape::canonical(cells))
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({} cells)", self.len())
    }
}

/// The weighted grid graph over an assembly's tiles: one edge per adjacent
/// tile pair, weighted by the matching-glue strength (0 when the facing
/// glue names differ).
#[derive(Clone, Debug)]
pub struct BondGraph {
    edges: BTreeMap<(Pos, Pos), i64>,
}

impl BondGraph {
    /// Builds the bond graph of a positioned assembly.
    pub fn build(a: &PositionedAssembly, strengths: &StrengthTable) -> Result<BondGraph, GlueError> {
        let mut edges = BTreeMap::new();
        for (p, tile) in a.iter() {
            for side in [Side::East, Side::South] {
                let q = p.neighbor(side);
                if let Some(other) = a.tile_at(q) {
                    let w = strengths.bond(tile.glue(side), other.glue(side.opposite()))?;
                    edges.insert((p, q), w);
                }
            }
        }
        Ok(BondGraph { edges })
    }

    pub fn edges(&self) -> impl Iterator<Item = (Pos, Pos, i64)> + '_ {
        self.edges.iter().map(|(&(p, q), &w)| (p, q, w))
    }

    /// Edge weight between two adjacent positions, symmetric in its
    /// arguments. `None` when the cells are not an adjacent occupied pair.
    pub fn weight(&self, p: Pos, q: Pos) -> Option<i64> {
        self.edges
            .get(&(p, q))
            .or_else(|| self.edges.get(&(q, p)))
            .copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn glue(n: &str) -> Option<GlueLabel> {
        Some(GlueLabel::new(n))
    }

    #[test]
    fn canonicalize_moves_min_to_origin() {
        let t = Tile::new(None, None, None, None);
        let mut a = PositionedAssembly::new();
        a.place(Pos::new(5, 7), t).unwrap();
        let c = Assembly::canonicalize(&a).unwrap();
        assert_eq!(c.iter().next().unwrap().0, Pos::new(0, 0));
    }

    #[test]
    fn canonicalize_is_idempotent_and_translation_invariant() {
        let t = Tile::new(glue("a"), None, None, None);
        let mut a = PositionedAssembly::new();
        a.place(Pos::new(2, 1), t.clone()).unwrap();
        a.place(Pos::new(3, 1), t.clone()).unwrap();
        a.place(Pos::new(2, 2), t).unwrap();
        let c1 = Assembly::canonicalize(&a).unwrap();
        let c2 = Assembly::canonicalize(&a.translate(Pos::new(-9, 4))).unwrap();
        assert_eq!(c1, c2);
        let c3 = Assembly::canonicalize(&c1.positioned()).unwrap();
        assert_eq!(c1, c3);
    }

    #[test]
    fn empty_assembly_is_an_error() {
        let a = PositionedAssembly::new();
        assert_eq!(
            Assembly::canonicalize(&a).unwrap_err(),
            AssemblyError::EmptyAssembly
        );
    }

    #[test]
    fn bond_graph_weights_and_symmetry() {
        let strengths = StrengthTable::from_pairs([("Z", 2), ("N", -1)]);
        let left = Tile::new(None, glue("Z"), None, None);
        let right = Tile::new(None, None, None, glue("Z"));
        let below = Tile::new(glue("N"), None, None, None);
        let mut a = PositionedAssembly::new();
        a.place(Pos::new(0, 0), left).unwrap();
        a.place(Pos::new(1, 0), right).unwrap();
        a.place(Pos::new(0, 1), below).unwrap();
        let g = BondGraph::build(&a, &strengths).unwrap();
        assert_eq!(g.weight(Pos::new(0, 0), Pos::new(1, 0)), Some(2));
        assert_eq!(g.weight(Pos::new(1, 0), Pos::new(0, 0)), Some(2));
        // mismatched names: edge exists with zero weight
        assert_eq!(g.weight(Pos::new(0, 0), Pos::new(0, 1)), Some(0));
        assert_eq!(g.weight(Pos::new(0, 0), Pos::new(5, 5)), None);
    }

    #[test]
    fn scale_squares_cell_count() {
        let sh = Shape::canonical([Pos::new(0, 0), Pos::new(1, 0)]);
        let s2 = sh.scale(2).unwrap();
        assert_eq!(s2.len(), 8);
        assert!(sh.scale(0).is_err());
        let one = Shape::canonical([Pos::new(4, 4)]);
        let sq = one.scale(2).unwrap();
        assert_eq!(sq.len(), 4);
        assert!(sq.contains(Pos::new(1, 1)));
    }

    #[test]
    fn scale_composes() {
        let sh = Shape::canonical([Pos::new(0, 0), Pos::new(1, 0), Pos::new(1, 1)]);
        assert_eq!(
            sh.scale(2).unwrap().scale(3).unwrap(),
            sh.scale(6).unwrap()
        );
    }
}
