//! Shape compiler: from a connected polyomino to the instruction
//! sequence, the tape assembly, and the complete system.
//!
//! The pipeline mirrors the construction's conceptual stages: a spanning
//! tree of the shape, the scale-2 perimeter path around it (a Hamiltonian
//! cycle of the doubled shape, built by fusing the four-cell ring of each
//! original cell along every tree edge), and the forward/left/right
//! instruction sequence that drives one path-pixel extension per move.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::assembly::Shape;
use crate::gadgets::tape::Instruction;
use crate::geom::{Pos, Side};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompileError {
    #[error("shape text contains no cells")]
    EmptyShape,
    #[error("shape is not 4-connected")]
    DisconnectedShape,
}

/// Parses the textual shape format: `#` marks a cell, `.` empty, row 0 at
/// the top; trailing whitespace ignored.
pub fn parse_shape(text: &str) -> Result<Shape, CompileError> {
    let mut cells = BTreeSet::new();
    for (y, line) in text.lines().enumerate() {
        for (x, ch) in line.trim_end().chars().enumerate() {
            if ch == '#' {
                cells.insert(Pos::new(x as i32, y as i32));
            }
        }
    }
    if cells.is_empty() {
        return Err(CompileError::EmptyShape);
    }
    let shape = Shape::canonical(cells);
    if !shape.is_contiguous() {
        return Err(CompileError::DisconnectedShape);
    }
    Ok(shape)
}

/// Serializes a shape back to text.
pub fn shape_text(shape: &Shape) -> String {
    let min_x = shape.cells().map(|p| p.x).min().unwrap_or(0);
    let max_x = shape.cells().map(|p| p.x).max().unwrap_or(0);
    let min_y = shape.cells().map(|p| p.y).min().unwrap_or(0);
    let max_y = shape.cells().map(|p| p.y).max().unwrap_or(0);
    let mut out = String::new();
    for y in min_y..=max_y {
        for x in min_x..=max_x {
            out.push(if shape.contains(Pos::new(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// A spanning tree over the shape's cells.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub nodes: Vec<Pos>,
    pub edges: BTreeSet<(Pos, Pos)>,
}

/// Depth-first spanning tree from the row-major smallest cell, visiting
/// neighbors in north, east, south, west order.
pub fn spanning_tree(shape: &Shape) -> SpanningTree {
    let cells: BTreeSet<Pos> = shape.cells().collect();
    let start = *cells.iter().next().expect("nonempty shape");
    let mut seen = BTreeSet::from([start]);
    let mut edges = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for side in [Side::North, Side::East, Side::South, Side::West] {
            let n = p.neighbor(side);
            if cells.contains(&n) && seen.insert(n) {
                let key = if p <= n { (p, n) } else { (n, p) };
                edges.insert(key);
                // Depth-first: dive into the newest neighbor immediately.
                stack.push(p);
                stack.push(n);
                break;
            }
        }
    }
    SpanningTree {
        nodes: cells.into_iter().collect(),
        edges,
    }
}

/// The scale-2 cycle around the spanning tree: starts at the doubled
/// shape's row-major smallest cell heading east and visits every scale-2
/// cell exactly once.
pub fn tree_cycle(shape: &Shape) -> Vec<Pos> {
    let tree = spanning_tree(shape);
    // Ring edges of each doubled cell.
    let mut edges: BTreeSet<(Pos, Pos)> = BTreeSet::new();
    let mut add = |a: Pos, b: Pos, edges: &mut BTreeSet<(Pos, Pos)>| {
        let key = if a <= b { (a, b) } else { (b, a) };
        edges.insert(key);
    };
    let mut del = |a: Pos, b: Pos, edges: &mut BTreeSet<(Pos, Pos)>| {
        let key = if a <= b { (a, b) } else { (b, a) };
        edges.remove(&key);
    };
    for c in shape.cells() {
        let (x, y) = (2 * c.x, 2 * c.y);
        let nw = Pos::new(x, y);
        let ne = Pos::new(x + 1, y);
        let sw = Pos::new(x, y + 1);
        let se = Pos::new(x + 1, y + 1);
        add(nw, ne, &mut edges);
        add(ne, se, &mut edges);
        add(se, sw, &mut edges);
        add(sw, nw, &mut edges);
    }
    // Fuse rings along each tree edge.
    for &(a, b) in &tree.edges {
        if a.x + 1 == b.x {
            // b east of a.
            let a_ne = Pos::new(2 * a.x + 1, 2 * a.y);
            let a_se = Pos::new(2 * a.x + 1, 2 * a.y + 1);
            let b_nw = Pos::new(2 * b.x, 2 * b.y);
            let b_sw = Pos::new(2 * b.x, 2 * b.y + 1);
            del(a_ne, a_se, &mut edges);
            del(b_nw, b_sw, &mut edges);
            add(a_ne, b_nw, &mut edges);
            add(a_se, b_sw, &mut edges);
        } else {
            // b south of a.
            let a_sw = Pos::new(2 * a.x, 2 * a.y + 1);
            let a_se = Pos::new(2 * a.x + 1, 2 * a.y + 1);
            let b_nw = Pos::new(2 * b.x, 2 * b.y);
            let b_ne = Pos::new(2 * b.x + 1, 2 * b.y);
            del(a_sw, a_se, &mut edges);
            del(b_nw, b_ne, &mut edges);
            add(a_sw, b_nw, &mut edges);
            add(a_se, b_ne, &mut edges);
        }
    }
    // Walk the cycle from the smallest doubled cell, east first.
    let mut adj: BTreeMap<Pos, Vec<Pos>> = BTreeMap::new();
    for &(a, b) in &edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let start = *adj.keys().next().expect("nonempty");
    debug_assert!(adj[&start].contains(&start.neighbor(Side::East)));
    let mut path = vec![start];
    let mut prev = start;
    let mut cur = start.neighbor(Side::East);
    while cur != start {
        path.push(cur);
        let next = adj[&cur]
            .iter()
            .copied()
            .find(|&n| n != prev)
            .expect("cycle degree 2");
        prev = cur;
        cur = next;
    }
    path
}

/// The instruction sequence: one move per scale-2 cell after the first,
/// expressed relative to the previous heading (initial heading east).
/// Also returns the per-move absolute headings.
pub fn tree_outline_instructions(shape: &Shape) -> (Vec<Instruction>, Vec<Side>, Vec<Pos>) {
    let cycle = tree_cycle(shape);
    let mut instructions = Vec::new();
    let mut headings = Vec::new();
    let mut prev_heading = Side::East;
    for i in 1..cycle.len() {
        let d = cycle[i] - cycle[i - 1];
        let heading = match (d.x, d.y) {
            (1, 0) => Side::East,
            (-1, 0) => Side::West,
            (0, 1) => Side::South,
            (0, -1) => Side::North,
            _ => unreachable!("cycle steps are unit moves"),
        };
        let inst = if heading == prev_heading {
            Instruction::Forward
        } else if heading == prev_heading.left() {
            Instruction::Left
        } else if heading == prev_heading.right() {
            Instruction::Right
        } else {
            unreachable!("cycle never reverses");
        };
        instructions.push(inst);
        headings.push(heading);
        prev_heading = heading;
    }
    (instructions, headings, cycle)
}

/// Arithmetic of the base-conversion stage: representing a `k`-bit
/// description in base `b = ceil(k / log2 k)` with
/// `d <= ceil(k / floor(log2 b))` digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseConversionPlan {
    pub k: u64,
    pub base: u64,
    pub digits: u64,
    pub tape_tiles: u64,
    pub tm_tiles: u64,
}

pub fn base_conversion_plan(k: u64) -> BaseConversionPlan {
    if k < 4 {
        return BaseConversionPlan {
            k,
            base: 2,
            digits: k,
            tape_tiles: k,
            tm_tiles: 0,
        };
    }
    let log2k = (k as f64).log2();
    let base = (k as f64 / log2k).ceil() as u64;
    let floor_log2_b = 63 - base.leading_zeros() as u64;
    let digits = k.div_ceil(floor_log2_b.max(1));
    // One distinct tile per digit position for the initial tape; the
    // conversion machine needs one rule set per symbol.
    BaseConversionPlan {
        k,
        base,
        digits,
        tape_tiles: digits,
        tm_tiles: base,
    }
}

/// Bits to encode a system of `tile_count` tiles at temperature `tau`:
/// four glues per tile from an index of at most `4*tile_count` glue
/// types, plus the temperature.
pub fn system_bit_encoding_size(tile_count: u64, tau: u64) -> u64 {
    fn ceil_log2(n: u64) -> u64 {
        if n <= 1 {
            return 0;
        }
        64 - (n - 1).leading_zeros() as u64
    }
    4 * tile_count * ceil_log2(4 * tile_count).max(1) + ceil_log2(tau + 1).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rejects_bad_shapes() {
        assert_eq!(parse_shape("...\n"), Err(CompileError::EmptyShape));
        assert_eq!(parse_shape("#.#"), Err(CompileError::DisconnectedShape));
        let sq = parse_shape("##\n##\n").unwrap();
        assert_eq!(sq.len(), 4);
    }

    #[test]
    fn spanning_tree_sizes() {
        let one = parse_shape("#").unwrap();
        assert_eq!(spanning_tree(&one).edges.len(), 0);
        let domino = parse_shape("##").unwrap();
        assert_eq!(spanning_tree(&domino).edges.len(), 1);
        let sq = parse_shape("##\n##").unwrap();
        let t = spanning_tree(&sq);
        assert_eq!(t.edges.len(), 3);
    }

    #[test]
    fn cycle_visits_every_doubled_cell_once() {
        for text in ["#", "##", "#.\n##", "##\n##", "###\n.#."] {
            let shape = parse_shape(text).unwrap();
            let cycle = tree_cycle(&shape);
            assert_eq!(cycle.len(), 4 * shape.len(), "{text}");
            let set: BTreeSet<Pos> = cycle.iter().copied().collect();
            assert_eq!(set.len(), cycle.len(), "{text}");
            assert_eq!(set, shape.scale(2).unwrap().cells().collect(), "{text}");
        }
    }

    #[test]
    fn single_cell_instructions() {
        let one = parse_shape("#").unwrap();
        let (instr, headings, cycle) = tree_outline_instructions(&one);
        assert_eq!(cycle.len(), 4);
        assert_eq!(instr.len(), 3);
        assert_eq!(instr[0], Instruction::Forward);
        assert_eq!(headings[0], Side::East);
        // The loop around a single cell turns right twice after the
        // first move (east, south, west).
        assert_eq!(instr[1], Instruction::Right);
        assert_eq!(instr[2], Instruction::Right);
    }

    #[test]
    fn instruction_count_is_outline_minus_one() {
        for text in ["#", "##", "###", "#.\n##", "##\n##", "###\n#..\n#.."] {
            let shape = parse_shape(text).unwrap();
            let (instr, _, _) = tree_outline_instructions(&shape);
            assert_eq!(instr.len(), 4 * shape.len() - 1, "{text}");
        }
    }

    #[test]
    fn base_conversion_plan_pinned_values() {
        let plan = base_conversion_plan(1024);
        assert_eq!(plan.base, 103);
        // floor(log2 103) = 6, so d = ceil(1024/6) = 171.
        assert_eq!(plan.digits, 171);
        let degenerate = base_conversion_plan(4);
        assert_eq!((degenerate.base, degenerate.digits), (2, 4));
    }

    #[test]
    fn encoding_size_formula() {
        // 4*1*ceil(log2 4) + ceil(log2 2) = 8 + 1.
        assert_eq!(system_bit_encoding_size(1, 1), 9);
        let mut prev = 0;
        for t in [1, 2, 4, 16, 64, 256] {
            let bits = system_bit_encoding_size(t, 10);
            assert!(bits > prev);
            prev = bits;
        }
    }
}
