//! Integer grid geometry: positions, directions, sides.
//!
//! The grid follows text conventions: `y` grows downward (row 0 at top),
//! `x` grows to the right. Ordering on positions is row-major `(y, x)`,
//! which is the order used everywhere a "lexicographically minimal
//! coordinate" is required.

use std::fmt;
use std::ops::{Add, Sub};

/// A cell of the integer grid.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const fn new(x: i32, y: i32) -> Self {
        Pos { x, y }
    }

    pub fn neighbor(self, side: Side) -> Pos {
        self + side.delta()
    }

    pub fn neighbors(self) -> [Pos; 4] {
        [
            self.neighbor(Side::North),
            self.neighbor(Side::East),
            self.neighbor(Side::South),
            self.neighbor(Side::West),
        ]
    }
}

impl Add for Pos {
    type Output = Pos;
    fn add(self, rhs: Pos) -> Pos {
        Pos::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Pos {
    type Output = Pos;
    fn sub(self, rhs: Pos) -> Pos {
        Pos::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl PartialOrd for Pos {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pos {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl fmt::Debug for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One of the four sides of a tile. Also used as a heading.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Side {
    North,
    East,
    South,
    West,
}

pub const SIDES: [Side; 4] = [Side::North, Side::East, Side::South, Side::West];

impl Side {
    pub fn index(self) -> usize {
        match self {
            Side::North => 0,
            Side::East => 1,
            Side::South => 2,
            Side::West => 3,
        }
    }

    /// Unit offset toward the neighbor across this side.
    pub fn delta(self) -> Pos {
        match self {
            Side::North => Pos::new(0, -1),
            Side::East => Pos::new(1, 0),
            Side::South => Pos::new(0, 1),
            Side::West => Pos::new(-1, 0),
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::East => Side::West,
            Side::South => Side::North,
            Side::West => Side::East,
        }
    }

    /// Heading after a left turn (counterclockwise on screen, where y grows down).
    pub fn left(self) -> Side {
        match self {
            Side::North => Side::West,
            Side::West => Side::South,
            Side::South => Side::East,
            Side::East => Side::North,
        }
    }

    /// Heading after a right turn.
    pub fn right(self) -> Side {
        self.left().opposite()
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::North => "north",
            Side::East => "east",
            Side::South => "south",
            Side::West => "west",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pos_order_is_row_major() {
        let mut v = vec![Pos::new(1, 0), Pos::new(0, 1), Pos::new(0, 0)];
        v.sort();
        assert_eq!(v, vec![Pos::new(0, 0), Pos::new(1, 0), Pos::new(0, 1)]);
    }

    #[test]
    fn turns_compose() {
        for s in SIDES {
            assert_eq!(s.left().right(), s);
            assert_eq!(s.left().left(), s.opposite());
            assert_eq!(s.opposite().opposite(), s);
        }
    }

    #[test]
    fn neighbor_round_trip() {
        let p = Pos::new(3, -2);
        for s in SIDES {
            assert_eq!(p.neighbor(s).neighbor(s.opposite()), p);
        }
    }
}
