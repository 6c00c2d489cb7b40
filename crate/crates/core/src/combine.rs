//! Two-handed combination: all placements of one assembly against another
//! whose contact boundary reaches the temperature.

use std::collections::{BTreeMap, BTreeSet};

use crate::assembly::{Assembly, AssemblyError, PositionedAssembly};
use crate::geom::{Pos, Side, SIDES};
use crate::glue::{GlueError, StrengthTable};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombineError {
    #[error("assemblies overlap at {0}")]
    Overlap(Pos),
    #[error("boundary strength {got} is below the temperature {tau}")]
    BelowTemperature { got: i64, tau: i64 },
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

/// One legal attachment of `b` (translated by `offset`) onto `a`.
#[derive(Clone, Debug)]
pub struct Combination {
    pub offset: Pos,
    pub boundary_strength: i64,
    pub combined: Assembly,
}

/// Sum of matching-glue strengths across the full contact boundary between
/// `a` and `b.translate(offset)`. `None` when the footprints overlap.
pub fn boundary_strength(
    a: &PositionedAssembly,
    b: &PositionedAssembly,
    offset: Pos,
    strengths: &StrengthTable,
) -> Result<Option<i64>, GlueError> {
    let mut sum = 0;
    for (pb, tb) in b.iter() {
        let p = pb + offset;
        if a.contains(p) {
            return Ok(None);
        }
        for side in SIDES {
            let q = p.neighbor(side);
            if let Some(ta) = a.tile_at(q) {
                sum += strengths.bond(tb.glue(side), ta.glue(side.opposite()))?;
            }
        }
    }
    Ok(Some(sum))
}

/// Every translation of `b` against `a` with no overlap and boundary
/// strength at least `tau`. Candidate offsets come from pairs of facing
/// glues with equal names and positive strength; any boundary reaching a
/// positive temperature must contain at least one such contact, so the
/// candidate set is complete.
pub fn combinations(
    a: &PositionedAssembly,
    b: &PositionedAssembly,
    strengths: &StrengthTable,
    tau: i64,
) -> Result<Vec<Combination>, CombineError> {
    assert!(tau >= 1, "temperature must be positive");
    // Index a's glues by (name, side presented).
    let mut by_glue: BTreeMap<(&str, Side), Vec<Pos>> = BTreeMap::new();
    for (p, t) in a.iter() {
        for (side, g) in t.glues() {
            if strengths.strength(g)? > 0 {
                by_glue.entry((g.name(), side)).or_default().push(p);
            }
        }
    }
    let mut offsets = BTreeSet::new();
    for (pb, tb) in b.iter() {
        for (side, g) in tb.glues() {
            if strengths.strength(g)? <= 0 {
                continue;
            }
            // b's glue on `side` meets a's glue on the opposite side when
            // the tiles are adjacent across `side`.
            if let Some(ps) = by_glue.get(&(g.name(), side.opposite())) {
                for &pa in ps {
                    // pb + offset + delta(side) == pa
                    let d = side.delta();
                    offsets.insert(pa - pb - d);
                }
            }
        }
    }
    let mut out = Vec::new();
    for offset in offsets {
        if let Some(s) = boundary_strength(a, b, offset, strengths)? {
            if s >= tau {
                let combined = a.union(&b.translate(offset))?;
                out.push(Combination {
                    offset,
                    boundary_strength: s,
                    combined: Assembly::canonicalize(&combined)?,
                });
            }
        }
    }
    Ok(out)
}

/// Applies one specific attachment, validating overlap and temperature.
/// Returns the combined positioned assembly and the boundary strength.
pub fn combine_at(
    a: &PositionedAssembly,
    b: &PositionedAssembly,
    offset: Pos,
    strengths: &StrengthTable,
    tau: i64,
) -> Result<(PositionedAssembly, i64), CombineError> {
    let moved = b.translate(offset);
    for p in moved.positions() {
        if a.contains(p) {
            return Err(CombineError::Overlap(p));
        }
    }
    let s = boundary_strength(a, b, offset, strengths)?
        .expect("overlap already checked");
    if s < tau {
        return Err(CombineError::BelowTemperature { got: s, tau });
    }
    Ok((a.union(&moved)?, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::Tile;
    use crate::glue::GlueLabel;

    fn glue(n: &str) -> Option<GlueLabel> {
        Some(GlueLabel::new(n))
    }

    #[test]
    fn fig1_attachment_is_unique_with_strength_one() {
        // Three-tile assembly plus the single tile, tau = 1.
        let strengths = StrengthTable::from_pairs([("X", 2), ("Y", 1), ("Z", 2), ("N", -1)]);
        let a = Tile::new(None, glue("X"), glue("Y"), None);
        let b = Tile::new(None, None, glue("Z"), glue("X"));
        let c = Tile::new(glue("Y"), glue("N"), None, None);
        let d = Tile::new(glue("Z"), None, None, glue("N"));
        let mut tri = PositionedAssembly::new();
        tri.place(Pos::new(0, 0), a).unwrap();
        tri.place(Pos::new(1, 0), b).unwrap();
        tri.place(Pos::new(0, 1), c).unwrap();
        let mut single = PositionedAssembly::new();
        single.place(Pos::new(0, 0), d).unwrap();

        let combos = combinations(&tri, &single, &strengths, 1).unwrap();
        assert_eq!(combos.len(), 1);
        assert_eq!(combos[0].boundary_strength, 1);
        assert_eq!(combos[0].offset, Pos::new(1, 1));
        assert_eq!(combos[0].combined.len(), 4);
    }

    #[test]
    fn no_matching_names_means_no_combination() {
        let strengths = StrengthTable::from_pairs([("a", 5), ("b", 5)]);
        let mut one = PositionedAssembly::new();
        one.place(Pos::new(0, 0), Tile::new(None, glue("a"), None, None))
            .unwrap();
        let mut two = PositionedAssembly::new();
        two.place(Pos::new(0, 0), Tile::new(None, None, None, glue("b")))
            .unwrap();
        assert!(combinations(&one, &two, &strengths, 1).unwrap().is_empty());
    }

    #[test]
    fn combine_at_rejects_overlap_and_weak_boundaries() {
        let strengths = StrengthTable::from_pairs([("a", 1)]);
        let mut one = PositionedAssembly::new();
        one.place(Pos::new(0, 0), Tile::new(None, glue("a"), None, None))
            .unwrap();
        let two = one.clone();
        assert!(matches!(
            combine_at(&one, &two, Pos::new(0, 0), &strengths, 1),
            Err(CombineError::Overlap(_))
        ));
        assert!(matches!(
            combine_at(&one, &two, Pos::new(0, 3), &strengths, 1),
            Err(CombineError::BelowTemperature { got: 0, tau: 1 })
        ));
    }
}
