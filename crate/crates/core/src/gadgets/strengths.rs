//! The glue strength table of the temperature-10 construction system.

use crate::glue::StrengthTable;

/// Temperature of the construction system.
pub const TAU: i64 = 10;

/// The published strength assignment, exactly as tabulated:
///
/// | strength | families |
/// |---|---|
/// | 1 | F L R M |
/// | 2 | A X f k l r p w h |
/// | 3 | B b e f* |
/// | 4 | C a |
/// | 5 | N E S W i q |
/// | 6 | d |
/// | 7 | O T |
/// | 8 | G H J U c g j m s t u v x z |
/// | 9 | K P V Y Z |
/// | -4 | Q |
/// | -5 | o |
/// | -7 | D |
pub fn default_strengths() -> StrengthTable {
    StrengthTable::from_pairs([
        ("F", 1),
        ("L", 1),
        ("R", 1),
        ("M", 1),
        ("A", 2),
        ("X", 2),
        ("f", 2),
        ("k", 2),
        ("l", 2),
        ("r", 2),
        ("p", 2),
        ("w", 2),
        ("h", 2),
        ("B", 3),
        ("b", 3),
        ("e", 3),
        ("f*", 3),
        ("C", 4),
        ("a", 4),
        ("N", 5),
        ("E", 5),
        ("S", 5),
        ("W", 5),
        ("i", 5),
        ("q", 5),
        ("d", 6),
        ("O", 7),
        ("T", 7),
        ("G", 8),
        ("H", 8),
        ("J", 8),
        ("U", 8),
        ("c", 8),
        ("g", 8),
        ("j", 8),
        ("m", 8),
        ("s", 8),
        ("t", 8),
        ("u", 8),
        ("v", 8),
        ("x", 8),
        ("z", 8),
        ("K", 9),
        ("P", 9),
        ("V", 9),
        ("Y", 9),
        ("Z", 9),
        ("Q", -4),
        ("o", -5),
        ("D", -7),
    ])
}

/// The table the shipped gadget library uses: the published table plus the
/// handful of families whose values are fixed by the reaction arithmetic
/// rather than the table itself (`n` from the read attachment `n+T+F`,
/// `I` from the fill attachment `H+I`, and the starred bit-mark variants
/// `h*`, `l*`, `r*` which pair with `f*`).
pub fn library_strengths() -> StrengthTable {
    let mut t = default_strengths();
    t.set("n", 2);
    t.set("I", 5);
    t.set("h*", 3);
    t.set("l*", 3);
    t.set("r*", 3);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glue::GlueLabel;

    #[test]
    fn table_values_match_the_published_assignment() {
        let t = default_strengths();
        let get = |n: &str| t.strength(&GlueLabel::new(n)).unwrap();
        assert_eq!(get("F"), 1);
        assert_eq!(get("D"), -7);
        assert_eq!(get("o"), -5);
        assert_eq!(get("Q"), -4);
        assert_eq!(get("J3"), 8);
        assert_eq!(get("f*"), 3);
        assert_eq!(get("d"), 6);
        assert_eq!(get("N"), 5);
        assert!(t.strength(&GlueLabel::new("unknown")).is_err());
    }

    #[test]
    fn every_single_glue_is_below_tau() {
        for (_, v) in library_strengths().entries() {
            assert!(v < TAU);
        }
    }

    #[test]
    fn sentinel_clears_every_cut_bound() {
        let t = library_strengths();
        assert!(t.infinite_sentinel() > TAU + t.finite_abs_sum());
    }
}
