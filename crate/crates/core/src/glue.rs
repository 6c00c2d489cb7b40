//! Glue labels and the strength function.
//!
//! A glue label is a short token such as `F`, `J3`, `h*` or `t1`. Two glues
//! bond only if their full names are equal. Strength lookup is by *family*:
//! the label with any trailing decimal subscript removed (`J3` -> `J`,
//! `t1` -> `t`, `f*` -> `f*`). If the family itself is unknown, trailing
//! marks (`*`, `^`) are stripped as a fallback so `h^` resolves through `h`.
//!
//! Infinite bonds (drawn in the construction as a bar across a tile edge)
//! are labels with the `!` marker. They bond like ordinary glues but their
//! strength is a fixed sentinel far above any temperature of interest.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Strength assigned to infinite bonds. Larger than `tau` plus the sum of
/// absolute values of all finite strengths in any table this crate builds,
/// so no enumerated cut through an infinite bond can fall below `tau`.
pub const INFINITE_STRENGTH: i64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GlueError {
    #[error("unknown glue label {0:?}")]
    UnknownGlue(String),
    #[error("glue label may not be empty")]
    EmptyLabel,
}

/// An edge label. `infinite` marks the unique infinite-strength bonds used
/// inside pre-built assemblies.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlueLabel {
    name: Arc<str>,
    infinite: bool,
}

impl GlueLabel {
    pub fn new(name: &str) -> Self {
        debug_assert!(!name.is_empty());
        GlueLabel {
            name: Arc::from(name),
            infinite: false,
        }
    }

    pub fn infinite(name: &str) -> Self {
        debug_assert!(!name.is_empty());
        GlueLabel {
            name: Arc::from(name),
            infinite: true,
        }
    }

    /// Parses the file form: `label` or `label!` for infinite bonds.
    pub fn parse(token: &str) -> Result<Self, GlueError> {
        let (name, infinite) = match token.strip_suffix('!') {
            Some(rest) => (rest, true),
            None => (token, false),
        };
        if name.is_empty() {
            return Err(GlueError::EmptyLabel);
        }
        Ok(GlueLabel {
            name: Arc::from(name),
            infinite,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// The strength-lookup family: the name with any trailing decimal
    /// subscript removed. `J3` -> `J`, `V0` -> `V`, `f*` -> `f*`.
    pub fn family(&self) -> &str {
        self.name.trim_end_matches(|c: char| c.is_ascii_digit())
    }

    /// Two glues bond exactly when their full names and kind agree.
    pub fn bonds_with(&self, other: &GlueLabel) -> bool {
        self.infinite == other.infinite && self.name == other.name
    }

    /// File form of the label.
    pub fn token(&self) -> String {
        if self.infinite {
            format!("{}!", self.name)
        } else {
            self.name.to_string()
        }
    }
}

impl fmt::Debug for GlueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GlueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.infinite {
            f.write_str("!")?;
        }
        Ok(())
    }
}

/// Map from glue family to integer strength, plus the infinite sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthTable {
    entries: BTreeMap<String, i64>,
}

impl StrengthTable {
    pub fn new() -> Self {
        StrengthTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        let mut t = StrengthTable::new();
        for (k, v) in pairs {
            t.set(k, v);
        }
        t
    }

    pub fn set(&mut self, family: &str, strength: i64) {
        self.entries.insert(family.to_string(), strength);
    }

    pub fn get_family(&self, family: &str) -> Option<i64> {
        self.entries.get(family).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, i64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn infinite_sentinel(&self) -> i64 {
        INFINITE_STRENGTH
    }

    /// Strength of a label: the sentinel for infinite bonds, otherwise the
    /// family entry, falling back through trailing-mark stripping
    /// (`h^` -> `h`) so caption-style decorated labels resolve.
    pub fn strength(&self, label: &GlueLabel) -> Result<i64, GlueError> {
        if label.infinite {
            return Ok(INFINITE_STRENGTH);
        }
        let fam = label.family();
        if let Some(s) = self.entries.get(fam) {
            return Ok(*s);
        }
        let stripped = fam.trim_end_matches(|c: char| !c.is_ascii_alphanumeric());
        if stripped != fam && !stripped.is_empty() {
            if let Some(s) = self.entries.get(stripped) {
                return Ok(*s);
            }
        }
        Err(GlueError::UnknownGlue(label.name.to_string()))
    }

    /// Strength of the bond between two coincident glue slots: the label
    /// strength when both sides carry the identical glue, otherwise 0.
    pub fn bond(&self, a: Option<&GlueLabel>, b: Option<&GlueLabel>) -> Result<i64, GlueError> {
        match (a, b) {
            (Some(a), Some(b)) if a.bonds_with(b) => self.strength(a),
            _ => Ok(0),
        }
    }

    /// Sum of |strength| over all finite entries; used to sanity-check the
    /// sentinel headroom.
    pub fn finite_abs_sum(&self) -> i64 {
        self.entries.values().map(|v| v.abs()).sum()
    }
}

impl Default for StrengthTable {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> StrengthTable {
        StrengthTable::from_pairs([("J", 8), ("f", 2), ("f*", 3), ("h", 2), ("D", -7)])
    }

    #[test]
    fn family_strips_subscripts() {
        assert_eq!(GlueLabel::new("J3").family(), "J");
        assert_eq!(GlueLabel::new("t1").family(), "t");
        assert_eq!(GlueLabel::new("f*").family(), "f*");
        assert_eq!(GlueLabel::new("h^").family(), "h^");
        assert_eq!(GlueLabel::new("F").family(), "F");
    }

    #[test]
    fn lookup_resolves_subscripts_and_marks() {
        let t = table();
        assert_eq!(t.strength(&GlueLabel::new("J3")).unwrap(), 8);
        assert_eq!(t.strength(&GlueLabel::new("f*")).unwrap(), 3);
        assert_eq!(t.strength(&GlueLabel::new("h^")).unwrap(), 2);
        assert_eq!(t.strength(&GlueLabel::new("D")).unwrap(), -7);
        assert!(matches!(
            t.strength(&GlueLabel::new("zz")),
            Err(GlueError::UnknownGlue(_))
        ));
    }

    #[test]
    fn bonds_require_equal_full_names() {
        let t = table();
        let j3 = GlueLabel::new("J3");
        let j4 = GlueLabel::new("J4");
        assert_eq!(t.bond(Some(&j3), Some(&j3)).unwrap(), 8);
        assert_eq!(t.bond(Some(&j3), Some(&j4)).unwrap(), 0);
        assert_eq!(t.bond(Some(&j3), None).unwrap(), 0);
    }

    #[test]
    fn infinite_bonds_use_sentinel() {
        let t = table();
        let b = GlueLabel::infinite("ib0");
        assert_eq!(t.strength(&b).unwrap(), INFINITE_STRENGTH);
        assert!(GlueLabel::parse("ib0!").unwrap().is_infinite());
        let plain = GlueLabel::new("ib0");
        assert!(!b.bonds_with(&plain));
    }
}
