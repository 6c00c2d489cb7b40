//! Cut enumeration, tau-stability, and break discovery.
//!
//! Stability asks whether the bond graph has a cut of strength below the
//! temperature, where both sides of the cut must be connected through
//! positive-strength edges. Min-cut with negative edge weights has no
//! polynomial algorithm, so the engine offers two modes:
//!
//! * **exact** — brute-force enumeration of every connected 2-partition,
//!   for assemblies up to `exact_limit` tiles;
//! * **bounded** — enumeration of connected pieces over the bond graph with
//!   infinite-bond clusters contracted, capped by piece size and by the
//!   number of adjacency edges a cut may cross. Cuts through an infinite
//!   bond are skipped outright: the sentinel strength exceeds any
//!   temperature plus the sum of all finite strengths, so such cuts can
//!   never fall below tau.
//!
//! Verdicts carry their mode so callers can distinguish a proof from a
//! bounded search.

use std::collections::{BTreeMap, BTreeSet};

use crate::assembly::{Assembly, AssemblyError, PositionedAssembly};
use crate::geom::{Pos, Side};
use crate::glue::{GlueError, StrengthTable};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutError {
    #[error("assembly of {size} tiles exceeds the exact enumeration limit {limit}")]
    TooLargeForExact { size: usize, limit: usize },
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

/// Parameters of the cut search.
#[derive(Clone, Debug)]
pub struct CutBounds {
    /// Largest assembly (in tiles) enumerated exactly.
    pub exact_limit: usize,
    /// Bounded mode keeps cuts crossing at most this many adjacency edges.
    pub max_cut_edges: usize,
    /// Bounded mode grows candidate pieces up to this many contracted
    /// clusters.
    pub piece_clusters: usize,
    /// Hard cap on search nodes; exceeding it marks the result incomplete.
    pub budget: usize,
}

impl Default for CutBounds {
    fn default() -> Self {
        CutBounds {
            exact_limit: 14,
            max_cut_edges: 10,
            piece_clusters: 24,
            budget: 2_000_000,
        }
    }
}

/// A 2-partition of an assembly's tiles with both sides connected through
/// positive edges. `strength` sums every bond-graph edge crossing the
/// partition and may be negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side_a: BTreeSet<Pos>,
    pub side_b: BTreeSet<Pos>,
    pub strength: i64,
    pub crossing_edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exact,
    Bounded,
}

/// Result of a cut search: the cuts found, the mode, and whether the
/// search ran to completion within its budget.
#[derive(Clone, Debug)]
pub struct CutSearch {
    pub cuts: Vec<Cut>,
    pub mode: SearchMode,
    pub complete: bool,
}

/// Stability verdict; `stable` is definitive only when `mode` is exact or
/// the bounded search completed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub min_cut_seen: Option<i64>,
    pub mode: SearchMode,
    pub complete: bool,
}

struct Graph {
    nodes: Vec<Pos>,
    index: BTreeMap<Pos, usize>,
    /// Tile-level edges (i < j) with weight and infinite flag.
    edges: Vec<(usize, usize, i64, bool)>,
    /// Positive-edge adjacency (includes infinite bonds).
    pos_adj: Vec<Vec<usize>>,
    /// All-edge adjacency with edge ids.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    fn build(a: &PositionedAssembly, strengths: &StrengthTable) -> Result<Graph, GlueError> {
        let nodes: Vec<Pos> = a.positions().collect();
        let index: BTreeMap<Pos, usize> = nodes.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut edges = Vec::new();
        for (&p, &i) in &index {
            for side in [Side::East, Side::South] {
                let q = p.neighbor(side);
                if let Some(&j) = index.get(&q) {
                    let ga = a.glue_at(p, side);
                    let gb = a.glue_at(q, side.opposite());
                    let w = strengths.bond(ga, gb)?;
                    let infinite = match (ga, gb) {
                        (Some(x), Some(y)) => x.bonds_with(y) && x.is_infinite(),
                        _ => false,
                    };
                    edges.push((i.min(j), i.max(j), w, infinite));
                }
            }
        }
        let mut pos_adj = vec![Vec::new(); nodes.len()];
        let mut adj = vec![Vec::new(); nodes.len()];
        for (eid, &(i, j, w, _)) in edges.iter().enumerate() {
            if w > 0 {
                pos_adj[i].push(j);
                pos_adj[j].push(i);
            }
            adj[i].push((j, eid));
            adj[j].push((i, eid));
        }
        Ok(Graph {
            nodes,
            index,
            edges,
            pos_adj,
            adj,
        })
    }

    /// Connectivity of a node subset through positive edges.
    fn side_connected(&self, members: &[bool], count: usize) -> bool {
        if count == 0 {
            return false;
        }
        let start = match members.iter().position(|&m| m) {
            Some(s) => s,
            None => return false,
        };
        let mut seen = vec![false; self.nodes.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.pos_adj[v] {
                if members[u] && !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == count
    }

    fn cut_of(&self, members: &[bool]) -> Cut {
        let mut strength = 0;
        let mut crossing = 0;
        for &(i, j, w, _) in &self.edges {
            if members[i] != members[j] {
                strength += w;
                crossing += 1;
            }
        }
        let mut side_a = BTreeSet::new();
        let mut side_b = BTreeSet::new();
        for (i, p) in self.nodes.iter().enumerate() {
            if members[i] {
                side_a.insert(*p);
            } else {
                side_b.insert(*p);
            }
        }
        Cut {
            side_a,
            side_b,
            strength,
            crossing_edges: crossing,
        }
    }
}

/// Exhaustive enumeration of all connected 2-partitions. The independent
/// oracle for the bounded search; quadratic-exponential, so callers must
/// keep the assembly at or below `exact_limit`.
pub fn enumerate_cuts_exact(
    a: &PositionedAssembly,
    strengths: &StrengthTable,
    exact_limit: usize,
) -> Result<CutSearch, CutError> {
    let n = a.len();
    if n > exact_limit {
        return Err(CutError::TooLargeForExact {
            size: n,
            limit: exact_limit,
        });
    }
    let g = Graph::build(a, strengths)?;
    let mut cuts = Vec::new();
    if n >= 2 {
        // Node 0 always on side A so each partition appears once.
        let free = n - 1;
        for mask in 0..(1u64 << free) {
            let mut members = vec![false; n];
            members[0] = true;
            let mut count_a = 1;
            for b in 0..free {
                if mask >> b & 1 == 1 {
                    members[b + 1] = true;
                    count_a += 1;
                }
            }
            if count_a == n {
                continue;
            }
            if !g.side_connected(&members, count_a) {
                continue;
            }
            let inv: Vec<bool> = members.iter().map(|m| !m).collect();
            if !g.side_connected(&inv, n - count_a) {
                continue;
            }
            cuts.push(g.cut_of(&members));
        }
    }
    Ok(CutSearch {
        cuts,
        mode: SearchMode::Exact,
        complete: true,
    })
}

/// Bounded search over the infinite-bond contraction of the bond graph.
/// Enumerates positive-connected pieces of at most `piece_clusters`
/// clusters whose boundary crosses at most `max_cut_edges` adjacency
/// edges, checking the complement stays positive-connected.
pub fn enumerate_cuts_bounded(
    a: &PositionedAssembly,
    strengths: &StrengthTable,
    bounds: &CutBounds,
) -> Result<CutSearch, CutError> {
    let g = Graph::build(a, strengths)?;
    let n = g.nodes.len();
    if n < 2 {
        return Ok(CutSearch {
            cuts: Vec::new(),
            mode: SearchMode::Bounded,
            complete: true,
        });
    }

    // Contract infinite-bond clusters.
    let mut cluster = vec![usize::MAX; n];
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if cluster[start] != usize::MAX {
            continue;
        }
        let cid = clusters.len();
        let mut stack = vec![start];
        cluster[start] = cid;
        let mut members = vec![start];
        while let Some(v) = stack.pop() {
            for &(u, eid) in &g.adj[v] {
                if g.edges[eid].3 && cluster[u] == usize::MAX {
                    cluster[u] = cid;
                    members.push(u);
                    stack.push(u);
                }
            }
        }
        clusters.push(members);
    }
    let m = clusters.len();
    if m < 2 {
        // One infinite cluster spans everything: no finite cut exists.
        return Ok(CutSearch {
            cuts: Vec::new(),
            mode: SearchMode::Bounded,
            complete: true,
        });
    }

    // Cluster-level adjacency: aggregate weight, tile-edge count, and
    // whether any positive tile edge joins the pair.
    let mut cedges: BTreeMap<(usize, usize), (i64, usize, bool)> = BTreeMap::new();
    for &(i, j, w, inf) in &g.edges {
        let (ci, cj) = (cluster[i], cluster[j]);
        if ci == cj {
            continue;
        }
        debug_assert!(!inf, "infinite bond crossing clusters");
        let key = (ci.min(cj), ci.max(cj));
        let e = cedges.entry(key).or_insert((0, 0, false));
        e.0 += w;
        e.1 += 1;
        e.2 |= w > 0;
    }
    let mut cadj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut cpos: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (&(ci, cj), &(_, _, pos)) in &cedges {
        cadj[ci].push(cj);
        cadj[cj].push(ci);
        if pos {
            cpos[ci].push(cj);
            cpos[cj].push(ci);
        }
    }

    let crossing_of = |members: &BTreeSet<usize>| -> (i64, usize) {
        let mut s = 0;
        let mut c = 0;
        for (&(ci, cj), &(w, cnt, _)) in &cedges {
            if members.contains(&ci) != members.contains(&cj) {
                s += w;
                c += cnt;
            }
        }
        (s, c)
    };

    let complement_connected = |members: &BTreeSet<usize>| -> bool {
        let total = m - members.len();
        if total == 0 {
            return false;
        }
        let start = (0..m).find(|c| !members.contains(c)).unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &cpos[v] {
                if !members.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == total
    };

    // Enumerate positive-connected cluster subsets, smallest member first
    // so each subset is produced exactly once (classic connected-subgraph
    // enumeration with an exclusion set).
    let mut cuts = Vec::new();
    let mut seen_sides: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut budget = bounds.budget as i64;
    let mut complete = true;
    let piece_cap = bounds.piece_clusters.min(m - 1);

    fn extend(
        cpos: &[Vec<usize>],
        root: usize,
        members: &mut BTreeSet<usize>,
        frontier: &[usize],
        forbidden: &mut Vec<bool>,
        piece_cap: usize,
        budget: &mut i64,
        visit: &mut dyn FnMut(&BTreeSet<usize>),
    ) {
        if *budget <= 0 {
            return;
        }
        *budget -= 1;
        visit(members);
        if members.len() >= piece_cap {
            return;
        }
        let mut newly_forbidden = Vec::new();
        for (idx, &v) in frontier.iter().enumerate() {
            if forbidden[v] {
                continue;
            }
            members.insert(v);
            let mut child: Vec<usize> = frontier[idx + 1..]
                .iter()
                .copied()
                .filter(|&u| !forbidden[u])
                .collect();
            for &u in &cpos[v] {
                if u > root
                    && !members.contains(&u)
                    && !forbidden[u]
                    && !child.contains(&u)
                {
                    child.push(u);
                }
            }
            extend(cpos, root, members, &child, forbidden, piece_cap, budget, visit);
            members.remove(&v);
            forbidden[v] = true;
            newly_forbidden.push(v);
            if *budget <= 0 {
                break;
            }
        }
        for v in newly_forbidden {
            forbidden[v] = false;
        }
    }

    let mut forbidden = vec![false; m];
    for root in 0..m {
        let mut members = BTreeSet::from([root]);
        let frontier: Vec<usize> = cpos[root].iter().copied().filter(|&u| u > root).collect();
        extend(
            &cpos,
            root,
            &mut members,
            &frontier,
            &mut forbidden,
            piece_cap,
            &mut budget,
            &mut |members| {
                if members.len() == m {
                    return;
                }
                let (_, crossing) = crossing_of(members);
                if crossing > bounds.max_cut_edges {
                    return;
                }
                if !complement_connected(members) {
                    return;
                }
                // Normalize so each partition is recorded once.
                let key: Vec<usize> = if members.contains(&0) {
                    (0..m).filter(|c| !members.contains(c)).collect()
                } else {
                    members.iter().copied().collect()
                };
                if !seen_sides.insert(key) {
                    return;
                }
                let mut tiles = vec![false; n];
                for &c in members.iter() {
                    for &t in &clusters[c] {
                        tiles[t] = true;
                    }
                }
                cuts.push(g.cut_of(&tiles));
            },
        );
        if budget <= 0 {
            complete = false;
            break;
        }
    }

    Ok(CutSearch {
        cuts,
        mode: SearchMode::Bounded,
        complete,
    })
}

/// All connected 2-partitions, exact for small assemblies and bounded
/// otherwise.
pub fn enumerate_cuts(
    a: &PositionedAssembly,
    strengths: &StrengthTable,
    bounds: &CutBounds,
) -> Result<CutSearch, CutError> {
    if a.len() <= bounds.exact_limit {
        enumerate_cuts_exact(a, strengths, bounds.exact_limit)
    } else {
        enumerate_cuts_bounded(a, strengths, bounds)
    }
}

/// Tau-stability: no enumerated cut of strength below `tau`. A single tile
/// has no cut and is stable by convention.
pub fn is_tau_stable(
    a: &PositionedAssembly,
    strengths: &StrengthTable,
    tau: i64,
    bounds: &CutBounds,
) -> Result<StabilityVerdict, CutError> {
    let search = enumerate_cuts(a, strengths, bounds)?;
    let min = search.cuts.iter().map(|c| c.strength).min();
    Ok(StabilityVerdict {
        stable: min.map_or(true, |s| s >= tau),
        min_cut_seen: min,
        mode: search.mode,
        complete: search.complete,
    })
}

/// Every breakable piece pair: cuts of strength below tau, both pieces in
/// canonical form.
pub fn find_breaks(
    a: &PositionedAssembly,
    strengths: &StrengthTable,
    tau: i64,
    bounds: &CutBounds,
) -> Result<Vec<(Assembly, Assembly, i64)>, CutError> {
    let search = enumerate_cuts(a, strengths, bounds)?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for cut in search.cuts {
        if cut.strength >= tau {
            continue;
        }
        let mut pa = PositionedAssembly::new();
        let mut pb = PositionedAssembly::new();
        for (p, t) in a.iter() {
            if cut.side_a.contains(&p) {
                pa.place(p, t.clone()).unwrap();
            } else {
                pb.place(p, t.clone()).unwrap();
            }
        }
        let ca = Assembly::canonicalize(&pa)?;
        let cb = Assembly::canonicalize(&pb)?;
        let (first, second) = if ca <= cb { (ca, cb) } else { (cb, ca) };
        if seen.insert((first.clone(), second.clone(), cut.strength)) {
            out.push((first, second, cut.strength));
        }
    }
    Ok(out)
}

/// Strength and crossing count of one specific partition, given the piece
/// side. The piece must be a strict, nonempty subset of the assembly.
pub fn partition_strength(
    a: &PositionedAssembly,
    strengths: &StrengthTable,
    piece: &BTreeSet<Pos>,
) -> Result<(i64, usize), CutError> {
    let g = Graph::build(a, strengths)?;
    let members: Vec<bool> = g.nodes.iter().map(|p| piece.contains(p)).collect();
    let cut = g.cut_of(&members);
    Ok((cut.strength, cut.crossing_edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::Tile;
    use crate::glue::GlueLabel;

    fn glue(n: &str) -> Option<GlueLabel> {
        Some(GlueLabel::new(n))
    }

    /// Fig. 1 square: X=2 Y=1 Z=2 N=-1, tau=1.
    fn fig1_square() -> (PositionedAssembly, StrengthTable) {
        let strengths = StrengthTable::from_pairs([("X", 2), ("Y", 1), ("Z", 2), ("N", -1)]);
        let a = Tile::new(None, glue("X"), glue("Y"), None);
        let b = Tile::new(None, None, glue("Z"), glue("X"));
        let c = Tile::new(glue("Y"), glue("N"), None, None);
        let d = Tile::new(glue("Z"), None, None, glue("N"));
        let mut asm = PositionedAssembly::new();
        asm.place(Pos::new(0, 0), a).unwrap();
        asm.place(Pos::new(1, 0), b).unwrap();
        asm.place(Pos::new(0, 1), c).unwrap();
        asm.place(Pos::new(1, 1), d).unwrap();
        (asm, strengths)
    }

    #[test]
    fn fig1_square_has_the_zero_strength_cut() {
        let (asm, strengths) = fig1_square();
        let bounds = CutBounds::default();
        let search = enumerate_cuts(&asm, &strengths, &bounds).unwrap();
        assert_eq!(search.mode, SearchMode::Exact);
        // Y + N = 1 - 1 = 0: the cut isolating the south-west tile.
        assert!(search.cuts.iter().any(|c| c.strength == 0));
        let verdict = is_tau_stable(&asm, &strengths, 1, &bounds).unwrap();
        assert!(!verdict.stable);
        assert_eq!(verdict.min_cut_seen, Some(0));
    }

    #[test]
    fn fig1_square_breaks_into_exactly_one_pair() {
        let (asm, strengths) = fig1_square();
        let breaks = find_breaks(&asm, &strengths, 1, &CutBounds::default()).unwrap();
        assert_eq!(breaks.len(), 1);
        let (a, b, s) = &breaks[0];
        assert_eq!(*s, 0);
        let sizes = {
            let mut v = [a.len(), b.len()];
            v.sort();
            v
        };
        assert_eq!(sizes, [1, 3]);
    }

    #[test]
    fn single_tile_is_vacuously_stable() {
        let strengths = StrengthTable::new();
        let mut asm = PositionedAssembly::new();
        asm.place(Pos::new(0, 0), Tile::new(None, None, None, None))
            .unwrap();
        let verdict = is_tau_stable(&asm, &strengths, 99, &CutBounds::default()).unwrap();
        assert!(verdict.stable);
        assert_eq!(verdict.min_cut_seen, None);
    }

    #[test]
    fn infinite_domino_never_breaks() {
        let strengths = StrengthTable::new();
        let g = GlueLabel::infinite("ib0");
        let l = Tile::new(None, Some(g.clone()), None, None);
        let r = Tile::new(None, None, None, Some(g));
        let mut asm = PositionedAssembly::new();
        asm.place(Pos::new(0, 0), l).unwrap();
        asm.place(Pos::new(1, 0), r).unwrap();
        let search = enumerate_cuts(&asm, &strengths, &CutBounds::default()).unwrap();
        assert_eq!(search.cuts.len(), 1);
        assert!(search.cuts[0].strength >= crate::glue::INFINITE_STRENGTH);
        let verdict = is_tau_stable(&asm, &strengths, 10, &CutBounds::default()).unwrap();
        assert!(verdict.stable);
    }

    #[test]
    fn bounded_matches_exact_on_a_bar() {
        let strengths = StrengthTable::from_pairs([("a", 3)]);
        let mut asm = PositionedAssembly::new();
        for x in 0..6 {
            asm.place(
                Pos::new(x, 0),
                Tile::new(None, glue("a"), None, glue("a")),
            )
            .unwrap();
        }
        let bounds = CutBounds {
            exact_limit: 14,
            ..CutBounds::default()
        };
        let exact = enumerate_cuts_exact(&asm, &strengths, 14).unwrap();
        let bounded = enumerate_cuts_bounded(&asm, &strengths, &bounds).unwrap();
        assert!(bounded.complete);
        let key = |c: &Cut| {
            let mut sides = [c.side_a.clone(), c.side_b.clone()];
            sides.sort();
            (sides, c.strength)
        };
        let mut e: Vec<_> = exact.cuts.iter().map(key).collect();
        let mut b: Vec<_> = bounded.cuts.iter().map(key).collect();
        e.sort();
        b.sort();
        assert_eq!(e, b);
        assert_eq!(e.len(), 5);
    }
}
