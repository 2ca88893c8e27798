//! Layout surgery: rigid grid motions, coordinate compaction, and expansion
//! of parallel connectors.
//!
//! All operations here preserve the checker verdict: a valid layout stays
//! valid, and the grid motions preserve the full violation report (which is
//! coordinate-free by design).

use crate::geometry::{
    verify_layout, BusPlacement, ConnPlacement, Layout, Orientation, Point, Violation,
};
use crate::graph::{BusGraph, BusId, ConnId, MultiplicityMap};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Largest number of per-axis coordinate events [`compact`] will enumerate.
/// Guards against absurd declared lengths, which must be kept rigid and so
/// contribute one event per covered grid line.
const MAX_COMPACT_EVENTS: usize = 1 << 22;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("layout does not realize the graph ({} violation(s))", .0.len())]
    Invalid(Vec<Violation>),
    #[error("too many coordinate events to compact ({0})")]
    TooLarge(usize),
    #[error("every multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("cannot duplicate connectors when buses declare required lengths")]
    RigidLengths,
    #[error("deduplicated layout is missing connector c{0}")]
    MissingRepresentative(u32),
}

/// The eight rigid symmetries of the grid (rotations and reflections
/// about the origin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMap {
    Identity,
    /// Quarter turn counterclockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror across the vertical axis (negates x).
    FlipH,
    /// Mirror across the horizontal axis (negates y).
    FlipV,
    /// Mirror across the main diagonal (swaps x and y).
    Transpose,
    /// Mirror across the antidiagonal.
    AntiTranspose,
}

impl GridMap {
    pub const ALL: [GridMap; 8] = [
        GridMap::Identity,
        GridMap::Rot90,
        GridMap::Rot180,
        GridMap::Rot270,
        GridMap::FlipH,
        GridMap::FlipV,
        GridMap::Transpose,
        GridMap::AntiTranspose,
    ];

    pub fn apply_point(self, p: Point) -> Point {
        match self {
            GridMap::Identity => p,
            GridMap::Rot90 => Point::new(-p.y, p.x),
            GridMap::Rot180 => Point::new(-p.x, -p.y),
            GridMap::Rot270 => Point::new(p.y, -p.x),
            GridMap::FlipH => Point::new(-p.x, p.y),
            GridMap::FlipV => Point::new(p.x, -p.y),
            GridMap::Transpose => Point::new(p.y, p.x),
            GridMap::AntiTranspose => Point::new(-p.y, -p.x),
        }
    }

    /// True when the motion exchanges horizontal and vertical segments.
    pub fn swaps_orientation(self) -> bool {
        matches!(
            self,
            GridMap::Rot90 | GridMap::Rot270 | GridMap::Transpose | GridMap::AntiTranspose
        )
    }
}

/// Applies a rigid symmetry to every placement.
pub fn apply_map(l: &Layout, m: GridMap) -> Layout {
    let mut out = Layout::new();
    for (&id, pl) in &l.buses {
        let a = m.apply_point(pl.anchor);
        let b = m.apply_point(pl.end());
        let anchor = Point::new(a.x.min(b.x), a.y.min(b.y));
        let orientation =
            if m.swaps_orientation() { pl.orientation.flipped() } else { pl.orientation };
        out.place_bus(id, BusPlacement { orientation, anchor, length: pl.length });
    }
    for (&id, c) in &l.connectors {
        out.place_connector(id, m.apply_point(c.at));
    }
    out
}

/// Translates every placement by `(dx, dy)`.
pub fn translate(l: &Layout, dx: i64, dy: i64) -> Layout {
    let mut out = Layout::new();
    for (&id, pl) in &l.buses {
        let anchor = Point::new(pl.anchor.x + dx, pl.anchor.y + dy);
        out.place_bus(id, BusPlacement { anchor, ..*pl });
    }
    for (&id, c) in &l.connectors {
        out.place_connector(id, Point::new(c.at.x + dx, c.at.y + dy));
    }
    out
}

fn rank_map(events: &BTreeSet<i64>) -> BTreeMap<i64, i64> {
    let base = events.iter().next().copied().unwrap_or(0);
    events.iter().enumerate().map(|(i, &x)| (x, base + i as i64)).collect()
}

/// Compresses each axis onto consecutive coordinates while preserving the
/// relative order of all object endpoints and connector positions, keeping
/// the minimum coordinate of each axis fixed.
///
/// Buses with a declared required length are kept rigid (every covered grid
/// line stays occupied), so declared lengths survive compaction. The input
/// must realize the graph; afterwards each axis occupies at most
/// `connectors + 2 * buses` distinct coordinates, plus the total declared
/// length. Compaction is idempotent.
pub fn compact(g: &BusGraph, l: &Layout) -> Result<Layout, TransformError> {
    let violations = verify_layout(g, l);
    if !violations.is_empty() {
        return Err(TransformError::Invalid(violations));
    }
    let mut xs: BTreeSet<i64> = BTreeSet::new();
    let mut ys: BTreeSet<i64> = BTreeSet::new();
    for c in l.connectors.values() {
        xs.insert(c.at.x);
        ys.insert(c.at.y);
    }
    for (&id, pl) in &l.buses {
        let (lo, hi) = pl.main_range().expect("verified layout has finite spans");
        let rigid = g.buses[id.0 as usize].length.is_some();
        let main: &mut BTreeSet<i64> = match pl.orientation {
            Orientation::Horizontal => {
                ys.insert(pl.anchor.y);
                &mut xs
            }
            Orientation::Vertical => {
                xs.insert(pl.anchor.x);
                &mut ys
            }
        };
        if rigid {
            if pl.length as usize > MAX_COMPACT_EVENTS {
                return Err(TransformError::TooLarge(pl.length as usize));
            }
            main.extend(lo..=hi);
        } else {
            main.insert(lo);
            main.insert(hi);
        }
        if xs.len() + ys.len() > MAX_COMPACT_EVENTS {
            return Err(TransformError::TooLarge(xs.len() + ys.len()));
        }
    }
    let map_x = rank_map(&xs);
    let map_y = rank_map(&ys);
    let mut out = Layout::new();
    for (&id, pl) in &l.buses {
        let (lo, hi) = pl.main_range().unwrap();
        let (anchor, length) = match pl.orientation {
            Orientation::Horizontal => {
                (Point::new(map_x[&lo], map_y[&pl.anchor.y]), (map_x[&hi] - map_x[&lo]) as u64)
            }
            Orientation::Vertical => {
                (Point::new(map_x[&pl.anchor.x], map_y[&lo]), (map_y[&hi] - map_y[&lo]) as u64)
            }
        };
        out.place_bus(id, BusPlacement { orientation: pl.orientation, anchor, length });
    }
    for (&id, c) in &l.connectors {
        out.place_connector(id, Point::new(map_x[&c.at.x], map_y[&c.at.y]));
    }
    Ok(out)
}

/// Drops every coordinate not needed by `compact`'s event model; used to
/// state its size guarantee. Returns `(x_coords, y_coords)` actually used.
pub fn occupied_coords(l: &Layout) -> (usize, usize) {
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    for pl in l.buses.values() {
        let (lo, hi) = match pl.main_range() {
            Some(r) => r,
            None => continue,
        };
        match pl.orientation {
            Orientation::Horizontal => {
                ys.insert(pl.anchor.y);
                xs.insert(lo);
                xs.insert(hi);
            }
            Orientation::Vertical => {
                xs.insert(pl.anchor.x);
                ys.insert(lo);
                ys.insert(hi);
            }
        }
    }
    for c in l.connectors.values() {
        xs.insert(c.at.x);
        ys.insert(c.at.y);
    }
    (xs.len(), ys.len())
}

fn multiplicities_deduplicated(m: &MultiplicityMap) -> MultiplicityMap {
    MultiplicityMap {
        buses: m.buses.clone(),
        counts: m.counts.keys().map(|k| (k.clone(), 1)).collect(),
    }
}

/// Opens a fresh empty column immediately right of `x = at`: everything
/// strictly right shifts by one, horizontal buses spanning the cut stretch,
/// and horizontal buses of `attached` whose right endpoint sits exactly on
/// the cut stretch too (so a duplicate connector in the new column can still
/// reach them).
fn cut_x(l: &mut Layout, at: i64, attached: &[BusId]) {
    for (&id, pl) in l.buses.iter_mut() {
        match pl.orientation {
            Orientation::Horizontal => {
                let (lo, hi) = pl.main_range().unwrap();
                if lo > at {
                    pl.anchor.x += 1;
                } else if hi > at || (hi == at && attached.contains(&id)) {
                    pl.length += 1;
                }
            }
            Orientation::Vertical => {
                if pl.anchor.x > at {
                    pl.anchor.x += 1;
                }
            }
        }
    }
    for c in l.connectors.values_mut() {
        if c.at.x > at {
            c.at.x += 1;
        }
    }
}

/// The row-wise mirror of [`cut_x`].
fn cut_y(l: &mut Layout, at: i64, attached: &[BusId]) {
    for (&id, pl) in l.buses.iter_mut() {
        match pl.orientation {
            Orientation::Vertical => {
                let (lo, hi) = pl.main_range().unwrap();
                if lo > at {
                    pl.anchor.y += 1;
                } else if hi > at || (hi == at && attached.contains(&id)) {
                    pl.length += 1;
                }
            }
            Orientation::Horizontal => {
                if pl.anchor.y > at {
                    pl.anchor.y += 1;
                }
            }
        }
    }
    for c in l.connectors.values_mut() {
        if c.at.y > at {
            c.at.y += 1;
        }
    }
}

/// Materializes parallel connectors geometrically. Given incidence
/// multiplicities and a valid layout of the deduplicated graph (one
/// connector per incidence class, ids in sorted class order as produced by
/// [`BusGraph::from_multiplicity_encoding`]), returns the full graph and a
/// valid layout that places every copy.
///
/// Each copy is inserted by opening one fresh column and one fresh row next
/// to its class representative and dropping the copy on the new crossing;
/// buses the representative attaches to keep (or stretch into) coverage of
/// the new lines, so the copy reaches exactly the same buses.
pub fn expand_duplicates(
    m: &MultiplicityMap,
    dedup_layout: &Layout,
) -> Result<(BusGraph, Layout), TransformError> {
    if m.counts.values().any(|&c| c == 0) {
        return Err(TransformError::ZeroMultiplicity);
    }
    let copies: u64 = m.counts.values().map(|&c| c - 1).sum();
    if copies > 0 && m.buses.iter().any(|b| b.is_some()) {
        return Err(TransformError::RigidLengths);
    }
    let dedup_graph = BusGraph::from_multiplicity_encoding(&multiplicities_deduplicated(m));
    let violations = verify_layout(&dedup_graph, dedup_layout);
    if !violations.is_empty() {
        return Err(TransformError::Invalid(violations));
    }
    let full = BusGraph::from_multiplicity_encoding(m);

    // Re-key each class representative from its dedup id (= class index) to
    // its id in the full graph, where class k starts at base_k.
    let mut layout = Layout { buses: dedup_layout.buses.clone(), connectors: BTreeMap::new() };
    let mut base = 0u32;
    for (k, count) in m.counts.values().enumerate() {
        let rep = dedup_layout
            .connectors
            .get(&ConnId(k as u32))
            .ok_or(TransformError::MissingRepresentative(k as u32))?;
        layout.connectors.insert(ConnId(base), *rep);
        base += *count as u32;
    }

    let mut base = 0u32;
    for (key, &count) in &m.counts {
        for t in 1..count {
            let rep_at = layout.connectors[&ConnId(base)].at;
            cut_x(&mut layout, rep_at.x, key);
            cut_y(&mut layout, rep_at.y, key);
            layout.connectors.insert(
                ConnId(base + t as u32),
                ConnPlacement { at: Point::new(rep_at.x + 1, rep_at.y + 1) },
            );
        }
        base += count as u32;
    }
    Ok((full, layout))
}
