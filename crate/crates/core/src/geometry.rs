//! Grid geometry: placements, layouts, derived edges, and the layout checker.
//!
//! A layout realizes a bus graph when every bus is an axis-parallel closed
//! segment of unit-grid points, every connector is a grid point, all objects
//! are pairwise disjoint, and every incidence can be drawn as a straight
//! perpendicular segment from the connector to its bus that touches no other
//! bus and no other connector. Edges may cross each other freely.

use crate::graph::{BusGraph, BusId, ConnId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A point of the integer grid.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A coordinate axis of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// Orientation of a bus segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Horizontal => Orientation::Vertical,
            Orientation::Vertical => Orientation::Horizontal,
        }
    }

    /// The axis the segment runs along.
    pub fn axis(self) -> Axis {
        match self {
            Orientation::Horizontal => Axis::X,
            Orientation::Vertical => Axis::Y,
        }
    }
}

/// Where and how a bus is drawn. `anchor` is the minimum-coordinate endpoint
/// (leftmost for horizontal, bottommost for vertical); the segment covers
/// `length + 1` grid points, so `length` counts unit steps and must be >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BusPlacement {
    pub orientation: Orientation,
    pub anchor: Point,
    pub length: u64,
}

impl BusPlacement {
    pub fn horizontal(x: i64, y: i64, length: u64) -> Self {
        BusPlacement { orientation: Orientation::Horizontal, anchor: Point::new(x, y), length }
    }

    pub fn vertical(x: i64, y: i64, length: u64) -> Self {
        BusPlacement { orientation: Orientation::Vertical, anchor: Point::new(x, y), length }
    }

    /// Inclusive span along the segment's own axis, `(lo, hi)`.
    /// Returns `None` on coordinate overflow.
    pub fn main_range(&self) -> Option<(i64, i64)> {
        let lo = match self.orientation {
            Orientation::Horizontal => self.anchor.x,
            Orientation::Vertical => self.anchor.y,
        };
        let len = i64::try_from(self.length).ok()?;
        Some((lo, lo.checked_add(len)?))
    }

    /// The fixed coordinate on the perpendicular axis.
    pub fn cross(&self) -> i64 {
        match self.orientation {
            Orientation::Horizontal => self.anchor.y,
            Orientation::Vertical => self.anchor.x,
        }
    }

    /// The maximum-coordinate endpoint. Meaningful only when
    /// [`main_range`](Self::main_range) is `Some`.
    pub fn end(&self) -> Point {
        match self.main_range() {
            Some((_, hi)) => match self.orientation {
                Orientation::Horizontal => Point::new(hi, self.anchor.y),
                Orientation::Vertical => Point::new(self.anchor.x, hi),
            },
            None => self.anchor,
        }
    }

    pub fn covers(&self, p: Point) -> bool {
        let Some((lo, hi)) = self.main_range() else { return false };
        match self.orientation {
            Orientation::Horizontal => p.y == self.anchor.y && lo <= p.x && p.x <= hi,
            Orientation::Vertical => p.x == self.anchor.x && lo <= p.y && p.y <= hi,
        }
    }
}

/// Where a connector is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnPlacement {
    pub at: Point,
}

/// A drawing of a bus graph: one placement per bus and per connector.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layout {
    pub buses: BTreeMap<BusId, BusPlacement>,
    pub connectors: BTreeMap<ConnId, ConnPlacement>,
}

impl Layout {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place_bus(&mut self, id: BusId, placement: BusPlacement) {
        self.buses.insert(id, placement);
    }

    pub fn place_connector(&mut self, id: ConnId, at: Point) {
        self.connectors.insert(id, ConnPlacement { at });
    }

    /// Smallest axis-aligned rectangle containing every placed object,
    /// as `(min, max)` corners. `None` for an empty layout.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut bb: Option<(Point, Point)> = None;
        let mut grow = |p: Point| {
            bb = Some(match bb {
                None => (p, p),
                Some((lo, hi)) => (
                    Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                    Point::new(hi.x.max(p.x), hi.y.max(p.y)),
                ),
            });
        };
        for pl in self.buses.values() {
            grow(pl.anchor);
            grow(pl.end());
        }
        for c in self.connectors.values() {
            grow(c.at);
        }
        bb
    }
}

/// One horizontal-or-vertical orientation per bus, indexed by `BusId`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationAssignment {
    pub orientations: Vec<Orientation>,
}

impl OrientationAssignment {
    pub fn new(orientations: Vec<Orientation>) -> Self {
        OrientationAssignment { orientations }
    }

    pub fn get(&self, b: BusId) -> Orientation {
        self.orientations[b.0 as usize]
    }

    /// True when every connector could locally attach all of its buses:
    /// at most two incident buses horizontal and at most two vertical,
    /// since a connector has only two vertical and two horizontal edge slots.
    /// Incidence lists are treated as sets, so repeats do not double-count.
    pub fn is_feasible(&self, g: &BusGraph) -> bool {
        g.connectors.iter().all(|c| {
            let (mut h, mut v) = (0, 0);
            for (i, b) in c.incident.iter().enumerate() {
                if c.incident[..i].contains(b) {
                    continue;
                }
                match self.orientations[b.0 as usize] {
                    Orientation::Horizontal => h += 1,
                    Orientation::Vertical => v += 1,
                }
            }
            h <= 2 && v <= 2
        })
    }

    /// Reads the orientation of every bus of `g` out of a layout.
    /// `None` if some bus is unplaced.
    pub fn from_layout(g: &BusGraph, l: &Layout) -> Option<Self> {
        let mut out = Vec::with_capacity(g.buses.len());
        for i in 0..g.buses.len() {
            out.push(l.buses.get(&BusId(i as u32))?.orientation);
        }
        Some(OrientationAssignment { orientations: out })
    }
}

/// A derived incidence segment from a connector to the nearest point of its
/// bus. `a` is the connector point, `b` the foot on the bus; the segment is
/// perpendicular to the bus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSegment {
    pub connector: ConnId,
    pub bus: BusId,
    pub a: Point,
    pub b: Point,
}

/// Which drawing rule a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LayoutRule {
    /// A bus placement is degenerate (length < 1) or overflows coordinates.
    OffGrid,
    /// A graph object has no placement, or a placement names no graph object.
    MissingPlacement,
    /// An incidence admits no perpendicular segment: the connector is on the
    /// bus's supporting line, or its projection misses the bus's extent.
    EdgeUnderivable,
    /// A derived edge passes through some other connector.
    EdgeContainsConnector,
    /// A derived edge touches a bus other than the one it attaches to.
    EdgeHitsForeignBus,
    /// Two placed objects (bus/bus, bus/connector, connector/connector)
    /// share a grid point.
    ObjectOverlap,
    /// A bus declares a required length and is drawn with a different one.
    LengthMismatch,
}

/// One broken rule together with the names of the objects involved.
/// Coordinates are deliberately omitted so that reports compare equal across
/// layout transformations that preserve validity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub rule: LayoutRule,
    pub offenders: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.rule, self.offenders.join(", "))
    }
}

fn ranges_overlap(a: (i64, i64), b: (i64, i64)) -> bool {
    a.0.max(b.0) <= a.1.min(b.1)
}

struct Indexes {
    /// row -> sorted (x_lo, x_hi, id) of horizontal buses on that row
    h_rows: BTreeMap<i64, Vec<(i64, i64, BusId)>>,
    /// col -> sorted (y_lo, y_hi, id) of vertical buses on that column
    v_cols: BTreeMap<i64, Vec<(i64, i64, BusId)>>,
    /// col -> (y, id) of connectors on that column
    conn_cols: BTreeMap<i64, Vec<(i64, ConnId)>>,
    /// row -> (x, id) of connectors on that row
    conn_rows: BTreeMap<i64, Vec<(i64, ConnId)>>,
}

impl Indexes {
    fn build(l: &Layout) -> Self {
        let mut ix = Indexes {
            h_rows: BTreeMap::new(),
            v_cols: BTreeMap::new(),
            conn_cols: BTreeMap::new(),
            conn_rows: BTreeMap::new(),
        };
        for (&id, pl) in &l.buses {
            let Some((lo, hi)) = pl.main_range() else { continue };
            match pl.orientation {
                Orientation::Horizontal => {
                    ix.h_rows.entry(pl.anchor.y).or_default().push((lo, hi, id))
                }
                Orientation::Vertical => {
                    ix.v_cols.entry(pl.anchor.x).or_default().push((lo, hi, id))
                }
            }
        }
        for v in ix.h_rows.values_mut() {
            v.sort();
        }
        for v in ix.v_cols.values_mut() {
            v.sort();
        }
        for (&id, c) in &l.connectors {
            ix.conn_cols.entry(c.at.x).or_default().push((c.at.y, id));
            ix.conn_rows.entry(c.at.y).or_default().push((c.at.x, id));
        }
        ix
    }

    /// Buses whose segment meets the vertical closed segment `col x, [y_lo, y_hi]`.
    fn buses_on_vertical_segment(&self, x: i64, y_lo: i64, y_hi: i64, out: &mut Vec<BusId>) {
        for (&row, spans) in self.h_rows.range(y_lo..=y_hi) {
            debug_assert!(y_lo <= row && row <= y_hi);
            for &(lo, hi, id) in spans {
                if lo <= x && x <= hi {
                    out.push(id);
                }
            }
        }
        if let Some(spans) = self.v_cols.get(&x) {
            for &(lo, hi, id) in spans {
                if ranges_overlap((lo, hi), (y_lo, y_hi)) {
                    out.push(id);
                }
            }
        }
    }

    /// Buses whose segment meets the horizontal closed segment `row y, [x_lo, x_hi]`.
    fn buses_on_horizontal_segment(&self, y: i64, x_lo: i64, x_hi: i64, out: &mut Vec<BusId>) {
        for (&col, spans) in self.v_cols.range(x_lo..=x_hi) {
            debug_assert!(x_lo <= col && col <= x_hi);
            for &(lo, hi, id) in spans {
                if lo <= y && y <= hi {
                    out.push(id);
                }
            }
        }
        if let Some(spans) = self.h_rows.get(&y) {
            for &(lo, hi, id) in spans {
                if ranges_overlap((lo, hi), (x_lo, x_hi)) {
                    out.push(id);
                }
            }
        }
    }
}

/// Computes the perpendicular attachment segment for one incidence, or
/// `None` when the geometry does not admit one.
fn derive_edge(conn_at: Point, pl: &BusPlacement) -> Option<(Point, Point)> {
    let (lo, hi) = pl.main_range()?;
    match pl.orientation {
        Orientation::Horizontal => {
            if conn_at.y == pl.anchor.y || conn_at.x < lo || conn_at.x > hi {
                None
            } else {
                Some((conn_at, Point::new(conn_at.x, pl.anchor.y)))
            }
        }
        Orientation::Vertical => {
            if conn_at.x == pl.anchor.x || conn_at.y < lo || conn_at.y > hi {
                None
            } else {
                Some((conn_at, Point::new(pl.anchor.x, conn_at.y)))
            }
        }
    }
}

/// Derives every incidence segment that exists. Incidences whose connector
/// or bus is unplaced, or that admit no perpendicular segment, are skipped;
/// use [`verify_layout`] to surface those as violations.
pub fn derive_edges(g: &BusGraph, l: &Layout) -> Vec<EdgeSegment> {
    let mut out = Vec::new();
    for (ci, c) in g.connectors.iter().enumerate() {
        let cid = ConnId(ci as u32);
        let Some(cp) = l.connectors.get(&cid) else { continue };
        for &b in &c.incident {
            let Some(pl) = l.buses.get(&b) else { continue };
            if let Some((a, f)) = derive_edge(cp.at, pl) {
                out.push(EdgeSegment { connector: cid, bus: b, a, b: f });
            }
        }
    }
    out
}

fn bus_name(g: &BusGraph, id: BusId) -> String {
    g.buses.get(id.0 as usize).map(|b| b.name.clone()).unwrap_or_else(|| id.to_string())
}

fn conn_name(g: &BusGraph, id: ConnId) -> String {
    g.connectors.get(id.0 as usize).map(|c| c.name.clone()).unwrap_or_else(|| id.to_string())
}

/// Checks whether `l` is a valid drawing of `g` and reports every broken
/// rule. An empty result certifies the layout realizes the graph.
pub fn verify_layout(g: &BusGraph, l: &Layout) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push =
        |rule: LayoutRule, offenders: Vec<String>| out.push(Violation { rule, offenders });

    // Placement <-> object correspondence.
    for (i, b) in g.buses.iter().enumerate() {
        if !l.buses.contains_key(&BusId(i as u32)) {
            push(LayoutRule::MissingPlacement, vec![b.name.clone()]);
        }
    }
    for (i, c) in g.connectors.iter().enumerate() {
        if !l.connectors.contains_key(&ConnId(i as u32)) {
            push(LayoutRule::MissingPlacement, vec![c.name.clone()]);
        }
    }
    for &id in l.buses.keys() {
        if id.0 as usize >= g.buses.len() {
            push(LayoutRule::MissingPlacement, vec![id.to_string()]);
        }
    }
    for &id in l.connectors.keys() {
        if id.0 as usize >= g.connectors.len() {
            push(LayoutRule::MissingPlacement, vec![id.to_string()]);
        }
    }

    // Per-placement sanity.
    for (&id, pl) in &l.buses {
        if pl.length < 1 || pl.main_range().is_none() {
            push(LayoutRule::OffGrid, vec![bus_name(g, id)]);
        }
        if let Some(b) = g.buses.get(id.0 as usize) {
            if let Some(req) = b.length {
                if req != pl.length {
                    push(LayoutRule::LengthMismatch, vec![b.name.clone()]);
                }
            }
        }
    }

    let ix = Indexes::build(l);

    // Pairwise disjointness of buses. Same-line pairs first, then crossings.
    for spans in ix.h_rows.values().chain(ix.v_cols.values()) {
        for w in 0..spans.len() {
            for v in w + 1..spans.len() {
                let (a, b) = (spans[w], spans[v]);
                if ranges_overlap((a.0, a.1), (b.0, b.1)) {
                    push(LayoutRule::ObjectOverlap, vec![bus_name(g, a.2), bus_name(g, b.2)]);
                }
            }
        }
    }
    for (&col, spans) in &ix.v_cols {
        for &(y_lo, y_hi, vid) in spans {
            for (_, hs) in ix.h_rows.range(y_lo..=y_hi) {
                for &(x_lo, x_hi, hid) in hs {
                    if x_lo <= col && col <= x_hi {
                        push(LayoutRule::ObjectOverlap, vec![bus_name(g, hid), bus_name(g, vid)]);
                    }
                }
            }
        }
    }

    // Connector / connector and connector / bus disjointness.
    let mut by_point: BTreeMap<Point, Vec<ConnId>> = BTreeMap::new();
    for (&id, c) in &l.connectors {
        by_point.entry(c.at).or_default().push(id);
    }
    for ids in by_point.values() {
        for w in 0..ids.len() {
            for v in w + 1..ids.len() {
                push(LayoutRule::ObjectOverlap, vec![conn_name(g, ids[w]), conn_name(g, ids[v])]);
            }
        }
    }
    for (&id, c) in &l.connectors {
        let mut hits = Vec::new();
        ix.buses_on_vertical_segment(c.at.x, c.at.y, c.at.y, &mut hits);
        for b in hits {
            push(LayoutRule::ObjectOverlap, vec![conn_name(g, id), bus_name(g, b)]);
        }
    }

    // Incidence edges: derivability, then clearance from foreign objects.
    for (ci, c) in g.connectors.iter().enumerate() {
        let cid = ConnId(ci as u32);
        let Some(cp) = l.connectors.get(&cid) else { continue };
        for &bid in &c.incident {
            let Some(pl) = l.buses.get(&bid) else { continue };
            let Some((a, f)) = derive_edge(cp.at, pl) else {
                push(LayoutRule::EdgeUnderivable, vec![c.name.clone(), bus_name(g, bid)]);
                continue;
            };
            let mut bus_hits = Vec::new();
            let mut conn_hits: Vec<ConnId> = Vec::new();
            if a.x == f.x {
                let (lo, hi) = (a.y.min(f.y), a.y.max(f.y));
                ix.buses_on_vertical_segment(a.x, lo, hi, &mut bus_hits);
                if let Some(pts) = ix.conn_cols.get(&a.x) {
                    conn_hits.extend(
                        pts.iter().filter(|&&(y, id)| id != cid && lo <= y && y <= hi).map(|p| p.1),
                    );
                }
            } else {
                let (lo, hi) = (a.x.min(f.x), a.x.max(f.x));
                ix.buses_on_horizontal_segment(a.y, lo, hi, &mut bus_hits);
                if let Some(pts) = ix.conn_rows.get(&a.y) {
                    conn_hits.extend(
                        pts.iter().filter(|&&(x, id)| id != cid && lo <= x && x <= hi).map(|p| p.1),
                    );
                }
            }
            for hit in bus_hits {
                if hit != bid {
                    push(
                        LayoutRule::EdgeHitsForeignBus,
                        vec![c.name.clone(), bus_name(g, bid), bus_name(g, hit)],
                    );
                }
            }
            for hit in conn_hits {
                push(
                    LayoutRule::EdgeContainsConnector,
                    vec![c.name.clone(), bus_name(g, bid), conn_name(g, hit)],
                );
            }
        }
    }

    out
}
