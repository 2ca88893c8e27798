//! Concrete grid drawings: reference subgrids for single gadgets, and a
//! full drawing of the satisfiability reduction for any admissible
//! assignment.
//!
//! Routines here only *construct* layouts; judging them stays with
//! [`crate::geometry::verify_layout`]. The full-instance drawing places
//! variable boxes in a column left of the vertical axis, clause boxes in a
//! column below the horizontal axis and to the right of every variable box,
//! and routes each literal's chain as a two-bend staircase between its port
//! and its clause. Corridor rows and columns are spaced so far apart (every
//! two parallel routing edges sit on grid lines at least nine apart, or
//! never overlap laterally) that edges only ever meet by crossing, which the
//! drawing rules allow.

use crate::gadgets::{GadgetHandle, GadgetKind};
use crate::geometry::{derive_edges, BusPlacement, Layout, Orientation, Point};
use crate::graph::{BusGraph, BusId, ConnId};
use crate::reductions::{PartitionReduction, ReduceError, ReductionCert};
use crate::transforms::GridMap;
use thiserror::Error;
use Orientation::{Horizontal as H, Vertical as V};

/// Errors from the drawing routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("assignment has {got} entries but the formula has {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("assignment leaves clause {clause} with all three literals equal")]
    NotNaeSatisfying { clause: usize },
    #[error("component has no single-subgrid reference drawing")]
    UnsupportedGadget,
    #[error("component is missing role {0:?}")]
    MissingRole(String),
}

/// Side length (in grid steps) of the square reference drawings below:
/// each one occupies a 9x9 block of grid points.
const GADGET_SIDE: i64 = 8;

/// Minimum distance between the supporting grid lines of two parallel
/// inter-gadget routing edges, unless their extents never overlap.
const ROUTING_EDGE_GAP: i64 = 9;

type BusSpec = (&'static str, Orientation, (i64, i64), u64);
type ConnSpec = (&'static str, (i64, i64));

/// Reference drawing of the five-bus perp. `A`/`A'` stand vertical with
/// `B`, `B'`, `C` horizontal; all twelve connector edges derive cleanly.
const PERP_BUSES: [BusSpec; 5] = [
    ("A", V, (2, 2), 4),
    ("A'", V, (6, 2), 4),
    ("B", H, (3, 8), 1),
    ("B'", H, (3, 0), 2),
    ("C", H, (4, 3), 1),
];
const PERP_CONNS: [ConnSpec; 3] = [("x", (3, 4)), ("y", (4, 6)), ("z", (5, 2))];

/// Reference drawing of a flipper. The entry bus `B` spans the top row with
/// its midpoint column free from above, and `o` sits low-right with both
/// the downward and the rightward edge slot open, so a bus below or to the
/// right of the subgrid can be grabbed without touching anything else.
const FLIPPER_BUSES: [BusSpec; 5] = [
    ("A", V, (1, 4), 3),
    ("A'", V, (6, 4), 3),
    ("B", H, (2, 8), 5),
    ("B'", H, (2, 0), 5),
    ("C", H, (3, 6), 2),
];
const FLIPPER_CONNS: [ConnSpec; 4] = [("x", (2, 4)), ("y", (5, 7)), ("z", (3, 5)), ("o", (7, 4))];

/// Reference drawing of a chain's closing perp: the entry bus `A` is
/// reachable from the left along row 4, and the exit bus `B` lies on the
/// top row with its left stretch free, ready for the clause connector.
const TAIL_BUSES: [BusSpec; 5] = [
    ("A", V, (4, 1), 6),
    ("A'", V, (8, 2), 4),
    ("B", H, (4, 8), 3),
    ("B'", H, (5, 0), 2),
    ("C", H, (5, 3), 1),
];
const TAIL_CONNS: [ConnSpec; 3] = [("x", (7, 6)), ("y", (6, 5)), ("z", (5, 2))];

/// A rigid placement of a square reference drawing: one of the eight grid
/// symmetries applied inside the `(side+1)`-point square, then a
/// translation putting the square's low corner at `origin`.
#[derive(Clone, Copy)]
struct Frame {
    map: GridMap,
    side: i64,
    origin: Point,
}

impl Frame {
    fn point(&self, (x, y): (i64, i64)) -> Point {
        let q = self.map.apply_point(Point::new(x, y));
        // Shift negated components back into the square.
        let (dx, dy) = match self.map {
            GridMap::Identity | GridMap::Transpose => (0, 0),
            GridMap::Rot90 | GridMap::FlipH => (self.side, 0),
            GridMap::Rot270 | GridMap::FlipV => (0, self.side),
            GridMap::Rot180 | GridMap::AntiTranspose => (self.side, self.side),
        };
        Point::new(q.x + dx + self.origin.x, q.y + dy + self.origin.y)
    }

    fn bus(&self, orientation: Orientation, at: (i64, i64), length: u64) -> BusPlacement {
        let a = self.point(at);
        let e = self.point(match orientation {
            H => (at.0 + length as i64, at.1),
            V => (at.0, at.1 + length as i64),
        });
        let mapped = if self.map.swaps_orientation() { orientation.flipped() } else { orientation };
        BusPlacement { orientation: mapped, anchor: Point::new(a.x.min(e.x), a.y.min(e.y)), length }
    }
}

fn role_bus(h: &GadgetHandle, prefix: &str, role: &str) -> Result<BusId, EmbedError> {
    let name = format!("{prefix}{role}");
    h.bus_roles.get(&name).copied().ok_or(EmbedError::MissingRole(name))
}

fn role_conn(h: &GadgetHandle, prefix: &str, role: &str) -> Result<ConnId, EmbedError> {
    let name = format!("{prefix}{role}");
    h.conn_roles.get(&name).copied().ok_or(EmbedError::MissingRole(name))
}

fn stamp(
    l: &mut Layout,
    h: &GadgetHandle,
    prefix: &str,
    buses: &[BusSpec],
    conns: &[ConnSpec],
    frame: Frame,
) -> Result<(), EmbedError> {
    for &(role, o, at, len) in buses {
        l.place_bus(role_bus(h, prefix, role)?, frame.bus(o, at, len));
    }
    for &(role, at) in conns {
        l.place_connector(role_conn(h, prefix, role)?, frame.point(at));
    }
    Ok(())
}

/// Draws a variable box with bank size `a` inside an `(11a+18)`-point
/// square. Unreflected, the `A`-bank port `o_A^r` exits rightward along row
/// `11a+17-10r` and the `B`-bank port `o_B^r` exits downward along column
/// `10r`; reflecting across the antidiagonal swaps the banks' exit
/// directions. Consecutive port corridors stay ten lines apart.
fn stamp_variable_box(
    l: &mut Layout,
    h: &GadgetHandle,
    a: i64,
    true_ports: usize,
    false_ports: usize,
    map: GridMap,
    origin: Point,
) -> Result<(), EmbedError> {
    let frame = Frame { map, side: 11 * a + 17, origin };
    let long = (10 * a + 8) as u64;
    let bank = (a + 3) as u64;
    let buses: [(&str, Orientation, (i64, i64), u64); 13] = [
        ("A", V, (10 * a + 12, a + 9), 10),
        ("A'", V, (10 * a + 8, a + 9), 3),
        ("B", H, (2, a + 7), long),
        ("B'", H, (10 * a + 9, a + 13), 2),
        ("C", H, (10 * a + 10, a + 11), 1),
        ("R_A", H, (10 * a + 13, 11 * a + 16), bank),
        ("S_A", H, (10 * a + 13, a + 14), bank),
        ("T_A", H, (10 * a + 14, a + 16), 1),
        ("U_A", V, (10 * a + 16, a + 15), 4),
        ("R_B", V, (1, 3), bank),
        ("S_B", V, (10 * a + 6, 3), bank),
        ("T_B", V, (3, a + 4), 1),
        ("U_B", H, (2, a + 3), 3),
    ];
    for (role, o, at, len) in buses {
        l.place_bus(role_bus(h, "", role)?, frame.bus(o, at, len));
    }
    let conns: [(&str, (i64, i64)); 9] = [
        ("x", (10 * a + 9, a + 9)),
        ("y", (10 * a + 10, a + 10)),
        ("z", (10 * a + 11, a + 12)),
        ("x_A", (10 * a + 13, a + 18)),
        ("y_A", (10 * a + 14, a + 19)),
        ("z_A", (10 * a + 15, a + 15)),
        ("x_B", (5, a + 6)),
        ("y_B", (2, a + 4)),
        ("z_B", (4, a + 5)),
    ];
    for (role, at) in conns {
        l.place_connector(role_conn(h, "", role)?, frame.point(at));
    }
    for r in 1..=true_ports as i64 {
        let id = role_conn(h, "", &format!("o_A^{r}"))?;
        l.place_connector(id, frame.point((10 * a + 16 + r, 11 * a + 17 - 10 * r)));
    }
    for r in 1..=false_ports as i64 {
        let id = role_conn(h, "", &format!("o_B^{r}"))?;
        l.place_connector(id, frame.point((10 * r, 2 + r)));
    }
    Ok(())
}

/// Draws one component in its reference subgrid. `map` picks one of the
/// eight rigid symmetries (applied inside the subgrid, which stays put) and
/// `origin` is the subgrid's low corner. Only the component's own objects
/// are placed; if some of its connectors have since grabbed outside buses,
/// those buses are the caller's to place. Chains and the degree-limited
/// perp variants have no single-subgrid drawing and are rejected.
pub fn embed_gadget_canonical(
    h: &GadgetHandle,
    map: GridMap,
    origin: Point,
) -> Result<Layout, EmbedError> {
    let mut l = Layout::new();
    let frame = Frame { map, side: GADGET_SIDE, origin };
    match h.kind {
        GadgetKind::Perp => stamp(&mut l, h, "", &PERP_BUSES, &PERP_CONNS, frame)?,
        GadgetKind::Flipper => stamp(&mut l, h, "", &FLIPPER_BUSES, &FLIPPER_CONNS, frame)?,
        GadgetKind::VariableBox { true_ports, false_ports } => {
            let a = true_ports.max(false_ports).max(1) as i64;
            stamp_variable_box(&mut l, h, a, true_ports, false_ports, map, origin)?;
        }
        _ => return Err(EmbedError::UnsupportedGadget),
    }
    Ok(l)
}

/// Axis-aligned rectangle (inclusive corners) reserved for one component in
/// a full-instance drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetBox {
    pub label: String,
    pub lo: Point,
    pub hi: Point,
}

impl GadgetBox {
    pub fn contains(&self, p: Point) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    fn disjoint(&self, other: &GadgetBox) -> bool {
        self.hi.x < other.lo.x
            || other.hi.x < self.lo.x
            || self.hi.y < other.lo.y
            || other.hi.y < self.lo.y
    }

    /// Whether an axis-parallel segment meets this rectangle.
    fn meets_segment(&self, a: Point, b: Point) -> bool {
        let (xl, xh) = (a.x.min(b.x), a.x.max(b.x));
        let (yl, yh) = (a.y.min(b.y), a.y.max(b.y));
        xh >= self.lo.x && xl <= self.hi.x && yh >= self.lo.y && yl <= self.hi.y
    }
}

/// A full-instance drawing together with the rectangles reserved for its
/// components, ready for the routing-discipline checks.
#[derive(Debug, Clone)]
pub struct EmbeddedReduction {
    pub layout: Layout,
    pub boxes: Vec<GadgetBox>,
}

impl EmbeddedReduction {
    /// The reserved rectangles never overlap.
    pub fn boxes_pairwise_disjoint(&self) -> bool {
        let b = &self.boxes;
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| b[i].disjoint(&b[j])))
    }

    /// No connector edge passes over a reserved rectangle it does not end
    /// in: an edge may meet a rectangle only when one of its endpoints lies
    /// inside.
    pub fn edges_avoid_foreign_boxes(&self, g: &BusGraph) -> bool {
        derive_edges(g, &self.layout).iter().all(|e| {
            self.boxes
                .iter()
                .all(|r| !r.meets_segment(e.a, e.b) || r.contains(e.a) || r.contains(e.b))
        })
    }

    /// Every two parallel routing edges (edges not contained in a single
    /// reserved rectangle) either run on grid lines at least
    /// [`ROUTING_EDGE_GAP`] apart or never overlap along their shared
    /// direction.
    pub fn long_edges_well_separated(&self, g: &BusGraph) -> bool {
        // (line, extent-lo, extent-hi) per orientation.
        let mut rows: Vec<(i64, i64, i64)> = Vec::new();
        let mut cols: Vec<(i64, i64, i64)> = Vec::new();
        for e in derive_edges(g, &self.layout) {
            if self.boxes.iter().any(|r| r.contains(e.a) && r.contains(e.b)) {
                continue;
            }
            if e.a.y == e.b.y {
                rows.push((e.a.y, e.a.x.min(e.b.x), e.a.x.max(e.b.x)));
            } else {
                cols.push((e.a.x, e.a.y.min(e.b.y), e.a.y.max(e.b.y)));
            }
        }
        let ok = |v: &[(i64, i64, i64)]| {
            (0..v.len()).all(|i| {
                (i + 1..v.len()).all(|j| {
                    let (la, loa, hia) = v[i];
                    let (lb, lob, hib) = v[j];
                    (la - lb).abs() >= ROUTING_EDGE_GAP || hia < lob || hib < loa
                })
            })
        };
        ok(&rows) && ok(&cols)
    }
}

/// Relative corridor rows inside a clause box for entry slots 1..=3.
const SLOT_ROWS: [i64; 3] = [35, 20, 5];

/// Draws the whole output of [`crate::reductions::reduce_nae3sat`] for one
/// admissible assignment.
///
/// With `K = 11a+18` and `P = K+10a+2`: variable box `i` (1-based) occupies
/// `x` in `[-K, -1]`, `y` in `[P*i-K+1, P*i]`, reflected across its
/// antidiagonal when the variable is assigned false so that true literals
/// always exit rightward and false literals downward. Clause box `q`
/// (1-based) occupies `x` in `[P*n, P*n+39]`, `y` in `[-40q, -40q+39]`,
/// with entry corridors on rows `-40q+35/20/5`. A true literal's chain runs
/// port, right, down into its corridor; a false literal's chain runs port,
/// down to a staging square in the band below its box, right, down, right.
/// Every staircase bends inside its own reserved squares, and all corridor
/// lines across the instance are pairwise at least ten apart.
pub fn embed_reduction(
    cert: &ReductionCert,
    sigma: &[bool],
) -> Result<EmbeddedReduction, EmbedError> {
    if sigma.len() != cert.n {
        return Err(EmbedError::AssignmentLength { got: sigma.len(), want: cert.n });
    }
    let a = cert.a.max(1) as i64;
    let k = 11 * a + 18;
    let step = k + 10 * a + 2;
    let xc = step * cert.n as i64;
    let gadget = |map, origin| Frame { map, side: GADGET_SIDE, origin };

    let mut l = Layout::new();
    let mut boxes = Vec::new();
    for (i, vc) in cert.vars.iter().enumerate() {
        let top = step * (i as i64 + 1);
        let origin = Point::new(-k, top - k + 1);
        let map = if sigma[i] { GridMap::Identity } else { GridMap::AntiTranspose };
        stamp_variable_box(&mut l, &vc.handle, a, vc.true_ports, vc.false_ports, map, origin)?;
        boxes.push(GadgetBox { label: format!("v{i}"), lo: origin, hi: Point::new(-1, top) });
    }

    for (q, cc) in cert.clauses.iter().enumerate() {
        let cy = -40 * (q as i64 + 1);
        let vals: Vec<bool> = cc.chains.iter().map(|ch| sigma[ch.var] != ch.negated).collect();
        let trues = vals.iter().filter(|t| **t).count();
        if trues == 0 || trues == 3 {
            return Err(EmbedError::NotNaeSatisfying { clause: q });
        }
        let two_true = trues == 2;
        l.place_connector(cc.conn, Point::new(xc + 16, cy + if two_true { 11 } else { 12 }));
        boxes.push(GadgetBox {
            label: format!("c{q}"),
            lo: Point::new(xc, cy),
            hi: Point::new(xc + 39, cy + 39),
        });

        // True literals fill the top entry slots in clause order.
        let (mut next_true, mut next_false) = (0usize, if two_true { 2 } else { 1 });
        for (p, ch) in cc.chains.iter().enumerate() {
            let slot = if vals[p] {
                next_true += 1;
                next_true - 1
            } else {
                next_false += 1;
                next_false - 1
            };
            let y2 = cy + SLOT_ROWS[slot];
            let r = ch.occurrence as i64;
            let h = &ch.handle;
            let sq = |part: &str, x, y| GadgetBox {
                label: format!("c{q}.L{p}.{part}"),
                lo: Point::new(x, y),
                hi: Point::new(x + GADGET_SIDE, y + GADGET_SIDE),
            };
            if vals[p] {
                // Exit row, also the staircase's vertical corridor column.
                let y1 = step * (ch.var as i64 + 1) - 10 * r;
                stamp(
                    &mut l,
                    h,
                    "F1.",
                    &FLIPPER_BUSES,
                    &FLIPPER_CONNS,
                    gadget(GridMap::AntiTranspose, Point::new(y1 - 4, y1 - 4)),
                )?;
                stamp(
                    &mut l,
                    h,
                    "F2.",
                    &FLIPPER_BUSES,
                    &FLIPPER_CONNS,
                    gadget(GridMap::Identity, Point::new(y1 - 4, y2 - 4)),
                )?;
                boxes.push(sq("F1", y1 - 4, y1 - 4));
                boxes.push(sq("F2", y1 - 4, y2 - 4));
                let (f3, p4) = if slot == 0 {
                    let drop = if two_true { 7 } else { 8 };
                    (
                        (xc + 1, cy + 31, GridMap::AntiTranspose),
                        (xc + 1, cy + drop, GridMap::Rot270),
                    )
                } else {
                    (
                        (xc + 23, cy + 16, GridMap::AntiTranspose),
                        (xc + 23, cy + 7, GridMap::AntiTranspose),
                    )
                };
                stamp(
                    &mut l,
                    h,
                    "F3.",
                    &FLIPPER_BUSES,
                    &FLIPPER_CONNS,
                    gadget(f3.2, Point::new(f3.0, f3.1)),
                )?;
                stamp(
                    &mut l,
                    h,
                    "P4.",
                    &TAIL_BUSES,
                    &TAIL_CONNS,
                    gadget(p4.2, Point::new(p4.0, p4.1)),
                )?;
            } else {
                // Exit column, staging row in the band below the box.
                let x1 = -k + 10 * r;
                let y1 = step * ch.var as i64 + 6 + 10 * (r - 1);
                stamp(
                    &mut l,
                    h,
                    "F1.",
                    &FLIPPER_BUSES,
                    &FLIPPER_CONNS,
                    gadget(GridMap::Identity, Point::new(x1 - 4, y1 - 4)),
                )?;
                stamp(
                    &mut l,
                    h,
                    "F2.",
                    &FLIPPER_BUSES,
                    &FLIPPER_CONNS,
                    gadget(GridMap::AntiTranspose, Point::new(y1 - 4, y1 - 4)),
                )?;
                stamp(
                    &mut l,
                    h,
                    "F3.",
                    &FLIPPER_BUSES,
                    &FLIPPER_CONNS,
                    gadget(GridMap::Identity, Point::new(y1 - 4, y2 - 4)),
                )?;
                boxes.push(sq("F1", x1 - 4, y1 - 4));
                boxes.push(sq("F2", y1 - 4, y1 - 4));
                boxes.push(sq("F3", y1 - 4, y2 - 4));
                let p4 = if slot == 1 {
                    (xc + 12, cy + 16, GridMap::FlipV)
                } else {
                    (xc + 12, cy + 1, GridMap::Identity)
                };
                stamp(
                    &mut l,
                    h,
                    "P4.",
                    &TAIL_BUSES,
                    &TAIL_CONNS,
                    gadget(p4.2, Point::new(p4.0, p4.1)),
                )?;
            }
        }
    }
    Ok(EmbeddedReduction { layout: l, boxes })
}

/// Lays out a yes-instance of the halving problem built by
/// [`crate::reductions::reduce_partition`]: the spine on row 0, the chosen
/// elements end to end on row 2, the rest on row -2, and each element's
/// parallel connectors one row inside, one per covered column.
pub fn partition_witness_layout(
    red: &PartitionReduction,
    subset: &[bool],
) -> Result<Layout, ReduceError> {
    if subset.len() != red.elements.len() {
        return Err(ReduceError::NotAPartition);
    }
    let total: u64 = red.elements.iter().map(|e| e.size).sum();
    let above: u64 = red.elements.iter().zip(subset).filter(|(_, &s)| s).map(|(e, _)| e.size).sum();
    if above * 2 != total {
        return Err(ReduceError::NotAPartition);
    }
    let mut l = Layout::new();
    l.place_bus(red.star, BusPlacement::horizontal(0, 0, total / 2 - 1));
    let mut cursor = [0i64, 0i64]; // above, below
    for (e, &in_subset) in red.elements.iter().zip(subset) {
        let (row, conn_row, t) =
            if in_subset { (2, 1, &mut cursor[0]) } else { (-2, -1, &mut cursor[1]) };
        l.place_bus(e.bus, BusPlacement::horizontal(*t, row, e.size - 1));
        for (i, &c) in e.conns.iter().enumerate() {
            l.place_connector(c, Point::new(*t + i as i64, conn_row));
        }
        *t += e.size as i64;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{add_chain, add_flipper, add_perp, add_variable_box};
    use crate::geometry::{verify_layout, OrientationAssignment};
    use crate::graph::BusGraph;
    use crate::reductions::tests::{sample_assignment, sample_formula};
    use crate::reductions::{reduce_nae3sat, Cnf, Lit};

    fn assert_clean(g: &BusGraph, l: &Layout) {
        let report = verify_layout(g, l);
        assert!(report.is_empty(), "expected a clean drawing, got {report:?}");
    }

    /// Full pipeline helper: reduce, draw, verify, and run the routing
    /// discipline checks.
    fn checked_embed(cnf: &Cnf, sigma: &[bool]) -> (BusGraph, EmbeddedReduction) {
        let red = reduce_nae3sat(cnf).unwrap();
        let emb = embed_reduction(&red.cert, sigma).unwrap();
        assert_clean(&red.graph, &emb.layout);
        assert!(emb.boxes_pairwise_disjoint(), "reserved rectangles overlap");
        assert!(emb.edges_avoid_foreign_boxes(&red.graph), "edge crosses a foreign rectangle");
        assert!(emb.long_edges_well_separated(&red.graph), "routing edges too close");
        (red.graph, emb)
    }

    #[test]
    fn canonical_perp_drawing_is_valid_with_twelve_edges() {
        let mut g = BusGraph::new();
        let h = add_perp(&mut g, "p");
        let l = embed_gadget_canonical(&h, GridMap::Identity, Point::new(0, 0)).unwrap();
        assert_clean(&g, &l);
        assert_eq!(derive_edges(&g, &l).len(), 12);
        let o = OrientationAssignment::from_layout(&g, &l).unwrap();
        assert!(o.is_feasible(&g));
        assert_eq!(o.get(h.bus("A")), V);
        assert_eq!(o.get(h.bus("A'")), V);
        for role in ["B", "B'", "C"] {
            assert_eq!(o.get(h.bus(role)), H);
        }
    }

    #[test]
    fn canonical_flipper_drawing_is_valid() {
        let mut g = BusGraph::new();
        let h = add_flipper(&mut g, "f");
        let l = embed_gadget_canonical(&h, GridMap::Identity, Point::new(3, -5)).unwrap();
        assert_clean(&g, &l);
        // Twelve perp edges plus two for `o`.
        assert_eq!(derive_edges(&g, &l).len(), 14);
    }

    #[test]
    fn canonical_drawings_survive_all_rigid_motions() {
        type Build = fn(&mut BusGraph) -> GadgetHandle;
        let builders: [Build; 3] =
            [|g| add_perp(g, "p"), |g| add_flipper(g, "f"), |g| add_variable_box(g, "v", 2, 3)];
        for map in GridMap::ALL {
            for build in builders {
                let mut g = BusGraph::new();
                let h = build(&mut g);
                let l = embed_gadget_canonical(&h, map, Point::new(-7, 11)).unwrap();
                let report = verify_layout(&g, &l);
                assert!(report.is_empty(), "{map:?} {:?}: {report:?}", h.kind);
            }
        }
    }

    #[test]
    fn variable_box_ports_face_right_and_down() {
        let mut g = BusGraph::new();
        let h = add_variable_box(&mut g, "v", 1, 1);
        let l = embed_gadget_canonical(&h, GridMap::Identity, Point::new(0, 0)).unwrap();
        let o = OrientationAssignment::from_layout(&g, &l).unwrap();
        // The port rails: `R_A`/`S_A` horizontal (ports exit rightward),
        // `R_B`/`S_B` vertical (ports exit downward).
        assert_eq!(o.get(h.bus("R_A")), H);
        assert_eq!(o.get(h.bus("S_A")), H);
        assert_eq!(o.get(h.bus("R_B")), V);
        assert_eq!(o.get(h.bus("S_B")), V);
    }

    #[test]
    fn chain_has_no_standalone_drawing() {
        let mut g = BusGraph::new();
        let h = add_chain(&mut g, "k");
        assert_eq!(
            embed_gadget_canonical(&h, GridMap::Identity, Point::new(0, 0)).unwrap_err(),
            EmbedError::UnsupportedGadget
        );
    }

    #[test]
    fn single_clause_drawings_verify_in_both_shapes() {
        let cnf = Cnf::new(3, vec![[Lit::pos(0), Lit::pos(1), Lit::pos(2)]]).unwrap();
        // One true literal, then two.
        checked_embed(&cnf, &[true, false, false]);
        checked_embed(&cnf, &[true, true, false]);
    }

    #[test]
    fn sample_formula_drawing_verifies() {
        let cnf = sample_formula();
        checked_embed(&cnf, &sample_assignment());
    }

    #[test]
    fn duplicate_literal_clause_draws_cleanly() {
        let cnf = Cnf::new(1, vec![[Lit::pos(0), Lit::pos(0), Lit::neg(0)]]).unwrap();
        checked_embed(&cnf, &[true]);
        checked_embed(&cnf, &[false]);
    }

    #[test]
    fn negative_heavy_formula_draws_reflected_boxes() {
        // Every variable false: all boxes reflected, negated literals true.
        let cnf = Cnf::new(
            2,
            vec![[Lit::neg(0), Lit::neg(1), Lit::pos(0)], [Lit::neg(1), Lit::pos(0), Lit::pos(1)]],
        )
        .unwrap();
        checked_embed(&cnf, &[false, false]);
    }

    #[test]
    fn rejects_bad_assignments() {
        let cnf = Cnf::new(3, vec![[Lit::pos(0), Lit::pos(1), Lit::pos(2)]]).unwrap();
        let red = reduce_nae3sat(&cnf).unwrap();
        assert_eq!(
            embed_reduction(&red.cert, &[true, true]).unwrap_err(),
            EmbedError::AssignmentLength { got: 2, want: 3 }
        );
        assert_eq!(
            embed_reduction(&red.cert, &[true, true, true]).unwrap_err(),
            EmbedError::NotNaeSatisfying { clause: 0 }
        );
        assert_eq!(
            embed_reduction(&red.cert, &[false, false, false]).unwrap_err(),
            EmbedError::NotNaeSatisfying { clause: 0 }
        );
    }
}
