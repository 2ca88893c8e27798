//! Small exact solvers.
//!
//! * [`solve_orientation`] / [`enumerate_orientations`]: find or list
//!   orientation assignments in which no connector has more than two
//!   incident buses of either orientation. Constraint propagation keeps
//!   these fast on gadget-heavy graphs.
//! * [`solve_realizability_small`]: complete placement search for tiny
//!   instances, with a soundness window derived from the compaction bound:
//!   a realizable graph always has a drawing inside it, so exhausting the
//!   window proves infeasibility.
//! * [`solve_nae3sat_bruteforce`] / [`solve_partition_bruteforce`]:
//!   reference oracles for the reduction sources.

use crate::geometry::{
    verify_layout, BusPlacement, Layout, Orientation, OrientationAssignment, Point,
};
use crate::graph::{BusGraph, BusId, ConnId, MAX_CONNECTOR_DEGREE};
use crate::reductions::Cnf;

/// One connector's view during orientation search.
struct OrientProblem {
    /// Incident bus lists, deduplicated.
    conns: Vec<Vec<usize>>,
    /// For each bus, the connectors watching it.
    watch: Vec<Vec<usize>>,
}

impl OrientProblem {
    fn build(g: &BusGraph) -> Option<Self> {
        let mut conns = Vec::with_capacity(g.connectors.len());
        let mut watch = vec![Vec::new(); g.buses.len()];
        for (ci, c) in g.connectors.iter().enumerate() {
            let mut inc: Vec<usize> = c.incident.iter().map(|b| b.0 as usize).collect();
            inc.sort_unstable();
            inc.dedup();
            if inc.len() > MAX_CONNECTOR_DEGREE || inc.iter().any(|&b| b >= g.buses.len()) {
                return None; // not a bus graph; nothing is feasible
            }
            for &b in &inc {
                watch[b].push(ci);
            }
            conns.push(inc);
        }
        Some(OrientProblem { conns, watch })
    }

    /// Forces consequences of `state` until a fixpoint: a connector with two
    /// buses of one orientation pushes all its undecided buses to the other.
    /// Returns false on contradiction. `touched` seeds the worklist.
    fn propagate(&self, state: &mut [Option<Orientation>], mut queue: Vec<usize>) -> bool {
        while let Some(ci) = queue.pop() {
            let inc = &self.conns[ci];
            let h = inc.iter().filter(|&&b| state[b] == Some(Orientation::Horizontal)).count();
            let v = inc.iter().filter(|&&b| state[b] == Some(Orientation::Vertical)).count();
            if h > 2 || v > 2 {
                return false;
            }
            let force = if h == 2 && h + v < inc.len() {
                Some(Orientation::Vertical)
            } else if v == 2 && h + v < inc.len() {
                Some(Orientation::Horizontal)
            } else {
                None
            };
            if let Some(o) = force {
                for &b in inc {
                    if state[b].is_none() {
                        state[b] = Some(o);
                        queue.extend(self.watch[b].iter().copied());
                    }
                }
            }
        }
        true
    }
}

fn search_orientations(
    g: &BusGraph,
    order: &[usize],
    cap: usize,
    out: &mut Vec<OrientationAssignment>,
) {
    let Some(p) = OrientProblem::build(g) else { return };
    let mut state: Vec<Option<Orientation>> = vec![None; g.buses.len()];
    // Degree-0 and degree-1 connectors never constrain anything, and the
    // initial propagation handles connectors that are already saturated.
    if !p.propagate(&mut state, (0..p.conns.len()).collect()) {
        return;
    }
    fn dfs(
        p: &OrientProblem,
        order: &[usize],
        depth: usize,
        state: &mut Vec<Option<Orientation>>,
        cap: usize,
        out: &mut Vec<OrientationAssignment>,
    ) {
        if out.len() >= cap {
            return;
        }
        let next = order[depth..].iter().position(|&b| state[b].is_none());
        let Some(next) = next.map(|i| depth + i) else {
            out.push(OrientationAssignment::new(
                state.iter().map(|o| o.unwrap_or(Orientation::Horizontal)).collect(),
            ));
            return;
        };
        let bus = order[next];
        for o in [Orientation::Horizontal, Orientation::Vertical] {
            let saved = state.clone();
            state[bus] = Some(o);
            if p.propagate(state, p.watch[bus].clone()) {
                dfs(p, order, next + 1, state, cap, out);
            }
            *state = saved;
            if out.len() >= cap {
                return;
            }
        }
    }
    dfs(&p, order, 0, &mut state, cap, out);
}

/// First-solution search that always branches on the unassigned bus whose
/// connectors contain the most already-assigned buses (ties to the heavier,
/// then lower-numbered bus). Staying next to decided territory keeps
/// refutations local: a wrong guess inside one gadget is contradicted
/// before the search wanders into independent parts of the graph, which
/// matters on reduction outputs with hundreds of buses.
fn search_first_connected(
    p: &OrientProblem,
    weight: &[usize],
    state: &mut Vec<Option<Orientation>>,
) -> bool {
    let mut conn_assigned = vec![0usize; p.conns.len()];
    for (ci, inc) in p.conns.iter().enumerate() {
        conn_assigned[ci] = inc.iter().filter(|&&b| state[b].is_some()).count();
    }
    let mut best: Option<(usize, (usize, usize))> = None;
    for b in 0..state.len() {
        if state[b].is_some() {
            continue;
        }
        let cnt: usize = p.watch[b].iter().map(|&ci| conn_assigned[ci]).sum();
        if best.is_none_or(|(_, key)| (cnt, weight[b]) > key) {
            best = Some((b, (cnt, weight[b])));
        }
    }
    let Some((bus, _)) = best else { return true };
    for o in [Orientation::Horizontal, Orientation::Vertical] {
        let saved = state.clone();
        state[bus] = Some(o);
        if p.propagate(state, p.watch[bus].clone()) && search_first_connected(p, weight, state) {
            return true;
        }
        *state = saved;
    }
    false
}

/// Finds one orientation assignment under which every connector can attach
/// all of its buses (at most two horizontal and two vertical incidences per
/// connector), or `None` if no assignment exists. Buses that no connector
/// constrains come out horizontal.
///
/// Note this is weaker than realizability: a graph can admit a feasible
/// orientation assignment and still not be drawable.
pub fn solve_orientation(g: &BusGraph) -> Option<OrientationAssignment> {
    let p = OrientProblem::build(g)?;
    let weight: Vec<usize> =
        (0..g.buses.len()).map(|b| p.watch[b].iter().map(|&ci| p.conns[ci].len()).sum()).collect();
    let mut state: Vec<Option<Orientation>> = vec![None; g.buses.len()];
    if !p.propagate(&mut state, (0..p.conns.len()).collect()) {
        return None;
    }
    if !search_first_connected(&p, &weight, &mut state) {
        return None;
    }
    Some(OrientationAssignment::new(
        state.iter().map(|o| o.expect("complete search assigns every bus")).collect(),
    ))
}

/// Enumerates feasible orientation assignments, at most `cap` of them, in
/// lexicographic order by bus id with horizontal before vertical.
pub fn enumerate_orientations(g: &BusGraph, cap: usize) -> Vec<OrientationAssignment> {
    let order: Vec<usize> = (0..g.buses.len()).collect();
    let mut out = Vec::new();
    search_orientations(g, &order, cap, &mut out);
    out
}

/// Result of the bounded realizability search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealizabilityOutcome {
    /// A drawing was found (it passes [`verify_layout`]).
    Realizable(Layout),
    /// No drawing exists with coordinates in `[-bound, bound]`, and by the
    /// compaction argument none exists at all.
    Infeasible { bound: i64 },
    /// The search hit its step budget or the instance exceeds the size this
    /// solver is meant for; nothing was decided.
    GaveUp { steps: u64 },
}

/// Knobs for [`solve_realizability_small_with`].
#[derive(Debug, Clone)]
pub struct RealizabilitySearch {
    /// Candidate placements examined before giving up.
    pub max_steps: u64,
    /// Refuse instances with more buses plus connectors than this.
    pub max_vertices: usize,
    /// Override the half-width of the search window.
    pub window: Option<i64>,
}

impl Default for RealizabilitySearch {
    fn default() -> Self {
        RealizabilitySearch { max_steps: 20_000_000, max_vertices: 8, window: None }
    }
}

/// Complete search with default limits. See
/// [`solve_realizability_small_with`].
pub fn solve_realizability_small(g: &BusGraph) -> RealizabilityOutcome {
    solve_realizability_small_with(g, &RealizabilitySearch::default())
}

/// Decides realizability for tiny instances by exhaustive placement.
///
/// Any drawing can be compacted so that each axis uses at most one
/// coordinate per connector plus two per bus (plus every covered line of a
/// bus with a declared length), then rotated and translated so some fixed
/// bus lies horizontally with its left end at the origin. The search
/// therefore only has to enumerate placements inside a window of that size
/// to be complete, which makes `Infeasible` a proof, not a heuristic.
pub fn solve_realizability_small_with(
    g: &BusGraph,
    opts: &RealizabilitySearch,
) -> RealizabilityOutcome {
    if g.buses.is_empty() {
        // Connectors cannot exist without buses; an empty graph is drawn by
        // the empty layout.
        return if g.connectors.is_empty() {
            RealizabilityOutcome::Realizable(Layout::new())
        } else {
            RealizabilityOutcome::Infeasible { bound: 0 }
        };
    }
    if g.bus_count() + g.connector_count() > opts.max_vertices {
        return RealizabilityOutcome::GaveUp { steps: 0 };
    }
    // Structurally undrawable graphs (over-degree connectors, zero-length
    // or dangling references) are infeasible outright.
    let mut conns: Vec<(ConnId, Vec<BusId>)> = Vec::new();
    for (ci, c) in g.connectors.iter().enumerate() {
        let mut inc = c.incident.clone();
        inc.sort();
        inc.dedup();
        if inc.len() > MAX_CONNECTOR_DEGREE
            || inc.is_empty()
            || inc.iter().any(|b| b.0 as usize >= g.buses.len())
        {
            return RealizabilityOutcome::Infeasible { bound: 0 };
        }
        conns.push((ConnId(ci as u32), inc));
    }
    if g.buses.iter().any(|b| b.length == Some(0)) {
        return RealizabilityOutcome::Infeasible { bound: 0 };
    }

    // Per-axis coordinate events: one per connector, two per bus, or the
    // whole covered range for buses with declared lengths.
    let events: u64 = g.connector_count() as u64
        + g.buses
            .iter()
            .map(|b| match b.length {
                Some(len) => len + 1,
                None => 2,
            })
            .sum::<u64>();
    let window = opts.window.unwrap_or_else(|| (events.max(2) - 1) as i64);

    // Most-constrained-first orders; ties by id for determinism.
    let mut bus_order: Vec<usize> = (0..g.buses.len()).collect();
    bus_order.sort_by_key(|&b| (std::cmp::Reverse(g.bus_degree(BusId(b as u32))), b));

    // Interleave: a connector is placed as soon as its last incident bus
    // is, so bad bus prefixes die before the remaining buses fan out.
    let mut rank = vec![usize::MAX; g.buses.len()];
    for (k, &b) in bus_order.iter().enumerate() {
        rank[b] = k;
    }
    let ready_at = |inc: &[BusId]| inc.iter().map(|b| rank[b.0 as usize]).max().expect("nonempty");
    conns.sort_by_key(|(id, inc)| (ready_at(inc), std::cmp::Reverse(inc.len()), id.0));
    let mut slots = Vec::with_capacity(bus_order.len() + conns.len());
    let mut next_conn = 0;
    for k in 0..bus_order.len() {
        slots.push(Slot::Bus(k));
        while next_conn < conns.len() && ready_at(&conns[next_conn].1) == k {
            slots.push(Slot::Conn(next_conn));
            next_conn += 1;
        }
    }

    let mut search = Search {
        g,
        window,
        max_len: window.max(1) as u64,
        bus_order,
        conns,
        slots,
        layout: Layout::new(),
        edges: Vec::new(),
        steps: 0,
        max_steps: opts.max_steps,
    };
    match search.place(0) {
        Err(Stop::Found(l)) => {
            debug_assert!(verify_layout(g, &l).is_empty());
            RealizabilityOutcome::Realizable(l)
        }
        Err(Stop::Budget) => RealizabilityOutcome::GaveUp { steps: search.steps },
        Ok(()) => RealizabilityOutcome::Infeasible { bound: window },
    }
}

#[derive(Clone, Copy)]
enum Slot {
    /// Index into `bus_order`.
    Bus(usize),
    /// Index into `conns`.
    Conn(usize),
}

enum Stop {
    Found(Layout),
    Budget,
}

struct Search<'a> {
    g: &'a BusGraph,
    window: i64,
    max_len: u64,
    bus_order: Vec<usize>,
    conns: Vec<(ConnId, Vec<BusId>)>,
    slots: Vec<Slot>,
    layout: Layout,
    /// Derived edges of already-placed connectors.
    edges: Vec<(Point, Point)>,
    steps: u64,
    max_steps: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), Stop> {
        self.steps += 1;
        if self.steps > self.max_steps {
            Err(Stop::Budget)
        } else {
            Ok(())
        }
    }

    fn place(&mut self, i: usize) -> Result<(), Stop> {
        match self.slots.get(i) {
            None => Err(Stop::Found(self.layout.clone())),
            Some(&Slot::Bus(k)) => self.place_bus(k, i),
            Some(&Slot::Conn(ci)) => self.place_conn(ci, i),
        }
    }

    fn place_bus(&mut self, k: usize, slot: usize) -> Result<(), Stop> {
        let id = BusId(self.bus_order[k] as u32);
        let lens: Vec<u64> = match self.g.buses[id.0 as usize].length {
            Some(len) => vec![len],
            None => (1..=self.max_len).collect(),
        };
        let orientations: &[Orientation] = if k == 0 {
            &[Orientation::Horizontal]
        } else {
            &[Orientation::Horizontal, Orientation::Vertical]
        };
        for &len in &lens {
            for &o in orientations {
                let span = len as i64;
                if span > 2 * self.window {
                    continue;
                }
                let (main_lo, main_hi) = (-self.window, self.window - span);
                let anchors: Vec<Point> = if k == 0 {
                    vec![Point::new(0, 0)]
                } else {
                    let mut v = Vec::new();
                    for main in main_lo..=main_hi {
                        for cross in -self.window..=self.window {
                            v.push(match o {
                                Orientation::Horizontal => Point::new(main, cross),
                                Orientation::Vertical => Point::new(cross, main),
                            });
                        }
                    }
                    v
                };
                for anchor in anchors {
                    self.tick()?;
                    let pl = BusPlacement { orientation: o, anchor, length: len };
                    if self.bus_fits(&pl) {
                        self.layout.place_bus(id, pl);
                        if self.bands_alive(id) {
                            self.place(slot + 1)?;
                        }
                        self.layout.buses.remove(&id);
                    }
                }
            }
        }
        Ok(())
    }

    /// Buses may not meet placed buses, cover placed connectors, or touch
    /// placed connectors' edges (which would make those edges illegal).
    fn bus_fits(&self, pl: &BusPlacement) -> bool {
        self.layout.buses.values().all(|other| !segments_meet(pl, other))
            && self.layout.connectors.values().all(|c| !pl.covers(c.at))
            && self.edges.iter().all(|&(a, b)| !segment_meets_bus(a, b, pl))
    }

    /// Coordinate ranges a connector over `inc` can still occupy: inside
    /// every placed horizontal incident bus's column span and every placed
    /// vertical one's row span. A sound over-approximation, so using it to
    /// prune keeps the search complete.
    fn band(
        &self,
        inc: &[BusId],
    ) -> Option<(std::ops::RangeInclusive<i64>, std::ops::RangeInclusive<i64>)> {
        let (mut x0, mut x1) = (-self.window, self.window);
        let (mut y0, mut y1) = (-self.window, self.window);
        for b in inc {
            let Some(pl) = self.layout.buses.get(b) else { continue };
            let (lo, hi) = pl.main_range()?;
            match pl.orientation {
                Orientation::Horizontal => {
                    x0 = x0.max(lo);
                    x1 = x1.min(hi);
                }
                Orientation::Vertical => {
                    y0 = y0.max(lo);
                    y1 = y1.min(hi);
                }
            }
        }
        (x0 <= x1 && y0 <= y1).then_some((x0..=x1, y0..=y1))
    }

    /// Forward check after placing `new_bus`: every unplaced connector on
    /// it must still have somewhere to go.
    fn bands_alive(&self, new_bus: BusId) -> bool {
        self.conns.iter().all(|(id, inc)| {
            self.layout.connectors.contains_key(id)
                || !inc.contains(&new_bus)
                || self.band(inc).is_some()
        })
    }

    fn place_conn(&mut self, ci: usize, slot: usize) -> Result<(), Stop> {
        let (id, inc) = self.conns[ci].clone();
        let Some((xs, ys)) = self.band(&inc) else { return Ok(()) };
        for x in xs {
            for y in ys.clone() {
                self.tick()?;
                let at = Point::new(x, y);
                if let Some(new_edges) = self.conn_fits(at, &inc) {
                    let added = new_edges.len();
                    self.layout.place_connector(id, at);
                    self.edges.extend(new_edges);
                    self.place(slot + 1)?;
                    self.edges.truncate(self.edges.len() - added);
                    self.layout.connectors.remove(&id);
                }
            }
        }
        Ok(())
    }

    /// All local validity checks for dropping a connector at `at`. Complete
    /// because every bus is already placed and edge/connector conflicts are
    /// checked in both directions against placed connectors.
    fn conn_fits(&self, at: Point, inc: &[BusId]) -> Option<Vec<(Point, Point)>> {
        for pl in self.layout.buses.values() {
            if pl.covers(at) {
                return None;
            }
        }
        for c in self.layout.connectors.values() {
            if c.at == at {
                return None;
            }
        }
        // Placed connectors' edges must not run through the new point.
        if self.edges.iter().any(|&(a, b)| on_segment(at, a, b)) {
            return None;
        }
        let mut new_edges = Vec::with_capacity(inc.len());
        for &bid in inc {
            let pl = &self.layout.buses[&bid];
            let foot = match pl.orientation {
                Orientation::Horizontal => {
                    let (lo, hi) = pl.main_range()?;
                    if at.y == pl.anchor.y || at.x < lo || at.x > hi {
                        return None;
                    }
                    Point::new(at.x, pl.anchor.y)
                }
                Orientation::Vertical => {
                    let (lo, hi) = pl.main_range()?;
                    if at.x == pl.anchor.x || at.y < lo || at.y > hi {
                        return None;
                    }
                    Point::new(pl.anchor.x, at.y)
                }
            };
            // The edge may touch no bus but its own target, and no placed
            // connector.
            for (&other, opl) in &self.layout.buses {
                if other != bid && segment_meets_bus(at, foot, opl) {
                    return None;
                }
            }
            for c in self.layout.connectors.values() {
                if on_segment(c.at, at, foot) {
                    return None;
                }
            }
            new_edges.push((at, foot));
        }
        Some(new_edges)
    }
}

fn segments_meet(a: &BusPlacement, b: &BusPlacement) -> bool {
    let (alo, ahi) = match a.main_range() {
        Some(r) => r,
        None => return true,
    };
    let (blo, bhi) = match b.main_range() {
        Some(r) => r,
        None => return true,
    };
    use Orientation::*;
    match (a.orientation, b.orientation) {
        (Horizontal, Horizontal) => a.anchor.y == b.anchor.y && alo.max(blo) <= ahi.min(bhi),
        (Vertical, Vertical) => a.anchor.x == b.anchor.x && alo.max(blo) <= ahi.min(bhi),
        (Horizontal, Vertical) => {
            alo <= b.anchor.x && b.anchor.x <= ahi && blo <= a.anchor.y && a.anchor.y <= bhi
        }
        (Vertical, Horizontal) => segments_meet(b, a),
    }
}

/// Is `p` on the closed axis-parallel segment `a`-`b`?
fn on_segment(p: Point, a: Point, b: Point) -> bool {
    if a.x == b.x {
        p.x == a.x && a.y.min(b.y) <= p.y && p.y <= a.y.max(b.y)
    } else {
        p.y == a.y && a.x.min(b.x) <= p.x && p.x <= a.x.max(b.x)
    }
}

fn segment_meets_bus(a: Point, b: Point, pl: &BusPlacement) -> bool {
    let (lo, hi) = match pl.main_range() {
        Some(r) => r,
        None => return true,
    };
    if a.x == b.x {
        match pl.orientation {
            Orientation::Horizontal => {
                lo <= a.x && a.x <= hi && a.y.min(b.y) <= pl.anchor.y && pl.anchor.y <= a.y.max(b.y)
            }
            Orientation::Vertical => {
                pl.anchor.x == a.x && lo.max(a.y.min(b.y)) <= hi.min(a.y.max(b.y))
            }
        }
    } else {
        match pl.orientation {
            Orientation::Vertical => {
                lo <= a.y && a.y <= hi && a.x.min(b.x) <= pl.anchor.x && pl.anchor.x <= a.x.max(b.x)
            }
            Orientation::Horizontal => {
                pl.anchor.y == a.y && lo.max(a.x.min(b.x)) <= hi.min(a.x.max(b.x))
            }
        }
    }
}

/// Tries all assignments in increasing binary order (variable `i` is bit
/// `i`) and returns the first that not-all-equal satisfies the formula.
/// Intended as a reference oracle; refuses formulas with more than 24
/// variables.
pub fn solve_nae3sat_bruteforce(cnf: &Cnf) -> Option<Vec<bool>> {
    assert!(cnf.vars <= 24, "brute force is for tiny formulas");
    for bits in 0u64..1 << cnf.vars {
        let assignment: Vec<bool> = (0..cnf.vars).map(|i| bits >> i & 1 == 1).collect();
        if cnf.nae_satisfied(&assignment) {
            return Some(assignment);
        }
    }
    None
}

/// Finds a subset with exactly half the total size, as an indicator vector,
/// via subset-sum dynamic programming. `None` when the total is odd or no
/// split exists. Intended as a reference oracle; refuses more than 30
/// elements or totals above 2^20.
pub fn solve_partition_bruteforce(sizes: &[u64]) -> Option<Vec<bool>> {
    assert!(sizes.len() <= 30, "brute force is for tiny instances");
    let total: u64 = sizes.iter().sum();
    assert!(total < (1 << 20), "brute force is for tiny instances");
    if !total.is_multiple_of(2) {
        return None;
    }
    let half = (total / 2) as usize;
    // first_reacher[t] = index of the element that first made sum t
    // reachable; elements are processed in order, so following the pointers
    // never reuses an element.
    let mut first_reacher: Vec<Option<usize>> = vec![None; half + 1];
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for (i, &s) in sizes.iter().enumerate() {
        let s = s as usize;
        if s > half {
            continue;
        }
        for t in (s..=half).rev() {
            if !reachable[t] && reachable[t - s] {
                reachable[t] = true;
                first_reacher[t] = Some(i);
            }
        }
    }
    if !reachable[half] {
        return None;
    }
    let mut subset = vec![false; sizes.len()];
    let mut t = half;
    while t > 0 {
        let i = first_reacher[t].expect("reachable sums have a reacher");
        subset[i] = true;
        t -= sizes[i] as usize;
    }
    Some(subset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{add_perp, add_variable_box};
    use crate::reductions::Lit;

    fn ladder() -> BusGraph {
        let mut g = BusGraph::new();
        let a = g.add_bus("A");
        let b = g.add_bus("B");
        g.add_connector("c", &[a, b]);
        g
    }

    #[test]
    fn orientation_search_finds_the_easy_case() {
        let g = ladder();
        let oa = solve_orientation(&g).unwrap();
        assert!(oa.is_feasible(&g));
    }

    #[test]
    fn orientation_search_detects_an_overcommitted_trio() {
        // Three buses all forced parallel to A, then a connector that needs
        // them not-all-equal.
        let mut g = BusGraph::new();
        let h = add_variable_box(&mut g, "v", 1, 0);
        let carried = g.add_bus("carried");
        g.connectors[h.conn("o_A^1").0 as usize].incident.push(carried);
        g.add_connector("q", &[h.bus("A"), h.bus("U_A"), carried]);
        assert_eq!(solve_orientation(&g), None);
        assert!(enumerate_orientations(&g, 64).is_empty());
    }

    #[test]
    fn enumeration_is_lexicographic_and_capped() {
        let mut g = BusGraph::new();
        add_perp(&mut g, "p");
        let all = enumerate_orientations(&g, 64);
        assert_eq!(all.len(), 2);
        assert!(all[0].orientations < all[1].orientations);
        assert_eq!(all[0].orientations[0], Orientation::Horizontal);
        assert_eq!(enumerate_orientations(&g, 1).len(), 1);
    }

    #[test]
    fn realizability_finds_a_ladder_drawing() {
        let g = ladder();
        match solve_realizability_small(&g) {
            RealizabilityOutcome::Realizable(l) => {
                assert!(verify_layout(&g, &l).is_empty());
            }
            other => panic!("expected a drawing, got {other:?}"),
        }
    }

    #[test]
    fn realizability_honors_declared_lengths() {
        let mut g = BusGraph::new();
        let a = g.add_bus_with_length("A", Some(3));
        let b = g.add_bus_with_length("B", Some(2));
        g.add_connector("c", &[a, b]);
        match solve_realizability_small(&g) {
            RealizabilityOutcome::Realizable(l) => {
                assert_eq!(l.buses[&a].length, 3);
                assert_eq!(l.buses[&b].length, 2);
                assert!(verify_layout(&g, &l).is_empty());
            }
            other => panic!("expected a drawing, got {other:?}"),
        }
    }

    /// Two short buses cannot host three shared connectors: connectors of
    /// the same pair can never share a grid line with each other, and only
    /// two columns project onto both buses.
    #[test]
    fn realizability_proves_the_three_connector_pair_infeasible() {
        let mut g = BusGraph::new();
        let a = g.add_bus_with_length("B1", Some(1));
        let b = g.add_bus_with_length("B2", Some(1));
        for i in 0..3 {
            g.add_connector(format!("c{i}"), &[a, b]);
        }
        match solve_realizability_small(&g) {
            RealizabilityOutcome::Infeasible { bound } => assert!(bound >= 1),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn realizability_gives_up_on_large_or_expensive_instances() {
        let mut g = BusGraph::new();
        for i in 0..9 {
            g.add_bus(format!("B{i}"));
        }
        assert_eq!(solve_realizability_small(&g), RealizabilityOutcome::GaveUp { steps: 0 });

        let g2 = ladder();
        let opts = RealizabilitySearch { max_steps: 3, ..Default::default() };
        assert!(matches!(
            solve_realizability_small_with(&g2, &opts),
            RealizabilityOutcome::GaveUp { steps: 4 }
        ));
    }

    #[test]
    fn empty_and_bus_only_graphs_are_realizable() {
        let g = BusGraph::new();
        assert!(matches!(solve_realizability_small(&g), RealizabilityOutcome::Realizable(_)));
        let mut g2 = BusGraph::new();
        g2.add_bus("A");
        g2.add_bus("B");
        match solve_realizability_small(&g2) {
            RealizabilityOutcome::Realizable(l) => assert!(verify_layout(&g2, &l).is_empty()),
            other => panic!("expected a drawing, got {other:?}"),
        }
    }

    #[test]
    fn nae_bruteforce_agrees_with_hand_checks() {
        let sat = Cnf::new(2, vec![[Lit::pos(0), Lit::pos(1), Lit::neg(1)]]).unwrap();
        let sigma = solve_nae3sat_bruteforce(&sat).unwrap();
        assert!(sat.nae_satisfied(&sigma));
        // First satisfying assignment in binary order.
        assert_eq!(sigma, vec![false, false]);

        let unsat = Cnf::new(1, vec![[Lit::pos(0), Lit::pos(0), Lit::pos(0)]]).unwrap();
        assert_eq!(solve_nae3sat_bruteforce(&unsat), None);
    }

    #[test]
    fn partition_bruteforce_agrees_with_hand_checks() {
        let subset = solve_partition_bruteforce(&[3, 5, 8]).unwrap();
        let picked: u64 =
            [3u64, 5, 8].iter().zip(&subset).filter(|(_, &s)| s).map(|(v, _)| v).sum();
        assert_eq!(picked, 8);
        assert_eq!(solve_partition_bruteforce(&[3, 2]), None, "odd total");
        assert_eq!(solve_partition_bruteforce(&[4, 4, 2, 8]), None, "even total, no split");
        assert_eq!(solve_partition_bruteforce(&[2, 2]), Some(vec![true, false]));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// The solver's answer matches the feasibility predicate, and on
            /// random tiny graphs enumeration agrees with a direct scan of
            /// all 2^n assignments.
            #[test]
            fn orientation_enumeration_matches_direct_scan(
                edges in proptest::collection::vec((0usize..5, 0usize..5, 0usize..5), 0..6),
            ) {
                let mut g = BusGraph::new();
                for i in 0..5 {
                    g.add_bus(format!("B{i}"));
                }
                for (i, &(a, b, c)) in edges.iter().enumerate() {
                    let mut inc: Vec<BusId> =
                        vec![BusId(a as u32), BusId(b as u32), BusId(c as u32)];
                    inc.dedup();
                    g.add_connector(format!("c{i}"), &inc);
                }
                let mut direct = Vec::new();
                for bits in 0u32..32 {
                    // Bus 0 on the high bit so the scan is lexicographic.
                    let oa = OrientationAssignment::new((0..5).map(|i| {
                        if bits >> (4 - i) & 1 == 0 { Orientation::Horizontal } else { Orientation::Vertical }
                    }).collect());
                    if oa.is_feasible(&g) {
                        direct.push(oa);
                    }
                }
                let enumerated = enumerate_orientations(&g, 64);
                prop_assert_eq!(&enumerated, &direct);
                prop_assert_eq!(solve_orientation(&g).is_some(), !direct.is_empty());
            }

            /// Partition brute force returns exact splits and only when one
            /// exists (cross-checked against a bitmask scan).
            #[test]
            fn partition_bruteforce_is_sound_and_complete(
                sizes in proptest::collection::vec(1u64..12, 1..8),
            ) {
                let total: u64 = sizes.iter().sum();
                let expected = (0u32..1 << sizes.len()).any(|mask| {
                    let s: u64 = sizes.iter().enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, v)| v).sum();
                    2 * s == total
                });
                match solve_partition_bruteforce(&sizes) {
                    Some(subset) => {
                        prop_assert!(expected);
                        let s: u64 = sizes.iter().zip(&subset)
                            .filter(|(_, &x)| x).map(|(v, _)| v).sum();
                        prop_assert_eq!(2 * s, total);
                    }
                    None => prop_assert!(!expected),
                }
            }
        }
    }
}
