//! A library of bus-graph components with rigid orientation behavior.
//!
//! Each builder appends one component to an existing graph, naming every
//! object `"{prefix}.{role}"`, and returns a [`GadgetHandle`] mapping role
//! names to ids. The components are the building blocks of the hardness
//! reductions in [`crate::reductions`]. Their advertised orientation
//! behavior is checked exhaustively in the test suite with
//! [`crate::solvers::enumerate_orientations`].

use crate::graph::{BusGraph, BusId, ConnId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which component a [`GadgetHandle`] points at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GadgetKind {
    Perp,
    Flipper,
    Chain,
    VariableBox { true_ports: usize, false_ports: usize },
    Deg3Perp,
    Deg2Perp,
}

/// Role-name to id mapping for one component instance inside a larger graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetHandle {
    pub kind: GadgetKind,
    pub bus_roles: BTreeMap<String, BusId>,
    pub conn_roles: BTreeMap<String, ConnId>,
}

impl GadgetHandle {
    fn new(kind: GadgetKind) -> Self {
        GadgetHandle { kind, bus_roles: BTreeMap::new(), conn_roles: BTreeMap::new() }
    }

    /// Id of the bus playing `role`. Panics on unknown roles.
    pub fn bus(&self, role: &str) -> BusId {
        *self.bus_roles.get(role).unwrap_or_else(|| panic!("no bus role {role:?}"))
    }

    /// Id of the connector playing `role`. Panics on unknown roles.
    pub fn conn(&self, role: &str) -> ConnId {
        *self.conn_roles.get(role).unwrap_or_else(|| panic!("no connector role {role:?}"))
    }
}

struct Builder<'g> {
    g: &'g mut BusGraph,
    prefix: String,
    handle: GadgetHandle,
}

impl<'g> Builder<'g> {
    fn new(g: &'g mut BusGraph, prefix: &str, kind: GadgetKind) -> Self {
        Builder { g, prefix: prefix.to_string(), handle: GadgetHandle::new(kind) }
    }

    fn bus(&mut self, role: &str) -> BusId {
        let id = self.g.add_bus(format!("{}.{}", self.prefix, role));
        self.handle.bus_roles.insert(role.to_string(), id);
        id
    }

    fn conn(&mut self, role: &str, incident: &[BusId]) -> ConnId {
        let id = self.g.add_connector(format!("{}.{}", self.prefix, role), incident);
        self.handle.conn_roles.insert(role.to_string(), id);
        id
    }

    /// Adopts all roles of a sub-component under `"{sub}.{role}"`.
    fn merge(&mut self, sub: &str, h: &GadgetHandle) {
        for (r, &id) in &h.bus_roles {
            self.handle.bus_roles.insert(format!("{sub}.{r}"), id);
        }
        for (r, &id) in &h.conn_roles {
            self.handle.conn_roles.insert(format!("{sub}.{r}"), id);
        }
    }

    fn alias_bus(&mut self, role: &str, id: BusId) {
        self.handle.bus_roles.insert(role.to_string(), id);
    }

    fn alias_conn(&mut self, role: &str, id: ConnId) {
        self.handle.conn_roles.insert(role.to_string(), id);
    }
}

/// Adds three degree-4 connectors over five buses so that in every feasible
/// orientation assignment `A` and `A'` share one orientation while `B`, `B'`
/// and `C` share the other. Exactly two assignments are feasible (the global
/// flip), and in both `A` is perpendicular to `B`.
///
/// Buses: `A, A', B, B', C`. Connectors: `x{A, A', B, B'}`, `y{A, A', B, C}`,
/// `z{A, A', B', C}`.
pub fn add_perp(g: &mut BusGraph, prefix: &str) -> GadgetHandle {
    let mut b = Builder::new(g, prefix, GadgetKind::Perp);
    perp_core(&mut b);
    b.handle
}

fn perp_core(b: &mut Builder<'_>) -> [BusId; 5] {
    let a = b.bus("A");
    let a2 = b.bus("A'");
    let bb = b.bus("B");
    let b2 = b.bus("B'");
    let c = b.bus("C");
    b.conn("x", &[a, a2, bb, b2]);
    b.conn("y", &[a, a2, bb, c]);
    b.conn("z", &[a, a2, b2, c]);
    [a, a2, bb, b2, c]
}

/// A perp with one extra degree-2 connector `o{B, B'}`. Hooking a further
/// bus onto `o` (raising it to degree 3) forces that bus perpendicular to
/// `B`; this is how chains propagate an orientation while flipping it.
pub fn add_flipper(g: &mut BusGraph, prefix: &str) -> GadgetHandle {
    let mut b = Builder::new(g, prefix, GadgetKind::Flipper);
    let [_, _, bb, b2, _] = perp_core(&mut b);
    b.conn("o", &[bb, b2]);
    b.handle
}

/// Three flippers and one perp wired in sequence: each flipper's `o`
/// connector also grabs the next component's entry bus, flipping the
/// carried orientation; the final perp flips once more. Four flips make the
/// exit parallel to the entry again, so exactly two orientation assignments
/// are feasible and in both the entry bus `I` and exit bus `O` agree.
///
/// Exposed roles: entry `I`/`I'` (first flipper's `B`/`B'`), intermediate
/// entries `I_1, I_2, I_3` (with primes), exit `O`/`O'` (final perp's
/// `B`/`B'`), link connectors `o_1, o_2, o_3`, and all internal roles under
/// `F1..F3` and `P4` prefixes.
pub fn add_chain(g: &mut BusGraph, prefix: &str) -> GadgetHandle {
    let mut b = Builder::new(g, prefix, GadgetKind::Chain);
    let f1 = add_flipper(b.g, &format!("{prefix}.F1"));
    let f2 = add_flipper(b.g, &format!("{prefix}.F2"));
    let f3 = add_flipper(b.g, &format!("{prefix}.F3"));
    let p4 = add_perp(b.g, &format!("{prefix}.P4"));
    b.merge("F1", &f1);
    b.merge("F2", &f2);
    b.merge("F3", &f3);
    b.merge("P4", &p4);
    // Each link connector grabs the next component's entry bus.
    let links =
        [(f1.conn("o"), f2.bus("B")), (f2.conn("o"), f3.bus("B")), (f3.conn("o"), p4.bus("A"))];
    for (conn, bus) in links {
        b.g.connectors[conn.0 as usize].incident.push(bus);
    }
    b.alias_bus("I", f1.bus("B"));
    b.alias_bus("I'", f1.bus("B'"));
    b.alias_bus("I_1", f2.bus("B"));
    b.alias_bus("I_1'", f2.bus("B'"));
    b.alias_bus("I_2", f3.bus("B"));
    b.alias_bus("I_2'", f3.bus("B'"));
    b.alias_bus("I_3", p4.bus("A"));
    b.alias_bus("I_3'", p4.bus("A'"));
    b.alias_bus("O", p4.bus("B"));
    b.alias_bus("O'", p4.bus("B'"));
    b.alias_conn("o_1", f1.conn("o"));
    b.alias_conn("o_2", f2.conn("o"));
    b.alias_conn("o_3", f3.conn("o"));
    b.handle
}

/// The per-variable component of the satisfiability reduction: a central
/// perp (`A` perpendicular to `B` in every feasible assignment) with two
/// port banks. The `A`-side bank re-forces a perp-shaped pattern over
/// `{A, U_A}` versus `{R_A, S_A, T_A}`, so `R_A` and `S_A` always end up
/// perpendicular to `A`; each port connector `o_A^i{R_A, S_A}` then forces
/// any external bus hooked onto it parallel to `A`. The `B`-side bank does
/// the same relative to `B`. With `A` standing for a variable and `B` for
/// its negation, ports hand copies of the variable's orientation (or its
/// flip) to the chains, and exactly two assignments remain feasible.
///
/// `true_ports` and `false_ports` choose how many port connectors each bank
/// carries.
pub fn add_variable_box(
    g: &mut BusGraph,
    prefix: &str,
    true_ports: usize,
    false_ports: usize,
) -> GadgetHandle {
    let mut b = Builder::new(g, prefix, GadgetKind::VariableBox { true_ports, false_ports });
    let [a, _, bb, _, _] = perp_core(&mut b);
    for (side, flank, ports) in [("A", a, true_ports), ("B", bb, false_ports)] {
        let r = b.bus(&format!("R_{side}"));
        let s = b.bus(&format!("S_{side}"));
        let t = b.bus(&format!("T_{side}"));
        let u = b.bus(&format!("U_{side}"));
        b.conn(&format!("x_{side}"), &[flank, u, r, s]);
        b.conn(&format!("y_{side}"), &[flank, u, r, t]);
        b.conn(&format!("z_{side}"), &[flank, u, s, t]);
        for i in 1..=ports {
            b.conn(&format!("o_{side}^{i}"), &[r, s]);
        }
    }
    b.handle
}

/// A perp built from degree-3 connectors only. In every feasible orientation
/// assignment `A` is parallel to `A'`, `B` is parallel to `B'`, and `A` is
/// perpendicular to `B`; `C` and `D` are unconstrained, leaving exactly
/// eight feasible assignments.
pub fn add_deg3_perp(g: &mut BusGraph, prefix: &str) -> GadgetHandle {
    let mut b = Builder::new(g, prefix, GadgetKind::Deg3Perp);
    let a = b.bus("A");
    let a2 = b.bus("A'");
    let bb = b.bus("B");
    let b2 = b.bus("B'");
    let c = b.bus("C");
    let d = b.bus("D");
    b.conn("s", &[a, bb, c]);
    b.conn("t", &[a, bb, a2]);
    b.conn("u", &[a, bb, b2]);
    b.conn("v", &[c, a2, b2]);
    b.conn("w", &[a2, bb, d]);
    b.conn("x", &[a2, bb, b2]);
    b.conn("y", &[d, a, b2]);
    b.conn("z", &[a2, b2, a]);
    b.handle
}

/// A perp built from degree-2 connectors only: the complete pair graph on
/// `B_1..B_8`, plus `B_9` paired with `B_1..B_7`, plus `B_10` paired with
/// `B_1..B_6`, `B_8` and `B_9` (10 buses, 43 connectors).
///
/// Degree-2 connectors never constrain orientations (any connector can
/// reach one bus of each orientation, or two of the same), so the forcing
/// here is purely geometric: in every drawing of this component `B_8` and
/// `B_10` come out perpendicular. That fact is what a degree-2 hardness
/// construction builds on; this crate ships the component itself without a
/// full degree-2 reduction.
pub fn add_deg2_perp(g: &mut BusGraph, prefix: &str) -> GadgetHandle {
    let mut b = Builder::new(g, prefix, GadgetKind::Deg2Perp);
    let ids: Vec<BusId> = (1..=10).map(|i| b.bus(&format!("B_{i}"))).collect();
    let join = |b: &mut Builder<'_>, i: usize, j: usize| {
        b.conn(&format!("B_{i}-B_{j}"), &[ids[i - 1], ids[j - 1]]);
    };
    for i in 1..=8 {
        for j in i + 1..=8 {
            join(&mut b, i, j);
        }
    }
    for j in 1..=7 {
        join(&mut b, 9, j);
    }
    for j in [1, 2, 3, 4, 5, 6, 8, 9] {
        join(&mut b, 10, j);
    }
    b.handle
}
