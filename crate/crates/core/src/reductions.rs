//! Hardness reductions targeting bus graphs.
//!
//! * [`reduce_nae3sat`]: from not-all-equal 3-SAT to plain realizability,
//!   via variable boxes and chains from [`crate::gadgets`]. The output
//!   graph is realizable exactly when the formula has an assignment giving
//!   every clause both a true and a false literal.
//! * [`reduce_orientation`]: from NAE-3SAT to the orientation-assignment
//!   question alone (one perp per variable, one degree-3 connector per
//!   clause).
//! * [`reduce_partition`]: from PARTITION to realizability with prescribed
//!   bus lengths, using parallel connectors counted by multiplicity.

use crate::gadgets::{add_chain, add_perp, add_variable_box, GadgetHandle};
use crate::geometry::{Orientation, OrientationAssignment};
use crate::graph::{BusGraph, BusId, ConnId, MultiplicityMap};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A literal: 0-based variable index plus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, negated: true }
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        assignment[self.var] ^ self.negated
    }
}

/// A CNF formula whose clauses hold exactly three literals each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<[Lit; 3]>,
}

impl Cnf {
    pub fn new(vars: usize, clauses: Vec<[Lit; 3]>) -> Result<Self, ReduceError> {
        for cl in &clauses {
            for l in cl {
                if l.var >= vars {
                    return Err(ReduceError::BadVariable { var: l.var, vars });
                }
            }
        }
        Ok(Cnf { vars, clauses })
    }

    /// Not-all-equal satisfaction: every clause sees a true literal and a
    /// false literal under `assignment`.
    pub fn nae_satisfied(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            let vals = cl.map(|l| l.eval(assignment));
            vals.iter().any(|&v| v) && vals.iter().any(|&v| !v)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("literal uses variable {var} but the formula declares only {vars}")]
    BadVariable { var: usize, vars: usize },
    #[error(
        "clause {clause} repeats one literal three times, so it can never \
         hold both a true and a false literal"
    )]
    UnsatisfiableClause { clause: usize },
    #[error("element sizes must be positive")]
    ZeroSize,
    #[error("a partition instance needs at least one element")]
    EmptyInstance,
    #[error("element sizes sum to {total}, which is odd, so the instance is trivially infeasible")]
    OddTotal { total: u64 },
    #[error("subset selector does not describe an equal split")]
    NotAPartition,
}

/// Where one clause literal's chain plugs in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCert {
    pub handle: GadgetHandle,
    pub var: usize,
    pub negated: bool,
    /// 1-based port index on the variable box side this chain is fed from.
    pub occurrence: usize,
}

/// One clause: its degree-3 connector and the three chains feeding it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCert {
    pub conn: ConnId,
    pub chains: [ChainCert; 3],
}

/// One variable's box and its port bank sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarCert {
    pub handle: GadgetHandle,
    pub true_ports: usize,
    pub false_ports: usize,
}

/// Everything needed to interpret (and draw) the output of
/// [`reduce_nae3sat`]: the source formula and the role maps of every
/// component placed into the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCert {
    /// Number of variables.
    pub n: usize,
    /// Number of clauses.
    pub m: usize,
    /// Largest number of occurrences of any single literal; all variable
    /// boxes are drawn at the uniform size this implies.
    pub a: usize,
    pub cnf: Cnf,
    pub vars: Vec<VarCert>,
    pub clauses: Vec<ClauseCert>,
}

/// Output of [`reduce_nae3sat`].
#[derive(Debug, Clone)]
pub struct NaeReduction {
    pub graph: BusGraph,
    pub cert: ReductionCert,
}

/// Builds the realizability instance for a NAE-3SAT formula.
///
/// Per variable `i` one variable box with one port per positive occurrence
/// on the `A` bank and one per negative occurrence on the `B` bank; per
/// clause three chains (one per literal, entry bus grabbed by the matching
/// port) and one degree-3 connector over the chains' exit buses. Sizes:
/// `13n + 60m` buses, `9n + 49m` connectors, `36n + 183m` incidences.
///
/// Every port hands its bank's orientation to its chain unchanged, and the
/// clause connector tolerates at most two exits per orientation, so a
/// feasible orientation assignment encodes a not-all-equal satisfying
/// assignment and vice versa. Repeated literals inside a clause simply
/// consume several ports, so they need no special casing here.
pub fn reduce_nae3sat(cnf: &Cnf) -> Result<NaeReduction, ReduceError> {
    let n = cnf.vars;
    let m = cnf.clauses.len();
    let mut pos = vec![0usize; n];
    let mut neg = vec![0usize; n];
    for cl in &cnf.clauses {
        for l in cl {
            if l.negated {
                neg[l.var] += 1;
            } else {
                pos[l.var] += 1;
            }
        }
    }
    let a = pos.iter().chain(neg.iter()).copied().max().unwrap_or(0);

    let mut g = BusGraph::new();
    let vars: Vec<VarCert> = (0..n)
        .map(|i| VarCert {
            handle: add_variable_box(&mut g, &format!("v{i}"), pos[i], neg[i]),
            true_ports: pos[i],
            false_ports: neg[i],
        })
        .collect();

    let mut used_pos = vec![0usize; n];
    let mut used_neg = vec![0usize; n];
    let mut clauses = Vec::with_capacity(m);
    for (q, cl) in cnf.clauses.iter().enumerate() {
        let mut chains = Vec::with_capacity(3);
        for (p, l) in cl.iter().enumerate() {
            let chain = add_chain(&mut g, &format!("c{q}.L{p}"));
            let used = if l.negated { &mut used_neg } else { &mut used_pos };
            used[l.var] += 1;
            let occurrence = used[l.var];
            let side = if l.negated { "B" } else { "A" };
            let port = vars[l.var].handle.conn(&format!("o_{side}^{occurrence}"));
            let entry = chain.bus("I");
            g.connectors[port.0 as usize].incident.push(entry);
            chains.push(ChainCert { handle: chain, var: l.var, negated: l.negated, occurrence });
        }
        let chains: [ChainCert; 3] = chains.try_into().expect("three literals per clause");
        let exits = [0, 1, 2].map(|p| chains[p].handle.bus("O"));
        let conn = g.add_connector(format!("c{q}"), &exits);
        clauses.push(ClauseCert { conn, chains });
    }

    let cert = ReductionCert { n, m, a, cnf: cnf.clone(), vars, clauses };
    Ok(NaeReduction { graph: g, cert })
}

/// Output of [`reduce_orientation`].
#[derive(Debug, Clone)]
pub struct OrientationReduction {
    pub graph: BusGraph,
    /// One perp per variable: bus `A` stands for the variable, `B` for its
    /// negation (`A'`/`B'` are their forced-parallel partners).
    pub vars: Vec<GadgetHandle>,
    pub clause_conns: Vec<ConnId>,
}

/// Builds the orientation-assignment instance for a NAE-3SAT formula: one
/// perp per variable plus one degree-3 connector per clause over the
/// literals' buses (`5n` buses, `3n + m` connectors, `12n + 3m`
/// incidences).
///
/// A repeated literal inside a clause attaches the forced-parallel partner
/// bus (`A'`/`B'`) instead of listing the same bus twice, which preserves
/// the clause's meaning; a literal repeated three times makes the clause
/// never not-all-equal, and is rejected.
pub fn reduce_orientation(cnf: &Cnf) -> Result<OrientationReduction, ReduceError> {
    let mut g = BusGraph::new();
    let vars: Vec<GadgetHandle> =
        (0..cnf.vars).map(|i| add_perp(&mut g, &format!("v{i}"))).collect();
    let mut clause_conns = Vec::with_capacity(cnf.clauses.len());
    for (q, cl) in cnf.clauses.iter().enumerate() {
        let mut incident = Vec::with_capacity(3);
        for (p, l) in cl.iter().enumerate() {
            let repeats = cl[..p].iter().filter(|prev| **prev == *l).count();
            let role = match (l.negated, repeats) {
                (false, 0) => "A",
                (false, 1) => "A'",
                (true, 0) => "B",
                (true, 1) => "B'",
                _ => return Err(ReduceError::UnsatisfiableClause { clause: q }),
            };
            incident.push(vars[l.var].bus(role));
        }
        clause_conns.push(g.add_connector(format!("c{q}"), &incident));
    }
    Ok(OrientationReduction { graph: g, vars, clause_conns })
}

/// The orientation assignment a truth assignment induces on
/// [`reduce_orientation`]'s output: horizontal encodes true.
pub fn orientation_witness(
    red: &OrientationReduction,
    assignment: &[bool],
) -> OrientationAssignment {
    let mut o = vec![Orientation::Horizontal; red.graph.bus_count()];
    for (i, h) in red.vars.iter().enumerate() {
        let (t, f) = if assignment[i] {
            (Orientation::Horizontal, Orientation::Vertical)
        } else {
            (Orientation::Vertical, Orientation::Horizontal)
        };
        o[h.bus("A").0 as usize] = t;
        o[h.bus("A'").0 as usize] = t;
        o[h.bus("B").0 as usize] = f;
        o[h.bus("B'").0 as usize] = f;
        o[h.bus("C").0 as usize] = f;
    }
    OrientationAssignment::new(o)
}

/// One element of a PARTITION instance inside the reduced graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCert {
    pub bus: BusId,
    /// Scaled size: the bus has declared length `size - 1` and `size`
    /// parallel connectors to the spine.
    pub size: u64,
    pub conns: Vec<ConnId>,
}

/// Output of [`reduce_partition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReduction {
    pub graph: BusGraph,
    pub multiplicities: MultiplicityMap,
    /// All sizes were multiplied by this power of two (equal splits are
    /// preserved exactly) so that every element bus has length at least 1
    /// and the spine is nondegenerate.
    pub scale: u64,
    pub star: BusId,
    pub elements: Vec<ElementCert>,
}

/// Builds the prescribed-lengths realizability instance for a PARTITION
/// instance: a spine bus of length `total/2 - 1` plus, per element `a`, a
/// bus of length `s(a) - 1` tied to the spine by `s(a)` parallel
/// connectors. Every connector has degree 2 and every bus is drawn
/// horizontally in the witness layout, so the instance stays hard even
/// under those restrictions. Instances with an odd total size are rejected
/// as trivially infeasible.
pub fn reduce_partition(sizes: &[u64]) -> Result<PartitionReduction, ReduceError> {
    if sizes.is_empty() {
        return Err(ReduceError::EmptyInstance);
    }
    if sizes.contains(&0) {
        return Err(ReduceError::ZeroSize);
    }
    // Parity decides before any scaling: doubling every size cannot make an
    // unsplittable total splittable.
    let raw_total: u64 = sizes.iter().sum();
    if !raw_total.is_multiple_of(2) {
        return Err(ReduceError::OddTotal { total: raw_total });
    }
    let mut scale: u64 = 1;
    // Sizes of 1 would make degenerate (pointlike) buses, and a tiny total
    // would make the spine degenerate; scaling fixes both without changing
    // the answer.
    while sizes.iter().any(|&s| s * scale < 2) || sizes.iter().map(|&s| s * scale).sum::<u64>() < 4
    {
        scale *= 2;
    }
    let scaled: Vec<u64> = sizes.iter().map(|&s| s * scale).collect();
    let total: u64 = raw_total * scale;

    let mut g = BusGraph::new();
    let star = g.add_bus_with_length("B*", Some(total / 2 - 1));
    let elements: Vec<ElementCert> = scaled
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let bus = g.add_bus_with_length(format!("B_{i}"), Some(s - 1));
            let conns =
                (1..=s).map(|t| g.add_connector(format!("a{i}.c{t}"), &[star, bus])).collect();
            ElementCert { bus, size: s, conns }
        })
        .collect();
    let multiplicities = g.to_multiplicity_encoding();
    Ok(PartitionReduction { graph: g, multiplicities, scale, star, elements })
}
