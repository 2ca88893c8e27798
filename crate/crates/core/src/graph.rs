//! Bus graphs: the combinatorial side.
//!
//! A bus graph is a bipartite structure between *buses* and *connectors*.
//! Every connector is incident to between one and four buses; a bus may be
//! incident to any number of connectors (including none). Buses may carry an
//! optional required length, used when a drawing must realize each bus as a
//! segment of exactly that many unit steps.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Maximum number of buses a single connector may touch.
pub const MAX_CONNECTOR_DEGREE: usize = 4;

/// Index of a bus within its [`BusGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BusId(pub u32);

/// Index of a connector within its [`BusGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConnId(pub u32);

impl fmt::Display for BusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

impl fmt::Display for ConnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// A bus: a named vertex that will be drawn as an axis-parallel segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bus {
    pub name: String,
    /// Required segment length in unit steps, if the instance prescribes one.
    /// Length 1 means a segment covering two grid points.
    pub length: Option<u64>,
}

/// A connector: a named hyperedge drawn as a single grid point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub name: String,
    pub incident: Vec<BusId>,
}

/// A bus graph. Fields are public; use [`validate_graph`] to check the
/// degree and reference invariants after direct construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BusGraph {
    pub buses: Vec<Bus>,
    pub connectors: Vec<Connector>,
}

impl BusGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an unbounded-length bus and returns its id.
    pub fn add_bus(&mut self, name: impl Into<String>) -> BusId {
        self.add_bus_with_length(name, None)
    }

    pub fn add_bus_with_length(&mut self, name: impl Into<String>, length: Option<u64>) -> BusId {
        let id = BusId(self.buses.len() as u32);
        self.buses.push(Bus { name: name.into(), length });
        id
    }

    /// Adds a connector incident to `incident`. The slice is stored as given;
    /// degree and duplicate checks are deferred to [`validate_graph`].
    pub fn add_connector(&mut self, name: impl Into<String>, incident: &[BusId]) -> ConnId {
        let id = ConnId(self.connectors.len() as u32);
        self.connectors.push(Connector { name: name.into(), incident: incident.to_vec() });
        id
    }

    pub fn bus_count(&self) -> usize {
        self.buses.len()
    }

    pub fn connector_count(&self) -> usize {
        self.connectors.len()
    }

    /// Total number of (connector, bus) incidences.
    pub fn incidence_count(&self) -> usize {
        self.connectors.iter().map(|c| c.incident.len()).sum()
    }

    /// Number of connectors incident to the given bus.
    pub fn bus_degree(&self, bus: BusId) -> usize {
        self.connectors.iter().filter(|c| c.incident.contains(&bus)).count()
    }

    pub fn bus_id_by_name(&self, name: &str) -> Option<BusId> {
        self.buses.iter().position(|b| b.name == name).map(|i| BusId(i as u32))
    }

    pub fn conn_id_by_name(&self, name: &str) -> Option<ConnId> {
        self.connectors.iter().position(|c| c.name == name).map(|i| ConnId(i as u32))
    }

    /// True if every bus carries a required length.
    pub fn has_all_lengths(&self) -> bool {
        self.buses.iter().all(|b| b.length.is_some())
    }
}

/// Which structural rule a [`Diagnostic`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphRule {
    /// Connector degree outside 1..=4.
    ConnectorDegree,
    /// The same bus listed twice by one connector.
    RepeatedIncidence,
    /// Connector references a bus id not present in the graph.
    UnknownBus,
    /// Declared bus length is zero.
    BadLength,
    /// Some buses carry lengths and some do not.
    MixedLengths,
}

/// One validation finding. `subject` names the offending connector or bus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub rule: GraphRule,
    pub subject: String,
    pub message: String,
}

/// Checks the structural invariants of a bus graph and returns every finding.
/// An empty result means the graph is well-formed.
pub fn validate_graph(g: &BusGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for c in &g.connectors {
        if c.incident.is_empty() || c.incident.len() > MAX_CONNECTOR_DEGREE {
            out.push(Diagnostic {
                rule: GraphRule::ConnectorDegree,
                subject: c.name.clone(),
                message: format!(
                    "connector {} touches {} buses; must touch between 1 and {}",
                    c.name,
                    c.incident.len(),
                    MAX_CONNECTOR_DEGREE
                ),
            });
        }
        let mut seen = Vec::new();
        for &b in &c.incident {
            if b.0 as usize >= g.buses.len() {
                out.push(Diagnostic {
                    rule: GraphRule::UnknownBus,
                    subject: c.name.clone(),
                    message: format!("connector {} references missing bus {}", c.name, b),
                });
            } else if seen.contains(&b) {
                out.push(Diagnostic {
                    rule: GraphRule::RepeatedIncidence,
                    subject: c.name.clone(),
                    message: format!(
                        "connector {} lists bus {} ({}) more than once",
                        c.name, b, g.buses[b.0 as usize].name
                    ),
                });
            }
            seen.push(b);
        }
    }
    for b in &g.buses {
        if b.length == Some(0) {
            out.push(Diagnostic {
                rule: GraphRule::BadLength,
                subject: b.name.clone(),
                message: format!("bus {} declares length 0; lengths must be at least 1", b.name),
            });
        }
    }
    let with_len = g.buses.iter().filter(|b| b.length.is_some()).count();
    if with_len != 0 && with_len != g.buses.len() {
        out.push(Diagnostic {
            rule: GraphRule::MixedLengths,
            subject: String::new(),
            message: format!(
                "{} of {} buses declare lengths; declare all or none",
                with_len,
                g.buses.len()
            ),
        });
    }
    out
}

/// A bus graph reduced to incidence multiplicities: for each distinct set of
/// buses, how many connectors touch exactly that set. Connector names are
/// dropped, so two graphs that differ only in connector naming or order have
/// equal multiplicity maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityMap {
    /// Declared length of each bus, indexed by `BusId`.
    pub buses: Vec<Option<u64>>,
    /// Sorted incidence set -> number of connectors with that set.
    /// Serialized as a list of pairs, since the keys are not strings.
    #[serde(with = "counts_as_pairs")]
    pub counts: BTreeMap<Vec<BusId>, u64>,
}

mod counts_as_pairs {
    use super::BusId;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        counts: &BTreeMap<Vec<BusId>, u64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        counts.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Vec<BusId>, u64>, D::Error> {
        Ok(Vec::<(Vec<BusId>, u64)>::deserialize(d)?.into_iter().collect())
    }
}

impl BusGraph {
    /// Collapses parallel connectors into multiplicity counts.
    pub fn to_multiplicity_encoding(&self) -> MultiplicityMap {
        let mut counts: BTreeMap<Vec<BusId>, u64> = BTreeMap::new();
        for c in &self.connectors {
            let mut key = c.incident.clone();
            key.sort();
            *counts.entry(key).or_insert(0) += 1;
        }
        MultiplicityMap { buses: self.buses.iter().map(|b| b.length).collect(), counts }
    }

    /// Rebuilds a bus graph from multiplicity counts. Buses are named
    /// `b0..`, connectors `c0..`; parallel connectors are materialized as
    /// distinct connectors with identical incidence sets.
    pub fn from_multiplicity_encoding(m: &MultiplicityMap) -> BusGraph {
        let mut g = BusGraph::new();
        for (i, &len) in m.buses.iter().enumerate() {
            g.add_bus_with_length(format!("b{i}"), len);
        }
        let mut next = 0usize;
        for (key, &count) in &m.counts {
            for _ in 0..count {
                g.add_connector(format!("c{next}"), key);
                next += 1;
            }
        }
        g
    }

    /// Removes all but one connector from every parallel class, keeping the
    /// first occurrence in connector order. Returns the number removed.
    pub fn remove_duplicate_hyperedges(&mut self) -> usize {
        let mut seen: BTreeMap<Vec<BusId>, ()> = BTreeMap::new();
        let before = self.connectors.len();
        self.connectors.retain(|c| {
            let mut key = c.incident.clone();
            key.sort();
            seen.insert(key, ()).is_none()
        });
        before - self.connectors.len()
    }
}
