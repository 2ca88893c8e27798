//! Modeling and algorithms for bus graphs: hypergraph-like structures whose
//! vertices ("buses") are realized as axis-parallel grid segments and whose
//! hyperedges ("connectors") are realized as grid points joined to their
//! buses by perpendicular segments.
//!
//! The crate provides:
//!
//! * data types and validation for bus graphs and grid layouts ([`graph`], [`geometry`]),
//! * a layout checker that certifies a drawing realizes a graph ([`geometry::verify_layout`]),
//! * layout surgery: coordinate compaction and duplicate-hyperedge expansion ([`transforms`]),
//! * a library of orientation gadgets with known feasible-orientation sets ([`gadgets`]),
//! * hardness reductions from NAE-3SAT and PARTITION ([`reductions`]),
//! * a constructive embedder that draws the NAE-3SAT reduction on the grid ([`embedder`]),
//! * small exact solvers for orientation assignment, bounded realizability,
//!   NAE-3SAT, and PARTITION ([`solvers`]),
//! * text formats and SVG rendering ([`io`]).

pub mod embedder;
pub mod gadgets;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod reductions;
pub mod solvers;
pub mod transforms;

pub use embedder::{
    embed_gadget_canonical, embed_reduction, partition_witness_layout, EmbedError,
    EmbeddedReduction, GadgetBox,
};
pub use geometry::{
    derive_edges, verify_layout, Axis, BusPlacement, ConnPlacement, EdgeSegment, Layout,
    LayoutRule, Orientation, OrientationAssignment, Point, Violation,
};
pub use graph::{
    validate_graph, Bus, BusGraph, BusId, ConnId, Connector, Diagnostic, MultiplicityMap,
};
pub use io::{
    parse_assignment, parse_dimacs, parse_graph, parse_layout, parse_mults, render_svg,
    serialize_assignment, serialize_dimacs, serialize_graph, serialize_layout, serialize_mults,
    ParseError, RenderError, SvgStyle,
};
pub use reductions::{
    orientation_witness, reduce_nae3sat, reduce_orientation, reduce_partition, ChainCert,
    ClauseCert, Cnf, ElementCert, Lit, NaeReduction, OrientationReduction, PartitionReduction,
    ReduceError, ReductionCert, VarCert,
};
pub use solvers::{
    enumerate_orientations, solve_nae3sat_bruteforce, solve_orientation,
    solve_partition_bruteforce, solve_realizability_small, solve_realizability_small_with,
    RealizabilityOutcome, RealizabilitySearch,
};
pub use transforms::{
    apply_map, compact, expand_duplicates, occupied_coords, translate, GridMap, TransformError,
};
