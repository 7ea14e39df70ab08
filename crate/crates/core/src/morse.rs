//! Morse-flow reading of plane graphs.
//!
//! A plane graph is the distinguished graph of a gradient-like flow on the
//! 2-disk, transversal to the boundary: vertices sit at sources, each edge
//! is the pair of saddle separatrices joining its endpoints, and each
//! bounded face holds exactly one sink. The outer face carries the outflow
//! through the disk boundary and contains no singularity, hence one flow
//! structure per plane class and `sinks = F - 1`.

use crate::canon::{EquivalenceMode, PlaneGraph};
use crate::census::{enumerate_plane, CensusError};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FlowSummary {
    pub sources: usize,
    pub saddles: usize,
    pub sinks: usize,
    /// `sources - saddles + sinks = 1`, the Euler characteristic of the
    /// disk. Always true for a valid plane graph.
    pub euler_check: bool,
}

/// Reads off the singularity counts of the flow whose distinguished graph
/// is `plane`.
pub fn flow_summary(plane: &PlaneGraph) -> FlowSummary {
    let summary = plane.map().summary().expect("plane graphs are connected");
    let sources = summary.vertex_count;
    let saddles = summary.edge_count;
    let sinks = summary.face_count - 1;
    let euler_check = sources + sinks == saddles + 1;
    assert!(euler_check, "genus-0 connectivity forces the disk Euler formula");
    FlowSummary {
        sources,
        saddles,
        sinks,
        euler_check,
    }
}

/// Number of Morse flow structures on the disk with exactly `edge_count`
/// saddles: one per plane-graph class.
pub fn flow_structure_count(
    edge_count: usize,
    mode: EquivalenceMode,
) -> Result<usize, CensusError> {
    Ok(enumerate_plane(edge_count, mode)?.entries.len())
}
