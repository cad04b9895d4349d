//! Hypercube orientations and the combinatorics behind their fault tolerance.
//!
//! * [`cube`]: `Q_d`, node sets, orientations and their predicates.
//! * [`orient`]: Euler-tour, sampled, enumerated and recursively built
//!   orientations.
//! * [`connectivity`]: strong k-node connectivity with witnesses, plus a
//!   max-flow cross-check.
//! * [`isoperimetry`]: Harper's vertex-isoperimetric formula, colex shadows
//!   and the expansion inequalities.
//! * [`harness`]: the experiments run by the `cube-orient` binary.

pub mod connectivity;
pub mod cube;
pub mod error;
pub mod format;
pub mod harness;
pub mod isoperimetry;
pub mod orient;

pub use connectivity::{
    is_strongly_k_node_connected, min_vertex_cut, strongly_connected,
    undirected_node_connectivity, ConnectivityReport,
};
pub use cube::{neighbors, Dim, EdgeId, NodeId, NodeSet, Orientation};
pub use error::{CubeError, Result};
pub use isoperimetry::{cascade_representation, harper_bv, CascadeRepresentation, RankedSubset};
pub use orient::{
    enumerate_eulerian_orientations, euler_tour_orientation, inductive_good_orientation,
    random_eulerian_orientation, SamplerConfig,
};
