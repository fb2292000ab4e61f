//! Planar shock complexes and the cluster taxonomy.
//!
//! After the meeting time the shock of the local linear model is the
//! farthest-point diagram of the scaled momenta (the nearest-point Voronoi
//! diagram before it). Nodes are classified by their momentum triangle:
//! acute triangles trap matter into growing clusters, obtuse ones let it
//! pass. Four-momentum configurations split into narrow / wide / totally
//! obtuse classes which decide the cluster emitted by a shock transition.

pub mod classify;
pub mod diagram;
pub mod events;
pub mod svg;

pub use classify::{
    circumcenter, classify_configuration, classify_node, ClusterFate, ConfigClass,
    ConfigClassification, NodeClass, NodeClassification, Transition, RIGHT_ANGLE_BAND,
};
pub use diagram::{
    brute_force_tie_points,
    shock_diagram, EdgeGeometry, Halfplane, ShockCell, ShockComplex, ShockEdge, ShockNode,
};
pub use events::{
    detect_cluster_events, detect_cluster_events_with_seeds, ClusterEvent, ClusterScan,
    EventKind, MomentaPath, OrbitingMomentum, PersistentCluster, SeedCluster,
};
pub use svg::{render_svg, Scene, SceneCluster, SceneParticle, SvgStyle};
