//! Exact single- and multi-source geodesic distances on triangle meshes.
//!
//! The main engine ([`engine::run_pch`]) propagates windows in batches: each
//! round picks the `k` windows closest to the source, propagates them in
//! parallel while reading (never writing) the shared distance and corner
//! tables, then applies the collected updates in one conflict-free pass.
//! A sequential priority-queue engine ([`engine::run_ich`]), an edge-graph
//! Dijkstra bound and a brute-force unfolding oracle serve as references.

// Negated float comparisons are deliberate: NaN must fail range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod engine;
pub mod error;
pub mod geom;
pub mod mesh;
pub mod planar;
pub mod shapes;

pub use engine::{
    brute_force_geodesic, run_dijkstra, run_ich, run_pch, DistanceField, EngineConfig, RunStats,
    SelectionMode,
};
pub use error::{EngineError, InvalidWindow, MeshError};
pub use geom::{FanMode, Window};
pub use mesh::io::{load_mesh, MeshFormat};
pub use mesh::SurfaceMesh;
