//! Distance engines: the batched parallel driver and its references.

pub mod brute;
pub mod config;
pub mod dijkstra;
pub mod events;
pub mod field;
pub mod ich;
pub mod pch;
pub mod pool;
pub mod select;
pub mod stats;

pub use brute::{brute_force_geodesic, BRUTE_FORCE_FACE_LIMIT};
pub use config::{EngineConfig, SelectionMode};
pub use dijkstra::run_dijkstra;
pub use events::apply_events;
pub use field::{AngleSplitTable, DistanceField};
pub use ich::{run_ich, run_ich_with};
pub use pch::run_pch;
pub use pool::{exclusive_prefix_sum, WindowPool};
pub use select::select_nearest;
pub use stats::{RunStats, STATS_SCHEMA};
