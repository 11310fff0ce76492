//! Window geometry: unfolding, propagation across a triangle, saddle fans
//! and the two window filters.

pub mod fan;
pub mod filter;
pub mod propagate;
pub mod window;

use serde::{Deserialize, Serialize};

pub use fan::{create_fan_windows, create_source_windows, fan_spans, FanMode};
pub use filter::{ich_prune, FilterFrame};
pub use propagate::{propagate_window, KernelParams, PropagationContext, PropagationSink, WindowCounters};
pub use window::{unfold_pseudo_source, window_key};

/// Windows no wider than this fraction of their edge are dropped.
pub const EPSILON_WINDOW: f64 = 1e-9;

/// Slack for geometric predicates and filter comparisons.
pub const EPSILON_NUM: f64 = 1e-12;

/// An interval `[b0, b1]` (arc length from the origin of `half_edge`) lit
/// by a pseudo source at distance `d0` from the interval start and `d1`
/// from its end. `d` is the geodesic distance from the true source to the
/// pseudo source.
///
/// The pseudo source lies on the side of the face owning `half_edge`; the
/// window propagates into the face across the opposite half-edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub half_edge: u32,
    pub b0: f64,
    pub b1: f64,
    pub d0: f64,
    pub d1: f64,
    pub d: f64,
}

impl Window {
    #[inline]
    pub fn width(&self) -> f64 {
        self.b1 - self.b0
    }
}

/// Candidate geodesic distance for a vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DistanceEvent {
    pub vertex: u32,
    pub distance: f64,
}

/// A window claiming the corner opposite `half_edge` (in the face across
/// it), with the distance it gives that corner's vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AngleEvent {
    pub half_edge: u32,
    pub apex_distance: f64,
    pub window_key: f64,
    pub window: Window,
}

/// Winner currently stored for one corner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitEntry {
    pub window: Window,
    pub apex_distance: f64,
    pub window_key: f64,
}

/// Window with its cached priority.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KeyedWindow {
    pub key: f64,
    pub window: Window,
}

impl KeyedWindow {
    pub fn new(window: Window) -> Self {
        Self {
            key: window_key(&window),
            window,
        }
    }
}
