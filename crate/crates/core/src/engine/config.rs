use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::geom::{FanMode, KernelParams, EPSILON_WINDOW};

/// How each round picks the windows to propagate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionMode {
    /// The `k` windows with the smallest keys.
    #[default]
    Exact,
    /// Worker `i` scans pool slots `i, i + T, ...` and keeps its `⌈k/T⌉`
    /// nearest; cheaper, not exactly the global `k` nearest.
    Strided,
}

impl FromStr for SelectionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Self::Exact),
            "strided" | "approximate" => Ok(Self::Strided),
            other => Err(format!("unknown selection mode `{other}` (expected exact or strided)")),
        }
    }
}

impl FromStr for FanMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "clipped" => Ok(Self::Clipped),
            "full" => Ok(Self::Full),
            other => Err(format!("unknown fan mode `{other}` (expected clipped or full)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Windows propagated per round.
    pub k: usize,
    /// Worker threads.
    pub workers: usize,
    pub selection: SelectionMode,
    /// Minimum window width as a fraction of its edge length.
    pub epsilon_window: f64,
    /// Recorded for reproducibility of randomized drivers; the engine
    /// itself is deterministic.
    pub seed: u64,
    pub fan_mode: FanMode,
    /// Abort with [`EngineError::IterationCap`] after this many rounds.
    pub max_iterations: Option<usize>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            k: 4096,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            selection: SelectionMode::Exact,
            epsilon_window: EPSILON_WINDOW,
            seed: 0,
            fan_mode: FanMode::Clipped,
            max_iterations: None,
        }
    }
}

impl EngineConfig {
    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_selection(mut self, selection: SelectionMode) -> Self {
        self.selection = selection;
        self
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.k == 0 {
            return Err(EngineError::InvalidConfig("k must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(EngineError::InvalidConfig("worker count must be at least 1".into()));
        }
        if !(self.epsilon_window >= 0.0) || !self.epsilon_window.is_finite() {
            return Err(EngineError::InvalidConfig("epsilon must be a finite non-negative number".into()));
        }
        Ok(())
    }

    pub fn kernel(&self) -> KernelParams {
        KernelParams {
            epsilon_window: self.epsilon_window,
            fan_mode: self.fan_mode,
        }
    }
}
