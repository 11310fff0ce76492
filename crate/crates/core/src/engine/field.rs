use std::ops::{Deref, DerefMut};

use crate::error::EngineError;
use crate::geom::SplitEntry;

/// Per-vertex geodesic distances; `+∞` where no path has been found.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceField(Vec<f64>);

impl DistanceField {
    /// All vertices unreached except the sources, which are at zero.
    pub fn with_sources(num_vertices: usize, sources: &[usize]) -> Result<Self, EngineError> {
        check_sources(num_vertices, sources)?;
        let mut values = vec![f64::INFINITY; num_vertices];
        for &s in sources {
            values[s] = 0.0;
        }
        Ok(Self(values))
    }

    pub fn from_vec(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Pointwise minimum with another field of the same size.
    pub fn min_with(&mut self, other: &DistanceField) {
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            if b < *a {
                *a = b;
            }
        }
    }
}

impl Deref for DistanceField {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for DistanceField {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

pub(crate) fn check_sources(num_vertices: usize, sources: &[usize]) -> Result<(), EngineError> {
    if sources.is_empty() {
        return Err(EngineError::NoSources);
    }
    if let Some(&bad) = sources.iter().find(|&&s| s >= num_vertices) {
        return Err(EngineError::InvalidSource {
            index: bad,
            count: num_vertices,
        });
    }
    Ok(())
}

/// For every half-edge, the window currently owning the corner across it.
#[derive(Clone, Debug)]
pub struct AngleSplitTable(Vec<Option<SplitEntry>>);

impl AngleSplitTable {
    pub fn new(num_half_edges: usize) -> Self {
        Self(vec![None; num_half_edges])
    }

    pub fn entries(&self) -> &[Option<SplitEntry>] {
        &self.0
    }

    pub fn get(&self, h: usize) -> Option<&SplitEntry> {
        self.0[h].as_ref()
    }

    pub(crate) fn slot_mut(&mut self, h: usize) -> &mut Option<SplitEntry> {
        &mut self.0[h]
    }
}
