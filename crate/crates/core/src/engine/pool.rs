//! Active window store and the per-worker output buffers it is refilled
//! from.

use rayon::prelude::*;

use crate::geom::{AngleEvent, DistanceEvent, KeyedWindow, PropagationSink, Window, WindowCounters};

/// Growable buffer that doubles explicitly when full and counts how often
/// that happened.
#[derive(Clone, Debug)]
pub struct WorkerBuffer<T> {
    data: Vec<T>,
    overflows: u64,
}

impl<T> WorkerBuffer<T> {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            data: Vec::with_capacity(capacity.max(1)),
            overflows: 0,
        }
    }

    #[inline]
    pub fn push(&mut self, x: T) {
        if self.data.len() == self.data.capacity() {
            let extra = self.data.capacity().max(1);
            self.data.reserve_exact(extra);
            self.overflows += 1;
        }
        self.data.push(x);
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.data.capacity()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn clear(&mut self) {
        self.data.clear();
    }

    pub fn overflows(&self) -> u64 {
        self.overflows
    }
}

/// Access to one of the buffers held by a worker's output.
pub trait HasBuffer<T> {
    fn buffer(&mut self) -> &mut WorkerBuffer<T>;
}

impl<T> HasBuffer<T> for WorkerBuffer<T> {
    fn buffer(&mut self) -> &mut WorkerBuffer<T> {
        self
    }
}

/// Everything one worker produces during a propagation phase.
#[derive(Debug)]
pub struct WorkerOutput {
    pub windows: WorkerBuffer<KeyedWindow>,
    pub distances: WorkerBuffer<DistanceEvent>,
    pub angles: WorkerBuffer<AngleEvent>,
    pub counters: WindowCounters,
    pub max_children: usize,
}

impl WorkerOutput {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            windows: WorkerBuffer::with_capacity(capacity),
            distances: WorkerBuffer::with_capacity(capacity),
            angles: WorkerBuffer::with_capacity(capacity),
            counters: WindowCounters::default(),
            max_children: 0,
        }
    }

    pub fn overflows(&self) -> u64 {
        self.windows.overflows() + self.distances.overflows() + self.angles.overflows()
    }
}

impl HasBuffer<KeyedWindow> for WorkerOutput {
    fn buffer(&mut self) -> &mut WorkerBuffer<KeyedWindow> {
        &mut self.windows
    }
}

impl HasBuffer<DistanceEvent> for WorkerOutput {
    fn buffer(&mut self) -> &mut WorkerBuffer<DistanceEvent> {
        &mut self.distances
    }
}

impl HasBuffer<AngleEvent> for WorkerOutput {
    fn buffer(&mut self) -> &mut WorkerBuffer<AngleEvent> {
        &mut self.angles
    }
}

impl PropagationSink for WorkerOutput {
    #[inline]
    fn emit_window(&mut self, w: Window) {
        self.windows.push(KeyedWindow::new(w));
    }
    #[inline]
    fn emit_distance(&mut self, e: DistanceEvent) {
        self.distances.push(e);
    }
    #[inline]
    fn emit_angle(&mut self, e: AngleEvent) {
        self.angles.push(e);
    }
    #[inline]
    fn counters(&mut self) -> &mut WindowCounters {
        &mut self.counters
    }
}

/// `[2, 0, 3]` becomes `[0, 2, 2]`.
pub fn exclusive_prefix_sum(counts: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    counts
        .iter()
        .map(|&c| {
            let start = acc;
            acc += c;
            start
        })
        .collect()
}

/// Appends the contents of every buffer to `dest`, in buffer order, each
/// worker copying into its own disjoint range. Returns the `(start, size)`
/// record of each buffer inside `dest`. Buffers are left empty.
pub fn reorganize<T, F>(dest: &mut Vec<T>, buffers: &mut [F]) -> Vec<(usize, usize)>
where
    T: Copy + Default + Send + Sync,
    F: HasBuffer<T> + Send,
{
    let counts: Vec<usize> = buffers.iter_mut().map(|b| b.buffer().len()).collect();
    let offsets = exclusive_prefix_sum(&counts);
    let base = dest.len();
    let total: usize = counts.iter().sum();
    dest.resize(base + total, T::default());

    let mut slices = Vec::with_capacity(buffers.len());
    let mut rest = &mut dest[base..];
    for &c in &counts {
        let (head, tail) = rest.split_at_mut(c);
        slices.push(head);
        rest = tail;
    }
    buffers.par_iter_mut().zip(slices.into_par_iter()).for_each(|(b, out)| {
        let buf = b.buffer();
        out.copy_from_slice(buf.as_slice());
        buf.clear();
    });
    offsets.into_iter().zip(counts).map(|(o, c)| (base + o, c)).collect()
}

/// The gap-free array of windows waiting to be propagated.
#[derive(Debug, Default)]
pub struct WindowPool {
    pub active: Vec<KeyedWindow>,
    /// `(start, size)` of each worker's contribution in the last refill.
    pub buffer_address: Vec<(usize, usize)>,
}

impl WindowPool {
    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    /// Moves all windows from the worker outputs into the active array.
    pub fn refill(&mut self, outputs: &mut [WorkerOutput]) {
        self.buffer_address = reorganize(&mut self.active, outputs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_sum_examples() {
        assert_eq!(exclusive_prefix_sum(&[2, 0, 3]), vec![0, 2, 2]);
        assert_eq!(exclusive_prefix_sum(&[0, 0, 0]), vec![0, 0, 0]);
        assert_eq!(exclusive_prefix_sum(&[1; 8]), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn buffer_doubles_on_overflow() {
        let mut b = WorkerBuffer::with_capacity(4);
        for i in 0..9 {
            b.push(i);
        }
        assert_eq!(b.overflows(), 2);
        assert!(b.capacity() >= 16);
        assert_eq!(b.as_slice(), &(0..9).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn reorganize_preserves_worker_order() {
        let mut bufs: Vec<WorkerBuffer<u32>> = (0..3).map(|_| WorkerBuffer::with_capacity(2)).collect();
        for (w, n) in [(0, 2), (2, 3)] {
            for i in 0..n {
                bufs[w].push(10 * w as u32 + i);
            }
        }
        let mut dest = vec![99];
        let addr = reorganize(&mut dest, &mut bufs);
        assert_eq!(dest, vec![99, 0, 1, 20, 21, 22]);
        assert_eq!(addr, vec![(1, 2), (3, 0), (3, 3)]);
        assert!(bufs.iter().all(|b| b.is_empty()));
    }

    #[test]
    fn reorganize_empty() {
        let mut bufs: Vec<WorkerBuffer<u32>> = (0..4).map(|_| WorkerBuffer::with_capacity(1)).collect();
        let mut dest = Vec::new();
        let addr = reorganize(&mut dest, &mut bufs);
        assert!(dest.is_empty());
        assert!(addr.iter().all(|&(s, n)| s == 0 && n == 0));
    }
}
