//! The power domination observation process.
//!
//! Starting from an active sensor set `S*`, the domination step observes
//! `N[S*]`; afterwards, whenever an observed vertex has exactly one
//! unobserved neighbor, it forces that neighbor to become observed. The
//! process runs to fixpoint; the result is independent of the order in which
//! forces are applied, so a deterministic lowest-identifier-first order is
//! used to make traces reproducible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`minimal_forts`] by default.
pub const DEFAULT_FORT_ORDER_CAP: usize = 24;

/// Outcome of running the observation process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationResult {
    /// Everything observed at fixpoint.
    pub observed: VertexSet,
    /// The closed neighborhood of the active set (before any forcing).
    pub dominated: VertexSet,
    /// Forcing steps `(forcer, forced)` in the order they were applied.
    pub trace: Vec<(usize, usize)>,
}

/// Reusable buffers for the observation process.
///
/// Epoch stamping makes consecutive runs on the same graph cheap: only the
/// vertices touched by a run are reset by the next one.
pub(crate) struct Engine {
    epoch: u32,
    obs_mark: Vec<u32>,
    cnt_mark: Vec<u32>,
    cnt: Vec<u32>,
    heap: BinaryHeap<Reverse<usize>>,
    pub observed: Vec<usize>,
}

impl Engine {
    pub fn new(order: usize) -> Self {
        Self {
            epoch: 0,
            obs_mark: vec![0; order],
            cnt_mark: vec![0; order],
            cnt: vec![0; order],
            heap: BinaryHeap::new(),
            observed: Vec::with_capacity(order),
        }
    }

    fn is_observed(&self, v: usize) -> bool {
        self.obs_mark[v] == self.epoch
    }

    /// Marks `v` observed, maintains unobserved-neighbor counts, and queues
    /// any vertex that becomes able to force.
    fn mark(&mut self, g: &Graph, v: usize) {
        self.obs_mark[v] = self.epoch;
        self.observed.push(v);
        let mut unobserved = 0u32;
        for &u in g.neighbors(v) {
            if self.is_observed(u) {
                debug_assert_eq!(self.cnt_mark[u], self.epoch);
                self.cnt[u] -= 1;
                if self.cnt[u] == 1 {
                    self.heap.push(Reverse(u));
                }
            } else {
                unobserved += 1;
            }
        }
        self.cnt[v] = unobserved;
        self.cnt_mark[v] = self.epoch;
        if unobserved == 1 {
            self.heap.push(Reverse(v));
        }
    }

    /// Runs the observation process; returns the count of observed vertices.
    /// The observed vertices are left in `self.observed` in discovery order;
    /// forcing steps are appended to `trace` when provided.
    pub fn run(
        &mut self,
        g: &Graph,
        active: impl IntoIterator<Item = usize>,
        mut trace: Option<&mut Vec<(usize, usize)>>,
    ) -> usize {
        self.epoch += 1;
        if self.epoch == u32::MAX {
            // Stamp wraparound: invalidate everything once per 2^32 runs.
            self.obs_mark.fill(0);
            self.cnt_mark.fill(0);
            self.epoch = 1;
        }
        self.observed.clear();
        self.heap.clear();
        for s in active {
            if !self.is_observed(s) {
                self.mark(g, s);
            }
        }
        let seeds = self.observed.len();
        for i in 0..seeds {
            let s = self.observed[i];
            for j in 0..g.neighbors(s).len() {
                let u = g.neighbors(s)[j];
                if !self.is_observed(u) {
                    self.mark(g, u);
                }
            }
        }
        while let Some(Reverse(x)) = self.heap.pop() {
            if self.cnt[x] != 1 || !self.is_observed(x) {
                continue;
            }
            let y = *g
                .neighbors(x)
                .iter()
                .find(|&&u| !self.is_observed(u))
                .expect("count says one unobserved neighbor exists");
            if let Some(t) = trace.as_deref_mut() {
                t.push((x, y));
            }
            self.mark(g, y);
        }
        self.observed.len()
    }
}

fn check_subset(g: &Graph, s: &VertexSet) -> Result<()> {
    if let Some(v) = s.iter().find(|&v| v >= g.order()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    Ok(())
}

/// Runs the observation process from the active set and reports the observed
/// set, the dominated set `N[active]`, and the forcing trace.
///
/// An empty active set observes nothing. Replaying the trace from the
/// dominated set reconstructs the observed set exactly.
pub fn observe(g: &Graph, active: &VertexSet) -> Result<ObservationResult> {
    check_subset(g, active)?;
    let mut engine = Engine::new(g.order());
    let mut trace = Vec::new();
    engine.run(g, active.iter(), Some(&mut trace));
    let mut dominated = VertexSet::new();
    for v in active.iter() {
        dominated.insert(v);
        for &u in g.neighbors(v) {
            dominated.insert(u);
        }
    }
    Ok(ObservationResult {
        observed: engine.observed.iter().copied().collect(),
        dominated,
        trace,
    })
}

/// True when every vertex of the graph ends up observed from `active`.
pub fn is_power_dominating(g: &Graph, active: &VertexSet) -> Result<bool> {
    check_subset(g, active)?;
    let mut engine = Engine::new(g.order());
    Ok(engine.run(g, active.iter(), None) == g.order())
}

/// True when no vertex outside `f` has exactly one neighbor in `f`.
///
/// The empty set is rejected: forts are nonempty by definition.
pub fn is_fort(g: &Graph, f: &VertexSet) -> Result<bool> {
    check_subset(g, f)?;
    if f.is_empty() {
        return Err(Error::InvalidParameter(
            "forts are nonempty by definition".into(),
        ));
    }
    for v in g.vertices() {
        if f.contains(v) {
            continue;
        }
        let inside = g.neighbors(v).iter().filter(|&&u| f.contains(u)).count();
        if inside == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The entrance of a fort: vertices outside `f` adjacent to it, `N[f] \ f`.
///
/// Any power dominating set must intersect `f` together with its entrance,
/// which is what makes forts useful as lower-bound certificates.
pub fn fort_entrance(g: &Graph, f: &VertexSet) -> Result<VertexSet> {
    if !is_fort(g, f)? {
        return Err(Error::NotAFort(f.to_string()));
    }
    let mut entrance = VertexSet::new();
    for v in f.iter() {
        for &u in g.neighbors(v) {
            if !f.contains(u) {
                entrance.insert(u);
            }
        }
    }
    Ok(entrance)
}

/// The power domination number: the least `k <= max_k` such that some
/// `k`-subset of vertices power dominates, or `None` when every subset of
/// size up to `max_k` fails.
///
/// Exhaustive search over all `k`-subsets in lexicographic order, so the
/// running time grows with `C(order, max_k)`.
pub fn power_domination_number(g: &Graph, max_k: usize) -> Option<usize> {
    if g.order() == 0 {
        return Some(0);
    }
    let mut engine = Engine::new(g.order());
    for k in 1..=max_k.min(g.order()) {
        for subset in g.vertices().combinations(k) {
            if engine.run(g, subset.iter().copied(), None) == g.order() {
                return Some(k);
            }
        }
    }
    None
}

/// All inclusion-minimal forts, in increasing size then lexicographic order.
///
/// Enumerates subsets by increasing cardinality, skipping any superset of a
/// fort already found; a fort reached this way is inclusion-minimal. Capped
/// at `order <= max_order` (and 24 overall) because the search is
/// exponential.
pub fn minimal_forts(g: &Graph, max_order: usize) -> Result<Vec<VertexSet>> {
    let n = g.order();
    let cap = max_order.min(DEFAULT_FORT_ORDER_CAP);
    if n > cap {
        return Err(Error::OrderCap { order: n, cap });
    }
    // Bitmask adjacency; u32 masks suffice for n <= 24.
    let nbr: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let is_fort_mask = |f: u32| -> bool {
        for (v, nb) in nbr.iter().enumerate() {
            if f & (1 << v) == 0 && (nb & f).count_ones() == 1 {
                return false;
            }
        }
        true
    };
    let mut found: Vec<u32> = Vec::new();
    for size in 1..=n {
        for subset in (0..n).combinations(size) {
            let mask = subset.iter().fold(0u32, |m, &v| m | (1 << v));
            if found.iter().any(|&f| f | mask == mask) {
                continue;
            }
            if is_fort_mask(mask) {
                found.push(mask);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
        .collect())
}
