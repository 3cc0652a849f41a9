//! Exhaustive backtracking oracle for small graphs.
//!
//! Edges are colored one at a time in breadth-first order with colors tried
//! in ascending order, so every search returns the lexicographically first
//! witness (with respect to that edge order) or proves that none exists.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::coloring::EdgeColoring;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Environment variable holding the worker count for searches.
pub const THREADS_ENV: &str = "COLOR_SEARCH_THREADS";

/// Largest number of colors a search can track.
pub const MAX_SEARCH_COLORS: usize = 127;

/// Limits for a search. Running out is reported as
/// [`SearchOutcome::BudgetExhausted`], never as a proof of nonexistence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_edges: usize,
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
    pub threads: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_edges: 16,
            max_nodes: 200_000_000,
            time_limit: None,
            threads: 1,
        }
    }
}

impl SearchBudget {
    /// Default budget with the thread count taken from `COLOR_SEARCH_THREADS`.
    pub fn from_env() -> Result<Self> {
        let mut b = SearchBudget::default();
        if let Ok(raw) = std::env::var(THREADS_ENV) {
            b.threads = parse_threads(&raw)?;
        }
        Ok(b)
    }

    pub fn with_max_edges(mut self, max_edges: usize) -> Self {
        self.max_edges = max_edges;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_edges == 0 || self.max_nodes == 0 || self.threads == 0 {
            return Err(invalid("search limits must be positive"));
        }
        if self.time_limit == Some(Duration::ZERO) {
            return Err(invalid("time limit must be positive"));
        }
        Ok(())
    }

    fn admit(&self, g: &Graph) -> Result<()> {
        self.validate()?;
        if g.num_edges() > self.max_edges {
            return Err(Error::BudgetExhausted(format!(
                "{} has {} edges, budget allows {}",
                g.name(),
                g.num_edges(),
                self.max_edges
            )));
        }
        Ok(())
    }
}

pub fn parse_threads(raw: &str) -> Result<usize> {
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(invalid(format!("{THREADS_ENV} must be a positive integer, got '{raw}'"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    ProvenNone,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_proven_none(&self) -> bool {
        matches!(self, SearchOutcome::ProvenNone)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Interval coloring using every color of `[1, t]`.
    Interval,
    /// As `Interval`, and the upper spectral edge must be continuous.
    ContinuousUse,
    /// Proper coloring with colors `[1, t]`, not necessarily all used.
    Proper,
}

/// Breadth-first edge order: vertices are visited from the lowest unvisited
/// id, and each visited vertex lists its not-yet-listed edges by neighbor id.
pub fn bfs_edge_order(g: &Graph) -> Vec<usize> {
    let inc = g.incidence();
    let mut seen_v = vec![false; g.num_vertices()];
    let mut seen_e = vec![false; g.num_edges()];
    let mut order = Vec::with_capacity(g.num_edges());
    for s in 0..g.num_vertices() {
        if seen_v[s] {
            continue;
        }
        seen_v[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &inc[u] {
                if !seen_e[e] {
                    seen_e[e] = true;
                    order.push(e);
                }
                if !seen_v[w] {
                    seen_v[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Shared {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Shared {
    fn new(budget: &SearchBudget) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            max_nodes: budget.max_nodes,
            deadline: budget.time_limit.map(|d| Instant::now() + d),
        }
    }
}

enum Leaf {
    Done,
    Exhausted,
    Dead,
}

struct Worker<'a> {
    t: usize,
    mode: Mode,
    order: &'a [usize],
    ends: &'a [(usize, usize)],
    degree: &'a [usize],
    mask: Vec<u128>,
    uses: Vec<u32>,
    unused: usize,
    colors: Vec<i64>,
    local_nodes: u64,
    shared: &'a Shared,
    stop_at: &'a AtomicUsize,
    branch: usize,
}

const FLUSH: u64 = 4096;

impl<'a> Worker<'a> {
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        let flush = self.shared.max_nodes.min(FLUSH);
        if self.local_nodes.is_multiple_of(flush) {
            let total = self.shared.nodes.fetch_add(flush, Ordering::Relaxed) + flush;
            let late = self.shared.deadline.is_some_and(|d| Instant::now() >= d);
            if total >= self.shared.max_nodes || late {
                self.shared.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.exhausted.load(Ordering::Relaxed)
    }

    fn fits(&self, v: usize, c: usize) -> bool {
        let m = self.mask[v] | (1u128 << c);
        let lo = m.trailing_zeros() as usize;
        let hi = 127 - m.leading_zeros() as usize;
        hi - lo < self.degree[v]
    }

    fn assign(&mut self, e: usize, c: usize, on: bool) {
        let (u, v) = self.ends[e];
        let bit = 1u128 << c;
        if on {
            self.mask[u] |= bit;
            self.mask[v] |= bit;
            self.uses[c] += 1;
            if self.uses[c] == 1 {
                self.unused -= 1;
            }
            self.colors[e] = c as i64;
        } else {
            self.mask[u] &= !bit;
            self.mask[v] &= !bit;
            self.uses[c] -= 1;
            if self.uses[c] == 0 {
                self.unused += 1;
            }
        }
    }

    fn leaf_ok(&self) -> bool {
        match self.mode {
            Mode::Proper => true,
            Mode::Interval => self.unused == 0,
            Mode::ContinuousUse => {
                if self.unused != 0 {
                    return false;
                }
                let mut uppers: Vec<usize> = self
                    .mask
                    .iter()
                    .map(|&m| 127 - m.leading_zeros() as usize)
                    .collect();
                uppers.sort_unstable();
                uppers.windows(2).all(|w| w[1] - w[0] <= 1)
            }
        }
    }

    fn candidates(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        let (u, v) = self.ends[self.order[k]];
        let taken = self.mask[u] | self.mask[v];
        let top = match self.mode {
            // Interchangeable colors: never open more than one new color.
            Mode::Proper => {
                let used = self.mask.iter().fold(0u128, |a, &m| a | m);
                let hi = 128 - used.leading_zeros() as usize;
                (hi + 1).min(self.t)
            }
            _ => self.t,
        };
        (1..=top).filter(move |&c| {
            taken & (1u128 << c) == 0
                && (self.mode == Mode::Proper || (self.fits(u, c) && self.fits(v, c)))
        })
    }

    fn run(&mut self, k: usize) -> Leaf {
        if self.stop_at.load(Ordering::Relaxed) < self.branch {
            return Leaf::Dead;
        }
        if k == self.order.len() {
            return if self.leaf_ok() { Leaf::Done } else { Leaf::Dead };
        }
        if self.mode != Mode::Proper && self.unused > self.order.len() - k {
            return Leaf::Dead;
        }
        let cands: Vec<usize> = self.candidates(k).collect();
        let e = self.order[k];
        for c in cands {
            if !self.tick() {
                return Leaf::Exhausted;
            }
            self.assign(e, c, true);
            match self.run(k + 1) {
                Leaf::Done => return Leaf::Done,
                Leaf::Exhausted => return Leaf::Exhausted,
                Leaf::Dead => {}
            }
            self.assign(e, c, false);
        }
        Leaf::Dead
    }
}

fn search(g: &Graph, t: usize, mode: Mode, budget: &SearchBudget) -> Result<SearchOutcome<EdgeColoring>> {
    if t > MAX_SEARCH_COLORS {
        return Err(invalid(format!("searches support at most {MAX_SEARCH_COLORS} colors")));
    }
    if g.is_edgeless() {
        return Ok(if t == 0 || mode == Mode::Proper {
            SearchOutcome::Found(EdgeColoring::new(g.clone(), Vec::new())?)
        } else {
            SearchOutcome::ProvenNone
        });
    }
    let degree = g.degrees();
    let delta = degree.iter().copied().max().unwrap_or(0);
    if t < delta {
        return Ok(SearchOutcome::ProvenNone);
    }
    if mode != Mode::Proper && (t > g.num_edges() || degree.contains(&0)) {
        return Ok(SearchOutcome::ProvenNone);
    }

    let order = bfs_edge_order(g);
    let ends = g.edges();
    let first = order[0];
    // Reversing colors maps interval colorings to interval colorings, so the
    // lexicographically first one starts at or below the middle color.
    let root_top = match mode {
        Mode::Interval => t.div_ceil(2).max(1),
        Mode::ContinuousUse => t,
        Mode::Proper => 1,
    };
    let branches: Vec<usize> = (1..=root_top).collect();
    let shared = Shared::new(budget);
    let stop_at = AtomicUsize::new(usize::MAX);
    let next = AtomicUsize::new(0);

    let work = |results: &mut Vec<(usize, Leaf, Vec<i64>)>| loop {
        let b = next.fetch_add(1, Ordering::Relaxed);
        if b >= branches.len() || stop_at.load(Ordering::Relaxed) < b {
            break;
        }
        let mut w = Worker {
            t,
            mode,
            order: &order,
            ends,
            degree: &degree,
            mask: vec![0; g.num_vertices()],
            uses: vec![0; t + 1],
            unused: t,
            colors: vec![0; g.num_edges()],
            local_nodes: 0,
            shared: &shared,
            stop_at: &stop_at,
            branch: b,
        };
        let c = branches[b];
        let outcome = if w.candidates(0).any(|x| x == c) && w.tick() {
            w.assign(first, c, true);
            w.run(1)
        } else {
            Leaf::Dead
        };
        if matches!(outcome, Leaf::Done) {
            stop_at.fetch_min(b, Ordering::Relaxed);
        }
        results.push((b, outcome, w.colors));
    };

    let threads = budget.threads.min(branches.len()).max(1);
    let mut results: Vec<(usize, Leaf, Vec<i64>)> = Vec::new();
    if threads == 1 {
        work(&mut results);
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|_| {
                    s.spawn(|| {
                        let mut local = Vec::new();
                        work(&mut local);
                        local
                    })
                })
                .collect();
            for h in handles {
                results.extend(h.join().expect("search worker panicked"));
            }
        });
    }
    results.sort_by_key(|r| r.0);

    if let Some((_, _, colors)) = results.iter().find(|r| matches!(r.1, Leaf::Done)) {
        return Ok(SearchOutcome::Found(EdgeColoring::new(g.clone(), colors.clone())?));
    }
    let all_done = results.len() == branches.len();
    if !all_done || results.iter().any(|r| matches!(r.1, Leaf::Exhausted)) || shared.exhausted.load(Ordering::Relaxed) {
        return Ok(SearchOutcome::BudgetExhausted);
    }
    Ok(SearchOutcome::ProvenNone)
}

/// Searches for an interval `t`-coloring (colors `1..=t`, all used).
pub fn find_interval_t(g: &Graph, t: usize, budget: &SearchBudget) -> Result<SearchOutcome<EdgeColoring>> {
    budget.admit(g)?;
    search(g, t, Mode::Interval, budget)
}

/// Every `t` admitting an interval `t`-coloring, with one witness each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub achievable: Vec<usize>,
    pub witnesses: Vec<EdgeColoring>,
}

impl Bounds {
    pub fn is_colorable(&self) -> bool {
        !self.achievable.is_empty()
    }

    /// `w(G)`.
    pub fn min(&self) -> Option<usize> {
        self.achievable.first().copied()
    }

    /// `W(G)`.
    pub fn max(&self) -> Option<usize> {
        self.achievable.last().copied()
    }
}

/// Sweeps `t` over `[Δ, |E|]`. A graph with no achievable `t` is reported
/// as an empty set, not an error.
pub fn bounds(g: &Graph, budget: &SearchBudget) -> Result<SearchOutcome<Bounds>> {
    budget.admit(g)?;
    if g.is_edgeless() {
        return Err(invalid(format!("{} has no edges", g.name())));
    }
    let mut out = Bounds {
        achievable: Vec::new(),
        witnesses: Vec::new(),
    };
    for t in g.max_degree()..=g.num_edges() {
        match search(g, t, Mode::Interval, budget)? {
            SearchOutcome::Found(c) => {
                out.achievable.push(t);
                out.witnesses.push(c);
            }
            SearchOutcome::ProvenNone => {}
            SearchOutcome::BudgetExhausted => return Ok(SearchOutcome::BudgetExhausted),
        }
    }
    Ok(SearchOutcome::Found(out))
}

/// Searches every `t` for an interval coloring whose upper spectral edge
/// over all vertices is continuous; returns the first found at the smallest
/// such `t`.
pub fn find_continuous_use(g: &Graph, budget: &SearchBudget) -> Result<SearchOutcome<EdgeColoring>> {
    budget.admit(g)?;
    if g.is_edgeless() {
        return search(g, 0, Mode::ContinuousUse, budget);
    }
    let mut exhausted = false;
    for t in g.max_degree()..=g.num_edges() {
        match search(g, t, Mode::ContinuousUse, budget)? {
            SearchOutcome::Found(c) => return Ok(SearchOutcome::Found(c)),
            SearchOutcome::ProvenNone => {}
            SearchOutcome::BudgetExhausted => exhausted = true,
        }
    }
    Ok(if exhausted {
        SearchOutcome::BudgetExhausted
    } else {
        SearchOutcome::ProvenNone
    })
}

/// Exact chromatic index: `Δ` if a proper `Δ`-edge-coloring exists, else
/// `Δ + 1`.
pub fn chromatic_index_small(g: &Graph, budget: &SearchBudget) -> Result<SearchOutcome<usize>> {
    budget.admit(g)?;
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(SearchOutcome::Found(0));
    }
    for k in [delta, delta + 1] {
        match search(g, k, Mode::Proper, budget)? {
            SearchOutcome::Found(_) => return Ok(SearchOutcome::Found(k)),
            SearchOutcome::ProvenNone => {}
            SearchOutcome::BudgetExhausted => return Ok(SearchOutcome::BudgetExhausted),
        }
    }
    Err(Error::NotFound(format!(
        "no proper ({})-edge-coloring of {}",
        delta + 1,
        g.name()
    )))
}
