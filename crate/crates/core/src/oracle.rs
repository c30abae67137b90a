//! Exact `ex(n, S_{a,b})` by branch and bound over vertex pairs.
//!
//! Vertex 0 is taken to have maximum degree `d` with neighbours `1..=d`, which
//! loses no isomorphism class. The remaining pairs `(i, j)`, `1 <= i < j`, are
//! decided in lexicographic order, include before exclude. A pair is included
//! only if every edge at either endpoint still fails the host test; no other
//! edge can start hosting, since only those two degrees grew.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::canon::{canonical_form, CanonicalForm, MAX_CANON_VERTICES};
use crate::construct::extremal_graph;
use crate::detect::{brute_force_rows, contains_double_star, DoubleStar};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the search.
pub const MAX_ORACLE_VERTICES: usize = MAX_CANON_VERTICES;
pub const BRUTE_FORCE_MAX_N: usize = 7;
pub const CLIQUE_ORACLE_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap every degree at `a + b`; every extremal graph satisfies it.
    pub degree_cap_enabled: bool,
    /// Seed the incumbent with a detector-checked construction.
    pub warm_start: bool,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub enumerate_all: bool,
    /// Worker threads for the value search; enumeration ignores it.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree_cap_enabled: true,
            warm_start: true,
            node_limit: None,
            time_limit: None,
            enumerate_all: false,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub value: usize,
    pub witnesses: Vec<CanonicalForm>,
    pub nodes_explored: u64,
    /// False iff a node or time limit fired.
    pub proven_optimal: bool,
}

type Rows = [u32; MAX_ORACLE_VERTICES];

#[derive(Clone, Copy)]
struct State {
    rows: Rows,
    deg: [u8; MAX_ORACLE_VERTICES],
    undecided: [u8; MAX_ORACLE_VERTICES],
    edges: usize,
    next: usize,
}

struct Problem {
    n: usize,
    a: usize,
    b: usize,
    pairs: Vec<(usize, usize)>,
}

impl Problem {
    fn new(n: usize, a: usize, b: usize) -> Self {
        let pairs = (1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Problem { n, a, b, pairs }
    }

    fn root(&self, d: usize) -> State {
        let mut s = State {
            rows: [0; MAX_ORACLE_VERTICES],
            deg: [0; MAX_ORACLE_VERTICES],
            undecided: [0; MAX_ORACLE_VERTICES],
            edges: d,
            next: 0,
        };
        for v in 1..=d {
            s.rows[0] |= 1 << v;
            s.rows[v] |= 1;
            s.deg[v] = 1;
        }
        s.deg[0] = d as u8;
        for v in 1..self.n {
            s.undecided[v] = (self.n - 2) as u8;
        }
        s
    }

    fn hosts(&self, s: &State, u: usize, v: usize) -> bool {
        let du = s.deg[u] as usize - 1;
        let dv = s.deg[v] as usize - 1;
        let common = (s.rows[u] & s.rows[v]).count_ones() as usize;
        du + dv >= self.a + self.b + common
            && ((du >= self.a && dv >= self.b) || (du >= self.b && dv >= self.a))
    }

    fn free_at(&self, s: &State, x: usize) -> bool {
        let mut nb = s.rows[x];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if self.hosts(s, x, w) {
                return false;
            }
        }
        true
    }

    fn upper_bound(&self, s: &State, cap: usize) -> usize {
        let total: usize = (0..self.n)
            .map(|v| cap.min(s.deg[v] as usize + s.undecided[v] as usize))
            .sum();
        total / 2
    }

    /// Children of `s` in DFS order: include (if allowed), then exclude.
    fn children(&self, s: &State, cap: usize) -> [Option<State>; 2] {
        let (i, j) = self.pairs[s.next];
        let mut base = *s;
        base.next += 1;
        base.undecided[i] -= 1;
        base.undecided[j] -= 1;
        let mut inc = None;
        if (base.deg[i] as usize) < cap && (base.deg[j] as usize) < cap {
            let mut t = base;
            t.rows[i] |= 1 << j;
            t.rows[j] |= 1 << i;
            t.deg[i] += 1;
            t.deg[j] += 1;
            t.edges += 1;
            if self.free_at(&t, i) && self.free_at(&t, j) {
                inc = Some(t);
            }
        }
        [inc, Some(base)]
    }

    fn to_graph(&self, rows: &Rows) -> Graph {
        let mut b = Graph::builder(self.n);
        for (u, &row) in rows.iter().enumerate().take(self.n) {
            let mut r = row >> (u + 1) << (u + 1);
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                b.add_edge(u, v).expect("rows are symmetric and loop-free");
            }
        }
        b.build()
    }
}

/// Shared limit bookkeeping across workers.
struct Limits {
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl Limits {
    fn new(cfg: &SearchConfig) -> Self {
        Limits {
            node_limit: cfg.node_limit,
            deadline: cfg.time_limit.map(|t| Instant::now() + t),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    /// Adds `batch` nodes; returns false once a limit has fired.
    fn charge(&self, batch: u64) -> bool {
        let total = self.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        if self.node_limit.is_some_and(|lim| total > lim)
            || self.deadline.is_some_and(|d| Instant::now() >= d)
        {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

const BATCH: u64 = 256;

enum Mode<'a> {
    /// Keep the first strictly better leaf; `global` is shared across workers.
    Value {
        best: usize,
        witness: Option<Rows>,
        global: &'a AtomicUsize,
    },
    Enumerate {
        best: usize,
        found: BTreeSet<CanonicalForm>,
    },
}

struct Worker<'a> {
    pr: &'a Problem,
    cap: usize,
    limits: &'a Limits,
    pending: u64,
    mode: Mode<'a>,
}

impl Worker<'_> {
    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending == BATCH {
            self.pending = 0;
            return self.limits.charge(BATCH);
        }
        !self.limits.aborted.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        self.limits.nodes.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
    }

    fn pruned(&self, bound: usize) -> bool {
        match &self.mode {
            Mode::Value { best, global, .. } => {
                bound <= *best || bound < global.load(Ordering::Relaxed)
            }
            Mode::Enumerate { best, .. } => bound < *best,
        }
    }

    fn dfs(&mut self, s: &State) {
        if !self.tick() {
            return;
        }
        if self.pruned(self.pr.upper_bound(s, self.cap)) {
            return;
        }
        if s.next == self.pr.pairs.len() {
            self.leaf(s);
            return;
        }
        for t in self.pr.children(s, self.cap).iter().flatten() {
            self.dfs(t);
        }
    }

    fn leaf(&mut self, s: &State) {
        match &mut self.mode {
            Mode::Value { best, witness, global } => {
                *best = s.edges;
                *witness = Some(s.rows);
                global.fetch_max(s.edges, Ordering::Relaxed);
            }
            Mode::Enumerate { best, found } => {
                if s.edges > *best {
                    *best = s.edges;
                    found.clear();
                }
                let g = self.pr.to_graph(&s.rows);
                found.insert(canonical_form(&g).expect("order checked on entry"));
            }
        }
    }
}

fn validate(n: usize, a: usize, b: usize) -> Result<(usize, usize)> {
    if n == 0 {
        return Err(Error::invalid("the oracle needs n >= 1"));
    }
    if a == 0 || b == 0 {
        return Err(Error::invalid("S_{a,b} needs a, b >= 1"));
    }
    if n > MAX_ORACLE_VERTICES {
        return Err(Error::UnsupportedSize {
            what: "exact search",
            n,
            max: MAX_ORACLE_VERTICES,
        });
    }
    Ok((a.min(b), a.max(b)))
}

/// A detector-checked seed graph, if a construction exists for `(n, a, b)`.
fn seed(n: usize, a: usize, b: usize) -> Option<Graph> {
    let pat = DoubleStar::new(a, b).ok()?;
    extremal_graph(n, a, b).filter(|g| g.n() == n && !contains_double_star(g, pat))
}

/// Roots of the search: one per degree of vertex 0, expanded `depth` more
/// levels. Returned in DFS order.
fn frontier(pr: &Problem, cap: usize, depth: usize) -> Vec<State> {
    let mut out = Vec::new();
    for d in (0..=cap.min(pr.n - 1)).rev() {
        let mut level = vec![pr.root(d)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for s in &level {
                if s.next == pr.pairs.len() {
                    next.push(*s);
                } else {
                    next.extend(pr.children(s, d.min(cap)).into_iter().flatten());
                }
            }
            level = next;
        }
        out.extend(level);
    }
    out
}

/// Degree of vertex 0 in a frontier state, which is also the per-vertex cap.
fn root_degree(s: &State) -> usize {
    s.deg[0] as usize
}

fn cap_for(cfg: &SearchConfig, n: usize, a: usize, b: usize) -> usize {
    if cfg.degree_cap_enabled {
        (a + b).min(n - 1)
    } else {
        n - 1
    }
}

/// Maximum number of edges in an `S_{a,b}`-free graph on `n` vertices.
pub fn max_edges_free(n: usize, a: usize, b: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.enumerate_all {
        return enumerate(n, a, b, cfg);
    }
    let (a, b) = validate(n, a, b)?;
    let pr = Problem::new(n, a, b);
    let cap = cap_for(cfg, n, a, b);
    let limits = Limits::new(cfg);
    let start = if cfg.warm_start { seed(n, a, b) } else { None }
        .unwrap_or_else(|| Graph::empty(n));
    let global = AtomicUsize::new(start.edge_count());
    let threads = cfg.threads.max(1);
    let tasks = frontier(&pr, cap, if threads > 1 { 2 } else { 0 });

    let run = |s: &State, best: usize| {
        let mut w = Worker {
            pr: &pr,
            cap: root_degree(s).min(cap),
            limits: &limits,
            pending: 0,
            mode: Mode::Value {
                best,
                witness: None,
                global: &global,
            },
        };
        w.dfs(s);
        w.flush();
        match w.mode {
            Mode::Value { best, witness, .. } => witness.map(|r| (best, r)),
            Mode::Enumerate { .. } => unreachable!(),
        }
    };

    let mut results: Vec<Option<(usize, Rows)>> = Vec::with_capacity(tasks.len());
    if threads == 1 {
        let mut best = start.edge_count();
        for s in &tasks {
            let r = run(s, best);
            if let Some((v, _)) = r {
                best = v;
            }
            results.push(r);
        }
    } else {
        let slots: Vec<Mutex<Option<(usize, Rows)>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
        let cursor = AtomicUsize::new(0);
        let floor = start.edge_count();
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    let Some(s) = tasks.get(i) else { break };
                    *slots[i].lock().expect("worker panicked") = run(s, floor);
                });
            }
        });
        results = slots.into_iter().map(|m| m.into_inner().expect("worker panicked")).collect();
    }

    let mut value = start.edge_count();
    let mut graph = start;
    for (v, rows) in results.into_iter().flatten() {
        if v > value {
            value = v;
            graph = pr.to_graph(&rows);
        }
    }
    debug_assert!(!contains_double_star(&graph, DoubleStar::new(a, b)?));
    Ok(SearchResult {
        value,
        witnesses: vec![canonical_form(&graph)?],
        nodes_explored: limits.nodes.load(Ordering::Relaxed),
        proven_optimal: !limits.aborted.load(Ordering::Relaxed),
    })
}

fn enumerate(n: usize, a: usize, b: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    let (a, b) = validate(n, a, b)?;
    let pr = Problem::new(n, a, b);
    let cap = cap_for(cfg, n, a, b);
    let limits = Limits::new(cfg);
    let floor = if cfg.warm_start {
        seed(n, a, b).map_or(0, |g| g.edge_count())
    } else {
        0
    };
    let mut best = floor;
    let mut found = BTreeSet::new();
    for s in frontier(&pr, cap, 0) {
        let mut w = Worker {
            pr: &pr,
            cap: root_degree(&s).min(cap),
            limits: &limits,
            pending: 0,
            mode: Mode::Enumerate {
                best,
                found: std::mem::take(&mut found),
            },
        };
        w.dfs(&s);
        w.flush();
        if let Mode::Enumerate { best: b2, found: f2 } = w.mode {
            best = b2;
            found = f2;
        }
    }
    Ok(SearchResult {
        value: best,
        witnesses: found.into_iter().collect(),
        nodes_explored: limits.nodes.load(Ordering::Relaxed),
        proven_optimal: !limits.aborted.load(Ordering::Relaxed),
    })
}

/// All isomorphism classes of extremal graphs, as canonical forms.
pub fn enumerate_extremal(n: usize, a: usize, b: usize, cfg: &SearchConfig) -> Result<Vec<CanonicalForm>> {
    Ok(enumerate(n, a, b, cfg)?.witnesses)
}

/// Exhaustive maximum over all `2^C(n,2)` labelled graphs, densest first.
pub fn brute_force_max_edges(n: usize, a: usize, b: usize) -> Result<usize> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::UnsupportedSize {
            what: "brute-force maximum",
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    if a == 0 || b == 0 {
        return Err(Error::invalid("S_{a,b} needs a, b >= 1"));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let m = pairs.len();
    let rows_of = |mask: u32| {
        let mut rows = vec![0u64; n];
        for (t, &(i, j)) in pairs.iter().enumerate() {
            if mask >> t & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        rows
    };
    for k in (1..=m).rev() {
        // Gosper's hack over the k-subsets of the m pairs
        let mut mask: u32 = (1 << k) - 1;
        while mask < 1 << m {
            if !brute_force_rows(&rows_of(mask), a, b) {
                return Ok(k);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    Ok(0)
}

fn count_cliques_rows(rows: &[u32], k: usize) -> u64 {
    fn extend(rows: &[u32], cand: u32, need: usize) -> u64 {
        if need == 0 {
            return 1;
        }
        let mut total = 0;
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            total += extend(rows, c & rows[v], need - 1);
        }
        total
    }
    let all = if rows.is_empty() { 0 } else { u32::MAX >> (32 - rows.len()) };
    extend(rows, all, k)
}

/// Maximum number of `K_k` in an `S_{a,b}`-free graph on `n` vertices; only
/// edge-maximal free graphs are scored.
pub fn max_cliques_free(n: usize, a: usize, b: usize, k: usize) -> Result<u64> {
    if n > CLIQUE_ORACLE_MAX_N {
        return Err(Error::UnsupportedSize {
            what: "clique-count search",
            n,
            max: CLIQUE_ORACLE_MAX_N,
        });
    }
    if k < 3 {
        return Err(Error::invalid("clique size k must be at least 3"));
    }
    if a == 0 || b == 0 {
        return Err(Error::invalid("S_{a,b} needs a, b >= 1"));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    // open[t][v]: pairs at v still undecided before decision t
    let open: Vec<Vec<u32>> = (0..=pairs.len())
        .map(|t| {
            let mut r = vec![0u32; n];
            for &(i, j) in &pairs[t..] {
                r[i] |= 1 << j;
                r[j] |= 1 << i;
            }
            r
        })
        .collect();

    struct Ctx<'p> {
        a: usize,
        b: usize,
        k: usize,
        pairs: &'p [(usize, usize)],
        open: &'p [Vec<u32>],
        best: u64,
    }
    fn free(rows: &[u32], a: usize, b: usize) -> bool {
        !brute_force_rows(&rows.iter().map(|&r| r as u64).collect::<Vec<_>>(), a, b)
    }
    fn dfs(cx: &mut Ctx, rows: &mut Vec<u32>, t: usize) {
        let optimistic: Vec<u32> = rows.iter().zip(&cx.open[t]).map(|(r, o)| r | o).collect();
        if count_cliques_rows(&optimistic, cx.k) <= cx.best {
            return;
        }
        if t == cx.pairs.len() {
            let maximal = cx.pairs.iter().all(|&(i, j)| {
                rows[i] >> j & 1 == 1 || {
                    let mut g = rows.clone();
                    g[i] |= 1 << j;
                    g[j] |= 1 << i;
                    !free(&g, cx.a, cx.b)
                }
            });
            if maximal {
                cx.best = cx.best.max(count_cliques_rows(rows, cx.k));
            }
            return;
        }
        let (i, j) = cx.pairs[t];
        rows[i] |= 1 << j;
        rows[j] |= 1 << i;
        if free(rows, cx.a, cx.b) {
            dfs(cx, rows, t + 1);
        }
        rows[i] &= !(1 << j);
        rows[j] &= !(1 << i);
        dfs(cx, rows, t + 1);
    }

    let mut cx = Ctx {
        a,
        b,
        k,
        pairs: &pairs,
        open: &open,
        best: 0,
    };
    dfs(&mut cx, &mut vec![0; n], 0);
    Ok(cx.best)
}
