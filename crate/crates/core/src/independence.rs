//! Exact independence numbers by branch and bound, with witnesses, and
//! α-criticality checks.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graphs::{Edge, Graph};

/// Largest order the bitmask solver accepts.
pub const MAX_ORDER: usize = 64;

/// Default cap on branch-and-bound nodes per solve.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndependenceError {
    #[error("graph has {0} vertices; the solver handles at most {MAX_ORDER}")]
    TooLarge(usize),
    #[error("branch-and-bound budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceResult {
    pub alpha: usize,
    /// A maximum independent set, sorted.
    pub witness: Vec<usize>,
}

/// α(G) with a witness.
pub fn independence_number(g: &Graph) -> Result<IndependenceResult, IndependenceError> {
    independence_number_with_budget(g, DEFAULT_NODE_BUDGET)
}

pub fn independence_number_with_budget(
    g: &Graph,
    budget: u64,
) -> Result<IndependenceResult, IndependenceError> {
    let adj = g
        .neighbor_masks()
        .ok_or(IndependenceError::TooLarge(g.order()))?;
    let all = if g.order() == 64 { u64::MAX } else { (1u64 << g.order()) - 1 };
    let mut solver = Solver {
        adj: &adj,
        best: greedy(&adj, all),
        nodes: 0,
        budget,
    };
    solver.search(all, 0)?;
    let witness = bits(solver.best);
    debug_assert!(g.is_independent(&witness));
    Ok(IndependenceResult {
        alpha: witness.len(),
        witness,
    })
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Minimum-degree greedy independent set, the initial lower bound.
fn greedy(adj: &[u64], mut cand: u64) -> u64 {
    let mut set = 0;
    while cand != 0 {
        let v = bits(cand)
            .into_iter()
            .min_by_key(|&v| (adj[v] & cand).count_ones())
            .unwrap();
        set |= 1 << v;
        cand &= !(adj[v] | (1 << v));
    }
    set
}

struct Solver<'a> {
    adj: &'a [u64],
    best: u64,
    nodes: u64,
    budget: u64,
}

impl Solver<'_> {
    /// Degree bound: every edge inside `cand` has an endpoint outside the
    /// independent set, so at least `⌈m / Δ⌉` vertices are excluded.
    fn upper_bound(&self, cand: u64) -> u32 {
        let size = cand.count_ones();
        let (mut twice_m, mut max_deg) = (0u32, 0u32);
        for v in bits(cand) {
            let d = (self.adj[v] & cand).count_ones();
            twice_m += d;
            max_deg = max_deg.max(d);
        }
        if max_deg == 0 {
            return size;
        }
        let m = twice_m / 2;
        size - m.div_ceil(max_deg)
    }

    fn search(&mut self, mut cand: u64, mut cur: u64) -> Result<(), IndependenceError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(IndependenceError::BudgetExceeded(self.budget));
        }
        // Vertices of degree 0 or 1 inside `cand` always belong to some
        // maximum independent set.
        loop {
            let low = bits(cand)
                .into_iter()
                .find(|&v| (self.adj[v] & cand).count_ones() <= 1);
            let Some(v) = low else { break };
            cur |= 1 << v;
            cand &= !(self.adj[v] | (1 << v));
        }
        if cand == 0 {
            if cur.count_ones() > self.best.count_ones() {
                self.best = cur;
            }
            return Ok(());
        }
        if cur.count_ones() + self.upper_bound(cand) <= self.best.count_ones() {
            return Ok(());
        }
        let v = bits(cand)
            .into_iter()
            .max_by_key(|&v| ((self.adj[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        self.search(cand & !(self.adj[v] | (1 << v)), cur | (1 << v))?;
        self.search(cand & !(1 << v), cur)
    }
}

/// Outcome of an α-criticality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub alpha: usize,
    pub is_critical: bool,
    /// For each edge checked, an independent set of size α+1 in `G − e`.
    /// Complete (every edge, sorted) when the graph is critical.
    pub witnesses: Vec<(Edge, Vec<usize>)>,
    /// First edge whose deletion leaves α unchanged.
    pub failing_edge: Option<Edge>,
}

impl Serialize for CriticalityReport {
    /// `{"critical": true, "witnesses": {"u-v": [...], ...}}`
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("critical", &self.is_critical)?;
        map.serialize_entry("witnesses", &WitnessMap(&self.witnesses))?;
        map.end()
    }
}

/// Serializes edge-keyed witnesses as a map with `"u-v"` keys, in edge order.
pub struct WitnessMap<'a>(pub &'a [(Edge, Vec<usize>)]);

impl Serialize for WitnessMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (e, w) in self.0 {
            map.serialize_entry(&format!("{}-{}", e.u(), e.v()), w)?;
        }
        map.end()
    }
}

/// `true` iff deleting any edge raises α. Stops at the first edge that does
/// not; otherwise records a witness for every edge.
pub fn is_alpha_critical(g: &Graph) -> Result<CriticalityReport, IndependenceError> {
    let alpha = independence_number(g)?.alpha;
    let mut witnesses = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let minus = g.delete_edge(e).expect("edge of g");
        let r = independence_number(&minus)?;
        debug_assert!(r.alpha <= alpha + 1);
        if r.alpha == alpha {
            return Ok(CriticalityReport {
                alpha,
                is_critical: false,
                witnesses,
                failing_edge: Some(e),
            });
        }
        witnesses.push((e, r.witness));
    }
    Ok(CriticalityReport {
        alpha,
        is_critical: true,
        witnesses,
        failing_edge: None,
    })
}

/// Checks a criticality witness without trusting the solver: `set` must
/// have size α+1, contain both ends of `e`, and be independent in `G − e`.
pub fn is_valid_critical_witness(g: &Graph, alpha: usize, e: Edge, set: &[usize]) -> bool {
    let Ok(minus) = g.delete_edge(e) else {
        return false;
    };
    set.len() == alpha + 1 && minus.is_independent(set)
}
