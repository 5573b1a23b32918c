//! Repair graphs: acyclic digraphs whose inner vertices read their value
//! from their in-neighbours. Includes source minimisation, the
//! minimality audit and rate bounds.

mod audit;
mod bounds;
mod delta;

pub use audit::{
    minimality_audit, AuditReport, ChainCheck, EdgeColoring, RewireWitness, RuleViolation,
    SourcePartition,
};
pub use bounds::{alpha_preset, conjecture_rate, rate_bounds, AlphaStatus, Rate, RateBounds};
pub use delta::{
    closure, closure_scan_level, delta_star, graph_from_sources, DeltaKind, DeltaMode,
    DeltaStarResult,
};

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::BitSet;
use crate::code::LinearCode;
use crate::engine::RepairPlan;
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

pub type Edge = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairGraph {
    n: usize,
    ins: Vec<SupportSet>,
    outs: Vec<SupportSet>,
}

impl RepairGraph {
    /// Graph on `0..n`; duplicate edges collapse, self-loops are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut ins = alloc::vec![Vec::new(); n];
        let mut outs = alloc::vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::arg(format!("edge ({a}, {b}) outside 0..{n}")));
            }
            if a == b {
                return Err(Error::arg(format!("self-loop at {a}")));
            }
            outs[a].push(b);
            ins[b].push(a);
        }
        Ok(RepairGraph {
            n,
            ins: ins.into_iter().map(SupportSet::from).collect(),
            outs: outs.into_iter().map(SupportSet::from).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn in_set(&self, v: usize) -> &SupportSet {
        &self.ins[v]
    }

    pub fn out_set(&self, v: usize) -> &SupportSet {
        &self.outs[v]
    }

    /// Edges sorted by tail, then head.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.n)
            .flat_map(|a| self.outs[a].iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.outs.iter().map(SupportSet::len).sum()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.ins[v].is_empty()
    }

    pub fn sources(&self) -> SupportSet {
        (0..self.n).filter(|&v| self.is_source(v)).collect()
    }

    /// `Out(E)`: out-neighbours of `E` not in `E`.
    pub fn out_of_set(&self, e: &SupportSet) -> SupportSet {
        let mut acc = BitSet::new(self.n);
        for v in e.iter() {
            for w in self.outs[v].iter() {
                acc.insert(w);
            }
        }
        for v in e.iter() {
            acc.remove(v);
        }
        SupportSet::from_bitset(&acc)
    }

    /// `Out²(v)`: out-neighbours of `Out(v)` that are not themselves in `Out(v)`.
    pub fn out2(&self, v: usize) -> SupportSet {
        let first = &self.outs[v];
        first
            .iter()
            .flat_map(|u| self.outs[u].iter())
            .filter(|w| !first.contains(*w))
            .collect()
    }

    /// Vertices in Kahn order; vertices on or behind a cycle never appear.
    fn kahn(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = self.ins.iter().map(SupportSet::len).collect();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in self.outs[v].iter() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// A topological order, or `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let order = self.kahn();
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    fn cyclic_vertices(&self) -> SupportSet {
        let done = BitSet::from_indices(self.n, self.kahn());
        (0..self.n).filter(|&v| !done.contains(v)).collect()
    }
}

/// `(Out(query), Out²(v))`; the second part only for a single vertex.
pub fn neighborhoods(g: &RepairGraph, query: &SupportSet) -> (SupportSet, Option<SupportSet>) {
    let out = g.out_of_set(query);
    let out2 = (query.len() == 1).then(|| g.out2(query.as_slice()[0]));
    (out, out2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFault {
    LengthMismatch,
    Cycle,
    InDegree,
    NotRecovering,
    SourceRank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphViolation {
    pub fault: GraphFault,
    pub vertices: SupportSet,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub violations: Vec<GraphViolation>,
    /// Rank of the code restricted to the sources.
    pub source_rank: usize,
}

impl GraphReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `g` is a repair graph of `code` with locality `r`: acyclic,
/// every inner vertex has `2..=r` in-neighbours forming a recovering set,
/// and the sources carry the full dimension.
pub fn verify_repair_graph(code: &LinearCode, g: &RepairGraph, r: usize) -> GraphReport {
    let mut violations = Vec::new();
    if g.n() != code.n() {
        violations.push(GraphViolation {
            fault: GraphFault::LengthMismatch,
            vertices: SupportSet::new(),
            detail: format!("graph has {} vertices, code length is {}", g.n(), code.n()),
        });
        return GraphReport {
            violations,
            source_rank: 0,
        };
    }
    let cyc = g.cyclic_vertices();
    if !cyc.is_empty() {
        violations.push(GraphViolation {
            fault: GraphFault::Cycle,
            detail: format!("{} vertices lie on or behind a cycle", cyc.len()),
            vertices: cyc,
        });
    }
    for v in 0..g.n() {
        let ins = g.in_set(v);
        if ins.is_empty() {
            continue;
        }
        if ins.len() > r {
            violations.push(GraphViolation {
                fault: GraphFault::InDegree,
                vertices: SupportSet::from([v]),
                detail: format!("in-degree {} exceeds r = {r}", ins.len()),
            });
        }
        if ins.len() < 2 || !code.is_recovering_set(v, ins) {
            violations.push(GraphViolation {
                fault: GraphFault::NotRecovering,
                vertices: ins.with(v),
                detail: format!("In({v}) = {ins:?} is not a recovering set"),
            });
        }
    }
    let sources = g.sources();
    let source_rank = code.rank_on(&sources);
    if source_rank != code.k() {
        violations.push(GraphViolation {
            fault: GraphFault::SourceRank,
            detail: format!("sources have rank {source_rank} < k = {}", code.k()),
            vertices: sources,
        });
    }
    GraphReport {
        violations,
        source_rank,
    }
}

/// Replaces the in-edges of `E ∪ Out(E)` by the plan's recovering sets.
/// The new sources are `(S ∖ E) ∪ Out(E)`.
pub fn rewire(g: &RepairGraph, plan: &RepairPlan) -> Result<RepairGraph> {
    let n = g.n();
    let e = plan.erasures();
    if e.max().is_some_and(|v| v >= n) {
        return Err(Error::PlanInvalid("erasure outside the graph".into()));
    }
    let mut known = e.to_bitset(n).complement();
    for (j, step) in plan.steps().iter().enumerate() {
        let t = step.target();
        if !e.contains(t) || known.contains(t) {
            return Err(Error::PlanInvalid(format!(
                "step {j} targets {t} twice or outside E"
            )));
        }
        if step.members().iter().any(|m| m >= n || !known.contains(m)) {
            return Err(Error::PlanInvalid(format!(
                "step {j} reads an unrepaired vertex"
            )));
        }
        known.insert(t);
    }
    if plan.steps().len() != e.len() {
        return Err(Error::PlanInvalid(
            "plan does not repair every erasure".into(),
        ));
    }
    let cleared = e
        .iter()
        .chain(g.out_of_set(e).iter())
        .collect::<SupportSet>()
        .to_bitset(n);
    let kept = g.edges().into_iter().filter(|&(_, b)| !cleared.contains(b));
    let added = plan
        .steps()
        .iter()
        .flat_map(|s| s.members().iter().map(move |m| (m, s.target())));
    RepairGraph::new(n, kept.chain(added))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(n: usize, edges: &[(usize, usize)]) -> RepairGraph {
        RepairGraph::new(n, edges.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap()
    }

    #[test]
    fn out_sets() {
        let g = one_based(5, &[(1, 3), (2, 3), (3, 4), (1, 4), (4, 5)]);
        assert_eq!(
            g.out_of_set(&SupportSet::from([0, 2])),
            SupportSet::from([3])
        );
        assert_eq!(g.out2(0), SupportSet::from([4]));
        assert!(g.out_set(4).is_empty());
        assert_eq!(g.sources(), SupportSet::from([0, 1]));
    }

    #[test]
    fn cycle_detected() {
        let g = one_based(3, &[(1, 2), (2, 1), (1, 3)]);
        assert!(!g.is_acyclic());
        assert_eq!(g.cyclic_vertices(), SupportSet::from([0, 1, 2]));
    }
}
