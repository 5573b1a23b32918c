use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Edge, RepairGraph};
use crate::bits::BitSet;
use crate::budget::Budget;
use crate::combin::{binomial, binomial_sum, Combinations};
use crate::error::Result;
use crate::gf2::SupportSet;

/// Most rewiring witnesses kept in a report; the total is still counted.
pub const WITNESS_CAP: usize = 64;

/// A pattern whose out-neighbourhood is smaller than the number of sources
/// it contains, so rewiring it would save sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewireWitness {
    pub e: SupportSet,
    pub out: SupportSet,
    pub sources_hit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleViolation {
    /// 1 for the single-vertex rules, 2 for the two-out-neighbour rules.
    pub group: u8,
    pub item: u8,
    /// Named vertices in the order the rule introduces them.
    pub vertices: Vec<usize>,
    pub detail: String,
}

/// Sources split by out-degree: `a` (≥3), `b` (=2), and the out-degree-one
/// sources split by `|Out²|` into `c1` (=1) and `c2` (≥2).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourcePartition {
    pub a: SupportSet,
    pub b: SupportSet,
    pub c1: SupportSet,
    pub c2: SupportSet,
}

impl SourcePartition {
    pub fn total(&self) -> usize {
        self.a.len() + self.b.len() + self.c1.len() + self.c2.len()
    }
}

/// Red edges leave a source; green edges leave the unique out-neighbour of
/// a `c1`/`c2` source; blue edges are the remaining edges leaving `Out(v)`
/// for `v ∈ b` or `Out²(v)` for `v ∈ c1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EdgeColoring {
    pub red: Vec<Edge>,
    pub green: Vec<(usize, Vec<Edge>)>,
    pub blue: Vec<(usize, Vec<Edge>)>,
}

impl EdgeColoring {
    pub fn green_edges(&self) -> Vec<Edge> {
        union(self.green.iter().flat_map(|(_, e)| e.iter().copied()))
    }

    pub fn blue_edges(&self) -> Vec<Edge> {
        union(self.blue.iter().flat_map(|(_, e)| e.iter().copied()))
    }

    /// Sources a blue edge is attributed to.
    pub fn blue_owners(&self, edge: Edge) -> Vec<usize> {
        self.blue
            .iter()
            .filter(|(_, es)| es.contains(&edge))
            .map(|(v, _)| *v)
            .collect()
    }
}

fn union(it: impl Iterator<Item = Edge>) -> Vec<Edge> {
    let mut v: Vec<Edge> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// An inequality `lhs ≥ rhs` from the edge-counting argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub name: &'static str,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

impl ChainCheck {
    fn ge(name: &'static str, lhs: u64, rhs: u64) -> Self {
        ChainCheck {
            name,
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub t: usize,
    pub r: usize,
    pub patterns_checked: u64,
    pub rewirable_count: u64,
    /// The first violations in canonical order, at most [`WITNESS_CAP`].
    pub rewirable: Vec<RewireWitness>,
    pub rules: Vec<RuleViolation>,
    pub partition: Option<SourcePartition>,
    pub coloring: Option<EdgeColoring>,
    pub chain: Vec<ChainCheck>,
}

impl AuditReport {
    /// No necessary condition for minimality at level `t` fails. This does
    /// not prove minimality.
    pub fn consistent(&self) -> bool {
        self.rewirable_count == 0 && self.rules.is_empty() && self.chain.iter().all(|c| c.holds)
    }
}

/// Checks the necessary conditions a source-minimal repair graph of a code
/// repairing `t` erasures must satisfy.
pub fn minimality_audit(
    g: &RepairGraph,
    t: usize,
    r: usize,
    budget: Budget,
) -> Result<AuditReport> {
    let n = g.n();
    let top = t.min(n);
    budget.check(binomial_sum(n, 1, top))?;
    let sources = g.sources();
    let smask = sources.to_bitset(n);

    let mut rewirable = Vec::new();
    let mut count = 0u64;
    let mut checked = 0u64;
    for size in 1..=top {
        checked += binomial(n, size);
        for e in Combinations::new(n, size) {
            let hit = e.iter().filter(|&&v| smask.contains(v)).count();
            if hit == 0 {
                continue;
            }
            let e = SupportSet::from(e);
            let out = g.out_of_set(&e);
            if out.len() < hit {
                count += 1;
                if rewirable.len() < WITNESS_CAP {
                    rewirable.push(RewireWitness {
                        e,
                        out,
                        sources_hit: hit,
                    });
                }
            }
        }
    }

    let rules = source_rules(g, t, &sources);
    let mut report = AuditReport {
        t,
        r,
        patterns_checked: checked,
        rewirable_count: count,
        rewirable,
        rules,
        partition: None,
        coloring: None,
        chain: Vec::new(),
    };
    if report.rewirable_count > 0 || !report.rules.is_empty() {
        return Ok(report);
    }

    let edges = g.edge_count() as u64;
    let s = sources.len() as u64;
    let r64 = r as u64;
    let inner = (n as u64 - s) * r64;
    if t == 2 {
        report
            .chain
            .push(ChainCheck::ge("(n - |S|) r >= |E|", inner, edges));
        report
            .chain
            .push(ChainCheck::ge("|E| >= 2|S|", edges, 2 * s));
    }
    if t >= 3 {
        let part = partition_sources(g, &sources);
        let col = color_edges(g, &sources, &part);
        let (a, b, c1, c2) = (
            part.a.len() as u64,
            part.b.len() as u64,
            part.c1.len() as u64,
            part.c2.len() as u64,
        );
        let blue = col.blue_edges();
        let owners_ok = part
            .b
            .iter()
            .chain(part.c1.iter())
            .filter(|v| col.blue.iter().any(|(w, es)| w == v && !es.is_empty()))
            .count() as u64;
        let max_owners = blue
            .iter()
            .map(|&e| col.blue_owners(e).len())
            .max()
            .unwrap_or(0) as u64;
        let injective = blue
            .iter()
            .all(|&(tail, _)| phi_injective(g, &part, &col, tail));
        report.chain.extend([
            ChainCheck::ge("A, B, C1, C2 cover the sources", part.total() as u64, s),
            ChainCheck::ge(
                "|E_red| >= 3|A| + 2|B| + |C1| + |C2|",
                col.red.len() as u64,
                3 * a + 2 * b + c1 + c2,
            ),
            ChainCheck::ge(
                "|E_green| >= |C1| + 2|C2|",
                col.green_edges().len() as u64,
                c1 + 2 * c2,
            ),
            ChainCheck::ge(
                "every source in B and C1 owns a blue edge",
                owners_ok,
                b + c1,
            ),
            ChainCheck::ge("r >= owners of any blue edge", r64, max_owners),
            ChainCheck::ge("phi is injective into In(tail)", injective as u64, 1),
            ChainCheck::ge("r |E_blue| >= |B| + |C1|", r64 * blue.len() as u64, b + c1),
            ChainCheck::ge("r |E| >= 2r|S| + |S|", r64 * edges, (2 * r64 + 1) * s),
            ChainCheck::ge("(n - |S|) r >= |E|", inner, edges),
        ]);
        report.partition = Some(part);
        report.coloring = Some(col);
    }
    Ok(report)
}

fn single(set: &SupportSet) -> Option<usize> {
    (set.len() == 1).then(|| set.as_slice()[0])
}

fn source_rules(g: &RepairGraph, t: usize, sources: &SupportSet) -> Vec<RuleViolation> {
    let mut out = Vec::new();
    let mut push = |group, item, vertices: Vec<usize>, detail: String| {
        out.push(RuleViolation {
            group,
            item,
            vertices,
            detail,
        })
    };
    let outdeg_one = |u: usize| single(g.out_set(u));

    for v in sources.iter() {
        let ov = g.out_set(v);
        if ov.is_empty() {
            push(
                1,
                1,
                alloc::vec![v],
                format!("source {} has no out-neighbour", v + 1),
            );
            continue;
        }
        if let Some(v1) = single(ov) {
            let o1 = g.out_set(v1);
            if t >= 2 && o1.is_empty() {
                push(
                    1,
                    2,
                    alloc::vec![v, v1],
                    format!(
                        "Out({}) = {{{}}} and Out({}) is empty",
                        v + 1,
                        v1 + 1,
                        v1 + 1
                    ),
                );
            }
            if let (true, Some(v2)) = (t >= 3, single(o1)) {
                if g.out_set(v2).is_empty() {
                    push(
                        1,
                        3,
                        alloc::vec![v, v1, v2],
                        format!("chain {} -> {} -> {} ends in a sink", v + 1, v1 + 1, v2 + 1),
                    );
                }
                for u in g.in_set(v2).iter().filter(|&u| g.is_source(u)) {
                    if g.out_set(u).len() < 2 {
                        push(
                            1,
                            4,
                            alloc::vec![v, v1, v2, u],
                            format!("source {} feeds {} with out-degree one", u + 1, v2 + 1),
                        );
                    }
                }
            }
        }
        if t >= 3 && ov.len() == 2 {
            let (v1, v2) = (ov.as_slice()[0], ov.as_slice()[1]);
            if g.out_set(v1).is_empty() && g.out_set(v2).is_empty() {
                push(
                    2,
                    1,
                    alloc::vec![v, v1, v2],
                    format!(
                        "both out-neighbours {} and {} of source {} are sinks",
                        v1 + 1,
                        v2 + 1,
                        v + 1
                    ),
                );
            }
            for (a, b) in [(v1, v2), (v2, v1)] {
                let Some(u) = sources.iter().find(|&u| u != v && outdeg_one(u) == Some(a)) else {
                    continue;
                };
                if g.out_set(b).is_empty() {
                    push(
                        2,
                        2,
                        alloc::vec![v, a, b, u],
                        format!("Out({}) = {{{}}} and {} is a sink", u + 1, a + 1, b + 1),
                    );
                }
                for w in g.in_set(b).iter().filter(|&w| g.is_source(w)) {
                    if g.out_set(w).len() < 2 {
                        push(
                            2,
                            3,
                            alloc::vec![v, a, b, u, w],
                            format!("source {} feeds only {}", w + 1, b + 1),
                        );
                    }
                }
            }
        }
    }
    if t >= 2 {
        let ones: Vec<(usize, usize)> = sources
            .iter()
            .filter_map(|v| outdeg_one(v).map(|w| (v, w)))
            .collect();
        for (i, &(v, x)) in ones.iter().enumerate() {
            for &(w, y) in &ones[i + 1..] {
                if x == y {
                    push(
                        1,
                        5,
                        alloc::vec![v, w],
                        format!(
                            "sources {} and {} share the single out-neighbour {}",
                            v + 1,
                            w + 1,
                            x + 1
                        ),
                    );
                }
            }
        }
    }
    out
}

fn partition_sources(g: &RepairGraph, sources: &SupportSet) -> SourcePartition {
    let mut p = SourcePartition::default();
    let (mut a, mut b, mut c1, mut c2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for v in sources.iter() {
        match g.out_set(v).len() {
            0 => {}
            1 => match g.out2(v).len() {
                0 => {}
                1 => c1.push(v),
                _ => c2.push(v),
            },
            2 => b.push(v),
            _ => a.push(v),
        }
    }
    p.a = a.into();
    p.b = b.into();
    p.c1 = c1.into();
    p.c2 = c2.into();
    p
}

fn color_edges(g: &RepairGraph, sources: &SupportSet, part: &SourcePartition) -> EdgeColoring {
    let red = g
        .edges()
        .into_iter()
        .filter(|&(a, _)| sources.contains(a))
        .collect();
    let edges_from = |tails: &SupportSet| -> Vec<Edge> {
        tails
            .iter()
            .flat_map(|a| g.out_set(a).iter().map(move |b| (a, b)))
            .collect()
    };
    let green: Vec<(usize, Vec<Edge>)> = part
        .c1
        .iter()
        .chain(part.c2.iter())
        .map(|v| (v, edges_from(g.out_set(v))))
        .collect();
    let green_tails: BitSet = BitSet::from_indices(
        g.n(),
        part.c1
            .iter()
            .chain(part.c2.iter())
            .map(|v| g.out_set(v).as_slice()[0]),
    );
    let mut blue: Vec<(usize, Vec<Edge>)> = Vec::new();
    for v in part.b.iter() {
        blue.push((v, edges_from(g.out_set(v))));
    }
    for v in part.c1.iter() {
        blue.push((v, edges_from(&g.out2(v))));
    }
    for (_, es) in blue.iter_mut() {
        es.retain(|&(a, _)| !green_tails.contains(a));
    }
    blue.sort_by_key(|(v, _)| *v);
    let mut green = green;
    green.sort_by_key(|(v, _)| *v);
    EdgeColoring { red, green, blue }
}

/// The owners of blue edges leaving `tail` map injectively into `In(tail)`
/// via `v ↦ v` on `B` and `v ↦ Out(v)` on `C1`.
fn phi_injective(g: &RepairGraph, part: &SourcePartition, col: &EdgeColoring, tail: usize) -> bool {
    let mut images: Vec<usize> = col
        .blue
        .iter()
        .filter(|(_, es)| es.iter().any(|&(a, _)| a == tail))
        .map(|(v, _)| {
            if part.b.contains(*v) {
                *v
            } else {
                g.out_set(*v).as_slice()[0]
            }
        })
        .collect();
    if !images.iter().all(|&x| g.in_set(tail).contains(x)) {
        return false;
    }
    let len = images.len();
    images.sort_unstable();
    images.dedup();
    images.len() == len
}
