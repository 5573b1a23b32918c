//! Report documents printed by the CLI, as JSON or as `key: value` text.

use std::fmt::Write as _;

use serde::Serialize;
use slrc_core::engine::VerifyReport;
use slrc_core::graph::{
    AlphaStatus, AuditReport, DeltaKind, DeltaStarResult, Edge, Rate, RateBounds,
};
use slrc_core::{LinearCode, SupportSet};

/// Something that renders both ways.
pub trait Report: Serialize {
    fn text(&self) -> String;

    fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.text()
        }
    }
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn one_based(set: &SupportSet) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn one_based_edges(edges: &[Edge]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct VerifyDoc {
    pub mode: &'static str,
    pub r: usize,
    pub t: usize,
    pub verdict: bool,
    pub patterns_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

impl VerifyDoc {
    pub fn new(rep: &VerifyReport, code: &LinearCode, elapsed: f64) -> Self {
        VerifyDoc {
            mode: rep.mode.as_str(),
            r: rep.r,
            t: rep.t,
            verdict: rep.verdict,
            patterns_checked: rep.patterns_checked,
            counterexample: rep.counterexample.as_ref().map(|e| code.labels_of(e)),
            elapsed,
        }
    }
}

impl Report for VerifyDoc {
    fn text(&self) -> String {
        let mut s = format!(
            "mode: {}\nr: {}\nt: {}\nverdict: {}\npatterns_checked: {}\n",
            self.mode,
            self.r,
            self.t,
            if self.verdict { "pass" } else { "fail" },
            self.patterns_checked
        );
        if let Some(e) = &self.counterexample {
            let _ = writeln!(s, "counterexample: {}", braces(e));
        }
        let _ = writeln!(s, "elapsed: {:.3}s", self.elapsed);
        s
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct BuildDoc {
    pub family: &'static str,
    pub r: usize,
    pub m: usize,
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub rows: usize,
    pub pcm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cfg: Option<String>,
}

impl Report for BuildDoc {
    fn text(&self) -> String {
        let mut s = format!(
            "family: {}\nr={} m={} t={}\nn={} k={}\nwrote {} ({}x{})\n",
            self.family, self.r, self.m, self.t, self.n, self.k, self.pcm, self.rows, self.n
        );
        if let Some(c) = &self.cfg {
            let _ = writeln!(s, "wrote {c}");
        }
        s
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct MaxTDoc {
    pub r: usize,
    pub max_t: usize,
    pub elapsed: f64,
}

impl Report for MaxTDoc {
    fn text(&self) -> String {
        format!(
            "r: {}\nmax_t: {}\nelapsed: {:.3}s\n",
            self.r, self.max_t, self.elapsed
        )
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct DecodeDoc {
    pub erasures: Vec<String>,
    /// Targets in repair order.
    pub order: Vec<String>,
    pub word: String,
}

impl Report for DecodeDoc {
    fn text(&self) -> String {
        format!(
            "erasures: {}\norder: {}\nword: {}\n",
            braces(&self.erasures),
            self.order.join(" "),
            self.word
        )
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct DeltaDoc {
    pub mode: &'static str,
    pub r: usize,
    pub value: usize,
    /// `exact` or `upper_bound`.
    pub kind: &'static str,
    pub lower_bound: usize,
    pub witness: Vec<String>,
    pub elapsed: f64,
}

impl DeltaDoc {
    pub fn new(
        res: &DeltaStarResult,
        code: &LinearCode,
        mode: &'static str,
        r: usize,
        elapsed: f64,
    ) -> Self {
        DeltaDoc {
            mode,
            r,
            value: res.value,
            kind: match res.kind {
                DeltaKind::Exact => "exact",
                DeltaKind::UpperBound => "upper_bound",
            },
            lower_bound: res.lower_bound,
            witness: code.labels_of(&res.witness),
            elapsed,
        }
    }
}

impl Report for DeltaDoc {
    fn text(&self) -> String {
        format!(
            "mode: {}\nr: {}\ndelta_star: {} ({})\nlower_bound: {}\nsources: {}\nelapsed: {:.3}s\n",
            self.mode,
            self.r,
            self.value,
            self.kind,
            self.lower_bound,
            braces(&self.witness),
            self.elapsed
        )
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct RateDoc {
    pub fraction: String,
    pub value: f64,
}

impl From<Rate> for RateDoc {
    fn from(q: Rate) -> Self {
        RateDoc {
            fraction: format!("{}/{}", q.numer(), q.denom()),
            value: *q.numer() as f64 / *q.denom() as f64,
        }
    }
}

impl std::fmt::Display for RateDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ≈ {:.4}", self.fraction, self.value)
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ConjectureDoc {
    pub alpha: Vec<u32>,
    /// `known`, `conjecture` or `supplied`.
    pub status: &'static str,
    pub rate: RateDoc,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct BoundsDoc {
    pub r: usize,
    pub t: usize,
    pub t2: RateDoc,
    pub t3: RateDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven: Option<RateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureDoc>,
}

impl BoundsDoc {
    pub fn new(r: usize, t: usize, b: RateBounds) -> Self {
        BoundsDoc {
            r,
            t,
            t2: b.t2.into(),
            t3: b.t3.into(),
            proven: b.proven.map(Into::into),
            conjecture: b.conjecture.map(|(alpha, status, rate)| ConjectureDoc {
                alpha,
                status: match status {
                    AlphaStatus::Known => "known",
                    AlphaStatus::Conjecture => "conjecture",
                    AlphaStatus::Supplied => "supplied",
                },
                rate: rate.into(),
            }),
        }
    }
}

impl Report for BoundsDoc {
    fn text(&self) -> String {
        let mut s = format!("r: {}\nt: {}\n", self.r, self.t);
        match &self.proven {
            Some(p) => {
                let _ = writeln!(s, "rate bound: {p}");
            }
            None => s.push_str("rate bound: none proven for this t\n"),
        }
        let _ = writeln!(s, "t=2 bound r/(r+2): {}", self.t2);
        let _ = writeln!(s, "t=3 bound (r/(r+1))^2: {}", self.t3);
        if let Some(c) = &self.conjecture {
            let a: Vec<String> = c.alpha.iter().map(u32::to_string).collect();
            let _ = writeln!(
                s,
                "conjectured rate, alpha=({}) [{}]: {}",
                a.join(","),
                c.status,
                c.rate
            );
        }
        s
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ViolationDoc {
    pub clause: String,
    pub detail: String,
    /// 1-based.
    pub witness: Vec<usize>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ConfigCheckDoc {
    pub k: usize,
    pub b: usize,
    pub r: usize,
    pub t: usize,
    pub classes: usize,
    pub valid: bool,
    pub violations: Vec<ViolationDoc>,
}

impl Report for ConfigCheckDoc {
    fn text(&self) -> String {
        let mut s = format!(
            "k={} b={} r={} t={} classes={}\nvalid: {}\n",
            self.k, self.b, self.r, self.t, self.classes, self.valid
        );
        for v in &self.violations {
            let _ = writeln!(s, "violation {}: {}", v.clause, v.detail);
        }
        s
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct RewireDoc {
    pub erasures: Vec<usize>,
    pub out: Vec<usize>,
    pub sources_hit: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct PartitionDoc {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ColoredEdges {
    pub source: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ColoringDoc {
    pub red: Vec<[usize; 2]>,
    pub green: Vec<ColoredEdges>,
    pub blue: Vec<ColoredEdges>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ChainDoc {
    pub name: &'static str,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

/// Graph audit with all vertices 1-based.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct AuditDoc {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub sources: usize,
    pub consistent: bool,
    pub patterns_checked: u64,
    pub rewirable_count: u64,
    pub rewirable: Vec<RewireDoc>,
    pub violations: Vec<ViolationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringDoc>,
    pub chain: Vec<ChainDoc>,
    /// Structural faults against a supplied code, when one was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_faults: Option<Vec<ViolationDoc>>,
}

impl AuditDoc {
    pub fn new(rep: &AuditReport, n: usize, sources: usize) -> Self {
        let colored = |v: &[(usize, Vec<Edge>)]| -> Vec<ColoredEdges> {
            v.iter()
                .map(|(s, es)| ColoredEdges {
                    source: s + 1,
                    edges: one_based_edges(es),
                })
                .collect()
        };
        AuditDoc {
            n,
            r: rep.r,
            t: rep.t,
            sources,
            consistent: rep.consistent(),
            patterns_checked: rep.patterns_checked,
            rewirable_count: rep.rewirable_count,
            rewirable: rep
                .rewirable
                .iter()
                .map(|l| RewireDoc {
                    erasures: one_based(&l.e),
                    out: one_based(&l.out),
                    sources_hit: l.sources_hit,
                })
                .collect(),
            violations: rep
                .rules
                .iter()
                .map(|c| ViolationDoc {
                    clause: format!("rule {}.{}", c.group, c.item),
                    detail: c.detail.clone(),
                    witness: c.vertices.iter().map(|v| v + 1).collect(),
                })
                .collect(),
            partition: rep.partition.as_ref().map(|p| PartitionDoc {
                a: one_based(&p.a),
                b: one_based(&p.b),
                c1: one_based(&p.c1),
                c2: one_based(&p.c2),
            }),
            coloring: rep.coloring.as_ref().map(|c| ColoringDoc {
                red: one_based_edges(&c.red),
                green: colored(&c.green),
                blue: colored(&c.blue),
            }),
            chain: rep
                .chain
                .iter()
                .map(|c| ChainDoc {
                    name: c.name,
                    lhs: c.lhs,
                    rhs: c.rhs,
                    holds: c.holds,
                })
                .collect(),
            graph_faults: None,
        }
    }
}

fn list(v: &[usize]) -> String {
    braces(&v.iter().map(usize::to_string).collect::<Vec<_>>())
}

impl Report for AuditDoc {
    fn text(&self) -> String {
        let mut s = format!(
            "n={} r={} t={} sources={}\nconsistent: {}\npatterns_checked: {}\nrewirable patterns: {}\n",
            self.n, self.r, self.t, self.sources, self.consistent, self.patterns_checked, self.rewirable_count
        );
        for l in &self.rewirable {
            let _ = writeln!(
                s,
                "  E={} Out(E)={} sources in E={}",
                list(&l.erasures),
                list(&l.out),
                l.sources_hit
            );
        }
        if self.rewirable.len() < self.rewirable_count as usize {
            let _ = writeln!(
                s,
                "  ... {} more",
                self.rewirable_count as usize - self.rewirable.len()
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                s,
                "violation {}: {} witness {}",
                v.clause,
                v.detail,
                list(&v.witness)
            );
        }
        if let Some(p) = &self.partition {
            let _ = writeln!(
                s,
                "sources A={} B={} C1={} C2={}",
                list(&p.a),
                list(&p.b),
                list(&p.c1),
                list(&p.c2)
            );
        }
        if let Some(c) = &self.coloring {
            let pairs = |es: &[[usize; 2]]| {
                es.iter()
                    .map(|[a, b]| format!("{a}->{b}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let _ = writeln!(s, "red: {}", pairs(&c.red));
            for (name, group) in [("green", &c.green), ("blue", &c.blue)] {
                for g in group {
                    let _ = writeln!(s, "{name}[{}]: {}", g.source, pairs(&g.edges));
                }
            }
        }
        for c in &self.chain {
            let _ = writeln!(
                s,
                "check {}: {} vs {} {}",
                c.name,
                c.lhs,
                c.rhs,
                if c.holds { "ok" } else { "FAILS" }
            );
        }
        if let Some(f) = &self.graph_faults {
            for v in f {
                let _ = writeln!(
                    s,
                    "graph fault {}: {} at {}",
                    v.clause,
                    v.detail,
                    list(&v.witness)
                );
            }
        }
        s
    }
}
