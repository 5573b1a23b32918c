//! Codes from resolvable configurations: data points, one parity per line,
//! and a second layer of parities over the line parities of the first
//! parallel class.

mod plan;

pub use plan::{config_repair_plan, singleton_line};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, SupportSet};

/// Points `0..k` and lines grouped into parallel classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    k: usize,
    lines: Vec<SupportSet>,
    classes: Vec<usize>,
}

impl Configuration {
    /// `classes[j]` is the 0-based class of line `j`.
    pub fn new(k: usize, lines: Vec<SupportSet>, classes: Vec<usize>) -> Result<Self> {
        if lines.len() != classes.len() {
            return Err(Error::arg(format!(
                "{} lines but {} class labels",
                lines.len(),
                classes.len()
            )));
        }
        if lines.iter().any(|l| l.max().is_some_and(|p| p >= k)) {
            return Err(Error::arg("line contains a point outside 0..k"));
        }
        Ok(Configuration { k, lines, classes })
    }

    /// From a `b × k` incidence matrix.
    pub fn from_incidence(m: &BitMatrix, classes: Vec<usize>) -> Result<Self> {
        let lines = (0..m.rows()).map(|i| m.row_support(i)).collect();
        Self::new(m.cols(), lines, classes)
    }

    pub fn incidence(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.lines.len().max(1), self.k);
        for (i, l) in self.lines.iter().enumerate() {
            for p in l.iter() {
                m.set(i, p, true);
            }
        }
        m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[SupportSet] {
        &self.lines
    }

    pub fn line(&self, j: usize) -> &SupportSet {
        &self.lines[j]
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.iter().max().map_or(0, |c| c + 1)
    }

    /// Lines through point `p`, in line order.
    pub fn lines_through(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.lines.len()).filter(move |&j| self.lines[j].contains(p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// Every line has `r` points.
    LineSize,
    /// Every point lies on `t - 1` lines.
    PointDegree,
    /// Two lines share at most one point.
    Intersection,
    /// Each class partitions the points.
    Resolution,
    /// `t - 1` classes and `b = (k/r)(t - 1)` lines.
    Counts,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::LineSize => "line size",
            Axiom::PointDegree => "point degree",
            Axiom::Intersection => "pairwise intersection",
            Axiom::Resolution => "parallel classes",
            Axiom::Counts => "line and class counts",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
    /// Offending lines or points (0-based), usually a pair.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConfigReport {
    pub violations: Vec<Violation>,
}

impl ConfigReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks the resolvable-configuration axioms, in the order line size,
/// intersections, point degrees, classes, counts. The first entry of the
/// report is the first violated axiom in that order.
pub fn verify_configuration(cfg: &Configuration, r: usize, t: usize) -> ConfigReport {
    let mut v = Vec::new();
    let mut push = |axiom, detail: String, witness: Vec<usize>| {
        v.push(Violation {
            axiom,
            detail,
            witness,
        })
    };

    for (j, l) in cfg.lines.iter().enumerate() {
        if l.len() != r {
            push(
                Axiom::LineSize,
                format!("line {} has {} points", j + 1, l.len()),
                alloc::vec![j],
            );
        }
    }
    'pairs: for a in 0..cfg.b() {
        for b in a + 1..cfg.b() {
            let common = cfg.lines[a].intersection(&cfg.lines[b]).len();
            if common > 1 {
                push(
                    Axiom::Intersection,
                    format!("lines {} and {} share {common} points", a + 1, b + 1),
                    alloc::vec![a, b],
                );
                break 'pairs;
            }
        }
    }
    let want = t.saturating_sub(1);
    for p in 0..cfg.k {
        let deg = cfg.lines_through(p).count();
        if deg != want {
            push(
                Axiom::PointDegree,
                format!("point {} lies on {deg} lines, expected {want}", p + 1),
                alloc::vec![p],
            );
        }
    }
    for c in 0..cfg.num_classes() {
        let mut seen = alloc::vec![usize::MAX; cfg.k];
        let members: Vec<usize> = (0..cfg.b()).filter(|&j| cfg.classes[j] == c).collect();
        for &j in &members {
            for p in cfg.lines[j].iter() {
                if seen[p] != usize::MAX {
                    push(
                        Axiom::Resolution,
                        format!(
                            "class {}: lines {} and {} both contain point {}",
                            c + 1,
                            seen[p] + 1,
                            j + 1,
                            p + 1
                        ),
                        alloc::vec![seen[p], j],
                    );
                }
                seen[p] = j;
            }
        }
        if let Some(p) = seen.iter().position(|&s| s == usize::MAX) {
            push(
                Axiom::Resolution,
                format!("class {} does not cover point {}", c + 1, p + 1),
                alloc::vec![p],
            );
        }
    }
    if cfg.num_classes() != want {
        push(
            Axiom::Counts,
            format!("{} classes, expected {want}", cfg.num_classes()),
            Vec::new(),
        );
    }
    if r == 0 || !cfg.k.is_multiple_of(r) || cfg.b() != cfg.k / r.max(1) * want {
        push(
            Axiom::Counts,
            format!("{} lines, expected (k/r)(t-1)", cfg.b()),
            Vec::new(),
        );
    }
    ConfigReport { violations: v }
}

/// Nonempty subsets of `[m]` (as 0-based index lists) by size, then
/// lexicographically.
fn canonical_subsets(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=m {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            out.push(c.clone());
            // Lexicographic successor.
            let mut i = size;
            while i > 0 && c[i - 1] == m - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            c[i - 1] += 1;
            for j in i..size {
                c[j] = c[j - 1] + 1;
            }
        }
    }
    out
}

/// Point index of `α ∈ Z_r^m` with `α(1)` most significant, so indices
/// follow lexicographic order.
pub fn module_point_index(r: usize, alpha: &[usize]) -> usize {
    alpha.iter().fold(0, |acc, &d| acc * r + d)
}

pub fn module_point(r: usize, m: usize, mut idx: usize) -> Vec<usize> {
    let mut a = alloc::vec![0; m];
    for slot in a.iter_mut().rev() {
        *slot = idx % r;
        idx /= r;
    }
    a
}

/// Resolvable configuration on `Z_r^m` whose classes are the cosets of the
/// cyclic submodules generated by the 0/1 indicator vectors of the first
/// `t - 1` nonempty subsets of `[m]`.
pub fn build_module_configuration(r: usize, m: usize, t: usize) -> Result<Configuration> {
    if r < 2 || t < 2 || m == 0 {
        return Err(Error::arg("need r >= 2, t >= 2 and m >= 1"));
    }
    if m >= usize::BITS as usize || (1usize << m) - 1 < t - 1 {
        return Err(Error::arg(format!(
            "t - 1 = {} generator subsets needed but [m] has only 2^{m} - 1",
            t - 1
        )));
    }
    let k = r
        .checked_pow(m as u32)
        .filter(|&k| k <= 1 << 24)
        .ok_or_else(|| Error::arg("r^m is too large"))?;
    let mut lines = Vec::new();
    let mut classes = Vec::new();
    for (c, subset) in canonical_subsets(m).into_iter().take(t - 1).enumerate() {
        let mut covered = alloc::vec![false; k];
        for p in 0..k {
            if covered[p] {
                continue;
            }
            let base = module_point(r, m, p);
            let line: SupportSet = (0..r)
                .map(|i| {
                    let mut q = base.clone();
                    for &j in &subset {
                        q[j] = (q[j] + i) % r;
                    }
                    module_point_index(r, &q)
                })
                .collect();
            for q in line.iter() {
                covered[q] = true;
            }
            lines.push(line);
            classes.push(c);
        }
    }
    Configuration::new(k, lines, classes)
}

/// Column layout of a configuration code: data `0..k`, line parities
/// `k..k+b`, block parities `k+b..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigLayout {
    pub config: Configuration,
    pub r: usize,
    pub t: usize,
    /// Blocks of first-class lines, as 0-based line indices.
    pub blocks: Vec<SupportSet>,
}

impl ConfigLayout {
    pub fn k(&self) -> usize {
        self.config.k
    }

    pub fn b(&self) -> usize {
        self.config.b()
    }

    /// Lines per class.
    pub fn s(&self) -> usize {
        self.k() / self.r
    }

    pub fn n(&self) -> usize {
        self.k() + self.b() + self.blocks.len()
    }

    pub fn line_parity(&self, j: usize) -> usize {
        self.k() + j
    }

    pub fn block_parity(&self, i: usize) -> usize {
        self.k() + self.b() + i
    }

    pub fn block_of(&self, line: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(line))
    }

    /// The `t - 1` pairwise disjoint recovering sets of data point `p`: each
    /// line through `p` with its parity, minus `p`.
    pub fn data_recovering_sets(&self, p: usize) -> Vec<(usize, SupportSet)> {
        self.config
            .lines_through(p)
            .map(|j| (j, self.config.lines[j].without(p).with(self.line_parity(j))))
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        let (k, b) = (self.k(), self.b());
        (1..=k)
            .map(|i| format!("d{i}"))
            .chain((1..=b).map(|i| format!("L{i}")))
            .chain((1..=self.blocks.len()).map(|i| format!("P{i}")))
            .collect()
    }
}

/// Consecutive blocks of at most `r` lines over the first `s` lines.
pub fn default_blocks(s: usize, r: usize) -> Vec<SupportSet> {
    (0..s)
        .step_by(r.max(1))
        .map(|lo| (lo..(lo + r).min(s)).collect())
        .collect()
}

/// Assembles `[[M, I_b, O], [O, W, I]]` with `W` the block indicator.
pub fn build_config_pcm(
    cfg: &Configuration,
    r: usize,
    t: usize,
) -> Result<(LinearCode, ConfigLayout)> {
    let s = cfg.k.checked_div(r).unwrap_or(0);
    build_config_pcm_with_blocks(cfg, r, t, default_blocks(s, r))
}

pub fn build_config_pcm_with_blocks(
    cfg: &Configuration,
    r: usize,
    t: usize,
    blocks: Vec<SupportSet>,
) -> Result<(LinearCode, ConfigLayout)> {
    let report = verify_configuration(cfg, r, t);
    if let Some(v) = report.first() {
        return Err(Error::arg(format!(
            "not a resolvable configuration: {}: {}",
            v.axiom.name(),
            v.detail
        )));
    }
    if cfg.classes.windows(2).any(|w| w[0] > w[1]) || cfg.classes.first() != Some(&0) {
        return Err(Error::Layout(
            "lines must be listed class by class, first class first".into(),
        ));
    }
    let s = cfg.k / r;
    let mut covered = alloc::vec![0u8; s];
    for blk in &blocks {
        if blk.is_empty() || blk.len() > r {
            return Err(Error::Layout(format!(
                "block {blk:?} must have 1..={r} lines"
            )));
        }
        for j in blk.iter() {
            if j >= s {
                return Err(Error::Layout(format!(
                    "block entry {} is not a first-class line",
                    j + 1
                )));
            }
            covered[j] += 1;
        }
    }
    if covered.iter().any(|&c| c != 1) {
        return Err(Error::Layout(
            "blocks must partition the first class".into(),
        ));
    }
    let layout = ConfigLayout {
        config: cfg.clone(),
        r,
        t,
        blocks,
    };
    let (k, b, n) = (layout.k(), layout.b(), layout.n());
    let mut h = BitMatrix::zeros(b + layout.blocks.len(), n);
    for (j, line) in cfg.lines.iter().enumerate() {
        for p in line.iter() {
            h.set(j, p, true);
        }
        h.set(j, k + j, true);
    }
    for (i, blk) in layout.blocks.iter().enumerate() {
        for j in blk.iter() {
            h.set(b + i, k + j, true);
        }
        h.set(b + i, k + b + i, true);
    }
    let code = LinearCode::with_labels(h, layout.labels())?;
    Ok((code, layout))
}

/// Configuration code on the free module `Z_r^m`; only odd `t` gives the
/// sequential-recovery guarantee, so even `t` is refused.
pub fn build_config_code(r: usize, m: usize, t: usize) -> Result<(LinearCode, ConfigLayout)> {
    if t.is_multiple_of(2) {
        return Err(Error::arg(format!(
            "t = {t} is even; the configuration construction requires odd t"
        )));
    }
    let cfg = build_module_configuration(r, m, t)?;
    build_config_pcm(&cfg, r, t)
}
