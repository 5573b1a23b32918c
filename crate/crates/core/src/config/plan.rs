use alloc::format;
use alloc::vec::Vec;

use super::{ConfigLayout, Configuration};
use crate::engine::{RecoveringSet, RepairPlan};
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

/// First line (in line order) meeting `e` in exactly one point. Always
/// exists when `|e|` is odd and at most `t` for a resolvable configuration.
pub fn singleton_line(cfg: &Configuration, e: &SupportSet) -> Result<usize> {
    (0..cfg.b())
        .find(|&j| cfg.line(j).intersection(e).len() == 1)
        .ok_or(Error::NotFound)
}

/// One step of the case analysis: a target in `e` and a recovering set
/// avoiding `e`.
fn find_step(layout: &ConfigLayout, e: &SupportSet) -> Result<(usize, SupportSet)> {
    let (k, b) = (layout.k(), layout.b());
    let cfg = &layout.config;
    let data: SupportSet = e.iter().filter(|&i| i < k).collect();

    let Some(i1) = data.iter().next() else {
        // Only parities are erased. A line parity is the sum of its line.
        if let Some(p) = e.iter().find(|&i| i < k + b) {
            return Ok((p, cfg.line(p - k).clone()));
        }
        let p = e
            .iter()
            .next()
            .ok_or_else(|| Error::Invariant("empty erasure set".into()))?;
        let blk = &layout.blocks[p - k - b];
        let members: SupportSet = if blk.len() >= 2 {
            blk.iter().map(|j| k + j).collect()
        } else {
            // A one-line block duplicates that line's parity, so the line's
            // data points recover it as well.
            cfg.line(blk.iter().next().unwrap_or(0)).clone()
        };
        return Ok((p, members));
    };

    let sets = layout.data_recovering_sets(i1);
    if let Some((_, r)) = sets.iter().find(|(_, r)| r.is_disjoint(e)) {
        return Ok((i1, r.clone()));
    }
    // Each disjoint set R_l holds exactly one erasure.
    let hits: Vec<usize> = sets
        .iter()
        .map(|(_, r)| r.intersection(e).iter().next().unwrap_or(usize::MAX))
        .collect();
    let data_hit = hits.iter().position(|&x| x < k);
    let parity_hit = hits.iter().position(|&x| x >= k && x != usize::MAX);
    match (data_hit, parity_hit) {
        (Some(_), None) => {
            // Every erasure is a data point and there are an odd number.
            let j = singleton_line(cfg, e)
                .map_err(|_| Error::Invariant(format!("no line meets {e:?} in one point")))?;
            let i2 = cfg.line(j).intersection(e).iter().next().unwrap_or(0);
            Ok((i2, cfg.line(j).without(i2).with(layout.line_parity(j))))
        }
        (Some(l1), Some(_)) => {
            let i2 = hits[l1];
            layout
                .data_recovering_sets(i2)
                .into_iter()
                .find(|(_, r)| r.is_disjoint(e))
                .map(|(_, r)| (i2, r))
                .ok_or_else(|| Error::Invariant(format!("no free recovering set for {i2}")))
        }
        (None, Some(_)) => {
            // All lines through i1 have their parity erased; the first-class
            // parity is recovered through its block.
            let (j1, _) = sets
                .iter()
                .find(|(j, _)| cfg.classes()[*j] == 0)
                .ok_or_else(|| Error::Invariant(format!("no first-class line through {i1}")))?;
            let bi = layout
                .block_of(*j1)
                .ok_or_else(|| Error::Invariant(format!("line {j1} is in no block")))?;
            let members: SupportSet = layout.blocks[bi]
                .iter()
                .filter(|&j| j != *j1)
                .map(|j| k + j)
                .chain(core::iter::once(layout.block_parity(bi)))
                .collect();
            if members.len() < 2 {
                return Err(Error::Invariant(format!(
                    "line parity {} has a single-symbol block",
                    j1 + 1
                )));
            }
            Ok((k + j1, members))
        }
        (None, None) => Err(Error::Invariant(
            "recovering sets of a data point are empty".into(),
        )),
    }
}

/// Repair plan built from the configuration structure alone.
pub fn config_repair_plan(layout: &ConfigLayout, erasures: &SupportSet) -> Result<RepairPlan> {
    let t = layout.t;
    if t.is_multiple_of(2) {
        return Err(Error::arg(format!("t = {t} is even; the plan needs odd t")));
    }
    if erasures.len() > t {
        return Err(Error::arg(format!(
            "{} erasures exceed t = {t}",
            erasures.len()
        )));
    }
    let n = layout.n();
    if erasures.max().is_some_and(|i| i >= n) {
        return Err(Error::arg("erasure outside the code length"));
    }
    let mut residual = erasures.clone();
    let mut steps = Vec::with_capacity(erasures.len());
    while !residual.is_empty() {
        let (target, members) = find_step(layout, &residual)?;
        residual = residual.without(target);
        steps.push(RecoveringSet::new(n, target, members));
    }
    Ok(RepairPlan::new(erasures.clone(), steps))
}
