use alloc::format;
use alloc::vec::Vec;

use super::{IndexSpace, Point};
use crate::engine::{RecoveringSet, RepairPlan};
use crate::error::{Error, Result};
use crate::gf2::SupportSet;

/// The axis line through `alpha` at position `ell`: all points differing
/// from `alpha` only there, ordered by that digit.
pub fn axis_line(r: usize, alpha: &Point, ell: usize) -> Vec<Point> {
    (0..=r as u8)
        .map(|d| {
            let mut p = alpha.clone();
            p.set_digit(ell, d);
            p
        })
        .collect()
}

/// The axis line through `alpha` minus `alpha` itself, as a recovering set,
/// provided the whole line lies in `Ω_t`.
pub fn axis_recovering_set(space: &IndexSpace, alpha: &Point, ell: usize) -> Result<RecoveringSet> {
    if ell == 0 || ell > space.m() {
        return Err(Error::arg(format!(
            "position {ell} out of 1..={}",
            space.m()
        )));
    }
    let target = space
        .index_of(alpha)
        .ok_or_else(|| Error::arg(format!("{alpha:?} is not in the index set")))?;
    let mut members = Vec::with_capacity(space.r());
    for p in axis_line(space.r(), alpha, ell) {
        if &p == alpha {
            continue;
        }
        members.push(space.index_of(&p).ok_or_else(|| Error::Containment {
            point: format!("{alpha:?}"),
            position: ell,
        })?);
    }
    Ok(RecoveringSet::new(
        space.len(),
        target,
        members.into_iter().collect(),
    ))
}

/// Inserts digit `j` at position `m0`, shifting positions `≥ m0` up by one.
pub fn psi(p: &Point, m0: usize, j: u8) -> Point {
    let mut d = p.positions().to_vec();
    d.insert(m0 - 1, j);
    Point::from_positions(d)
}

fn unpsi(p: &Point, m0: usize) -> Point {
    let mut d = p.positions().to_vec();
    d.remove(m0 - 1);
    Point::from_positions(d)
}

/// Split of `Ω_t` into `A = Ω_{t1}` (blocks by digit `m0`) and the rest `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub m0: usize,
    pub t1: usize,
    pub t2: usize,
    /// `A_0, ..., A_{r-1}` as column sets.
    pub blocks: Vec<SupportSet>,
    pub b: SupportSet,
}

impl Partition {
    pub fn a(&self) -> SupportSet {
        self.blocks.iter().flat_map(SupportSet::iter).collect()
    }
}

/// `m0` with `2^{m0-1} - 1 < t ≤ 2^{m0} - 1`, `t1 = 2^{m0-1} - 1` and
/// `t2 = t - t1 - 1`.
fn split_params(t: usize) -> (usize, usize, usize) {
    let m0 = (usize::BITS - t.leading_zeros()) as usize;
    let t1 = (1usize << (m0 - 1)) - 1;
    (m0, t1, t - t1 - 1)
}

pub fn partition_omega(space: &IndexSpace) -> Result<Partition> {
    if space.m() < 2 {
        return Err(Error::arg("partition needs m > 1"));
    }
    if space.t() == 0 {
        return Err(Error::arg("partition needs t >= 1"));
    }
    let (m0, t1, t2) = split_params(space.t());
    let r = space.r();
    let mut blocks = alloc::vec![Vec::new(); r];
    let mut b = Vec::new();
    for (i, p) in space.omega().iter().enumerate() {
        if p.layer(r) <= t1 {
            blocks[p.digit(m0) as usize].push(i);
        } else {
            b.push(i);
        }
    }
    Ok(Partition {
        m0,
        t1,
        t2,
        blocks: blocks.into_iter().map(SupportSet::from).collect(),
        b: SupportSet::from(b),
    })
}

/// One repair step found without search: `(α, ℓ)` such that the axis line
/// through `α` at `ℓ` lies in `Ω_t^{(m)}` and meets `e` only in `α`.
///
/// `e` is nonempty, lies in `Ω_t^{(m)}` and has at most `t` points.
fn find_step(r: usize, m: usize, t: usize, e: &[Point]) -> Result<(Point, usize)> {
    if m == 1 {
        return Ok((e[0].clone(), 1));
    }
    let rr = r as u8;
    if e.iter().all(|p| p.layer(r) != 0) {
        // The smallest occupied layer s; dropping any position of supp(s)
        // lands the rest of the line in a strictly lower, erasure-free layer.
        let s = e.iter().map(|p| p.layer(r)).min().unwrap_or(0);
        let alpha = e.iter().filter(|p| p.layer(r) == s).min().cloned();
        let ell = (usize::BITS - s.leading_zeros()) as usize;
        return alpha
            .map(|a| (a, ell))
            .ok_or_else(|| Error::Invariant("empty erasure set".into()));
    }
    let (m0, t1, t2) = split_params(t);
    let lift =
        |(p, ell): (Point, usize), j: u8| (psi(&p, m0, j), if ell >= m0 { ell + 1 } else { ell });
    let (ea, eb): (Vec<&Point>, Vec<&Point>) = e.iter().partition(|p| p.layer(r) <= t1);
    let block = |j: u8| -> Vec<Point> {
        ea.iter()
            .filter(|p| p.digit(m0) == j)
            .map(|p| unpsi(p, m0))
            .collect()
    };
    if eb.is_empty() {
        let occupied: Vec<u8> = (0..rr)
            .filter(|&j| ea.iter().any(|p| p.digit(m0) == j))
            .collect();
        if occupied.len() >= 2 {
            for &j in &occupied {
                let sub = block(j);
                if sub.len() <= t1 {
                    return find_step(r, m - 1, t1, &sub).map(|s| lift(s, j));
                }
            }
            return Err(Error::Invariant(format!(
                "no block of A meets the erasures in at most {t1} points"
            )));
        }
        // All erasures in one block: an information point's axis at m0
        // leaves the block and lands in Γ_0 ∪ Γ_{t1+1}.
        let alpha = e
            .iter()
            .filter(|p| p.layer(r) == 0)
            .min()
            .cloned()
            .ok_or_else(|| Error::Invariant("expected an information erasure".into()))?;
        return Ok((alpha, m0));
    }
    if ea.len() <= t1 {
        let j = ea[0].digit(m0);
        return find_step(r, m - 1, t1, &block(j)).map(|s| lift(s, j));
    }
    if eb.len() <= t2 {
        let sub: Vec<Point> = eb.iter().map(|p| unpsi(p, m0)).collect();
        return find_step(r, m - 1, t2, &sub).map(|s| lift(s, rr));
    }
    Err(Error::Invariant(format!(
        "{} erasures in A and {} in B exceed t1 = {t1}, t2 = {t2}",
        ea.len(),
        eb.len()
    )))
}

/// Repairs up to `t` erasures using axis lines only, following the layered
/// induction of the construction rather than any search over dual codewords.
pub fn structural_repair_plan(space: &IndexSpace, erasures: &SupportSet) -> Result<RepairPlan> {
    let (r, m, t) = (space.r(), space.m(), space.t());
    if t == 0 {
        return Err(Error::arg("t must be at least 1"));
    }
    if erasures.len() > t {
        return Err(Error::arg(format!(
            "{} erasures exceed t = {t}",
            erasures.len()
        )));
    }
    if erasures.max().is_some_and(|i| i >= space.len()) {
        return Err(Error::arg("erasure outside the code length"));
    }
    let mut residual = space.points_of(erasures);
    let mut steps = Vec::with_capacity(residual.len());
    while !residual.is_empty() {
        let (alpha, ell) = find_step(r, m, t, &residual)?;
        let step = axis_recovering_set(space, &alpha, ell)
            .map_err(|e| Error::Invariant(format!("structural step left Ω_t: {e}")))?;
        if step
            .members()
            .iter()
            .any(|i| residual.contains(&space.omega()[i]))
        {
            return Err(Error::Invariant(format!(
                "axis of {alpha:?} at {ell} meets other erasures"
            )));
        }
        residual.retain(|p| p != &alpha);
        steps.push(step);
    }
    Ok(RepairPlan::new(erasures.clone(), steps))
}

#[cfg(test)]
mod tests {
    use super::super::build_index_space;
    use super::*;

    #[test]
    fn axis_in_square() {
        let space = build_index_space(2, 2, 3).unwrap();
        let a = Point::from_written(&[2, 2]);
        let rs = axis_recovering_set(&space, &a, 1).unwrap();
        let want = space
            .support_of(&[Point::from_written(&[2, 0]), Point::from_written(&[2, 1])])
            .unwrap();
        assert_eq!(rs.members(), &want);
    }

    #[test]
    fn axis_outside_omega() {
        let space = build_index_space(2, 2, 1).unwrap();
        let a = Point::from_written(&[0, 0]);
        assert!(matches!(
            axis_recovering_set(&space, &a, 2),
            Err(Error::Containment { position: 2, .. })
        ));
        assert!(axis_recovering_set(&space, &a, 1).is_ok());
    }

    #[test]
    fn partition_of_cube_t5() {
        let space = build_index_space(2, 3, 5).unwrap();
        let p = partition_omega(&space).unwrap();
        assert_eq!((p.m0, p.t1, p.t2), (3, 3, 1));
        assert_eq!(p.b.len(), 6);
        assert!(space
            .points_of(&p.b)
            .iter()
            .all(|q| q.digit(3) == 2 && q.digit(2) < 2));
        assert!(partition_omega(&build_index_space(2, 1, 1).unwrap()).is_err());
    }

    #[test]
    fn partition_full_and_r3() {
        let space = build_index_space(2, 4, 15).unwrap();
        let p = partition_omega(&space).unwrap();
        assert_eq!((p.m0, p.t2), (4, 7));
        let space = build_index_space(3, 2, 3).unwrap();
        let p = partition_omega(&space).unwrap();
        assert_eq!((p.m0, p.t1, p.t2), (2, 1, 1));
        let sizes: usize = p.blocks.iter().map(SupportSet::len).sum::<usize>() + p.b.len();
        assert_eq!(sizes, space.len());
        assert!(p.blocks.iter().all(|b| b.len() == 4));
    }

    #[test]
    fn psi_inserts_digit() {
        let p = Point::from_written(&[1, 0]);
        assert_eq!(psi(&p, 2, 2), Point::from_written(&[1, 2, 0]));
        assert_eq!(unpsi(&psi(&p, 1, 1), 1), p);
    }

    #[test]
    fn single_non_information_erasure() {
        let space = build_index_space(2, 3, 7).unwrap();
        let e = space
            .support_of(&[Point::from_written(&[2, 1, 2])])
            .unwrap();
        let plan = structural_repair_plan(&space, &e).unwrap();
        assert_eq!(plan.steps().len(), 1);
    }
}
