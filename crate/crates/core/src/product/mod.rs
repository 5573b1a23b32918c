//! The product family: codes indexed by points of `Z_{r+1}^m` whose parity
//! checks tie every point holding digit `r` to its projections onto `Z_r`.
//!
//! Digit positions count from the right and are 1-based: position 1 is the
//! last written digit.

mod structural;

pub use structural::{
    axis_line, axis_recovering_set, partition_omega, psi, structural_repair_plan, Partition,
};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, SupportSet};

/// Largest `(r+1)^m` accepted, to keep the point lookup table small.
pub const MAX_AMBIENT: usize = 1 << 24;

/// A point of `Z_{r+1}^m`. `digits[ℓ-1]` holds position `ℓ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    digits: Vec<u8>,
}

impl Point {
    /// From digits indexed by position (`digits[0]` is position 1).
    pub fn from_positions(digits: Vec<u8>) -> Self {
        Point { digits }
    }

    /// From digits in written order `d_m, ..., d_1`.
    pub fn from_written(written: &[u8]) -> Self {
        Point {
            digits: written.iter().rev().copied().collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.digits.len()
    }

    /// Digit at 1-based position `ell` from the right.
    pub fn digit(&self, ell: usize) -> u8 {
        self.digits[ell - 1]
    }

    pub fn set_digit(&mut self, ell: usize, d: u8) {
        self.digits[ell - 1] = d;
    }

    pub fn positions(&self) -> &[u8] {
        &self.digits
    }

    pub fn written(&self) -> Vec<u8> {
        self.digits.iter().rev().copied().collect()
    }

    /// Label `d_m...d_1`; digits are separated by `.` once they can exceed 9.
    pub fn label(&self, r: usize) -> String {
        let parts = self.digits.iter().rev().map(|d| format!("{d}"));
        if r < 10 {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(".")
        }
    }

    /// Bit mask of the positions holding digit `r`, bit `ℓ-1` for position `ℓ`.
    /// This is the `s` with `supp_m(s) = U(α)`.
    pub fn layer(&self, r: usize) -> usize {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d as usize == r)
            .fold(0, |s, (i, _)| s | 1 << i)
    }

    fn code(&self, r: usize) -> usize {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * (r + 1) + d as usize)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Positions of the set bits of `s`, i.e. `supp_m(s)`, ascending.
pub fn supp(s: usize) -> SupportSet {
    (0..usize::BITS as usize)
        .filter(|b| s >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// `U(α)`, `T(α)` and `L(α)` of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub u: SupportSet,
    pub tset: SupportSet,
    pub l: Vec<Point>,
}

/// Splits the positions of `alpha` into those holding `r` (`u`) and the rest,
/// and lists the points of `Z_r^m` agreeing with `alpha` off `u`, in written
/// lexicographic order.
pub fn point_profile(r: usize, alpha: &Point) -> Profile {
    let m = alpha.m();
    let u: SupportSet = (1..=m).filter(|&l| alpha.digit(l) as usize == r).collect();
    let tset: SupportSet = (1..=m).filter(|&l| !u.contains(l)).collect();
    let free: Vec<usize> = u.iter().collect();
    let mut l = Vec::with_capacity(r.pow(free.len() as u32));
    let mut counter = alloc::vec![0u8; free.len()];
    loop {
        let mut p = alpha.clone();
        for (&pos, &d) in free.iter().zip(&counter) {
            p.set_digit(pos, d);
        }
        l.push(p);
        // Odometer with the lowest free position fastest, which yields
        // written-lexicographic order.
        let mut i = 0;
        loop {
            if i == counter.len() {
                return Profile { u, tset, l };
            }
            counter[i] += 1;
            if (counter[i] as usize) < r {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

/// The coordinate set `Ω_t` with its layers `Γ_s`.
///
/// `omega` is sorted by layer `s`, then by written digits.
#[derive(Clone, Debug)]
pub struct IndexSpace {
    r: usize,
    m: usize,
    t: usize,
    omega: Vec<Point>,
    layer_start: Vec<usize>,
    lookup: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl IndexSpace {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn omega(&self) -> &[Point] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// `Γ_s` for `s ≤ t`.
    pub fn gamma(&self, s: usize) -> &[Point] {
        &self.omega[self.layer_start[s]..self.layer_start[s + 1]]
    }

    /// Number of points of `Ω_0 = Z_r^m`.
    pub fn base_len(&self) -> usize {
        self.layer_start[1]
    }

    /// Column index of a point, if it lies in `Ω_t`.
    pub fn index_of(&self, p: &Point) -> Option<usize> {
        if p.m() != self.m || p.digits.iter().any(|&d| d as usize > self.r) {
            return None;
        }
        match self.lookup[p.code(self.r)] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index_of(p).is_some()
    }

    pub fn labels(&self) -> Vec<String> {
        self.omega.iter().map(|p| p.label(self.r)).collect()
    }

    pub fn points_of(&self, set: &SupportSet) -> Vec<Point> {
        set.iter().map(|i| self.omega[i].clone()).collect()
    }

    pub fn support_of<'a>(
        &self,
        points: impl IntoIterator<Item = &'a Point>,
    ) -> Result<SupportSet> {
        points
            .into_iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::arg(format!("point {p:?} is not in the index set")))
            })
            .collect()
    }

    /// Parses a written label (as produced by [`Point::label`]).
    pub fn parse_point(&self, label: &str) -> Result<Point> {
        let digits: Option<Vec<u8>> = if self.r < 10 {
            label
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect()
        } else {
            label.split('.').map(|s| s.parse().ok()).collect()
        };
        let p = digits
            .filter(|d| d.len() == self.m)
            .map(|d| Point::from_written(&d))
            .ok_or_else(|| Error::arg(format!("malformed point label {label:?}")))?;
        if p.digits.iter().any(|&d| d as usize > self.r) {
            return Err(Error::arg(format!("digit out of range in {label:?}")));
        }
        Ok(p)
    }
}

/// Builds `Ω_t = Γ_0 ∪ ... ∪ Γ_t` inside `Z_{r+1}^m`.
pub fn build_index_space(r: usize, m: usize, t: usize) -> Result<IndexSpace> {
    if r < 2 {
        return Err(Error::arg("r must be at least 2"));
    }
    if m == 0 || m >= usize::BITS as usize - 1 {
        return Err(Error::arg("m must be positive"));
    }
    if t > (1usize << m) - 1 {
        return Err(Error::arg(format!(
            "t = {t} exceeds 2^m - 1 = {}",
            (1usize << m) - 1
        )));
    }
    let ambient = (r + 1)
        .checked_pow(m as u32)
        .filter(|&a| a <= MAX_AMBIENT)
        .ok_or_else(|| Error::arg("(r+1)^m is too large"))?;

    // Enumerate Z_{r+1}^m in written-lex order, keep layers ≤ t, then a
    // stable sort by layer.
    let mut pts: Vec<(usize, Point)> = Vec::new();
    let mut cur = Point::from_positions(alloc::vec![0; m]);
    for _ in 0..ambient {
        let s = cur.layer(r);
        if s <= t {
            pts.push((s, cur.clone()));
        }
        for d in cur.digits.iter_mut() {
            *d += 1;
            if (*d as usize) <= r {
                break;
            }
            *d = 0;
        }
    }
    pts.sort_by_key(|(s, _)| *s);
    let mut layer_start = alloc::vec![0usize; t + 2];
    for (s, _) in &pts {
        layer_start[s + 1] += 1;
    }
    for s in 0..=t {
        layer_start[s + 1] += layer_start[s];
    }
    let omega: Vec<Point> = pts.into_iter().map(|(_, p)| p).collect();
    let mut lookup = alloc::vec![ABSENT; ambient];
    for (i, p) in omega.iter().enumerate() {
        lookup[p.code(r)] = i as u32;
    }
    Ok(IndexSpace {
        r,
        m,
        t,
        omega,
        layer_start,
        lookup,
    })
}

/// `n = Σ_{s ≤ t} r^{m - |supp(s)|}`, computed from the formula rather than by
/// counting points.
pub fn formula_length(r: usize, m: usize, t: usize) -> u64 {
    (0..=t)
        .map(|s| (r as u64).pow((m - s.count_ones() as usize) as u32))
        .sum()
}

/// Parity-check matrix with rows `Ω_t ∖ Ω_0` and columns `Ω_t`, row `α`
/// covering `L(α) ∪ {α}`.
pub fn build_product_pcm(space: &IndexSpace) -> Result<BitMatrix> {
    if space.t == 0 {
        return Err(Error::arg("t must be at least 1 to have parity checks"));
    }
    let base = space.base_len();
    let mut h = BitMatrix::zeros(space.len() - base, space.len());
    for (row, alpha) in space.omega[base..].iter().enumerate() {
        h.set(row, base + row, true);
        for beta in point_profile(space.r, alpha).l {
            let col = space
                .index_of(&beta)
                .ok_or_else(|| Error::Invariant(format!("{beta:?} missing from Ω_0")))?;
            h.set(row, col, true);
        }
    }
    Ok(h)
}

/// The product-family code with point labels.
pub fn build_product_code(r: usize, m: usize, t: usize) -> Result<(IndexSpace, LinearCode)> {
    if t == 0 {
        return Err(Error::arg("t must be at least 1"));
    }
    let space = build_index_space(r, m, t)?;
    let h = build_product_pcm(&space)?;
    let code = LinearCode::with_labels(h, space.labels())?;
    Ok((space, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(r: &[&[u8]]) -> Vec<Point> {
        r.iter().map(|w| Point::from_written(w)).collect()
    }

    #[test]
    fn profile_of_worked_point() {
        let a = Point::from_written(&[1, 0, 2, 1, 1, 2]);
        let p = point_profile(2, &a);
        assert_eq!(p.u, SupportSet::from([1, 4]));
        assert_eq!(p.tset, SupportSet::from([2, 3, 5, 6]));
        assert_eq!(
            p.l,
            pts(&[
                &[1, 0, 0, 1, 1, 0],
                &[1, 0, 0, 1, 1, 1],
                &[1, 0, 1, 1, 1, 0],
                &[1, 0, 1, 1, 1, 1]
            ])
        );
    }

    #[test]
    fn profile_extremes() {
        let a = Point::from_written(&[0, 1]);
        assert_eq!(point_profile(2, &a).l, alloc::vec![a.clone()]);
        let top = Point::from_written(&[2, 2]);
        let p = point_profile(2, &top);
        assert_eq!(p.u, SupportSet::from([1, 2]));
        assert_eq!(p.l.len(), 4);
    }

    #[test]
    fn gamma_layer_shape() {
        assert_eq!(supp(22), SupportSet::from([2, 3, 5]));
        let space = build_index_space(2, 6, 22).unwrap();
        let g = space.gamma(22);
        assert_eq!(g.len(), 8);
        assert!(g.iter().all(|p| p.digit(5) == 2
            && p.digit(3) == 2
            && p.digit(2) == 2
            && p.digit(6) < 2
            && p.digit(4) < 2
            && p.digit(1) < 2));
    }

    #[test]
    fn sizes_and_bounds() {
        assert_eq!(build_index_space(2, 3, 5).unwrap().len(), 24);
        assert_eq!(build_index_space(3, 2, 0).unwrap().len(), 9);
        assert_eq!(build_index_space(2, 3, 7).unwrap().len(), 27);
        assert!(build_index_space(2, 2, 4).is_err());
    }

    #[test]
    fn single_digit_code_is_parity() {
        let (_, code) = build_product_code(2, 1, 1).unwrap();
        assert_eq!(
            code.pcm().to_row_strings(),
            alloc::vec![String::from("111")]
        );
    }

    #[test]
    fn cube_dimensions() {
        let (space, code) = build_product_code(2, 3, 7).unwrap();
        assert_eq!((code.pcm().rows(), code.n(), code.k()), (19, 27, 8));
        assert_eq!(code.label(0), "000");
        assert_eq!(
            space.parse_point("212").unwrap(),
            Point::from_written(&[2, 1, 2])
        );
    }

    #[test]
    fn formula_matches_count() {
        for r in 2..=4 {
            for m in 1..=4 {
                for t in 0..(1usize << m) {
                    let n = build_index_space(r, m, t).unwrap().len() as u64;
                    assert_eq!(n, formula_length(r, m, t), "r={r} m={m} t={t}");
                }
            }
        }
    }
}
