use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rate = Ratio<u128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaStatus {
    Known,
    /// Proposed but unproven.
    Conjecture,
    /// Given by the caller.
    Supplied,
}

/// The coefficient vector of the conjectured general bound for small `t`.
pub fn alpha_preset(t: usize) -> Option<(Vec<u32>, AlphaStatus)> {
    let (a, s): (&[u32], _) = match t {
        1 => (&[1], AlphaStatus::Known),
        2 => (&[2], AlphaStatus::Known),
        3 => (&[2, 1], AlphaStatus::Known),
        4 => (&[2, 2], AlphaStatus::Known),
        5 => (&[2, 2, 1], AlphaStatus::Conjecture),
        6 => (&[2, 3, 1], AlphaStatus::Conjecture),
        _ => return None,
    };
    Some((a.to_vec(), s))
}

/// `(1 + Σ a_i / r^i)^{-1}` with `Σ a_i = t`.
pub fn conjecture_rate(r: usize, t: usize, a: &[u32]) -> Result<Rate> {
    if r < 1 {
        return Err(Error::arg("r must be positive"));
    }
    let sum: u64 = a.iter().map(|&x| x as u64).sum();
    if sum != t as u64 {
        return Err(Error::arg(format!(
            "coefficients sum to {sum}, expected t = {t}"
        )));
    }
    let overflow = || Error::arg("coefficient vector too long for exact arithmetic");
    let m = u32::try_from(a.len()).map_err(|_| overflow())?;
    let den = (r as u128).checked_pow(m).ok_or_else(overflow)?;
    // Σ a_i r^{m-i} over r^m.
    let mut num = den;
    for (i, &ai) in a.iter().enumerate() {
        let p = (r as u128)
            .checked_pow(m - 1 - i as u32)
            .ok_or_else(overflow)?;
        num = num.checked_add(ai as u128 * p).ok_or_else(overflow)?;
    }
    Ok(Rate::new(den, num))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateBounds {
    /// `r / (r + 2)`, the bound for two erasures.
    pub t2: Rate,
    /// `(r / (r + 1))²`, the bound for three erasures.
    pub t3: Rate,
    /// The bound applying to the requested `t`, when one is proven.
    pub proven: Option<Rate>,
    /// Value of the conjectured form for the supplied or preset vector.
    pub conjecture: Option<(Vec<u32>, AlphaStatus, Rate)>,
}

pub fn rate_bounds(r: usize, t: usize, alpha: Option<&[u32]>) -> Result<RateBounds> {
    if r < 1 || t < 1 {
        return Err(Error::arg("r and t must be positive"));
    }
    let rr = r as u128;
    let t2 = Rate::new(rr, rr + 2);
    let t3 = Rate::new(rr * rr, (rr + 1) * (rr + 1));
    let proven = match t {
        1 => Some(Rate::new(rr, rr + 1)),
        2 => Some(t2),
        3 => Some(t3),
        _ => None,
    };
    let conjecture = match alpha {
        Some(a) => Some((a.to_vec(), AlphaStatus::Supplied, conjecture_rate(r, t, a)?)),
        None => alpha_preset(t)
            .map(|(a, s)| conjecture_rate(r, t, &a).map(|v| (a, s, v)))
            .transpose()?,
    };
    Ok(RateBounds {
        t2,
        t3,
        proven,
        conjecture,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let b = rate_bounds(2, 3, None).unwrap();
        assert_eq!(b.t3, Rate::new(4, 9));
        assert_eq!(b.proven, Some(Rate::new(4, 9)));
        assert_eq!(b.conjecture.unwrap().2, Rate::new(4, 9));
        assert_eq!(
            rate_bounds(5, 2, None).unwrap().proven,
            Some(Rate::new(5, 7))
        );
    }

    #[test]
    fn t4_vector() {
        // 1 / (1 + 2/3 + 2/9) = 9/17
        assert_eq!(conjecture_rate(3, 4, &[2, 2, 0]).unwrap(), Rate::new(9, 17));
        assert!(conjecture_rate(3, 4, &[2, 1]).is_err());
        assert_eq!(alpha_preset(5).unwrap().1, AlphaStatus::Conjecture);
    }
}
