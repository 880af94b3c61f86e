//! Newton polygons of `ℓ/x - s·x^{q^t-1}` at the places `s = 0` and `s = ∞`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linpoly::LinPoly;
use crate::scatter::is_t_normalized;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Place {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "inf")]
    Infinity,
}

impl Place {
    /// Valuation of `s` at the place.
    fn valuation(self) -> i64 {
        match self {
            Place::Zero => 1,
            Place::Infinity => -1,
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        match s {
            "0" => Ok(Place::Zero),
            "inf" | "∞" => Ok(Place::Infinity),
            _ => Err(Error::BadParams(format!("unknown place {s:?}; expected 0 or inf"))),
        }
    }
}

/// Where the roots of a segment accumulate in the `x`-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Positive root valuation.
    Zero,
    /// Negative root valuation.
    Infinity,
    /// Roots are units.
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    /// Slope `num/den` in lowest terms, `den > 0`.
    pub slope_num: i64,
    pub slope_den: u64,
    /// Horizontal length: the number of roots on this segment.
    pub length: u64,
    /// Ramification index: the slope denominator.
    pub e: u64,
    /// `length / e`.
    pub multiplicity: u64,
    pub branch: Branch,
    /// `p | e`; only the tame part of the index is certified.
    pub wild: bool,
    pub q_divisible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub place: Place,
    pub q: u64,
    pub r: usize,
    pub t: usize,
    pub entries: Vec<Segment>,
    /// `q^d - 1`.
    pub total_degree: u64,
    pub any_q_divisible: bool,
    pub note: Option<String>,
}

impl RamificationProfile {
    pub fn indices(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.entries.iter().flat_map(|s| std::iter::repeat_n(s.e, s.multiplicity as usize)).collect();
        v.sort_unstable();
        v
    }
}

pub const WILD_NOTE: &str = "tame-only e; full e not computed";

/// Lower convex hull of points sorted by abscissa.
fn lower_hull(points: &[(u64, i64)]) -> Vec<(u64, i64)> {
    let mut hull: Vec<(u64, i64)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the chord a-p
            let cross = (b.0 as i128 - a.0 as i128) * (p.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (p.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

pub fn newton_ramification(l: &LinPoly, t: usize, place: Place) -> Result<RamificationProfile> {
    let r = l.lin_degree()?;
    if r == t {
        return Err(Error::EqualDegrees(r));
    }
    if !is_t_normalized(l, t) {
        return Err(Error::NotNormalized(format!("ℓ is not {t}-normalized")));
    }
    let q = l.q();
    let p = l.ctx().p();
    let exp = |i: usize| -> Result<u64> {
        q.checked_pow(i as u32).map(|v| v - 1).ok_or_else(|| Error::BudgetExceeded(format!("q^{i} overflows")))
    };
    let mut points = Vec::new();
    for (i, &a) in l.coeffs().iter().enumerate() {
        if a != 0 {
            points.push((exp(i)?, 0));
        }
    }
    points.push((exp(t)?, place.valuation()));
    points.sort_unstable();

    let hull = lower_hull(&points);
    let mut entries = Vec::new();
    for w in hull.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        let length = x1 - x0;
        let rise = y1 - y0;
        let g = (rise.unsigned_abs()).gcd(&length);
        let den = length / g;
        let num = rise / g as i64;
        let e = den;
        let branch = match num.signum() {
            -1 => Branch::Zero,
            1 => Branch::Infinity,
            _ => Branch::Unit,
        };
        entries.push(Segment {
            slope_num: num,
            slope_den: den,
            length,
            e,
            multiplicity: length / e,
            branch,
            wild: e % p == 0,
            q_divisible: e % q == 0,
        });
    }
    let any_q_divisible = entries.iter().any(|s| s.q_divisible);
    let note = entries.iter().any(|s| s.wild).then(|| WILD_NOTE.to_string());
    Ok(RamificationProfile { place, q, r, t, entries, total_degree: exp(r.max(t))?, any_q_divisible, note })
}
