//! Frobenius orbit types at specializations, the fixed-point form of the
//! rank condition, Newton-polygon ramification at `s = 0` and `s = ∞`, and
//! the explicit monodromy of `ℓ = x`.

use crate::error::{Error, Result};
use crate::ff::Gf;
use crate::linalg::Mat;

mod kummer;
mod newton;
mod orbits;

pub use kummer::{kummer_monodromy, KummerMonodromy};
pub use newton::{newton_ramification, Branch, Place, RamificationProfile, Segment, WILD_NOTE};
pub use orbits::{
    all_orbit_types, distinct_degrees, orbit_type, verify_equivalence, verify_equivalence_at, EquivalenceEntry,
    EquivalenceReport, OrbitType,
};

fn check_invertible(gf: &Gf, m: &Mat) -> Result<()> {
    if !m.is_square() || m.data().iter().any(|&x| x >= gf.order()) {
        return Err(Error::BadParams("expected a square matrix over F_q".into()));
    }
    if m.det(gf) == 0 {
        return Err(Error::Singular);
    }
    Ok(())
}

/// `rank(M - I) ≥ d - 1`.
pub fn rank_condition(gf: &Gf, m: &Mat) -> Result<bool> {
    check_invertible(gf, m)?;
    let d = m.rows();
    Ok(m.sub(gf, &Mat::identity(d)).rank(gf) + 1 >= d)
}

/// Nonzero fixed vectors of `M`: `q^{dim ker(M - I)} - 1`.
pub fn fixed_points_nonzero(gf: &Gf, m: &Mat) -> Result<u128> {
    check_invertible(gf, m)?;
    let k = m.sub(gf, &Mat::identity(m.rows())).kernel_dim(gf);
    Ok((gf.order() as u128).pow(k as u32) - 1)
}
