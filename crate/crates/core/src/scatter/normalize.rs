//! Reduction of `(ℓ, t)` to t-normalized form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::FiniteField;
use crate::linpoly::LinPoly;

/// One normalization step together with the map it induces on
/// specializations: `ℓ - s₀x^{q^t}` before the step corresponds to
/// `ℓ′ - s₀′x^{q^{t′}}` after it, with equal kernel dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Reduction {
    /// `ℓ′ = c·ℓ`; `s₀′ = c·s₀`.
    Scale { factor: u64 },
    /// `ℓ′ = ℓ - a_t x^{q^t}`; `s₀′ = s₀ - a_t`.
    Shift { by: u64 },
    /// `ℓ = ℓ′ ∘ x^{q^j}` and `t′ = t - j`; `s₀′ = s₀^{q^{-j}}`.
    Descend { by: usize },
}

impl Reduction {
    /// Image of a specialization `s0` in a field `f` of degree `degree` over `F_q`.
    pub fn map<F: FiniteField>(&self, f: &F, q: u64, degree: usize, s0: u64) -> u64 {
        match *self {
            Reduction::Scale { factor } => f.mul(factor, s0),
            Reduction::Shift { by } => f.sub(s0, by),
            Reduction::Descend { by } => frob_inverse(f, q, degree, by, s0),
        }
    }
}

/// `a^{q^{-j}}` in a field of degree `degree` over `F_q`.
fn frob_inverse<F: FiniteField>(f: &F, q: u64, degree: usize, j: usize, a: u64) -> u64 {
    let k = (degree - j % degree) % degree;
    let e = (q as u128).pow(k as u32);
    f.pow(a, e)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub poly: LinPoly,
    pub t: usize,
    pub log: Vec<Reduction>,
}

impl Normalized {
    /// Transports a specialization of the original problem to the normalized one.
    pub fn map_specialization<F: FiniteField>(&self, f: &F, degree: usize, s0: u64) -> u64 {
        let q = self.poly.q();
        self.log.iter().fold(s0, |s, r| r.map(f, q, degree, s))
    }
}

pub fn t_normalize(l: &LinPoly, t: usize) -> Result<Normalized> {
    if t == 0 {
        return Err(Error::BadParams("t must be positive".into()));
    }
    let degree = l.lin_degree()?;
    let layer = l.coeff_layer();
    let f = l.ctx().arith(layer);
    let mut log = Vec::new();
    let mut poly = l.clone();

    let scale = |poly: &mut LinPoly, log: &mut Vec<Reduction>| -> Result<()> {
        let lead = poly.coeff(poly.lin_degree()?);
        if lead != 1 {
            let c = f.inv(lead).expect("leading coefficient is nonzero");
            *poly = poly.scale(c)?;
            log.push(Reduction::Scale { factor: c });
        }
        Ok(())
    };

    scale(&mut poly, &mut log)?;
    let at = poly.coeff(t);
    if at != 0 {
        let mono = LinPoly::monomial(l.ctx().clone(), layer, t, at)?;
        poly = poly.sub(&mono)?;
        log.push(Reduction::Shift { by: at });
        if poly.is_zero() {
            return Err(Error::NotReducible("ℓ is a single x^{q^t} term".into()));
        }
        if t == degree {
            scale(&mut poly, &mut log)?;
        }
    }

    let j = poly.coeffs().iter().position(|&a| a != 0).unwrap();
    if j > t {
        return Err(Error::NotReducible(format!("lowest term x^(q^{j}) lies above index t = {t}")));
    }
    if j > 0 {
        let q = poly.q();
        let n = poly.n();
        let coeffs = poly.coeffs()[j..].iter().map(|&a| frob_inverse(&f, q, n, j, a)).collect();
        poly = LinPoly::new(l.ctx().clone(), layer, coeffs)?;
        log.push(Reduction::Descend { by: j });
    }
    Ok(Normalized { poly, t: t - j, log })
}

/// Whether `(ℓ, t)` is in the form [`t_normalize`] produces: monic, no
/// `x^{q^t}` term, and a nonzero linear term when `t > 0`.
pub fn is_t_normalized(l: &LinPoly, t: usize) -> bool {
    let Ok(r) = l.lin_degree() else { return false };
    l.coeff(r) == 1 && l.coeff(t) == 0 && (t == 0 || l.coeff(0) != 0)
}
