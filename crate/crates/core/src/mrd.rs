//! The rank-metric code `{aℓ(x) + bx : a, b ∈ F_{q^n}}` of a linearized
//! polynomial, viewed inside the `F_q`-linear maps of `F_{q^n}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{FiniteField, Gf};
use crate::linalg::Mat;
use crate::linpoly::LinPoly;
use crate::scatter;

/// Largest code size `q^{2n}` that [`min_rank_distance`] enumerates.
pub const CODE_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone)]
pub struct RankCode {
    poly: LinPoly,
    n: usize,
    q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrdReport {
    pub n: usize,
    pub q: u64,
    pub min_rank: usize,
    /// `min_rank = n - 1`, the Singleton bound for dimension 2.
    pub is_mrd: bool,
    /// Projective classes `(a : b)` examined.
    pub classes: u64,
    /// `(a, b)` with `rank(aℓ + bx) = min_rank`.
    pub witness: (u64, u64),
}

impl RankCode {
    /// The code of `ℓ` without the scatteredness check; `ℓ` must not be a
    /// multiple of `x`.
    pub fn new(poly: &LinPoly) -> Result<RankCode> {
        if poly.lin_degree()? == 0 {
            return Err(Error::Degenerate("ℓ is a multiple of x, so the code has dimension 1".into()));
        }
        Ok(RankCode { n: poly.n(), q: poly.q(), poly: poly.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn poly(&self) -> &LinPoly {
        &self.poly
    }

    /// `q^{2n}`.
    pub fn size(&self) -> u128 {
        (self.q as u128).pow(2 * self.n as u32)
    }

    fn field(&self) -> Result<std::sync::Arc<Gf>> {
        self.poly.ctx().gf(self.poly.coeff_layer())
    }

    /// Matrix over `F_q` of the codeword `aℓ + bx`.
    pub fn codeword(&self, a: u64, b: u64) -> Result<Mat> {
        self.poly.scale(a)?.add(&LinPoly::monomial(self.poly.ctx().clone(), self.poly.coeff_layer(), 0, b)?)?
            .linear_map_matrix(self.poly.coeff_layer())
            .or_else(|e| match e {
                Error::ZeroPolynomial => Ok(Mat::zero(self.n, self.n)),
                e => Err(e),
            })
    }
}

/// The code of an index-0 scattered `ℓ` over `F_{q^n}`.
pub fn build_code(poly: &LinPoly) -> Result<RankCode> {
    let code = RankCode::new(poly)?;
    if !scatter::is_scattered(poly, 1, 0)? {
        return Err(Error::NotScattered("ℓ is not scattered of index 0 over F_(q^n)".into()));
    }
    Ok(code)
}

/// Minimum rank over nonzero codewords, one per projective class `(1 : b)`, `(0 : 1)`.
pub fn min_rank_distance(code: &RankCode) -> Result<MrdReport> {
    if code.size() > CODE_BUDGET {
        return Err(Error::BudgetExceeded(format!("{} codewords exceed the cap of {CODE_BUDGET}", code.size())));
    }
    let f = code.field()?;
    let base = code.poly.ctx().gf(code.poly.ctx().base_layer())?;
    let (q, n) = (code.q, code.n);
    let images: Vec<u64> = (0..n).map(|j| code.poly.eval_code(&*f, q.pow(j as u32))).collect();
    let rank_of = |b: u64| -> usize {
        let cols: Vec<Vec<u64>> = images
            .iter()
            .enumerate()
            .map(|(j, &u)| Gf::digits(f.add(u, f.mul(b, q.pow(j as u32))), q, n))
            .collect();
        Mat::from_cols(&cols).rank(&base)
    };
    // (0 : 1) is x itself, of full rank n; ties go to the smallest b
    let (min_rank, b) = (0..f.order()).into_par_iter().map(|b| (rank_of(b), b)).min().unwrap();
    let (min_rank, witness) = if min_rank < n { (min_rank, (1, b)) } else { (n, (0, 1)) };
    Ok(MrdReport { n, q, min_rank, is_mrd: min_rank + 1 == n, classes: f.order() + 1, witness })
}
