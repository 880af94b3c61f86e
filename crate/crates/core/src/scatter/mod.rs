//! Scatteredness of `ℓ` at index `t`: kernel dimensions of `ℓ - s₀x^{q^t}`
//! over `F_{q^{nm}}` for every specialization `s₀`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{FiniteField, Gf};
use crate::linalg::Mat;
use crate::linpoly::LinPoly;

mod normalize;

pub use normalize::{is_t_normalized, t_normalize, Normalized, Reduction};

/// Caps on exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest `q^{nm}` a scan may enumerate.
    pub max_specializations: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_specializations: 1 << 20 }
    }
}

/// Histogram over `s₀ ∈ F_{q^{nm}}` of `dim ker(ℓ - s₀x^{q^t})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterProfile {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub histogram: BTreeMap<usize, u64>,
    pub max_dim: usize,
    /// Smallest `s₀` code attaining `max_dim` when that exceeds 1.
    pub witness: Option<u64>,
}

impl ScatterProfile {
    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn is_scattered(&self) -> bool {
        self.max_dim <= 1
    }
}

/// `d = max{r, t}`.
pub fn scatter_degree(l: &LinPoly, t: usize) -> Result<usize> {
    Ok(l.lin_degree()?.max(t))
}

/// Layer of degree `nm` over `F_q` that contains the coefficients of `ℓ`.
pub fn target_layer(l: &LinPoly, m: usize) -> Result<usize> {
    let nm = l.n() * m;
    l.ctx().layer_with_degree(nm, l.coeff_layer()).ok_or(Error::LayerMissing(nm))
}

/// Precomputed images `ℓ(e_j)` and `e_j^{q^t}` of the `F_q`-basis of the
/// target layer, so that each specialization costs `N` multiplications and
/// one `N × N` elimination over `F_q`.
pub struct SpecializationKernel {
    q: u64,
    dim: usize,
    top: Arc<Gf>,
    base: Arc<Gf>,
    images: Vec<u64>,
    twists: Vec<u64>,
}

impl SpecializationKernel {
    pub fn new(l: &LinPoly, m: usize, t: usize, budget: Budget) -> Result<SpecializationKernel> {
        let target = target_layer(l, m)?;
        let ctx = l.ctx();
        let size = ctx.cardinality(target);
        if size > budget.max_specializations as u128 {
            return Err(Error::BudgetExceeded(format!(
                "{size} specializations exceed the cap of {}",
                budget.max_specializations
            )));
        }
        let top = ctx.gf(target)?;
        let base = ctx.gf(ctx.base_layer())?;
        let q = l.q();
        let dim = l.n() * m;
        let basis: Vec<u64> = (0..dim).map(|j| q.pow(j as u32)).collect();
        let images = basis.iter().map(|&e| l.eval_code(&*top, e)).collect();
        let twists = basis.iter().map(|&e| top.pow_power(e, q, t as u64)).collect();
        Ok(SpecializationKernel { q, dim, top, base, images, twists })
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.top
    }

    pub fn size(&self) -> u64 {
        self.top.order()
    }

    /// Dimension over `F_q` of the kernel of `ℓ - s₀x^{q^t}`.
    pub fn kernel_dim(&self, s0: u64) -> usize {
        self.matrix(s0).kernel_dim(&self.base)
    }

    pub fn matrix(&self, s0: u64) -> Mat {
        let cols: Vec<Vec<u64>> = self
            .images
            .iter()
            .zip(&self.twists)
            .map(|(&u, &w)| Gf::digits(self.top.sub(u, self.top.mul(s0, w)), self.q, self.dim))
            .collect();
        Mat::from_cols(&cols)
    }

    /// Kernel dimension for every `s₀`, indexed by code.
    pub fn all_dims(&self) -> Vec<usize> {
        (0..self.size()).into_par_iter().map(|s| self.kernel_dim(s)).collect()
    }
}

/// `dim ker(ℓ - s₀x^{q^t})` over `F_{q^{nm}}` for every `s₀`, indexed by code.
pub fn kernel_dims(l: &LinPoly, m: usize, t: usize) -> Result<Vec<usize>> {
    Ok(SpecializationKernel::new(l, m, t, Budget::default())?.all_dims())
}

pub fn root_count_profile(l: &LinPoly, m: usize, t: usize) -> Result<ScatterProfile> {
    root_count_profile_with(l, m, t, Budget::default())
}

pub fn root_count_profile_with(l: &LinPoly, m: usize, t: usize, budget: Budget) -> Result<ScatterProfile> {
    let kernel = SpecializationKernel::new(l, m, t, budget)?;
    let empty = || (vec![0u64; kernel.dim + 1], vec![u64::MAX; kernel.dim + 1]);
    let (counts, first) = (0..kernel.size())
        .into_par_iter()
        .fold(empty, |(mut counts, mut first), s| {
            let k = kernel.kernel_dim(s);
            counts[k] += 1;
            first[k] = first[k].min(s);
            (counts, first)
        })
        .reduce(empty, |(mut ca, mut fa), (cb, fb)| {
            ca.iter_mut().zip(cb).for_each(|(x, y)| *x += y);
            fa.iter_mut().zip(fb).for_each(|(x, y)| *x = (*x).min(y));
            (ca, fa)
        });
    let histogram: BTreeMap<usize, u64> =
        counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (k, c)).collect();
    let max_dim = *histogram.keys().next_back().unwrap();
    let witness = (max_dim > 1).then(|| first[max_dim]);
    Ok(ScatterProfile { q: l.q(), n: l.n(), m, t, histogram, max_dim, witness })
}

/// `(q, n, m, t)`-scatteredness: every `ℓ - s₀x^{q^t}` has at most `q` roots in `F_{q^{nm}}`.
pub fn is_scattered(l: &LinPoly, m: usize, t: usize) -> Result<bool> {
    is_scattered_with(l, m, t, Budget::default())
}

pub fn is_scattered_with(l: &LinPoly, m: usize, t: usize, budget: Budget) -> Result<bool> {
    let kernel = SpecializationKernel::new(l, m, t, budget)?;
    Ok(!(0..kernel.size()).into_par_iter().any(|s| kernel.kernel_dim(s) > 1))
}

/// `ℓ(x^{q^{nm-t}})` with coefficients read in `F_{q^{nm}}`; it is scattered
/// of index 0 over `F_{q^{nm}}` whenever `ℓ` is `(q, n, m, t)`-scattered.
pub fn index_shift(l: &LinPoly, m: usize, t: usize) -> Result<LinPoly> {
    let nm = l.n() * m;
    if t > nm {
        return Err(Error::IndexOutOfRange(t));
    }
    if !is_scattered(l, m, t)? {
        return Err(Error::NotScattered(format!("not (q, n, {m}, {t})-scattered")));
    }
    let target = target_layer(l, m)?;
    let shift = LinPoly::monomial(l.ctx().clone(), l.coeff_layer(), nm - t, 1)?;
    l.compose(&shift)?.lift(target)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub m: usize,
    pub scattered: bool,
    pub max_dim: usize,
    pub witness: Option<u64>,
}

/// Per-`m` scatteredness verdicts. Finite evidence only: exceptionality
/// quantifies over infinitely many `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub q: u64,
    pub n: usize,
    pub t: usize,
    pub entries: Vec<ScanEntry>,
    pub label: String,
}

pub const EVIDENCE_LABEL: &str = "evidence, not proof";

impl ScanReport {
    pub fn scattered_ms(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.scattered).map(|e| e.m).collect()
    }
}

pub fn exceptional_scan(l: &LinPoly, t: usize, m_max: usize) -> Result<ScanReport> {
    exceptional_scan_with(l, t, m_max, Budget::default())
}

/// Runs `is_scattered` for `m = 1..=m_max`, building the tower
/// `... ⊆ F_{q^n} ⊆ F_{q^{nm}}` afresh for each `m`.
pub fn exceptional_scan_with(l: &LinPoly, t: usize, m_max: usize, budget: Budget) -> Result<ScanReport> {
    let q = l.q();
    let n = l.n();
    for m in 1..=m_max {
        let fits = (q as u128).checked_pow((n * m) as u32).is_some_and(|c| c <= budget.max_specializations as u128);
        if !fits {
            return Err(Error::BudgetExceeded(format!("q^(nm) = {q}^{} exceeds the cap of {}", n * m, budget.max_specializations)));
        }
    }
    let mut entries = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let ctx = l.ctx().extend(l.coeff_layer(), m)?;
        let lm = l.rehome(ctx)?;
        let profile = root_count_profile_with(&lm, m, t, budget)?;
        entries.push(ScanEntry { m, scattered: profile.is_scattered(), max_dim: profile.max_dim, witness: profile.witness });
    }
    Ok(ScanReport { q, n, t, entries, label: EVIDENCE_LABEL.to_string() })
}
