//! Factor-degree patterns of `ℓ/x - s₀x^{q^t-1}` over `F_{q^{nm}}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{poly, FieldElement, FiniteField, Gf};
use crate::linpoly::LinPoly;
use crate::scatter::{self, is_t_normalized, SpecializationKernel};

/// Degrees of the distinct irreducible factors of `ℓ/x - s₀x^{q^t-1}`,
/// i.e. the Frobenius orbit lengths on the nonzero roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitType {
    pub s0: FieldElement,
    pub degrees: Vec<usize>,
    /// The specialized polynomial has a repeated factor.
    pub ramified: bool,
    /// Its degree is below `q^d - 1` (only `s₀ = 0` with `t > r`).
    pub degenerate: bool,
}

impl OrbitType {
    pub fn fixed_nonzero(&self) -> usize {
        self.degrees.iter().filter(|&&k| k == 1).count()
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }
}

/// Shared data for specializing one `(ℓ, t, m)`.
struct Family {
    field: std::sync::Arc<Gf>,
    target: usize,
    /// Dense `ℓ/x`.
    quotient: Vec<u64>,
    t_exp: usize,
    full_degree: usize,
}

impl Family {
    fn new(l: &LinPoly, t: usize, m: usize) -> Result<Family> {
        if !is_t_normalized(l, t) {
            return Err(Error::NotNormalized(format!("ℓ is not {t}-normalized")));
        }
        let target = scatter::target_layer(l, m)?;
        let field = l.ctx().gf(target)?;
        let q = l.q() as usize;
        let r = l.lin_degree()?;
        let mut quotient = vec![0u64; q.pow(r as u32)];
        for (i, &a) in l.coeffs().iter().enumerate() {
            quotient[q.pow(i as u32) - 1] = a;
        }
        let t_exp = q.pow(t as u32) - 1;
        let full_degree = q.pow(r.max(t) as u32) - 1;
        Ok(Family { field, target, quotient, t_exp, full_degree })
    }

    fn specialize(&self, s0: u64) -> Vec<u64> {
        let mut f = self.quotient.clone();
        if f.len() <= self.t_exp {
            f.resize(self.t_exp + 1, 0);
        }
        f[self.t_exp] = self.field.sub(f[self.t_exp], s0);
        poly::trim(f)
    }

    fn orbit_type(&self, s0: u64) -> OrbitType {
        let gf = &*self.field;
        let f = self.specialize(s0);
        let deg = poly::degree(&f).unwrap_or(0);
        let ramified = deg > 0 && poly::degree(&poly::gcd(gf, &f, &poly::derivative(gf, &f))) != Some(0);
        OrbitType {
            s0: FieldElement { layer: self.target, code: s0 },
            degrees: distinct_degrees(gf, &f),
            ramified,
            degenerate: deg < self.full_degree,
        }
    }
}

/// Rows `x^{iQ} mod f`, so that `h ↦ h^Q` is a matrix-vector product.
fn frobenius_rows(gf: &Gf, f: &[u64]) -> Vec<Vec<u64>> {
    let d = poly::degree(f).unwrap();
    let xq = poly::powmod(gf, &[0, 1], gf.size(), f);
    let mut rows = Vec::with_capacity(d);
    rows.push(vec![1]);
    for i in 1..d {
        rows.push(poly::mulmod(gf, &rows[i - 1], &xq, f));
    }
    rows
}

fn apply_frobenius(gf: &Gf, rows: &[Vec<u64>], h: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; rows.len()];
    for (&c, row) in h.iter().zip(rows) {
        if c != 0 {
            for (o, &r) in out.iter_mut().zip(row) {
                *o = gf.add(*o, gf.mul(c, r));
            }
        }
    }
    poly::trim(out)
}

/// Sorted degrees of the distinct monic irreducible factors of `f`.
pub fn distinct_degrees(gf: &Gf, f: &[u64]) -> Vec<usize> {
    let Some(d) = poly::degree(f) else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let f = poly::monic(gf, f);
    let rows = frobenius_rows(gf, &f);
    let x = poly::rem(gf, &[0, 1], &f);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut k = 1;
    while poly::degree(&rest).unwrap() >= 2 * k {
        h = apply_frobenius(gf, &rows, &h);
        let g = poly::gcd(gf, &poly::sub(gf, &h, &x), &rest);
        let dg = poly::degree(&g).unwrap();
        if dg > 0 {
            degrees.extend(std::iter::repeat_n(k, dg / k));
            loop {
                let c = poly::gcd(gf, &rest, &g);
                if poly::degree(&c) == Some(0) {
                    break;
                }
                rest = poly::divrem(gf, &rest, &c).0;
            }
        }
        k += 1;
    }
    let dr = poly::degree(&rest).unwrap();
    if dr > 0 {
        degrees.push(dr);
    }
    degrees.sort_unstable();
    degrees
}

pub fn orbit_type(l: &LinPoly, t: usize, m: usize, s0: FieldElement) -> Result<OrbitType> {
    let family = Family::new(l, t, m)?;
    if s0.layer > family.target {
        return Err(Error::LayerMismatch(format!("s₀ lies in layer {}, above F_(q^nm)", s0.layer)));
    }
    let s0 = l.ctx().embed(s0, family.target)?;
    Ok(family.orbit_type(s0.code))
}

/// Orbit types for every `s₀ ∈ F_{q^{nm}}`, indexed by code.
pub fn all_orbit_types(l: &LinPoly, t: usize, m: usize) -> Result<Vec<OrbitType>> {
    let family = Family::new(l, t, m)?;
    Ok((0..family.field.order()).into_par_iter().map(|s| family.orbit_type(s)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceEntry {
    pub s0: u64,
    pub kernel_dim: usize,
    pub fixed_nonzero: usize,
    pub ramified: bool,
    pub degenerate: bool,
    /// `fixed_nonzero + 1 = q^kernel_dim`, hence `fixed_nonzero ≤ q - 1 ⇔ kernel_dim ≤ 1`.
    pub consistent: bool,
}

/// Place-level comparison of the Frobenius fixed-point count with the root count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub entries: Vec<EquivalenceEntry>,
    /// Every unramified entry is consistent.
    pub consistent: bool,
    /// Every unramified entry has at most `q - 1` fixed nonzero roots.
    pub orbit_criterion: bool,
    /// `is_scattered`, when every specialization was examined.
    pub scattered: Option<bool>,
    /// `orbit_criterion == scattered`, when every specialization was examined.
    pub agrees: Option<bool>,
}

pub fn verify_equivalence(l: &LinPoly, t: usize, m: usize) -> Result<EquivalenceReport> {
    let size = l.ctx().cardinality(scatter::target_layer(l, m)?) as u64;
    let all: Vec<u64> = (0..size).collect();
    let mut report = verify_equivalence_at(l, t, m, &all)?;
    let scattered = scatter::is_scattered(l, m, t)?;
    report.scattered = Some(scattered);
    report.agrees = Some(report.orbit_criterion == scattered);
    Ok(report)
}

/// The comparison restricted to the listed specializations (codes in `F_{q^{nm}}`).
pub fn verify_equivalence_at(l: &LinPoly, t: usize, m: usize, specializations: &[u64]) -> Result<EquivalenceReport> {
    let family = Family::new(l, t, m)?;
    let kernel = SpecializationKernel::new(l, m, t, scatter::Budget { max_specializations: u64::MAX })?;
    let q = l.q();
    if let Some(&bad) = specializations.iter().find(|&&s| s >= family.field.order()) {
        return Err(Error::IndexOutOfRange(bad as usize));
    }
    let entries: Vec<EquivalenceEntry> = specializations
        .par_iter()
        .map(|&s| {
            let orbit = family.orbit_type(s);
            let kernel_dim = kernel.kernel_dim(s);
            let fixed = orbit.fixed_nonzero();
            EquivalenceEntry {
                s0: s,
                kernel_dim,
                fixed_nonzero: fixed,
                ramified: orbit.ramified,
                degenerate: orbit.degenerate,
                consistent: fixed as u128 + 1 == (q as u128).pow(kernel_dim as u32),
            }
        })
        .collect();
    let unramified = || entries.iter().filter(|e| !e.ramified);
    let consistent = unramified().all(|e| e.consistent);
    let orbit_criterion = unramified().all(|e| (e.fixed_nonzero as u64) < q);
    Ok(EquivalenceReport { q, n: l.n(), m, t, entries, consistent, orbit_criterion, scattered: None, agrees: None })
}
