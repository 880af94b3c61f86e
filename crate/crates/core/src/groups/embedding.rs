//! Exhaustive search for `SL_2(F_13)` inside `GL_3(F_9)`.
//!
//! An embedded copy contains the image `A` of an order-13 element and the
//! image `B` of an element of order 4 squaring to the central involution;
//! `SL_2(F_13)` is generated by such a pair. Up to conjugation `A` is one of
//! four Singer powers, and `B² = -I` is forced, so it suffices to test every
//! pair `(A, B)` for generating a group of order 2184.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix_group::{element_order, extension_field, multiplication_matrix, MatrixGroup};
use crate::error::{Error, Result};
use crate::ff::{FiniteField, Gf};
use crate::linalg::Mat;

/// `|SL_2(F_13)|`.
pub const TARGET_ORDER: u128 = 2184;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingVerdict {
    NoEmbedding,
    EmbeddingFound,
}

/// Invariants of a group of order 2184 compared with `SL_2(F_13)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitCheck {
    pub a: Mat,
    pub b: Mat,
    pub order: u64,
    pub involutions: usize,
    pub sylow13: usize,
    pub perfect: bool,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub d: usize,
    pub q: u64,
    /// `13 ∤ |GL_1(F_9)|`, `13 ∤ |GL_2(F_9)|`: an embedded copy acts irreducibly.
    pub gl1_order: u64,
    pub gl2_order: u64,
    pub representatives: usize,
    /// Characteristic polynomials of the representatives, pairwise distinct.
    pub representative_char_polys: Vec<Vec<u64>>,
    pub candidates: usize,
    pub scalar_candidates: usize,
    pub pairs_searched: u64,
    /// Pairs whose chain exceeded 2184 before completing.
    pub over_cap: u64,
    pub below_target: u64,
    pub hits: Vec<HitCheck>,
    pub verdict: EmbeddingVerdict,
    pub elapsed_ms: u128,
}

/// Order-13 class representatives of `GL_3(F_9)`: `h^k`, `h = g^56` for a
/// Singer cycle `g`, `k` running over the cosets of `⟨9⟩ = {1, 3, 9}` in `(Z/13)^*`.
pub fn order13_representatives() -> Result<(Arc<Gf>, Vec<Mat>)> {
    let (ctx, layer) = extension_field(9, 3)?;
    let big = ctx.gf(layer)?;
    let g = big.generator();
    let gf = Gf::with_order(9)?;
    let reps = [1u64, 2, 4, 8]
        .iter()
        .map(|&k| multiplication_matrix(&ctx, layer, big.pow(g, (56 * k) as u128)))
        .collect::<Result<Vec<_>>>()?;
    Ok((gf, reps))
}

fn sqrt_minus_one(gf: &Gf) -> Result<u64> {
    let m1 = gf.neg(1);
    (0..gf.order())
        .find(|&x| gf.mul(x, x) == m1)
        .ok_or_else(|| Error::BadParams(format!("-1 is not a square in F_{}", gf.order())))
}

/// Reduced row echelon bases of all `k`-dimensional subspaces of `F_q^d`,
/// each with the pivot columns.
fn subspaces(q: u64, d: usize, k: usize) -> Vec<(Vec<Vec<u64>>, Vec<usize>)> {
    let mut out = Vec::new();
    for pivots in combinations(d, k) {
        // free positions: row r, column c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((pivots[r] + 1)..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let count = q.pow(free.len() as u32);
        for code in 0..count {
            let mut rows = vec![vec![0u64; d]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), v) in free.iter().zip(Gf::digits(code, q, free.len())) {
                rows[r][c] = v;
            }
            out.push((rows, pivots.clone()));
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Every `B ∈ GL_d(F_q)` with `B² = -I`, for `q ≡ 1 mod 4`: `B` is
/// diagonalizable with eigenvalues `±i`, so it is determined by its
/// `i`-eigenspace `U` and a complement `W`, written as the graph of a map
/// from the non-pivot coordinates into `U`.
pub fn involution_candidates(gf: &Gf, d: usize) -> Result<Vec<Mat>> {
    let q = gf.order();
    let i = sqrt_minus_one(gf)?;
    let mi = gf.neg(i);
    let mut out = Vec::new();
    for k in 0..=d {
        let eig: Vec<u64> = (0..d).map(|j| if j < k { i } else { mi }).collect();
        let diag = Mat::diag(&eig);
        for (u, pivots) in subspaces(q, d, k) {
            let others: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
            let maps = q.pow((k * others.len()) as u32);
            for code in 0..maps {
                let phi = Gf::digits(code, q, k * others.len());
                let mut cols: Vec<Vec<u64>> = u.clone();
                for (j, &c) in others.iter().enumerate() {
                    let mut w = vec![0u64; d];
                    w[c] = 1;
                    for (l, row) in u.iter().enumerate() {
                        let f = phi[j * k + l];
                        for (x, &y) in w.iter_mut().zip(row) {
                            *x = gf.add(*x, gf.mul(f, y));
                        }
                    }
                    cols.push(w);
                }
                let m = Mat::from_cols(&cols);
                let minv = m.inverse(gf).expect("U and W are complementary");
                out.push(m.mul(gf, &diag).mul(gf, &minv));
            }
        }
    }
    Ok(out)
}

/// Compares a group of order 2184 with `SL_2(F_13)`: one involution,
/// fourteen Sylow 13-subgroups, trivial abelianization.
fn check_hit(group: &MatrixGroup) -> HitCheck {
    let gf = group.field().clone();
    let elements = group.elements(TARGET_ORDER as usize + 1).expect("order was certified");
    let orders: Vec<u64> = elements.iter().map(|g| element_order(&gf, g)).collect();
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let sylow13 = orders.iter().filter(|&&o| o == 13).count() / 12;
    let gens = group.generators();
    let comm = {
        let (a, b) = (&gens[0], &gens[1]);
        let (ai, bi) = (a.inverse(&gf).unwrap(), b.inverse(&gf).unwrap());
        a.mul(&gf, b).mul(&gf, &ai).mul(&gf, &bi)
    };
    let conjugates: Vec<Mat> =
        elements.iter().map(|g| g.mul(&gf, &comm).mul(&gf, &g.inverse(&gf).unwrap())).collect();
    let derived = MatrixGroup::with_field(gf.clone(), group.d(), conjugates).unwrap();
    let perfect = derived.order() == num_bigint::BigUint::from(TARGET_ORDER as u64);
    let order = elements.len() as u64;
    HitCheck {
        a: gens[0].clone(),
        b: gens[1].clone(),
        order,
        involutions,
        sylow13,
        perfect,
        matches: order == TARGET_ORDER as u64 && involutions == 1 && sylow13 == 14 && perfect,
    }
}

struct SearchOutcome {
    searched: u64,
    over_cap: u64,
    below: u64,
    hits: Vec<HitCheck>,
}

fn search(gf: &Arc<Gf>, d: usize, reps: &[Mat], candidates: &[Mat], deadline: Option<Instant>) -> Result<SearchOutcome> {
    let searched = AtomicU64::new(0);
    let over = AtomicU64::new(0);
    let below = AtomicU64::new(0);
    let timed_out = AtomicBool::new(false);
    let hits = Mutex::new(Vec::new());
    let pairs: Vec<(usize, usize)> = (0..reps.len()).flat_map(|a| (0..candidates.len()).map(move |b| (a, b))).collect();
    pairs.par_iter().for_each(|&(a, b)| {
        if timed_out.load(Ordering::Relaxed) {
            return;
        }
        if deadline.is_some_and(|t| Instant::now() > t) {
            timed_out.store(true, Ordering::Relaxed);
            return;
        }
        let group = MatrixGroup::with_field(gf.clone(), d, vec![reps[a].clone(), candidates[b].clone()]).unwrap();
        match group.chain_capped(TARGET_ORDER) {
            Err(_) => {
                over.fetch_add(1, Ordering::Relaxed);
            }
            Ok(chain) => {
                if chain.order() == num_bigint::BigUint::from(TARGET_ORDER) {
                    hits.lock().unwrap().push(check_hit(&group));
                } else {
                    below.fetch_add(1, Ordering::Relaxed);
                }
            }
        }
        searched.fetch_add(1, Ordering::Relaxed);
    });
    let searched = searched.into_inner();
    if timed_out.into_inner() || searched != pairs.len() as u64 {
        return Err(Error::SearchIncomplete(format!("{searched} of {} pairs searched", pairs.len())));
    }
    let mut hits = hits.into_inner().unwrap();
    hits.sort_by(|x, y| (x.a.data(), x.b.data()).cmp(&(y.a.data(), y.b.data())));
    Ok(SearchOutcome { searched, over_cap: over.into_inner(), below: below.into_inner(), hits })
}

fn certificate(gf: &Arc<Gf>, d: usize, reps: &[Mat], candidates: &[Mat], deadline: Option<Duration>) -> Result<EmbeddingCertificate> {
    let start = Instant::now();
    let outcome = search(gf, d, reps, candidates, deadline.map(|t| start + t))?;
    let q = gf.order();
    let scalar_candidates = candidates.iter().filter(|m| is_scalar(m)).count();
    let verdict = if outcome.hits.iter().any(|h| h.matches) {
        EmbeddingVerdict::EmbeddingFound
    } else {
        EmbeddingVerdict::NoEmbedding
    };
    Ok(EmbeddingCertificate {
        d,
        q,
        gl1_order: q - 1,
        gl2_order: (q * q - 1) * (q * q - q),
        representatives: reps.len(),
        representative_char_polys: reps.iter().map(|m| m.char_poly(gf)).collect(),
        candidates: candidates.len(),
        scalar_candidates,
        pairs_searched: outcome.searched,
        over_cap: outcome.over_cap,
        below_target: outcome.below,
        hits: outcome.hits,
        verdict,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn is_scalar(m: &Mat) -> bool {
    let c = m.get(0, 0);
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j) == if i == j { c } else { 0 }))
}

/// The full search in `GL_3(F_9)`, optionally bounded in wall-clock time.
pub fn no_embedding_sl2_13_in_gl3_9(deadline: Option<Duration>) -> Result<EmbeddingCertificate> {
    let (gf, reps) = order13_representatives()?;
    let candidates = involution_candidates(&gf, 3)?;
    certificate(&gf, 3, &reps, &candidates, deadline)
}

/// The same search in `GL_2(F_13)`, where `SL_2(F_13)` is present: the unipotent
/// `[[1,1],[0,1]]` (one class of order-13 elements) against every `B² = -I`.
pub fn positive_control_gl2_13() -> Result<EmbeddingCertificate> {
    let gf = Gf::with_order(13)?;
    let t = Mat::from_rows(vec![vec![1, 1], vec![0, 1]]);
    let candidates = involution_candidates(&gf, 2)?;
    certificate(&gf, 2, &[t], &candidates, None)
}
