//! Matrix groups over `F_q` acting on column vectors, with a deterministic
//! Schreier–Sims stabilizer chain on the base `e_0, …, e_{d-1}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, Gf};
use crate::linalg::Mat;
use crate::linpoly::LinPoly;

struct Level {
    base: Vec<u64>,
    gens: Vec<Mat>,
    /// Orbit point code → index into `reps`.
    index: HashMap<u64, usize>,
    reps: Vec<Mat>,
    reps_inv: Vec<Mat>,
}

/// Stabilizer chain; `G^{(k)}` fixes `e_0, …, e_{k-1}` and is generated by `levels[k].gens`.
pub struct Chain {
    q: u64,
    gf: Arc<Gf>,
    levels: Vec<Level>,
    cap: Option<u128>,
}

/// The chain gave up because the group is larger than the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapExceeded;

impl Chain {
    fn new(gf: Arc<Gf>, d: usize, cap: Option<u128>) -> Chain {
        let q = gf.order();
        let levels = (0..d)
            .map(|k| {
                let mut base = vec![0; d];
                base[k] = 1;
                let code = code_of(&base, q);
                Level {
                    base,
                    gens: Vec::new(),
                    index: HashMap::from([(code, 0)]),
                    reps: vec![Mat::identity(d)],
                    reps_inv: vec![Mat::identity(d)],
                }
            })
            .collect();
        Chain { q, gf, levels, cap }
    }

    fn bound(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.reps.len() as u128))
    }

    fn check_cap(&self) -> std::result::Result<(), CapExceeded> {
        match self.cap {
            Some(c) if self.bound() > c => Err(CapExceeded),
            _ => Ok(()),
        }
    }

    /// Sifts `g` from level `k`; `true` if it lies in `G^{(k)}`.
    fn sift(&self, k: usize, g: &Mat) -> bool {
        let mut h = g.clone();
        for level in &self.levels[k..] {
            let image = code_of(&h.mul_vec(&self.gf, &level.base), self.q);
            let Some(&i) = level.index.get(&image) else { return false };
            h = level.reps_inv[i].mul(&self.gf, &h);
        }
        h.is_identity()
    }

    fn add(&mut self, k: usize, g: Mat) -> std::result::Result<(), CapExceeded> {
        if k == self.levels.len() || self.sift(k, &g) {
            return Ok(());
        }
        self.levels[k].gens.push(g.clone());
        let gf = self.gf.clone();
        // existing points under the new generator
        let mut queue = VecDeque::new();
        let existing = self.levels[k].reps.len();
        for i in 0..existing {
            let moved = g.mul(&gf, &self.levels[k].reps[i]);
            self.visit(k, moved, &mut queue)?;
        }
        // new points under every generator
        while let Some(i) = queue.pop_front() {
            let ngens = self.levels[k].gens.len();
            for s in 0..ngens {
                let moved = self.levels[k].gens[s].mul(&gf, &self.levels[k].reps[i]);
                self.visit(k, moved, &mut queue)?;
            }
        }
        Ok(())
    }

    /// `moved = s·u_x`; records a new orbit point or sifts the Schreier generator.
    fn visit(&mut self, k: usize, moved: Mat, queue: &mut VecDeque<usize>) -> std::result::Result<(), CapExceeded> {
        let level = &self.levels[k];
        let image = code_of(&moved.mul_vec(&self.gf, &level.base), self.q);
        match level.index.get(&image) {
            Some(&j) => {
                let h = level.reps_inv[j].mul(&self.gf, &moved);
                if !h.is_identity() {
                    self.add(k + 1, h)?;
                }
            }
            None => {
                let inv = moved.inverse(&self.gf).expect("group elements are invertible");
                let level = &mut self.levels[k];
                let i = level.reps.len();
                level.index.insert(image, i);
                level.reps.push(moved);
                level.reps_inv.push(inv);
                queue.push_back(i);
                self.check_cap()?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.reps.len())).product()
    }

    pub fn contains(&self, g: &Mat) -> bool {
        self.sift(0, g)
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.reps.len()).collect()
    }
}

fn code_of(v: &[u64], q: u64) -> u64 {
    Gf::from_digits(v, q)
}

/// A subgroup of `GL_d(F_q)` given by generators.
pub struct MatrixGroup {
    d: usize,
    gf: Arc<Gf>,
    generators: Vec<Mat>,
    chain: OnceLock<Chain>,
}

impl Clone for MatrixGroup {
    fn clone(&self) -> Self {
        MatrixGroup { d: self.d, gf: self.gf.clone(), generators: self.generators.clone(), chain: OnceLock::new() }
    }
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("d", &self.d)
            .field("q", &self.gf.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl MatrixGroup {
    pub fn new(d: usize, q: u64, generators: Vec<Mat>) -> Result<MatrixGroup> {
        Self::with_field(Gf::with_order(q)?, d, generators)
    }

    pub fn with_field(gf: Arc<Gf>, d: usize, generators: Vec<Mat>) -> Result<MatrixGroup> {
        if d == 0 {
            return Err(Error::DegreeZero);
        }
        for g in &generators {
            if g.rows() != d || g.cols() != d {
                return Err(Error::BadParams(format!("generator is {}×{}, expected {d}×{d}", g.rows(), g.cols())));
            }
            if g.data().iter().any(|&x| x >= gf.order()) {
                return Err(Error::BadParams(format!("entry outside F_{}", gf.order())));
            }
            if g.det(&gf) == 0 {
                return Err(Error::Singular);
            }
        }
        Ok(MatrixGroup { d, gf, generators, chain: OnceLock::new() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.gf.order()
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.gf
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn chain(&self) -> &Chain {
        self.chain.get_or_init(|| {
            let mut chain = Chain::new(self.gf.clone(), self.d, None);
            for g in &self.generators {
                chain.add(0, g.clone()).expect("uncapped chain");
            }
            chain
        })
    }

    /// Builds the chain but stops once the order provably exceeds `cap`.
    pub fn chain_capped(&self, cap: u128) -> std::result::Result<Chain, CapExceeded> {
        let mut chain = Chain::new(self.gf.clone(), self.d, Some(cap));
        for g in &self.generators {
            chain.add(0, g.clone())?;
        }
        Ok(chain)
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Mat) -> bool {
        g.rows() == self.d && g.cols() == self.d && self.chain().contains(g)
    }

    /// Orbit of a vector under the generators.
    pub fn orbit(&self, v: &[u64]) -> HashSet<u64> {
        let q = self.q();
        let mut seen = HashSet::from([code_of(v, q)]);
        let mut queue = VecDeque::from([v.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.mul_vec(&self.gf, &x);
                if seen.insert(code_of(&y, q)) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Transitive on the `q^d - 1` nonzero vectors.
    pub fn is_transitive(&self) -> bool {
        let mut e0 = vec![0; self.d];
        e0[0] = 1;
        (self.orbit(&e0).len() as u128) == (self.q() as u128).pow(self.d as u32) - 1
    }

    /// Every element, by closure under the generators; `None` past `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Mat>> {
        let id = Mat::identity(self.d);
        let mut seen = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let h = g.mul(&self.gf, &out[i]);
                if seen.insert(h.clone()) {
                    if out.len() == limit {
                        return None;
                    }
                    out.push(h);
                }
            }
            i += 1;
        }
        Some(out)
    }
}

/// Group element order by repeated multiplication.
pub fn element_order(gf: &Gf, g: &Mat) -> u64 {
    let mut h = g.clone();
    let mut k = 1;
    while !h.is_identity() {
        h = h.mul(gf, g);
        k += 1;
    }
    k
}

/// `F_{q^d}` as layer of a tower whose base layer is `F_q`.
pub fn extension_field(q: u64, d: usize) -> Result<(Arc<FieldCtx>, usize)> {
    let (p, a) = crate::ff::prime_power(q)?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    if a == 1 {
        Ok((FieldCtx::new(p, &[d])?, 1))
    } else {
        Ok((FieldCtx::new(p, &[a, d])?.with_base_layer(1)?, 2))
    }
}

/// Matrix over `F_q` of multiplication by `c` on `F_{q^d}` (basis `e_j` = code `q^j`).
pub fn multiplication_matrix(ctx: &Arc<FieldCtx>, layer: usize, c: u64) -> Result<Mat> {
    LinPoly::monomial(ctx.clone(), layer, 0, c)?.linear_map_matrix(layer)
}

/// Matrix of `u ↦ u^{q^k}` on `F_{q^d}`.
pub fn frobenius_matrix(ctx: &Arc<FieldCtx>, layer: usize, k: usize) -> Result<Mat> {
    LinPoly::monomial(ctx.clone(), layer, k, 1)?.linear_map_matrix(layer)
}

/// Multiplication by the least primitive element of `F_{q^d}`.
pub fn singer_cycle(d: usize, q: u64) -> Result<Mat> {
    let (ctx, layer) = extension_field(q, d)?;
    multiplication_matrix(&ctx, layer, ctx.gf(layer)?.generator())
}

/// `ΓL_1(F_{q^d})` generated by a Singer cycle and the `q`-Frobenius.
pub fn singer_gammal1(d: usize, q: u64) -> Result<MatrixGroup> {
    let (ctx, layer) = extension_field(q, d)?;
    let g = multiplication_matrix(&ctx, layer, ctx.gf(layer)?.generator())?;
    let phi = frobenius_matrix(&ctx, layer, 1)?;
    MatrixGroup::new(d, q, vec![g, phi])
}

/// `I + E_{ij}`.
pub fn transvection(d: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::identity(d);
    m.set(i, j, 1);
    m
}

/// Generators of `SL_d(F_q)`: the root elements `I + θ^k E_{ij}` for an
/// `F_p`-basis `θ^k` (codes `p^k`) of `F_q`.
pub fn sl_generators(d: usize, q: u64) -> Result<Vec<Mat>> {
    let gf = Gf::with_order(q)?;
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                for k in 0..gf.degree() {
                    let mut m = Mat::identity(d);
                    m.set(i, j, gf.p().pow(k as u32));
                    gens.push(m);
                }
            }
        }
    }
    Ok(gens)
}

/// Generators of `GL_d(F_q)`: those of `SL_d` and `diag(a, 1, …, 1)`.
pub fn gl_generators(d: usize, q: u64) -> Result<Vec<Mat>> {
    let gf = Gf::with_order(q)?;
    let mut gens = sl_generators(d, q)?;
    let mut diag = vec![1; d];
    diag[0] = gf.generator();
    gens.push(Mat::diag(&diag));
    Ok(gens)
}
