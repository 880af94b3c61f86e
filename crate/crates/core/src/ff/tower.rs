use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{add_digits, neg_digits, poly, FiniteField, Gf, TABLE_CAP};
use crate::error::{Error, Result};

/// A tower `F_p = L_0 ⊆ L_1 ⊆ ... ⊆ L_k` where `L_i = L_{i-1}[θ_i]/(f_i)`.
///
/// One layer is designated as the base field `F_q`; [`FieldCtx::frobenius`]
/// is the `q`-power map. Immutable after construction; share it by `Arc`.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    degrees: Vec<usize>,
    moduli: Vec<Vec<u64>>,
    base_layer: usize,
    flat_deg: Vec<usize>,
    sizes: Vec<u128>,
    tables: Vec<OnceLock<Arc<Gf>>>,
}

/// An element of one layer of a [`FieldCtx`]: a value type holding the layer
/// index and the packed coordinate code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    pub layer: usize,
    pub code: u64,
}

/// Serialized form of a tower. `moduli[i]` is the modulus of layer `i + 1`,
/// a list of `degrees[i] + 1` elements of layer `i` (low degree first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub degrees: Vec<usize>,
    pub moduli: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub base_layer: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

/// Borrowed view of one layer, doing arithmetic on codes.
#[derive(Clone, Copy)]
pub struct Layer<'a> {
    ctx: &'a FieldCtx,
    index: usize,
}

impl FieldCtx {
    /// Builds the tower with the lexicographically least monic irreducible
    /// modulus at each layer. Coefficient vectors `(c_0, ..., c_{k-1})` are
    /// compared starting from `c_0`.
    pub fn new(p: u64, degrees: &[usize]) -> Result<Arc<FieldCtx>> {
        Self::validate(p, degrees)?;
        let mut ctx = Self::skeleton(p, degrees);
        for i in 1..=degrees.len() {
            let m = ctx.least_irreducible(i - 1, degrees[i - 1]);
            ctx.moduli.push(m);
        }
        Ok(Arc::new(ctx))
    }

    /// Builds a tower from explicit moduli, checking each is monic irreducible.
    pub fn with_moduli(p: u64, degrees: &[usize], moduli: Vec<Vec<u64>>) -> Result<Arc<FieldCtx>> {
        Self::validate(p, degrees)?;
        if moduli.len() != degrees.len() {
            return Err(Error::InvalidDescriptor("one modulus per layer required".into()));
        }
        let mut ctx = Self::skeleton(p, degrees);
        for (i, m) in moduli.into_iter().enumerate() {
            let below = ctx.layer(i);
            if m.len() != degrees[i] + 1 || *m.last().unwrap() != 1 {
                return Err(Error::InvalidDescriptor(format!("modulus {} is not monic of degree {}", i + 1, degrees[i])));
            }
            if m.iter().any(|&c| c as u128 >= below.size()) {
                return Err(Error::InvalidDescriptor(format!("modulus {} has out-of-range coefficients", i + 1)));
            }
            if !poly::is_irreducible(&below, &m) {
                return Err(Error::InvalidDescriptor(format!("modulus {} is reducible", i + 1)));
            }
            ctx.moduli.push(m);
        }
        Ok(Arc::new(ctx))
    }

    fn validate(p: u64, degrees: &[usize]) -> Result<()> {
        if p < 2 || !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::NonPrime(p));
        }
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::DegreeZero);
        }
        let total: usize = degrees.iter().product();
        let fits = (p as u128)
            .checked_pow(total as u32)
            .map(|c| c <= 1u128 << 64)
            .unwrap_or(false);
        if total > 64 || !fits {
            return Err(Error::FieldTooLarge(p, total));
        }
        Ok(())
    }

    fn skeleton(p: u64, degrees: &[usize]) -> FieldCtx {
        let mut flat_deg = vec![1usize];
        for &d in degrees {
            flat_deg.push(flat_deg.last().unwrap() * d);
        }
        let sizes = flat_deg.iter().map(|&n| (p as u128).pow(n as u32)).collect();
        FieldCtx {
            p,
            degrees: degrees.to_vec(),
            moduli: Vec::new(),
            base_layer: 0,
            flat_deg,
            sizes,
            tables: (0..=degrees.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    fn least_irreducible(&self, below: usize, k: usize) -> Vec<u64> {
        if k == 1 {
            return vec![0, 1];
        }
        if self.sizes[below] <= TABLE_CAP as u128 {
            let gf = self.gf(below).expect("size checked");
            return least_irreducible_over(&*gf, k);
        }
        least_irreducible_over(&self.layer(below), k)
    }

    /// Same tower with a different designated base layer.
    pub fn with_base_layer(&self, base: usize) -> Result<Arc<FieldCtx>> {
        if base > self.top() {
            return Err(Error::LayerMismatch(format!("no layer {base}")));
        }
        let ctx = FieldCtx {
            p: self.p,
            degrees: self.degrees.clone(),
            moduli: self.moduli.clone(),
            base_layer: base,
            flat_deg: self.flat_deg.clone(),
            sizes: self.sizes.clone(),
            tables: self.tables.clone(),
        };
        Ok(Arc::new(ctx))
    }

    /// The first `upto` layers of this tower followed by one new layer of
    /// degree `extra`. Elements of the shared layers keep their codes.
    pub fn extend(&self, upto: usize, extra: usize) -> Result<Arc<FieldCtx>> {
        if upto > self.top() {
            return Err(Error::LayerMismatch(format!("no layer {upto}")));
        }
        let mut degrees = self.degrees[..upto].to_vec();
        degrees.push(extra);
        Self::validate(self.p, &degrees)?;
        let mut ctx = Self::skeleton(self.p, &degrees);
        ctx.moduli = self.moduli[..upto].to_vec();
        for i in 0..=upto {
            if let Some(t) = self.tables[i].get() {
                let _ = ctx.tables[i].set(t.clone());
            }
        }
        let m = ctx.least_irreducible(upto, extra);
        ctx.moduli.push(m);
        ctx.base_layer = self.base_layer.min(upto);
        Ok(Arc::new(ctx))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Modulus of layer `i >= 1` as codes of layer `i - 1`.
    pub fn modulus(&self, i: usize) -> &[u64] {
        &self.moduli[i - 1]
    }

    pub fn top(&self) -> usize {
        self.degrees.len()
    }

    pub fn base_layer(&self) -> usize {
        self.base_layer
    }

    /// Cardinality of the base layer, the `q` of the Frobenius `u ↦ u^q`.
    pub fn q(&self) -> u64 {
        self.sizes[self.base_layer] as u64
    }

    /// Degree of layer `i` over `F_p`.
    pub fn flat_degree(&self, i: usize) -> usize {
        self.flat_deg[i]
    }

    /// Cardinality of layer `i`.
    pub fn cardinality(&self, i: usize) -> u128 {
        self.sizes[i]
    }

    /// Degree of layer `i` over the base layer, if the base lies below it.
    pub fn degree_over_base(&self, i: usize) -> Option<usize> {
        if i < self.base_layer {
            return None;
        }
        Some(self.flat_deg[i] / self.flat_deg[self.base_layer])
    }

    /// Lowest layer whose degree over the base is exactly `n`, at or above `from`.
    pub fn layer_with_degree(&self, n: usize, from: usize) -> Option<usize> {
        (from.max(self.base_layer)..=self.top()).find(|&i| self.degree_over_base(i) == Some(n))
    }

    pub fn layer(&self, i: usize) -> Layer<'_> {
        assert!(i <= self.top(), "layer {i} out of range");
        Layer { ctx: self, index: i }
    }

    /// Log/antilog tables for layer `i`, built once on first use.
    pub fn gf(&self, i: usize) -> Result<Arc<Gf>> {
        if i > self.top() {
            return Err(Error::LayerMismatch(format!("no layer {i}")));
        }
        if let Some(t) = self.tables[i].get() {
            return Ok(t.clone());
        }
        let built = Arc::new(Gf::build(&self.layer(i))?);
        Ok(self.tables[i].get_or_init(|| built).clone())
    }

    fn check(&self, x: FieldElement) -> Result<()> {
        if x.layer > self.top() {
            return Err(Error::LayerMismatch(format!("no layer {}", x.layer)));
        }
        if x.code as u128 >= self.sizes[x.layer] {
            return Err(Error::LayerMismatch(format!("code {} outside layer {}", x.code, x.layer)));
        }
        Ok(())
    }

    pub fn element(&self, layer: usize, code: u64) -> Result<FieldElement> {
        let x = FieldElement { layer, code };
        self.check(x)?;
        Ok(x)
    }

    pub fn zero(&self, layer: usize) -> FieldElement {
        FieldElement { layer, code: 0 }
    }

    pub fn one(&self, layer: usize) -> FieldElement {
        FieldElement { layer, code: 1 }
    }

    /// The adjoined root `θ_i` of layer `i >= 1`.
    pub fn theta(&self, i: usize) -> FieldElement {
        FieldElement { layer: i, code: self.sizes[i - 1] as u64 }
    }

    /// All elements of layer `i` in code order.
    pub fn elements(&self, i: usize) -> impl Iterator<Item = FieldElement> {
        (0..self.sizes[i] as u64).map(move |code| FieldElement { layer: i, code })
    }

    /// Image of `x` in layer `j >= x.layer`. The code is unchanged.
    pub fn embed(&self, x: FieldElement, j: usize) -> Result<FieldElement> {
        self.check(x)?;
        if j < x.layer || j > self.top() {
            return Err(Error::LayerMismatch(format!("cannot embed layer {} into {}", x.layer, j)));
        }
        Ok(FieldElement { layer: j, code: x.code })
    }

    fn binary(&self, a: FieldElement, b: FieldElement) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        if a.layer != b.layer {
            return Err(Error::LayerMismatch(format!("layers {} and {}", a.layer, b.layer)));
        }
        Ok(a.layer)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let i = self.binary(a, b)?;
        Ok(FieldElement { layer: i, code: self.layer(i).add(a.code, b.code) })
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let i = self.binary(a, b)?;
        Ok(FieldElement { layer: i, code: self.layer(i).sub(a.code, b.code) })
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let i = self.binary(a, b)?;
        Ok(FieldElement { layer: i, code: self.layer(i).mul(a.code, b.code) })
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(FieldElement { layer: a.layer, code: self.layer(a.layer).neg(a.code) })
    }

    pub fn inv(&self, a: FieldElement) -> Result<Option<FieldElement>> {
        self.check(a)?;
        Ok(self.layer(a.layer).inv(a.code).map(|code| FieldElement { layer: a.layer, code }))
    }

    pub fn pow(&self, a: FieldElement, e: u128) -> Result<FieldElement> {
        self.check(a)?;
        Ok(FieldElement { layer: a.layer, code: self.layer(a.layer).pow(a.code, e) })
    }

    /// `x^(q^k)` for the base cardinality `q`.
    pub fn frobenius(&self, x: FieldElement, k: u64) -> Result<FieldElement> {
        self.check(x)?;
        let layer = self.layer(x.layer);
        let code = layer.pow_q(x.code, self.q(), k);
        Ok(FieldElement { layer: x.layer, code })
    }

    /// Coordinates of `x` over layer `x.layer - 1`, as codes.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        if x.layer == 0 {
            return vec![x.code];
        }
        split(x.code, self.sizes[x.layer - 1], self.degrees[x.layer - 1])
    }

    /// Nested-array JSON of an element (layer-0 elements are plain integers).
    pub fn element_to_json(&self, x: FieldElement) -> Value {
        self.code_to_json(x.layer, x.code)
    }

    fn code_to_json(&self, layer: usize, code: u64) -> Value {
        if layer == 0 {
            return Value::from(code);
        }
        let parts = split(code, self.sizes[layer - 1], self.degrees[layer - 1]);
        Value::Array(parts.into_iter().map(|c| self.code_to_json(layer - 1, c)).collect())
    }

    pub fn element_from_json(&self, layer: usize, v: &Value) -> Result<FieldElement> {
        let code = self.code_from_json(layer, v)?;
        self.element(layer, code)
    }

    fn code_from_json(&self, layer: usize, v: &Value) -> Result<u64> {
        if layer == 0 {
            return match v.as_u64() {
                Some(c) if c < self.p => Ok(c),
                _ => Err(Error::InvalidDescriptor(format!("expected an integer below {}, got {v}", self.p))),
            };
        }
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidDescriptor(format!("expected an array for a layer-{layer} element, got {v}")))?;
        let k = self.degrees[layer - 1];
        if arr.len() != k {
            return Err(Error::InvalidDescriptor(format!("layer-{layer} element needs {k} coefficients")));
        }
        let below = self.sizes[layer - 1];
        let mut code: u128 = 0;
        for c in arr.iter().rev() {
            code = code * below + self.code_from_json(layer - 1, c)? as u128;
        }
        Ok(code as u64)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        let moduli = self
            .moduli
            .iter()
            .enumerate()
            .map(|(i, m)| m.iter().map(|&c| self.code_to_json(i, c)).collect())
            .collect();
        FieldDescriptor { p: self.p, degrees: self.degrees.clone(), moduli, base_layer: self.base_layer }
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Arc<FieldCtx>> {
        Self::validate(d.p, &d.degrees)?;
        let sk = Self::skeleton(d.p, &d.degrees);
        if d.moduli.len() != d.degrees.len() {
            return Err(Error::InvalidDescriptor("one modulus per layer required".into()));
        }
        let mut moduli = Vec::new();
        for (i, m) in d.moduli.iter().enumerate() {
            moduli.push(m.iter().map(|c| sk.code_from_json(i, c)).collect::<Result<Vec<_>>>()?);
        }
        let ctx = Self::with_moduli(d.p, &d.degrees, moduli)?;
        if d.base_layer == 0 {
            Ok(ctx)
        } else {
            ctx.with_base_layer(d.base_layer)
        }
    }

    /// True when both towers have identical primes, degrees and moduli on the
    /// first `layers + 1` layers, so their codes agree there.
    pub fn shares_prefix(&self, other: &FieldCtx, layers: usize) -> bool {
        self.p == other.p
            && layers <= self.top()
            && layers <= other.top()
            && self.degrees[..layers] == other.degrees[..layers]
            && self.moduli[..layers] == other.moduli[..layers]
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degrees == other.degrees && self.moduli == other.moduli && self.base_layer == other.base_layer
    }
}

impl Eq for FieldCtx {}

fn split(code: u64, below: u128, k: usize) -> Vec<u64> {
    let mut c = code as u128;
    (0..k)
        .map(|_| {
            let d = c % below;
            c /= below;
            d as u64
        })
        .collect()
}

fn join(parts: &[u64], below: u128) -> u64 {
    parts.iter().rev().fold(0u128, |acc, &c| acc * below + c as u128) as u64
}

fn least_irreducible_over<F: FiniteField>(field: &F, k: usize) -> Vec<u64> {
    let s = field.size();
    let count = s.pow(k as u32);
    // index = c_0 s^{k-1} + c_1 s^{k-2} + ... + c_{k-1}; c_0 varies slowest
    let mut idx: u128 = s.pow(k as u32 - 1); // c_0 = 0 is reducible for k >= 2
    while idx < count {
        let mut m = vec![0u64; k + 1];
        let mut r = idx;
        for j in (0..k).rev() {
            m[j] = (r % s) as u64;
            r /= s;
        }
        m[k] = 1;
        if poly::is_irreducible(field, &m) {
            return m;
        }
        idx += 1;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl<'a> Layer<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn flat_degree(&self) -> usize {
        self.ctx.flat_deg[self.index]
    }

    /// `x^(q^k)` with the exponent reduced modulo the group order.
    pub fn pow_q(&self, x: u64, q: u64, k: u64) -> u64 {
        if x == 0 {
            return 0;
        }
        let n = self.size() - 1;
        let e = super::pow_mod(q as u128, k as u128, n);
        // e = 0 means the exponent is a multiple of the group order
        self.pow(x, if e == 0 { n } else { e })
    }

    fn table(&self) -> Option<&Arc<Gf>> {
        self.ctx.tables[self.index].get()
    }
}

impl FiniteField for Layer<'_> {
    fn characteristic(&self) -> u64 {
        self.ctx.p
    }

    fn size(&self) -> u128 {
        self.ctx.sizes[self.index]
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = self.table() {
            return t.add(a, b);
        }
        add_digits(self.ctx.p, a, b)
    }

    fn neg(&self, a: u64) -> u64 {
        neg_digits(self.ctx.p, a)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = self.table() {
            return t.mul(a, b);
        }
        let i = self.index;
        if i == 0 {
            return ((a as u128 * b as u128) % self.ctx.p as u128) as u64;
        }
        let below = self.ctx.layer(i - 1);
        let s = self.ctx.sizes[i - 1];
        let k = self.ctx.degrees[i - 1];
        if k == 1 {
            return below.mul(a, b);
        }
        let x = split(a, s, k);
        let y = split(b, s, k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (u, &xu) in x.iter().enumerate() {
            if xu == 0 {
                continue;
            }
            for (v, &yv) in y.iter().enumerate() {
                if yv != 0 {
                    prod[u + v] = below.add(prod[u + v], below.mul(xu, yv));
                }
            }
        }
        let m = &self.ctx.moduli[i - 1];
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &mj) in m.iter().enumerate().take(k) {
                if mj != 0 {
                    let idx = top - k + j;
                    prod[idx] = below.sub(prod[idx], below.mul(c, mj));
                }
            }
        }
        join(&prod[..k], s)
    }
}

/// Fastest available arithmetic for one layer: tables when small enough,
/// recursive tower arithmetic otherwise.
pub enum Arith<'a> {
    Table(Arc<Gf>),
    Generic(Layer<'a>),
}

impl FieldCtx {
    pub fn arith(&self, i: usize) -> Arith<'_> {
        match self.gf(i) {
            Ok(t) => Arith::Table(t),
            Err(_) => Arith::Generic(self.layer(i)),
        }
    }
}

impl FiniteField for Arith<'_> {
    fn characteristic(&self) -> u64 {
        match self {
            Arith::Table(t) => t.characteristic(),
            Arith::Generic(l) => l.characteristic(),
        }
    }
    fn size(&self) -> u128 {
        match self {
            Arith::Table(t) => t.size(),
            Arith::Generic(l) => l.size(),
        }
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            Arith::Table(t) => t.add(a, b),
            Arith::Generic(l) => l.add(a, b),
        }
    }
    fn neg(&self, a: u64) -> u64 {
        match self {
            Arith::Table(t) => t.neg(a),
            Arith::Generic(l) => l.neg(a),
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            Arith::Table(t) => t.mul(a, b),
            Arith::Generic(l) => l.mul(a, b),
        }
    }
    fn pow(&self, a: u64, e: u128) -> u64 {
        match self {
            Arith::Table(t) => t.pow(a, e),
            Arith::Generic(l) => l.pow(a, e),
        }
    }
    fn inv(&self, a: u64) -> Option<u64> {
        match self {
            Arith::Table(t) => t.inv(a),
            Arith::Generic(l) => l.inv(a),
        }
    }
}
