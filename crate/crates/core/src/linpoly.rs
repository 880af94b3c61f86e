//! `q`-linearized polynomials `Σ a_i x^{q^i}` and the `F_q`-linear maps they induce.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldDescriptor, FieldElement, FiniteField, Gf};
use crate::linalg::Mat;

/// `Σ_{i=0}^{r} a_i x^{q^i}` with coefficients in one layer of a tower.
///
/// `q` is the cardinality of the tower's base layer. The zero polynomial has
/// an empty coefficient list.
#[derive(Debug, Clone)]
pub struct LinPoly {
    ctx: Arc<FieldCtx>,
    coeff_layer: usize,
    coeffs: Vec<u64>,
}

impl PartialEq for LinPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeff_layer == other.coeff_layer && self.coeffs == other.coeffs && *self.ctx == *other.ctx
    }
}

/// Wire format: `{"field": <descriptor>, "coeff_layer": i, "coeffs": [<element>, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinPolyJson {
    pub field: FieldDescriptor,
    pub coeff_layer: usize,
    pub coeffs: Vec<Value>,
}

impl LinPoly {
    pub fn new(ctx: Arc<FieldCtx>, coeff_layer: usize, coeffs: Vec<u64>) -> Result<LinPoly> {
        if coeff_layer > ctx.top() {
            return Err(Error::LayerMismatch(format!("no layer {coeff_layer}")));
        }
        if coeff_layer < ctx.base_layer() {
            return Err(Error::LayerMismatch(format!(
                "coefficient layer {coeff_layer} lies below the base layer {}",
                ctx.base_layer()
            )));
        }
        let size = ctx.cardinality(coeff_layer);
        if let Some(&bad) = coeffs.iter().find(|&&c| c as u128 >= size) {
            return Err(Error::LayerMismatch(format!("code {bad} outside layer {coeff_layer}")));
        }
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(LinPoly { ctx, coeff_layer, coeffs })
    }

    pub fn from_elements(ctx: Arc<FieldCtx>, coeff_layer: usize, coeffs: &[FieldElement]) -> Result<LinPoly> {
        let codes = coeffs
            .iter()
            .map(|c| {
                if c.layer > coeff_layer {
                    Err(Error::LayerMismatch(format!("coefficient in layer {} above {coeff_layer}", c.layer)))
                } else {
                    Ok(c.code)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        LinPoly::new(ctx, coeff_layer, codes)
    }

    /// The identity polynomial `x`.
    pub fn x(ctx: Arc<FieldCtx>, coeff_layer: usize) -> LinPoly {
        LinPoly::new(ctx, coeff_layer, vec![1]).expect("valid layer")
    }

    /// `c · x^{q^i}`.
    pub fn monomial(ctx: Arc<FieldCtx>, coeff_layer: usize, i: usize, c: u64) -> Result<LinPoly> {
        let mut coeffs = vec![0; i + 1];
        coeffs[i] = c;
        LinPoly::new(ctx, coeff_layer, coeffs)
    }

    pub fn zero(ctx: Arc<FieldCtx>, coeff_layer: usize) -> LinPoly {
        LinPoly { ctx, coeff_layer, coeffs: Vec::new() }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeff_layer(&self) -> usize {
        self.coeff_layer
    }

    /// Coefficient codes `a_0, ..., a_r`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    /// Degree `n` of the coefficient layer over `F_q`.
    pub fn n(&self) -> usize {
        self.ctx.degree_over_base(self.coeff_layer).expect("coefficient layer above base")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lin_degree(&self) -> Result<usize> {
        if self.coeffs.is_empty() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(self.coeffs.len() - 1)
        }
    }

    /// The same polynomial read with coefficients in a higher layer.
    pub fn lift(&self, layer: usize) -> Result<LinPoly> {
        if layer < self.coeff_layer || layer > self.ctx.top() {
            return Err(Error::LayerMismatch(format!("cannot lift layer {} to {layer}", self.coeff_layer)));
        }
        Ok(LinPoly { ctx: self.ctx.clone(), coeff_layer: layer, coeffs: self.coeffs.clone() })
    }

    /// Moves the polynomial into another tower that shares the layers up to
    /// the coefficient layer (codes agree there).
    pub fn rehome(&self, ctx: Arc<FieldCtx>) -> Result<LinPoly> {
        if !self.ctx.shares_prefix(&ctx, self.coeff_layer) || ctx.base_layer() != self.ctx.base_layer() {
            return Err(Error::ContextMismatch);
        }
        Ok(LinPoly { ctx, coeff_layer: self.coeff_layer, coeffs: self.coeffs.clone() })
    }

    fn same_ctx(&self, other: &LinPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `ℓ(x) = Σ a_i x^{q^i}` for `x` in a layer containing the coefficients.
    pub fn evaluate(&self, x: FieldElement) -> Result<FieldElement> {
        if x.layer < self.coeff_layer || x.layer > self.ctx.top() {
            return Err(Error::LayerMismatch(format!(
                "cannot evaluate a layer-{} polynomial at a layer-{} point",
                self.coeff_layer, x.layer
            )));
        }
        self.ctx.element(x.layer, x.code)?;
        let f = self.ctx.arith(x.layer);
        Ok(FieldElement { layer: x.layer, code: self.eval_code(&f, x.code) })
    }

    /// Evaluation on raw codes of a field that contains the coefficient layer.
    pub fn eval_code<F: FiniteField>(&self, f: &F, x: u64) -> u64 {
        let q = self.q() as u128;
        let mut y = x;
        let mut acc = 0;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                acc = f.add(acc, f.mul(a, y));
            }
            if i + 1 < self.coeffs.len() {
                y = f.pow(y, q);
            }
        }
        acc
    }

    pub fn add(&self, other: &LinPoly) -> Result<LinPoly> {
        self.same_ctx(other)?;
        let layer = self.coeff_layer.max(other.coeff_layer);
        let f = self.ctx.arith(layer);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        LinPoly::new(self.ctx.clone(), layer, coeffs)
    }

    pub fn sub(&self, other: &LinPoly) -> Result<LinPoly> {
        self.same_ctx(other)?;
        let layer = self.coeff_layer.max(other.coeff_layer);
        let f = self.ctx.arith(layer);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        LinPoly::new(self.ctx.clone(), layer, coeffs)
    }

    /// `c · ℓ` for `c` in the coefficient layer (or below).
    pub fn scale(&self, c: u64) -> Result<LinPoly> {
        let f = self.ctx.arith(self.coeff_layer);
        LinPoly::new(self.ctx.clone(), self.coeff_layer, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// `ℓ₁ ∘ ℓ₂`, with `c_k = Σ_{i+j=k} a_i b_j^{q^i}`.
    pub fn compose(&self, other: &LinPoly) -> Result<LinPoly> {
        self.same_ctx(other)?;
        let layer = self.coeff_layer.max(other.coeff_layer);
        if self.is_zero() || other.is_zero() {
            return Ok(LinPoly::zero(self.ctx.clone(), layer));
        }
        let f = self.ctx.arith(layer);
        let q = self.q() as u128;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        // twisted[j] holds b_j^{q^i} for the current i
        let mut twisted = other.coeffs.clone();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                for (j, &b) in twisted.iter().enumerate() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
            for b in twisted.iter_mut() {
                *b = f.pow(*b, q);
            }
        }
        LinPoly::new(self.ctx.clone(), layer, out)
    }

    /// Target layer check shared by the matrix operations; returns `[target : F_q]`.
    fn target_degree(&self, target: usize) -> Result<usize> {
        if target < self.coeff_layer || target > self.ctx.top() {
            return Err(Error::LayerMismatch(format!(
                "target layer {target} does not contain coefficient layer {}",
                self.coeff_layer
            )));
        }
        Ok(self.ctx.degree_over_base(target).unwrap())
    }

    /// Matrix over `F_q` of `u ↦ ℓ(u)` on the target layer.
    ///
    /// The basis is `e_j = ` code `q^j`: column `j` holds the base-`q`
    /// digits of `ℓ(e_j)`.
    pub fn linear_map_matrix(&self, target: usize) -> Result<Mat> {
        let n = self.target_degree(target)?;
        let q = self.q();
        let f = self.ctx.arith(target);
        let cols: Vec<Vec<u64>> = (0..n)
            .map(|j| Gf::digits(self.eval_code(&f, q.pow(j as u32)), q, n))
            .collect();
        Ok(Mat::from_cols(&cols))
    }

    /// `dim_{F_q}` of the kernel of `ℓ` on the target layer; the root count is `q^k`.
    pub fn kernel_dim(&self, target: usize) -> Result<usize> {
        let m = self.linear_map_matrix(target)?;
        let gf = self.ctx.gf(self.ctx.base_layer())?;
        Ok(m.kernel_dim(&gf))
    }

    pub fn to_json(&self) -> LinPolyJson {
        LinPolyJson {
            field: self.ctx.descriptor(),
            coeff_layer: self.coeff_layer,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| self.ctx.element_to_json(FieldElement { layer: self.coeff_layer, code: c }))
                .collect(),
        }
    }

    pub fn from_json(j: &LinPolyJson) -> Result<LinPoly> {
        let ctx = FieldCtx::from_descriptor(&j.field)?;
        if j.coeff_layer > ctx.top() {
            return Err(Error::LayerMismatch(format!("no layer {}", j.coeff_layer)));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|v| ctx.element_from_json(j.coeff_layer, v).map(|e| e.code))
            .collect::<Result<Vec<_>>>()?;
        LinPoly::new(ctx, j.coeff_layer, coeffs)
    }
}
