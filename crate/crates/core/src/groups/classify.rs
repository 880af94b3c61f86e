//! Recognition of transitive subgroups of `GL_d(F_q)`, `d` an odd prime:
//! either `SL_d(F_q) ≤ G` or `G` lies in a conjugate of `ΓL_1(F_{q^d})`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::matrix_group::{multiplication_matrix, extension_field, singer_gammal1, sl_generators, MatrixGroup};
use super::{big_str, order_gammal1, order_sl};
use crate::error::{Error, Result};
use crate::ff::{poly, FiniteField, Gf};
use crate::linalg::Mat;

/// Largest group enumerated while looking for a normal Singer subgroup.
const ENUMERATION_LIMIT: usize = 1 << 20;

/// `P` with `P·g·P⁻¹` in the standard `ΓL_1` copy for every generator `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaL1Witness {
    /// Element of `G` whose `F_q`-algebra is a field normalized by `G`.
    pub cyclic: Mat,
    /// Characteristic polynomial of `cyclic`, low degree first.
    pub char_poly: Vec<u64>,
    pub conjugator: Mat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    ContainsSL {
        #[serde(with = "big_str")]
        order: BigUint,
    },
    SubGammaL1 {
        #[serde(with = "big_str")]
        order: BigUint,
        witness: GammaL1Witness,
    },
    /// Neither outcome certified; a transitive group here contradicts the classification.
    Inconclusive {
        #[serde(with = "big_str")]
        order: BigUint,
        reason: String,
    },
}

pub fn classify_transitive(g: &MatrixGroup) -> Result<Classification> {
    let d = g.d();
    let q = g.q();
    if d < 3 || !num_prime::nt_funcs::is_prime64(d as u64) {
        return Err(Error::HypothesisViolation(format!("d = {d} is not an odd prime")));
    }
    if q.is_multiple_of(2) {
        return Err(Error::HypothesisViolation(format!("q = {q} is even")));
    }
    if !g.is_transitive() {
        return Err(Error::HypothesisViolation("group is not transitive on nonzero vectors".into()));
    }
    let order = g.order();
    if super::divides(&order_sl(d, q)?, &order) && sl_generators(d, q)?.iter().all(|t| g.contains(t)) {
        return Ok(Classification::ContainsSL { order });
    }
    if !super::divides(&order, &order_gammal1(d, q)?) {
        return Ok(Classification::Inconclusive {
            order,
            reason: "order neither contains |SL_d| with its generators nor divides |ΓL_1|".into(),
        });
    }
    match gammal1_witness(g)? {
        Some(witness) => Ok(Classification::SubGammaL1 { order, witness }),
        None => Ok(Classification::Inconclusive { order, reason: "no normalized Singer field found".into() }),
    }
}

fn flatten(m: &Mat) -> Vec<u64> {
    m.data().to_vec()
}

/// Whether `x` lies in the `F_q`-span of the given matrices.
fn in_span(gf: &Gf, basis: &[Mat], x: &Mat) -> bool {
    let mut cols: Vec<Vec<u64>> = basis.iter().map(flatten).collect();
    let r = Mat::from_cols(&cols).rank(gf);
    cols.push(flatten(x));
    Mat::from_cols(&cols).rank(gf) == r
}

fn gammal1_witness(g: &MatrixGroup) -> Result<Option<GammaL1Witness>> {
    let gf = g.field().clone();
    let d = g.d();
    let Some(elements) = g.elements(ENUMERATION_LIMIT) else {
        return Ok(None);
    };
    let inverses: Vec<Mat> = g.generators().iter().map(|s| s.inverse(&gf).unwrap()).collect();
    for c in &elements {
        let chi = c.char_poly(&gf);
        if !poly::is_irreducible(&*gf, &chi) {
            continue;
        }
        let mut powers = vec![Mat::identity(d)];
        for i in 1..d {
            powers.push(powers[i - 1].mul(&gf, c));
        }
        let normal = g
            .generators()
            .iter()
            .zip(&inverses)
            .all(|(s, si)| in_span(&gf, &powers, &s.mul(&gf, c).mul(&gf, si)));
        if normal {
            let conjugator = conjugate_to_standard(&gf, d, c, &chi)?;
            let standard = singer_gammal1(d, gf.order())?;
            let pinv = conjugator.inverse(&gf).unwrap();
            if g.generators().iter().all(|s| standard.contains(&conjugator.mul(&gf, s).mul(&gf, &pinv))) {
                return Ok(Some(GammaL1Witness { cyclic: c.clone(), char_poly: chi, conjugator }));
            }
        }
    }
    Ok(None)
}

/// `P` sending `c^i e_0` to the digits of `β^i`, where `β` is a root of `χ`
/// in the standard `F_{q^d}`; then `P c P⁻¹` is multiplication by `β`.
fn conjugate_to_standard(gf: &Gf, d: usize, c: &Mat, chi: &[u64]) -> Result<Mat> {
    let q = gf.order();
    let (ctx, layer) = extension_field(q, d)?;
    let big = ctx.gf(layer)?;
    let beta = (0..big.order())
        .find(|&b| poly::eval(&*big, chi, b) == 0)
        .expect("an irreducible polynomial of degree d splits in F_{q^d}");
    let mut e0 = vec![0; d];
    e0[0] = 1;
    let mut krylov = vec![e0];
    let mut beta_pows = vec![1u64];
    for i in 1..d {
        krylov.push(c.mul_vec(gf, &krylov[i - 1]));
        beta_pows.push(big.mul(beta_pows[i - 1], beta));
    }
    let mc = Mat::from_cols(&krylov);
    let mb = Mat::from_cols(&beta_pows.iter().map(|&b| Gf::digits(b, q, d)).collect::<Vec<_>>());
    let p = mb.mul(gf, &mc.inverse(gf).expect("e_0 is cyclic for an irreducible element"));
    debug_assert_eq!(
        p.mul(gf, c).mul(gf, &p.inverse(gf).unwrap()),
        multiplication_matrix(&ctx, layer, beta)?
    );
    Ok(p)
}
