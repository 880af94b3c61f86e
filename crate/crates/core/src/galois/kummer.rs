//! Monodromy of `x - s·x^{q^t}` over `F_{q^{nm}}(s)`.
//!
//! The nonzero roots are `ζ·u` with `ζ ∈ F_{q^t}^*` and `u^{q^t-1} = s^{-1}`,
//! so the root space is `F_{q^t}·u`. The geometric group is multiplication
//! by `F_{q^t}^*`; the arithmetic group adds the `q^{nm}`-power Frobenius on
//! the constants `F_{q^t}`.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{big_str, extension_field, frobenius_matrix, multiplication_matrix, MatrixGroup};
use crate::linalg::Mat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KummerMonodromy {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    /// Generators in `GL_t(F_q)`, acting on `F_{q^t}` in the basis `e_j` = code `q^j`.
    pub geometric_generators: Vec<Mat>,
    pub arithmetic_generators: Vec<Mat>,
    #[serde(with = "big_str")]
    pub geometric_order: BigUint,
    #[serde(with = "big_str")]
    pub arithmetic_order: BigUint,
    /// `[F_{q^{nm}} F_{q^t} : F_{q^{nm}}] = t / gcd(t, nm)`.
    pub constant_field_degree: usize,
    /// `x` is `(q, n, m, t)`-scattered, i.e. `gcd(t, nm) = 1`.
    pub scattered: bool,
    pub groups_differ: bool,
    /// When scattered: whether the two groups differ, as they must.
    pub scattered_implies_differ: Option<bool>,
}

pub fn kummer_monodromy(q: u64, n: usize, m: usize, t: usize) -> Result<KummerMonodromy> {
    if t == 0 || n == 0 || m == 0 {
        return Err(Error::BadParams("n, m, t must be positive".into()));
    }
    let (ctx, layer) = extension_field(q, t)?;
    let primitive = ctx.gf(layer)?.generator();
    let singer = multiplication_matrix(&ctx, layer, primitive)?;
    let frob = frobenius_matrix(&ctx, layer, (n * m) % t)?;
    let geometric_generators = vec![singer.clone()];
    let arithmetic_generators = vec![singer, frob];
    let geometric_order = MatrixGroup::new(t, q, geometric_generators.clone())?.order();
    let arithmetic_order = MatrixGroup::new(t, q, arithmetic_generators.clone())?.order();
    let g = t.gcd(&(n * m));
    let scattered = g == 1;
    let groups_differ = geometric_order != arithmetic_order;
    Ok(KummerMonodromy {
        q,
        n,
        m,
        t,
        geometric_generators,
        arithmetic_generators,
        geometric_order,
        arithmetic_order,
        constant_field_degree: t / g,
        scattered,
        groups_differ,
        scattered_implies_differ: scattered.then_some(groups_differ),
    })
}
