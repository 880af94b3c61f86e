//! Linear groups over finite fields: order formulas, Zsigmondy primes,
//! stabilizer chains, recognition of transitive groups of prime degree,
//! and the integer obstructions behind that recognition.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::prime_power;

mod classify;
mod embedding;
mod matrix_group;
mod obstructions;

pub use classify::{classify_transitive, Classification, GammaL1Witness};
pub use embedding::{
    positive_control_gl2_13, involution_candidates, no_embedding_sl2_13_in_gl3_9, order13_representatives,
    EmbeddingCertificate, EmbeddingVerdict, HitCheck,
};
pub use matrix_group::{
    element_order, extension_field, frobenius_matrix, gl_generators, multiplication_matrix, singer_cycle,
    singer_gammal1, sl_generators, transvection, CapExceeded, Chain, MatrixGroup,
};
pub use obstructions::{proposition_obstructions, Case, ObstructionReport, Verdict, Witness};

fn big_pow(b: u64, e: usize) -> BigUint {
    BigUint::from(b).pow(e as u32)
}

/// `|GL_d(F_q)| = Π_{i<d} (q^d - q^i)`.
pub fn order_gl(d: usize, q: u64) -> Result<BigUint> {
    prime_power(q)?;
    let qd = big_pow(q, d);
    Ok((0..d).map(|i| &qd - big_pow(q, i)).product())
}

/// `|SL_d(F_q)| = |GL_d(F_q)| / (q - 1)`.
pub fn order_sl(d: usize, q: u64) -> Result<BigUint> {
    Ok(order_gl(d, q)? / BigUint::from(q - 1))
}

/// `|Sp_4(F_Q)| = Q^4 (Q^2 - 1)(Q^4 - 1)`.
pub fn order_sp4(q: u64) -> Result<BigUint> {
    prime_power(q)?;
    let one = BigUint::one();
    Ok(big_pow(q, 4) * (big_pow(q, 2) - &one) * (big_pow(q, 4) - &one))
}

/// `|Sp_e(F_Q)| = Q^{(e/2)^2} Π_{i=1}^{e/2} (Q^{2i} - 1)` for even `e`.
pub fn order_sp(e: usize, q: u64) -> Result<BigUint> {
    prime_power(q)?;
    if e == 0 || e % 2 == 1 {
        return Err(Error::BadParams(format!("symplectic dimension {e} must be even and positive")));
    }
    let h = e / 2;
    let one = BigUint::one();
    Ok(big_pow(q, h * h) * (1..=h).map(|i| big_pow(q, 2 * i) - &one).product::<BigUint>())
}

/// `|ΓL_1(F_{q^d})| = d (q^d - 1)`.
pub fn order_gammal1(d: usize, q: u64) -> Result<BigUint> {
    prime_power(q)?;
    Ok(BigUint::from(d) * (big_pow(q, d) - BigUint::one()))
}

/// `v_p(|SL_e(F_{p^c})|) = c·e(e-1)/2`.
pub fn vp_sl(e: usize, c: usize, p: u64) -> Result<u64> {
    if e < 2 || c < 1 || !num_prime::nt_funcs::is_prime64(p) {
        return Err(Error::BadParams(format!("vp_sl needs e ≥ 2, c ≥ 1, p prime; got ({e}, {c}, {p})")));
    }
    Ok((c * e * (e - 1) / 2) as u64)
}

/// `v_p(n)` for `n > 0`.
pub fn valuation(n: &BigUint, p: u64) -> u64 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Zsigmondy {
    Prime { r: u64 },
    /// `(2, 1)`, `(2, 6)`, and `n = 2` with `b + 1` a power of 2.
    Exception,
}

impl Zsigmondy {
    pub fn prime(self) -> Option<u64> {
        match self {
            Zsigmondy::Prime { r } => Some(r),
            Zsigmondy::Exception => None,
        }
    }
}

/// Multiplicative order of `b` modulo the prime `r ∤ b`.
pub fn multiplicative_order(b: u64, r: u64) -> u64 {
    let n = r - 1;
    let mut ord = n;
    for (s, _) in num_prime::nt_funcs::factorize64(n) {
        while ord.is_multiple_of(s) && pow_mod(b, ord / s, r) == 1 {
            ord /= s;
        }
    }
    ord
}

pub(crate) fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    crate::ff::pow_mod(b as u128, e as u128, m as u128) as u64
}

/// `Φ_n(b)` as the product of `(b^k - 1)^{μ(n/k)}` over `k | n`.
pub fn cyclotomic_value(b: u64, n: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 1..=n {
        if !n.is_multiple_of(k) {
            continue;
        }
        let term = big_pow(b, k) - BigUint::one();
        match mobius(n / k) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

fn mobius(n: usize) -> i32 {
    let mut mu = 1;
    for (_, e) in num_prime::nt_funcs::factorize64(n as u64) {
        if e > 1 {
            return 0;
        }
        mu = -mu;
    }
    mu
}

/// Search bound for primitive primes when `Φ_n(b)` is too large to factor.
const PRIMITIVE_SEARCH_LIMIT: u64 = 1 << 26;

/// Smallest primitive prime divisor of `b^n - 1`.
pub fn zsigmondy(b: u64, n: usize) -> Result<Zsigmondy> {
    if b < 2 || n < 1 {
        return Err(Error::BadParams(format!("zsigmondy needs b ≥ 2, n ≥ 1; got ({b}, {n})")));
    }
    if (b == 2 && (n == 1 || n == 6)) || (n == 2 && (b + 1).is_power_of_two()) {
        return Ok(Zsigmondy::Exception);
    }
    let phi = cyclotomic_value(b, n);
    let primitive = |r: u64| !b.is_multiple_of(r) && multiplicative_order(b % r, r) == n as u64;
    if let Some(v) = phi.to_u128() {
        let best = num_prime::nt_funcs::factorize128(v)
            .into_keys()
            .filter_map(|r| u64::try_from(r).ok())
            .filter(|&r| primitive(r))
            .min();
        return best.map(|r| Zsigmondy::Prime { r }).ok_or_else(|| {
            Error::HypothesisViolation(format!("no primitive prime divisor of {b}^{n} - 1"))
        });
    }
    // primitive prime divisors are ≡ 1 mod n
    let n64 = n as u64;
    let mut r = n64 + 1;
    while r < PRIMITIVE_SEARCH_LIMIT {
        if num_prime::nt_funcs::is_prime64(r) && primitive(r) {
            return Ok(Zsigmondy::Prime { r });
        }
        r += n64;
    }
    Err(Error::BudgetExceeded(format!("no primitive prime of {b}^{n} - 1 below {PRIMITIVE_SEARCH_LIMIT}")))
}

/// `a | b` for big integers.
pub(crate) fn divides(a: &BigUint, b: &BigUint) -> bool {
    b.is_multiple_of(a)
}

#[cfg(test)]
mod tests;

/// Serializes big integers as decimal strings.
pub mod big_str {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| serde::de::Error::custom("invalid integer"))
    }
}
