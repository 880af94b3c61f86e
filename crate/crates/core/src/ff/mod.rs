//! Finite-field towers `F_p ⊆ F_{p^{d_1}} ⊆ ...` with deterministic moduli.
//!
//! Every element of every layer is encoded as a single `u64` *code*: the
//! base-`p` integer whose digits are the element's flat coordinates over
//! `F_p`. A layer-`i` element `c_0 + c_1 θ + ... + c_{k-1} θ^{k-1}` (with
//! `c_j` in layer `i-1`) has code `Σ code(c_j) · |layer i-1|^j`. Two facts
//! follow and are used everywhere in the crate:
//!
//! * embedding a lower layer into a higher one leaves the code unchanged;
//! * if layer `b` has `q` elements, the base-`q` digits of a code are the
//!   element's coordinates over `F_q` in the tensor basis of the layers above.

mod gf;
pub mod poly;
mod tower;

pub use gf::{prime_power, Gf, TABLE_CAP};
pub use tower::{Arith, FieldCtx, FieldDescriptor, FieldElement, Layer};

/// Arithmetic over a finite field whose elements are `u64` codes.
///
/// Code `0` is zero and code `1` is one in every implementation.
pub trait FiniteField {
    fn characteristic(&self) -> u64;
    fn size(&self) -> u128;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.size() - 2))
        }
    }
}

/// Digit-wise addition of two flat codes with `digits` base-`p` digits.
pub(crate) fn add_digits(p: u64, mut a: u64, mut b: u64) -> u64 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0u64;
    let mut scale = 1u64;
    while a != 0 || b != 0 {
        let d = (a % p + b % p) % p;
        out += d * scale;
        a /= p;
        b /= p;
        scale = scale.wrapping_mul(p);
    }
    out
}

pub(crate) fn neg_digits(p: u64, mut a: u64) -> u64 {
    if p == 2 {
        return a;
    }
    let mut out = 0u64;
    let mut scale = 1u64;
    while a != 0 {
        let d = (p - a % p) % p;
        out += d * scale;
        a /= p;
        scale = scale.wrapping_mul(p);
    }
    out
}

/// `base^exp mod m` in 128-bit arithmetic.
pub(crate) fn pow_mod(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let Some(x) = a.checked_mul(b) {
        return x % m;
    }
    // double-and-add fallback for moduli above 2^64
    let (mut a, mut b, mut acc) = (a % m, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests;
