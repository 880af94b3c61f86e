use std::sync::Arc;

use super::{add_digits, FieldCtx, FiniteField, Layer};
use crate::error::{Error, Result};

/// Largest field for which log/antilog tables are built.
pub const TABLE_CAP: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

/// Table-driven arithmetic for one small field.
///
/// Codes agree with the [`FieldCtx`] layer the table was built from, so a
/// `Gf` for a big layer also does arithmetic on the codes of every smaller
/// layer of the same tower.
#[derive(Debug, Clone)]
pub struct Gf {
    p: u64,
    degree: usize,
    size: u64,
    generator: u64,
    // exp has length 2(size-1) so products need no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl Gf {
    pub(crate) fn build(layer: &Layer<'_>) -> Result<Gf> {
        let size = layer.size();
        if size > TABLE_CAP as u128 {
            return Err(Error::BudgetExceeded(format!(
                "field of size {size} is too large for tables (cap {TABLE_CAP})"
            )));
        }
        let size = size as u64;
        let p = layer.characteristic();
        let n = size - 1;
        let primes: Vec<u64> = num_prime::nt_funcs::factorize64(n).into_keys().collect();
        let generator = (1..size)
            .find(|&g| primes.iter().all(|&r| layer.pow(g, (n / r) as u128) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![NONE; size as usize];
        let mut x = 1u64;
        for j in 0..n as usize {
            exp[j] = x as u32;
            exp[j + n as usize] = x as u32;
            log[x as usize] = j as u32;
            x = layer.mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        let zech = (0..n as usize)
            .map(|d| {
                let s = add_digits(p, 1, exp[d] as u64);
                if s == 0 { NONE } else { log[s as usize] }
            })
            .collect();
        Ok(Gf { p, degree: layer.flat_degree(), size, generator, exp, log, zech })
    }

    /// The field with `q` elements, as layer 1 of the tower `F_p ⊆ F_q`.
    pub fn with_order(q: u64) -> Result<Arc<Gf>> {
        let (p, a) = prime_power(q)?;
        let ctx = FieldCtx::new(p, &[a])?;
        ctx.gf(1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.size
    }

    /// The primitive element the tables were built on (least code of full order).
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Discrete log with respect to [`Gf::generator`]; `None` for zero.
    pub fn log(&self, a: u64) -> Option<u64> {
        match self.log[a as usize] {
            NONE => None,
            l => Some(l as u64),
        }
    }

    pub fn exp(&self, e: u64) -> u64 {
        self.exp[(e % (self.size - 1)) as usize] as u64
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u64) -> u64 {
        let l = self.log(a).expect("zero has no multiplicative order");
        (self.size - 1) / num_integer::gcd(l, self.size - 1)
    }

    /// `a^(p^k)`, the `k`-th power of the absolute Frobenius.
    pub fn frob_p(&self, a: u64, k: u64) -> u64 {
        let e = super::pow_mod(self.p as u128, k as u128, (self.size - 1) as u128);
        self.pow(a, e)
    }

    /// `a^(r^k)` for an arbitrary integer `r` (e.g. a subfield order `q`).
    pub fn pow_power(&self, a: u64, r: u64, k: u64) -> u64 {
        if a == 0 {
            return 0;
        }
        let n = self.size - 1;
        let e = super::pow_mod(r as u128, k as u128, n as u128);
        let l = self.log[a as usize] as u128;
        self.exp[((l * e) % n as u128) as usize] as u64
    }

    /// Base-`radix` digits of a code, least significant first, padded to `len`.
    pub fn digits(code: u64, radix: u64, len: usize) -> Vec<u64> {
        let mut c = code;
        (0..len)
            .map(|_| {
                let d = c % radix;
                c /= radix;
                d
            })
            .collect()
    }

    pub fn from_digits(digits: &[u64], radix: u64) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
    }
}

impl FiniteField for Gf {
    fn characteristic(&self) -> u64 {
        self.p
    }

    fn size(&self) -> u128 {
        self.size as u128
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.size - 1;
        let la = self.log[a as usize] as u64;
        let lb = self.log[b as usize] as u64;
        let d = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[d as usize] {
            NONE => 0,
            z => self.exp[(la + z as u64) as usize] as u64,
        }
    }

    #[inline]
    fn neg(&self, a: u64) -> u64 {
        if a == 0 || self.p == 2 {
            return a;
        }
        if self.degree == 1 {
            return self.p - a;
        }
        let n = self.size - 1;
        let la = self.log[a as usize] as u64;
        self.exp[(la + n / 2) as usize] as u64
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let la = self.log[a as usize] as usize;
        let lb = self.log[b as usize] as usize;
        self.exp[la + lb] as u64
    }

    fn pow(&self, a: u64, e: u128) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as u128;
        let l = self.log[a as usize] as u128;
        self.exp[((l * (e % n)) % n) as usize] as u64
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.size - 1;
        let l = self.log[a as usize] as u64;
        Some(self.exp[((n - l) % n) as usize] as u64)
    }
}

/// Splits `q = p^a`; errors if `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let f = num_prime::nt_funcs::factorize64(q);
    if f.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let (&p, &a) = f.iter().next().unwrap();
    Ok((p, a))
}
