//! Dense univariate polynomials over a [`FiniteField`], coefficients low degree first.
//!
//! Polynomials are plain `Vec<u64>` of codes; the zero polynomial is the
//! empty vector and every function returns trimmed results.

use super::FiniteField;

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn mul<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    trim(out)
}

pub fn scale<F: FiniteField>(f: &F, a: &[u64], c: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).unwrap();
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for j in 0..=db {
            if b[j] != 0 {
                r[dr - db + j] = f.sub(r[dr - db + j], f.mul(c, b[j]));
            }
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(f, a, b).1
}

pub fn monic<F: FiniteField>(f: &F, a: &[u64]) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv(a[d]).unwrap()),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative<F: FiniteField>(f: &F, a: &[u64]) -> Vec<u64> {
    let p = f.characteristic();
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| {
            let k = (i as u64) % p;
            // k·c as repeated addition keeps this independent of the encoding
            let mut acc = 0;
            for _ in 0..k {
                acc = f.add(acc, c);
            }
            acc
        })
        .collect();
    trim(out)
}

pub fn mulmod<F: FiniteField>(f: &F, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    rem(f, &mul(f, a, b), m)
}

/// `base^e mod m`.
pub fn powmod<F: FiniteField>(f: &F, base: &[u64], mut e: u128, m: &[u64]) -> Vec<u64> {
    let mut b = rem(f, base, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        b = mulmod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

pub fn eval<F: FiniteField>(f: &F, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Rabin's irreducibility test for a polynomial of positive degree.
pub fn is_irreducible<F: FiniteField>(f: &F, a: &[u64]) -> bool {
    let k = match degree(a) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    let m = monic(f, a);
    let s = f.size();
    let x = vec![0u64, 1];
    // powers[j] = x^(s^j) mod m
    let mut powers = vec![rem(f, &x, &m)];
    for _ in 0..k {
        let last = powers.last().unwrap().clone();
        powers.push(powmod(f, &last, s, &m));
    }
    if powers[k] != rem(f, &x, &m) {
        return false;
    }
    let primes: Vec<u64> = num_prime::nt_funcs::factorize64(k as u64).into_keys().collect();
    primes.into_iter().all(|r| {
        let h = sub(f, &powers[k / r as usize], &x);
        degree(&gcd(f, &h, &m)) == Some(0)
    })
}
