//! Word-size prime field arithmetic used by the modular gcd and the
//! p-adic root finder.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `start`, descending.
pub(crate) fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    let mut n = start;
    std::iter::from_fn(move || {
        while n > 2 {
            n -= 1;
            if is_prime(n) {
                return Some(n);
            }
        }
        None
    })
}

pub(crate) fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub(crate) fn reduce_poly(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
    trim(&mut out);
    out
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn make_monic(a: &mut [u64], p: u64) {
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
}

/// Remainder of `a` modulo `b` (b nonzero).
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = mul_mod(top, inv, p);
            let off = r.len() - 1 - db;
            for (j, &bj) in b.iter().enumerate() {
                r[off + j] = sub_mod(r[off + j], mul_mod(c, bj, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

/// Monic gcd over F_p.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&mut x, p);
    x
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
    trim(&mut out);
    out
}
