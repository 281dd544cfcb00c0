//! Modular gcd of integer polynomials (dense, univariate Brown-style).
//!
//! Images modulo 62-bit primes are combined by Chinese remaindering until the
//! symmetric lift stops changing, then the candidate is confirmed by exact
//! division. A single prime giving a constant image proves coprimality, which
//! is the common case when reducing rational functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly;
use super::modp;

const PRIME_START: u64 = 1 << 62;

/// Gcd of two nonzero integer polynomials, primitive with positive leading
/// coefficient.
pub(crate) fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let a = intpoly::primitive(a);
    let b = intpoly::primitive(b);
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    if a == b {
        return a;
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if let Some(q) = intpoly::div_exact(&a, &b) {
        if !q.is_empty() {
            return b;
        }
    }

    let lc_gcd = a.last().unwrap().gcd(b.last().unwrap());
    let mut best_len = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<BigInt>> = None;

    for p in modp::primes_below(PRIME_START) {
        let lca = modp::reduce(a.last().unwrap(), p);
        let lcb = modp::reduce(b.last().unwrap(), p);
        if lca == 0 || lcb == 0 {
            continue;
        }
        let ap = modp::reduce_poly(&a, p);
        let bp = modp::reduce_poly(&b, p);
        let mut g = modp::gcd(&ap, &bp, p);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        if g.len() > best_len {
            continue;
        }
        let scale = modp::reduce(&lc_gcd, p);
        for c in g.iter_mut() {
            *c = modp::mul_mod(*c, scale, p);
        }
        if g.len() < best_len {
            best_len = g.len();
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            previous = None;
        } else {
            crt_combine(&mut acc, &mut modulus, &g, p);
        }
        let lifted = symmetric(&acc, &modulus);
        if previous.as_ref() == Some(&lifted) {
            let candidate = intpoly::primitive(&lifted);
            if intpoly::div_exact(&a, &candidate).is_some() && intpoly::div_exact(&b, &candidate).is_some() {
                return candidate;
            }
        }
        previous = Some(lifted);
    }
    unreachable!("prime supply exhausted")
}

fn crt_combine(acc: &mut [BigInt], modulus: &mut BigInt, image: &[u64], p: u64) {
    let m_mod_p = modp::reduce(modulus, p);
    let m_inv = modp::inv_mod(m_mod_p, p);
    for (h, &r) in acc.iter_mut().zip(image) {
        let h_mod_p = modp::reduce(h, p);
        let delta = modp::mul_mod(modp::sub_mod(r, h_mod_p, p), m_inv, p);
        if delta != 0 {
            *h += &*modulus * BigInt::from(delta);
        }
    }
    *modulus *= BigInt::from(p);
}

fn symmetric(acc: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half: BigInt = modulus >> 1;
    let mut out: Vec<BigInt> = acc
        .iter()
        .map(|c| {
            let c = c.mod_floor(modulus);
            if c > half {
                c - modulus
            } else {
                c
            }
        })
        .collect();
    intpoly::trim(&mut out);
    if out.is_empty() {
        out.push(BigInt::zero());
    }
    out
}
