//! Squarefree decomposition and rational root isolation.
//!
//! Rational roots are found p-adically: roots of the squarefree part modulo
//! a good prime are split out with gcds against (x+a)^((p-1)/2) - 1, Newton
//! lifted until the modulus exceeds the size bound on `lc * root`, and then
//! confirmed by exact evaluation. This sidesteps integer factorization of
//! the leading and trailing coefficients, which becomes the bottleneck on
//! the large indicial polynomials of high symmetric powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly;
use super::modp;
use super::poly::Polynomial;
use super::AlgebraError;

/// Yun's algorithm. Factors are monic, squarefree, pairwise coprime, and
/// grouped by multiplicity (one factor per multiplicity).
pub fn squarefree_factor(a: &Polynomial) -> Result<Vec<(Polynomial, usize)>, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let f = a.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).unwrap();
    let c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let ai = b.gcd(&d);
        b = b.div_exact(&ai).unwrap();
        let ci = d.div_exact(&ai).unwrap();
        d = &ci - &b.derivative();
        if !ai.is_constant() {
            out.push((ai, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Monic squarefree part.
pub fn squarefree_part(a: &Polynomial) -> Polynomial {
    if a.is_constant() {
        return Polynomial::one();
    }
    let g = a.gcd(&a.derivative());
    a.div_exact(&g).unwrap().monic()
}

/// All rational roots with multiplicities, ascending.
pub fn rational_roots(a: &Polynomial) -> Result<Vec<(BigRational, usize)>, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let f = a.primitive_int();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    let f: Vec<BigInt> = f[zeros..].to_vec();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push((BigRational::zero(), zeros));
    }
    if f.len() > 1 {
        let fp = Polynomial::from_integer_parts(f.clone(), BigInt::one());
        let s = squarefree_part(&fp).primitive_int();
        for r in squarefree_rational_roots(&s) {
            let lin = Polynomial::from_integer_parts(vec![-r.numer().clone(), r.denom().clone()], BigInt::one());
            let (m, _) = fp.multiplicity(&lin);
            debug_assert!(m > 0);
            out.push((r, m));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

/// Rational roots of a primitive squarefree integer polynomial with nonzero
/// constant term.
fn squarefree_rational_roots(s: &[BigInt]) -> Vec<BigRational> {
    let deg = s.len() - 1;
    let lc = s.last().unwrap().clone();
    if deg == 1 {
        return vec![BigRational::new(-s[0].clone(), s[1].clone())];
    }
    let p = pick_prime(s);
    let sp = modp::reduce_poly(s, p);
    let mut linear = roots_product_mod_p(&sp, p);
    if linear.len() <= 1 {
        return Vec::new();
    }
    modp::make_monic(&mut linear, p);
    let mut roots_p = Vec::new();
    split_linear(&linear, p, &mut roots_p);

    // |lc * root| <= |lc| + max |a_i| (Cauchy)
    let bound = &lc.abs() + intpoly::abs_max(s);
    let target: BigInt = bound * 2 + 1;
    let ds = intpoly::derivative(s);
    let mut out = Vec::new();
    for r0 in roots_p {
        let r = hensel_lift(s, &ds, r0, p, &target);
        let (modulus, r) = r;
        let c = (&lc * r).mod_floor(&modulus);
        let half: BigInt = &modulus >> 1;
        let c = if c > half { c - &modulus } else { c };
        let cand = BigRational::new(c, lc.clone());
        if intpoly::is_zero_at(s, cand.numer(), cand.denom()) {
            out.push(cand);
        }
    }
    out
}

fn pick_prime(s: &[BigInt]) -> u64 {
    for p in modp::primes_below(1 << 62) {
        if modp::reduce(s.last().unwrap(), p) == 0 {
            continue;
        }
        let sp = modp::reduce_poly(s, p);
        let g = modp::gcd(&sp, &modp::derivative(&sp, p), p);
        if g.len() == 1 {
            return p;
        }
    }
    unreachable!("prime supply exhausted")
}

/// gcd(f, x^p - x): product of the distinct linear factors mod p.
fn roots_product_mod_p(f: &[u64], p: u64) -> Vec<u64> {
    let mut fm = f.to_vec();
    modp::make_monic(&mut fm, p);
    let xp = powmod_poly(&[0, 1], p, &fm, p);
    let mut h = xp;
    if h.len() < 2 {
        h.resize(2, 0);
    }
    h[1] = modp::sub_mod(h[1], 1, p);
    modp::trim(&mut h);
    modp::gcd(&fm, &h, p)
}

fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = modp::add_mod(out[i + j], modp::mul_mod(x, y, p), p);
        }
    }
    modp::trim(&mut out);
    modp::rem(&out, m, p)
}

fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = modp::rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod_poly(&result, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod_poly(&b, &b, m, p);
        }
    }
    result
}

/// Splits a monic product of distinct linear factors into its roots.
fn split_linear(g: &[u64], p: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(modp::sub_mod(0, g[0], p)),
        _ => {
            for a in 0u64.. {
                let mut h = powmod_poly(&[a % p, 1], (p - 1) / 2, g, p);
                if h.is_empty() {
                    h.push(0);
                }
                h[0] = modp::sub_mod(h[0], 1, p);
                modp::trim(&mut h);
                let d = modp::gcd(g, &h, p);
                if d.len() > 1 && d.len() < g.len() {
                    let mut rest = div_mod(g, &d, p);
                    modp::make_monic(&mut rest, p);
                    split_linear(&d, p, out);
                    split_linear(&rest, p, out);
                    return;
                }
            }
        }
    }
}

fn div_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = modp::inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = modp::mul_mod(r[k + db], inv, p);
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = modp::sub_mod(r[k + j], modp::mul_mod(c, bj, p), p);
        }
    }
    q
}

/// Newton lifting of a simple root modulo p until the modulus exceeds
/// `target`. Returns (modulus, root).
fn hensel_lift(s: &[BigInt], ds: &[BigInt], r0: u64, p: u64, target: &BigInt) -> (BigInt, BigInt) {
    let mut modulus = BigInt::from(p);
    let mut r = BigInt::from(r0);
    while &modulus <= target {
        modulus = &modulus * &modulus;
        let fv = eval_mod(s, &r, &modulus);
        let dv = eval_mod(ds, &r, &modulus);
        let inv = mod_inverse(&dv, &modulus);
        r = (&r - fv * inv).mod_floor(&modulus);
    }
    (modulus, r)
}

fn eval_mod(a: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}
