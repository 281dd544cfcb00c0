//! Kernels on dense integer polynomials (lowest degree first, no trailing zeros).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// `a * x^k`
pub(crate) fn shift(a: &[BigInt], k: usize) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend_from_slice(a);
    out
}

pub(crate) fn max_bits(a: &[BigInt]) -> u64 {
    a.iter().map(|c| c.bits()).max().unwrap_or(0)
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let small = a.len().min(b.len());
    let work = (a.len() as u64) * (b.len() as u64);
    if small < 8 || work < 400 {
        return mul_schoolbook(a, b);
    }
    mul_kronecker(a, b)
}

fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Packs the coefficients into one integer at 32*w-bit slots and lets the
/// big-integer multiplier do the work.
fn mul_kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let bound_bits = max_bits(a) + max_bits(b) + 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64 + 2;
    let w = bound_bits.div_ceil(32) as usize;
    let pa = pack(a, w);
    let pb = pack(b, w);
    let prod = pa * pb;
    unpack(&prod, w, a.len() + b.len() - 1)
}

fn pack(a: &[BigInt], w: usize) -> BigInt {
    let mut pos = vec![0u32; a.len() * w];
    let mut neg = vec![0u32; a.len() * w];
    let mut any_neg = false;
    for (i, c) in a.iter().enumerate() {
        let (sign, digits) = c.to_u32_digits();
        let target = if sign == Sign::Minus {
            any_neg = true;
            &mut neg
        } else {
            &mut pos
        };
        target[i * w..i * w + digits.len()].copy_from_slice(&digits);
    }
    let p = BigInt::from_biguint(Sign::Plus, BigUint::new(pos));
    if any_neg {
        p - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
    } else {
        p
    }
}

fn unpack(p: &BigInt, w: usize, len: usize) -> Vec<BigInt> {
    let (sign, digits) = p.to_u32_digits();
    let half = BigUint::one() << (32 * w - 1);
    let full = BigUint::one() << (32 * w);
    let mut out = Vec::with_capacity(len);
    let mut carry = false;
    for i in 0..len {
        let lo = (i * w).min(digits.len());
        let hi = ((i + 1) * w).min(digits.len());
        let mut chunk = BigUint::new(digits[lo..hi].to_vec());
        if carry {
            chunk += 1u32;
        }
        let value = if chunk >= half {
            carry = true;
            BigInt::from_biguint(Sign::Plus, chunk) - BigInt::from_biguint(Sign::Plus, full.clone())
        } else {
            carry = false;
            BigInt::from_biguint(Sign::Plus, chunk)
        };
        out.push(if sign == Sign::Minus { -value } else { value });
    }
    trim(&mut out);
    out
}

pub(crate) fn derivative(a: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut out);
    out
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a.iter().rev() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut g = content(a);
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    if g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact division over Z; `None` if `d` does not divide `a` in Z[x].
pub(crate) fn div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!d.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < d.len() {
        return None;
    }
    let lc = d.last().unwrap();
    let mut rem = a.to_vec();
    let qlen = a.len() - d.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = &rem[k + d.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, dj) in d.iter().enumerate() {
            if !dj.is_zero() {
                rem[k + j] -= &c * dj;
            }
        }
        q[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Evaluates at `num/den`, returning the numerator of `den^deg * a(num/den)`.
pub(crate) fn eval_homogeneous(a: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in a.iter().rev() {
        acc = acc * num + c * &dpow;
        dpow *= den;
    }
    acc
}

pub(crate) fn is_zero_at(a: &[BigInt], num: &BigInt, den: &BigInt) -> bool {
    eval_homogeneous(a, num, den).is_zero()
}

pub(crate) fn abs_max(a: &[BigInt]) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}
