//! Exact arithmetic: rationals, dense polynomials and rational functions
//! over Q, and residue-class arithmetic modulo squarefree polynomials.

mod gcd;
mod intpoly;
pub mod linalg;
mod modp;
mod poly;
mod ratfun;
mod residue;
mod roots;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use residue::{residue_invert, Inversion, ResidueElement, SplitEvent};
pub use roots::{rational_roots, squarefree_factor, squarefree_part};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined on the zero function")]
    ZeroFunction,
    #[error("division by zero in residue field")]
    ZeroDivision,
    #[error("modulus splits as ({}) * ({})", .0.left, .0.right)]
    Split(SplitEvent),
}

/// Shorthand for an exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Monic gcd; `poly_gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.gcd(b)
}

/// Order of `f` along the monic squarefree `q` and the residue class of
/// `f / q^v` modulo `q`.
///
/// Fails with [`AlgebraError::Split`] when `q` is reducible and `f` does not
/// have a uniform order along its factors.
pub fn valuation_and_lead(f: &RationalFunction, q: &Polynomial) -> Result<(i64, ResidueElement), AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroFunction);
    }
    let q = q.monic();
    let (a, nc) = multiplicity_or_zero(f.num(), &q);
    let (b, dc) = multiplicity_or_zero(f.den(), &q);
    for c in [&nc, &dc] {
        let g = c.gcd(&q);
        if !g.is_constant() {
            let right = q.div_exact(&g).unwrap().monic();
            return Err(AlgebraError::Split(SplitEvent { left: g, right }));
        }
    }
    let num = ResidueElement::new(nc, &q);
    let den = ResidueElement::new(dc, &q);
    let lead = match residue_invert(&den)? {
        Inversion::Inverse(inv) => num.mul(&inv),
        Inversion::Split(s) => return Err(AlgebraError::Split(s)),
    };
    Ok((a as i64 - b as i64, lead))
}

fn multiplicity_or_zero(p: &Polynomial, q: &Polynomial) -> (usize, Polynomial) {
    if q.is_constant() {
        return (0, p.clone());
    }
    p.multiplicity(q)
}

/// `f(1/t)` as a rational function of `t`.
pub fn change_to_infinity(f: &RationalFunction) -> RationalFunction {
    if f.is_constant() {
        return f.clone();
    }
    // num(1/t)/den(1/t) = t^(dd-dn) rev(num)/rev(den)
    let dn = f.num().deg();
    let dd = f.den().deg();
    let mut num = f.num().reverse();
    let mut den = f.den().reverse();
    if dd > dn {
        num = num.shift((dd - dn) as usize);
    } else if dn > dd {
        den = den.shift((dn - dd) as usize);
    }
    RationalFunction::new(num, den)
}
