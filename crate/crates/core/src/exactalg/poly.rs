use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{gcd, intpoly};

/// Dense univariate polynomial over Q.
///
/// Stored as an integer coefficient vector over a common positive
/// denominator, kept in lowest terms. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn x() -> Self {
        Polynomial { coeffs: vec![BigInt::zero(), BigInt::one()], den: BigInt::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_integer_parts(vec![BigInt::from(c)], BigInt::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let (n, d) = c.into_raw();
        Self::from_integer_parts(vec![n], d)
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let (n, d) = c.into_raw();
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(n);
        Self::from_integer_parts(coeffs, d)
    }

    /// Builds from integer coefficients (lowest degree first).
    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_integer_parts(c.iter().map(|&v| BigInt::from(v)).collect(), BigInt::one())
    }

    pub fn from_rationals(c: &[BigRational]) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let coeffs = c.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Self::from_integer_parts(coeffs, den)
    }

    /// `(sum coeffs[i] x^i) / den`, normalized.
    pub fn from_integer_parts(mut coeffs: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        intpoly::trim(&mut coeffs);
        if coeffs.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &coeffs {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                den /= &g;
                for c in coeffs.iter_mut() {
                    *c /= &g;
                }
            }
        }
        Polynomial { coeffs, den }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        match self.coeffs.get(i) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading_coeff(&self) -> BigRational {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => BigRational::zero(),
        }
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.coeffs.last().unwrap().clone();
        Self::from_integer_parts(self.coeffs.clone(), lc)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.den)
    }

    /// Primitive integer form (positive leading coefficient).
    pub(crate) fn primitive_int(&self) -> Vec<BigInt> {
        intpoly::primitive(&self.coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_integer_parts(intpoly::scale(&self.coeffs, c.numer()), &self.den * c.denom())
    }

    pub fn derivative(&self) -> Self {
        Self::from_integer_parts(intpoly::derivative(&self.coeffs), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self * x^k`
    pub fn shift(&self, k: usize) -> Self {
        Polynomial { coeffs: intpoly::shift(&self.coeffs, k), den: self.den.clone() }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let n = intpoly::eval_homogeneous(&self.coeffs, at.numer(), at.denom());
        let d = at.denom().pow(self.coeffs.len() as u32 - 1) * &self.den;
        BigRational::new(n, d)
    }

    pub fn vanishes_at(&self, at: &BigRational) -> bool {
        self.is_zero() || intpoly::is_zero_at(&self.coeffs, at.numer(), at.denom())
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Polynomial) -> Self {
        let mut acc = Self::zero();
        for i in (0..self.coeffs.len()).rev() {
            acc = &(&acc * inner) + &self.coeff(i).into();
        }
        acc
    }

    /// Quotient and remainder over Q.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        // Fraction-free pseudo division on the integer parts; the accumulated
        // scale is divided back out at the end.
        let d = &divisor.coeffs;
        let lc = d.last().unwrap();
        let dn = d.len();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dn + 1;
        let mut q = vec![BigInt::zero(); qlen];
        let mut scale = BigInt::one();
        for k in (0..qlen).rev() {
            let top = rem[k + dn - 1].clone();
            if top.is_zero() {
                continue;
            }
            let g = top.gcd(lc);
            let mult = lc / &g;
            let c = &top / &g;
            if !mult.is_one() {
                for r in rem.iter_mut() {
                    *r *= &mult;
                }
                for qq in q.iter_mut() {
                    *qq *= &mult;
                }
                scale *= &mult;
            }
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        // self.num * scale = q * d + rem  (all integer), self = num/den,
        // divisor = d/dden  =>  self = (q*dden/(scale*den)) * divisor + rem/(scale*den)
        let quot = Self::from_integer_parts(intpoly::scale(&q, &divisor.den), &scale * &self.den);
        let r = Self::from_integer_parts(rem, scale * &self.den);
        (quot, r)
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.div_rem(divisor).1
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let pd = divisor.primitive_int();
        let ps = self.primitive_int();
        let q = intpoly::div_exact(&ps, &pd)?;
        // self = cs * ps, divisor = cd * pd, so self / divisor = (cs/cd) * q
        let cs = self.content_rational();
        let cd = divisor.content_rational();
        Some(Self::from_integer_parts(q, BigInt::one()).scale(&(cs / cd)))
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.div_exact(self).is_some()
    }

    /// Rational content c with `self = c * primitive_int(self)`.
    pub(crate) fn content_rational(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut g = intpoly::content(&self.coeffs);
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        BigRational::new(g, self.den.clone())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let g = gcd::gcd_int(&self.coeffs, &other.coeffs);
        Self::from_integer_parts(g, BigInt::one()).monic()
    }

    /// Multiplicity of `factor` in `self` (self nonzero, factor non-constant).
    pub fn multiplicity(&self, factor: &Polynomial) -> (usize, Polynomial) {
        assert!(!self.is_zero() && !factor.is_constant());
        let mut m = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(factor) {
            m += 1;
            cur = q;
        }
        (m, cur)
    }

    /// `x -> 1/x` reversal: `x^deg * self(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_integer_parts(c, self.den.clone())
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }

    /// Ordering used for canonical output: by degree, then coefficients from
    /// the top down.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| {
            for i in (0..self.coeffs.len()).rev() {
                let o = self.coeff(i).cmp(&other.coeff(i));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl From<BigRational> for Polynomial {
    fn from(c: BigRational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::from_int(c)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.display_with("x"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Polynomial::from_integer_parts(intpoly::add(&self.coeffs, &rhs.coeffs), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let ma = &rhs.den / &g;
        let mb = &self.den / &g;
        let sum = intpoly::add(&intpoly::scale(&self.coeffs, &ma), &intpoly::scale(&rhs.coeffs, &mb));
        Polynomial::from_integer_parts(sum, &self.den * ma)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_integer_parts(intpoly::mul(&self.coeffs, &rhs.coeffs), &self.den * &rhs.den)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
