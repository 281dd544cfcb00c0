use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Polynomial;

/// Element of Q(x) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Panics if `den` is zero; see [`RationalFunction::checked_new`].
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        Self::checked_new(num, den).expect("rational function with zero denominator")
    }

    pub fn checked_new(num: Polynomial, den: Polynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = if den.is_constant() { Polynomial::one() } else { num.gcd(&den) };
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Some(Self::normalize_lc(num, den))
    }

    /// Like [`RationalFunction::new`], but first strips the given candidate
    /// factors from numerator and denominator by trial division. Cheap when
    /// the denominator's factors are known up front.
    pub fn new_with_factors(mut num: Polynomial, mut den: Polynomial, factors: &[Polynomial]) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        for f in factors.iter().filter(|f| !f.is_constant()) {
            loop {
                let Some(dq) = den.div_exact(f) else { break };
                let Some(nq) = num.div_exact(f) else { break };
                num = nq;
                den = dq;
            }
        }
        Self::new(num, den)
    }

    fn normalize_lc(num: Polynomial, den: Polynomial) -> Self {
        if den.is_monic() {
            return RationalFunction { num, den };
        }
        let lc = den.leading_coeff();
        let inv = BigRational::one() / lc;
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(c))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_constant() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// `deg num - deg den`; `None` for zero. Negative values mean the
    /// function vanishes at infinity.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.deg() - self.den.deg())
        }
    }

    /// Limit of `x^(-deg) f(x)` as x goes to infinity.
    pub fn leading_ratio(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        self.num.leading_coeff() / self.den.leading_coeff()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return RationalFunction { num: self.num.derivative(), den: self.den.clone() };
        }
        // (n/d)' = (n' d - n d') / d^2; with g = gcd(d, d') the result
        // reduces to (n' (d/g) - n (d'/g)) / (d * d/g).
        let d1 = self.den.derivative();
        let g = self.den.gcd(&d1);
        let dg = self.den.div_exact(&g).unwrap();
        let d1g = d1.div_exact(&g).unwrap();
        let num = &(&self.num.derivative() * &dg) - &(&self.num * &d1g);
        Self::new(num, &self.den * &dg)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return Self::one() / self.pow(-e);
        }
        RationalFunction { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        Some(self * &RationalFunction { num: rhs.den.clone(), den: rhs.num.clone() }.renormalized())
    }

    pub fn inverse(&self) -> Option<Self> {
        Self::one().checked_div(self)
    }

    fn renormalized(self) -> Self {
        Self::normalize_lc(self.num, self.den)
    }

    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    /// Substitution `self(inner(x))`.
    pub fn compose(&self, inner: &RationalFunction) -> Self {
        let (p, q) = (&inner.num, &inner.den);
        // N(p/q) = hom(N)(p, q) / q^deg N
        let hom = |f: &Polynomial| -> Polynomial {
            let n = f.deg().max(0) as usize;
            let mut acc = Polynomial::zero();
            let mut qpow = Polynomial::one();
            // Horner on the homogenized form, top coefficient first.
            for i in (0..=n).rev() {
                acc = &(&acc * p) + &qpow.scale(&f.coeff(i));
                if i > 0 {
                    qpow = &qpow * q;
                }
            }
            acc
        };
        let dn = self.num.deg().max(0);
        let dd = self.den.deg().max(0);
        let mut num = hom(&self.num);
        let mut den = hom(&self.den);
        if dd > dn {
            num = &num * &q.pow((dd - dn) as u32);
        } else if dn > dd {
            den = &den * &q.pow((dn - dd) as u32);
        }
        Self::new(num, den)
    }

    /// Grammar-compatible text with the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.display_with(var);
        }
        let n = self.num.display_with(var);
        let d = self.den.display_with(var);
        let n = if self.num.is_constant() && !n.starts_with('-') { n } else { format!("({n})") };
        let d = if self.den.is_constant() { d } else { format!("({d})") };
        format!("{n}/{d}")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.display_with("x"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::from_int(c)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RationalFunction::new(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return RationalFunction { num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RationalFunction { num, den: self.den.clone() };
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RationalFunction { num, den: &self.den * &rhs.den };
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        // Only factors of g can cancel.
        let h = num.gcd(&g);
        if h.is_one() {
            return RationalFunction { num, den: &(&b1 * &d1) * &g };
        }
        let num = num.div_exact(&h).unwrap();
        let gh = g.div_exact(&h).unwrap();
        RationalFunction::normalize_lc(num, &(&b1 * &d1) * &gh)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let cross = |n: &Polynomial, d: &Polynomial| -> (Polynomial, Polynomial) {
            if d.is_constant() || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cross(&self.num, &rhs.den);
        let (n2, d1) = cross(&rhs.num, &self.den);
        RationalFunction::normalize_lc(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
