use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::AlgebraError;

/// Element of Q[x]/(q) for a monic squarefree modulus q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueElement {
    modulus: Polynomial,
    value: Polynomial,
}

/// A nontrivial factorization `modulus = left * right` discovered while
/// inverting; both factors monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEvent {
    pub left: Polynomial,
    pub right: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion {
    Inverse(ResidueElement),
    Split(SplitEvent),
}

impl ResidueElement {
    /// Reduces `value` modulo `modulus`. The modulus is made monic; it must
    /// be non-constant.
    pub fn new(value: Polynomial, modulus: &Polynomial) -> Self {
        assert!(!modulus.is_constant(), "residue modulus must be non-constant");
        let modulus = modulus.monic();
        let value = if value.deg() >= modulus.deg() { value.rem(&modulus) } else { value };
        ResidueElement { modulus, value }
    }

    pub fn constant(c: BigRational, modulus: &Polynomial) -> Self {
        Self::new(Polynomial::constant(c), modulus)
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn value(&self) -> &Polynomial {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.value.as_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        ResidueElement { modulus: self.modulus.clone(), value: &self.value + &other.value }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        ResidueElement { modulus: self.modulus.clone(), value: &self.value - &other.value }
    }

    pub fn neg(&self) -> Self {
        ResidueElement { modulus: self.modulus.clone(), value: -&self.value }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::new(&self.value * &other.value, &self.modulus)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ResidueElement { modulus: self.modulus.clone(), value: self.value.scale(c) }
    }

    /// Characteristic polynomial of multiplication by this element, a monic
    /// polynomial of degree `deg q` over Q. Its rational roots are exactly
    /// the rational values the element takes at the roots of q.
    pub fn charpoly(&self) -> Polynomial {
        let n = self.modulus.deg() as usize;
        // Column j is value * x^j reduced mod q.
        let mut m = vec![vec![BigRational::zero(); n]; n];
        let mut col = self.value.clone();
        for j in 0..n {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
            col = col.shift(1).rem(&self.modulus);
        }
        faddeev_leverrier(&m)
    }
}

/// Characteristic polynomial det(tI - M) by the Faddeev-LeVerrier recursion.
fn faddeev_leverrier(m: &[Vec<BigRational>]) -> Polynomial {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let ident = |i: usize, j: usize| if i == j { BigRational::one() } else { BigRational::zero() };
    // M_k = M * M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M M_k)/k
    let mut mk: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| ident(i, j)).collect()).collect();
    for k in 1..=n {
        let am = matmul(m, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).fold(BigRational::zero(), |a, b| a + b);
        let c = -tr / BigRational::from_integer(k.into());
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    Polynomial::from_rationals(&coeffs)
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Inverse modulo the element's modulus, or the factorization of the
/// modulus exposed by a nontrivial gcd.
pub fn residue_invert(e: &ResidueElement) -> Result<Inversion, AlgebraError> {
    if e.is_zero() {
        return Err(AlgebraError::ZeroDivision);
    }
    let q = &e.modulus;
    let (g, s) = half_gcdex(&e.value, q);
    if !g.is_constant() {
        let right = q.div_exact(&g).expect("gcd divides modulus");
        return Ok(Inversion::Split(SplitEvent { left: g, right: right.monic() }));
    }
    Ok(Inversion::Inverse(ResidueElement::new(s, q)))
}

/// Returns (g, s) with g = gcd(a, b) monic and s*a = g mod b.
pub(crate) fn half_gcdex(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(), Polynomial::zero());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        let s2 = &s0 - &(&quot * &s1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let lc = r0.leading_coeff();
    let inv = BigRational::one() / lc;
    (r0.scale(&inv), s0.scale(&inv))
}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.value.display_with("a"), self.modulus.display_with("a"))
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.display_with("a"))
    }
}
