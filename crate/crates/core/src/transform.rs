//! Pullbacks along rational maps, exp-product twists and the projective
//! normal form.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::{change_to_infinity, valuation_and_lead, Polynomial, RationalFunction};
use crate::odeanalysis::{LinearODE, Place};

/// A non-constant map x ↦ f(x) of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    f: RationalFunction,
}

impl RationalMap {
    pub fn new(f: RationalFunction) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::DegenerateMap);
        }
        Ok(RationalMap { f })
    }

    pub fn function(&self) -> &RationalFunction {
        &self.f
    }

    /// `max(deg num, deg den)`
    pub fn degree(&self) -> usize {
        self.f.num().deg().max(self.f.den().deg()) as usize
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &RationalMap) -> RationalMap {
        RationalMap { f: self.f.compose(&inner.f) }
    }

    /// Image of a rational point (`None` for infinity).
    pub fn image_of_point(&self, p: Option<&BigRational>) -> Option<BigRational> {
        match p {
            Some(r) => self.f.eval(r),
            None => {
                let g = change_to_infinity(&self.f);
                g.eval(&BigRational::from_integer(0.into()))
            }
        }
    }

    /// Local degree of the map at a place of the source.
    pub fn ramification_index(&self, place: &Place) -> Result<usize> {
        let (g, q) = match place {
            Place::Infinity => (change_to_infinity(&self.f), Polynomial::x()),
            Place::Finite { min_poly, .. } => (self.f.clone(), min_poly.clone()),
        };
        let (v, _) = valuation_and_lead(&g, &q)?;
        if v < 0 {
            return Ok((-v) as usize);
        }
        // e = ord(g - g(p)) = 1 + ord(g')
        let (w, _) = valuation_and_lead(&g.derivative(), &q)?;
        Ok(1 + w as usize)
    }
}

/// A twist: solutions get multiplied by exp(∫r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistParameter {
    pub r: RationalFunction,
}

impl TwistParameter {
    pub fn new(r: RationalFunction) -> Self {
        TwistParameter { r }
    }

    /// True when r has at most simple poles (including at infinity), so the
    /// twist keeps a Fuchsian operator Fuchsian.
    pub fn is_regular(&self) -> bool {
        if self.r.is_zero() {
            return true;
        }
        let simple_finite = crate::exactalg::squarefree_factor(self.r.den()).map(|f| f.iter().all(|(_, m)| *m <= 1)).unwrap_or(true);
        simple_finite && self.r.degree().is_some_and(|d| d <= -1)
    }
}

/// Operator `P = sum p_j D^j` given by its coefficient list (leading included).
type Op = Vec<RationalFunction>;

/// `(D + s) ∘ P`
fn left_mul_d_plus(p: &Op, s: &RationalFunction) -> Op {
    let mut out = vec![RationalFunction::zero(); p.len() + 1];
    for (j, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out[j] = &out[j] + &c.derivative();
        out[j + 1] = &out[j + 1] + c;
        if !s.is_zero() {
            out[j] = &out[j] + &(s * c);
        }
    }
    out
}

pub fn exp_product(l: &LinearODE, t: &TwistParameter) -> LinearODE {
    if t.r.is_zero() {
        return l.clone();
    }
    let n = l.order();
    let minus_r = -&t.r;
    // sum_i a_i (D - r)^i
    let mut acc: Op = vec![RationalFunction::zero(); n + 1];
    let mut power: Op = vec![RationalFunction::one()];
    for i in 0..=n {
        let a = l.coeff(i);
        if !a.is_zero() {
            for (j, c) in power.iter().enumerate() {
                acc[j] = &acc[j] + &(&a * c);
            }
        }
        if i < n {
            power = left_mul_d_plus(&power, &minus_r);
        }
    }
    acc.truncate(n);
    LinearODE::new(acc).unwrap().with_var(l.var())
}

/// Twist that kills the order-(n-1) coefficient: r = a_{n-1}/n.
pub fn normalizing_twist(l: &LinearODE) -> TwistParameter {
    let n = l.order();
    let c = BigRational::new(BigInt::from(1), BigInt::from(n));
    TwistParameter::new(l.coeff(n - 1).scale(&c))
}

pub fn projective_normalize(l: &LinearODE) -> LinearODE {
    exp_product(l, &normalizing_twist(l))
}

pub fn projectively_equivalent(l1: &LinearODE, l2: &LinearODE) -> Result<bool> {
    if l1.order() != l2.order() {
        return Err(Error::OrderMismatch(l1.order(), l2.order()));
    }
    Ok(projective_normalize(l1).same_operator(&projective_normalize(l2)))
}

/// Monic operator annihilating `y ∘ f` for all solutions y of `l0`.
pub fn pullback(l0: &LinearODE, map: &RationalMap) -> LinearODE {
    let n = l0.order();
    let f = &map.f;
    let df = f.derivative();
    // d^k/dx^k Y(f) = sum_j c[k][j] Y^(j)(f)
    let mut rows: Vec<Vec<RationalFunction>> = vec![vec![RationalFunction::one()]];
    for k in 0..n {
        let prev = &rows[k];
        let mut row = vec![RationalFunction::zero(); k + 2];
        for (j, c) in prev.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            row[j] = &row[j] + &c.derivative();
            row[j + 1] = &row[j + 1] + &(c * &df);
        }
        rows.push(row);
    }
    // Y^(n) = -sum a_i(f) Y^(i)
    let top = rows[n][n].clone();
    let mut last: Vec<RationalFunction> = rows[n][..n].to_vec();
    for (i, a) in l0.coeffs().iter().enumerate() {
        if !a.is_zero() {
            last[i] = &last[i] - &(&top * &a.compose(f));
        }
    }
    // last + sum_k b_k rows[k] = 0, triangular with diagonal f'^k.
    let mut b = vec![RationalFunction::zero(); n];
    for k in (0..n).rev() {
        let mut s = last[k].clone();
        for (j, bj) in b.iter().enumerate().skip(k + 1) {
            if !bj.is_zero() && !rows[j][k].is_zero() {
                s = &s + &(bj * &rows[j][k]);
            }
        }
        b[k] = -(&s / &rows[k][k]);
    }
    LinearODE::new(b).unwrap().with_var(l0.var())
}
