//! Monic linear operators over Q(x): singular places, indicial polynomials,
//! local exponents and the Δ / e invariants.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{
    rational_roots, squarefree_factor, squarefree_part, valuation_and_lead, AlgebraError, Polynomial, RationalFunction,
    ResidueElement,
};

/// A point of the projective line over Q̄, up to Galois conjugation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    /// Roots of a monic squarefree polynomial; `root` is set for linear ones.
    Finite { min_poly: Polynomial, root: Option<BigRational> },
    Infinity,
}

impl Place {
    pub fn rational(r: BigRational) -> Self {
        let min_poly = Polynomial::from_rationals(&[-r.clone(), BigRational::one()]);
        Place::Finite { min_poly, root: Some(r) }
    }

    /// Place for a non-constant squarefree polynomial (made monic).
    pub fn finite(q: &Polynomial) -> Self {
        assert!(!q.is_constant(), "place polynomial must be non-constant");
        let q = q.monic();
        if q.deg() == 1 {
            return Place::rational(-q.constant_term());
        }
        Place::Finite { min_poly: q, root: None }
    }

    pub fn infinity() -> Self {
        Place::Infinity
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// Number of geometric points.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite { min_poly, .. } => min_poly.deg() as usize,
            Place::Infinity => 1,
        }
    }

    pub fn min_poly(&self) -> Option<&Polynomial> {
        match self {
            Place::Finite { min_poly, .. } => Some(min_poly),
            Place::Infinity => None,
        }
    }

    pub fn rational_point(&self) -> Option<&BigRational> {
        match self {
            Place::Finite { root, .. } => root.as_ref(),
            Place::Infinity => None,
        }
    }

    pub fn display_with(&self, var: &str) -> String {
        match self {
            Place::Finite { root: Some(r), .. } => r.to_string(),
            Place::Finite { min_poly, .. } => min_poly.display_with(var),
            Place::Infinity => "infinity".to_string(),
        }
    }
}

impl Ord for Place {
    /// Rational points ascending, then algebraic places by minimal
    /// polynomial, infinity last.
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(p: &Place) -> u8 {
            match p {
                Place::Finite { root: Some(_), .. } => 0,
                Place::Finite { .. } => 1,
                Place::Infinity => 2,
            }
        }
        match (self, other) {
            (Place::Finite { root: Some(a), .. }, Place::Finite { root: Some(b), .. }) => a.cmp(b),
            (Place::Finite { min_poly: a, root: None }, Place::Finite { min_poly: b, root: None }) => a.canonical_cmp(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

/// `D^n + a_{n-1} D^{n-1} + ... + a_0`, stored as `[a_0, ..., a_{n-1}]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearODE {
    coeffs: Vec<RationalFunction>,
    var: String,
}

impl LinearODE {
    pub fn new(coeffs: Vec<RationalFunction>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyOperator);
        }
        Ok(LinearODE { coeffs, var: "x".to_string() })
    }

    /// Normalizes `leading * D^n + sum coeffs[i] D^i` to monic form.
    pub fn with_leading(leading: &RationalFunction, coeffs: Vec<RationalFunction>) -> Result<Self> {
        let inv = leading.inverse().ok_or(Error::ZeroLeadingCoefficient)?;
        Self::new(coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| RationalFunction::from_int(c)).collect()).unwrap()
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// `a_i`, with `a_n = 1`.
    pub fn coeff(&self, i: usize) -> RationalFunction {
        if i == self.order() {
            RationalFunction::one()
        } else {
            self.coeffs[i].clone()
        }
    }

    /// Coefficient-wise equality, ignoring the variable name.
    pub fn same_operator(&self, other: &LinearODE) -> bool {
        self.coeffs == other.coeffs
    }

    /// `L(y)` for a rational function `y`.
    pub fn apply(&self, y: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        let mut dy = y.clone();
        for i in 0..=self.order() {
            if i == self.order() {
                acc = &acc + &dy;
            } else if !self.coeffs[i].is_zero() {
                acc = &acc + &(&self.coeffs[i] * &dy);
            }
            if i < self.order() {
                dy = dy.derivative();
            }
        }
        acc
    }

    pub fn display(&self) -> String {
        let v = &self.var;
        let mut parts = vec![format!("D^{}", self.order())];
        for i in (0..self.order()).rev() {
            if !self.coeffs[i].is_zero() {
                parts.push(format!("({})*D^{i}", self.coeffs[i].display_with(v)));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearODE({})", self.display())
    }
}

/// Per-place exponent data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentReport {
    pub place: Place,
    /// Ascending, with multiplicity.
    pub exponents: Vec<BigRational>,
    pub delta: BigRational,
    pub ram_index: u64,
    pub apparent: bool,
}

impl ExponentReport {
    fn from_exponents(place: Place, mut exponents: Vec<BigRational>) -> Self {
        exponents.sort();
        let n = exponents.len();
        let min = exponents[0].clone();
        let max = exponents[n - 1].clone();
        let delta = &max - &min - BigRational::from_integer(BigInt::from(n - 1));
        let e = exponents.iter().fold(BigInt::one(), |acc, a| acc.lcm((a - &min).denom()));
        let apparent = exponents.iter().all(|a| a.is_integer() && !a.is_negative()) && exponents.windows(2).all(|w| w[0] != w[1]);
        ExponentReport { place, exponents, delta, ram_index: e.to_u64().expect("ramification index fits in u64"), apparent }
    }
}

/// Indicial polynomial with coefficients in the residue field of a place,
/// lowest degree first. At infinity the residue field is Q (modulus `x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialPolynomial {
    pub place: Place,
    pub coefficients: Vec<ResidueElement>,
}

impl IndicialPolynomial {
    /// `ind(r) = sum_j alpha^j P_j(r)`: returns the P_j.
    pub fn coordinates(&self) -> Vec<Polynomial> {
        let k = self.coefficients[0].modulus().deg() as usize;
        (0..k)
            .map(|j| Polynomial::from_rationals(&self.coefficients.iter().map(|c| c.value().coeff(j)).collect::<Vec<_>>()))
            .collect()
    }

    /// The polynomial over Q, when every coefficient is rational.
    pub fn rational(&self) -> Option<Polynomial> {
        let cs: Option<Vec<BigRational>> = self.coefficients.iter().map(|c| c.as_rational().or_else(|| c.is_zero().then(BigRational::zero))).collect();
        cs.map(|c| Polynomial::from_rationals(&c))
    }

    /// Gcd of the coordinate polynomials; its rational roots are the
    /// rational exponents.
    pub fn rational_part(&self) -> Polynomial {
        self.coordinates().iter().fold(Polynomial::zero(), |g, p| g.gcd(p))
    }
}

/// `r (r-1) ... (r-i+1)`
pub fn falling_factorial(i: usize) -> Polynomial {
    (0..i).fold(Polynomial::one(), |acc, k| &acc * &Polynomial::from_ints(&[-(k as i64), 1]))
}

fn rat_usize(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Pairwise coprime squarefree polynomials whose products give the
/// squarefree parts of all inputs.
fn coprime_basis(inputs: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for p in inputs {
        let mut p = squarefree_part(&p);
        let mut next = Vec::with_capacity(basis.len() + 2);
        for b in basis {
            if p.is_constant() {
                next.push(b);
                continue;
            }
            let g = p.gcd(&b);
            if g.is_constant() {
                next.push(b);
            } else {
                let rest = b.div_exact(&g).unwrap();
                p = p.div_exact(&g).unwrap();
                if !rest.is_constant() {
                    next.push(rest.monic());
                }
                next.push(g);
            }
        }
        if !p.is_constant() {
            next.push(p.monic());
        }
        basis = next;
    }
    basis
}

/// Residues `c_i` of `q^{n-i} a_i / q'^{n-i}` at a finite place.
fn finite_indicial_coeffs(l: &LinearODE, q: &Polynomial, place: &Place) -> Result<Vec<ResidueElement>> {
    let n = l.order();
    let dq = ResidueElement::new(q.derivative(), q);
    let dq_inv = match crate::exactalg::residue_invert(&dq)? {
        crate::exactalg::Inversion::Inverse(inv) => inv,
        crate::exactalg::Inversion::Split(s) => return Err(AlgebraError::Split(s).into()),
    };
    let mut out = Vec::with_capacity(n);
    for (i, a) in l.coeffs.iter().enumerate() {
        let zero = ResidueElement::new(Polynomial::zero(), q);
        if a.is_zero() {
            out.push(zero);
            continue;
        }
        let (v, lead) = valuation_and_lead(a, q)?;
        let bound = -((n - i) as i64);
        if v < bound {
            return Err(Error::NotFuchsianAt(place.clone()));
        }
        if v > bound {
            out.push(zero);
            continue;
        }
        let mut c = lead;
        for _ in 0..n - i {
            c = c.mul(&dq_inv);
        }
        out.push(c);
    }
    Ok(out)
}

/// `A_i = lim x^{n-i} a_i` at infinity, or `NotFuchsianAt(∞)`.
fn infinity_coeffs(l: &LinearODE) -> Result<Vec<BigRational>> {
    let n = l.order() as i64;
    l.coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| match a.degree() {
            None => Ok(BigRational::zero()),
            Some(d) if d > -(n - i as i64) => Err(Error::NotFuchsianAt(Place::Infinity)),
            Some(d) if d == -(n - i as i64) => Ok(a.leading_ratio()),
            Some(_) => Ok(BigRational::zero()),
        })
        .collect()
}

pub fn indicial_polynomial(l: &LinearODE, place: &Place) -> Result<IndicialPolynomial> {
    let n = l.order();
    match place {
        Place::Infinity => {
            let a = infinity_coeffs(l)?;
            // ind(rho) = (-1)^n sum A_i [-rho]_i, with A_n = 1
            let neg = Polynomial::from_ints(&[0, -1]);
            let mut poly = Polynomial::zero();
            for i in 0..=n {
                let ai = if i == n { BigRational::one() } else { a[i].clone() };
                if !ai.is_zero() {
                    poly = &poly + &falling_factorial(i).compose(&neg).scale(&ai);
                }
            }
            if n % 2 == 1 {
                poly = -poly;
            }
            let t = Polynomial::x();
            let coefficients = (0..=n).map(|k| ResidueElement::constant(poly.coeff(k), &t)).collect();
            Ok(IndicialPolynomial { place: place.clone(), coefficients })
        }
        Place::Finite { min_poly, .. } => {
            let c = finite_indicial_coeffs(l, min_poly, place)?;
            let mut coefficients: Vec<ResidueElement> = (0..=n).map(|_| ResidueElement::new(Polynomial::zero(), min_poly)).collect();
            for i in 0..=n {
                let ff = falling_factorial(i);
                for k in 0..=i {
                    let fk = ff.coeff(k);
                    if fk.is_zero() {
                        continue;
                    }
                    let term = if i == n { ResidueElement::constant(fk, min_poly) } else { c[i].scale(&fk) };
                    coefficients[k] = coefficients[k].add(&term);
                }
            }
            Ok(IndicialPolynomial { place: place.clone(), coefficients })
        }
    }
}

/// Rational roots (with multiplicity) common to all coordinates of the
/// indicial polynomial.
pub fn rational_exponents(l: &LinearODE, place: &Place) -> Result<Vec<BigRational>> {
    let ind = indicial_polynomial(l, place)?;
    let g = ind.rational_part();
    let mut out = Vec::new();
    for (r, m) in rational_roots(&g)? {
        out.extend(std::iter::repeat(r).take(m));
    }
    Ok(out)
}

pub fn local_exponents(l: &LinearODE, place: &Place) -> Result<ExponentReport> {
    let e = rational_exponents(l, place)?;
    if e.len() < l.order() {
        return Err(Error::NonRationalExponent { place: place.clone(), order: l.order() });
    }
    Ok(ExponentReport::from_exponents(place.clone(), e))
}

/// The operator in `t = 1/x`, using `D_x = -t^2 D_t`.
pub fn transform_at_infinity(l: &LinearODE) -> LinearODE {
    let n = l.order();
    // D_x^k = sum_j s[k][j] t^{k+j} D_t^j
    let mut s: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for k in 0..n {
        let prev = &s[k];
        let mut row = vec![BigInt::zero(); k + 2];
        for (j, c) in prev.iter().enumerate() {
            row[j] -= c * BigInt::from(k + j);
            row[j + 1] -= c;
        }
        s.push(row);
    }
    let a_t: Vec<RationalFunction> = (0..=n).map(|i| crate::exactalg::change_to_infinity(&l.coeff(i))).collect();
    let mut coeffs = Vec::with_capacity(n);
    let lead = RationalFunction::from_poly(Polynomial::monomial(BigRational::from_integer(s[n][n].clone()), 2 * n));
    for j in 0..n {
        let mut acc = RationalFunction::zero();
        for i in j..=n {
            let c = &s[i][j];
            if c.is_zero() || a_t[i].is_zero() {
                continue;
            }
            let mono = RationalFunction::from_poly(Polynomial::monomial(BigRational::from_integer(c.clone()), i + j));
            acc = &acc + &(&a_t[i] * &mono);
        }
        coeffs.push(&acc / &lead);
    }
    LinearODE { coeffs, var: "t".to_string() }
}

fn infinity_is_singular(l: &LinearODE) -> bool {
    let Ok(e) = rational_exponents(l, &Place::Infinity) else {
        return true;
    };
    let ordinary: Vec<BigRational> = (0..l.order()).map(rat_usize).collect();
    if e != ordinary {
        return true;
    }
    transform_at_infinity(l).coeffs.iter().any(|c| c.den().constant_term().is_zero())
}

/// Splits `q` along rational values taken by the indicial residues, so that
/// exponents become uniform over each resulting place (dynamic evaluation).
fn refine_place(l: &LinearODE, q: Polynomial, out: &mut Vec<Place>) -> Result<()> {
    let mut work = vec![q];
    while let Some(q) = work.pop() {
        if q.deg() == 1 {
            out.push(Place::finite(&q));
            continue;
        }
        let place = Place::finite(&q);
        let coeffs = match finite_indicial_coeffs(l, &q, &place) {
            Ok(c) => c,
            Err(Error::Algebra(AlgebraError::Split(s))) => {
                work.push(s.left);
                work.push(s.right);
                continue;
            }
            Err(Error::NotFuchsianAt(_)) => {
                out.push(place);
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut split = None;
        'search: for c in coeffs.iter().filter(|c| !c.value().is_constant()) {
            for (t, _) in rational_roots(&c.charpoly())? {
                let g = q.gcd(&(c.value() - &Polynomial::constant(t)));
                if !g.is_constant() && g.deg() < q.deg() {
                    split = Some(g);
                    break 'search;
                }
            }
        }
        match split {
            Some(g) => {
                work.push(q.div_exact(&g).unwrap().monic());
                work.push(g);
            }
            None => out.push(place),
        }
    }
    Ok(())
}

pub fn singular_places(l: &LinearODE) -> Result<Vec<Place>> {
    let basis = coprime_basis(l.coeffs.iter().filter(|a| !a.is_polynomial()).map(|a| a.den().clone()));
    let mut places = Vec::new();
    for b in basis {
        let roots = rational_roots(&b)?;
        let mut rest = b.clone();
        for (r, _) in roots {
            let lin = Polynomial::from_rationals(&[-r.clone(), BigRational::one()]);
            rest = rest.div_exact(&lin).unwrap();
            places.push(Place::rational(r));
        }
        if !rest.is_constant() {
            refine_place(l, rest.monic(), &mut places)?;
        }
    }
    if infinity_is_singular(l) {
        places.push(Place::Infinity);
    }
    places.sort();
    Ok(places)
}

pub fn is_fuchsian(l: &LinearODE) -> bool {
    let n = l.order();
    for (i, a) in l.coeffs.iter().enumerate() {
        if a.is_polynomial() {
            continue;
        }
        match squarefree_factor(a.den()) {
            Ok(f) if f.iter().all(|(_, m)| *m <= n - i) => {}
            _ => return false,
        }
    }
    infinity_coeffs(l).is_ok()
}

pub fn exponent_reports(l: &LinearODE) -> Result<Vec<ExponentReport>> {
    singular_places(l)?.iter().map(|p| local_exponents(l, p)).collect()
}

pub fn delta_total(l: &LinearODE) -> Result<BigRational> {
    Ok(exponent_reports(l)?.iter().map(|r| &r.delta * rat_usize(r.place.degree())).fold(BigRational::zero(), |a, b| a + b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub ok: bool,
}

/// `sum deg(p) * sum E(L,p) = n(n-1)/2 * (sum deg(p) - 2)` over the
/// singular places together with infinity.
pub fn fuchs_relation_check(l: &LinearODE) -> Result<FuchsCheck> {
    let mut reports = exponent_reports(l)?;
    if !reports.iter().any(|r| r.place.is_infinity()) {
        reports.push(local_exponents(l, &Place::Infinity)?);
    }
    let n = l.order();
    let mut lhs = BigRational::zero();
    let mut degs = 0usize;
    for r in &reports {
        let s: BigRational = r.exponents.iter().fold(BigRational::zero(), |a, b| a + b);
        lhs += s * rat_usize(r.place.degree());
        degs += r.place.degree();
    }
    let rhs = rat_usize(n * (n - 1) / 2) * (rat_usize(degs) - rat_usize(2));
    Ok(FuchsCheck { ok: lhs == rhs, lhs, rhs })
}
