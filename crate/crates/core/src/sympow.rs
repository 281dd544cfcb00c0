//! Symmetric powers of second-order operators, rational solutions, and the
//! ruled surfaces attached to the standard equations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactalg::linalg::nullspace;
use crate::exactalg::{rat, Polynomial, RationalFunction};
use crate::odeanalysis::{is_fuchsian, rational_exponents, singular_places, LinearODE, Place};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    A4,
    S4,
    A5,
    /// Binary dihedral group of order 4n.
    D2n(u32),
}

impl FromStr for Group {
    type Err = Error;

    /// Accepts `A4`, `S4`, `A5` and `D2n:<n>` (n ≥ 2).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A4" => Ok(Group::A4),
            "S4" => Ok(Group::S4),
            "A5" => Ok(Group::A5),
            _ => s
                .strip_prefix("D2n:")
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 2)
                .map(Group::D2n)
                .ok_or_else(|| Error::UnknownGroup(s.to_string())),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::A4 => f.write_str("A4"),
            Group::S4 => f.write_str("S4"),
            Group::A5 => f.write_str("A5"),
            Group::D2n(n) => write!(f, "D2n:{n}"),
        }
    }
}

/// Symmetric-power degree used when none is given: the smallest degree
/// reproducing the known ruled surfaces (see the README table).
pub fn default_degree(g: Group) -> usize {
    match g {
        Group::A4 => 24,
        Group::S4 => 24,
        Group::A5 => 60,
        Group::D2n(n) if n % 2 == 0 => 2 * n as usize,
        Group::D2n(n) => 4 * n as usize,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardEquationSpec {
    pub group: Group,
    pub lambda: BigRational,
    pub mu: BigRational,
    pub nu: BigRational,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl StandardEquationSpec {
    pub fn new(group: Group) -> Self {
        let (l, m, n) = match group {
            Group::A4 => (rat(1, 3), rat(1, 2), rat(1, 3)),
            Group::S4 => (rat(1, 3), rat(1, 2), rat(1, 4)),
            Group::A5 => (rat(1, 3), rat(1, 2), rat(1, 5)),
            Group::D2n(k) => (rat(1, 2), rat(1, 2), rat(1, k as i64)),
        };
        let one = BigRational::one();
        let four = rat(4, 1);
        let a = (&one - &l * &l) / &four;
        let b = (&one - &m * &m) / &four;
        let c = (&l * &l + &m * &m - &one - &n * &n) / &four;
        StandardEquationSpec { group, lambda: l, mu: m, nu: n, a, b, c }
    }

    /// `y'' + (a/x^2 + b/(x-1)^2 + c/(x(x-1))) y`
    pub fn operator(&self) -> LinearODE {
        let x = Polynomial::x();
        let xm1 = Polynomial::from_ints(&[-1, 1]);
        let term = |c: &BigRational, den: Polynomial| RationalFunction::new(Polynomial::constant(c.clone()), den);
        let a0 = &(&term(&self.a, x.pow(2)) + &term(&self.b, xm1.pow(2))) + &term(&self.c, &x * &xm1);
        LinearODE::new(vec![a0, RationalFunction::zero()]).unwrap()
    }
}

pub fn standard_equation(g: Group) -> LinearODE {
    StandardEquationSpec::new(g).operator()
}

/// For `y'' - f y`, the operator `y'' - (f'/f) y' - f y` satisfied by y'.
pub fn derivative_equation(l: &LinearODE) -> Result<LinearODE> {
    if l.order() != 2 {
        return Err(Error::WrongOrder { expected: 2, got: l.order() });
    }
    if !l.coeffs()[1].is_zero() {
        return Err(Error::NotInReducedForm);
    }
    let f = -&l.coeffs()[0];
    if f.is_zero() {
        return Err(Error::ZeroPotential);
    }
    let log_der = &f.derivative() / &f;
    Ok(LinearODE::new(vec![-f, -log_der]).unwrap().with_var(l.var()))
}

fn rat_int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Monic operator annihilating all d-fold products of solutions of an
/// order-2 operator.
pub fn symmetric_power(l: &LinearODE, d: usize) -> Result<LinearODE> {
    if l.order() != 2 {
        return Err(Error::WrongOrder { expected: 2, got: l.order() });
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let (a0, a1) = (&l.coeffs()[0], &l.coeffs()[1]);
    // Work with W_j = D^j v_j where z^(j) = sum_k v_j[k] y^(d-k) y'^k and
    // D clears all denominators; every W_j[k] is then a polynomial.
    let den = lcm(a0.den(), a1.den());
    let big_a0 = a0.num() * &den.div_exact(a0.den()).unwrap();
    let big_a1 = a1.num() * &den.div_exact(a1.den()).unwrap();
    let dden = den.derivative();
    let mut w: Vec<Vec<Polynomial>> = Vec::with_capacity(d + 2);
    let mut w0 = vec![Polynomial::zero(); d + 1];
    w0[0] = Polynomial::one();
    w.push(w0);
    for j in 0..=d {
        let prev = &w[j];
        let mut next = vec![Polynomial::zero(); d + 1];
        for (k, slot) in next.iter_mut().enumerate().take((j + 1).min(d) + 1) {
            let mut acc = Polynomial::zero();
            let cur = &prev[k];
            if !cur.is_zero() {
                acc = &(&den * &cur.derivative()) - &(&dden * cur).scale(&rat_int(j));
                if !big_a1.is_zero() && k > 0 {
                    acc = &acc - &(&big_a1 * cur).scale(&rat_int(k));
                }
            }
            if k > 0 && !prev[k - 1].is_zero() {
                acc = &acc + &(&den * &prev[k - 1]).scale(&rat_int(d - k + 1));
            }
            if k < d && !prev[k + 1].is_zero() && !big_a0.is_zero() {
                acc = &acc - &(&big_a0 * &prev[k + 1]).scale(&rat_int(k + 1));
            }
            *slot = acc;
        }
        w.push(next);
    }
    // Back substitution: B_k = -(W_{d+1}[k] + sum_{j>k} B_j W_j[k]) / W_k[k],
    // with b_k = B_k / D^(d+1-k).
    let factors: Vec<Polynomial> = crate::exactalg::squarefree_factor(&den)?.into_iter().map(|(f, _)| f).collect();
    let mut big_b: Vec<Polynomial> = vec![Polynomial::zero(); d + 1];
    let mut exact = true;
    for k in (0..=d).rev() {
        let mut s = w[d + 1][k].clone();
        for j in k + 1..=d {
            if !big_b[j].is_zero() && !w[j][k].is_zero() {
                s = &s + &(&big_b[j] * &w[j][k]);
            }
        }
        match (-s).div_exact(&w[k][k]) {
            Some(q) => big_b[k] = q,
            None => {
                exact = false;
                break;
            }
        }
    }
    let coeffs: Vec<RationalFunction> = if exact {
        (0..=d).map(|k| RationalFunction::new_with_factors(big_b[k].clone(), den.pow((d + 1 - k) as u32), &factors)).collect()
    } else {
        // Irregular input: fall back to arithmetic in Q(x).
        let v = |j: usize, k: usize| RationalFunction::new_with_factors(w[j][k].clone(), den.pow(j as u32), &factors);
        let mut b = vec![RationalFunction::zero(); d + 1];
        for k in (0..=d).rev() {
            let mut s = v(d + 1, k);
            for j in k + 1..=d {
                s = &s + &(&b[j] * &v(j, k));
            }
            b[k] = -(&s / &v(k, k));
        }
        b
    };
    Ok(LinearODE::new(coeffs).unwrap().with_var(l.var()))
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let g = a.gcd(b);
    (a * &b.div_exact(&g).unwrap()).monic()
}

/// Rational solutions of an operator, as a basis over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasis {
    /// Symmetric-power degree the basis belongs to, if any.
    pub degree: Option<usize>,
    pub basis: Vec<RationalFunction>,
}

impl InvariantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Denominator and numerator-degree bounds for rational solutions:
/// `Some((den, N))` or `None` when no nonzero solution can exist.
pub fn solution_bounds(l: &LinearODE) -> Result<Option<(Polynomial, i64)>> {
    if !is_fuchsian(l) {
        let place = singular_places(l)
            .ok()
            .and_then(|ps| ps.into_iter().find(|p| crate::odeanalysis::indicial_polynomial(l, p).is_err()))
            .unwrap_or(Place::Infinity);
        return Err(Error::NotFuchsian(place));
    }
    let mut den = Polynomial::one();
    let mut min_inf = None;
    let places = singular_places(l)?;
    for p in places.iter().chain(std::iter::once(&Place::Infinity)) {
        if p.is_infinity() && min_inf.is_some() {
            continue;
        }
        let ints: Vec<BigInt> = rational_exponents(l, p)?.into_iter().filter(|r| r.is_integer()).map(|r| r.to_integer()).collect();
        let Some(m) = ints.iter().min().cloned() else {
            return Ok(None);
        };
        match p {
            Place::Infinity => min_inf = Some(m),
            Place::Finite { min_poly, .. } => {
                if m.is_negative() {
                    let e: u32 = (-m).try_into().expect("denominator exponent fits in u32");
                    den = &den * &min_poly.pow(e);
                }
            }
        }
    }
    let min_inf: i64 = min_inf.unwrap().try_into().expect("exponent fits in i64");
    let n = den.deg() - min_inf;
    Ok((n >= 0).then_some((den, n)))
}

pub fn rational_solutions(l: &LinearODE) -> Result<InvariantBasis> {
    let Some((den, nmax)) = solution_bounds(l)? else {
        return Ok(InvariantBasis { degree: None, basis: Vec::new() });
    };
    let n = l.order();
    let places = singular_places(l)?;
    // Q = product of finite singular places; a_i Q^(n-i) is a polynomial.
    let q = places.iter().filter_map(|p| p.min_poly()).fold(Polynomial::one(), |acc, m| &acc * m);
    let dq = q.derivative();
    // (1/den)^(m) = H_m / (den * q^m), H_{m+1} = H_m' q - H_m T - m H_m q'
    // where T = q den'/den.
    let t = {
        let mut t = Polynomial::zero();
        for p in &places {
            let Some(m) = p.min_poly() else { continue };
            let (e, _) = if den.is_constant() { (0, Polynomial::zero()) } else { den.multiplicity(m) };
            if e > 0 {
                let cof = q.div_exact(m).unwrap();
                t = &t + &(&m.derivative() * &cof).scale(&rat_int(e));
            }
        }
        t
    };
    let mut h = vec![Polynomial::one()];
    for m in 0..n {
        let hm = &h[m];
        let next = &(&(&hm.derivative() * &q) - &(hm * &t)) - &(hm * &dq).scale(&rat_int(m));
        h.push(next);
    }
    let a_hat: Vec<Polynomial> = (0..=n)
        .map(|i| {
            let a = l.coeff(i);
            let scale = q.pow((n - i) as u32).div_exact(a.den()).expect("Fuchsian coefficient");
            a.num() * &scale
        })
        .collect();
    // Sum_j g_j P^(j) = 0 with g_j Q^(n-j) = sum_i C(i,j) a_hat_i H_{i-j};
    // multiply through by Q^n: G_j = Q^j * that.
    let mut g: Vec<Polynomial> = Vec::with_capacity(n + 1);
    let mut qpow = Polynomial::one();
    for j in 0..=n {
        let mut s = Polynomial::zero();
        let mut binom = BigInt::one();
        for i in j..=n {
            if i > j {
                binom = binom * BigInt::from(i) / BigInt::from(i - j);
            }
            if !a_hat[i].is_zero() && !h[i - j].is_zero() {
                s = &s + &(&a_hat[i] * &h[i - j]).scale(&BigRational::from_integer(binom.clone()));
            }
        }
        g.push(&s * &qpow);
        qpow = &qpow * &q;
    }
    let common = g.iter().fold(Polynomial::zero(), |acc, p| acc.gcd(p));
    if !common.is_zero() && !common.is_one() {
        for p in g.iter_mut() {
            *p = p.div_exact(&common).unwrap();
        }
    }
    let basis = polynomial_solutions(&g, nmax as usize)
        .into_iter()
        .map(|p| RationalFunction::new(p, den.clone()))
        .collect();
    Ok(InvariantBasis { degree: None, basis })
}

/// Polynomials P of degree ≤ `nmax` with `sum_j g[j] P^(j) = 0`.
fn polynomial_solutions(g: &[Polynomial], nmax: usize) -> Vec<Polynomial> {
    let cols: Vec<Polynomial> = (0..=nmax)
        .map(|m| {
            let mut acc = Polynomial::zero();
            let mut ff = BigInt::one();
            for (j, gj) in g.iter().enumerate() {
                if j > m {
                    break;
                }
                if j > 0 {
                    ff *= BigInt::from(m + 1 - j);
                }
                if !gj.is_zero() {
                    acc = &acc + &gj.shift(m - j).scale(&BigRational::from_integer(ff.clone()));
                }
            }
            acc
        })
        .collect();
    let nrows = cols.iter().map(|c| (c.deg() + 1) as usize).max().unwrap_or(0);
    let rows: Vec<Vec<BigRational>> = (0..nrows).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
    nullspace(&rows, nmax + 1).into_iter().map(|v| Polynomial::from_rationals(&v)).collect()
}

/// Degree of the line bundle defined by a basis of sections, and the
/// coprime polynomial tuple realizing it.
pub fn line_bundle_degree(basis: &InvariantBasis) -> Result<(i64, Vec<Polynomial>)> {
    if basis.basis.is_empty() || basis.basis.iter().any(|f| f.is_zero()) {
        return Err(Error::EmptyBasis);
    }
    let common = basis.basis.iter().fold(Polynomial::one(), |acc, f| lcm(&acc, f.den()));
    let polys: Vec<Polynomial> = basis.basis.iter().map(|f| f.num() * &common.div_exact(f.den()).unwrap()).collect();
    let g = polys.iter().fold(Polynomial::zero(), |acc, p| acc.gcd(p));
    let gens: Vec<Polynomial> = polys.iter().map(|p| p.div_exact(&g).unwrap()).collect();
    let deg = gens.iter().map(|p| p.deg()).max().unwrap();
    Ok((deg, gens))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuledSurfaceDescriptor {
    pub group: Group,
    pub degree: usize,
    pub deg_l: i64,
    pub deg_l_prime: i64,
    pub normalized_twist: i64,
    pub generators_l: Vec<Polynomial>,
    pub generators_l_prime: Vec<Polynomial>,
}

/// Degree and generators of the line bundle from the degree-d invariants.
pub fn invariant_bundle(l: &LinearODE, d: usize, which: &'static str) -> Result<(i64, Vec<Polynomial>)> {
    let s = symmetric_power(l, d)?;
    let mut b = rational_solutions(&s)?;
    b.degree = Some(d);
    if b.basis.is_empty() {
        return Err(Error::NoInvariants { which, degree: d });
    }
    line_bundle_degree(&b)
}

pub fn ruled_surface(spec: &StandardEquationSpec, d: usize) -> Result<RuledSurfaceDescriptor> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let l = spec.operator();
    let (deg_l, generators_l) = invariant_bundle(&l, d, "L")?;
    let (deg_l_prime, generators_l_prime) = invariant_bundle(&derivative_equation(&l)?, d, "L'")?;
    Ok(RuledSurfaceDescriptor {
        group: spec.group,
        degree: d,
        deg_l,
        deg_l_prime,
        normalized_twist: (deg_l_prime - deg_l).abs(),
        generators_l,
        generators_l_prime,
    })
}
