//! Random operator generators and series helpers shared by the
//! integration tests.
#![allow(dead_code)]

use fuchsian_core::exactalg::{rat, BigRational, Polynomial, RationalFunction};
use fuchsian_core::odeanalysis::{LinearODE, Place};
use fuchsian_core::transform::{exp_product, RationalMap, TwistParameter};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn linear(p: &BigRational) -> Polynomial {
    Polynomial::from_rationals(&[-p.clone(), BigRational::one()])
}

fn small_rat(r: &mut StdRng, num: i64, dens: &[i64]) -> BigRational {
    rat(r.gen_range(-num..=num), *dens.choose(r).unwrap())
}

/// An order-2 Fuchsian operator with prescribed exponents.
#[derive(Clone, Debug)]
pub struct Riemann {
    pub op: LinearODE,
    /// (point, sorted exponents) for the finite singular points.
    pub finite: Vec<(BigRational, Vec<BigRational>)>,
    pub infinity: Vec<BigRational>,
}

/// `y'' + sum (1-a_i-b_i)/(x-p_i) y' + (sum a_i b_i/(x-p_i)^2 + c_i/(x-p_i)) y`
/// with `sum c_i = 0` and `sum (a_i b_i + c_i p_i) = a_inf b_inf`, so the
/// exponents are {a_i, b_i} at p_i and {a_inf, b_inf} at infinity.
pub fn random_riemann(r: &mut StdRng) -> Riemann {
    let dens = [1, 2, 3, 4, 6];
    let k = r.gen_range(2..=4usize);
    let mut pts: Vec<i64> = (-4..=4).collect();
    pts.shuffle(r);
    let den = *[1, 1, 2].choose(r).unwrap();
    let mut pts: Vec<BigRational> = pts[..k].iter().map(|&p| rat(p, den)).collect();
    pts.sort();
    let mut finite = Vec::new();
    let mut sum_ab = BigRational::zero();
    let mut sum_exp = BigRational::zero();
    for p in &pts {
        let a = small_rat(r, 6, &dens);
        let b = &a + rat(r.gen_range(1..=6), *dens.choose(r).unwrap());
        sum_ab += &a * &b;
        sum_exp += &a + &b;
        let mut e = vec![a, b];
        e.sort();
        finite.push((p.clone(), e));
    }
    // exponent sum at infinity: (k - 1) - sum over finite points
    let s_inf = BigRational::from_integer((k as i64 - 1).into()) - &sum_exp;
    let a_inf = small_rat(r, 6, &dens);
    let b_inf = &s_inf - &a_inf;
    // free accessory parameters c_0..c_{k-3}, then solve for the last two
    let mut c: Vec<BigRational> = (0..k - 2).map(|_| small_rat(r, 4, &dens)).collect();
    let rest_sum: BigRational = c.iter().fold(BigRational::zero(), |a, b| a + b);
    let rest_mom: BigRational = c.iter().zip(&pts).fold(BigRational::zero(), |a, (ci, p)| a + ci * p);
    // c_{k-2} + c_{k-1} = -rest_sum; c_{k-2} p_{k-2} + c_{k-1} p_{k-1} = target
    let target = &a_inf * &b_inf - &sum_ab - &rest_mom;
    let (p1, p2) = (&pts[k - 2], &pts[k - 1]);
    let c2 = (&target + &rest_sum * p1) / (p2 - p1);
    let c1 = -&rest_sum - &c2;
    c.push(c1);
    c.push(c2);
    let mut a1 = RationalFunction::zero();
    let mut a0 = RationalFunction::zero();
    for ((p, e), ci) in finite.iter().zip(&c) {
        let lin = RationalFunction::from_poly(linear(p));
        let one_minus = BigRational::one() - &e[0] - &e[1];
        a1 = &a1 + &RationalFunction::constant(one_minus).checked_div(&lin).unwrap();
        a0 = &a0 + &RationalFunction::constant(&e[0] * &e[1]).checked_div(&lin.pow(2)).unwrap();
        a0 = &a0 + &RationalFunction::constant(ci.clone()).checked_div(&lin).unwrap();
    }
    let mut infinity = vec![a_inf, b_inf];
    infinity.sort();
    Riemann { op: LinearODE::new(vec![a0, a1]).unwrap(), finite, infinity }
}

/// A twist parameter with at most simple poles, so Fuchsian stays Fuchsian.
pub fn random_regular_twist(r: &mut StdRng) -> TwistParameter {
    let mut t = RationalFunction::zero();
    for _ in 0..r.gen_range(1..=2) {
        let p = rat(r.gen_range(-5..=5), 1);
        let e = small_rat(r, 3, &[1, 2, 3]);
        t = &t + &RationalFunction::constant(e).checked_div(&RationalFunction::from_poly(linear(&p))).unwrap();
    }
    TwistParameter::new(t)
}

/// A random non-constant map of degree at most `max_deg`.
pub fn random_map(r: &mut StdRng, max_deg: usize) -> RationalMap {
    loop {
        let dn = r.gen_range(0..=max_deg);
        let dd = r.gen_range(0..=max_deg);
        let num: Vec<i64> = (0..=dn).map(|_| r.gen_range(-3..=3)).collect();
        let den: Vec<i64> = (0..=dd).map(|_| r.gen_range(-3..=3)).collect();
        let (num, den) = (Polynomial::from_ints(&num), Polynomial::from_ints(&den));
        if den.is_zero() {
            continue;
        }
        if let Ok(m) = RationalMap::new(RationalFunction::new(num, den)) {
            if m.degree() >= 1 && m.degree() <= max_deg {
                return m;
            }
        }
    }
}

/// A Fuchsian operator of order 2 or 3 with rational exponents.
pub fn random_fuchsian(r: &mut StdRng, order: usize) -> LinearODE {
    let base = random_riemann(r).op;
    let op = match order {
        2 => base,
        3 => fuchsian_core::sympow::symmetric_power(&base, 2).unwrap(),
        _ => panic!("unsupported order"),
    };
    if r.gen_bool(0.3) {
        exp_product(&op, &random_regular_twist(r))
    } else {
        op
    }
}

/// Order-2 operator with solutions u and u*g, where h = g'/g.
pub fn operator_from_solutions(u: &RationalFunction, h: &RationalFunction) -> LinearODE {
    let du = u.derivative();
    let ddu = du.derivative();
    let dh = h.derivative();
    let a1 = -(&(&(&du / u).scale(&rat(2, 1)) + &(&dh / h)) + h);
    let num = &(&(&(&du * &du) * h).scale(&rat(2, 1)) + &(&(u * &du) * &(&dh + &(h * h)))) - &(&(u * &ddu) * h);
    let a0 = &num / &(&(u * u) * h);
    LinearODE::new(vec![a0, a1]).unwrap()
}

/// Random rational function prod (x - p)^k with small exponents.
pub fn random_product(r: &mut StdRng) -> RationalFunction {
    let mut f = RationalFunction::from_int(r.gen_range(1..=3));
    for _ in 0..r.gen_range(1..=3) {
        let p = rat(r.gen_range(-3..=3), 1);
        let k = r.gen_range(-2..=3);
        f = &f * &RationalFunction::from_poly(linear(&p)).pow(k);
    }
    f
}

/// Order-2 operator with a known number (0, 1 or 2) of independent
/// rational solutions.
pub fn operator_with_rational_solutions(r: &mut StdRng) -> (LinearODE, usize) {
    loop {
        let u = random_product(r);
        let (h, dim) = match r.gen_range(0..3) {
            0 => {
                let g = random_product(r);
                if g.is_constant() {
                    continue;
                }
                (&g.derivative() / &g, 2)
            }
            1 => {
                let q = rat(r.gen_range(-3..=3), 1);
                let alpha = rat(r.gen_range(1..=4), *[2, 3, 5].choose(r).unwrap());
                (RationalFunction::constant(alpha).checked_div(&RationalFunction::from_poly(linear(&q))).unwrap(), 1)
            }
            _ => {
                // no rational solution: exponents irrational-free but fractional
                let rm = random_riemann(r);
                let frac = rm.finite.iter().all(|(_, e)| e.iter().all(|x| !x.is_integer()));
                if !frac {
                    continue;
                }
                return (rm.op, 0);
            }
        };
        if h.is_zero() || u.is_zero() {
            continue;
        }
        return (operator_from_solutions(&u, &h), dim);
    }
}

/// Polynomial coefficients (leading included) of `l` after x -> x + x0,
/// cleared of denominators.
pub fn shifted_polynomial_operator(l: &LinearODE, x0: &BigRational) -> Vec<Polynomial> {
    let shift = RationalFunction::from_poly(Polynomial::from_rationals(&[x0.clone(), BigRational::one()]));
    let coeffs: Vec<RationalFunction> = (0..=l.order()).map(|i| l.coeff(i).compose(&shift)).collect();
    let common = coeffs.iter().fold(Polynomial::one(), |acc, c| {
        let g = acc.gcd(c.den());
        &acc * &c.den().div_exact(&g).unwrap()
    });
    coeffs.iter().map(|c| c.num() * &common.div_exact(c.den()).unwrap()).collect()
}

pub type Series = Vec<BigRational>;

fn series_mul_poly(p: &Polynomial, s: &[BigRational], len: usize) -> Series {
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in p.coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, sj) in s.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] += c * sj;
        }
    }
    out
}

pub fn series_derivative(s: &[BigRational]) -> Series {
    s.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect()
}

pub fn series_product(a: &[BigRational], b: &[BigRational]) -> Series {
    let len = a.len().min(b.len());
    let mut out = vec![BigRational::zero(); len];
    for i in 0..len {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..len - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// Applies sum p_k D^k to a truncated series; the result is exact in the
/// first `len - order` coefficients.
pub fn apply_to_series(p: &[Polynomial], s: &[BigRational]) -> Series {
    let len = s.len();
    let mut acc = vec![BigRational::zero(); len];
    let mut d = s.to_vec();
    for pk in p {
        let term = series_mul_poly(pk, &d, len);
        for (a, t) in acc.iter_mut().zip(term) {
            *a += t;
        }
        d = series_derivative(&d);
        d.push(BigRational::zero());
    }
    acc.truncate(len - (p.len() - 1));
    acc
}

/// Power-series solutions at an ordinary point x0 (in the shifted variable),
/// one per initial vector e_j, each with `terms` coefficients.
pub fn series_solutions(l: &LinearODE, x0: &BigRational, terms: usize) -> Vec<Series> {
    let p = shifted_polynomial_operator(l, x0);
    let n = l.order();
    let lead0 = p[n].coeff(0);
    assert!(!lead0.is_zero(), "x0 must be an ordinary point");
    (0..n)
        .map(|j| {
            let mut y: Series = vec![BigRational::zero(); terms];
            // y^(j)(0) = 1, i.e. coefficient j is 1/j!
            let fact = (1..=j).fold(BigRational::one(), |a, i| a * BigRational::from_integer(i.into()));
            y[j] = fact.recip();
            // coefficient m of L(y) determines y_{m+n}
            for m in 0..terms.saturating_sub(n) {
                y[m + n] = BigRational::zero();
                let mut val = BigRational::zero();
                for (k, pk) in p.iter().enumerate() {
                    // coefficient m of pk * D^k y
                    for (i, c) in pk.coefficients().iter().enumerate() {
                        if i > m || c.is_zero() {
                            continue;
                        }
                        let idx = m - i + k;
                        if idx >= terms {
                            continue;
                        }
                        let ff = ((idx - k + 1)..=idx).fold(BigRational::one(), |a, t| a * BigRational::from_integer(t.into()));
                        val += c * &y[idx] * ff;
                    }
                }
                // y_{m+n} enters through k = n, i = 0 with factor lead0 * (m+n)!/m!
                let ff = ((m + 1)..=(m + n)).fold(BigRational::one(), |a, t| a * BigRational::from_integer(t.into()));
                y[m + n] = -val / (&lead0 * ff);
            }
            y
        })
        .collect()
}

/// An integer point where no coefficient of `l` has a pole.
pub fn ordinary_point(l: &LinearODE) -> BigRational {
    (0i64..)
        .flat_map(|k| [k, -k - 1])
        .map(|k| rat(k, 1))
        .find(|p| (0..l.order()).all(|i| l.coeff(i).eval(p).is_some()))
        .unwrap()
}

pub fn place_at(p: &BigRational) -> Place {
    Place::rational(p.clone())
}
pub mod suites;
