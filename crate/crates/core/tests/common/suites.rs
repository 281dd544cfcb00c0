//! Randomized suites, returning a description of the first failure.

use fuchsian_core::exactalg::{BigRational, Polynomial, RationalFunction};
use fuchsian_core::exactalg::linalg::nullspace;
use fuchsian_core::odeanalysis::{fuchs_relation_check, local_exponents, LinearODE, Place};
use fuchsian_core::sympow::{rational_solutions, solution_bounds, symmetric_power};
use fuchsian_core::genus::pullback_delta_identity;
use fuchsian_core::transform::pullback;
use num_traits::Zero;

use super::*;

pub type SuiteResult = Result<usize, String>;

/// Fuchs relation on `count` random operators (orders 2 and 3), plus the
/// prescribed exponents of the order-2 ones.
pub fn fuchs_suite(seed: u64, count: usize) -> SuiteResult {
    let mut r = rng(seed);
    for case in 0..count {
        let (op, riemann) = if case % 2 == 0 {
            let rm = random_riemann(&mut r);
            (rm.op.clone(), Some(rm))
        } else {
            (random_fuchsian(&mut r, if case % 4 == 1 { 2 } else { 3 }), None)
        };
        let check = fuchs_relation_check(&op).map_err(|e| format!("case {case}: {e} for {op:?}"))?;
        if !check.ok {
            return Err(format!("case {case}: Fuchs relation {} != {} for {op:?}", check.lhs, check.rhs));
        }
        if let Some(rm) = riemann {
            for (p, e) in &rm.finite {
                let got = local_exponents(&op, &place_at(p)).map_err(|e| format!("case {case}: {e}"))?;
                if &got.exponents != e {
                    return Err(format!("case {case}: exponents at {p}: {:?} vs {:?}", got.exponents, e));
                }
            }
            let got = local_exponents(&op, &Place::Infinity).map_err(|e| format!("case {case}: {e}"))?;
            if got.exponents != rm.infinity {
                return Err(format!("case {case}: exponents at infinity: {:?} vs {:?}", got.exponents, rm.infinity));
            }
        }
    }
    Ok(count)
}

/// Rational points of the source together with the image under `f`.
fn sample_points(f: &fuchsian_core::transform::RationalMap) -> Vec<(Place, Place)> {
    let mut out = Vec::new();
    let mut src: Vec<Option<BigRational>> = (-3i64..=3).map(|k| Some(BigRational::from_integer(k.into()))).collect();
    src.push(None);
    for s in src {
        let image = f.image_of_point(s.as_ref());
        let from = s.map(Place::rational).unwrap_or(Place::Infinity);
        let to = image.map(Place::rational).unwrap_or(Place::Infinity);
        out.push((from, to));
    }
    out
}

/// Δ-identity and the exponent law E(f*L, P) = e_P E(L, f(P)) on `count`
/// random (L0, f) pairs with orders 2 and 3 and deg f ≤ `max_deg`.
pub fn pullback_suite(seed: u64, count: usize, max_deg: usize) -> SuiteResult {
    let mut r = rng(seed);
    for case in 0..count {
        let order = if case % 2 == 0 { 2 } else { 3 };
        let l0 = random_fuchsian(&mut r, order);
        let f = random_map(&mut r, max_deg);
        let ctx = || format!("case {case}: L0 = {l0:?}, f = {}", f.function());
        let id = pullback_delta_identity(&l0, &f).map_err(|e| format!("{}: {e}", ctx()))?;
        if !id.ok {
            return Err(format!("{}: delta identity {} != {}", ctx(), id.lhs, id.rhs));
        }
        let pb = pullback(&l0, &f);
        for (from, to) in sample_points(&f) {
            let e = f.ramification_index(&from).map_err(|e| format!("{}: {e}", ctx()))?;
            let base = local_exponents(&l0, &to).map_err(|e| format!("{}: {e}", ctx()))?;
            let mut want: Vec<BigRational> = base.exponents.iter().map(|x| x * BigRational::from_integer(e.into())).collect();
            want.sort();
            let got = local_exponents(&pb, &from).map_err(|e| format!("{}: {e}", ctx()))?;
            if got.exponents != want {
                return Err(format!("{}: exponents at {from}: {:?}, expected {:?}", ctx(), got.exponents, want));
            }
        }
    }
    Ok(count)
}

/// Symmetric powers annihilate all degree-d monomials in truncated series
/// solutions.
pub fn series_oracle(seed: u64, count: usize, max_d: usize, terms: usize) -> SuiteResult {
    let mut r = rng(seed);
    let mut checks = 0;
    for case in 0..count {
        let l = random_fuchsian(&mut r, 2);
        let d = case % max_d + 1;
        let s = symmetric_power(&l, d).map_err(|e| format!("case {case}: {e}"))?;
        let x0 = ordinary_point(&l);
        // extra terms so the operator application is exact to `terms`
        let sols = series_solutions(&l, &x0, terms + d + 1);
        let ps = shifted_polynomial_operator(&s, &x0);
        for i in 0..=d {
            let mut m = vec![BigRational::zero(); terms + d + 1];
            m[0] = BigRational::from_integer(1.into());
            for _ in 0..i {
                m = series_product(&m, &sols[0]);
            }
            for _ in i..d {
                m = series_product(&m, &sols[1]);
            }
            let out = apply_to_series(&ps, &m);
            if let Some(k) = out.iter().take(terms).position(|c| !c.is_zero()) {
                return Err(format!("case {case}: Sym^{d} of {l:?} leaves coefficient {k} of y1^{i} y2^{} nonzero", d - i));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// Brute-force ansatz P/den with deg P ≤ N: dimension of the solution space.
pub fn ansatz_dimension(l: &LinearODE) -> Result<usize, String> {
    let Some((den, nmax)) = solution_bounds(l).map_err(|e| e.to_string())? else {
        return Ok(0);
    };
    let images: Vec<RationalFunction> = (0..=nmax as usize)
        .map(|j| l.apply(&RationalFunction::new(Polynomial::monomial(BigRational::from_integer(1.into()), j), den.clone())))
        .collect();
    let common = images.iter().fold(Polynomial::one(), |acc, c| {
        let g = acc.gcd(c.den());
        &acc * &c.den().div_exact(&g).unwrap()
    });
    let cols: Vec<Polynomial> = images.iter().map(|c| c.num() * &common.div_exact(c.den()).unwrap()).collect();
    let rows = cols.iter().map(|c| (c.deg() + 1).max(0) as usize).max().unwrap_or(0);
    let matrix: Vec<Vec<BigRational>> = (0..rows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    Ok(nullspace(&matrix, cols.len()).len())
}

/// rational_solutions against substitution, the ansatz and the known
/// dimension, on operators with 0, 1 or 2 rational solutions and their
/// symmetric squares.
pub fn ratsol_oracle(seed: u64, count: usize) -> SuiteResult {
    let mut r = rng(seed);
    for case in 0..count {
        let (l, known) = operator_with_rational_solutions(&mut r);
        let (target, expected) = if case % 3 == 2 && known > 0 {
            // Sym^2 of an operator with a k-dim rational space has dimension k(k+1)/2
            (symmetric_power(&l, 2).map_err(|e| format!("case {case}: {e}"))?, known * (known + 1) / 2)
        } else {
            (l.clone(), known)
        };
        let b = rational_solutions(&target).map_err(|e| format!("case {case}: {e} for {target:?}"))?;
        for f in &b.basis {
            if !target.apply(f).is_zero() {
                return Err(format!("case {case}: {f} is not a solution of {target:?}"));
            }
        }
        let brute = ansatz_dimension(&target).map_err(|e| format!("case {case}: {e}"))?;
        if brute != b.dimension() {
            return Err(format!("case {case}: ansatz gives {brute}, rational_solutions {}", b.dimension()));
        }
        // known rational solutions are a lower bound (random data can add more)
        if b.dimension() < expected {
            return Err(format!("case {case}: expected at least {expected} solutions, got {} for {target:?}", b.dimension()));
        }
    }
    Ok(count)
}
