//! Genus bookkeeping for the solution curve of an operator with finite
//! projective monodromy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::odeanalysis::{delta_total, exponent_reports, local_exponents, LinearODE, Place};
use crate::transform::{pullback, RationalMap};

#[derive(Clone, Debug)]
pub struct GenusQuery {
    pub operator: LinearODE,
    /// Projective group order, i.e. the degree of the cover.
    pub group_order: u64,
    pub base_genus: u64,
    /// Extra places to include in the sum besides the singular ones.
    pub extra_places: Vec<Place>,
}

impl GenusQuery {
    pub fn new(operator: LinearODE, group_order: u64) -> Self {
        GenusQuery { operator, group_order, base_genus: 0, extra_places: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceContribution {
    pub place: Place,
    pub ram_index: u64,
    /// `deg(p) * (1 - 1/e)`
    pub contribution: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub hurwitz_sum: BigRational,
    pub genus: BigRational,
    pub per_place: Vec<PlaceContribution>,
}

impl GenusReport {
    pub fn is_integral(&self) -> bool {
        self.genus.is_integer()
    }
}

fn contributions(l: &LinearODE, extra: &[Place]) -> Result<Vec<PlaceContribution>> {
    let mut reports = exponent_reports(l)?;
    for p in extra {
        if !reports.iter().any(|r| &r.place == p) {
            reports.push(local_exponents(l, p)?);
        }
    }
    reports.sort_by(|a, b| a.place.cmp(&b.place));
    Ok(reports
        .into_iter()
        .map(|r| {
            let e = BigRational::from_integer(BigInt::from(r.ram_index));
            let deg = BigRational::from_integer(BigInt::from(r.place.degree()));
            let contribution = deg * (BigRational::one() - e.recip());
            PlaceContribution { place: r.place, ram_index: r.ram_index, contribution }
        })
        .collect())
}

/// `sum deg(p) (1 - 1/e(L,p))` over the singular places (plus `extra`).
pub fn hurwitz_sum_with(l: &LinearODE, extra: &[Place]) -> Result<BigRational> {
    Ok(contributions(l, extra)?.into_iter().fold(BigRational::zero(), |a, c| a + c.contribution))
}

pub fn hurwitz_sum(l: &LinearODE) -> Result<BigRational> {
    hurwitz_sum_with(l, &[])
}

/// Riemann-Hurwitz: `g = 1 + M (g0 - 1) + (M/2) sum`.
pub fn genus_from_cover(sum: &BigRational, m: u64, g0: u64) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::ZeroGroupOrder);
    }
    let m = BigRational::from_integer(BigInt::from(m));
    let g0 = BigRational::from_integer(BigInt::from(g0));
    let one = BigRational::one();
    Ok(&one + &m * (&g0 - &one) + &m * sum / BigRational::from_integer(2.into()))
}

pub fn genus(q: &GenusQuery) -> Result<GenusReport> {
    let per_place = contributions(&q.operator, &q.extra_places)?;
    let hurwitz_sum = per_place.iter().fold(BigRational::zero(), |a, c| a + &c.contribution);
    let genus = genus_from_cover(&hurwitz_sum, q.group_order, q.base_genus)?;
    Ok(GenusReport { hurwitz_sum, genus, per_place })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaIdentity {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub ok: bool,
}

/// Checks `M (Δ(L0)/(n-1) + 2) = Δ(f*L0)/(n-1) + 2` with M = deg f.
pub fn pullback_delta_identity(l0: &LinearODE, f: &RationalMap) -> Result<DeltaIdentity> {
    let n = l0.order();
    if n < 2 {
        return Err(Error::OrderOne);
    }
    let nm1 = BigRational::from_integer(BigInt::from(n - 1));
    let two = BigRational::from_integer(2.into());
    let m = BigRational::from_integer(BigInt::from(f.degree()));
    let lhs = m * (delta_total(l0)? / &nm1 + &two);
    let rhs = delta_total(&pullback(l0, f))? / &nm1 + &two;
    Ok(DeltaIdentity { ok: lhs == rhs, lhs, rhs })
}
