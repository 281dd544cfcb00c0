//! Machine-readable reports.
//!
//! Every report is a JSON object with a `schema` field (currently
//! [`SCHEMA`]) and a `kind`. Rationals are strings `"p/q"` (integers print
//! without a denominator), places are `{"type":"finite","min_poly":…}` or
//! `{"type":"infinity"}`. Field order is fixed by the struct definitions, so
//! output is byte-for-byte deterministic.

use std::fmt::Write as _;

use fuchsian_core::exactalg::{BigRational, Polynomial};
use fuchsian_core::genus::GenusReport;
use fuchsian_core::odeanalysis::{ExponentReport, FuchsCheck, LinearODE, Place};
use fuchsian_core::sympow::{InvariantBasis, RuledSurfaceDescriptor};
use serde::Serialize;

use crate::parse::{format_expression, format_polynomial};

pub const SCHEMA: &str = "fuchsian-report/1";

pub fn q(r: &BigRational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PlaceJson {
    #[serde(rename = "type")]
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_poly: Option<String>,
}

impl PlaceJson {
    pub fn new(p: &Place, var: &str) -> Self {
        match p {
            Place::Infinity => PlaceJson { kind: "infinity", min_poly: None },
            Place::Finite { min_poly, .. } => PlaceJson { kind: "finite", min_poly: Some(format_polynomial(min_poly, var)) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub var: String,
    pub order: usize,
    /// Monic form, `a_0` first.
    pub coefficients: Vec<String>,
}

impl EquationJson {
    pub fn new(l: &LinearODE, name: Option<&str>) -> Self {
        EquationJson {
            name: name.map(str::to_string),
            var: l.var().to_string(),
            order: l.order(),
            coefficients: l.coeffs().iter().map(|c| format_expression(c, l.var())).collect(),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "equation: {} (order {}, variable {})", self.name.as_deref().unwrap_or("<input>"), self.order, self.var);
        for (i, c) in self.coefficients.iter().enumerate() {
            let _ = writeln!(out, "  a{i} = {c}");
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentJson {
    pub place: PlaceJson,
    /// Human label: the point, the min-poly, or "infinity".
    pub label: String,
    pub degree: usize,
    pub exponents: Vec<String>,
    pub delta: String,
    pub ram_index: u64,
    pub apparent: bool,
}

impl ExponentJson {
    pub fn new(r: &ExponentReport, var: &str) -> Self {
        ExponentJson {
            place: PlaceJson::new(&r.place, var),
            label: r.place.display_with(var),
            degree: r.place.degree(),
            exponents: r.exponents.iter().map(q).collect(),
            delta: q(&r.delta),
            ram_index: r.ram_index,
            apparent: r.apparent,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FuchsJson {
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

impl From<&FuchsCheck> for FuchsJson {
    fn from(c: &FuchsCheck) -> Self {
        FuchsJson { lhs: q(&c.lhs), rhs: q(&c.rhs), ok: c.ok }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContributionJson {
    pub place: PlaceJson,
    pub label: String,
    pub ram_index: u64,
    pub contribution: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusJson {
    pub group_order: u64,
    pub base_genus: u64,
    pub hurwitz_sum: String,
    pub genus: String,
    pub integral: bool,
    pub per_place: Vec<ContributionJson>,
}

impl GenusJson {
    pub fn new(r: &GenusReport, group_order: u64, base_genus: u64, var: &str) -> Self {
        GenusJson {
            group_order,
            base_genus,
            hurwitz_sum: q(&r.hurwitz_sum),
            genus: q(&r.genus),
            integral: r.is_integral(),
            per_place: r
                .per_place
                .iter()
                .map(|c| ContributionJson {
                    place: PlaceJson::new(&c.place, var),
                    label: c.place.display_with(var),
                    ram_index: c.ram_index,
                    contribution: q(&c.contribution),
                })
                .collect(),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "genus (M = {}, g0 = {}):", self.group_order, self.base_genus);
        for c in &self.per_place {
            let _ = writeln!(out, "  {:<16} e = {:<3} contributes {}", c.label, c.ram_index, c.contribution);
        }
        let _ = writeln!(out, "  hurwitz sum = {}", self.hurwitz_sum);
        let _ = writeln!(out, "  genus = {}{}", self.genus, if self.integral { "" } else { " (not an integer)" });
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuledJson {
    pub group: String,
    pub degree: usize,
    pub deg_l: i64,
    pub deg_l_prime: i64,
    pub normalized_twist: i64,
    pub generators_l: Vec<String>,
    pub generators_l_prime: Vec<String>,
}

impl RuledJson {
    pub fn new(r: &RuledSurfaceDescriptor, var: &str) -> Self {
        let gens = |v: &[Polynomial]| v.iter().map(|p| format_polynomial(p, var)).collect();
        RuledJson {
            group: r.group.to_string(),
            degree: r.degree,
            deg_l: r.deg_l,
            deg_l_prime: r.deg_l_prime,
            normalized_twist: r.normalized_twist,
            generators_l: gens(&r.generators_l),
            generators_l_prime: gens(&r.generators_l_prime),
        }
    }

    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "ruled surface for {} (d = {}):", self.group, self.degree);
        let _ = writeln!(out, "  deg L  = {}   generators: {}", self.deg_l, self.generators_l.join(", "));
        let _ = writeln!(out, "  deg L' = {}   generators: {}", self.deg_l_prime, self.generators_l_prime.join(", "));
        let _ = writeln!(out, "  (deg L, deg L') = ({}, {}), N = {}", self.deg_l, self.deg_l_prime, self.normalized_twist);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub equation: EquationJson,
    pub fuchsian: bool,
    pub places: Vec<ExponentJson>,
    pub delta_total: String,
    pub fuchs_relation: FuchsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<GenusJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ruled_surface: Option<RuledJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusCommandReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub equation: EquationJson,
    #[serde(flatten)]
    pub genus: GenusJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub input: EquationJson,
    /// Pullback map, twist parameter or symmetric-power degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub result: EquationJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub left: EquationJson,
    pub right: EquationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    pub equivalent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineBundleJson {
    pub degree: i64,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatsolReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub equation: EquationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric_power: Option<usize>,
    pub dimension: usize,
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_bundle: Option<LineBundleJson>,
}

impl RatsolReport {
    pub fn basis_strings(b: &InvariantBasis, var: &str) -> Vec<String> {
        b.basis.iter().map(|f| format_expression(f, var)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RuledReport {
    pub schema: &'static str,
    pub kind: &'static str,
    #[serde(flatten)]
    pub ruled: RuledJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogListing {
    pub name: String,
    pub description: String,
    pub order: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackJson {
    pub equation: String,
    pub partner: String,
    pub map: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub entries: Vec<CatalogListing>,
    pub pullbacks: Vec<PullbackJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntryReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub description: String,
    pub equation: EquationJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorJson {
    pub category: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub place: Option<PlaceJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub error: ErrorJson,
}

/// Text rendering for every report type.
pub trait TextReport {
    fn text(&self) -> String;
}

impl TextReport for AnalysisReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.equation.text(&mut out);
        let _ = writeln!(out, "fuchsian: {}", if self.fuchsian { "yes" } else { "no" });
        let _ = writeln!(out, "singular places:");
        for p in &self.places {
            let _ = writeln!(
                out,
                "  {:<16} deg {}  E = {{{}}}  delta = {}  e = {}{}",
                p.label,
                p.degree,
                p.exponents.join(", "),
                p.delta,
                p.ram_index,
                if p.apparent { "  (apparent)" } else { "" }
            );
        }
        let _ = writeln!(out, "delta total: {}", self.delta_total);
        let _ = writeln!(
            out,
            "fuchs relation: {} = {} ({})",
            self.fuchs_relation.lhs,
            self.fuchs_relation.rhs,
            if self.fuchs_relation.ok { "ok" } else { "FAILED" }
        );
        if let Some(g) = &self.genus {
            g.text(&mut out);
        }
        if let Some(r) = &self.ruled_surface {
            r.text(&mut out);
        }
        out
    }
}

impl TextReport for GenusCommandReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.equation.text(&mut out);
        self.genus.text(&mut out);
        out
    }
}

impl TextReport for OperatorReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.input.text(&mut out);
        if let Some(m) = &self.map {
            let _ = writeln!(out, "map: {m}");
        }
        if let Some(t) = &self.twist {
            let _ = writeln!(out, "twist r: {t}");
        }
        if let Some(d) = self.degree {
            let _ = writeln!(out, "degree: {d}");
        }
        let _ = writeln!(out, "result ({}):", self.kind);
        self.result.text(&mut out);
        out
    }
}

impl TextReport for EquivReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.left.text(&mut out);
        self.right.text(&mut out);
        if let Some(m) = &self.map {
            let _ = writeln!(out, "map: {m}");
        }
        let _ = writeln!(out, "projectively equivalent: {}", self.equivalent);
        out
    }
}

impl TextReport for RatsolReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.equation.text(&mut out);
        if let Some(d) = self.symmetric_power {
            let _ = writeln!(out, "symmetric power: {d}");
        }
        let _ = writeln!(out, "rational solutions: dimension {}", self.dimension);
        for b in &self.basis {
            let _ = writeln!(out, "  {b}");
        }
        if let Some(lb) = &self.line_bundle {
            let _ = writeln!(out, "line bundle degree: {} (generators: {})", lb.degree, lb.generators.join(", "));
        }
        out
    }
}

impl TextReport for RuledReport {
    fn text(&self) -> String {
        let mut out = String::new();
        self.ruled.text(&mut out);
        out
    }
}

impl TextReport for CatalogReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let order = e.order.map(|o| o.to_string()).unwrap_or_else(|| "2".into());
            let _ = writeln!(out, "{:<12} order {}  {}", e.name, order, e.description);
        }
        let _ = writeln!(out, "recorded pullbacks:");
        for p in &self.pullbacks {
            let _ = writeln!(out, "  {} ~ {} along {}", p.equation, p.partner, p.map);
        }
        out
    }
}

impl TextReport for CatalogEntryReport {
    fn text(&self) -> String {
        let mut out = String::new();
        if !self.description.is_empty() {
            let _ = writeln!(out, "{}", self.description);
        }
        self.equation.text(&mut out);
        out
    }
}

impl TextReport for ErrorReport {
    fn text(&self) -> String {
        format!("error: {}\n", self.error.message)
    }
}
