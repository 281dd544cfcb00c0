//! Argument handling and dispatch for the `fuchsian` binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use fuchsian_core::exactalg::RationalFunction;
use fuchsian_core::genus::{genus, GenusQuery};
use fuchsian_core::odeanalysis::{exponent_reports, fuchs_relation_check, delta_total, is_fuchsian, LinearODE, Place};
use fuchsian_core::sympow::{default_degree, line_bundle_degree, rational_solutions, ruled_surface, symmetric_power, Group, StandardEquationSpec};
use fuchsian_core::transform::{normalizing_twist, projective_normalize, projectively_equivalent, pullback, RationalMap};

use crate::catalog::{catalog, catalog_file, catalog_source, pullback_records, CatalogError};
use crate::parse::{format_expression, parse_expression_in, parse_expression_with_var, ParseError};
use crate::report::*;

#[derive(Parser, Debug)]
#[command(name = "fuchsian", version, about = "Exact analysis of Fuchsian linear ODEs over Q(x)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// An equation, either from the catalog or given coefficient-wise.
#[derive(Args, Debug, Clone)]
struct EquationArgs {
    /// Catalog key (see `fuchsian catalog`).
    #[arg(long, conflicts_with_all = ["coeffs", "leading"])]
    catalog: Option<String>,
    /// Comma-separated coefficients a_0, ..., a_{n-1} of the monic operator.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Vec<String>,
    /// Leading coefficient; the other coefficients are divided by it.
    #[arg(long, allow_hyphen_values = true)]
    leading: Option<String>,
    /// Variable name used in the coefficient expressions.
    #[arg(long, default_value = "x")]
    var: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular places, exponents, Fuchs relation (and optionally genus).
    Analyze {
        #[command(flatten)]
        eq: EquationArgs,
        /// Also report the genus of the degree-M cover.
        #[arg(long)]
        group_order: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "group_order")]
        base_genus: u64,
        /// For a standard equation St:<G>, also compute the ruled surface
        /// using this symmetric-power degree (0 = default).
        #[arg(long)]
        ruled: Option<usize>,
    },
    /// Genus of the solution curve via Riemann-Hurwitz.
    Genus {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long)]
        group_order: u64,
        #[arg(long, default_value_t = 0)]
        base_genus: u64,
        /// Extra places: a rational number, a polynomial, or "infinity".
        #[arg(long = "extra-place", allow_hyphen_values = true)]
        extra_places: Vec<String>,
    },
    /// Pull the equation back along x -> map.
    Pullback {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
    /// Projective normal form (order n-1 coefficient zero).
    Normalize {
        #[command(flatten)]
        eq: EquationArgs,
    },
    /// Decide projective equivalence of two equations.
    Equiv {
        #[command(flatten)]
        eq: EquationArgs,
        /// Compare against the pullback of this catalog equation along --map.
        #[arg(long, conflicts_with_all = ["other_catalog", "other_coeffs"], requires = "map")]
        pullback_of: Option<String>,
        #[arg(long, conflicts_with = "other_coeffs")]
        other_catalog: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        other_coeffs: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        other_leading: Option<String>,
        #[arg(long)]
        other_var: Option<String>,
        /// Map (in the variable of the first equation) applied to the second.
        #[arg(long, allow_hyphen_values = true)]
        map: Option<String>,
    },
    /// Symmetric power operator.
    Sympow {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(short = 'd', long = "degree")]
        degree: usize,
    },
    /// Basis of rational solutions (of the d-th symmetric power with -d).
    Ratsol {
        #[command(flatten)]
        eq: EquationArgs,
        #[arg(short = 'd', long = "degree")]
        degree: Option<usize>,
    },
    /// Ruled-surface descriptor of a standard equation.
    Ruled {
        /// A4, S4, A5 or D2n:<n>.
        #[arg(long)]
        group: String,
        /// Symmetric-power degree; defaults to the per-group table.
        #[arg(short = 'd', long = "degree")]
        degree: Option<usize>,
    },
    /// List catalog entries, or show one.
    Catalog { name: Option<String> },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] fuchsian_core::Error),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Operator(e) => CliError::Domain(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    /// 0 success, 1 domain error, 2 usage or parse error.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command, cli.format) {
        Ok(stdout) => CommandOutput { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let (code, category) = match &e {
                CliError::Usage(_) => (2, "usage"),
                CliError::Domain(_) => (1, "domain"),
            };
            let place = match &e {
                CliError::Domain(d) => error_place(d).map(|p| PlaceJson::new(p, &command_var(&cli.command))),
                _ => None,
            };
            let report =
                ErrorReport { schema: SCHEMA, kind: "error", error: ErrorJson { category, message: e.to_string(), place } };
            let stdout = if cli.format == Format::Json { to_json(&report) } else { String::new() };
            CommandOutput { code, stdout, stderr: report.text() }
        }
    }
}

/// Variable of the (first) equation of a command, for error reports.
fn command_var(cmd: &Command) -> String {
    let eq = match cmd {
        Command::Analyze { eq, .. }
        | Command::Genus { eq, .. }
        | Command::Pullback { eq, .. }
        | Command::Normalize { eq }
        | Command::Equiv { eq, .. }
        | Command::Sympow { eq, .. }
        | Command::Ratsol { eq, .. } => eq,
        _ => return "x".into(),
    };
    match eq.catalog.as_deref().and_then(catalog_source) {
        Some(src) => src.var.clone(),
        None => eq.var.clone(),
    }
}

fn error_place(e: &fuchsian_core::Error) -> Option<&Place> {
    use fuchsian_core::Error::*;
    match e {
        NotFuchsianAt(p) | NotFuchsian(p) | NonRationalExponent { place: p, .. } => Some(p),
        _ => None,
    }
}

fn to_json<T: Serialize>(r: &T) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

fn emit<T: Serialize + TextReport>(r: &T, f: Format) -> String {
    match f {
        Format::Json => to_json(r),
        Format::Text => r.text(),
    }
}

/// Operator plus the catalog name it came from.
struct Loaded {
    op: LinearODE,
    name: Option<String>,
}

fn load(catalog_key: Option<&str>, coeffs: &[String], leading: Option<&str>, var: &str) -> CliResult<Loaded> {
    if let Some(key) = catalog_key {
        return Ok(Loaded { op: catalog(key)?, name: Some(key.to_string()) });
    }
    if coeffs.is_empty() {
        return Err(CliError::Usage("an equation is required: use --catalog NAME or --coeffs a0,a1,...".into()));
    }
    let parsed: Vec<RationalFunction> = coeffs.iter().map(|c| parse_expression_in(c.trim(), var)).collect::<Result<_, _>>()?;
    let op = match leading {
        Some(lead) => {
            let lead = parse_expression_in(lead, var)?;
            LinearODE::with_leading(&lead, parsed).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => LinearODE::new(parsed)?,
    };
    Ok(Loaded { op: op.with_var(var), name: None })
}

fn load_eq(a: &EquationArgs) -> CliResult<Loaded> {
    load(a.catalog.as_deref(), &a.coeffs, a.leading.as_deref(), &a.var)
}

fn equation_json(l: &Loaded) -> EquationJson {
    EquationJson::new(&l.op, l.name.as_deref())
}

fn parse_map(text: &str, var: Option<&str>) -> CliResult<(RationalMap, String)> {
    let (f, v) = match var {
        Some(v) => (parse_expression_in(text, v)?, v.to_string()),
        None => {
            let (f, v) = parse_expression_with_var(text)?;
            (f, v.unwrap_or_else(|| "x".into()))
        }
    };
    Ok((RationalMap::new(f)?, v))
}

fn parse_place(text: &str, var: &str) -> CliResult<Place> {
    let t = text.trim();
    if matches!(t, "inf" | "infinity" | "oo") {
        return Ok(Place::Infinity);
    }
    let f = parse_expression_in(t, var)?;
    if let Some(c) = f.as_constant() {
        return Ok(Place::rational(c));
    }
    if !f.is_polynomial() {
        return Err(CliError::Usage(format!("place {t:?} must be a number, a polynomial or \"infinity\"")));
    }
    Ok(Place::finite(f.num()))
}

fn parse_group(text: &str) -> CliResult<Group> {
    text.parse().map_err(|_| CliError::Usage(format!("unknown group {text:?} (expected A4, S4, A5 or D2n:<n>)")))
}

fn analysis(l: &Loaded) -> CliResult<AnalysisReport> {
    let op = &l.op;
    let reports = exponent_reports(op)?;
    if !is_fuchsian(op) {
        // exponent_reports normally fails first, naming the place
        return Err(fuchsian_core::Error::NotFuchsian(Place::Infinity).into());
    }
    let var = op.var();
    Ok(AnalysisReport {
        schema: SCHEMA,
        kind: "analysis",
        equation: equation_json(l),
        fuchsian: true,
        places: reports.iter().map(|r| ExponentJson::new(r, var)).collect(),
        delta_total: q(&delta_total(op)?),
        fuchs_relation: (&fuchs_relation_check(op)?).into(),
        genus: None,
        ruled_surface: None,
    })
}

fn dispatch(cmd: &Command, fmt: Format) -> CliResult<String> {
    match cmd {
        Command::Analyze { eq, group_order, base_genus, ruled } => {
            let l = load_eq(eq)?;
            let mut report = analysis(&l)?;
            if let Some(m) = group_order {
                let mut query = GenusQuery::new(l.op.clone(), *m);
                query.base_genus = *base_genus;
                report.genus = Some(GenusJson::new(&genus(&query)?, *m, *base_genus, l.op.var()));
            }
            if let Some(d) = ruled {
                let group = eq
                    .catalog
                    .as_deref()
                    .and_then(|k| k.strip_prefix("St:"))
                    .ok_or_else(|| CliError::Usage("--ruled needs a standard equation (--catalog St:<G>)".into()))?;
                let group = parse_group(group)?;
                let d = if *d == 0 { default_degree(group) } else { *d };
                let r = ruled_surface(&StandardEquationSpec::new(group), d)?;
                report.ruled_surface = Some(RuledJson::new(&r, l.op.var()));
            }
            Ok(emit(&report, fmt))
        }
        Command::Genus { eq, group_order, base_genus, extra_places } => {
            let l = load_eq(eq)?;
            let var = l.op.var().to_string();
            let mut query = GenusQuery::new(l.op.clone(), *group_order);
            query.base_genus = *base_genus;
            query.extra_places = extra_places.iter().map(|p| parse_place(p, &var)).collect::<CliResult<_>>()?;
            let g = genus(&query)?;
            let report = GenusCommandReport {
                schema: SCHEMA,
                kind: "genus",
                equation: equation_json(&l),
                genus: GenusJson::new(&g, *group_order, *base_genus, &var),
            };
            Ok(emit(&report, fmt))
        }
        Command::Pullback { eq, map } => {
            let l = load_eq(eq)?;
            let (f, var) = parse_map(map, None)?;
            let result = pullback(&l.op, &f).with_var(&var);
            let report = OperatorReport {
                schema: SCHEMA,
                kind: "pullback",
                input: equation_json(&l),
                map: Some(format_expression(f.function(), &var)),
                twist: None,
                degree: None,
                result: EquationJson::new(&result, None),
            };
            Ok(emit(&report, fmt))
        }
        Command::Normalize { eq } => {
            let l = load_eq(eq)?;
            let t = normalizing_twist(&l.op);
            let report = OperatorReport {
                schema: SCHEMA,
                kind: "normalize",
                input: equation_json(&l),
                map: None,
                twist: Some(format_expression(&t.r, l.op.var())),
                degree: None,
                result: EquationJson::new(&projective_normalize(&l.op), None),
            };
            Ok(emit(&report, fmt))
        }
        Command::Equiv { eq, pullback_of, other_catalog, other_coeffs, other_leading, other_var, map } => {
            let left = load_eq(eq)?;
            let key = pullback_of.as_deref().or(other_catalog.as_deref());
            let var2 = other_var.as_deref().unwrap_or(left.op.var()).to_string();
            if key.is_none() && other_coeffs.is_empty() {
                return Err(CliError::Usage("equiv needs a second equation: --pullback-of, --other-catalog or --other-coeffs".into()));
            }
            let mut right = load(key, other_coeffs, other_leading.as_deref(), &var2)?;
            let mut map_text = None;
            if let Some(m) = map {
                let (f, _) = parse_map(m, Some(left.op.var()))?;
                map_text = Some(format_expression(f.function(), left.op.var()));
                right = Loaded {
                    op: pullback(&right.op, &f).with_var(left.op.var()),
                    name: right.name.map(|n| format!("{n} pulled back")),
                };
            }
            let equivalent = projectively_equivalent(&left.op, &right.op)?;
            let report = EquivReport {
                schema: SCHEMA,
                kind: "equiv",
                left: equation_json(&left),
                right: equation_json(&right),
                map: map_text,
                equivalent,
            };
            Ok(emit(&report, fmt))
        }
        Command::Sympow { eq, degree } => {
            let l = load_eq(eq)?;
            let s = symmetric_power(&l.op, *degree)?;
            let report = OperatorReport {
                schema: SCHEMA,
                kind: "sympow",
                input: equation_json(&l),
                map: None,
                twist: None,
                degree: Some(*degree),
                result: EquationJson::new(&s, None),
            };
            Ok(emit(&report, fmt))
        }
        Command::Ratsol { eq, degree } => {
            let l = load_eq(eq)?;
            let target = match degree {
                Some(d) => symmetric_power(&l.op, *d)?,
                None => l.op.clone(),
            };
            let mut b = rational_solutions(&target)?;
            b.degree = *degree;
            let var = l.op.var();
            let line_bundle = if b.basis.is_empty() {
                None
            } else {
                let (d, gens) = line_bundle_degree(&b)?;
                Some(LineBundleJson { degree: d, generators: gens.iter().map(|p| p.display_with(var)).collect() })
            };
            let report = RatsolReport {
                schema: SCHEMA,
                kind: "ratsol",
                equation: equation_json(&l),
                symmetric_power: *degree,
                dimension: b.dimension(),
                basis: RatsolReport::basis_strings(&b, var),
                line_bundle,
            };
            Ok(emit(&report, fmt))
        }
        Command::Ruled { group, degree } => {
            let g = parse_group(group)?;
            let d = degree.unwrap_or_else(|| default_degree(g));
            let r = ruled_surface(&StandardEquationSpec::new(g), d)?;
            Ok(emit(&RuledReport { schema: SCHEMA, kind: "ruled", ruled: RuledJson::new(&r, "x") }, fmt))
        }
        Command::Catalog { name: None } => {
            let mut entries: Vec<CatalogListing> = catalog_file()
                .entries
                .iter()
                .map(|e| CatalogListing { name: e.name.clone(), description: e.description.clone(), order: Some(e.order()) })
                .collect();
            for g in ["A4", "S4", "A5", "D2n:<n>"] {
                entries.push(CatalogListing {
                    name: format!("St:{g}"),
                    description: format!("standard second-order equation for {g}"),
                    order: Some(2),
                });
            }
            let pullbacks = pullback_records()
                .iter()
                .map(|p| PullbackJson { equation: p.equation.clone(), partner: p.partner.clone(), map: p.map.clone() })
                .collect();
            Ok(emit(&CatalogReport { schema: SCHEMA, kind: "catalog", entries, pullbacks }, fmt))
        }
        Command::Catalog { name: Some(name) } => {
            let op = catalog(name)?;
            let description = catalog_source(name).map(|s| s.description.clone()).unwrap_or_else(|| format!("standard equation {name}"));
            let report = CatalogEntryReport {
                schema: SCHEMA,
                kind: "catalog-entry",
                description,
                equation: EquationJson::new(&op, Some(name)),
            };
            Ok(emit(&report, fmt))
        }
    }
}
