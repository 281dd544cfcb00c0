//! Acceptance criteria 1-11, one PASS/FAIL line each.
//!
//! Runs with a custom harness so the verdict lines are always visible.
//! The S4 and A5 ruled-surface checks are slow; they run only with
//! `cargo test --test acceptance -- --ignored` (or `--include-ignored`).

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use fuchsian_core::exactalg::{rat, BigRational, Polynomial, RationalFunction};
use fuchsian_core::genus::{genus, genus_from_cover, hurwitz_sum, GenusQuery};
use fuchsian_core::odeanalysis::{exponent_reports, fuchs_relation_check, ExponentReport, Place};
use fuchsian_core::sympow::{
    default_degree, derivative_equation, invariant_bundle, line_bundle_degree, rational_solutions, ruled_surface,
    standard_equation, symmetric_power, Group, InvariantBasis, StandardEquationSpec,
};
use fuchsian_core::transform::{projectively_equivalent, pullback, RationalMap};
use fuchsian_tool::catalog::{catalog, catalog_file, pullback_records};
use fuchsian_tool::parse::parse_expression_in;
use fuchsian_tool::run_command;

/// Collects sub-check results for one criterion.
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        let line = if ok { format!("{what}: {got:?}") } else { format!("{what}: got {got:?}, expected {want:?}") };
        self.check(ok, line);
    }

    fn result<T>(&mut self, what: &str, r: Result<T, impl std::fmt::Display>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

fn q(s: &str) -> BigRational {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    rat(n.trim().parse().unwrap(), d.trim().parse().unwrap())
}

fn set(items: &[&str]) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = items.iter().map(|s| q(s)).collect();
    v.sort();
    v
}

fn show(v: &[BigRational]) -> String {
    format!("{{{}}}", v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", "))
}

fn pt(s: &str) -> Place {
    Place::rational(q(s))
}

fn report_at<'a>(reports: &'a [ExponentReport], p: &Place) -> Option<&'a ExponentReport> {
    reports.iter().find(|r| &r.place == p)
}

fn places_of(reports: &[ExponentReport]) -> Vec<Place> {
    reports.iter().map(|r| r.place.clone()).collect()
}

/// Exponents, e and genus for a catalog equation with a reference table.
struct Table<'a> {
    key: &'a str,
    places: Vec<(Place, Vec<BigRational>, u64)>,
    hurwitz: &'a str,
    group_order: u64,
    genus: i64,
}

fn check_table(c: &mut Checks, t: &Table) {
    let Some(l) = c.result(&format!("catalog({})", t.key), catalog(t.key)) else { return };
    let Some(reports) = c.result("exponent_reports", exponent_reports(&l)) else { return };
    let want_places: Vec<Place> = t.places.iter().map(|(p, _, _)| p.clone()).collect();
    c.eq("places", places_of(&reports), want_places);
    for (p, exps, e) in &t.places {
        match report_at(&reports, p) {
            Some(r) => {
                c.eq(&format!("E({p})"), show(&r.exponents), show(exps));
                c.eq(&format!("e({p})"), r.ram_index, *e);
            }
            None => c.check(false, format!("no report at {p}")),
        }
    }
    if let Some(h) = c.result("hurwitz_sum", hurwitz_sum(&l)) {
        c.eq("hurwitz_sum", h.to_string(), t.hurwitz.to_string());
    }
    if let Some(g) = c.result("genus", genus(&GenusQuery::new(l.clone(), t.group_order))) {
        c.eq(&format!("genus with M={}", t.group_order), g.genus.to_string(), t.genus.to_string());
    }
    if let Some(f) = c.result("fuchs", fuchs_relation_check(&l)) {
        c.check(f.ok, format!("Fuchs relation {} = {}", f.lhs, f.rhs));
    }
}

fn time_limit(c: &mut Checks, elapsed: Duration, limit: Duration) {
    c.check(elapsed <= limit, format!("runtime {:.2?} (limit {:.0?})", elapsed, limit));
}

fn criterion_1(c: &mut Checks) {
    let start = Instant::now();
    let e = set(&["-1/6", "1/3", "4/3"]);
    check_table(
        c,
        &Table {
            key: "G54",
            places: vec![(pt("-1"), e.clone(), 2), (pt("0"), e.clone(), 2), (pt("1"), e.clone(), 2), (Place::Infinity, e, 2)],
            hurwitz: "2",
            group_order: 18,
            genus: 1,
        },
    );
    c.eq("genus_from_cover(2, 18, 0)", genus_from_cover(&rat(2, 1), 18, 0).map(|g| g.to_string()).ok(), Some("1".to_string()));
    // the CLI report for the same equation
    let out = run_command(["fuchsian", "analyze", "--catalog", "G54", "--format", "json"]);
    c.eq("analyze exit code", out.code, 0);
    if let Some(v) = c.result("analyze JSON", serde_json::from_str::<serde_json::Value>(&out.stdout)) {
        c.eq("JSON places", v["places"].as_array().map(|a| a.len()), Some(4));
        c.eq("JSON fuchs_relation.ok", v["fuchs_relation"]["ok"].as_bool(), Some(true));
        c.eq("JSON schema", v["schema"].as_str(), Some("fuchsian-report/1"));
    }
    time_limit(c, start.elapsed(), Duration::from_secs(1));
}

fn criterion_2(c: &mut Checks) {
    let start = Instant::now();
    // computed places 0, -1, infinity; the reference table labels -1 as "1"
    check_table(
        c,
        &Table {
            key: "F36",
            places: vec![
                (pt("-1"), set(&["5/6", "11/6", "1/3"]), 2),
                (pt("0"), set(&["1", "3/4", "5/4"]), 4),
                (Place::Infinity, set(&["-1", "-3/4", "-5/4"]), 4),
            ],
            hurwitz: "2",
            group_order: 36,
            genus: 1,
        },
    );
    time_limit(c, start.elapsed(), Duration::from_secs(1));
}

fn criterion_3(c: &mut Checks) {
    let start = Instant::now();
    check_table(
        c,
        &Table {
            key: "F36-std",
            places: vec![
                (pt("0"), set(&["3/4", "1", "5/4"]), 4),
                (pt("1"), set(&["1/2", "1", "3/2"]), 2),
                (Place::Infinity, set(&["-4/3", "-13/12", "-7/12"]), 4),
            ],
            hurwitz: "2",
            group_order: 36,
            genus: 1,
        },
    );
    time_limit(c, start.elapsed(), Duration::from_secs(1));
}

fn criterion_4(c: &mut Checks) {
    let start = Instant::now();
    let quad = Place::finite(&Polynomial::from_rationals(&[rat(1, 3), rat(0, 1), rat(1, 1)]));
    check_table(
        c,
        &Table {
            key: "H72",
            places: vec![
                (pt("1"), set(&["0", "1", "3"]), 1),
                (quad.clone(), set(&["-7/12", "-1/3", "-1/12"]), 4),
                (Place::Infinity, set(&["13/12", "4/3", "19/12"]), 4),
            ],
            hurwitz: "9/4",
            group_order: 72,
            genus: 10,
        },
    );
    if let Ok(l) = catalog("H72") {
        if let Ok(reports) = exponent_reports(&l) {
            c.eq("place 1 apparent", report_at(&reports, &pt("1")).map(|r| r.apparent), Some(true));
            c.eq("degree of x^2 + 1/3", report_at(&reports, &quad).map(|r| r.place.degree()), Some(2));
        }
    }
    let out = run_command(["fuchsian", "genus", "--catalog", "H72", "--group-order", "72", "--format", "json"]);
    let genus = serde_json::from_str::<serde_json::Value>(&out.stdout).ok().and_then(|v| v["genus"].as_str().map(String::from));
    c.eq("CLI genus --group-order 72", (out.code, genus), (0, Some("10".to_string())));
    time_limit(c, start.elapsed(), Duration::from_secs(2));
}

fn criterion_5(c: &mut Checks) {
    let start = Instant::now();
    check_table(
        c,
        &Table {
            key: "H216",
            places: vec![
                (pt("0"), set(&["2/3", "1", "4/3"]), 3),
                (pt("1"), set(&["5/9", "8/9", "14/9"]), 3),
                (Place::Infinity, set(&["-5/4", "-1", "-3/4"]), 4),
            ],
            hurwitz: "25/12",
            group_order: 216,
            genus: 10,
        },
    );
    time_limit(c, start.elapsed(), Duration::from_secs(1));
}

fn criterion_6(c: &mut Checks) {
    let start = Instant::now();
    for rec in pullback_records() {
        let (Ok(l), Ok(partner)) = (catalog(&rec.equation), catalog(&rec.partner)) else {
            c.check(false, format!("catalog lookup for {} / {}", rec.equation, rec.partner));
            continue;
        };
        let Some(f) = c.result("map", parse_expression_in(&rec.map, l.var())) else { continue };
        let Some(map) = c.result("map", RationalMap::new(f)) else { continue };
        let eq = projectively_equivalent(&l, &pullback(&partner, &map));
        c.eq(&format!("{} ~ pullback({}, {})", rec.equation, rec.partner, rec.map), eq.ok(), Some(true));
    }
    // the same three claims through the CLI
    let out = run_command([
        "fuchsian",
        "equiv",
        "--catalog",
        "G54",
        "--pullback-of",
        "3F2-klein",
        "--map",
        "(1/16)*(x^2+1)^4/(x^2*(x+1)^2*(x-1)^2)",
        "--format",
        "json",
    ]);
    let v: Option<serde_json::Value> = serde_json::from_str(&out.stdout).ok();
    c.eq("CLI equiv G54", v.and_then(|v| v["equivalent"].as_bool()), Some(true));
    // informational: the map that does relate the displayed F36 equation
    if let (Ok(l), Ok(partner)) = (catalog("F36"), catalog("3F2-klein")) {
        let alt = RationalMap::new(parse_expression_in("4*x/(x+1)^2", "x").unwrap()).unwrap();
        let ok = projectively_equivalent(&l, &pullback(&partner, &alt)).unwrap_or(false);
        c.notes.push(format!("note: F36 ~ pullback(3F2-klein, 4*x/(x+1)^2) = {ok}"));
    }
    time_limit(c, start.elapsed(), Duration::from_secs(30));
}

fn criterion_7(c: &mut Checks) {
    let start = Instant::now();
    let mut keys: Vec<String> = catalog_file().entries.iter().map(|e| e.name.clone()).collect();
    keys.extend(["St:A4", "St:S4", "St:A5", "St:D2n:2", "St:D2n:3", "St:D2n:5"].map(String::from));
    for k in &keys {
        match catalog(k).map_err(|e| e.to_string()).and_then(|l| fuchs_relation_check(&l).map_err(|e| e.to_string())) {
            Ok(f) => c.check(f.ok, format!("{k}: {} = {}", f.lhs, f.rhs)),
            Err(e) => c.check(false, format!("{k}: {e}")),
        }
    }
    let r = common::suites::fuchs_suite(7, 100);
    c.eq("random operators", r, Ok(100));
    time_limit(c, start.elapsed(), Duration::from_secs(30));
}

fn criterion_8(c: &mut Checks) {
    let start = Instant::now();
    c.eq("random (L0, f) pairs", common::suites::pullback_suite(11, 100, 4), Ok(100));
    time_limit(c, start.elapsed(), Duration::from_secs(60));
}

/// The four sections listed for the A4 invariants.
fn listed_a4_sections() -> Vec<Polynomial> {
    let x = Polynomial::x();
    let xm1 = Polynomial::from_ints(&[-1, 1]);
    vec![
        &x.pow(8) * &xm1.pow(8),
        &x.pow(8) * &xm1.pow(7),
        &x.pow(9) * &xm1.pow(6),
        &x.pow(8) * &xm1.pow(6),
    ]
}

fn span_rank(polys: &[Polynomial]) -> usize {
    let cols = polys.iter().map(|p| (p.deg() + 1).max(0) as usize).max().unwrap_or(0);
    let rows: Vec<Vec<BigRational>> = polys.iter().map(|p| (0..cols).map(|i| p.coeff(i)).collect()).collect();
    fuchsian_core::exactalg::linalg::rank(&rows, cols)
}

fn criterion_9(c: &mut Checks) {
    let start = Instant::now();
    let l = standard_equation(Group::A4);
    let Some(s) = c.result("symmetric_power(St_A4, 24)", symmetric_power(&l, 24)) else { return };
    let Some(b) = c.result("rational_solutions", rational_solutions(&s)) else { return };
    c.eq("dimension of rational solutions", b.dimension(), 4);
    // span comparison: polynomial sections with a common denominator
    let listed = listed_a4_sections();
    let ours: Vec<Polynomial> = match line_bundle_degree(&b) {
        Ok(_) => {
            let den = b.basis.iter().fold(Polynomial::one(), |acc, f| {
                let g = acc.gcd(f.den());
                &acc * &f.den().div_exact(&g).unwrap()
            });
            b.basis.iter().map(|f| f.num() * &den.div_exact(f.den()).unwrap()).collect()
        }
        Err(_) => Vec::new(),
    };
    let rank_ours = span_rank(&ours);
    let rank_listed = span_rank(&listed);
    let mut joint = ours.clone();
    joint.extend(listed.iter().cloned());
    let same_span = rank_ours == rank_listed && span_rank(&joint) == rank_ours;
    c.check(same_span, format!("span equals the listed polynomials (rank {rank_ours}, listed rank {rank_listed})"));
    let listed_basis = InvariantBasis { degree: Some(24), basis: listed.into_iter().map(RationalFunction::from_poly).collect() };
    if let Some((deg, gens)) = c.result("line_bundle_degree(listed)", line_bundle_degree(&listed_basis)) {
        let want = vec![Polynomial::from_ints(&[1, -2, 1]), Polynomial::from_ints(&[-1, 1]), Polynomial::x(), Polynomial::one()];
        let fmt = |g: &[Polynomial]| g.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        c.eq("line_bundle_degree of the listed sections", (deg, fmt(&gens)), (2, fmt(&want)));
    }
    if let Some((deg, _)) = c.result("line_bundle_degree(computed)", line_bundle_degree(&b)) {
        c.eq("deg L from the computed basis", deg, 2);
    }
    if let Some(dl) = c.result("derivative_equation", derivative_equation(&l)) {
        if let Some((deg, _)) = c.result("L' bundle", invariant_bundle(&dl, 24, "L'")) {
            c.eq("deg L'", deg, 26);
        }
    }
    if let Some(r) = c.result("ruled_surface", ruled_surface(&StandardEquationSpec::new(Group::A4), 24)) {
        c.eq("descriptor (deg L, deg L', N)", (r.deg_l, r.deg_l_prime, r.normalized_twist), (2, 26, 24));
    }
    time_limit(c, start.elapsed(), Duration::from_secs(300));
}

fn ruled(c: &mut Checks, g: Group, want: (i64, i64)) {
    let t = Instant::now();
    let d = default_degree(g);
    if let Some(r) = c.result(&format!("ruled_surface({g})"), ruled_surface(&StandardEquationSpec::new(g), d)) {
        c.eq(&format!("{g} with d = {d} [{:.1?}]", t.elapsed()), (r.deg_l, r.deg_l_prime), want);
    }
}

fn criterion_10(c: &mut Checks, slow: bool) {
    let start = Instant::now();
    ruled(c, Group::D2n(2), (1, 5));
    ruled(c, Group::D2n(3), (2, 14));
    c.eq("default degrees D2n:2, D2n:3", (default_degree(Group::D2n(2)), default_degree(Group::D2n(3))), (4, 12));
    if slow {
        ruled(c, Group::S4, (1, 25));
        ruled(c, Group::A5, (1, 61));
        time_limit(c, start.elapsed(), Duration::from_secs(1800));
    } else {
        c.notes.push("note: S4 and A5 are slow checks; run with -- --ignored".to_string());
    }
}

fn criterion_11(c: &mut Checks) {
    let start = Instant::now();
    match common::suites::series_oracle(3, 20, 6, 50) {
        Ok(n) => c.check(true, format!("series oracle: {n} monomial products annihilated")),
        Err(e) => c.check(false, format!("series oracle: {e}")),
    }
    c.eq("rational_solutions vs substitution and ansatz", common::suites::ratsol_oracle(5, 40), Ok(40));
    time_limit(c, start.elapsed(), Duration::from_secs(60));
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let slow = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    // positional filters select criteria by number, as "criterion_7"
    let filters: Vec<&String> = args.iter().skip(1).filter(|a| !a.starts_with('-')).collect();
    type Run = Box<dyn Fn(&mut Checks)>;
    let criteria: Vec<(u32, &str, Run)> = vec![
        (1, "G54 analysis", Box::new(criterion_1)),
        (2, "F36 analysis", Box::new(criterion_2)),
        (3, "third genus-1 equation", Box::new(criterion_3)),
        (4, "H72 analysis", Box::new(criterion_4)),
        (5, "H216 analysis", Box::new(criterion_5)),
        (6, "pullback equivalences", Box::new(criterion_6)),
        (7, "Fuchs relation", Box::new(criterion_7)),
        (8, "pullback delta identity and exponent law", Box::new(criterion_8)),
        (9, "A4 ruled surface", Box::new(criterion_9)),
        (10, "D2n ruled surfaces", Box::new(move |c: &mut Checks| criterion_10(c, slow))),
        (11, "series and ansatz oracles", Box::new(criterion_11)),
    ];
    let mut failed = Vec::new();
    for (n, name, run) in &criteria {
        let id = format!("criterion_{n}");
        if !filters.is_empty() && !filters.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        let mut c = Checks::new();
        let t = Instant::now();
        run(&mut c);
        let verdict = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} [{name}]: {verdict} ({:.2?})", t.elapsed());
        for f in &c.failures {
            println!("    FAILED: {f}");
        }
        for note in &c.notes {
            println!("    ok: {note}");
        }
        if !c.failures.is_empty() {
            failed.push(*n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all selected criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
