//! Verification suites over a catalog.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adequate::{adequacy, involution_check, is_adequate, span_category, span_vs_horop};
use crate::bridge::{counit_iso, dclr, segal_chain_check, unit_iso};
use crate::budget::{Budget, BudgetExceeded, DEFAULT_BUDGET};
use crate::catalog::{self_check, Catalog, Entry};
use crate::dblcat::{
    boxtimes, check_dbl_functor, count_dbl_functors, count_grids, enumerate_dbl_functors,
    find_double_isomorphism, fullop, horop, is_double_isomorphism, DoubleCategory,
};
use crate::fib::{
    compare_fibrations, is_cocart_right, is_left_cart, source_lemma_check, straighten_round_trip,
    unstraighten, unstraighten_round_trip, FibError,
};
use crate::fincat::{poset_category, FinCategory};
use crate::ofs::{
    enumerate_ofs_maps, ofs_criteria, saturated_wide_subcategories, validate_ofs,
    FactorizationSystem, MorphismClass,
};

/// Suite names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "ofs",
    "dclr-roundtrip",
    "segal",
    "adequacy",
    "span",
    "fibrations",
    "straightening",
    "controls",
];

/// Size bounds of the exhaustive sweeps.
pub const SWEEP_MAX_OBJECTS: usize = 3;
pub const SWEEP_MAX_MORPHISMS: usize = 12;
pub const SEGAL_MAX_N: usize = 3;
pub const GRID_MAX: usize = 2;
pub const STRAIGHTEN_MAX_OBJECTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub entries: Vec<ReportEntry>,
    pub budget_used: u64,
}

impl Report {
    pub fn count(&self, v: Verdict) -> usize {
        self.entries.iter().filter(|e| e.verdict == v).count()
    }

    /// 0 when every check passes, 2 when a check ran out of budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.count(Verdict::Budget) > 0 {
            2
        } else if self.count(Verdict::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn checks(&self, check: &str) -> impl Iterator<Item = &ReportEntry> {
        let check = check.to_string();
        self.entries.iter().filter(move |e| e.check == check)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let v = match e.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Budget => "BUDGET",
            };
            write!(f, "{v:6} {:24} {}", e.check, e.name)?;
            if let Some(w) = &e.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "suite {}: {} checks, {} passed, {} failed, {} over budget, budget used {}",
            self.suite,
            self.entries.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Budget),
            self.budget_used
        )
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0}; expected one of {SUITES:?} or all")]
    Unknown(String),
}

/// `Ok(None)` passes, `Ok(Some(w))` passes with a note, `Err(w)` fails.
type Outcome = Result<Option<String>, String>;
type CheckFn<'a> = Box<dyn Fn(&Budget) -> Result<Outcome, BudgetExceeded> + Send + Sync + 'a>;

struct Check<'a> {
    name: String,
    check: &'static str,
    run: CheckFn<'a>,
}

fn check<'a>(
    name: impl Into<String>,
    check: &'static str,
    run: impl Fn(&Budget) -> Result<Outcome, BudgetExceeded> + Send + Sync + 'a,
) -> Check<'a> {
    Check {
        name: name.into(),
        check,
        run: Box::new(run),
    }
}

fn execute(suite: &str, checks: Vec<Check<'_>>, limit: u64) -> Report {
    let used = AtomicU64::new(0);
    let entries = checks
        .par_iter()
        .map(|c| {
            let budget = Budget::new(limit);
            let result = (c.run)(&budget);
            used.fetch_add(budget.used().min(limit), Ordering::Relaxed);
            let (verdict, witness) = match result {
                Ok(Ok(note)) => (Verdict::Pass, note),
                Ok(Err(w)) => (Verdict::Fail, Some(w)),
                Err(e) => (Verdict::Budget, Some(e.to_string())),
            };
            ReportEntry {
                name: c.name.clone(),
                check: c.check.to_string(),
                verdict,
                witness,
            }
        })
        .collect();
    Report {
        suite: suite.to_string(),
        entries,
        budget_used: used.into_inner(),
    }
}

/// Run a named suite over `catalog`, giving each check its own budget of
/// `limit` candidate checks.
pub fn run_suite(name: &str, catalog: &Catalog, limit: u64) -> Result<Report, SuiteError> {
    if name == "all" {
        let mut entries = Vec::new();
        let mut used = 0;
        for s in SUITES {
            let r = run_suite(s, catalog, limit)?;
            entries.extend(r.entries);
            used += r.budget_used;
        }
        return Ok(Report {
            suite: "all".into(),
            entries,
            budget_used: used,
        });
    }
    let checks = match name {
        "ofs" => ofs_checks(catalog),
        "dclr-roundtrip" => dclr_checks(catalog),
        "segal" => segal_checks(catalog),
        "adequacy" => adequacy_checks(catalog),
        "span" => span_checks(catalog),
        "fibrations" => fibration_checks(catalog),
        "straightening" => straightening_checks(catalog),
        "controls" => control_checks(catalog),
        _ => return Err(SuiteError::Unknown(name.to_string())),
    };
    Ok(execute(name, checks, limit))
}

pub fn run_default(name: &str, catalog: &Catalog) -> Result<Report, SuiteError> {
    run_suite(name, catalog, DEFAULT_BUDGET)
}

/// At most one morphism between any two objects, and no non-identity
/// isomorphisms.
pub fn is_poset(c: &FinCategory) -> bool {
    c.objects()
        .all(|x| c.objects().all(|y| c.hom(x, y).len() <= 1))
        && c.morphism_ids().all(|f| c.is_identity(f) || !c.is_iso(f))
}

fn in_sweep(c: &FinCategory) -> bool {
    c.num_objects() <= SWEEP_MAX_OBJECTS && c.num_morphisms() <= SWEEP_MAX_MORPHISMS
}

/// Categories of the sweep: catalog categories and bases of catalog systems
/// within the size bounds, deduplicated.
pub fn sweep_categories(catalog: &Catalog) -> Vec<(String, FinCategory)> {
    let mut out: Vec<(String, FinCategory)> = Vec::new();
    let candidates = catalog
        .categories()
        .map(|(e, c)| (e.name.clone(), c.clone()))
        .chain(
            catalog
                .systems()
                .map(|(e, fs)| (format!("base of {}", e.name), fs.base().clone())),
        );
    for (name, c) in candidates {
        if in_sweep(&c) && !out.iter().any(|(_, d)| d.to_raw() == c.to_raw()) {
            out.push((name, c));
        }
    }
    out
}

/// All pairs of iso-containing wide subcategories of `c`.
pub fn class_pairs(
    c: &FinCategory,
    budget: &Budget,
) -> Result<Vec<(MorphismClass, MorphismClass)>, BudgetExceeded> {
    let classes = saturated_wide_subcategories(c, budget)?;
    let mut out = Vec::new();
    for e in &classes {
        for i in &classes {
            out.push((e.clone(), i.clone()));
        }
    }
    Ok(out)
}

fn ofs_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    let mut checks = Vec::new();
    for (name, c) in sweep_categories(catalog) {
        checks.push(check(name, "ofs-criteria-agree", move |b| {
            for (e, i) in class_pairs(&c, b)? {
                let r = ofs_criteria(&c, &e, &i, b)?;
                if !r.agree() {
                    return Ok(Err(format!("E={:?} I={:?}: {r:?}", e.ids(), i.ids())));
                }
            }
            Ok(Ok(None))
        }));
    }
    for (entry, fs) in catalog.systems() {
        checks.push(check(&entry.name, "ofs-validates", move |b| {
            Ok(
                match validate_ofs(
                    fs.base().clone(),
                    fs.egressive().clone(),
                    fs.ingressive().clone(),
                    b,
                ) {
                    Ok(_) => Ok(None),
                    Err(crate::ofs::OfsValidationError::Budget(e)) => return Err(e),
                    Err(e) => Err(e.to_string()),
                },
            )
        }));
    }
    checks
}

/// Catalog systems whose `dclr` image has strictly unique fillers.
fn strict_systems(catalog: &Catalog) -> impl Iterator<Item = (&Entry, &FactorizationSystem)> {
    catalog.systems().filter(|(e, _)| e.expect.is_none())
}

/// Factorization double categories of the catalog: double entries without
/// an expected failure, and `dclr` images of strict systems.
pub fn factorization_doubles(catalog: &Catalog) -> Vec<(String, DoubleCategory)> {
    let mut out: Vec<(String, DoubleCategory)> = catalog
        .doubles()
        .filter(|(e, _)| e.expect.is_none())
        .map(|(e, d)| (e.name.clone(), d.clone()))
        .collect();
    out.extend(strict_systems(catalog).map(|(e, fs)| (format!("dclr {}", e.name), dclr(fs))));
    out
}

/// Number of monotone maps `[k] → [m]`, as the `k`-chains of `[m]`.
fn monotone(k: usize, m: usize) -> usize {
    poset_category(m).nerve_chains(k).len()
}

fn dclr_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    let mut checks = Vec::new();
    for (entry, fs) in catalog.systems() {
        checks.push(check(&entry.name, "dclr-factorization-double", move |_| {
            Ok(self_check(entry))
        }));
        checks.push(check(&entry.name, "unit-iso", move |_| {
            Ok(match unit_iso(fs) {
                Err(e) => Err(e.to_string()),
                Ok(r) if is_poset(fs.base()) && !r.on_the_nose => {
                    Err("poset base but quotient is not trivial".into())
                }
                Ok(r) if r.on_the_nose => Ok(None),
                Ok(r) => Ok(Some(format!(
                    "quotient {} of {} corners morphisms",
                    r.quotient.num_morphisms(),
                    r.projection.mor_map.len()
                ))),
            })
        }));
        if entry.family == "product-ofs" && entry.params.len() == 2 {
            let (m, n) = (entry.params[0], entry.params[1]);
            checks.push(check(&entry.name, "product-formula", move |b| {
                let d = dclr(fs);
                let target = boxtimes(&poset_category(m), &poset_category(n));
                let Some(iso) = find_double_isomorphism(&d, &target, b)? else {
                    return Ok(Err("no double isomorphism to the box product".into()));
                };
                if check_dbl_functor(&d, &target, &iso).is_err()
                    || !is_double_isomorphism(&d, &target, &iso)
                {
                    return Ok(Err(
                        "constructed comparison is not a double isomorphism".into()
                    ));
                }
                for k in 0..=GRID_MAX {
                    for l in 0..=GRID_MAX {
                        let got = count_grids(&d, k, l, b)?;
                        let want = monotone(k, m) * monotone(l, n);
                        if got != want {
                            return Ok(Err(format!("{k}x{l} grids: {got}, expected {want}")));
                        }
                    }
                }
                Ok(Ok(None))
            }));
        }
    }
    for (name, d) in factorization_doubles(catalog) {
        checks.push(check(name, "counit-iso", move |_| {
            Ok(counit_iso(&d).map(|_| None).map_err(|e| e.to_string()))
        }));
    }
    let small: Vec<_> = strict_systems(catalog)
        .filter(|(_, fs)| fs.num_objects() <= SWEEP_MAX_OBJECTS)
        .collect();
    for &(ea, a) in &small {
        for &(eb, b_fs) in &small {
            checks.push(check(
                format!("{} -> {}", ea.name, eb.name),
                "fully-faithful",
                move |b| {
                    let maps = enumerate_ofs_maps(a, b_fs, b)?.len();
                    let functors = count_dbl_functors(&dclr(a), &dclr(b_fs), b)?;
                    Ok(if maps == functors {
                        Ok(None)
                    } else {
                        Err(format!("{maps} maps, {functors} double functors"))
                    })
                },
            ));
        }
    }
    checks
}

fn segal_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    let mut checks = Vec::new();
    for (name, d) in factorization_doubles(catalog) {
        checks.push(check(name, "segal-chains", move |b| {
            for n in 0..=SEGAL_MAX_N {
                match segal_chain_check(&d, n, b) {
                    Ok(_) => {}
                    Err(crate::bridge::BridgeError::Budget(e)) => return Err(e),
                    Err(e) => return Ok(Err(format!("n={n}: {e}"))),
                }
            }
            Ok(Ok(None))
        }));
    }
    for (entry, d) in catalog.doubles() {
        if entry.family != "ardc" || entry.params.len() != 1 {
            continue;
        }
        let k = entry.params[0];
        checks.push(check(&entry.name, "join-formula", move |b| {
            for m in 0..=GRID_MAX {
                for n in 0..=GRID_MAX {
                    let got = count_grids(d, m, n, b)?;
                    let want = monotone(n + m + 1, k);
                    if got != want || (k == 1 && got != n + m + 3) {
                        return Ok(Err(format!("{m}x{n} grids: {got}, expected {want}")));
                    }
                }
            }
            Ok(Ok(None))
        }));
    }
    checks
}

fn adequacy_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    let mut checks = Vec::new();
    for (name, c) in sweep_categories(catalog) {
        checks.push(check(name, "adequacy-criteria-agree", move |b| {
            for (e, i) in class_pairs(&c, b)? {
                if !ofs_criteria(&c, &e, &i, b)?.is_valid() {
                    continue;
                }
                let r = is_adequate(&c, &e, &i);
                if !r.agree() {
                    return Ok(Err(format!("E={:?} I={:?}: {r:?}", e.ids(), i.ids())));
                }
            }
            Ok(Ok(None))
        }));
    }
    for (entry, c) in catalog.categories() {
        if entry.family == "product" && entry.params == [1, 1] {
            checks.push(check(&entry.name, "lattice-counterexample", move |_| {
                let all = MorphismClass::all(c);
                let r = is_adequate(c, &all, &all);
                Ok(match (&r.pullbacks, &r.unique_extension) {
                    (Err(a), Err(_)) => Ok(Some(format!("{a:?}"))),
                    _ => Err(format!("(all, all) not rejected by both criteria: {r:?}")),
                })
            }));
        }
    }
    for (entry, fs) in catalog.systems() {
        checks.push(check(&entry.name, "adequacy", move |_| {
            Ok(adequacy(fs)
                .map(|a| Some(format!("adequate: {a}")))
                .map_err(|e| e.to_string()))
        }));
    }
    checks
}

fn span_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    let mut checks = Vec::new();
    for (entry, fs) in catalog.systems() {
        if !is_poset(fs.base()) || adequacy(fs) != Ok(true) {
            continue;
        }
        checks.push(check(&entry.name, "span-vs-horop", move |_| {
            Ok(span_vs_horop(fs).map(|_| None).map_err(|e| e.to_string()))
        }));
        checks.push(check(&entry.name, "span-involution", move |_| {
            Ok(involution_check(fs)
                .map(|_| None)
                .map_err(|e| e.to_string()))
        }));
        checks.push(check(&entry.name, "span-revalidates", move |_| {
            Ok(match span_category(fs) {
                Err(e) => Err(e.to_string()),
                Ok(s) => match adequacy(&s.fs) {
                    Ok(true) => Ok(None),
                    Ok(false) => Err("span category is not adequate".into()),
                    Err(e) => Err(e.to_string()),
                },
            })
        }));
    }
    let doubles = catalog
        .doubles()
        .map(|(e, d)| (e.name.clone(), d.clone()))
        .chain(strict_systems(catalog).map(|(e, fs)| (format!("dclr {}", e.name), dclr(fs))));
    for (name, d) in doubles {
        checks.push(check(name, "horop-involution", move |_| {
            Ok(if horop(&horop(&d)).to_raw() == d.to_raw() {
                Ok(None)
            } else {
                Err("horop twice changes the tables".into())
            })
        }));
    }
    checks
}

fn fibration_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    let mut checks = Vec::new();
    let small: Vec<_> = strict_systems(catalog)
        .filter(|(_, fs)| fs.num_objects() <= SWEEP_MAX_OBJECTS)
        .collect();
    for &(ea, a) in &small {
        for &(eb, b_fs) in &small {
            checks.push(check(
                format!("{} -> {}", ea.name, eb.name),
                "fibration-comparison",
                move |b| {
                    for f in enumerate_ofs_maps(a, b_fs, b)? {
                        match compare_fibrations(a, b_fs, &f, b) {
                            Ok(_) => {}
                            Err(FibError::Budget(e)) => return Err(e),
                            Err(e) => return Ok(Err(format!("{:?}: {e}", f.functor))),
                        }
                    }
                    Ok(Ok(None))
                },
            ));
        }
    }
    let doubles: Vec<(String, DoubleCategory)> = catalog
        .doubles()
        .map(|(e, d)| (e.name.clone(), d.clone()))
        .chain(strict_systems(catalog).map(|(e, fs)| (format!("dclr {}", e.name), dclr(fs))))
        .filter(|(_, d)| d.num_objects() <= SWEEP_MAX_OBJECTS)
        .collect();
    for (na, d) in &doubles {
        for (nc, c) in &doubles {
            let (d, c) = (d.clone(), c.clone());
            checks.push(check(format!("{na} -> {nc}"), "source-lemma", move |b| {
                let (d, c) = (&d, &c);
                let mut applicable = 0;
                for f in enumerate_dbl_functors(d, c, b)? {
                    match source_lemma_check(d, c, &f, b) {
                        Ok(_) => applicable += 1,
                        Err(FibError::Precondition(_)) => {}
                        Err(FibError::Budget(e)) => return Err(e),
                        Err(e) => return Ok(Err(format!("{f:?}: {e}"))),
                    }
                }
                Ok(Ok(Some(format!(
                    "{applicable} functors satisfy the preconditions"
                ))))
            }));
        }
    }
    checks
}

fn straightening_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    let mut checks = Vec::new();
    for (entry, x) in catalog.indexings() {
        if x.base.num_objects() > STRAIGHTEN_MAX_OBJECTS {
            continue;
        }
        checks.push(check(&entry.name, "unstraighten-cocart-right", move |b| {
            let u = match unstraighten(x) {
                Ok(u) => u,
                Err(e) => return Ok(Err(e.to_string())),
            };
            let r = is_cocart_right(&u.total, &x.base, &u.projection, b)?;
            Ok(if r.verdict {
                Ok(None)
            } else {
                Err(format!("{:?}", r.witnesses.first()))
            })
        }));
        checks.push(check(&entry.name, "indexing-round-trip", move |b| {
            Ok(match unstraighten_round_trip(x, b) {
                Ok(_) => Ok(None),
                Err(crate::fib::GrothendieckError::Budget(e)) => return Err(e),
                Err(e) => Err(e.to_string()),
            })
        }));
        checks.push(check(&entry.name, "fibration-round-trip", move |b| {
            let u = match unstraighten(x) {
                Ok(u) => u,
                Err(e) => return Ok(Err(e.to_string())),
            };
            Ok(
                match straighten_round_trip(&u.total, &x.base, &u.projection, b) {
                    Ok(_) => Ok(None),
                    Err(crate::fib::GrothendieckError::Budget(e)) => return Err(e),
                    Err(e) => Err(e.to_string()),
                },
            )
        }));
        checks.push(check(&entry.name, "left-cart-via-fullop", move |b| {
            let u = match unstraighten(x) {
                Ok(u) => u,
                Err(e) => return Ok(Err(e.to_string())),
            };
            let (t, c) = (fullop(&u.total), fullop(&x.base));
            let r = is_left_cart(&t, &c, &u.projection, b)?;
            if !r.verdict {
                return Ok(Err(format!("{:?}", r.witnesses.first())));
            }
            Ok(
                match straighten_round_trip(&fullop(&t), &fullop(&c), &u.projection, b) {
                    Ok(_) => Ok(None),
                    Err(crate::fib::GrothendieckError::Budget(e)) => return Err(e),
                    Err(e) => Err(e.to_string()),
                },
            )
        }));
    }
    checks
}

fn control_checks(catalog: &Catalog) -> Vec<Check<'_>> {
    catalog
        .entries
        .iter()
        .map(|entry| {
            let name = match &entry.expect {
                Some(code) => format!("{} (expects {code})", entry.name),
                None => entry.name.clone(),
            };
            check(name, "catalog-self-check", move |_| Ok(self_check(entry)))
        })
        .collect()
}
