//! Acceptance harness: one line per criterion, exit status 1 if any fails.
//! All comparisons are exact counts or verdicts (tolerance zero).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use factorcat::adequate::{is_adequate, pullback_complete};
use factorcat::bridge::{ardc, dclr, dclr_with_embeddings};
use factorcat::catalog::{no_meet_poset, s3_table, z2, Catalog};
use factorcat::dblcat::{
    count_dbl_functors, count_grids, delooping, horop, is_factorization_double, validate_double,
    verop, DoubleDefect,
};
use factorcat::fincat::{poset_category, product};
use factorcat::ofs::{arrow_ofs, product_ofs, validate_ofs};
use factorcat::suite::{factorization_doubles, is_poset, run_default, Report, Verdict};
use factorcat::{Budget, FactorizationSystem, MorphismClass, DEFAULT_BUDGET};

/// Exact agreement everywhere; no count may differ from its oracle.
const TOLERANCE: usize = 0;
/// Wall-clock ceiling for the whole harness.
const TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Catalog) -> Outcome);

fn report(suite: &str, catalog: &Catalog) -> Report {
    run_default(suite, catalog).expect("known suite")
}

/// Every entry of the named checks passes, and there is at least one.
fn all_pass(r: &Report, checks: &[&str]) -> Result<usize, String> {
    let mut n = 0;
    for &c in checks {
        let mut seen = 0;
        for e in r.checks(c) {
            if e.verdict != Verdict::Pass {
                return Err(format!(
                    "{c} on {}: {:?} {}",
                    e.name,
                    e.verdict,
                    e.witness.clone().unwrap_or_default()
                ));
            }
            seen += 1;
        }
        if seen == 0 {
            return Err(format!("{c}: no instances ran"));
        }
        n += seen;
    }
    Ok(n)
}

fn exact(what: &str, got: usize, want: usize) -> Result<(), String> {
    if got.abs_diff(want) > TOLERANCE {
        return Err(format!("{what}: got {got}, oracle {want}"));
    }
    Ok(())
}

/// Monotone maps `[k] → [m]`, counted as nondecreasing sequences.
fn monotone_oracle(k: usize, m: usize) -> usize {
    fn go(len: usize, lo: usize, m: usize) -> usize {
        if len == 0 {
            return 1;
        }
        (lo..=m).map(|v| go(len - 1, v, m)).sum()
    }
    go(k + 1, 0, m)
}

/// Chains `a ≤ b ≤ c` in the product poset `[1]×[1]`.
fn two_chains_of_square() -> usize {
    let pts: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let le = |p: (u8, u8), q: (u8, u8)| p.0 <= q.0 && p.1 <= q.1;
    let mut n = 0;
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                if le(a, b) && le(b, c) {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Maps of poset-based systems: object maps that are monotone and send each
/// egressive (ingressive) arrow to an egressive (ingressive) arrow.
fn poset_ofs_maps_oracle(a: &FactorizationSystem, b: &FactorizationSystem) -> usize {
    let (ca, cb) = (a.base(), b.base());
    let (na, nb) = (ca.num_objects(), cb.num_objects());
    let mut count = 0;
    let mut map = vec![0; na];
    loop {
        let ok = ca.morphism_ids().all(|f| {
            let (x, y) = (map[ca.src(f)], map[ca.tgt(f)]);
            match cb.hom(x, y).first() {
                None => false,
                Some(&g) => {
                    (!a.is_egressive(f) || b.is_egressive(g))
                        && (!a.is_ingressive(f) || b.is_ingressive(g))
                }
            }
        });
        count += ok as usize;
        let mut k = 0;
        while k < na {
            map[k] += 1;
            if map[k] < nb {
                break;
            }
            map[k] = 0;
            k += 1;
        }
        if k == na {
            return count;
        }
    }
}

/// Every corner of `dclr fs` has a filler, and any two fillers are joined
/// by exactly one isomorphism of their middle objects.
fn fillers_unique_up_to_iso(fs: &FactorizationSystem) -> Result<(), String> {
    let sd = dclr_with_embeddings(fs);
    let (d, c) = (&sd.double, fs.base());
    for left in d.vertical().morphism_ids() {
        for &bottom in d.horizontal().outgoing(d.vertical().tgt(left)) {
            let fillers = d.fillers(left, bottom);
            if fillers.is_empty() {
                return Err(format!("corner ({left}, {bottom}) has no filler"));
            }
            for &a in fillers {
                for &b in fillers {
                    let (sa, sb) = (d.square(a), d.square(b));
                    let (ta, ra) = (sd.hmor_base[sa.top], sd.vmor_base[sa.right]);
                    let (tb, rb) = (sd.hmor_base[sb.top], sd.vmor_base[sb.right]);
                    let joining = c
                        .hom(c.tgt(ta), c.tgt(tb))
                        .iter()
                        .filter(|&&u| c.is_iso(u) && c.comp(u, ta) == tb && c.comp(rb, u) == ra)
                        .count();
                    if joining != 1 {
                        return Err(format!(
                            "fillers {a} and {b} joined by {joining} isomorphisms"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_1(catalog: &Catalog) -> Outcome {
    let n = all_pass(
        &report("ofs", catalog),
        &["ofs-criteria-agree", "ofs-validates"],
    )?;
    let b = Budget::new(DEFAULT_BUDGET);
    for m in 0..=2 {
        for k in 0..=2 {
            let fs = product_ofs(&poset_category(m), &poset_category(k));
            validate_ofs(
                fs.base().clone(),
                fs.egressive().clone(),
                fs.ingressive().clone(),
                &b,
            )
            .map_err(|e| format!("product_ofs([{m}],[{k}]): {e}"))?;
        }
        let fs = arrow_ofs(&poset_category(m));
        validate_ofs(
            fs.base().clone(),
            fs.egressive().clone(),
            fs.ingressive().clone(),
            &b,
        )
        .map_err(|e| format!("arrow_ofs([{m}]): {e}"))?;
    }
    Ok(format!(
        "{n} sweep checks agree; 12 constructed systems validate"
    ))
}

fn criterion_2(catalog: &Catalog) -> Outcome {
    let systems = catalog.systems().count();
    let n = all_pass(
        &report("dclr-roundtrip", catalog),
        &["dclr-factorization-double"],
    )?;
    exact("systems checked", n, systems)?;
    let mut flagged = 0;
    for (entry, fs) in catalog.systems() {
        match (is_factorization_double(&dclr(fs)), &entry.expect) {
            (Ok(()), None) => {}
            (Err(_), Some(_)) => {
                fillers_unique_up_to_iso(fs).map_err(|w| format!("{}: {w}", entry.name))?;
                flagged += 1;
            }
            (Err(w), None) => return Err(format!("{}: {w:?}", entry.name)),
            (Ok(()), Some(code)) => return Err(format!("{}: expected {code}", entry.name)),
        }
    }
    Ok(format!(
        "{} of {systems} catalog systems strictly; {flagged} flagged iso-carrying systems have \
         non-unique fillers, each pair joined by exactly one connecting isomorphism",
        systems - flagged
    ))
}

fn criterion_3(catalog: &Catalog) -> Outcome {
    let n = all_pass(&report("dclr-roundtrip", catalog), &["product-formula"])?;
    exact("product entries", n, 9)?;
    let b = Budget::new(DEFAULT_BUDGET);
    for m in 0..=2 {
        for k in 0..=2 {
            let d = dclr(&product_ofs(&poset_category(m), &poset_category(k)));
            for r in 0..=2 {
                for c in 0..=2 {
                    let got = count_grids(&d, r, c, &b).map_err(|e| e.to_string())?;
                    exact(
                        &format!("[{m}]x[{k}] {r}x{c} grids"),
                        got,
                        monotone_oracle(r, m) * monotone_oracle(c, k),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "{n} isomorphisms constructed; 81 grid counts match"
    ))
}

fn criterion_4(catalog: &Catalog) -> Outcome {
    let r = report("dclr-roundtrip", catalog);
    let units = all_pass(&r, &["unit-iso"])?;
    exact("unit checks", units, catalog.systems().count())?;
    let counits = all_pass(&r, &["counit-iso"])?;
    exact(
        "counit checks",
        counits,
        factorization_doubles(catalog).len(),
    )?;
    let on_nose = r.checks("unit-iso").filter(|e| e.witness.is_none()).count();
    Ok(format!(
        "{counits} counit isos, {units} unit isos ({on_nose} on the nose)"
    ))
}

fn criterion_5(catalog: &Catalog) -> Outcome {
    let n = all_pass(&report("dclr-roundtrip", catalog), &["fully-faithful"])?;
    let small: Vec<_> = catalog
        .systems()
        .filter(|(e, fs)| e.expect.is_none() && fs.num_objects() <= 3 && is_poset(fs.base()))
        .collect();
    let b = Budget::new(DEFAULT_BUDGET);
    for (ea, a) in &small {
        for (eb, bs) in &small {
            let got = count_dbl_functors(&dclr(a), &dclr(bs), &b).map_err(|e| e.to_string())?;
            exact(
                &format!("{} -> {}", ea.name, eb.name),
                got,
                poset_ofs_maps_oracle(a, bs),
            )?;
        }
    }
    Ok(format!(
        "{n} pairs; {} poset pairs against an object-map oracle",
        small.len() * small.len()
    ))
}

fn criterion_6(catalog: &Catalog) -> Outcome {
    let n = all_pass(&report("segal", catalog), &["segal-chains"])?;
    exact("doubles checked", n, factorization_doubles(catalog).len())?;
    let b = Budget::new(DEFAULT_BUDGET);
    let d = dclr(&product_ofs(&poset_category(1), &poset_category(1)));
    let got = count_dbl_functors(&ardc(&poset_category(2)), &d, &b).map_err(|e| e.to_string())?;
    let want = two_chains_of_square();
    exact("double functors from ardc([2])", got, want)?;
    Ok(format!(
        "{n} doubles for n = 0..3; {got} double functors = {want} chains"
    ))
}

fn criterion_7(catalog: &Catalog) -> Outcome {
    let n = all_pass(&report("segal", catalog), &["join-formula"])?;
    let b = Budget::new(DEFAULT_BUDGET);
    for k in [1, 2] {
        let d = ardc(&poset_category(k));
        for m in 0..=2 {
            for l in 0..=2 {
                let got = count_grids(&d, m, l, &b).map_err(|e| e.to_string())?;
                exact(
                    &format!("ardc([{k}]) {m}x{l}"),
                    got,
                    monotone_oracle(l + m + 1, k),
                )?;
                if k == 1 {
                    exact(&format!("ardc([1]) {m}x{l} closed form"), got, l + m + 3)?;
                }
            }
        }
    }
    Ok(format!(
        "{n} catalog entries; 18 grid counts match the join oracle"
    ))
}

fn criterion_8(catalog: &Catalog) -> Outcome {
    let r = report("adequacy", catalog);
    let n = all_pass(&r, &["adequacy-criteria-agree", "lattice-counterexample"])?;
    let c = product(&poset_category(1), &poset_category(1));
    let all = MorphismClass::all(&c);
    let verdict = is_adequate(&c, &all, &all);
    if verdict.pullbacks.is_ok() || verdict.unique_extension.is_ok() {
        return Err(format!("(all, all) on [1]x[1] accepted: {verdict:?}"));
    }
    Ok(format!(
        "{n} checks, zero disagreements; lattice counterexample rejected by both"
    ))
}

fn criterion_9(catalog: &Catalog) -> Outcome {
    let n = all_pass(
        &report("span", catalog),
        &[
            "span-vs-horop",
            "span-involution",
            "span-revalidates",
            "horop-involution",
        ],
    )?;
    for (entry, d) in catalog.doubles() {
        if horop(&horop(d)).to_raw() != d.to_raw() || verop(&verop(d)).to_raw() != d.to_raw() {
            return Err(format!(
                "{}: duality is not an involution on tables",
                entry.name
            ));
        }
    }
    Ok(format!("{n} checks"))
}

fn criterion_10(catalog: &Catalog) -> Outcome {
    let r = report("fibrations", catalog);
    let n = all_pass(&r, &["fibration-comparison", "source-lemma"])?;
    Ok(format!("{n} maps compared, zero disagreements"))
}

fn criterion_11(catalog: &Catalog) -> Outcome {
    let r = report("straightening", catalog);
    let n = all_pass(
        &r,
        &[
            "unstraighten-cocart-right",
            "indexing-round-trip",
            "fibration-round-trip",
            "left-cart-via-fullop",
        ],
    )?;
    let indexings = catalog
        .indexings()
        .filter(|(_, x)| x.base.num_objects() <= 4)
        .count();
    exact(
        "indexings unstraightened",
        r.checks("unstraighten-cocart-right").count(),
        indexings,
    )?;
    Ok(format!("{n} checks over {indexings} indexings"))
}

fn criterion_12(catalog: &Catalog) -> Outcome {
    all_pass(&report("controls", catalog), &["catalog-self-check"])?;
    let (names, table) = (["e", "g"], vec![vec![0, 1], vec![1, 0]]);
    let d = validate_double(&delooping(&names, &table))
        .map_err(|e| format!("Z/2 delooping invalid: {e}"))?;
    let z2_fillers = match is_factorization_double(&d) {
        Ok(()) => return Err("Z/2 delooping accepted as a factorization double".into()),
        Err(w) => w.fillers.len(),
    };
    exact("Z/2 fillers", z2_fillers, z2().num_morphisms())?;
    let (names, table) = s3_table();
    let interchange = match validate_double(&delooping(&names, &table)) {
        Ok(_) => return Err("S3 delooping accepted".into()),
        Err(e) => e
            .defects
            .iter()
            .any(|d| matches!(d, DoubleDefect::InterchangeFailure { .. })),
    };
    if !interchange {
        return Err("S3 delooping rejected without an interchange witness".into());
    }
    let c = no_meet_poset();
    let (a, b, top) = (0, 1, 2);
    let f = c.hom(a, top)[0];
    let g = c.hom(b, top)[0];
    let pullbacks = pullback_complete(&c, f, g);
    exact("no-meet pullbacks", pullbacks.len(), 0)?;
    Ok(format!(
        "Z/2: {z2_fillers} fillers; S3: interchange failure; no-meet: empty pullback list"
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let catalog = Catalog::builtin();
    let criteria: [Criterion; 12] = [
        ("OFS criterion agreement", criterion_1),
        ("dclr lands in factorization doubles", criterion_2),
        ("product formula", criterion_3),
        ("unit and counit round trips", criterion_4),
        ("fully faithful on mapping sets", criterion_5),
        ("Segal chains", criterion_6),
        ("join formula", criterion_7),
        ("adequacy criteria agree", criterion_8),
        ("span category and duality", criterion_9),
        ("fibration comparison and source lemma", criterion_10),
        ("straightening round trips", criterion_11),
        ("negative controls", criterion_12),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run(&catalog) {
            Ok(detail) => println!(
                "criterion {:>2} PASS {title}: {detail} ({:.2?})",
                k + 1,
                t.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title}: {why}", k + 1);
            }
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed <= TIME_LIMIT;
    println!(
        "runtime {} {elapsed:.2?} (limit {TIME_LIMIT:?})",
        if in_time { "PASS" } else { "FAIL" }
    );
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
