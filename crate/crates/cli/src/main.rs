use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use factorcat::adequate::span_category;
use factorcat::bridge::{ardc, corners, dclr};
use factorcat::catalog::{Catalog, Instance};
use factorcat::dblcat::{boxtimes, horop, verop, DoubleCategory};
use factorcat::fib::{straighten, unstraighten};
use factorcat::fincat::{poset_category, product};
use factorcat::io::{self, dblfunctor_doc, indexing_doc, Document, IoError, Kind};
use factorcat::ofs::{all_isos, arrow_ofs, isos_all, product_ofs};
use factorcat::suite::{run_suite, Report};
use factorcat::{Budget, BudgetExceeded, FactorizationSystem, FinCategory, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(
    name = "factorcat",
    version,
    about = "Finite factorization systems and double categories"
)]
struct Cli {
    /// Candidate-check budget of each exhaustive search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Catalog directory (a `catalog.json` manifest plus entry files);
    /// defaults to the bundled catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over the catalog.
    Run {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Build an object and write it as JSON.
    Construct {
        /// poset, product, arrow-ofs, product-ofs, all-isos, isos-all, dclr,
        /// corners, span, horop, verop, boxtimes, ardc, unstraighten, straighten
        kind: String,
        /// Integers, or an input given as a file path or `catalog:NAME`.
        args: Vec<String>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a file.
    Validate { kind: Kind, file: PathBuf },
    /// Print a textual summary of a file.
    Show { kind: Kind, file: PathBuf },
    /// Write the bundled catalog to a directory.
    Catalog {
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}

/// 2 for parse, I/O and budget errors, 1 for failed validation.
fn error_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<BudgetExceeded>().is_some() {
        return 2;
    }
    match e.downcast_ref::<IoError>() {
        Some(IoError::Validation(_)) => 1,
        Some(_) => 2,
        None => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Run { suite } => {
            let catalog = match &cli.catalog {
                Some(dir) => Catalog::load(dir)?,
                None => Catalog::builtin(),
            };
            let report = run_suite(suite, &catalog, cli.budget)?;
            print_report(&report, cli.json)?;
            Ok(report.exit_code() as u8)
        }
        Command::Construct { kind, args, out } => {
            let budget = Budget::new(cli.budget);
            let doc = construct(kind, args, cli, &budget, out.as_deref())?;
            match out {
                Some(path) => io::save(path, &doc)?,
                None => match doc {
                    Document::DblFunctor(_) | Document::Indexing(_) => {
                        bail!("{kind} writes several files; pass --out")
                    }
                    _ => print!("{}", io::to_json(&doc)),
                },
            }
            Ok(0)
        }
        Command::Validate { kind, file } => {
            let doc = io::load(file, *kind)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "file": file, "kind": kind, "valid": true })
                );
            } else {
                println!("{}: valid {}", file.display(), doc.kind());
            }
            Ok(0)
        }
        Command::Show { kind, file } => {
            let doc = io::load(file, *kind)?;
            if cli.json {
                print!("{}", io::to_json(&doc));
            } else {
                print!("{}", describe(&doc));
            }
            Ok(0)
        }
        Command::Catalog { out } => {
            Catalog::builtin().save(out)?;
            Ok(0)
        }
    }
}

fn print_report(report: &Report, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        println!("{report}");
    }
    Ok(())
}

fn int(args: &[String], k: usize) -> Result<usize> {
    let s = args
        .get(k)
        .ok_or_else(|| anyhow!("missing integer argument {}", k + 1))?;
    s.parse().with_context(|| format!("not an integer: {s}"))
}

/// Resolve an input argument: a file of `kind`, or `catalog:NAME`.
fn input(arg: Option<&String>, kind: Kind, cli: &Cli) -> Result<Document> {
    let arg = arg.ok_or_else(|| anyhow!("missing input argument"))?;
    if let Some(name) = arg.strip_prefix("catalog:") {
        let catalog = match &cli.catalog {
            Some(dir) => Catalog::load(dir)?,
            None => Catalog::builtin(),
        };
        let entry = catalog
            .entries
            .into_iter()
            .find(|e| e.name == name)
            .ok_or_else(|| anyhow!("no catalog entry {name}"))?;
        return Ok(match entry.instance {
            Instance::Category(c) => Document::Category(c),
            Instance::Ofs(fs) => Document::Ofs(fs),
            Instance::Double(d) => Document::Double(d),
            Instance::Indexing(x) => Document::Indexing(Box::new(indexing_doc(name, x))),
            Instance::RawDouble(_) => bail!("catalog entry {name} is not a valid double category"),
        });
    }
    Ok(io::load(Path::new(arg), kind)?)
}

fn ofs_input(arg: Option<&String>, cli: &Cli) -> Result<FactorizationSystem> {
    match input(arg, Kind::Ofs, cli)? {
        Document::Ofs(fs) => Ok(fs),
        other => bail!("expected a factorization system, got {}", other.kind()),
    }
}

fn double_input(arg: Option<&String>, cli: &Cli) -> Result<DoubleCategory> {
    match input(arg, Kind::Double, cli)? {
        Document::Double(d) => Ok(d),
        other => bail!("expected a double category, got {}", other.kind()),
    }
}

fn stem(out: Option<&Path>) -> String {
    out.and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into())
}

fn construct(
    kind: &str,
    args: &[String],
    cli: &Cli,
    budget: &Budget,
    out: Option<&Path>,
) -> Result<Document> {
    let poset = |k| -> Result<FinCategory> { Ok(poset_category(int(args, k)?)) };
    Ok(match kind {
        "poset" => Document::Category(poset(0)?),
        "product" => Document::Category(product(&poset(0)?, &poset(1)?)),
        "arrow-ofs" => Document::Ofs(arrow_ofs(&poset(0)?)),
        "product-ofs" => Document::Ofs(product_ofs(&poset(0)?, &poset(1)?)),
        "all-isos" => Document::Ofs(all_isos(&poset(0)?)),
        "isos-all" => Document::Ofs(isos_all(&poset(0)?)),
        "boxtimes" => Document::Double(boxtimes(&poset(0)?, &poset(1)?)),
        "ardc" => Document::Double(ardc(&poset(0)?)),
        "dclr" => Document::Double(dclr(&ofs_input(args.first(), cli)?)),
        "corners" => {
            let d = double_input(args.first(), cli)?;
            let k =
                corners(&d).map_err(|w| anyhow!("not a factorization double category: {w:?}"))?;
            Document::Ofs(k.factorization_system(&d))
        }
        "span" => Document::Ofs(span_category(&ofs_input(args.first(), cli)?)?.fs),
        "horop" => Document::Double(horop(&double_input(args.first(), cli)?)),
        "verop" => Document::Double(verop(&double_input(args.first(), cli)?)),
        "unstraighten" => {
            let x = match input(args.first(), Kind::Indexing, cli)? {
                Document::Indexing(x) => x.indexing,
                other => bail!("expected an indexing, got {}", other.kind()),
            };
            let u = unstraighten(&x)?;
            let doc = dblfunctor_doc(&stem(out), u.total, x.base, u.projection);
            Document::DblFunctor(Box::new(doc))
        }
        "straighten" => {
            let f = match input(args.first(), Kind::DblFunctor, cli)? {
                Document::DblFunctor(f) => f,
                other => bail!("expected a double functor, got {}", other.kind()),
            };
            let s = straighten(&f.source, &f.target, &f.functor, budget)?;
            Document::Indexing(Box::new(indexing_doc(&stem(out), s.indexing)))
        }
        _ => bail!("unknown construction {kind}"),
    })
}

fn describe(doc: &Document) -> String {
    let mut s = String::new();
    let cat = |s: &mut String, label: &str, c: &FinCategory| {
        let _ = writeln!(
            s,
            "{label}: {} objects, {} morphisms",
            c.num_objects(),
            c.num_morphisms()
        );
        for f in c.morphism_ids() {
            let m = c.morphism(f);
            if !c.is_identity(f) {
                let _ = writeln!(
                    s,
                    "  {}: {} -> {}",
                    m.name,
                    c.object_name(m.src),
                    c.object_name(m.tgt)
                );
            }
        }
    };
    match doc {
        Document::Category(c) => cat(&mut s, "category", c),
        Document::Ofs(fs) => {
            cat(&mut s, "category", fs.base());
            let names = |ids: Vec<usize>| {
                ids.iter()
                    .map(|&f| fs.base().morphism(f).name.clone())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let _ = writeln!(s, "egressive: {}", names(fs.egressive().ids()));
            let _ = writeln!(s, "ingressive: {}", names(fs.ingressive().ids()));
        }
        Document::Double(d) => describe_double(&mut s, d),
        Document::DblFunctor(f) => {
            let _ = writeln!(s, "double functor {} -> {}", f.source_path, f.target_path);
            let _ = writeln!(s, "objects: {:?}", f.functor.obj_map);
            let _ = writeln!(s, "hmors: {:?}", f.functor.hmor_map);
            let _ = writeln!(s, "vmors: {:?}", f.functor.vmor_map);
            let _ = writeln!(s, "squares: {:?}", f.functor.square_map);
        }
        Document::Indexing(x) => {
            let _ = writeln!(s, "indexing over {}", x.base_path);
            for (c, path) in x.fiber_paths.iter().enumerate() {
                let k = &x.indexing.obj_cat[c];
                let _ = writeln!(
                    s,
                    "  {}: {path} ({} objects, {} morphisms)",
                    x.indexing.base.object_name(c),
                    k.num_objects(),
                    k.num_morphisms()
                );
            }
        }
    }
    s
}

/// Counts, then each square drawn as its boundary when the double category
/// is small.
fn describe_double(s: &mut String, d: &DoubleCategory) {
    let _ = writeln!(
        s,
        "double category: {} objects, {} hmors, {} vmors, {} squares",
        d.num_objects(),
        d.num_hmors(),
        d.num_vmors(),
        d.num_squares()
    );
    if d.num_squares() > 64 {
        return;
    }
    let (h, v) = (d.horizontal(), d.vertical());
    for sq in d.squares() {
        let o = |x| d.object_name(x);
        let _ = writeln!(s, "  {}:", sq.name);
        let _ = writeln!(
            s,
            "    {} --{}--> {}",
            o(h.src(sq.top)),
            h.morphism(sq.top).name,
            o(h.tgt(sq.top))
        );
        let _ = writeln!(
            s,
            "    {:>w$}    {}",
            v.morphism(sq.left).name,
            v.morphism(sq.right).name,
            w = 1
        );
        let _ = writeln!(
            s,
            "    {} --{}--> {}",
            o(h.src(sq.bottom)),
            h.morphism(sq.bottom).name,
            o(h.tgt(sq.bottom))
        );
    }
}
