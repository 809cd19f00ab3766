//! Named example instances with expected verdicts.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bridge::ardc;
use crate::budget::Budget;
use crate::dblcat::{
    boxtimes, delooping, terminal_double, validate_double, DoubleCategory, RawDouble,
};
use crate::fib::{validate_indexing, DblIndexing};
use crate::fincat::{
    arrow_category, codiscrete, from_monoid, from_poset, poset_category, product, FinCategory,
    Functor, NatTrans,
};
use crate::io::{self, Document, IoError, Kind};
use crate::ofs::{
    all_isos, arrow_ofs, isos_all, product_ofs, validate_ofs, FactorizationSystem, MorphismClass,
};

/// Expected error code of a double category whose strict filler uniqueness
/// fails, or of a factorization system whose `dclr` image does.
pub const NOT_FACTORIZATION_DOUBLE: &str = "not-factorization-double";
/// Expected error code of raw double data violating interchange.
pub const INTERCHANGE: &str = "interchange";
/// Expected error code of a category with a cospan that has no pullback.
pub const NO_PULLBACK: &str = "no-pullback";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Category(FinCategory),
    Ofs(FactorizationSystem),
    Double(DoubleCategory),
    /// Double data that is expected not to validate.
    RawDouble(RawDouble),
    Indexing(DblIndexing),
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Category(_) => Kind::Category,
            Instance::Ofs(_) => Kind::Ofs,
            Instance::Double(_) | Instance::RawDouble(_) => Kind::Double,
            Instance::Indexing(_) => Kind::Indexing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    /// Construction family, e.g. `product-ofs` with params `[m, n]`.
    pub family: String,
    pub params: Vec<usize>,
    pub instance: Instance,
    /// Error code the entry's characteristic check is expected to produce.
    pub expect: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<Entry>,
}

fn entry(name: impl Into<String>, family: &str, params: &[usize], instance: Instance) -> Entry {
    Entry {
        name: name.into(),
        family: family.into(),
        params: params.to_vec(),
        instance,
        expect: None,
    }
}

fn first<T: std::fmt::Debug>(defects: &[T]) -> Result<Option<String>, String> {
    match defects.first() {
        None => Ok(None),
        Some(x) => Err(format!("{x:?}")),
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn z2() -> FinCategory {
    from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]])
}

/// Multiplication table of the symmetric group on three letters, as
/// permutations of `{0,1,2}` with `table[a][b] = a∘b`.
pub fn s3_table() -> (Vec<&'static str>, Vec<Vec<usize>>) {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let c = [a[b[0]], a[b[1]], a[b[2]]];
                    perms.iter().position(|p| *p == c).expect("closed")
                })
                .collect()
        })
        .collect();
    (vec!["e", "s01", "s12", "s02", "r", "r2"], table)
}

/// Two incomparable objects below a common upper bound; no meets.
pub fn no_meet_poset() -> FinCategory {
    from_poset(names(&["a", "b", "c"]), |x, y| x == y || y == 2)
}

/// Two incomparable objects above a common lower bound; no joins.
pub fn no_join_poset() -> FinCategory {
    from_poset(names(&["c", "a", "b"]), |x, y| x == y || x == 0)
}

/// Two objects with two parallel arrows between them.
pub fn parallel_pair() -> FinCategory {
    let morphisms = vec![
        crate::fincat::Morphism {
            name: "id_a".into(),
            src: 0,
            tgt: 0,
        },
        crate::fincat::Morphism {
            name: "id_b".into(),
            src: 1,
            tgt: 1,
        },
        crate::fincat::Morphism {
            name: "u".into(),
            src: 0,
            tgt: 1,
        },
        crate::fincat::Morphism {
            name: "w".into(),
            src: 0,
            tgt: 1,
        },
    ];
    FinCategory::from_parts(names(&["a", "b"]), morphisms, vec![0, 1], |g, f| {
        match (g, f) {
            (1, x) | (x, 0) => x,
            _ => unreachable!("only identities compose with the parallel arrows"),
        }
    })
}

/// The system on `[2]` with `0→1` egressive and `1→2` ingressive.
pub fn chain_ofs() -> FactorizationSystem {
    let c = poset_category(2);
    let up = |a, b| c.hom(a, b)[0];
    let e = MorphismClass::from_ids(&c, &[c.identity(0), c.identity(1), c.identity(2), up(0, 1)]);
    let i = MorphismClass::from_ids(&c, &[c.identity(0), c.identity(1), c.identity(2), up(1, 2)]);
    validate_ofs(c, e, i, &Budget::default()).expect("valid system")
}

/// Every fiber `k`, every functor the identity, every component an identity.
pub fn constant_indexing(base: &DoubleCategory, k: &FinCategory) -> DblIndexing {
    let id = Functor::identity(k);
    DblIndexing {
        base: base.clone(),
        obj_cat: vec![k.clone(); base.num_objects()],
        h_fun: vec![id.clone(); base.num_hmors()],
        v_fun: vec![id.clone(); base.num_vmors()],
        sq_nat: vec![NatTrans::identity(k, &id); base.num_squares()],
    }
}

/// Indexing with the given functors whose squares carry identity components.
fn identity_component_indexing(
    base: DoubleCategory,
    obj_cat: Vec<FinCategory>,
    h_fun: Vec<Functor>,
    v_fun: Vec<Functor>,
) -> DblIndexing {
    let h = base.horizontal();
    let sq_nat = base
        .squares()
        .iter()
        .map(|s| {
            let tgt = &obj_cat[h.tgt(s.top)];
            let (bottom, right) = (&h_fun[s.bottom], &v_fun[s.right]);
            NatTrans {
                components: obj_cat[h.src(s.bottom)]
                    .objects()
                    .map(|a| tgt.identity(right.obj(bottom.obj(a))))
                    .collect(),
            }
        })
        .collect();
    DblIndexing {
        base,
        obj_cat,
        h_fun,
        v_fun,
        sq_nat,
    }
}

/// Over the horizontal arrow `0 → 1`: `X(0) = [0]`, `X(1) = [1]`, the arrow
/// picking the bottom object.
pub fn arrow_indexing() -> DblIndexing {
    let base = boxtimes(&poset_category(1), &poset_category(0));
    let cats = vec![poset_category(0), poset_category(1)];
    let h = base.horizontal();
    let mut h_fun: Vec<Functor> = h
        .morphism_ids()
        .map(|m| Functor::identity(&cats[h.src(m)]))
        .collect();
    let arrow = h
        .morphism_ids()
        .find(|&m| !h.is_identity(m))
        .expect("arrow");
    h_fun[arrow] = Functor {
        obj_map: vec![0],
        mor_map: vec![cats[1].identity(0)],
    };
    let v = base.vertical();
    let v_fun = v
        .morphism_ids()
        .map(|m| Functor::identity(&cats[v.src(m)]))
        .collect();
    identity_component_indexing(base, cats, h_fun, v_fun)
}

/// Over the vertical arrow `0 → 1`: `X(0) = [1]`, `X(1) = [0]`, the arrow
/// restricting along the top object.
pub fn vertical_indexing() -> DblIndexing {
    let base = boxtimes(&poset_category(0), &poset_category(1));
    let cats = vec![poset_category(1), poset_category(0)];
    let h = base.horizontal();
    let h_fun = h
        .morphism_ids()
        .map(|m| Functor::identity(&cats[h.src(m)]))
        .collect();
    let v = base.vertical();
    let mut v_fun: Vec<Functor> = v
        .morphism_ids()
        .map(|m| Functor::identity(&cats[v.src(m)]))
        .collect();
    let arrow = v
        .morphism_ids()
        .find(|&m| !v.is_identity(m))
        .expect("arrow");
    v_fun[arrow] = Functor {
        obj_map: vec![1],
        mor_map: vec![cats[0].identity(1)],
    };
    identity_component_indexing(base, cats, h_fun, v_fun)
}

impl Catalog {
    /// The bundled catalog.
    pub fn builtin() -> Catalog {
        let mut e = Vec::new();
        for n in 0..=4 {
            e.push(entry(
                format!("poset-{n}"),
                "poset",
                &[n],
                Instance::Category(poset_category(n)),
            ));
        }
        for (m, n) in [(1, 1), (1, 2)] {
            let c = product(&poset_category(m), &poset_category(n));
            e.push(entry(
                format!("product-{m}x{n}"),
                "product",
                &[m, n],
                Instance::Category(c),
            ));
        }
        for n in [1, 2] {
            let c = arrow_category(&poset_category(n));
            e.push(entry(
                format!("arrow-{n}"),
                "arrow",
                &[n],
                Instance::Category(c),
            ));
        }
        let (s3_names, s3) = s3_table();
        e.push(entry("z2", "group", &[], Instance::Category(z2())));
        e.push(entry(
            "s3",
            "group",
            &[],
            Instance::Category(from_monoid(&s3_names, &s3)),
        ));
        e.push(entry(
            "product-1xz2",
            "product",
            &[],
            Instance::Category(product(&poset_category(1), &z2())),
        ));
        e.push(entry(
            "codiscrete-2",
            "misc",
            &[],
            Instance::Category(codiscrete(names(&["a", "b"]))),
        ));
        let mut no_meet = entry("no-meet", "misc", &[], Instance::Category(no_meet_poset()));
        no_meet.expect = Some(NO_PULLBACK.into());
        e.push(no_meet);
        e.push(entry(
            "no-join",
            "misc",
            &[],
            Instance::Category(no_join_poset()),
        ));
        e.push(entry(
            "parallel-pair",
            "misc",
            &[],
            Instance::Category(parallel_pair()),
        ));

        for m in 0..=2 {
            for n in 0..=2 {
                let fs = product_ofs(&poset_category(m), &poset_category(n));
                e.push(entry(
                    format!("product-ofs-{m}-{n}"),
                    "product-ofs",
                    &[m, n],
                    Instance::Ofs(fs),
                ));
            }
        }
        for n in [1, 2] {
            e.push(entry(
                format!("arrow-ofs-{n}"),
                "arrow-ofs",
                &[n],
                Instance::Ofs(arrow_ofs(&poset_category(n))),
            ));
        }
        for n in 0..=3 {
            e.push(entry(
                format!("isos-all-{n}"),
                "isos-all",
                &[n],
                Instance::Ofs(isos_all(&poset_category(n))),
            ));
            e.push(entry(
                format!("all-isos-{n}"),
                "all-isos",
                &[n],
                Instance::Ofs(all_isos(&poset_category(n))),
            ));
        }
        e.push(entry("chain-ofs", "ofs", &[], Instance::Ofs(chain_ofs())));
        e.push(entry(
            "all-isos-no-meet",
            "all-isos",
            &[],
            Instance::Ofs(all_isos(&no_meet_poset())),
        ));
        e.push(entry(
            "isos-all-no-join",
            "isos-all",
            &[],
            Instance::Ofs(isos_all(&no_join_poset())),
        ));
        e.push(entry(
            "isos-all-parallel-pair",
            "isos-all",
            &[],
            Instance::Ofs(isos_all(&parallel_pair())),
        ));
        let mut flagged = entry(
            "product-ofs-1-z2",
            "product-ofs",
            &[],
            Instance::Ofs(product_ofs(&poset_category(1), &z2())),
        );
        flagged.expect = Some(NOT_FACTORIZATION_DOUBLE.into());
        e.push(flagged);
        let mut flagged = entry(
            "isos-all-1xz2",
            "isos-all",
            &[],
            Instance::Ofs(isos_all(&product(&poset_category(1), &z2()))),
        );
        flagged.expect = Some(NOT_FACTORIZATION_DOUBLE.into());
        e.push(flagged);

        e.push(entry(
            "terminal-double",
            "terminal",
            &[],
            Instance::Double(terminal_double()),
        ));
        for (m, n) in [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)] {
            let d = boxtimes(&poset_category(m), &poset_category(n));
            e.push(entry(
                format!("boxtimes-{m}-{n}"),
                "boxtimes",
                &[m, n],
                Instance::Double(d),
            ));
        }
        for n in [1, 2] {
            e.push(entry(
                format!("ardc-{n}"),
                "ardc",
                &[n],
                Instance::Double(ardc(&poset_category(n))),
            ));
        }
        let z2d = validate_double(&delooping(&["e", "g"], &[vec![0, 1], vec![1, 0]]))
            .expect("valid delooping");
        let mut z2e = entry("z2-delooping", "delooping", &[], Instance::Double(z2d));
        z2e.expect = Some(NOT_FACTORIZATION_DOUBLE.into());
        e.push(z2e);
        let mut s3e = entry(
            "s3-delooping",
            "delooping",
            &[],
            Instance::RawDouble(delooping(&s3_names, &s3)),
        );
        s3e.expect = Some(INTERCHANGE.into());
        e.push(s3e);

        let box11 = boxtimes(&poset_category(1), &poset_category(1));
        e.push(entry(
            "const-1-over-box-1-1",
            "indexing",
            &[],
            Instance::Indexing(constant_indexing(&box11, &poset_category(1))),
        ));
        e.push(entry(
            "const-z2-over-box-1-1",
            "indexing",
            &[],
            Instance::Indexing(constant_indexing(&box11, &z2())),
        ));
        e.push(entry(
            "const-2-over-terminal",
            "indexing",
            &[],
            Instance::Indexing(constant_indexing(&terminal_double(), &poset_category(2))),
        ));
        e.push(entry(
            "arrow-indexing",
            "indexing",
            &[],
            Instance::Indexing(arrow_indexing()),
        ));
        e.push(entry(
            "vertical-indexing",
            "indexing",
            &[],
            Instance::Indexing(vertical_indexing()),
        ));
        Catalog { entries: e }
    }

    pub fn categories(&self) -> impl Iterator<Item = (&Entry, &FinCategory)> {
        self.entries.iter().filter_map(|e| match &e.instance {
            Instance::Category(c) => Some((e, c)),
            _ => None,
        })
    }

    pub fn systems(&self) -> impl Iterator<Item = (&Entry, &FactorizationSystem)> {
        self.entries.iter().filter_map(|e| match &e.instance {
            Instance::Ofs(fs) => Some((e, fs)),
            _ => None,
        })
    }

    pub fn doubles(&self) -> impl Iterator<Item = (&Entry, &DoubleCategory)> {
        self.entries.iter().filter_map(|e| match &e.instance {
            Instance::Double(d) => Some((e, d)),
            _ => None,
        })
    }

    pub fn raw_doubles(&self) -> impl Iterator<Item = (&Entry, &RawDouble)> {
        self.entries.iter().filter_map(|e| match &e.instance {
            Instance::RawDouble(d) => Some((e, d)),
            _ => None,
        })
    }

    pub fn indexings(&self) -> impl Iterator<Item = (&Entry, &DblIndexing)> {
        self.entries.iter().filter_map(|e| match &e.instance {
            Instance::Indexing(x) => Some((e, x)),
            _ => None,
        })
    }

    /// Write a manifest plus one file per entry into `dir`.
    pub fn save(&self, dir: &Path) -> Result<(), IoError> {
        let mut manifest = Vec::new();
        for e in &self.entries {
            let file = format!("{}.json", e.name);
            let path = dir.join(&file);
            match &e.instance {
                Instance::Category(c) => io::save(&path, &Document::Category(c.clone()))?,
                Instance::Ofs(fs) => io::save(&path, &Document::Ofs(fs.clone()))?,
                Instance::Double(d) => io::save(&path, &Document::Double(d.clone()))?,
                Instance::RawDouble(raw) => {
                    fs::create_dir_all(dir).map_err(|source| IoError::Io {
                        path: dir.to_path_buf(),
                        source,
                    })?;
                    let mut text = serde_json::to_string_pretty(raw).expect("serializable");
                    text.push('\n');
                    fs::write(&path, text).map_err(|source| IoError::Io {
                        path: path.clone(),
                        source,
                    })?;
                }
                Instance::Indexing(x) => io::save(
                    &path,
                    &Document::Indexing(Box::new(io::indexing_doc(&e.name, x.clone()))),
                )?,
            }
            manifest.push(ManifestEntry {
                name: e.name.clone(),
                kind: e.instance.kind(),
                file,
                family: e.family.clone(),
                params: e.params.clone(),
                expect: e.expect.clone(),
            });
        }
        let mut text =
            serde_json::to_string_pretty(&Manifest { entries: manifest }).expect("serializable");
        text.push('\n');
        let path = dir.join(MANIFEST);
        fs::create_dir_all(dir).map_err(|source| IoError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        fs::write(&path, text).map_err(|source| IoError::Io { path, source })
    }

    /// Read a catalog written by [`Catalog::save`] or by hand. Entries with
    /// an expected error code of kind `double` are kept as raw data when they
    /// do not validate.
    pub fn load(dir: &Path) -> Result<Catalog, IoError> {
        let path = dir.join(MANIFEST);
        let text = fs::read_to_string(&path).map_err(|source| IoError::Io { path, source })?;
        let manifest: Manifest = serde_json::from_str(&text).map_err(|e| IoError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let mut entries = Vec::new();
        for m in manifest.entries {
            let path = dir.join(&m.file);
            let instance = match m.kind {
                Kind::Double if m.expect.as_deref() == Some(INTERCHANGE) => {
                    let text =
                        fs::read_to_string(&path).map_err(|source| IoError::Io { path, source })?;
                    let raw: RawDouble =
                        serde_json::from_str(&text).map_err(|e| IoError::Parse {
                            line: e.line(),
                            message: e.to_string(),
                        })?;
                    Instance::RawDouble(raw)
                }
                kind => match io::load(&path, kind)? {
                    Document::Category(c) => Instance::Category(c),
                    Document::Ofs(fs) => Instance::Ofs(fs),
                    Document::Double(d) => Instance::Double(d),
                    Document::Indexing(x) => Instance::Indexing(x.indexing),
                    Document::DblFunctor(_) => {
                        return Err(IoError::Validation(format!(
                            "{}: double functors are not catalog entries",
                            m.name
                        )))
                    }
                },
            };
            entries.push(Entry {
                name: m.name,
                family: m.family,
                params: m.params,
                instance,
                expect: m.expect,
            });
        }
        Ok(Catalog { entries })
    }
}

pub const MANIFEST: &str = "catalog.json";

#[derive(Serialize, Deserialize)]
struct Manifest {
    entries: Vec<ManifestEntry>,
}

#[derive(Serialize, Deserialize)]
struct ManifestEntry {
    name: String,
    kind: Kind,
    file: String,
    family: String,
    #[serde(default)]
    params: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expect: Option<String>,
}

/// Whether the entry passes its own validator; entries with an expected
/// error code must instead fail with that code, and the witness of that
/// failure is returned.
pub fn self_check(entry: &Entry) -> Result<Option<String>, String> {
    use crate::adequate::pullback_complete;
    use crate::dblcat::{is_factorization_double, DoubleDefect};
    match (&entry.instance, entry.expect.as_deref()) {
        (Instance::Category(c), None) => first(&c.defects()),
        (Instance::Category(c), Some(NO_PULLBACK)) => {
            if let Some(x) = c.defects().first() {
                return Err(format!("{x:?}"));
            }
            for z in c.objects() {
                for &f in c.incoming(z) {
                    for &g in c.incoming(z) {
                        if pullback_complete(c, f, g).is_empty() {
                            let (m, n) = (&c.morphism(f).name, &c.morphism(g).name);
                            return Ok(Some(format!("cospan ({m}, {n}) has no pullback")));
                        }
                    }
                }
            }
            Err("every cospan has a pullback".into())
        }
        (Instance::Ofs(fs), None) => is_factorization_double(&crate::bridge::dclr(fs))
            .map(|()| None)
            .map_err(|w| format!("dclr image: {w:?}")),
        (Instance::Ofs(fs), Some(NOT_FACTORIZATION_DOUBLE)) => {
            match is_factorization_double(&crate::bridge::dclr(fs)) {
                Err(w) => Ok(Some(format!(
                    "{} fillers of corner ({}, {})",
                    w.fillers.len(),
                    w.left,
                    w.bottom
                ))),
                Ok(()) => Err("dclr image unexpectedly has unique fillers".into()),
            }
        }
        (Instance::Double(d), None) => first(&d.defects()),
        (Instance::Double(d), Some(NOT_FACTORIZATION_DOUBLE)) => match is_factorization_double(d) {
            Err(w) => Ok(Some(format!(
                "{} fillers of corner ({}, {})",
                w.fillers.len(),
                w.left,
                w.bottom
            ))),
            Ok(()) => Err("unexpectedly a factorization double category".into()),
        },
        (Instance::RawDouble(raw), Some(INTERCHANGE)) => match validate_double(raw) {
            Err(e) => match e
                .defects
                .iter()
                .find(|d| matches!(d, DoubleDefect::InterchangeFailure { .. }))
            {
                Some(d) => Ok(Some(format!("{d:?}"))),
                None => Err(format!("fails for another reason: {e}")),
            },
            Ok(_) => Err("unexpectedly valid".into()),
        },
        (Instance::RawDouble(raw), None) => validate_double(raw)
            .map(|_| None)
            .map_err(|e| e.to_string()),
        (Instance::Indexing(x), None) => validate_indexing(x)
            .map(|()| None)
            .map_err(|e| e.to_string()),
        (_, Some(code)) => Err(format!("unknown expected error code {code} for this kind")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_entries_pass_self_check() {
        let cat = Catalog::builtin();
        for e in &cat.entries {
            self_check(e).unwrap_or_else(|w| panic!("{}: {w}", e.name));
        }
        let mut names: Vec<_> = cat.entries.iter().map(|e| &e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), cat.entries.len());
    }

    #[test]
    fn catalog_survives_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cat = Catalog::builtin();
        cat.save(dir.path()).unwrap();
        let back = Catalog::load(dir.path()).unwrap();
        assert_eq!(back, cat);
    }

    #[test]
    fn empty_manifest_loads() {
        let dir = tempfile::tempdir().unwrap();
        Catalog::default().save(dir.path()).unwrap();
        assert!(Catalog::load(dir.path()).unwrap().entries.is_empty());
    }
}
