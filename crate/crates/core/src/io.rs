//! JSON interchange for categories, factorization systems, double
//! categories, double functors and indexings.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::Budget;
use crate::dblcat::{check_dbl_functor, validate_double, DblFunctor, DoubleCategory, RawDouble};
use crate::fib::{validate_indexing, DblIndexing};
use crate::fincat::{validate_category, FinCategory, Functor, MorId, NatTrans, RawCategory};
use crate::ofs::{validate_ofs, FactorizationSystem, MorphismClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Category,
    Ofs,
    Double,
    DblFunctor,
    Indexing,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Category => "category",
            Kind::Ofs => "ofs",
            Kind::Double => "double",
            Kind::DblFunctor => "dblfunctor",
            Kind::Indexing => "indexing",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "category" => Ok(Kind::Category),
            "ofs" => Ok(Kind::Ofs),
            "double" => Ok(Kind::Double),
            "dblfunctor" => Ok(Kind::DblFunctor),
            "indexing" => Ok(Kind::Indexing),
            _ => Err(format!("unknown kind {s}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation failed: {0}")]
    Validation(String),
}

impl IoError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        IoError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// A double functor file names its source and target double categories by
/// paths relative to itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DblFunctorDoc {
    pub source_path: String,
    pub target_path: String,
    pub source: DoubleCategory,
    pub target: DoubleCategory,
    pub functor: DblFunctor,
}

/// An indexing file names its base and fiber categories by relative paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexingDoc {
    pub base_path: String,
    pub fiber_paths: Vec<String>,
    pub indexing: DblIndexing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Category(FinCategory),
    Ofs(FactorizationSystem),
    Double(DoubleCategory),
    DblFunctor(Box<DblFunctorDoc>),
    Indexing(Box<IndexingDoc>),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Category(_) => Kind::Category,
            Document::Ofs(_) => Kind::Ofs,
            Document::Double(_) => Kind::Double,
            Document::DblFunctor(_) => Kind::DblFunctor,
            Document::Indexing(_) => Kind::Indexing,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OfsFile {
    objects: Vec<String>,
    morphisms: Vec<crate::fincat::Morphism>,
    identities: std::collections::BTreeMap<usize, MorId>,
    composition: Vec<[MorId; 3]>,
    egressive: Vec<MorId>,
    ingressive: Vec<MorId>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DblFunctorFile {
    source: String,
    target: String,
    obj_map: Vec<usize>,
    hmor_map: Vec<MorId>,
    vmor_map: Vec<MorId>,
    square_map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexingFile {
    base: String,
    fibers: Vec<String>,
    h_functors: Vec<Functor>,
    v_functors: Vec<Functor>,
    components: Vec<Vec<MorId>>,
}

/// Line of the `index`-th element of the top-level array `key`, or of the
/// key itself when the element is not found.
fn element_line(text: &str, key: &str, index: usize) -> usize {
    let bytes = text.as_bytes();
    let needle = format!("\"{key}\"");
    let line_at = |pos: usize| text[..pos].matches('\n').count() + 1;
    let mut depth = 0usize;
    let mut in_string = false;
    let mut i = 0;
    let mut start = None;
    while i < bytes.len() {
        let b = bytes[i];
        if in_string {
            if b == b'\\' {
                i += 1;
            } else if b == b'"' {
                in_string = false;
            }
        } else if b == b'"' {
            if depth == 1 && text[i..].starts_with(&needle) {
                start = Some(i);
                break;
            }
            in_string = true;
        } else if b == b'{' || b == b'[' {
            depth += 1;
        } else if b == b'}' || b == b']' {
            depth = depth.saturating_sub(1);
        }
        i += 1;
    }
    let Some(key_pos) = start else { return 1 };
    let Some(open) = text[key_pos..].find('[').map(|o| key_pos + o) else {
        return line_at(key_pos);
    };
    let mut depth = 0usize;
    let mut count = 0usize;
    let mut in_string = false;
    let mut expecting = true;
    let mut i = open + 1;
    while i < bytes.len() {
        let b = bytes[i];
        if in_string {
            if b == b'\\' {
                i += 1;
            } else if b == b'"' {
                in_string = false;
            }
        } else if !b.is_ascii_whitespace() {
            if expecting && depth == 0 && b != b']' {
                if count == index {
                    return line_at(i);
                }
                expecting = false;
            }
            match b {
                b'"' => in_string = true,
                b'{' | b'[' => depth += 1,
                b'}' | b']' if depth == 0 => break,
                b'}' | b']' => depth -= 1,
                b',' if depth == 0 => {
                    count += 1;
                    expecting = true;
                }
                _ => {}
            }
        }
        i += 1;
    }
    line_at(key_pos)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

fn dangling(text: &str, key: &str, index: usize, what: &str) -> IoError {
    IoError::Parse {
        line: element_line(text, key, index),
        message: format!("dangling {what} in {key}[{index}]"),
    }
}

fn check_category_ids(
    text: &str,
    keys: [&str; 3],
    objects: usize,
    morphisms: &[crate::fincat::Morphism],
    composition: &[[MorId; 3]],
) -> Result<(), IoError> {
    let [mor_key, _, comp_key] = keys;
    for (k, m) in morphisms.iter().enumerate() {
        if m.src >= objects || m.tgt >= objects {
            return Err(dangling(text, mor_key, k, "object id"));
        }
    }
    for (k, row) in composition.iter().enumerate() {
        if row.iter().any(|&f| f >= morphisms.len()) {
            return Err(dangling(text, comp_key, k, "morphism id"));
        }
    }
    Ok(())
}

fn check_identities(
    text: &str,
    key: &str,
    objects: usize,
    morphisms: usize,
    ids: &std::collections::BTreeMap<usize, MorId>,
) -> Result<(), IoError> {
    for (&x, &f) in ids {
        if x >= objects || f >= morphisms {
            return Err(IoError::Parse {
                line: element_line(text, key, 0),
                message: format!("dangling id in {key} entry {x}: {f}"),
            });
        }
    }
    Ok(())
}

pub fn parse_category(text: &str) -> Result<FinCategory, IoError> {
    let raw: RawCategory = parse_json(text)?;
    check_category_ids(
        text,
        ["morphisms", "identities", "composition"],
        raw.objects.len(),
        &raw.morphisms,
        &raw.composition,
    )?;
    check_identities(
        text,
        "identities",
        raw.objects.len(),
        raw.morphisms.len(),
        &raw.identities,
    )?;
    validate_category(&raw).map_err(|e| IoError::Validation(e.to_string()))
}

pub fn parse_ofs(text: &str) -> Result<FactorizationSystem, IoError> {
    let file: OfsFile = parse_json(text)?;
    check_category_ids(
        text,
        ["morphisms", "identities", "composition"],
        file.objects.len(),
        &file.morphisms,
        &file.composition,
    )?;
    check_identities(
        text,
        "identities",
        file.objects.len(),
        file.morphisms.len(),
        &file.identities,
    )?;
    for key in ["egressive", "ingressive"] {
        let class = if key == "egressive" {
            &file.egressive
        } else {
            &file.ingressive
        };
        if let Some(k) = class.iter().position(|&f| f >= file.morphisms.len()) {
            return Err(dangling(text, key, k, "morphism id"));
        }
    }
    let raw = RawCategory {
        objects: file.objects,
        morphisms: file.morphisms,
        identities: file.identities,
        composition: file.composition,
    };
    let c = validate_category(&raw).map_err(|e| IoError::Validation(e.to_string()))?;
    let e = MorphismClass::from_ids(&c, &file.egressive);
    let i = MorphismClass::from_ids(&c, &file.ingressive);
    validate_ofs(c, e, i, &Budget::default()).map_err(|e| IoError::Validation(e.to_string()))
}

pub fn parse_double(text: &str) -> Result<DoubleCategory, IoError> {
    let raw: RawDouble = parse_json(text)?;
    let no = raw.objects.len();
    check_category_ids(
        text,
        ["hmors", "h_identities", "h_composition"],
        no,
        &raw.hmors,
        &raw.h_composition,
    )?;
    check_category_ids(
        text,
        ["vmors", "v_identities", "v_composition"],
        no,
        &raw.vmors,
        &raw.v_composition,
    )?;
    check_identities(text, "h_identities", no, raw.hmors.len(), &raw.h_identities)?;
    check_identities(text, "v_identities", no, raw.vmors.len(), &raw.v_identities)?;
    let (nh, nv, ns) = (raw.hmors.len(), raw.vmors.len(), raw.squares.len());
    for (k, s) in raw.squares.iter().enumerate() {
        if s.top >= nh || s.bottom >= nh || s.left >= nv || s.right >= nv {
            return Err(dangling(text, "squares", k, "edge id"));
        }
    }
    for (key, table, bound) in [
        ("hmor_identity_squares", &raw.hmor_identity_squares, ns),
        ("vmor_identity_squares", &raw.vmor_identity_squares, ns),
    ] {
        if let Some(k) = table.iter().position(|&s| s >= bound) {
            return Err(dangling(text, key, k, "square id"));
        }
    }
    for (key, table) in [
        ("square_hcomp", &raw.square_hcomp),
        ("square_vcomp", &raw.square_vcomp),
    ] {
        if let Some(k) = table.iter().position(|row| row.iter().any(|&s| s >= ns)) {
            return Err(dangling(text, key, k, "square id"));
        }
    }
    validate_double(&raw).map_err(|e| IoError::Validation(e.to_string()))
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| IoError::io(path, e))
}

fn sibling(path: &Path, rel: &str) -> PathBuf {
    path.parent().unwrap_or_else(|| Path::new(".")).join(rel)
}

fn check_lengths(text: &str, checks: &[(&str, usize, usize)]) -> Result<(), IoError> {
    for &(key, got, want) in checks {
        if got != want {
            return Err(IoError::Parse {
                line: element_line(text, key, 0),
                message: format!("{key} has {got} entries, expected {want}"),
            });
        }
    }
    Ok(())
}

fn load_dblfunctor(path: &Path, text: &str) -> Result<DblFunctorDoc, IoError> {
    let file: DblFunctorFile = parse_json(text)?;
    let source = parse_double(&read(&sibling(path, &file.source))?)?;
    let target = parse_double(&read(&sibling(path, &file.target))?)?;
    check_lengths(
        text,
        &[
            ("obj_map", file.obj_map.len(), source.num_objects()),
            ("hmor_map", file.hmor_map.len(), source.num_hmors()),
            ("vmor_map", file.vmor_map.len(), source.num_vmors()),
            ("square_map", file.square_map.len(), source.num_squares()),
        ],
    )?;
    for (key, map, bound) in [
        ("obj_map", &file.obj_map, target.num_objects()),
        ("hmor_map", &file.hmor_map, target.num_hmors()),
        ("vmor_map", &file.vmor_map, target.num_vmors()),
        ("square_map", &file.square_map, target.num_squares()),
    ] {
        if let Some(k) = map.iter().position(|&x| x >= bound) {
            return Err(dangling(text, key, k, "target id"));
        }
    }
    let functor = DblFunctor {
        obj_map: file.obj_map,
        hmor_map: file.hmor_map,
        vmor_map: file.vmor_map,
        square_map: file.square_map,
    };
    check_dbl_functor(&source, &target, &functor)
        .map_err(|e| IoError::Validation(e.to_string()))?;
    Ok(DblFunctorDoc {
        source_path: file.source,
        target_path: file.target,
        source,
        target,
        functor,
    })
}

fn load_indexing(path: &Path, text: &str) -> Result<IndexingDoc, IoError> {
    let file: IndexingFile = parse_json(text)?;
    let base = parse_double(&read(&sibling(path, &file.base))?)?;
    let obj_cat = file
        .fibers
        .iter()
        .map(|rel| parse_category(&read(&sibling(path, rel))?))
        .collect::<Result<Vec<_>, _>>()?;
    check_lengths(
        text,
        &[
            ("fibers", obj_cat.len(), base.num_objects()),
            ("h_functors", file.h_functors.len(), base.num_hmors()),
            ("v_functors", file.v_functors.len(), base.num_vmors()),
            ("components", file.components.len(), base.num_squares()),
        ],
    )?;
    let indexing = DblIndexing {
        base,
        obj_cat,
        h_fun: file.h_functors,
        v_fun: file.v_functors,
        sq_nat: file
            .components
            .into_iter()
            .map(|components| NatTrans { components })
            .collect(),
    };
    validate_indexing(&indexing).map_err(|e| IoError::Validation(e.to_string()))?;
    Ok(IndexingDoc {
        base_path: file.base,
        fiber_paths: file.fibers,
        indexing,
    })
}

/// Parse and validate the file at `path` as `kind`.
pub fn load(path: &Path, kind: Kind) -> Result<Document, IoError> {
    let text = read(path)?;
    Ok(match kind {
        Kind::Category => Document::Category(parse_category(&text)?),
        Kind::Ofs => Document::Ofs(parse_ofs(&text)?),
        Kind::Double => Document::Double(parse_double(&text)?),
        Kind::DblFunctor => Document::DblFunctor(Box::new(load_dblfunctor(path, &text)?)),
        Kind::Indexing => Document::Indexing(Box::new(load_indexing(path, &text)?)),
    })
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn category_json(c: &FinCategory) -> String {
    pretty(&c.to_raw())
}

pub fn ofs_json(fs: &FactorizationSystem) -> String {
    let raw = fs.base().to_raw();
    pretty(&OfsFile {
        objects: raw.objects,
        morphisms: raw.morphisms,
        identities: raw.identities,
        composition: raw.composition,
        egressive: fs.egressive().ids(),
        ingressive: fs.ingressive().ids(),
    })
}

pub fn double_json(d: &DoubleCategory) -> String {
    pretty(&d.to_raw())
}

/// Canonical text of the top-level file of `doc`.
pub fn to_json(doc: &Document) -> String {
    match doc {
        Document::Category(c) => category_json(c),
        Document::Ofs(fs) => ofs_json(fs),
        Document::Double(d) => double_json(d),
        Document::DblFunctor(f) => pretty(&DblFunctorFile {
            source: f.source_path.clone(),
            target: f.target_path.clone(),
            obj_map: f.functor.obj_map.clone(),
            hmor_map: f.functor.hmor_map.clone(),
            vmor_map: f.functor.vmor_map.clone(),
            square_map: f.functor.square_map.clone(),
        }),
        Document::Indexing(x) => pretty(&IndexingFile {
            base: x.base_path.clone(),
            fibers: x.fiber_paths.clone(),
            h_functors: x.indexing.h_fun.clone(),
            v_functors: x.indexing.v_fun.clone(),
            components: x
                .indexing
                .sq_nat
                .iter()
                .map(|n| n.components.clone())
                .collect(),
        }),
    }
}

fn write(path: &Path, text: &str) -> Result<(), IoError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| IoError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| IoError::io(path, e))
}

/// Write `doc` to `path`, together with the files it references.
pub fn save(path: &Path, doc: &Document) -> Result<(), IoError> {
    match doc {
        Document::DblFunctor(f) => {
            write(&sibling(path, &f.source_path), &double_json(&f.source))?;
            write(&sibling(path, &f.target_path), &double_json(&f.target))?;
        }
        Document::Indexing(x) => {
            write(&sibling(path, &x.base_path), &double_json(&x.indexing.base))?;
            for (rel, c) in x.fiber_paths.iter().zip(&x.indexing.obj_cat) {
                write(&sibling(path, rel), &category_json(c))?;
            }
        }
        _ => {}
    }
    write(path, &to_json(doc))
}

/// Wrap an indexing with reference paths derived from `stem`.
pub fn indexing_doc(stem: &str, indexing: DblIndexing) -> IndexingDoc {
    IndexingDoc {
        base_path: format!("{stem}.base.json"),
        fiber_paths: (0..indexing.obj_cat.len())
            .map(|k| format!("{stem}.fiber{k}.json"))
            .collect(),
        indexing,
    }
}

/// Wrap a double functor with reference paths derived from `stem`.
pub fn dblfunctor_doc(
    stem: &str,
    source: DoubleCategory,
    target: DoubleCategory,
    functor: DblFunctor,
) -> DblFunctorDoc {
    DblFunctorDoc {
        source_path: format!("{stem}.source.json"),
        target_path: format!("{stem}.target.json"),
        source,
        target,
        functor,
    }
}
