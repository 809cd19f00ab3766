//! Fibration predicates for functors, maps of factorization systems and
//! double functors, and the double Grothendieck construction.

mod grothendieck;
mod indexing;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bridge::{dclr_map, dclr_with_embeddings};
use crate::budget::{Budget, BudgetExceeded};
use crate::dblcat::{fullop, grids, is_factorization_double, DblFunctor, DoubleCategory, Grid};
use crate::fincat::{FinCategory, Functor, MorId, ObjId};
use crate::ofs::{FactorizationSystem, OfsMap};

pub use grothendieck::{
    straighten, straighten_round_trip, straighten_with_cleavage, unstraighten,
    unstraighten_round_trip, Cleavage, GrothendieckError, Straightened, Unstraightened,
};
pub use indexing::{
    check_indexing_iso, validate_indexing, DblIndexing, IndexingDefect, IndexingIso,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FibDefect {
    NoLift,
    NonUniqueLift(usize),
    NoCocartesianLift,
    NoCartesianLift,
    /// A cartesian lift of an ingressive morphism that is not ingressive,
    /// or an ingressive morphism that is not cartesian.
    IngressiveMismatch,
}

/// Where a fibration condition fails: the layer checked, the base morphism
/// (or grid index) to be lifted and the object of the total category it is
/// lifted at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibWitness {
    pub layer: String,
    pub morphism: usize,
    pub object: usize,
    pub defect: FibDefect,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FibReport {
    pub verdict: bool,
    pub witnesses: Vec<FibWitness>,
}

impl FibReport {
    fn from_witnesses(witnesses: Vec<FibWitness>) -> Self {
        FibReport {
            verdict: witnesses.is_empty(),
            witnesses,
        }
    }

    fn and(mut self, other: FibReport) -> Self {
        self.witnesses.extend(other.witnesses);
        self.verdict = self.witnesses.is_empty();
        self
    }
}

fn witness(layer: &str, morphism: usize, object: usize, defect: FibDefect) -> FibWitness {
    FibWitness {
        layer: layer.to_string(),
        morphism,
        object,
        defect,
    }
}

fn unique_lift_report(
    d: &FinCategory,
    c: &FinCategory,
    f: &Functor,
    layer: &str,
    along_target: bool,
) -> FibReport {
    let mut out = Vec::new();
    for y in d.objects() {
        let (base, total) = if along_target {
            (c.incoming(f.obj(y)), d.incoming(y))
        } else {
            (c.outgoing(f.obj(y)), d.outgoing(y))
        };
        for &k in base {
            let n = total.iter().filter(|&&g| f.mor(g) == k).count();
            if n != 1 {
                let defect = if n == 0 {
                    FibDefect::NoLift
                } else {
                    FibDefect::NonUniqueLift(n)
                };
                out.push(witness(layer, k, y, defect));
            }
        }
    }
    FibReport::from_witnesses(out)
}

/// Every morphism of `c` into `F(y)` has exactly one lift with target `y`.
pub fn is_right_fibration(d: &FinCategory, c: &FinCategory, f: &Functor) -> FibReport {
    unique_lift_report(d, c, f, "right", true)
}

/// Every morphism of `c` out of `F(x)` has exactly one lift with source `x`.
pub fn is_left_fibration(d: &FinCategory, c: &FinCategory, f: &Functor) -> FibReport {
    unique_lift_report(d, c, f, "left", false)
}

/// `n`-chains of `d` map bijectively onto pairs of an `n`-chain of `c` and an
/// object of `d` over its end.
pub fn nerve_right_bijection(d: &FinCategory, c: &FinCategory, f: &Functor, n: usize) -> bool {
    let mut seen: HashMap<(Vec<MorId>, ObjId, ObjId), usize> = HashMap::new();
    for ch in d.nerve_chains(n) {
        let image: Vec<MorId> = ch.morphisms.iter().map(|&g| f.mor(g)).collect();
        *seen.entry((image, f.obj(ch.start), ch.end(d))).or_default() += 1;
    }
    if seen.values().any(|&k| k != 1) {
        return false;
    }
    let mut expected = 0;
    let base = c.nerve_chains(n);
    for y in d.objects() {
        expected += base.iter().filter(|ch| ch.end(c) == f.obj(y)).count();
    }
    seen.len() == expected
}

/// `g: x → y` is cocartesian: every `h: x → z` together with `k: F(y) → F(z)`
/// satisfying `k ∘ F(g) = F(h)` factors as `l ∘ g` for exactly one `l` over `k`.
pub fn is_cocartesian_edge(d: &FinCategory, c: &FinCategory, f: &Functor, g: MorId) -> bool {
    let (x, y) = (d.src(g), d.tgt(g));
    d.outgoing(x).iter().all(|&h| {
        let z = d.tgt(h);
        c.hom(f.obj(y), f.obj(z))
            .iter()
            .filter(|&&k| c.comp(k, f.mor(g)) == f.mor(h))
            .all(|&k| {
                d.hom(y, z)
                    .iter()
                    .filter(|&&l| f.mor(l) == k && d.comp(l, g) == h)
                    .count()
                    == 1
            })
    })
}

/// `g: y → x` is cartesian: every `h: z → x` together with `k: F(z) → F(y)`
/// satisfying `F(g) ∘ k = F(h)` factors as `g ∘ l` for exactly one `l` over `k`.
pub fn is_cartesian_edge(d: &FinCategory, c: &FinCategory, f: &Functor, g: MorId) -> bool {
    let (y, x) = (d.src(g), d.tgt(g));
    d.incoming(x).iter().all(|&h| {
        let z = d.src(h);
        c.hom(f.obj(z), f.obj(y))
            .iter()
            .filter(|&&k| c.comp(f.mor(g), k) == f.mor(h))
            .all(|&k| {
                d.hom(z, y)
                    .iter()
                    .filter(|&&l| f.mor(l) == k && d.comp(g, l) == h)
                    .count()
                    == 1
            })
    })
}

/// Every `(x, k: F(x) → c)` has a cocartesian lift.
pub fn is_cocartesian_fibration(d: &FinCategory, c: &FinCategory, f: &Functor) -> FibReport {
    let mut out = Vec::new();
    for x in d.objects() {
        for &k in c.outgoing(f.obj(x)) {
            let found = d
                .outgoing(x)
                .iter()
                .any(|&g| f.mor(g) == k && is_cocartesian_edge(d, c, f, g));
            if !found {
                out.push(witness("cocartesian", k, x, FibDefect::NoCocartesianLift));
            }
        }
    }
    FibReport::from_witnesses(out)
}

/// Every `(y, k: c → F(y))` has a cartesian lift.
pub fn is_cartesian_fibration(d: &FinCategory, c: &FinCategory, f: &Functor) -> FibReport {
    let mut out = Vec::new();
    for y in d.objects() {
        for &k in c.incoming(f.obj(y)) {
            let found = d
                .incoming(y)
                .iter()
                .any(|&g| f.mor(g) == k && is_cartesian_edge(d, c, f, g));
            if !found {
                out.push(witness("cartesian", k, y, FibDefect::NoCartesianLift));
            }
        }
    }
    FibReport::from_witnesses(out)
}

/// Restriction of a map of factorization systems to egressive or
/// ingressive subcategories.
fn restrict(
    a: &FactorizationSystem,
    b: &FactorizationSystem,
    f: &OfsMap,
    ingressive: bool,
) -> (FinCategory, FinCategory, Functor) {
    let ((ca, ea), (cb, eb)) = if ingressive {
        (a.ingressive_subcategory(), b.ingressive_subcategory())
    } else {
        (a.egressive_subcategory(), b.egressive_subcategory())
    };
    let mut rank = vec![usize::MAX; b.base().num_morphisms()];
    for (k, &m) in eb.iter().enumerate() {
        rank[m] = k;
    }
    let func = Functor {
        obj_map: f.functor.obj_map.clone(),
        mor_map: ea.iter().map(|&m| rank[f.functor.mor(m)]).collect(),
    };
    (ca, cb, func)
}

fn relabel(mut r: FibReport, layer: &str) -> FibReport {
    for w in &mut r.witnesses {
        w.layer = format!("{layer} {}", w.layer);
    }
    r
}

/// Egressive part a cocartesian fibration, ingressive part a right fibration.
pub fn is_curved_orthofibration(
    a: &FactorizationSystem,
    b: &FactorizationSystem,
    f: &OfsMap,
) -> FibReport {
    let (ea, eb, fe) = restrict(a, b, f, false);
    let (ia, ib, fi) = restrict(a, b, f, true);
    relabel(is_cocartesian_fibration(&ea, &eb, &fe), "egressive")
        .and(relabel(is_right_fibration(&ia, &ib, &fi), "ingressive"))
}

/// Egressive part a cartesian fibration, ingressive part a right fibration.
pub fn is_opgray(a: &FactorizationSystem, b: &FactorizationSystem, f: &OfsMap) -> FibReport {
    let (ea, eb, fe) = restrict(a, b, f, false);
    let (ia, ib, fi) = restrict(a, b, f, true);
    relabel(is_cartesian_fibration(&ea, &eb, &fe), "egressive")
        .and(relabel(is_right_fibration(&ia, &ib, &fi), "ingressive"))
}

/// Ingressives of the base have cartesian lifts (for the whole functor) and
/// the cartesian morphisms over ingressives are exactly the ingressives.
pub fn is_ingressive_cartesian(
    a: &FactorizationSystem,
    b: &FactorizationSystem,
    f: &OfsMap,
) -> FibReport {
    let (d, c, func) = (a.base(), b.base(), &f.functor);
    let mut out = Vec::new();
    for y in d.objects() {
        for &k in c.incoming(func.obj(y)) {
            if !b.is_ingressive(k) {
                continue;
            }
            let found = d
                .incoming(y)
                .iter()
                .any(|&g| func.mor(g) == k && is_cartesian_edge(d, c, func, g));
            if !found {
                out.push(witness("ingressive", k, y, FibDefect::NoCartesianLift));
            }
        }
    }
    for g in d.morphism_ids() {
        let over_ingressive = b.is_ingressive(func.mor(g));
        let cartesian = over_ingressive && is_cartesian_edge(d, c, func, g);
        if cartesian != a.is_ingressive(g) {
            out.push(witness(
                "ingressive",
                func.mor(g),
                d.src(g),
                FibDefect::IngressiveMismatch,
            ));
        }
    }
    FibReport::from_witnesses(out)
}

/// Ingressive part of a map of factorization systems is a right fibration.
pub fn ingressive_right(a: &FactorizationSystem, b: &FactorizationSystem, f: &OfsMap) -> FibReport {
    let (ia, ib, fi) = restrict(a, b, f, true);
    is_right_fibration(&ia, &ib, &fi)
}

pub fn map_grid(f: &DblFunctor, g: &Grid) -> Grid {
    Grid {
        m: g.m,
        n: g.n,
        objects: g.objects.iter().map(|&x| f.obj_map[x]).collect(),
        hmors: g.hmors.iter().map(|&x| f.hmor_map[x]).collect(),
        vmors: g.vmors.iter().map(|&x| f.vmor_map[x]).collect(),
        squares: g.squares.iter().map(|&x| f.square_map[x]).collect(),
    }
}

/// Objects and horizontal morphisms along one row of a grid.
type Row = (Vec<ObjId>, Vec<MorId>);

fn bottom_row(g: &Grid) -> Row {
    let row = g.n;
    let objects = (0..=g.m).map(|c| g.object(row, c)).collect();
    let hmors = (0..g.m).map(|c| g.hmor(row, c)).collect();
    (objects, hmors)
}

/// The functor induced on categories of horizontal `n`-chains and `n × 1`
/// grids is a right fibration: every grid of `c` ending at the image of a
/// chain lifts uniquely to a grid ending at that chain.
pub fn is_vertical_right(
    d: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    n: usize,
    budget: &Budget,
) -> Result<FibReport, BudgetExceeded> {
    let layer = format!("vertical n={n}");
    let base_grids = grids(c, n, 1, budget)?;
    let mut by_bottom: HashMap<(Vec<ObjId>, Vec<MorId>), Vec<usize>> = HashMap::new();
    for (k, g) in base_grids.iter().enumerate() {
        by_bottom.entry(bottom_row(g)).or_default().push(k);
    }
    let index: HashMap<&Grid, usize> = base_grids.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let mut lifts: HashMap<(usize, Row), usize> = HashMap::new();
    for g in grids(d, n, 1, budget)? {
        let image = index[&map_grid(f, &g)];
        *lifts.entry((image, bottom_row(&g))).or_default() += 1;
    }
    let mut out = Vec::new();
    for (chain_id, chain) in grids(d, n, 0, budget)?.iter().enumerate() {
        let key = bottom_row(chain);
        let image = bottom_row(&map_grid(f, chain));
        for &k in by_bottom.get(&image).map(Vec::as_slice).unwrap_or(&[]) {
            let count = lifts.get(&(k, key.clone())).copied().unwrap_or(0);
            if count != 1 {
                let defect = if count == 0 {
                    FibDefect::NoLift
                } else {
                    FibDefect::NonUniqueLift(count)
                };
                out.push(witness(&layer, k, chain_id, defect));
            }
        }
    }
    Ok(FibReport::from_witnesses(out))
}

fn vertical_reports(
    d: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    budget: &Budget,
) -> Result<FibReport, BudgetExceeded> {
    let mut r = FibReport::from_witnesses(Vec::new());
    for n in 0..=2 {
        r = r.and(is_vertical_right(d, c, f, n, budget)?);
    }
    Ok(r)
}

/// Horizontal part a cocartesian fibration, `n`-chain parts right fibrations
/// for `n ≤ 2`.
pub fn is_cocart_right(
    d: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    budget: &Budget,
) -> Result<FibReport, BudgetExceeded> {
    let h = f.horizontal();
    let r = relabel(
        is_cocartesian_fibration(d.horizontal(), c.horizontal(), &h),
        "horizontal",
    );
    Ok(r.and(vertical_reports(d, c, f, budget)?))
}

/// Horizontal part a cartesian fibration, `n`-chain parts right fibrations
/// for `n ≤ 2`.
pub fn is_cart_right(
    d: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    budget: &Budget,
) -> Result<FibReport, BudgetExceeded> {
    let h = f.horizontal();
    let r = relabel(
        is_cartesian_fibration(d.horizontal(), c.horizontal(), &h),
        "horizontal",
    );
    Ok(r.and(vertical_reports(d, c, f, budget)?))
}

/// `is_cocart_right` of the same maps viewed between the full opposites.
pub fn is_left_cart(
    d: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    budget: &Budget,
) -> Result<FibReport, BudgetExceeded> {
    is_cocart_right(&fullop(d), &fullop(c), f, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibError {
    #[error("fibration notions disagree: {0}")]
    Disagreement(String),
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibComparison {
    pub curved_orthofibration: bool,
    pub opgray: bool,
    pub cocart_right: bool,
    pub cart_right: bool,
    pub ingressive_cartesian: bool,
    pub ingressive_right: bool,
}

/// Evaluate both sides of the fibration comparison for a map of
/// factorization systems and its image under `dclr`.
pub fn compare_fibrations(
    a: &FactorizationSystem,
    b: &FactorizationSystem,
    f: &OfsMap,
    budget: &Budget,
) -> Result<FibComparison, FibError> {
    let (sa, sb) = (dclr_with_embeddings(a), dclr_with_embeddings(b));
    let df = dclr_map(&sa, &sb, f);
    let r = FibComparison {
        curved_orthofibration: is_curved_orthofibration(a, b, f).verdict,
        opgray: is_opgray(a, b, f).verdict,
        cocart_right: is_cocart_right(&sa.double, &sb.double, &df, budget)?.verdict,
        cart_right: is_cart_right(&sa.double, &sb.double, &df, budget)?.verdict,
        ingressive_cartesian: is_ingressive_cartesian(a, b, f).verdict,
        ingressive_right: ingressive_right(a, b, f).verdict,
    };
    if r.curved_orthofibration != r.cocart_right
        || r.opgray != r.cart_right
        || r.ingressive_cartesian != r.ingressive_right
    {
        return Err(FibError::Disagreement(format!("{r:?}")));
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceLemma {
    pub higher_right: bool,
    pub source_factorization: bool,
}

/// For `F: D → C` with `F(0,-)` a right fibration over a factorization
/// double category, `F(n,-)` is a right fibration for `n = 1, 2` exactly when
/// `D` is a factorization double category.
pub fn source_lemma_check(
    d: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    budget: &Budget,
) -> Result<SourceLemma, FibError> {
    if !is_vertical_right(d, c, f, 0, budget)?.verdict {
        return Err(FibError::Precondition(
            "F(0,-) is not a right fibration".into(),
        ));
    }
    if is_factorization_double(c).is_err() {
        return Err(FibError::Precondition(
            "target is not a factorization double category".into(),
        ));
    }
    let higher_right = is_vertical_right(d, c, f, 1, budget)?.verdict
        && is_vertical_right(d, c, f, 2, budget)?.verdict;
    let source_factorization = is_factorization_double(d).is_ok();
    if higher_right != source_factorization {
        return Err(FibError::Disagreement(format!(
            "higher right fibration {higher_right}, factorization source {source_factorization}"
        )));
    }
    Ok(SourceLemma {
        higher_right,
        source_factorization,
    })
}
