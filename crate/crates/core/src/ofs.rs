//! Orthogonal factorization systems on finite categories.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::fincat::{
    arrow_category_with_components, check_functor, enumerate_functors_where, product,
    wide_subcategory, FinCategory, Functor, FunctorError, MorId, ObjId,
};

/// A set of morphism ids of a fixed category, stored as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismClass(Vec<bool>);

impl MorphismClass {
    pub fn from_fn(c: &FinCategory, member: impl Fn(MorId) -> bool) -> Self {
        MorphismClass(c.morphism_ids().map(member).collect())
    }

    pub fn from_ids(c: &FinCategory, ids: &[MorId]) -> Self {
        let mut mask = vec![false; c.num_morphisms()];
        for &f in ids {
            mask[f] = true;
        }
        MorphismClass(mask)
    }

    pub fn all(c: &FinCategory) -> Self {
        Self::from_fn(c, |_| true)
    }

    pub fn isos(c: &FinCategory) -> Self {
        Self::from_fn(c, |f| c.is_iso(f))
    }

    pub fn identities(c: &FinCategory) -> Self {
        Self::from_fn(c, |f| c.is_identity(f))
    }

    pub fn contains(&self, f: MorId) -> bool {
        self.0.get(f).copied().unwrap_or(false)
    }

    pub fn ids(&self) -> Vec<MorId> {
        (0..self.0.len()).filter(|&f| self.0[f]).collect()
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Size of the ambient morphism set.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn intersection(&self, other: &MorphismClass) -> MorphismClass {
        MorphismClass(self.0.iter().zip(&other.0).map(|(a, b)| *a && *b).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassName {
    Egressive,
    Ingressive,
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassName::Egressive => f.write_str("egressive"),
            ClassName::Ingressive => f.write_str("ingressive"),
        }
    }
}

/// A commuting square `v ∘ e = i ∘ u` posed against the lifting property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingSquare {
    pub e: MorId,
    pub i: MorId,
    pub u: MorId,
    pub v: MorId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum OfsError {
    #[error("{class} class is not a wide subcategory: {reason}")]
    NotSubcategory {
        class: ClassName,
        reason: String,
        witness: Vec<MorId>,
    },
    #[error("{class} class misses the invertible morphism {morphism}")]
    MissingIso { class: ClassName, morphism: MorId },
    #[error("lifting square {square:?} has {fillers} diagonal fillers")]
    LiftingFailure {
        square: LiftingSquare,
        fillers: usize,
    },
    #[error("morphism {f} has no (egressive, ingressive) factorization")]
    NoFactorization { f: MorId },
    #[error("factorizations of morphism {f} fall into {classes} iso-classes")]
    FactorizationFailure { f: MorId, classes: usize },
    #[error("two factorizations of morphism {f} are connected by {isos} isomorphisms")]
    AmbiguousConnectingIso { f: MorId, isos: usize },
}

/// Verdicts of the class axioms and of the two characterizations of an
/// orthogonal factorization system, computed independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OfsCriteria {
    pub classes: Result<(), OfsError>,
    pub lifting: Result<(), OfsError>,
    pub factorization: Result<(), OfsError>,
}

impl OfsCriteria {
    pub fn agree(&self) -> bool {
        self.lifting.is_ok() == self.factorization.is_ok()
    }

    pub fn is_valid(&self) -> bool {
        self.classes.is_ok() && self.lifting.is_ok() && self.factorization.is_ok()
    }

    fn first_error(self) -> Option<OfsError> {
        self.classes
            .err()
            .or(self.lifting.err())
            .or(self.factorization.err())
    }
}

/// Class axioms: identities, invertible morphisms, closure under composition.
pub fn check_classes(
    c: &FinCategory,
    e: &MorphismClass,
    i: &MorphismClass,
) -> Result<(), OfsError> {
    for (class, set) in [(ClassName::Egressive, e), (ClassName::Ingressive, i)] {
        for f in c.morphism_ids() {
            if c.is_iso(f) && !set.contains(f) {
                if c.is_identity(f) {
                    return Err(OfsError::NotSubcategory {
                        class,
                        reason: "missing identity".into(),
                        witness: vec![f],
                    });
                }
                return Err(OfsError::MissingIso { class, morphism: f });
            }
        }
        for f in set.ids() {
            for &g in c.outgoing(c.tgt(f)) {
                if set.contains(g) && !set.contains(c.comp(g, f)) {
                    return Err(OfsError::NotSubcategory {
                        class,
                        reason: "not closed under composition".into(),
                        witness: vec![g, f],
                    });
                }
            }
        }
    }
    Ok(())
}

/// All factorizations `f = i ∘ e` with `e ∈ E`, `i ∈ I`, as `(e, i)` in
/// lexicographic order.
pub fn factorizations(
    c: &FinCategory,
    e: &MorphismClass,
    i: &MorphismClass,
    f: MorId,
) -> Vec<(MorId, MorId)> {
    let mut out = Vec::new();
    for &first in c.outgoing(c.src(f)) {
        if !e.contains(first) {
            continue;
        }
        for &second in c.hom(c.tgt(first), c.tgt(f)) {
            if i.contains(second) && c.comp(second, first) == f {
                out.push((first, second));
            }
        }
    }
    out
}

/// Unique diagonal fillers for every (E, I) square, plus existence of a
/// factorization for every morphism.
pub fn lifting_criterion(
    c: &FinCategory,
    e: &MorphismClass,
    i: &MorphismClass,
    budget: &Budget,
) -> Result<Result<(), OfsError>, BudgetExceeded> {
    for f in c.morphism_ids() {
        budget.spend(1)?;
        if factorizations(c, e, i, f).is_empty() {
            return Ok(Err(OfsError::NoFactorization { f }));
        }
    }
    for em in e.ids() {
        let (a, b) = (c.src(em), c.tgt(em));
        for im in i.ids() {
            let (x, y) = (c.src(im), c.tgt(im));
            for &u in c.hom(a, x) {
                for &v in c.hom(b, y) {
                    budget.spend(1)?;
                    if c.comp(v, em) != c.comp(im, u) {
                        continue;
                    }
                    let fillers = c
                        .hom(b, x)
                        .iter()
                        .filter(|&&d| c.comp(d, em) == u && c.comp(im, d) == v)
                        .count();
                    if fillers != 1 {
                        let square = LiftingSquare { e: em, i: im, u, v };
                        return Ok(Err(OfsError::LiftingFailure { square, fillers }));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Invertible `k` between the middle objects with `k ∘ e1 = e2` and
/// `i2 ∘ k = i1`.
pub fn connecting_isos(
    c: &FinCategory,
    (e1, i1): (MorId, MorId),
    (e2, i2): (MorId, MorId),
) -> Vec<MorId> {
    c.hom(c.tgt(e1), c.tgt(e2))
        .iter()
        .copied()
        .filter(|&k| c.is_iso(k) && c.comp(k, e1) == e2 && c.comp(i2, k) == i1)
        .collect()
}

/// Every morphism has a factorization, and any two are connected by exactly
/// one invertible morphism between their middle objects.
pub fn factorization_criterion(
    c: &FinCategory,
    e: &MorphismClass,
    i: &MorphismClass,
    budget: &Budget,
) -> Result<Result<(), OfsError>, BudgetExceeded> {
    for f in c.morphism_ids() {
        let facts = factorizations(c, e, i, f);
        budget.spend(1 + (facts.len() * facts.len()) as u64)?;
        if facts.is_empty() {
            return Ok(Err(OfsError::NoFactorization { f }));
        }
        let mut class_of: Vec<Option<usize>> = vec![None; facts.len()];
        let mut classes = 0;
        for a in 0..facts.len() {
            if class_of[a].is_none() {
                class_of[a] = Some(classes);
                classes += 1;
            }
            for b in 0..facts.len() {
                let isos = connecting_isos(c, facts[a], facts[b]).len();
                if isos > 1 {
                    return Ok(Err(OfsError::AmbiguousConnectingIso { f, isos }));
                }
                if isos == 1 && class_of[b].is_none() {
                    class_of[b] = class_of[a];
                }
            }
        }
        if classes != 1 {
            return Ok(Err(OfsError::FactorizationFailure { f, classes }));
        }
    }
    Ok(Ok(()))
}

pub fn ofs_criteria(
    c: &FinCategory,
    e: &MorphismClass,
    i: &MorphismClass,
    budget: &Budget,
) -> Result<OfsCriteria, BudgetExceeded> {
    Ok(OfsCriteria {
        classes: check_classes(c, e, i),
        lifting: lifting_criterion(c, e, i, budget)?,
        factorization: factorization_criterion(c, e, i, budget)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OfsValidationError {
    #[error(transparent)]
    Invalid(#[from] OfsError),
    #[error("lifting and factorization criteria disagree: {0:?}")]
    CriteriaDisagree(Box<OfsCriteria>),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A category with an egressive and an ingressive class forming an
/// orthogonal factorization system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSystem {
    base: FinCategory,
    egressive: MorphismClass,
    ingressive: MorphismClass,
}

/// Check both characterizations and build the system.
pub fn validate_ofs(
    c: FinCategory,
    e: MorphismClass,
    i: MorphismClass,
    budget: &Budget,
) -> Result<FactorizationSystem, OfsValidationError> {
    let criteria = ofs_criteria(&c, &e, &i, budget)?;
    if criteria.classes.is_ok() && !criteria.agree() {
        return Err(OfsValidationError::CriteriaDisagree(Box::new(criteria)));
    }
    if let Some(err) = criteria.first_error() {
        return Err(err.into());
    }
    Ok(FactorizationSystem {
        base: c,
        egressive: e,
        ingressive: i,
    })
}

impl FactorizationSystem {
    /// Skip validation; for constructions whose output is known to be valid.
    pub(crate) fn new_unchecked(
        base: FinCategory,
        egressive: MorphismClass,
        ingressive: MorphismClass,
    ) -> Self {
        FactorizationSystem {
            base,
            egressive,
            ingressive,
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn egressive(&self) -> &MorphismClass {
        &self.egressive
    }

    pub fn ingressive(&self) -> &MorphismClass {
        &self.ingressive
    }

    pub fn class(&self, name: ClassName) -> &MorphismClass {
        match name {
            ClassName::Egressive => &self.egressive,
            ClassName::Ingressive => &self.ingressive,
        }
    }

    pub fn is_egressive(&self, f: MorId) -> bool {
        self.egressive.contains(f)
    }

    pub fn is_ingressive(&self, f: MorId) -> bool {
        self.ingressive.contains(f)
    }

    /// Lexicographically least `(e, i)` with `i ∘ e = f`.
    pub fn factor(&self, f: MorId) -> (MorId, MorId) {
        factorizations(&self.base, &self.egressive, &self.ingressive, f)[0]
    }

    /// All factorizations of `f`.
    pub fn factorizations(&self, f: MorId) -> Vec<(MorId, MorId)> {
        factorizations(&self.base, &self.egressive, &self.ingressive, f)
    }

    /// The egressive subcategory and its embedding into the base.
    pub fn egressive_subcategory(&self) -> (FinCategory, Vec<MorId>) {
        wide_subcategory(&self.base, |f| self.egressive.contains(f))
    }

    pub fn ingressive_subcategory(&self) -> (FinCategory, Vec<MorId>) {
        wide_subcategory(&self.base, |f| self.ingressive.contains(f))
    }

    pub fn num_objects(&self) -> usize {
        self.base.num_objects()
    }

    /// Morphisms `x → y` in the egressive class.
    pub fn egressive_hom(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.base
            .hom(x, y)
            .iter()
            .copied()
            .filter(|&f| self.egressive.contains(f))
    }

    pub fn ingressive_hom(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.base
            .hom(x, y)
            .iter()
            .copied()
            .filter(|&f| self.ingressive.contains(f))
    }
}

/// `(E, I) = (isos, all)`.
pub fn isos_all(c: &FinCategory) -> FactorizationSystem {
    FactorizationSystem::new_unchecked(c.clone(), MorphismClass::isos(c), MorphismClass::all(c))
}

/// `(E, I) = (all, isos)`.
pub fn all_isos(c: &FinCategory) -> FactorizationSystem {
    FactorizationSystem::new_unchecked(c.clone(), MorphismClass::all(c), MorphismClass::isos(c))
}

/// The system on `C × D` with egressives `C × core D` and ingressives
/// `core C × D`.
pub fn product_ofs(c: &FinCategory, d: &FinCategory) -> FactorizationSystem {
    let base = product(c, d);
    let nmd = d.num_morphisms();
    let e = MorphismClass::from_fn(&base, |f| d.is_iso(f % nmd));
    let i = MorphismClass::from_fn(&base, |f| c.is_iso(f / nmd));
    FactorizationSystem::new_unchecked(base, e, i)
}

/// The system on the arrow category: a square `(σ, τ)` is egressive when
/// `σ` is invertible and ingressive when `τ` is invertible.
pub fn arrow_ofs(c: &FinCategory) -> FactorizationSystem {
    let (base, comps) = arrow_category_with_components(c);
    let e = MorphismClass::from_fn(&base, |f| c.is_iso(comps[f].0));
    let i = MorphismClass::from_fn(&base, |f| c.is_iso(comps[f].1));
    FactorizationSystem::new_unchecked(base, e, i)
}

/// Every wide subcategory containing all isomorphisms, as a class, in
/// lexicographic order of the subset of non-invertible morphisms kept.
pub fn saturated_wide_subcategories(
    c: &FinCategory,
    budget: &Budget,
) -> Result<Vec<MorphismClass>, BudgetExceeded> {
    let free: Vec<MorId> = c.morphism_ids().filter(|&f| !c.is_iso(f)).collect();
    assert!(
        free.len() < 32,
        "too many non-invertible morphisms to sweep"
    );
    let mut out = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        budget.spend(1)?;
        let mut set = MorphismClass::isos(c);
        for (bit, &f) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                set.0[f] = true;
            }
        }
        let closed = set.ids().into_iter().all(|f| {
            c.outgoing(c.tgt(f))
                .iter()
                .all(|&g| !set.contains(g) || set.contains(c.comp(g, f)))
        });
        if closed {
            out.push(set);
        }
    }
    Ok(out)
}

/// All orthogonal factorization systems on `c`.
pub fn enumerate_ofs(
    c: &FinCategory,
    budget: &Budget,
) -> Result<Vec<FactorizationSystem>, BudgetExceeded> {
    let subs = saturated_wide_subcategories(c, budget)?;
    let mut out = Vec::new();
    for e in &subs {
        for i in &subs {
            let criteria = ofs_criteria(c, e, i, budget)?;
            if criteria.is_valid() {
                out.push(FactorizationSystem::new_unchecked(
                    c.clone(),
                    e.clone(),
                    i.clone(),
                ));
            }
        }
    }
    Ok(out)
}

/// A functor preserving both classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OfsMap {
    pub functor: Functor,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OfsMapError {
    #[error(transparent)]
    NotAFunctor(#[from] FunctorError),
    #[error("{class} morphism {morphism} is sent outside the {class} class")]
    ClassViolation { class: ClassName, morphism: MorId },
}

pub fn validate_ofs_map(
    functor: Functor,
    src: &FactorizationSystem,
    tgt: &FactorizationSystem,
) -> Result<OfsMap, OfsMapError> {
    check_functor(src.base(), tgt.base(), &functor)?;
    for class in [ClassName::Egressive, ClassName::Ingressive] {
        for f in src.class(class).ids() {
            if !tgt.class(class).contains(functor.mor(f)) {
                return Err(OfsMapError::ClassViolation { class, morphism: f });
            }
        }
    }
    Ok(OfsMap { functor })
}

/// All maps of factorization systems `src → tgt`, in functor enumeration order.
pub fn enumerate_ofs_maps(
    src: &FactorizationSystem,
    tgt: &FactorizationSystem,
    budget: &Budget,
) -> Result<Vec<OfsMap>, BudgetExceeded> {
    let allowed = |f: MorId, g: MorId| {
        (!src.is_egressive(f) || tgt.is_egressive(g))
            && (!src.is_ingressive(f) || tgt.is_ingressive(g))
    };
    Ok(
        enumerate_functors_where(src.base(), tgt.base(), budget, &allowed)?
            .into_iter()
            .map(|functor| OfsMap { functor })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{codiscrete, from_monoid, poset_category, terminal};

    fn valid(fs: &FactorizationSystem) {
        let b = Budget::default();
        let criteria = ofs_criteria(fs.base(), fs.egressive(), fs.ingressive(), &b).unwrap();
        assert!(criteria.is_valid(), "{criteria:?}");
    }

    fn obj(c: &FinCategory, name: &str) -> ObjId {
        c.find_object(name).unwrap()
    }

    fn arrow(c: &FinCategory, x: &str, y: &str) -> MorId {
        c.hom(obj(c, x), obj(c, y))[0]
    }

    #[test]
    fn product_ofs_on_square() {
        let fs = product_ofs(&poset_category(1), &poset_category(1));
        assert_eq!(fs.egressive().count(), 6);
        assert_eq!(fs.ingressive().count(), 6);
        valid(&fs);
        let c = fs.base();
        let e = arrow(c, "(0,0)", "(0,1)");
        let i = arrow(c, "(0,0)", "(1,0)");
        assert!(!fs.is_egressive(e) && fs.is_ingressive(e));
        assert!(fs.is_egressive(i) && !fs.is_ingressive(i));
    }

    #[test]
    fn diagonal_factors_through_first_coordinate() {
        let fs = product_ofs(&poset_category(1), &poset_category(1));
        let c = fs.base();
        let diag = arrow(c, "(0,0)", "(1,1)");
        let (e, i) = fs.factor(diag);
        assert_eq!(e, arrow(c, "(0,0)", "(1,0)"));
        assert_eq!(i, arrow(c, "(1,0)", "(1,1)"));
        assert_eq!(fs.factorizations(diag).len(), 1);
    }

    #[test]
    fn factor_of_identity_and_egressive() {
        let fs = arrow_ofs(&poset_category(2));
        let c = fs.base().clone();
        for x in c.objects() {
            let id = c.identity(x);
            assert_eq!(fs.factor(id), (id, id));
        }
        for f in fs.egressive().ids() {
            let (e, i) = fs.factor(f);
            assert_eq!(c.comp(i, e), f);
            assert!(fs.factorizations(f).contains(&(f, c.identity(c.tgt(f)))));
        }
    }

    #[test]
    fn degenerate_systems_are_valid() {
        for c in [
            poset_category(2),
            codiscrete(vec!["a".into(), "b".into()]),
            from_monoid(&["1", "p"], &[vec![0, 1], vec![1, 1]]),
        ] {
            valid(&isos_all(&c));
            valid(&all_isos(&c));
        }
    }

    #[test]
    fn all_all_on_arrow_fails_factorization() {
        let c = poset_category(1);
        let e = MorphismClass::all(&c);
        let criteria = ofs_criteria(&c, &e, &e, &Budget::default()).unwrap();
        let a = arrow(&c, "0", "1");
        assert_eq!(
            criteria.factorization,
            Err(OfsError::FactorizationFailure { f: a, classes: 2 })
        );
        assert!(criteria.lifting.is_err());
        // Enumerate the factorizations directly: (id_0, a) and (a, id_1).
        let facts = factorizations(&c, &e, &e, a);
        assert_eq!(facts, vec![(c.identity(0), a), (a, c.identity(1))]);
    }

    #[test]
    fn arrow_ofs_counts() {
        let fs = arrow_ofs(&poset_category(1));
        assert_eq!(fs.base().num_morphisms(), 6);
        assert_eq!(fs.egressive().count(), 4);
        assert_eq!(fs.ingressive().count(), 4);
        assert_eq!(fs.egressive().intersection(fs.ingressive()).count(), 3);
        valid(&fs);
        valid(&arrow_ofs(&poset_category(2)));
        let t = arrow_ofs(&terminal());
        assert_eq!(t.base().num_morphisms(), 1);
    }

    #[test]
    fn product_ofs_degenerate_factors() {
        let c = poset_category(2);
        let fs = product_ofs(&c, &terminal());
        assert_eq!(fs.egressive().count(), fs.base().num_morphisms());
        assert_eq!(fs.ingressive(), &MorphismClass::isos(fs.base()));
        let fs = product_ofs(&terminal(), &c);
        assert_eq!(fs.egressive(), &MorphismClass::isos(fs.base()));
        assert_eq!(fs.ingressive().count(), fs.base().num_morphisms());
    }

    #[test]
    fn class_errors() {
        let c = poset_category(2);
        let b = Budget::default();
        let no_ids = MorphismClass::from_ids(&c, &[]);
        assert!(matches!(
            check_classes(&c, &no_ids, &MorphismClass::all(&c)),
            Err(OfsError::NotSubcategory {
                class: ClassName::Egressive,
                ..
            })
        ));
        let keep: Vec<MorId> = c
            .morphism_ids()
            .filter(|&f| c.is_identity(f) || (c.tgt(f) == c.src(f) + 1))
            .collect();
        let open = MorphismClass::from_ids(&c, &keep);
        assert!(check_classes(&c, &MorphismClass::all(&c), &open).is_err());
        let z2 = from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        let only_id = MorphismClass::identities(&z2);
        assert_eq!(
            check_classes(&z2, &only_id, &MorphismClass::all(&z2)),
            Err(OfsError::MissingIso {
                class: ClassName::Egressive,
                morphism: 1
            })
        );
        assert!(validate_ofs(c.clone(), no_ids, MorphismClass::all(&c), &b).is_err());
    }

    #[test]
    fn ofs_on_chains() {
        let b = Budget::default();
        // [1]: (iso, all) and (all, iso).
        assert_eq!(enumerate_ofs(&poset_category(1), &b).unwrap().len(), 2);
        // [2]: one system per cut point pattern; brute-force count via the
        // independent characterization below.
        let c = poset_category(2);
        let subs = saturated_wide_subcategories(&c, &b).unwrap();
        let mut brute = 0;
        for e in &subs {
            for i in &subs {
                let unique_facts = c
                    .morphism_ids()
                    .all(|f| factorizations(&c, e, i, f).len() == 1);
                if unique_facts {
                    brute += 1;
                }
            }
        }
        assert_eq!(enumerate_ofs(&c, &b).unwrap().len(), brute);
    }

    #[test]
    fn ofs_map_checks() {
        let b = Budget::default();
        let fs = product_ofs(&poset_category(1), &poset_category(1));
        validate_ofs_map(Functor::identity(fs.base()), &fs, &fs).unwrap();

        let one = poset_category(1);
        let tgt = all_isos(&one);
        let proj = Functor {
            obj_map: (0..4).map(|x| x / 2).collect(),
            mor_map: (0..9).map(|f| f / 3).collect(),
        };
        validate_ofs_map(proj, &fs, &tgt).unwrap();

        let c = fs.base();
        let swap_obj: Vec<ObjId> = (0..4).map(|x| (x % 2) * 2 + x / 2).collect();
        let swap_mor: Vec<MorId> = (0..9).map(|f| (f % 3) * 3 + f / 3).collect();
        let swap = Functor {
            obj_map: swap_obj,
            mor_map: swap_mor,
        };
        check_functor(c, c, &swap).unwrap();
        assert!(matches!(
            validate_ofs_map(swap, &fs, &fs),
            Err(OfsMapError::ClassViolation {
                class: ClassName::Egressive,
                ..
            })
        ));

        let maps = enumerate_ofs_maps(&fs, &fs, &b).unwrap();
        let brute = crate::fincat::enumerate_functors(c, c, &b)
            .unwrap()
            .into_iter()
            .filter(|f| validate_ofs_map(f.clone(), &fs, &fs).is_ok())
            .count();
        assert_eq!(maps.len(), brute);
    }
}
