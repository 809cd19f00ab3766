//! Finite (1,1)-categories given by explicit object, morphism and composition
//! tables, together with functors and natural transformations between them.
//!
//! Ids are dense indices. Every enumeration is lexicographic in ids, so all
//! results and witnesses are deterministic.

mod construct;
mod functor;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use construct::{
    arrow_category, arrow_category_with_components, codiscrete, core, discrete, from_monoid,
    from_poset, opposite, poset_category, product, terminal, wide_subcategory,
};
pub use functor::{
    check_equivalence, check_functor, check_natural, enumerate_functors, enumerate_functors_where,
    find_isomorphism, is_equivalence, is_isomorphism, EquivalenceFailure, Functor, FunctorError,
    NatTrans, NatTransError,
};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// Serialized form of a category; `composition` lists `[g, f, g∘f]` for every
/// composable pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: BTreeMap<ObjId, MorId>,
    pub composition: Vec<[MorId; 3]>,
}

/// One failed category axiom, with the offending ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CategoryDefect {
    DanglingId { what: String, id: usize },
    MissingIdentity { object: ObjId },
    IdentityNotEndomorphism { object: ObjId, morphism: MorId },
    NonComposablePairInTable { g: MorId, f: MorId },
    CompositeEndpointMismatch { g: MorId, f: MorId, result: MorId },
    ConflictingComposite { g: MorId, f: MorId },
    MissingComposite { g: MorId, f: MorId },
    UnitFailure { f: MorId },
    AssociativityFailure { h: MorId, g: MorId, f: MorId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid category: {} failed axiom(s), first: {:?}", .defects.len(), .defects.first())]
pub struct InvalidCategory {
    pub defects: Vec<CategoryDefect>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    /// `comp[g * n + f]` is `g ∘ f` when `src(g) = tgt(f)`.
    comp: Vec<Option<MorId>>,
    hom: Vec<Vec<MorId>>,
    outgoing: Vec<Vec<MorId>>,
    incoming: Vec<Vec<MorId>>,
    inverse: Vec<Option<MorId>>,
}

impl FinCategory {
    /// Assemble a category from trusted parts. `compose(g, f)` is called for
    /// every composable pair. The axioms are not checked here; use
    /// [`FinCategory::defects`] or [`validate_category`] for that.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> Self {
        let n = morphisms.len();
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        for (id, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(id);
            incoming[m.tgt].push(id);
        }
        let mut comp = vec![None; n * n];
        for f in 0..n {
            for &g in &outgoing[morphisms[f].tgt] {
                comp[g * n + f] = Some(compose(g, f));
            }
        }
        Self::finish(objects, morphisms, identities, comp, outgoing, incoming)
    }

    fn finish(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        comp: Vec<Option<MorId>>,
        outgoing: Vec<Vec<MorId>>,
        incoming: Vec<Vec<MorId>>,
    ) -> Self {
        let no = objects.len();
        let n = morphisms.len();
        let mut hom = vec![Vec::new(); no * no];
        for (id, m) in morphisms.iter().enumerate() {
            hom[m.src * no + m.tgt].push(id);
        }
        let mut inverse = vec![None; n];
        for f in 0..n {
            let (s, t) = (morphisms[f].src, morphisms[f].tgt);
            for &g in &hom[t * no + s] {
                if comp[g * n + f] == Some(identities[s]) && comp[f * n + g] == Some(identities[t])
                {
                    inverse[f] = Some(g);
                    break;
                }
            }
        }
        FinCategory {
            objects,
            morphisms,
            identities,
            comp,
            hom,
            outgoing,
            incoming,
            inverse,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> std::ops::Range<MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: MorId) -> ObjId {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp[g * self.morphisms.len() + f]
    }

    /// `g ∘ f`; panics if the pair is not composable.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "morphisms {} and {} are not composable",
                self.morphisms[g].name, self.morphisms[f].name
            )
        })
    }

    /// Compose a path given in diagrammatic order (first morphism first).
    pub fn comp_path(&self, path: &[MorId]) -> MorId {
        let mut acc = path[0];
        for &g in &path[1..] {
            acc = self.comp(g, acc);
        }
        acc
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x * self.objects.len() + y]
    }

    pub fn outgoing(&self, x: ObjId) -> &[MorId] {
        &self.outgoing[x]
    }

    pub fn incoming(&self, y: ObjId) -> &[MorId] {
        &self.incoming[y]
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        self.inverse[f]
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse[f].is_some()
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|m| m == name)
    }

    /// Isomorphic objects, as an iso between them if one exists.
    pub fn iso_between(&self, x: ObjId, y: ObjId) -> Option<MorId> {
        self.hom(x, y).iter().copied().find(|&f| self.is_iso(f))
    }

    pub fn to_raw(&self) -> RawCategory {
        let n = self.morphisms.len();
        let mut composition = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(h) = self.comp[g * n + f] {
                    composition.push([g, f, h]);
                }
            }
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.iter().copied().enumerate().collect(),
            composition,
        }
    }

    /// Unit and associativity failures. A category built with
    /// [`FinCategory::from_parts`] is only trustworthy if this is empty.
    pub fn defects(&self) -> Vec<CategoryDefect> {
        let mut defects = Vec::new();
        for f in self.morphism_ids() {
            let (s, t) = (self.src(f), self.tgt(f));
            if self.compose(self.identities[t], f) != Some(f)
                || self.compose(f, self.identities[s]) != Some(f)
            {
                defects.push(CategoryDefect::UnitFailure { f });
            }
        }
        for f in self.morphism_ids() {
            for &g in self.outgoing(self.tgt(f)) {
                let gf = self.comp(g, f);
                for &h in self.outgoing(self.tgt(g)) {
                    let hg = self.comp(h, g);
                    if self.compose(h, gf) != self.compose(hg, f) {
                        defects.push(CategoryDefect::AssociativityFailure { h, g, f });
                    }
                }
            }
        }
        defects
    }

    /// Composable `n`-chains; `n = 0` gives the objects.
    pub fn nerve_chains(&self, n: usize) -> Vec<NerveChain> {
        let mut out: Vec<NerveChain> = self
            .objects()
            .map(|x| NerveChain {
                start: x,
                morphisms: Vec::new(),
            })
            .collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for chain in &out {
                let end = chain.end(self);
                for &f in self.outgoing(end) {
                    let mut m = chain.morphisms.clone();
                    m.push(f);
                    next.push(NerveChain {
                        start: chain.start,
                        morphisms: m,
                    });
                }
            }
            out = next;
        }
        out
    }
}

/// A composable chain `start → … ` of morphisms, first morphism first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NerveChain {
    pub start: ObjId,
    pub morphisms: Vec<MorId>,
}

impl NerveChain {
    pub fn end(&self, c: &FinCategory) -> ObjId {
        self.morphisms.last().map_or(self.start, |&f| c.tgt(f))
    }
}

/// Check every category axiom on raw tables and build the category.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory, InvalidCategory> {
    let no = raw.objects.len();
    let n = raw.morphisms.len();
    let mut defects = Vec::new();
    for (id, m) in raw.morphisms.iter().enumerate() {
        if m.src >= no || m.tgt >= no {
            defects.push(CategoryDefect::DanglingId {
                what: format!("endpoint of morphism {}", m.name),
                id,
            });
        }
    }
    for (&x, &f) in &raw.identities {
        if x >= no || f >= n {
            defects.push(CategoryDefect::DanglingId {
                what: "identity entry".into(),
                id: x.max(f),
            });
        }
    }
    for entry in &raw.composition {
        for &id in entry {
            if id >= n {
                defects.push(CategoryDefect::DanglingId {
                    what: "composition entry".into(),
                    id,
                });
            }
        }
    }
    if !defects.is_empty() {
        return Err(InvalidCategory { defects });
    }

    let mut identities = Vec::with_capacity(no);
    for x in 0..no {
        match raw.identities.get(&x) {
            None => defects.push(CategoryDefect::MissingIdentity { object: x }),
            Some(&f) => {
                if raw.morphisms[f].src != x || raw.morphisms[f].tgt != x {
                    defects.push(CategoryDefect::IdentityNotEndomorphism {
                        object: x,
                        morphism: f,
                    });
                }
                identities.push(f);
            }
        }
    }

    let mut comp: Vec<Option<MorId>> = vec![None; n * n];
    for &[g, f, h] in &raw.composition {
        let (mg, mf, mh) = (&raw.morphisms[g], &raw.morphisms[f], &raw.morphisms[h]);
        if mg.src != mf.tgt {
            defects.push(CategoryDefect::NonComposablePairInTable { g, f });
            continue;
        }
        if mh.src != mf.src || mh.tgt != mg.tgt {
            defects.push(CategoryDefect::CompositeEndpointMismatch { g, f, result: h });
        }
        match comp[g * n + f] {
            Some(prev) if prev != h => defects.push(CategoryDefect::ConflictingComposite { g, f }),
            _ => comp[g * n + f] = Some(h),
        }
    }
    let mut outgoing = vec![Vec::new(); no];
    let mut incoming = vec![Vec::new(); no];
    for (id, m) in raw.morphisms.iter().enumerate() {
        outgoing[m.src].push(id);
        incoming[m.tgt].push(id);
    }
    for f in 0..n {
        for &g in &outgoing[raw.morphisms[f].tgt] {
            if comp[g * n + f].is_none() {
                defects.push(CategoryDefect::MissingComposite { g, f });
            }
        }
    }
    if !defects.is_empty() {
        return Err(InvalidCategory { defects });
    }
    let c = FinCategory::finish(
        raw.objects.clone(),
        raw.morphisms.clone(),
        identities,
        comp,
        outgoing,
        incoming,
    );
    let defects = c.defects();
    if defects.is_empty() {
        Ok(c)
    } else {
        Err(InvalidCategory { defects })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_valid() {
        let c = validate_category(&terminal().to_raw()).unwrap();
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_morphisms(), 1);
    }

    #[test]
    fn chain_two_from_raw_tables() {
        // Brute force: monotone maps [1] -> [2] are the pairs i <= j.
        let expected = (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).count();
        let c = validate_category(&poset_category(2).to_raw()).unwrap();
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.num_morphisms(), expected);
        assert_eq!(expected, 6);
    }

    #[test]
    fn unit_failure_is_reported() {
        let mut raw = poset_category(1).to_raw();
        let a = raw
            .morphisms
            .iter()
            .position(|m| m.src == 0 && m.tgt == 1)
            .unwrap();
        let id0 = raw.identities[&0];
        // Redirect a ∘ id_0 to a second parallel arrow b.
        raw.morphisms.push(Morphism {
            name: "b".into(),
            src: 0,
            tgt: 1,
        });
        let b = raw.morphisms.len() - 1;
        for e in raw.composition.iter_mut() {
            if e[0] == a && e[1] == id0 {
                e[2] = b;
            }
        }
        let id1 = raw.identities[&1];
        raw.composition.push([b, id0, b]);
        raw.composition.push([id1, b, b]);
        let err = validate_category(&raw).unwrap_err();
        assert!(err.defects.contains(&CategoryDefect::UnitFailure { f: a }));
    }

    #[test]
    fn missing_identity_and_bad_pairs() {
        let mut raw = poset_category(1).to_raw();
        raw.identities.remove(&1);
        let err = validate_category(&raw).unwrap_err();
        assert!(err
            .defects
            .contains(&CategoryDefect::MissingIdentity { object: 1 }));

        let mut raw = poset_category(1).to_raw();
        let a = raw
            .morphisms
            .iter()
            .position(|m| m.src == 0 && m.tgt == 1)
            .unwrap();
        raw.composition.push([a, a, a]);
        let err = validate_category(&raw).unwrap_err();
        assert!(err
            .defects
            .contains(&CategoryDefect::NonComposablePairInTable { g: a, f: a }));
    }

    #[test]
    fn dangling_ids_are_rejected() {
        let mut raw = terminal().to_raw();
        raw.morphisms[0].tgt = 7;
        assert!(matches!(
            validate_category(&raw).unwrap_err().defects[0],
            CategoryDefect::DanglingId { .. }
        ));
    }

    #[test]
    fn associativity_failure_is_detected() {
        // (a∘a)∘a = b∘a = b but a∘(a∘a) = a∘b = a.
        let objects = vec!["*".to_string()];
        let morphisms = ["1", "a", "b"]
            .iter()
            .map(|n| Morphism {
                name: n.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let table = [[0, 1, 2], [1, 2, 1], [2, 2, 2]];
        let mut composition = Vec::new();
        for g in 0..3 {
            for f in 0..3 {
                composition.push([g, f, table[g][f]]);
            }
        }
        let raw = RawCategory {
            objects,
            morphisms,
            identities: [(0, 0)].into_iter().collect(),
            composition,
        };
        let err = validate_category(&raw).unwrap_err();
        assert!(err
            .defects
            .iter()
            .any(|d| matches!(d, CategoryDefect::AssociativityFailure { .. })));
    }

    #[test]
    fn nerve_chain_counts() {
        let c1 = poset_category(1);
        assert_eq!(c1.nerve_chains(2).len(), 4);
        assert_eq!(c1.nerve_chains(0).len(), c1.num_objects());
        assert_eq!(poset_category(2).nerve_chains(1).len(), 6);
    }
}
