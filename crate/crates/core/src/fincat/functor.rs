use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FinCategory, MorId, ObjId};
use crate::budget::{Budget, BudgetExceeded};
use crate::search::{solve, Problem};

/// A functor between two finite categories, given by its object and
/// morphism maps. The categories themselves are passed alongside.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Functor {
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl Functor {
    pub fn identity(c: &FinCategory) -> Self {
        Functor {
            obj_map: c.objects().collect(),
            mor_map: c.morphism_ids().collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        }
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("functor maps have wrong length or out-of-range ids")]
    Shape,
    #[error("morphism {f} is sent to a morphism with the wrong endpoints")]
    Endpoints { f: MorId },
    #[error("identity of object {x} is not preserved")]
    Identity { x: ObjId },
    #[error("composite of {g} and {f} is not preserved")]
    Composition { g: MorId, f: MorId },
}

pub fn check_functor(
    src: &FinCategory,
    tgt: &FinCategory,
    func: &Functor,
) -> Result<(), FunctorError> {
    if func.obj_map.len() != src.num_objects()
        || func.mor_map.len() != src.num_morphisms()
        || func.obj_map.iter().any(|&x| x >= tgt.num_objects())
        || func.mor_map.iter().any(|&f| f >= tgt.num_morphisms())
    {
        return Err(FunctorError::Shape);
    }
    for f in src.morphism_ids() {
        let image = func.mor(f);
        if tgt.src(image) != func.obj(src.src(f)) || tgt.tgt(image) != func.obj(src.tgt(f)) {
            return Err(FunctorError::Endpoints { f });
        }
    }
    for x in src.objects() {
        if func.mor(src.identity(x)) != tgt.identity(func.obj(x)) {
            return Err(FunctorError::Identity { x });
        }
    }
    for f in src.morphism_ids() {
        for &g in src.outgoing(src.tgt(f)) {
            if func.mor(src.comp(g, f)) != tgt.comp(func.mor(g), func.mor(f)) {
                return Err(FunctorError::Composition { g, f });
            }
        }
    }
    Ok(())
}

/// Natural transformation between two parallel functors; one component per
/// source object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NatTrans {
    pub components: Vec<MorId>,
}

impl NatTrans {
    pub fn identity(tgt: &FinCategory, func: &Functor) -> Self {
        NatTrans {
            components: func.obj_map.iter().map(|&x| tgt.identity(x)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatTransError {
    #[error("wrong number of components")]
    Shape,
    #[error("component at object {x} has the wrong endpoints")]
    Endpoints { x: ObjId },
    #[error("naturality square for morphism {f} does not commute")]
    NotNatural { f: MorId },
}

pub fn check_natural(
    src: &FinCategory,
    tgt: &FinCategory,
    from: &Functor,
    to: &Functor,
    eta: &NatTrans,
) -> Result<(), NatTransError> {
    if eta.components.len() != src.num_objects() {
        return Err(NatTransError::Shape);
    }
    for x in src.objects() {
        let c = eta.components[x];
        if c >= tgt.num_morphisms() || tgt.src(c) != from.obj(x) || tgt.tgt(c) != to.obj(x) {
            return Err(NatTransError::Endpoints { x });
        }
    }
    for f in src.morphism_ids() {
        let (x, y) = (src.src(f), src.tgt(f));
        if tgt.comp(eta.components[y], from.mor(f)) != tgt.comp(to.mor(f), eta.components[x]) {
            return Err(NatTransError::NotNatural { f });
        }
    }
    Ok(())
}

/// Variables: objects, then morphisms. Composition constraints are checked
/// when the last of `g`, `f`, `g∘f` is assigned.
struct FunctorProblem<'a> {
    src: &'a FinCategory,
    tgt: &'a FinCategory,
    allowed: &'a dyn Fn(MorId, MorId) -> bool,
    checks: Vec<Vec<(MorId, MorId, MorId)>>,
}

impl<'a> FunctorProblem<'a> {
    fn new(
        src: &'a FinCategory,
        tgt: &'a FinCategory,
        allowed: &'a dyn Fn(MorId, MorId) -> bool,
    ) -> Self {
        let no = src.num_objects();
        let mut checks = vec![Vec::new(); no + src.num_morphisms()];
        for f in src.morphism_ids() {
            for &g in src.outgoing(src.tgt(f)) {
                let h = src.comp(g, f);
                if src.is_identity(f) || src.is_identity(g) {
                    continue;
                }
                checks[no + f.max(g).max(h)].push((g, f, h));
            }
        }
        FunctorProblem {
            src,
            tgt,
            allowed,
            checks,
        }
    }
}

impl Problem for FunctorProblem<'_> {
    fn num_vars(&self) -> usize {
        self.src.num_objects() + self.src.num_morphisms()
    }

    fn domain(&self, a: &[usize], var: usize) -> Vec<usize> {
        let no = self.src.num_objects();
        if var < no {
            return self.tgt.objects().collect();
        }
        let f = var - no;
        let (x, y) = (a[self.src.src(f)], a[self.src.tgt(f)]);
        let candidates = if self.src.is_identity(f) {
            vec![self.tgt.identity(x)]
        } else {
            self.tgt.hom(x, y).to_vec()
        };
        candidates
            .into_iter()
            .filter(|&g| (self.allowed)(f, g))
            .collect()
    }

    fn consistent(&self, a: &[usize]) -> bool {
        let no = self.src.num_objects();
        let var = a.len() - 1;
        self.checks[var]
            .iter()
            .all(|&(g, f, h)| self.tgt.compose(a[no + g], a[no + f]) == Some(a[no + h]))
    }
}

fn split(src: &FinCategory, a: &[usize]) -> Functor {
    let no = src.num_objects();
    Functor {
        obj_map: a[..no].to_vec(),
        mor_map: a[no..].to_vec(),
    }
}

/// All functors `src → tgt`, ordered lexicographically by (object map,
/// morphism map).
pub fn enumerate_functors(
    src: &FinCategory,
    tgt: &FinCategory,
    budget: &Budget,
) -> Result<Vec<Functor>, BudgetExceeded> {
    enumerate_functors_where(src, tgt, budget, &|_, _| true)
}

/// Functors sending each morphism `f` to some `g` with `allowed(f, g)`.
pub fn enumerate_functors_where(
    src: &FinCategory,
    tgt: &FinCategory,
    budget: &Budget,
    allowed: &dyn Fn(MorId, MorId) -> bool,
) -> Result<Vec<Functor>, BudgetExceeded> {
    let problem = FunctorProblem::new(src, tgt, allowed);
    let mut out = Vec::new();
    solve(&problem, budget, |a| out.push(split(src, a)))?;
    Ok(out)
}

/// Why a functor fails to be an equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivalenceFailure {
    /// Two distinct morphisms `x → y` with the same image.
    NotFaithful {
        x: ObjId,
        y: ObjId,
        f: MorId,
        g: MorId,
    },
    /// A target morphism `F x → F y` that is not hit.
    NotFull { x: ObjId, y: ObjId, missing: MorId },
    /// A target object not isomorphic to any image object.
    NotEssentiallySurjective { object: ObjId },
}

pub fn check_equivalence(
    src: &FinCategory,
    tgt: &FinCategory,
    func: &Functor,
) -> Result<(), EquivalenceFailure> {
    for x in src.objects() {
        for y in src.objects() {
            let hom = src.hom(x, y);
            let mut seen: Vec<Option<MorId>> = vec![None; tgt.num_morphisms()];
            for &f in hom {
                let img = func.mor(f);
                if let Some(g) = seen[img] {
                    return Err(EquivalenceFailure::NotFaithful { x, y, f: g, g: f });
                }
                seen[img] = Some(f);
            }
            for &m in tgt.hom(func.obj(x), func.obj(y)) {
                if seen[m].is_none() {
                    return Err(EquivalenceFailure::NotFull { x, y, missing: m });
                }
            }
        }
    }
    for object in tgt.objects() {
        let hit = src
            .objects()
            .any(|x| tgt.iso_between(func.obj(x), object).is_some());
        if !hit {
            return Err(EquivalenceFailure::NotEssentiallySurjective { object });
        }
    }
    Ok(())
}

pub fn is_equivalence(src: &FinCategory, tgt: &FinCategory, func: &Functor) -> bool {
    check_equivalence(src, tgt, func).is_ok()
}

/// Bijective on objects and morphisms.
pub fn is_isomorphism(src: &FinCategory, tgt: &FinCategory, func: &Functor) -> bool {
    fn bijective(map: &[usize], n: usize) -> bool {
        let mut hit = vec![false; n];
        map.len() == n
            && map.iter().all(|&i| {
                let fresh = !hit[i];
                hit[i] = true;
                fresh
            })
    }
    src.num_objects() == tgt.num_objects()
        && src.num_morphisms() == tgt.num_morphisms()
        && bijective(&func.obj_map, tgt.num_objects())
        && bijective(&func.mor_map, tgt.num_morphisms())
}

/// First isomorphism `src → tgt` in enumeration order, if any.
pub fn find_isomorphism(
    src: &FinCategory,
    tgt: &FinCategory,
    budget: &Budget,
) -> Result<Option<Functor>, BudgetExceeded> {
    if src.num_objects() != tgt.num_objects() || src.num_morphisms() != tgt.num_morphisms() {
        return Ok(None);
    }
    Ok(enumerate_functors(src, tgt, budget)?
        .into_iter()
        .find(|f| is_isomorphism(src, tgt, f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{codiscrete, opposite, poset_category, product, terminal};

    /// Monotone maps [m] -> [n], by brute force over all maps.
    fn monotone_maps(m: usize, n: usize) -> usize {
        let mut count = 0;
        let total = (n + 1).pow((m + 1) as u32);
        for code in 0..total {
            let mut v = Vec::new();
            let mut c = code;
            for _ in 0..=m {
                v.push(c % (n + 1));
                c /= n + 1;
            }
            if v.windows(2).all(|w| w[0] <= w[1]) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn functor_counts_between_chains() {
        let b = Budget::default();
        assert_eq!(monotone_maps(1, 1), 3);
        assert_eq!(monotone_maps(1, 2), 6);
        assert_eq!(
            enumerate_functors(&poset_category(1), &poset_category(1), &b)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_functors(&poset_category(1), &poset_category(2), &b)
                .unwrap()
                .len(),
            6
        );
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(
                    enumerate_functors(&poset_category(m), &poset_category(n), &b)
                        .unwrap()
                        .len(),
                    monotone_maps(m, n)
                );
            }
        }
    }

    #[test]
    fn every_functor_into_terminal_is_unique() {
        let c = product(
            &poset_category(1),
            &codiscrete(vec!["a".into(), "b".into()]),
        );
        let fs = enumerate_functors(&c, &terminal(), &Budget::default()).unwrap();
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn enumerated_functors_are_valid_and_sorted() {
        let c = poset_category(2);
        let d = product(&poset_category(1), &poset_category(1));
        let fs = enumerate_functors(&c, &d, &Budget::default()).unwrap();
        assert!(fs.windows(2).all(|w| w[0] < w[1]));
        for f in &fs {
            check_functor(&c, &d, f).unwrap();
        }
    }

    #[test]
    fn counts_are_invariant_under_opposites() {
        let b = Budget::default();
        let c = poset_category(2);
        let d = product(&poset_category(1), &poset_category(1));
        let n1 = enumerate_functors(&c, &d, &b).unwrap().len();
        let n2 = enumerate_functors(&opposite(&c), &opposite(&d), &b)
            .unwrap()
            .len();
        assert_eq!(n1, n2);
    }

    #[test]
    fn equivalence_checks() {
        let c = poset_category(2);
        assert!(is_equivalence(&c, &c, &Functor::identity(&c)));

        let one = poset_category(1);
        let to_point = Functor {
            obj_map: vec![0, 0],
            mor_map: vec![0, 0, 0],
        };
        check_functor(&one, &terminal(), &to_point).unwrap();
        assert!(matches!(
            check_equivalence(&one, &terminal(), &to_point),
            Err(EquivalenceFailure::NotFaithful { x: 0, y: 0, .. })
                | Err(EquivalenceFailure::NotFull { .. })
                | Err(EquivalenceFailure::NotFaithful { .. })
        ));

        // Skeleton inclusion into the codiscrete groupoid on two objects.
        let g = codiscrete(vec!["a".into(), "b".into()]);
        let id_a = g.identity(0);
        let incl = Functor {
            obj_map: vec![0],
            mor_map: vec![id_a],
        };
        check_functor(&terminal(), &g, &incl).unwrap();
        assert!(is_equivalence(&terminal(), &g, &incl));
    }

    #[test]
    fn natural_transformation_checks() {
        let one = poset_category(1);
        let const0 = Functor {
            obj_map: vec![0, 0],
            mor_map: vec![0, 0, 0],
        };
        let id = Functor::identity(&one);
        // const_0 => id with components 0->0, 0->1.
        let eta = NatTrans {
            components: vec![0, 1],
        };
        check_natural(&one, &one, &const0, &id, &eta).unwrap();
        let bad = NatTrans {
            components: vec![0, 0],
        };
        assert!(check_natural(&one, &one, &const0, &id, &bad).is_err());
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let err = enumerate_functors(&poset_category(3), &poset_category(3), &Budget::new(10));
        assert!(err.is_err());
    }
}
