//! Passing between factorization systems and factorization double
//! categories: the commuting-square double category of an OFS, the category
//! of corners of a double category, and the comparisons between them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::dblcat::{
    check_dbl_functor, count_dbl_functors, is_double_isomorphism, is_factorization_double,
    CornerDefect, DblFunctor, DblFunctorError, DoubleCategory, SqId, Square,
};
use crate::fincat::{
    check_functor, poset_category, wide_subcategory, FinCategory, Functor, MorId, Morphism, ObjId,
};
use crate::ofs::{
    arrow_ofs, connecting_isos, ofs_criteria, ClassName, FactorizationSystem, MorphismClass,
    OfsCriteria, OfsMap,
};

/// The double category of commuting squares, together with the embeddings
/// of its horizontal and vertical morphisms into the base category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDouble {
    pub double: DoubleCategory,
    pub hmor_base: Vec<MorId>,
    pub vmor_base: Vec<MorId>,
    hmor_rank: Vec<Option<MorId>>,
    vmor_rank: Vec<Option<MorId>>,
}

impl SquareDouble {
    /// Horizontal morphism id of a base morphism in the horizontal class.
    pub fn hmor_of(&self, f: MorId) -> Option<MorId> {
        self.hmor_rank[f]
    }

    pub fn vmor_of(&self, f: MorId) -> Option<MorId> {
        self.vmor_rank[f]
    }
}

/// Double category with horizontal morphisms `e`, vertical morphisms `i`
/// (both wide subcategories of `c`) and one square per commuting boundary
/// `right ∘ top = bottom ∘ left`. Squares are ordered by
/// `(top, left, bottom, right)`.
pub fn dclr_of_classes(c: &FinCategory, e: &MorphismClass, i: &MorphismClass) -> SquareDouble {
    let (horizontal, hmor_base) = wide_subcategory(c, |f| e.contains(f));
    let (vertical, vmor_base) = wide_subcategory(c, |f| i.contains(f));
    let rank = |emb: &[MorId]| {
        let mut r = vec![None; c.num_morphisms()];
        for (k, &f) in emb.iter().enumerate() {
            r[f] = Some(k);
        }
        r
    };
    let (hmor_rank, vmor_rank) = (rank(&hmor_base), rank(&vmor_base));
    let mut squares = Vec::new();
    let mut by_boundary: HashMap<[MorId; 4], SqId> = HashMap::new();
    for top in horizontal.morphism_ids() {
        let (x, y) = (horizontal.src(top), horizontal.tgt(top));
        for &left in vertical.outgoing(x) {
            let x2 = vertical.tgt(left);
            for &bottom in horizontal.outgoing(x2) {
                let y2 = horizontal.tgt(bottom);
                for &right in vertical.hom(y, y2) {
                    let lhs = c.comp(vmor_base[right], hmor_base[top]);
                    let rhs = c.comp(hmor_base[bottom], vmor_base[left]);
                    if lhs == rhs {
                        by_boundary.insert([top, bottom, left, right], squares.len());
                        squares.push(Square {
                            name: format!(
                                "[{}|{}|{}|{}]",
                                horizontal.morphism(top).name,
                                vertical.morphism(left).name,
                                horizontal.morphism(bottom).name,
                                vertical.morphism(right).name
                            ),
                            top,
                            bottom,
                            left,
                            right,
                        });
                    }
                }
            }
        }
    }
    let find = |b: [MorId; 4]| by_boundary[&b];
    let hmor_square = horizontal
        .morphism_ids()
        .map(|h| {
            let (x, y) = (horizontal.src(h), horizontal.tgt(h));
            find([h, h, vertical.identity(x), vertical.identity(y)])
        })
        .collect();
    let vmor_square = vertical
        .morphism_ids()
        .map(|v| {
            let (x, y) = (vertical.src(v), vertical.tgt(v));
            find([horizontal.identity(x), horizontal.identity(y), v, v])
        })
        .collect();
    let sq = squares.clone();
    let (hc, vc) = (horizontal.clone(), vertical.clone());
    let double = DoubleCategory::from_parts(
        horizontal,
        vertical,
        squares,
        hmor_square,
        vmor_square,
        |t, s| {
            let (t, s) = (&sq[t], &sq[s]);
            find([
                hc.comp(t.top, s.top),
                hc.comp(t.bottom, s.bottom),
                s.left,
                t.right,
            ])
        },
        |t, s| {
            let (t, s) = (&sq[t], &sq[s]);
            find([
                s.top,
                t.bottom,
                vc.comp(t.left, s.left),
                vc.comp(t.right, s.right),
            ])
        },
    );
    SquareDouble {
        double,
        hmor_base,
        vmor_base,
        hmor_rank,
        vmor_rank,
    }
}

/// Horizontal morphisms are the egressives, vertical the ingressives,
/// squares the commuting squares.
pub fn dclr(fs: &FactorizationSystem) -> DoubleCategory {
    dclr_with_embeddings(fs).double
}

pub fn dclr_with_embeddings(fs: &FactorizationSystem) -> SquareDouble {
    dclr_of_classes(fs.base(), fs.egressive(), fs.ingressive())
}

/// The double functor induced by a map of factorization systems.
pub fn dclr_map(a: &SquareDouble, b: &SquareDouble, f: &OfsMap) -> DblFunctor {
    let func = &f.functor;
    let da = &a.double;
    let hmor_map: Vec<MorId> = a
        .hmor_base
        .iter()
        .map(|&e| b.hmor_of(func.mor(e)).expect("egressive preserved"))
        .collect();
    let vmor_map: Vec<MorId> = a
        .vmor_base
        .iter()
        .map(|&i| b.vmor_of(func.mor(i)).expect("ingressive preserved"))
        .collect();
    let square_map = da
        .squares()
        .iter()
        .map(|s| {
            b.double.squares_with_boundary(
                hmor_map[s.top],
                hmor_map[s.bottom],
                vmor_map[s.left],
                vmor_map[s.right],
            )[0]
        })
        .collect();
    DblFunctor {
        obj_map: func.obj_map.clone(),
        hmor_map,
        vmor_map,
        square_map,
    }
}

/// The double arrow category: commuting squares of the arrow factorization
/// system.
pub fn ardc(c: &FinCategory) -> DoubleCategory {
    dclr(&arrow_ofs(c))
}

/// A morphism of the corners category: a horizontal morphism followed by a
/// vertical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CornerPair {
    pub h: MorId,
    pub v: MorId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornersCategory {
    pub category: FinCategory,
    pub pairs: Vec<CornerPair>,
    index: HashMap<CornerPair, MorId>,
}

impl CornersCategory {
    pub fn id_of(&self, pair: CornerPair) -> MorId {
        self.index[&pair]
    }

    /// Pairs `(h, id)`.
    pub fn strict_egressive(&self, d: &DoubleCategory) -> MorphismClass {
        MorphismClass::from_fn(&self.category, |f| {
            d.vertical().is_identity(self.pairs[f].v)
        })
    }

    /// Pairs `(id, v)`.
    pub fn strict_ingressive(&self, d: &DoubleCategory) -> MorphismClass {
        MorphismClass::from_fn(&self.category, |f| {
            d.horizontal().is_identity(self.pairs[f].h)
        })
    }

    /// Pairs `(h, v)` with `v` invertible, and pairs with `h` invertible:
    /// the strict classes closed under isomorphisms.
    pub fn saturated_classes(&self, d: &DoubleCategory) -> (MorphismClass, MorphismClass) {
        let e = MorphismClass::from_fn(&self.category, |f| d.vertical().is_iso(self.pairs[f].v));
        let i = MorphismClass::from_fn(&self.category, |f| d.horizontal().is_iso(self.pairs[f].h));
        (e, i)
    }

    /// Both characterizations evaluated on the saturated classes.
    pub fn ofs_criteria(
        &self,
        d: &DoubleCategory,
        budget: &Budget,
    ) -> Result<OfsCriteria, BudgetExceeded> {
        let (e, i) = self.saturated_classes(d);
        ofs_criteria(&self.category, &e, &i, budget)
    }

    pub fn factorization_system(&self, d: &DoubleCategory) -> FactorizationSystem {
        let (e, i) = self.saturated_classes(d);
        FactorizationSystem::new_unchecked(self.category.clone(), e, i)
    }
}

/// The category of corners of a factorization double category. Composition
/// of `(h₁, v₁)` then `(h₂, v₂)` fills the corner `(v₁, h₂)` with its unique
/// square `(t, r)` and returns `(t ∘ h₁, v₂ ∘ r)`.
pub fn corners(d: &DoubleCategory) -> Result<CornersCategory, CornerDefect> {
    is_factorization_double(d)?;
    Ok(corners_with_least_filler(d))
}

/// Corner pairs composed with the least filler of each corner. Only a
/// category when fillers are unique; callers quotient otherwise.
fn corners_with_least_filler(d: &DoubleCategory) -> CornersCategory {
    let (hc, vc) = (d.horizontal(), d.vertical());
    let mut pairs = Vec::new();
    let mut morphisms = Vec::new();
    for h in hc.morphism_ids() {
        for &v in vc.outgoing(hc.tgt(h)) {
            pairs.push(CornerPair { h, v });
            morphisms.push(Morphism {
                name: format!("({};{})", hc.morphism(h).name, vc.morphism(v).name),
                src: hc.src(h),
                tgt: vc.tgt(v),
            });
        }
    }
    let index: HashMap<CornerPair, MorId> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let identities = hc
        .objects()
        .map(|x| {
            index[&CornerPair {
                h: hc.identity(x),
                v: vc.identity(x),
            }]
        })
        .collect();
    let category = FinCategory::from_parts(
        (0..d.num_objects())
            .map(|x| d.object_name(x).to_string())
            .collect(),
        morphisms,
        identities,
        |g, f| {
            let (p1, p2) = (pairs[f], pairs[g]);
            let s = d.square(d.fillers(p1.v, p2.h)[0]);
            index[&CornerPair {
                h: hc.comp(s.top, p1.h),
                v: vc.comp(p2.v, s.right),
            }]
        },
    );
    CornersCategory {
        category,
        pairs,
        index,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("not a factorization double category: corner {0:?}")]
    NotFactorizationDouble(CornerDefect),
    #[error("corner composition violates the category axioms")]
    CornersNotCategory,
    #[error("comparison is not bijective on {layer}: witness {witness}")]
    ComparisonNotBijective { layer: String, witness: usize },
    #[error("comparison is not a double functor: {0}")]
    NotADoubleFunctor(DblFunctorError),
    #[error("corner projection is not a functor")]
    ProjectionNotFunctor,
    #[error("fiber over morphism {f} has {orbits} middle-iso orbits")]
    FiberNotSingleOrbit { f: MorId, orbits: usize },
    #[error("quotient comparison does not match the {0} class")]
    ClassMismatch(ClassName),
    #[error("double functor count {lhs} differs from chain count {rhs}")]
    CountMismatch { lhs: usize, rhs: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

impl From<CornerDefect> for BridgeError {
    fn from(c: CornerDefect) -> Self {
        BridgeError::NotFactorizationDouble(c)
    }
}

fn checked_corners(d: &DoubleCategory) -> Result<CornersCategory, BridgeError> {
    let k = corners(d)?;
    if !k.category.defects().is_empty() {
        return Err(BridgeError::CornersNotCategory);
    }
    Ok(k)
}

/// The comparison `D → dclr(corners D)` with strict classes `{(h, id)}` and
/// `{(id, v)}`, verified to be an isomorphism of double categories.
pub fn counit_iso(d: &DoubleCategory) -> Result<(DoubleCategory, DblFunctor), BridgeError> {
    let k = checked_corners(d)?;
    let (hc, vc) = (d.horizontal(), d.vertical());
    let target = dclr_of_classes(&k.category, &k.strict_egressive(d), &k.strict_ingressive(d));
    let hmor_map: Vec<MorId> = hc
        .morphism_ids()
        .map(|h| {
            let pair = CornerPair {
                h,
                v: vc.identity(hc.tgt(h)),
            };
            target.hmor_of(k.id_of(pair)).expect("strict egressive")
        })
        .collect();
    let vmor_map: Vec<MorId> = vc
        .morphism_ids()
        .map(|v| {
            let pair = CornerPair {
                h: hc.identity(vc.src(v)),
                v,
            };
            target.vmor_of(k.id_of(pair)).expect("strict ingressive")
        })
        .collect();
    let mut square_map = Vec::with_capacity(d.num_squares());
    for (s, sq) in d.squares().iter().enumerate() {
        let images = target.double.squares_with_boundary(
            hmor_map[sq.top],
            hmor_map[sq.bottom],
            vmor_map[sq.left],
            vmor_map[sq.right],
        );
        match images.first() {
            Some(&t) => square_map.push(t),
            None => {
                return Err(BridgeError::ComparisonNotBijective {
                    layer: "squares".into(),
                    witness: s,
                })
            }
        }
    }
    let f = DblFunctor {
        obj_map: (0..d.num_objects()).collect(),
        hmor_map,
        vmor_map,
        square_map,
    };
    check_dbl_functor(d, &target.double, &f).map_err(BridgeError::NotADoubleFunctor)?;
    if !is_double_isomorphism(d, &target.double, &f) {
        let t = &target.double;
        let layers = [
            ("hmors", &f.hmor_map, t.num_hmors()),
            ("vmors", &f.vmor_map, t.num_vmors()),
            ("squares", &f.square_map, t.num_squares()),
        ];
        for (layer, map, n) in layers {
            let mut hit = vec![false; n];
            map.iter().for_each(|&x| hit[x] = true);
            if let Some(w) = hit.iter().position(|&b| !b) {
                return Err(BridgeError::ComparisonNotBijective {
                    layer: layer.into(),
                    witness: w,
                });
            }
        }
        return Err(BridgeError::ComparisonNotBijective {
            layer: "objects".into(),
            witness: 0,
        });
    }
    Ok((target.double, f))
}

/// Outcome of comparing `corners(dclr FS)` with the base of `FS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitReport {
    /// `P(e, i) = i ∘ e` on morphisms of the corners category.
    pub projection: Functor,
    /// Quotient of the corners category by middle isomorphisms; morphism
    /// `k` is represented by `representatives[k]` (a corners morphism id).
    pub quotient: FinCategory,
    pub representatives: Vec<MorId>,
    /// Isomorphism `quotient → base`.
    pub iso: Functor,
    /// The projection is already bijective on morphisms.
    pub on_the_nose: bool,
    /// Every corner of `dclr fs` has exactly one filler.
    pub unique_fillers: bool,
}

/// Verify that `(e, i) ↦ i ∘ e` exhibits the base of `fs` as the quotient of
/// `corners(dclr fs)` by middle isomorphisms, matching both classes.
pub fn unit_iso(fs: &FactorizationSystem) -> Result<UnitReport, BridgeError> {
    let sd = dclr_with_embeddings(fs);
    let d = &sd.double;
    for v in d.vertical().morphism_ids() {
        for &h in d.horizontal().outgoing(d.vertical().tgt(v)) {
            if d.fillers(v, h).is_empty() {
                return Err(BridgeError::NotFactorizationDouble(CornerDefect {
                    left: v,
                    bottom: h,
                    fillers: Vec::new(),
                }));
            }
        }
    }
    let k = corners_with_least_filler(d);
    let c = fs.base();
    let kc = &k.category;
    let base_pair = |m: MorId| {
        let p = k.pairs[m];
        (sd.hmor_base[p.h], sd.vmor_base[p.v])
    };
    let mor_map: Vec<MorId> = kc
        .morphism_ids()
        .map(|m| {
            let (e, i) = base_pair(m);
            c.comp(i, e)
        })
        .collect();
    let projection = Functor {
        obj_map: (0..c.num_objects()).collect(),
        mor_map,
    };
    check_functor(kc, c, &projection).map_err(|_| BridgeError::ProjectionNotFunctor)?;

    let mut fibers: Vec<Vec<MorId>> = vec![Vec::new(); c.num_morphisms()];
    for m in kc.morphism_ids() {
        fibers[projection.mor(m)].push(m);
    }
    let mut orbit_of = vec![usize::MAX; kc.num_morphisms()];
    let mut representatives = Vec::with_capacity(c.num_morphisms());
    for (f, fiber) in fibers.iter().enumerate() {
        if fiber.is_empty() {
            return Err(BridgeError::FiberNotSingleOrbit { f, orbits: 0 });
        }
        let rep = fiber[0];
        let mut orbits = 1;
        for &m in fiber {
            if !connecting_isos(c, base_pair(rep), base_pair(m)).is_empty() {
                orbit_of[m] = f;
            } else {
                orbits += 1;
            }
        }
        if orbits != 1 {
            return Err(BridgeError::FiberNotSingleOrbit { f, orbits });
        }
        representatives.push(rep);
    }

    // Quotient category: one morphism per orbit, numbered by its image.
    let morphisms = representatives
        .iter()
        .map(|&m| kc.morphism(m).clone())
        .collect();
    let identities = kc.objects().map(|x| orbit_of[kc.identity(x)]).collect();
    let quotient =
        FinCategory::from_parts(kc.object_names().to_vec(), morphisms, identities, |g, f| {
            orbit_of[kc.comp(representatives[g], representatives[f])]
        });
    let iso = Functor {
        obj_map: (0..c.num_objects()).collect(),
        mor_map: (0..c.num_morphisms()).collect(),
    };
    if !quotient.defects().is_empty() || check_functor(&quotient, c, &iso).is_err() {
        return Err(BridgeError::ProjectionNotFunctor);
    }
    let (ke, ki) = k.saturated_classes(d);
    for f in c.morphism_ids() {
        let rep = representatives[f];
        if ke.contains(rep) != fs.is_egressive(f) {
            return Err(BridgeError::ClassMismatch(ClassName::Egressive));
        }
        if ki.contains(rep) != fs.is_ingressive(f) {
            return Err(BridgeError::ClassMismatch(ClassName::Ingressive));
        }
    }
    let on_the_nose = kc.num_morphisms() == c.num_morphisms();
    Ok(UnitReport {
        projection,
        quotient,
        representatives,
        iso,
        on_the_nose,
        unique_fillers: is_factorization_double(d).is_ok(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegalCounts {
    pub n: usize,
    pub double_functors: usize,
    pub chains: usize,
}

/// Compare `|DblFun(ardc [n], D)|` with the number of composable `n`-chains
/// in `corners(D)`.
pub fn segal_chain_check(
    d: &DoubleCategory,
    n: usize,
    budget: &Budget,
) -> Result<SegalCounts, BridgeError> {
    let k = checked_corners(d)?;
    let chains = k.category.nerve_chains(n).len();
    let double_functors = count_dbl_functors(&ardc(&poset_category(n)), d, budget)?;
    if chains != double_functors {
        return Err(BridgeError::CountMismatch {
            lhs: double_functors,
            rhs: chains,
        });
    }
    Ok(SegalCounts {
        n,
        double_functors,
        chains,
    })
}

/// `(h, v)` is invertible in the corners category.
pub fn corner_is_invertible(k: &CornersCategory, pair: CornerPair) -> bool {
    k.category.is_iso(k.id_of(pair))
}

/// Every object of `d` as the start of the identity corner.
pub fn identity_corner(d: &DoubleCategory, x: ObjId) -> CornerPair {
    CornerPair {
        h: d.horizontal().identity(x),
        v: d.vertical().identity(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::{boxtimes, count_grids, find_double_isomorphism, validate_double};
    use crate::fincat::{codiscrete, enumerate_functors, from_monoid, product, terminal};
    use crate::ofs::{all_isos, enumerate_ofs_maps, isos_all, product_ofs};

    fn monotone(k: usize, m: usize) -> usize {
        enumerate_functors(&poset_category(k), &poset_category(m), &Budget::default())
            .unwrap()
            .len()
    }

    fn sample_systems() -> Vec<FactorizationSystem> {
        let z2 = from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        vec![
            product_ofs(&poset_category(1), &poset_category(1)),
            product_ofs(&poset_category(1), &z2),
            arrow_ofs(&poset_category(1)),
            arrow_ofs(&poset_category(2)),
            isos_all(&poset_category(2)),
            all_isos(&codiscrete(vec!["a".into(), "b".into()])),
            all_isos(&product(&poset_category(1), &z2)),
            isos_all(&terminal()),
        ]
    }

    /// Commuting squares of `product_ofs([1],[1])`, by brute force over all
    /// 4-tuples of morphisms.
    #[test]
    fn dclr_of_square_has_nine_squares() {
        let fs = product_ofs(&poset_category(1), &poset_category(1));
        let c = fs.base();
        let mut brute = 0;
        for top in fs.egressive().ids() {
            for bottom in fs.egressive().ids() {
                for left in fs.ingressive().ids() {
                    for right in fs.ingressive().ids() {
                        let ok = c.src(top) == c.src(left)
                            && c.tgt(top) == c.src(right)
                            && c.tgt(left) == c.src(bottom)
                            && c.tgt(bottom) == c.tgt(right)
                            && c.comp(right, top) == c.comp(bottom, left);
                        if ok {
                            brute += 1;
                        }
                    }
                }
            }
        }
        let d = dclr(&fs);
        assert_eq!(d.num_squares(), brute);
        assert_eq!(brute, 9);
        let b = boxtimes(&poset_category(1), &poset_category(1));
        assert_eq!(brute, count_grids(&b, 1, 1, &Budget::default()).unwrap());
        assert!(find_double_isomorphism(&d, &b, &Budget::default())
            .unwrap()
            .is_some());
    }

    /// Fillers of a corner are the factorizations of its composite, so they
    /// are strictly unique exactly when every connecting iso is an identity.
    #[test]
    fn dclr_filler_counts_match_factorization_counts() {
        for fs in sample_systems() {
            let sd = dclr_with_embeddings(&fs);
            let d = &sd.double;
            validate_double(&d.to_raw()).unwrap();
            let c = fs.base();
            let mut all_unique = true;
            for v in d.vertical().morphism_ids() {
                for &h in d.horizontal().outgoing(d.vertical().tgt(v)) {
                    let f = c.comp(sd.hmor_base[h], sd.vmor_base[v]);
                    let n = fs.factorizations(f).len();
                    assert_eq!(d.fillers(v, h).len(), n);
                    all_unique &= n == 1;
                }
            }
            assert_eq!(is_factorization_double(d).is_ok(), all_unique);
            let iso_free = c.morphism_ids().all(|f| !c.is_iso(f) || c.is_identity(f));
            if iso_free {
                assert!(all_unique);
            }
        }
    }

    #[test]
    fn dclr_isos_all_on_poset_has_identity_hmors() {
        let d = dclr(&isos_all(&poset_category(3)));
        assert!(d
            .horizontal()
            .morphism_ids()
            .all(|h| d.horizontal().is_identity(h)));
    }

    #[test]
    fn corners_of_square() {
        let fs = product_ofs(&poset_category(1), &poset_category(1));
        let k = corners(&dclr(&fs)).unwrap();
        assert_eq!(k.category.num_morphisms(), 9);
        assert!(k.category.defects().is_empty());
        // Composable (e, i) pairs, counted directly in the base.
        let c = fs.base();
        let mut by_middle = [0; 4];
        for e in fs.egressive().ids() {
            for i in fs.ingressive().ids() {
                if c.tgt(e) == c.src(i) {
                    by_middle[c.tgt(e)] += 1;
                }
            }
        }
        assert_eq!(by_middle.iter().sum::<usize>(), 9);
    }

    #[test]
    fn corners_of_horizontal_chain() {
        let d = boxtimes(&poset_category(1), &poset_category(0));
        let k = corners(&d).unwrap();
        assert_eq!(k.category.num_morphisms(), 3);
        assert!(find_isomorph(&k.category, &poset_category(1)));
        assert_eq!(k.strict_ingressive(&d).count(), 2);
    }

    fn find_isomorph(a: &FinCategory, b: &FinCategory) -> bool {
        crate::fincat::find_isomorphism(a, b, &Budget::default())
            .unwrap()
            .is_some()
    }

    #[test]
    fn corner_invertibility() {
        for fs in sample_systems() {
            let d = dclr(&fs);
            let Ok(k) = corners(&d) else { continue };
            for &p in &k.pairs {
                let both = d.horizontal().is_iso(p.h) && d.vertical().is_iso(p.v);
                assert_eq!(corner_is_invertible(&k, p), both);
            }
        }
    }

    #[test]
    fn counit_on_examples() {
        for d in [
            boxtimes(&poset_category(1), &poset_category(1)),
            dclr(&arrow_ofs(&poset_category(1))),
            boxtimes(&poset_category(0), &poset_category(0)),
        ] {
            let (target, f) = counit_iso(&d).unwrap();
            assert!(is_double_isomorphism(&d, &target, &f));
        }
        let (t, f) = counit_iso(&boxtimes(&poset_category(0), &poset_category(0))).unwrap();
        assert_eq!(f, DblFunctor::identity(&t));
    }

    #[test]
    fn counit_rejects_non_factorization() {
        let z2 = validate_double(&crate::dblcat::delooping(
            &["e", "g"],
            &[vec![0, 1], vec![1, 0]],
        ))
        .unwrap();
        assert!(matches!(
            counit_iso(&z2),
            Err(BridgeError::NotFactorizationDouble(_))
        ));
    }

    #[test]
    fn unit_on_examples() {
        let r = unit_iso(&product_ofs(&poset_category(1), &poset_category(1))).unwrap();
        assert!(r.on_the_nose);
        for fs in sample_systems() {
            unit_iso(&fs).unwrap();
        }
        let z2 = from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        let r = unit_iso(&isos_all(&product(&poset_category(1), &z2))).unwrap();
        assert!(!r.on_the_nose);
        assert!(!r.unique_fillers);
        assert_eq!(r.quotient.num_morphisms(), 6);
    }

    #[test]
    fn ardc_grid_counts_follow_join_formula() {
        let b = Budget::default();
        let a1 = ardc(&poset_category(1));
        assert_eq!(count_grids(&a1, 1, 1, &b).unwrap(), 5);
        assert_eq!(count_grids(&a1, 0, 0, &b).unwrap(), 3);
        for m in 0..3 {
            for n in 0..3 {
                assert_eq!(count_grids(&a1, m, n, &b).unwrap(), monotone(n + m + 1, 1));
            }
        }
        let t = ardc(&terminal());
        assert_eq!(
            (
                t.num_objects(),
                t.num_hmors(),
                t.num_vmors(),
                t.num_squares()
            ),
            (1, 1, 1, 1)
        );
    }

    #[test]
    fn segal_counts_on_square() {
        let b = Budget::default();
        let d = dclr(&product_ofs(&poset_category(1), &poset_category(1)));
        for n in 0..=2 {
            let r = segal_chain_check(&d, n, &b).unwrap();
            assert_eq!(r.double_functors, r.chains);
        }
        // Independent count of 2-chains in the product poset [1]×[1].
        let c = product(&poset_category(1), &poset_category(1));
        let two_chains = c.nerve_chains(2).len();
        assert_eq!(segal_chain_check(&d, 2, &b).unwrap().chains, two_chains);
        assert_eq!(
            segal_chain_check(&d, 0, &b).unwrap().double_functors,
            d.num_objects()
        );
    }

    #[test]
    fn dclr_is_full_and_faithful_on_small_pairs() {
        let b = Budget::default();
        let systems = [
            product_ofs(&poset_category(1), &poset_category(0)),
            isos_all(&poset_category(1)),
            all_isos(&poset_category(2)),
            arrow_ofs(&poset_category(1)),
        ];
        for a in &systems {
            for t in &systems {
                let (sa, st) = (dclr_with_embeddings(a), dclr_with_embeddings(t));
                let maps = enumerate_ofs_maps(a, t, &b).unwrap();
                let mut images: Vec<DblFunctor> =
                    maps.iter().map(|m| dclr_map(&sa, &st, m)).collect();
                for f in &images {
                    check_dbl_functor(&sa.double, &st.double, f).unwrap();
                }
                images.sort();
                images.dedup();
                assert_eq!(images.len(), maps.len());
                assert_eq!(
                    count_dbl_functors(&sa.double, &st.double, &b).unwrap(),
                    maps.len()
                );
            }
        }
    }
}
