//! Adequate factorization systems: ambigressive pullbacks, the span
//! category, and its comparison with the horizontal opposite of the
//! commuting-square double category.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bridge::{corners, dclr, dclr_with_embeddings, CornerPair, SquareDouble};
use crate::dblcat::{
    horop, is_double_isomorphism, is_factorization_double, DblFunctor, DoubleCategory,
};
use crate::fincat::{
    check_functor, find_isomorphism, FinCategory, Functor, MorId, Morphism, ObjId,
};
use crate::ofs::{FactorizationSystem, MorphismClass};
use crate::Budget;

/// Egressive `e: x → z` and ingressive `i: y → z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbiCospan {
    pub e: MorId,
    pub i: MorId,
}

/// Back leg `back: m → x` egressive, forward leg `fwd: m → y` ingressive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpanPair {
    pub back: MorId,
    pub fwd: MorId,
}

/// A cone `x ← p → y` over a cospan `x → z ← y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PullbackSquare {
    pub p: ObjId,
    pub px: MorId,
    pub py: MorId,
}

fn cones(c: &FinCategory, f: MorId, g: MorId) -> Vec<PullbackSquare> {
    let (x, y) = (c.src(f), c.src(g));
    let mut out = Vec::new();
    for p in c.objects() {
        for &px in c.hom(p, x) {
            for &py in c.hom(p, y) {
                if c.comp(f, px) == c.comp(g, py) {
                    out.push(PullbackSquare { p, px, py });
                }
            }
        }
    }
    out
}

fn mediators(c: &FinCategory, cone: &PullbackSquare, from: &PullbackSquare) -> usize {
    c.hom(from.p, cone.p)
        .iter()
        .filter(|&&u| c.comp(cone.px, u) == from.px && c.comp(cone.py, u) == from.py)
        .count()
}

/// Whether `cone` is a pullback of `f: x → z ← y :g`, tested against every
/// competing cone.
pub fn is_pullback(c: &FinCategory, f: MorId, g: MorId, cone: &PullbackSquare) -> bool {
    cones(c, f, g)
        .iter()
        .all(|other| mediators(c, cone, other) == 1)
}

/// All pullbacks of `f: x → z ← y :g`, possibly several isomorphic ones.
pub fn pullback_complete(c: &FinCategory, f: MorId, g: MorId) -> Vec<PullbackSquare> {
    assert_eq!(c.tgt(f), c.tgt(g), "cospan legs must share a target");
    let all = cones(c, f, g);
    all.iter()
        .copied()
        .filter(|cone| all.iter().all(|other| mediators(c, cone, other) == 1))
        .collect()
}

/// All ambigressive cospans of a triple.
pub fn ambigressive_cospans(
    c: &FinCategory,
    e: &MorphismClass,
    i: &MorphismClass,
) -> Vec<AmbiCospan> {
    let mut out = Vec::new();
    for ei in e.ids() {
        for &ii in c.incoming(c.tgt(ei)) {
            if i.contains(ii) {
                out.push(AmbiCospan { e: ei, i: ii });
            }
        }
    }
    out
}

/// Ambigressive squares completing a cospan: the cone leg over `i` is
/// egressive, the leg over `e` ingressive.
pub fn ambigressive_extensions(
    c: &FinCategory,
    e: &MorphismClass,
    i: &MorphismClass,
    cospan: AmbiCospan,
) -> Vec<PullbackSquare> {
    cones(c, cospan.e, cospan.i)
        .into_iter()
        .filter(|s| i.contains(s.px) && e.contains(s.py))
        .collect()
}

/// Isomorphisms `k` between the apexes of two cones that commute with both legs.
pub fn cone_isos(c: &FinCategory, a: &PullbackSquare, b: &PullbackSquare) -> Vec<MorId> {
    c.hom(a.p, b.p)
        .iter()
        .copied()
        .filter(|&k| c.is_iso(k) && c.comp(b.px, k) == a.px && c.comp(b.py, k) == a.py)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdequacyWitness {
    NoPullback(AmbiCospan),
    NotAPullback {
        cospan: AmbiCospan,
        square: PullbackSquare,
    },
    NoExtension(AmbiCospan),
    /// Two extensions joined by `isos` connecting isomorphisms (not exactly one).
    NotUniquelyConnected {
        cospan: AmbiCospan,
        first: PullbackSquare,
        second: PullbackSquare,
        isos: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdequacyReport {
    /// Every ambigressive cospan has a pullback and every ambigressive square
    /// is one.
    pub pullbacks: Result<(), AdequacyWitness>,
    /// Every ambigressive cospan extends to an ambigressive square, any two
    /// extensions joined by exactly one isomorphism.
    pub unique_extension: Result<(), AdequacyWitness>,
    /// Every ambigressive cospan has exactly one extension.
    pub strictly_unique: bool,
}

impl AdequacyReport {
    pub fn agree(&self) -> bool {
        self.pullbacks.is_ok() == self.unique_extension.is_ok()
    }
}

/// Both adequacy criteria on a triple `(C, E, I)`; the classes need not form
/// a factorization system.
pub fn is_adequate(c: &FinCategory, e: &MorphismClass, i: &MorphismClass) -> AdequacyReport {
    let cospans = ambigressive_cospans(c, e, i);
    let pullbacks = (|| {
        for &cs in &cospans {
            let all = cones(c, cs.e, cs.i);
            let universal = |s: &PullbackSquare| all.iter().all(|o| mediators(c, s, o) == 1);
            if !all.iter().any(universal) {
                return Err(AdequacyWitness::NoPullback(cs));
            }
            for s in all.iter().filter(|s| i.contains(s.px) && e.contains(s.py)) {
                if !universal(s) {
                    return Err(AdequacyWitness::NotAPullback {
                        cospan: cs,
                        square: *s,
                    });
                }
            }
        }
        Ok(())
    })();
    let mut strictly_unique = true;
    let unique_extension = (|| {
        for &cs in &cospans {
            let ext = ambigressive_extensions(c, e, i, cs);
            if ext.is_empty() {
                return Err(AdequacyWitness::NoExtension(cs));
            }
            strictly_unique &= ext.len() == 1;
            for a in &ext {
                for b in &ext {
                    let isos = cone_isos(c, a, b).len();
                    if isos != 1 {
                        return Err(AdequacyWitness::NotUniquelyConnected {
                            cospan: cs,
                            first: *a,
                            second: *b,
                            isos,
                        });
                    }
                }
            }
        }
        Ok(())
    })();
    if unique_extension.is_err() {
        strictly_unique = false;
    }
    AdequacyReport {
        pullbacks,
        unique_extension,
        strictly_unique,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdequacyError {
    #[error("adequacy criteria disagree: {0:?}")]
    VerdictDisagreement(Box<AdequacyReport>),
    #[error("not adequate: {0:?}")]
    NotAdequate(AdequacyWitness),
    #[error("ambigressive cospan {0:?} has more than one extension")]
    NonUniquePullback(AmbiCospan),
    #[error("comparison fails at {0}")]
    Mismatch(String),
}

/// Adequacy of a factorization system, insisting that both criteria agree.
pub fn adequacy(fs: &FactorizationSystem) -> Result<bool, AdequacyError> {
    let r = is_adequate(fs.base(), fs.egressive(), fs.ingressive());
    if !r.agree() {
        return Err(AdequacyError::VerdictDisagreement(Box::new(r)));
    }
    Ok(r.pullbacks.is_ok())
}

/// The horizontal opposite is again a factorization double category, with
/// strictly unique fillers.
pub fn is_adequate_double(d: &DoubleCategory) -> bool {
    is_factorization_double(&horop(d)).is_ok()
}

/// Adequacy read off the horizontal opposite of `dclr fs`, allowing the
/// fillers of a corner to differ by exactly one base isomorphism.
pub fn is_adequate_dclr(fs: &FactorizationSystem) -> bool {
    let sd = dclr_with_embeddings(fs);
    let h = horop(&sd.double);
    let c = fs.base();
    for v in h.vertical().morphism_ids() {
        for &b in h.horizontal().outgoing(h.vertical().tgt(v)) {
            let fillers = h.fillers(v, b);
            if fillers.is_empty() {
                return false;
            }
            let cone = |s: usize| {
                let sq = h.square(s);
                let py = sd.hmor_base[sq.top];
                PullbackSquare {
                    p: c.src(py),
                    px: sd.vmor_base[sq.right],
                    py,
                }
            };
            for &s in fillers {
                for &t in fillers {
                    if cone_isos(c, &cone(s), &cone(t)).len() != 1 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Span category of an adequate factorization system in the strict regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCategory {
    pub fs: FactorizationSystem,
    pub spans: Vec<SpanPair>,
    index: HashMap<SpanPair, MorId>,
}

impl SpanCategory {
    pub fn id_of(&self, s: SpanPair) -> MorId {
        self.index[&s]
    }
}

/// Spans `x ← m → y` with egressive back leg and ingressive forward leg,
/// composed along the unique ambigressive pullback. Egressives are the spans
/// with identity forward leg, ingressives those with identity back leg.
pub fn span_category(fs: &FactorizationSystem) -> Result<SpanCategory, AdequacyError> {
    let c = fs.base();
    let report = is_adequate(c, fs.egressive(), fs.ingressive());
    if !report.agree() {
        return Err(AdequacyError::VerdictDisagreement(Box::new(report)));
    }
    if let Err(w) = report.unique_extension {
        return Err(AdequacyError::NotAdequate(w));
    }
    let mut pullback = HashMap::new();
    for cs in ambigressive_cospans(c, fs.egressive(), fs.ingressive()) {
        let ext = ambigressive_extensions(c, fs.egressive(), fs.ingressive(), cs);
        if ext.len() != 1 {
            return Err(AdequacyError::NonUniquePullback(cs));
        }
        pullback.insert((cs.e, cs.i), ext[0]);
    }
    let mut spans = Vec::new();
    let mut morphisms = Vec::new();
    for back in fs.egressive().ids() {
        let m = c.src(back);
        for &fwd in c.outgoing(m) {
            if fs.is_ingressive(fwd) {
                spans.push(SpanPair { back, fwd });
                morphisms.push(Morphism {
                    name: format!("<{}|{}>", c.morphism(back).name, c.morphism(fwd).name),
                    src: c.tgt(back),
                    tgt: c.tgt(fwd),
                });
            }
        }
    }
    let index: HashMap<SpanPair, MorId> = spans.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let identities = c
        .objects()
        .map(|x| {
            index[&SpanPair {
                back: c.identity(x),
                fwd: c.identity(x),
            }]
        })
        .collect();
    let category =
        FinCategory::from_parts(c.object_names().to_vec(), morphisms, identities, |g, f| {
            let (s1, s2) = (spans[f], spans[g]);
            // Cospan m2 --back2--> y <--fwd1-- m1: the extension leg into m1 is
            // egressive, the leg into m2 ingressive.
            let pb = pullback[&(s2.back, s1.fwd)];
            index[&SpanPair {
                back: c.comp(s1.back, pb.py),
                fwd: c.comp(s2.fwd, pb.px),
            }]
        });
    let e = MorphismClass::from_fn(&category, |k| c.is_identity(spans[k].fwd));
    let i = MorphismClass::from_fn(&category, |k| c.is_identity(spans[k].back));
    Ok(SpanCategory {
        fs: FactorizationSystem::new_unchecked(category, e, i),
        spans,
        index,
    })
}

/// Isomorphisms relating the span category to the horizontal opposite of
/// the commuting-square double category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanComparison {
    /// `span_category(fs) → corners(horop(dclr fs))`, identity on objects.
    pub corners_iso: Functor,
    /// `dclr(span_category fs) → horop(dclr fs)`.
    pub double_iso: DblFunctor,
}

pub fn span_vs_horop(fs: &FactorizationSystem) -> Result<SpanComparison, AdequacyError> {
    let span = span_category(fs)?;
    let sd = dclr_with_embeddings(fs);
    let h = horop(&sd.double);
    let k = corners(&h).map_err(|d| AdequacyError::Mismatch(format!("corners of horop: {d:?}")))?;
    let mor_map: Vec<MorId> = span
        .spans
        .iter()
        .map(|s| {
            k.id_of(CornerPair {
                h: sd.hmor_of(s.back).expect("egressive"),
                v: sd.vmor_of(s.fwd).expect("ingressive"),
            })
        })
        .collect();
    let corners_iso = Functor {
        obj_map: (0..fs.num_objects()).collect(),
        mor_map,
    };
    let sc = span.fs.base();
    check_functor(sc, &k.category, &corners_iso)
        .map_err(|e| AdequacyError::Mismatch(format!("span to corners: {e:?}")))?;
    let mut hit = vec![false; k.category.num_morphisms()];
    corners_iso.mor_map.iter().for_each(|&m| hit[m] = true);
    if sc.num_morphisms() != k.category.num_morphisms() || hit.contains(&false) {
        return Err(AdequacyError::Mismatch(
            "span to corners is not bijective".into(),
        ));
    }

    let ss = dclr_with_embeddings(&span.fs);
    let double_iso = compare_doubles(&ss, &span, &sd, &h)?;
    Ok(SpanComparison {
        corners_iso,
        double_iso,
    })
}

fn compare_doubles(
    ss: &SquareDouble,
    span: &SpanCategory,
    sd: &SquareDouble,
    h: &DoubleCategory,
) -> Result<DblFunctor, AdequacyError> {
    let hmor_map: Vec<MorId> = ss
        .hmor_base
        .iter()
        .map(|&m| sd.hmor_of(span.spans[m].back).expect("egressive"))
        .collect();
    let vmor_map: Vec<MorId> = ss
        .vmor_base
        .iter()
        .map(|&m| sd.vmor_of(span.spans[m].fwd).expect("ingressive"))
        .collect();
    let mut square_map = Vec::with_capacity(ss.double.num_squares());
    for (s, sq) in ss.double.squares().iter().enumerate() {
        let img = h.squares_with_boundary(
            hmor_map[sq.top],
            hmor_map[sq.bottom],
            vmor_map[sq.left],
            vmor_map[sq.right],
        );
        match img {
            [t] => square_map.push(*t),
            _ => {
                return Err(AdequacyError::Mismatch(format!(
                    "square {s} has {} images",
                    img.len()
                )))
            }
        }
    }
    let f = DblFunctor {
        obj_map: (0..h.num_objects()).collect(),
        hmor_map,
        vmor_map,
        square_map,
    };
    if !is_double_isomorphism(&ss.double, h, &f) {
        return Err(AdequacyError::Mismatch(
            "double comparison is not an isomorphism".into(),
        ));
    }
    Ok(f)
}

/// `span(span fs) ≅ fs` via `(e, i) ↦ i ∘ e`, plus the strict identity
/// `horop(horop(dclr fs)) = dclr fs`.
pub fn involution_check(fs: &FactorizationSystem) -> Result<Functor, AdequacyError> {
    let c = fs.base();
    let s1 = span_category(fs)?;
    let s2 = span_category(&s1.fs)?;
    let mor_map: Vec<MorId> = s2
        .spans
        .iter()
        .map(|s| {
            let e = s1.spans[s.back].back;
            let i = s1.spans[s.fwd].fwd;
            c.comp(i, e)
        })
        .collect();
    let iso = Functor {
        obj_map: (0..c.num_objects()).collect(),
        mor_map,
    };
    let base2 = s2.fs.base();
    check_functor(base2, c, &iso)
        .map_err(|e| AdequacyError::Mismatch(format!("double span: {e:?}")))?;
    let mut hit = vec![false; c.num_morphisms()];
    iso.mor_map.iter().for_each(|&m| hit[m] = true);
    if base2.num_morphisms() != c.num_morphisms() || hit.contains(&false) {
        return Err(AdequacyError::Mismatch(
            "double span is not bijective".into(),
        ));
    }
    for m in base2.morphism_ids() {
        if s2.fs.is_egressive(m) != fs.is_egressive(iso.mor(m))
            || s2.fs.is_ingressive(m) != fs.is_ingressive(iso.mor(m))
        {
            return Err(AdequacyError::Mismatch(format!(
                "classes differ at span {m}"
            )));
        }
    }
    let d = dclr(fs);
    if horop(&horop(&d)) != d {
        return Err(AdequacyError::Mismatch("horop is not an involution".into()));
    }
    Ok(iso)
}

/// The span construction is not isomorphic to the identity: the base of
/// `span_category(fs)` is not isomorphic to the base of `fs`.
pub fn span_changes_base(fs: &FactorizationSystem, budget: &Budget) -> Result<bool, AdequacyError> {
    let s = span_category(fs)?;
    let iso = find_isomorphism(s.fs.base(), fs.base(), budget)
        .map_err(|e| AdequacyError::Mismatch(e.to_string()))?;
    Ok(iso.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::boxtimes;
    use crate::fincat::{from_poset, opposite, poset_category, product};
    use crate::ofs::{all_isos, arrow_ofs, isos_all, product_ofs, validate_ofs};

    fn square() -> FinCategory {
        product(&poset_category(1), &poset_category(1))
    }

    fn nontrivial_chain() -> FactorizationSystem {
        let c = poset_category(2);
        let up = |a, b| c.hom(a, b)[0];
        let e =
            MorphismClass::from_ids(&c, &[c.identity(0), c.identity(1), c.identity(2), up(0, 1)]);
        let i =
            MorphismClass::from_ids(&c, &[c.identity(0), c.identity(1), c.identity(2), up(1, 2)]);
        validate_ofs(c, e, i, &Budget::default()).unwrap()
    }

    #[test]
    fn pullback_in_lattice_is_meet() {
        let c = square();
        let obj = |a: &str| c.find_object(a).unwrap();
        let (x, y, z) = (obj("(1,0)"), obj("(0,1)"), obj("(1,1)"));
        let pbs = pullback_complete(&c, c.hom(x, z)[0], c.hom(y, z)[0]);
        assert_eq!(pbs.len(), 1);
        assert_eq!(pbs[0].p, obj("(0,0)"));
    }

    #[test]
    fn pullback_along_identity() {
        let c = poset_category(2);
        let f = c.hom(0, 2)[0];
        let pbs = pullback_complete(&c, f, c.identity(2));
        assert_eq!(pbs.len(), 1);
        assert_eq!(pbs[0].p, 0);
    }

    #[test]
    fn pullback_missing_without_meet() {
        let c = from_poset(vec!["a".into(), "b".into(), "c".into()], |x, y| {
            x == y || y == 2
        });
        assert!(pullback_complete(&c, c.hom(0, 2)[0], c.hom(1, 2)[0]).is_empty());
    }

    #[test]
    fn adequacy_examples() {
        assert!(adequacy(&product_ofs(&poset_category(1), &poset_category(1))).unwrap());
        for c in [poset_category(3), square()] {
            assert!(adequacy(&all_isos(&c)).unwrap());
            assert!(adequacy(&isos_all(&c)).unwrap());
        }
        let c = square();
        let r = is_adequate(&c, &MorphismClass::all(&c), &MorphismClass::all(&c));
        assert!(r.agree());
        assert!(matches!(
            r.pullbacks,
            Err(AdequacyWitness::NotAPullback { .. })
        ));
        assert!(r.unique_extension.is_err());
    }

    #[test]
    fn adequacy_on_doubles() {
        let fs = product_ofs(&poset_category(1), &poset_category(1));
        assert!(is_adequate_double(&dclr(&fs)));
        assert!(is_adequate_double(&boxtimes(
            &poset_category(1),
            &poset_category(1)
        )));
        for fs in [
            fs,
            isos_all(&poset_category(2)),
            all_isos(&poset_category(2)),
            arrow_ofs(&poset_category(1)),
            nontrivial_chain(),
        ] {
            let a = adequacy(&fs).unwrap();
            assert_eq!(is_adequate_double(&dclr(&fs)), a);
            assert_eq!(is_adequate_dclr(&fs), a);
        }
        let z2 = crate::fincat::from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        let pz = product(&poset_category(1), &z2);
        let cod = crate::fincat::codiscrete(vec!["a".into(), "b".into()]);
        for fs in [
            all_isos(&pz),
            isos_all(&pz),
            all_isos(&cod),
            product_ofs(&poset_category(1), &z2),
        ] {
            assert_eq!(is_adequate_dclr(&fs), adequacy(&fs).unwrap());
        }
    }

    #[test]
    fn span_of_square() {
        let fs = product_ofs(&poset_category(1), &poset_category(1));
        let s = span_category(&fs).unwrap();
        assert_eq!(s.fs.base().num_morphisms(), 9);
        // Brute-force span count over apexes.
        let c = fs.base();
        let mut count = 0;
        for m in c.objects() {
            let backs = c
                .outgoing(m)
                .iter()
                .filter(|&&f| fs.is_egressive(f))
                .count();
            let fwds = c
                .outgoing(m)
                .iter()
                .filter(|&&f| fs.is_ingressive(f))
                .count();
            count += backs * fwds;
        }
        assert_eq!(count, 9);
        assert!(s.fs.base().defects().is_empty());
        validate_ofs(
            s.fs.base().clone(),
            s.fs.egressive().clone(),
            s.fs.ingressive().clone(),
            &Budget::default(),
        )
        .unwrap();
        assert!(adequacy(&s.fs).unwrap());
    }

    #[test]
    fn span_of_isos_all_is_opposite() {
        let c = square();
        let s = span_category(&all_isos(&c)).unwrap();
        let op = opposite(&c);
        assert!(find_isomorphism(s.fs.base(), &op, &Budget::default())
            .unwrap()
            .is_some());
        assert_eq!(s.fs.egressive().count(), s.fs.base().num_morphisms());
        for x in c.objects() {
            let id = s.id_of(SpanPair {
                back: c.identity(x),
                fwd: c.identity(x),
            });
            assert!(s.fs.base().is_identity(id));
        }
    }

    #[test]
    fn span_comparisons() {
        for fs in [
            product_ofs(&poset_category(1), &poset_category(1)),
            isos_all(&poset_category(2)),
            isos_all(&crate::fincat::terminal()),
            nontrivial_chain(),
        ] {
            span_vs_horop(&fs).unwrap();
            involution_check(&fs).unwrap();
        }
        let t = span_vs_horop(&isos_all(&crate::fincat::terminal())).unwrap();
        assert_eq!(t.corners_iso, Functor::identity(&crate::fincat::terminal()));
    }

    #[test]
    fn span_is_not_the_identity() {
        assert!(span_changes_base(&nontrivial_chain(), &Budget::default()).unwrap());
        assert!(!span_changes_base(
            &product_ofs(&poset_category(1), &poset_category(1)),
            &Budget::default()
        )
        .unwrap());
    }

    #[test]
    fn span_rejects_inadequate() {
        let c = square();
        let fs = FactorizationSystem::new_unchecked(
            c.clone(),
            MorphismClass::all(&c),
            MorphismClass::all(&c),
        );
        assert!(matches!(
            span_category(&fs),
            Err(AdequacyError::NotAdequate(_))
        ));
    }
}
