use std::collections::HashMap;
use std::ops::ControlFlow;

use thiserror::Error;

use super::indexing::{
    check_indexing_iso, validate_indexing, DblIndexing, IndexingDefect, IndexingIso,
};
use super::{is_cocart_right, is_cocartesian_edge, FibReport};
use crate::budget::{Budget, BudgetExceeded};
use crate::dblcat::{
    check_dbl_functor, is_double_isomorphism, DblFunctor, DoubleCategory, SqId, Square,
};
use crate::fincat::{FinCategory, Functor, MorId, Morphism, NatTrans, ObjId};
use crate::search::{solve_until, Problem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothendieckError {
    #[error("invalid indexing: {0}")]
    Indexing(IndexingDefect),
    #[error("not a (cocartesian, right) fibration: {} witnesses", .0.witnesses.len())]
    NotCocartRight(FibReport),
    #[error("no cleavage closed under composition exists")]
    NoSplitCleavage,
    #[error("round trip fails: {0}")]
    RoundTrip(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// The total double category of an indexing together with its projection.
/// Objects are pairs `(c, a)`; horizontal morphisms are `(h, a, φ)` with
/// `φ: X(h)(a) → b`; vertical morphisms are `(v, a')` from `(c, X(v)(a'))`
/// to `(c', a')`; squares are `(σ, bottom)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unstraightened {
    pub total: DoubleCategory,
    pub projection: DblFunctor,
    pub objects: Vec<(ObjId, ObjId)>,
    pub hmors: Vec<(MorId, ObjId, MorId)>,
    pub vmors: Vec<(MorId, ObjId)>,
    pub squares: Vec<(SqId, MorId)>,
}

pub fn unstraighten(x: &DblIndexing) -> Result<Unstraightened, GrothendieckError> {
    validate_indexing(x).map_err(GrothendieckError::Indexing)?;
    let d = &x.base;
    let (hc, vc) = (d.horizontal(), d.vertical());
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    let mut object_names = Vec::new();
    for c in hc.objects() {
        for a in x.obj_cat[c].objects() {
            obj_index.insert((c, a), objects.len());
            objects.push((c, a));
            object_names.push(format!(
                "({},{})",
                d.object_name(c),
                x.obj_cat[c].object_name(a)
            ));
        }
    }

    let mut hmors = Vec::new();
    let mut h_index = HashMap::new();
    let mut h_morphisms = Vec::new();
    for h in hc.morphism_ids() {
        let (c, e) = (hc.src(h), hc.tgt(h));
        let xe = &x.obj_cat[e];
        for a in x.obj_cat[c].objects() {
            for &phi in xe.outgoing(x.h_fun[h].obj(a)) {
                h_index.insert((h, a, phi), hmors.len());
                hmors.push((h, a, phi));
                h_morphisms.push(Morphism {
                    name: format!("({},{})", hc.morphism(h).name, xe.morphism(phi).name),
                    src: obj_index[&(c, a)],
                    tgt: obj_index[&(e, xe.tgt(phi))],
                });
            }
        }
    }
    let h_identities = objects
        .iter()
        .map(|&(c, a)| h_index[&(hc.identity(c), a, x.obj_cat[c].identity(a))])
        .collect();
    let horizontal =
        FinCategory::from_parts(object_names.clone(), h_morphisms, h_identities, |g, f| {
            let (h1, a, phi1) = hmors[f];
            let (h2, _, phi2) = hmors[g];
            let z = &x.obj_cat[hc.tgt(h2)];
            h_index[&(hc.comp(h2, h1), a, z.comp(phi2, x.h_fun[h2].mor(phi1)))]
        });

    let mut vmors = Vec::new();
    let mut v_index = HashMap::new();
    let mut v_morphisms = Vec::new();
    for v in vc.morphism_ids() {
        let (c, c2) = (vc.src(v), vc.tgt(v));
        for a2 in x.obj_cat[c2].objects() {
            v_index.insert((v, a2), vmors.len());
            vmors.push((v, a2));
            v_morphisms.push(Morphism {
                name: format!(
                    "({},{})",
                    vc.morphism(v).name,
                    x.obj_cat[c2].object_name(a2)
                ),
                src: obj_index[&(c, x.v_fun[v].obj(a2))],
                tgt: obj_index[&(c2, a2)],
            });
        }
    }
    let v_identities = objects
        .iter()
        .map(|&(c, a)| v_index[&(vc.identity(c), a)])
        .collect();
    let vertical = FinCategory::from_parts(object_names, v_morphisms, v_identities, |g, f| {
        let (v1, _) = vmors[f];
        let (v2, a2) = vmors[g];
        v_index[&(vc.comp(v2, v1), a2)]
    });

    let mut squares = Vec::new();
    let mut records = Vec::new();
    let mut sq_index = HashMap::new();
    for (s, sq) in d.squares().iter().enumerate() {
        let (x2, y) = (hc.src(sq.bottom), hc.tgt(sq.top));
        let y2 = hc.tgt(sq.bottom);
        for a2 in x.obj_cat[x2].objects() {
            for &phi2 in x.obj_cat[y2].outgoing(x.h_fun[sq.bottom].obj(a2)) {
                let b2 = x.obj_cat[y2].tgt(phi2);
                let a = x.v_fun[sq.left].obj(a2);
                let phi =
                    x.obj_cat[y].comp(x.v_fun[sq.right].mor(phi2), x.sq_nat[s].components[a2]);
                let bottom = h_index[&(sq.bottom, a2, phi2)];
                sq_index.insert((s, bottom), records.len());
                records.push((s, bottom));
                squares.push(Square {
                    name: format!("{}@{}", sq.name, horizontal.morphism(bottom).name),
                    top: h_index[&(sq.top, a, phi)],
                    bottom,
                    left: v_index[&(sq.left, a2)],
                    right: v_index[&(sq.right, b2)],
                });
            }
        }
    }
    let hmor_square = (0..hmors.len())
        .map(|k| sq_index[&(d.hmor_square(hmors[k].0), k)])
        .collect();
    let vmor_square = vmors
        .iter()
        .map(|&(v, a2)| {
            let c2 = vc.tgt(v);
            let id = h_index[&(hc.identity(c2), a2, x.obj_cat[c2].identity(a2))];
            sq_index[&(d.vmor_square(v), id)]
        })
        .collect();
    let hcat = horizontal.clone();
    let total = DoubleCategory::from_parts(
        horizontal,
        vertical,
        squares,
        hmor_square,
        vmor_square,
        |t, s| {
            let ((st, bt), (ss, bs)) = (records[t], records[s]);
            sq_index[&(d.hcomp(st, ss).expect("composable"), hcat.comp(bt, bs))]
        },
        |t, s| {
            let ((st, bt), (ss, _)) = (records[t], records[s]);
            sq_index[&(d.vcomp(st, ss).expect("composable"), bt)]
        },
    );
    let projection = DblFunctor {
        obj_map: objects.iter().map(|&(c, _)| c).collect(),
        hmor_map: hmors.iter().map(|&(h, _, _)| h).collect(),
        vmor_map: vmors.iter().map(|&(v, _)| v).collect(),
        square_map: records.iter().map(|&(s, _)| s).collect(),
    };
    Ok(Unstraightened {
        total,
        projection,
        objects,
        hmors,
        vmors,
        squares: records,
    })
}

/// Chosen cocartesian lifts, closed under composition and sending
/// identities to identities: `lift[h][a]` lifts `h` at the `a`-th object of
/// the fiber over its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cleavage {
    pub lift: Vec<Vec<MorId>>,
}

/// Output of straightening: the indexing plus the fiber embeddings and the
/// cleavage used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Straightened {
    pub indexing: DblIndexing,
    pub fiber_objects: Vec<Vec<ObjId>>,
    pub fiber_morphisms: Vec<Vec<MorId>>,
    pub cleavage: Cleavage,
}

struct Fibers {
    objects: Vec<Vec<ObjId>>,
    morphisms: Vec<Vec<MorId>>,
    obj_local: Vec<usize>,
    mor_local: Vec<Option<usize>>,
}

fn fibers(t: &DoubleCategory, c: &DoubleCategory, f: &DblFunctor) -> Fibers {
    let mut objects = vec![Vec::new(); c.num_objects()];
    let mut obj_local = vec![0; t.num_objects()];
    for (x, local) in obj_local.iter_mut().enumerate() {
        let b = f.obj_map[x];
        *local = objects[b].len();
        objects[b].push(x);
    }
    let mut morphisms = vec![Vec::new(); c.num_objects()];
    let mut mor_local = vec![None; t.num_hmors()];
    for g in t.horizontal().morphism_ids() {
        let k = f.hmor_map[g];
        if c.horizontal().is_identity(k) {
            let b = c.horizontal().src(k);
            mor_local[g] = Some(morphisms[b].len());
            morphisms[b].push(g);
        }
    }
    Fibers {
        objects,
        morphisms,
        obj_local,
        mor_local,
    }
}

struct CleavageProblem<'a> {
    t: &'a FinCategory,
    c: &'a FinCategory,
    /// `(h, a)` in assignment order.
    vars: Vec<(MorId, ObjId)>,
    var_of: HashMap<(MorId, ObjId), usize>,
    candidates: Vec<Vec<MorId>>,
}

impl Problem for CleavageProblem<'_> {
    fn num_vars(&self) -> usize {
        self.vars.len()
    }

    fn domain(&self, _assigned: &[usize], var: usize) -> Vec<usize> {
        self.candidates[var].clone()
    }

    fn consistent(&self, assigned: &[usize]) -> bool {
        let value = |var: usize| assigned.get(var).copied();
        for (v1, &(h1, a)) in self.vars.iter().enumerate().take(assigned.len()) {
            let l1 = assigned[v1];
            let mid = self.t.tgt(l1);
            for &h2 in self.c.outgoing(self.c.tgt(h1)) {
                let Some(l2) = self.var_of.get(&(h2, mid)).and_then(|&v| value(v)) else {
                    continue;
                };
                let Some(l12) = self
                    .var_of
                    .get(&(self.c.comp(h2, h1), a))
                    .and_then(|&v| value(v))
                else {
                    continue;
                };
                if self.t.comp(l2, l1) != l12 {
                    return false;
                }
            }
        }
        true
    }
}

fn find_cleavage(
    t: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    fib: &Fibers,
    budget: &Budget,
) -> Result<Cleavage, GrothendieckError> {
    let (th, ch) = (t.horizontal(), c.horizontal());
    let fh = f.horizontal();
    let mut vars = Vec::new();
    let mut candidates = Vec::new();
    for h in ch.morphism_ids() {
        for &a in &fib.objects[ch.src(h)] {
            vars.push((h, a));
            if ch.is_identity(h) {
                candidates.push(vec![th.identity(a)]);
            } else {
                candidates.push(
                    th.outgoing(a)
                        .iter()
                        .copied()
                        .filter(|&g| fh.mor(g) == h && is_cocartesian_edge(th, ch, &fh, g))
                        .collect(),
                );
            }
        }
    }
    let var_of: HashMap<(MorId, ObjId), usize> =
        vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let problem = CleavageProblem {
        t: th,
        c: ch,
        vars: vars.clone(),
        var_of,
        candidates,
    };
    let mut found = None;
    solve_until(&problem, budget, |a| {
        found = Some(a.to_vec());
        ControlFlow::Break(())
    })?;
    let values = found.ok_or(GrothendieckError::NoSplitCleavage)?;
    let mut lift = vec![Vec::new(); ch.num_morphisms()];
    for (k, &(h, _)) in vars.iter().enumerate() {
        lift[h].push(values[k]);
    }
    Ok(Cleavage { lift })
}

/// Straighten with the first split cleavage found.
pub fn straighten(
    t: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    budget: &Budget,
) -> Result<Straightened, GrothendieckError> {
    let report = is_cocart_right(t, c, f, budget)?;
    if !report.verdict {
        return Err(GrothendieckError::NotCocartRight(report));
    }
    let fib = fibers(t, c, f);
    let cleavage = find_cleavage(t, c, f, &fib, budget)?;
    straighten_with_cleavage(t, c, f, cleavage)
}

fn unique<T: Copy>(mut it: impl Iterator<Item = T>, what: &str) -> Result<T, GrothendieckError> {
    let first = it.next();
    match (first, it.next()) {
        (Some(x), None) => Ok(x),
        _ => Err(GrothendieckError::RoundTrip(format!(
            "{what} is not unique"
        ))),
    }
}

/// Straighten a (cocartesian, right) fibration along a given cleavage.
pub fn straighten_with_cleavage(
    t: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    cleavage: Cleavage,
) -> Result<Straightened, GrothendieckError> {
    let fib = fibers(t, c, f);
    let (th, tv) = (t.horizontal(), t.vertical());
    let (ch, cv) = (c.horizontal(), c.vertical());
    let lift = |h: MorId, x: ObjId| cleavage.lift[h][fib.obj_local[x]];

    let obj_cat: Vec<FinCategory> = ch
        .objects()
        .map(|b| {
            let objs = &fib.objects[b];
            let mors = &fib.morphisms[b];
            let morphisms = mors
                .iter()
                .map(|&g| Morphism {
                    name: th.morphism(g).name.clone(),
                    src: fib.obj_local[th.src(g)],
                    tgt: fib.obj_local[th.tgt(g)],
                })
                .collect();
            let identities = objs
                .iter()
                .map(|&x| fib.mor_local[th.identity(x)].expect("identity"))
                .collect();
            FinCategory::from_parts(
                objs.iter()
                    .map(|&x| th.object_name(x).to_string())
                    .collect(),
                morphisms,
                identities,
                |g, h| fib.mor_local[th.comp(mors[g], mors[h])].expect("fiber closed"),
            )
        })
        .collect();

    // Factor `target` through the cocartesian `through` by a fiber morphism.
    let factor = |through: MorId, target: MorId| -> Result<MorId, GrothendieckError> {
        let l = unique(
            th.hom(th.tgt(through), th.tgt(target))
                .iter()
                .copied()
                .filter(|&l| fib.mor_local[l].is_some() && th.comp(l, through) == target),
            "cocartesian factorization",
        )?;
        Ok(l)
    };

    let mut h_fun = Vec::with_capacity(ch.num_morphisms());
    for h in ch.morphism_ids() {
        let b = ch.src(h);
        let obj_map = fib.objects[b]
            .iter()
            .map(|&x| fib.obj_local[th.tgt(lift(h, x))])
            .collect();
        let mut mor_map = Vec::new();
        for &phi in &fib.morphisms[b] {
            let (x1, x2) = (th.src(phi), th.tgt(phi));
            let l = factor(lift(h, x1), th.comp(lift(h, x2), phi))?;
            mor_map.push(fib.mor_local[l].expect("fiber"));
        }
        h_fun.push(Functor { obj_map, mor_map });
    }

    let mut v_lift: HashMap<(MorId, ObjId), MorId> = HashMap::new();
    for w in tv.morphism_ids() {
        if v_lift.insert((f.vmor_map[w], tv.tgt(w)), w).is_some() {
            return Err(GrothendieckError::RoundTrip(
                "vertical lift is not unique".into(),
            ));
        }
    }
    let mut by_bottom: Vec<Vec<SqId>> = vec![Vec::new(); t.num_hmors()];
    for (s, sq) in t.squares().iter().enumerate() {
        by_bottom[sq.bottom].push(s);
    }
    let square_over = |sigma: SqId, bottom: MorId| {
        unique(
            by_bottom[bottom]
                .iter()
                .copied()
                .filter(|&s| f.square_map[s] == sigma),
            "square lift",
        )
    };

    let mut v_fun = Vec::with_capacity(cv.num_morphisms());
    for v in cv.morphism_ids() {
        let c2 = cv.tgt(v);
        let mut obj_map = Vec::new();
        for &x2 in &fib.objects[c2] {
            let w = *v_lift
                .get(&(v, x2))
                .ok_or_else(|| GrothendieckError::RoundTrip("missing vertical lift".into()))?;
            obj_map.push(fib.obj_local[tv.src(w)]);
        }
        let mut mor_map = Vec::new();
        for &phi in &fib.morphisms[c2] {
            let s = square_over(c.vmor_square(v), phi)?;
            mor_map.push(fib.mor_local[t.square(s).top].expect("fiber"));
        }
        v_fun.push(Functor { obj_map, mor_map });
    }

    let mut sq_nat = Vec::with_capacity(c.num_squares());
    for (sigma, sq) in c.squares().iter().enumerate() {
        let x2 = ch.src(sq.bottom);
        let mut components = Vec::new();
        for &a2 in &fib.objects[x2] {
            let theta = square_over(sigma, lift(sq.bottom, a2))?;
            let top = t.square(theta).top;
            let l = factor(lift(sq.top, th.src(top)), top)?;
            components.push(fib.mor_local[l].expect("fiber"));
        }
        sq_nat.push(NatTrans { components });
    }

    let indexing = DblIndexing {
        base: c.clone(),
        obj_cat,
        h_fun,
        v_fun,
        sq_nat,
    };
    validate_indexing(&indexing).map_err(GrothendieckError::Indexing)?;
    Ok(Straightened {
        indexing,
        fiber_objects: fib.objects,
        fiber_morphisms: fib.morphisms,
        cleavage,
    })
}

/// `straighten(unstraighten X) ≅ X`, returning the verified isomorphism
/// from `X` to the round trip.
pub fn unstraighten_round_trip(
    x: &DblIndexing,
    budget: &Budget,
) -> Result<(DblIndexing, IndexingIso), GrothendieckError> {
    let u = unstraighten(x)?;
    let s = straighten(&u.total, &x.base, &u.projection, budget)?;
    let hc = x.base.horizontal();
    let h_id: HashMap<(MorId, ObjId, MorId), MorId> =
        u.hmors.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let obj_id: HashMap<(ObjId, ObjId), ObjId> =
        u.objects.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let local_obj = |c: ObjId, a: ObjId| {
        s.fiber_objects[c]
            .iter()
            .position(|&o| o == obj_id[&(c, a)])
            .expect("fiber")
    };
    let local_mor = |c: ObjId, phi: MorId| {
        let a = x.obj_cat[c].src(phi);
        let g = h_id[&(hc.identity(c), a, phi)];
        s.fiber_morphisms[c]
            .iter()
            .position(|&m| m == g)
            .expect("fiber")
    };
    let theta: Vec<Functor> = hc
        .objects()
        .map(|c| Functor {
            obj_map: x.obj_cat[c].objects().map(|a| local_obj(c, a)).collect(),
            mor_map: x.obj_cat[c]
                .morphism_ids()
                .map(|phi| local_mor(c, phi))
                .collect(),
        })
        .collect();
    let alpha = hc
        .morphism_ids()
        .map(|h| {
            let (b, e) = (hc.src(h), hc.tgt(h));
            let components = x.obj_cat[b]
                .objects()
                .map(|a| {
                    let chosen = s.cleavage.lift[h][local_obj(b, a)];
                    let (_, _, phi0) = u.hmors[chosen];
                    local_mor(e, phi0)
                })
                .collect();
            NatTrans { components }
        })
        .collect();
    let iso = IndexingIso { theta, alpha };
    check_indexing_iso(x, &s.indexing, &iso).map_err(GrothendieckError::Indexing)?;
    Ok((s.indexing, iso))
}

/// `unstraighten(straighten F) ≅ F` over the base, returning the verified
/// double isomorphism from the round trip to the source of `F`.
pub fn straighten_round_trip(
    t: &DoubleCategory,
    c: &DoubleCategory,
    f: &DblFunctor,
    budget: &Budget,
) -> Result<DblFunctor, GrothendieckError> {
    let s = straighten(t, c, f, budget)?;
    let u = unstraighten(&s.indexing)?;
    let (th, tv) = (t.horizontal(), t.vertical());
    let obj_map: Vec<ObjId> = u
        .objects
        .iter()
        .map(|&(b, a)| s.fiber_objects[b][a])
        .collect();
    let hmor_map: Vec<MorId> = u
        .hmors
        .iter()
        .map(|&(h, a, phi)| {
            let e = c.horizontal().tgt(h);
            let l = s.cleavage.lift[h][a];
            th.comp(s.fiber_morphisms[e][phi], l)
        })
        .collect();
    let mut v_lift: HashMap<(MorId, ObjId), MorId> = HashMap::new();
    for w in tv.morphism_ids() {
        v_lift.insert((f.vmor_map[w], tv.tgt(w)), w);
    }
    let vmor_map: Vec<MorId> = u
        .vmors
        .iter()
        .map(|&(v, a2)| v_lift[&(v, s.fiber_objects[c.vertical().tgt(v)][a2])])
        .collect();
    let mut square_map = Vec::with_capacity(u.squares.len());
    for &(sigma, bottom) in &u.squares {
        let b = hmor_map[bottom];
        let s = unique(
            (0..t.num_squares()).filter(|&s| t.square(s).bottom == b && f.square_map[s] == sigma),
            "square lift",
        )?;
        square_map.push(s);
    }
    let g = DblFunctor {
        obj_map,
        hmor_map,
        vmor_map,
        square_map,
    };
    check_dbl_functor(&u.total, t, &g).map_err(|e| GrothendieckError::RoundTrip(e.to_string()))?;
    if !is_double_isomorphism(&u.total, t, &g) {
        return Err(GrothendieckError::RoundTrip(
            "comparison is not an isomorphism".into(),
        ));
    }
    if f.after(&g) != u.projection {
        return Err(GrothendieckError::RoundTrip(
            "comparison is not over the base".into(),
        ));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::dclr;
    use crate::catalog::{arrow_indexing, constant_indexing as constant};
    use crate::dblcat::{boxtimes, validate_double};
    use crate::fincat::poset_category;
    use crate::ofs::product_ofs;

    #[test]
    fn unstraighten_arrow_indexing() {
        let x = arrow_indexing();
        let u = unstraighten(&x).unwrap();
        assert_eq!(u.total.num_objects(), 3);
        validate_double(&u.total.to_raw()).unwrap();
        let b = Budget::default();
        assert!(
            is_cocart_right(&u.total, &x.base, &u.projection, &b)
                .unwrap()
                .verdict
        );
        unstraighten_round_trip(&x, &b).unwrap();
        straighten_round_trip(&u.total, &x.base, &u.projection, &b).unwrap();
    }

    #[test]
    fn unstraighten_constant() {
        let b = Budget::default();
        let base = dclr(&product_ofs(&poset_category(1), &poset_category(1)));
        let k = poset_category(1);
        let x = constant(&base, &k);
        let u = unstraighten(&x).unwrap();
        assert!(u.total.defects().is_empty());
        assert_eq!(u.total.num_objects(), base.num_objects() * k.num_objects());
        assert!(
            is_cocart_right(&u.total, &base, &u.projection, &b)
                .unwrap()
                .verdict
        );
        let (y, _) = unstraighten_round_trip(&x, &b).unwrap();
        assert_eq!(y.obj_cat.len(), x.obj_cat.len());
        straighten_round_trip(&u.total, &base, &u.projection, &b).unwrap();
    }

    #[test]
    fn unstraighten_over_point() {
        let base = boxtimes(&poset_category(0), &poset_category(0));
        let k = poset_category(2);
        let u = unstraighten(&constant(&base, &k)).unwrap();
        assert_eq!(u.total.num_hmors(), k.num_morphisms());
        assert_eq!(u.total.num_vmors(), k.num_objects());
        assert!(u
            .total
            .vertical()
            .morphism_ids()
            .all(|v| u.total.vertical().is_identity(v)));
    }

    #[test]
    fn straighten_rejects_non_fibrations() {
        let b = Budget::default();
        let d = boxtimes(&poset_category(0), &poset_category(1));
        let c = boxtimes(&poset_category(0), &poset_category(0));
        let f = DblFunctor {
            obj_map: vec![0; 2],
            hmor_map: vec![0; 2],
            vmor_map: vec![0; 3],
            square_map: vec![0; 3],
        };
        check_dbl_functor(&d, &c, &f).unwrap();
        assert!(matches!(
            straighten(&d, &c, &f, &b),
            Err(GrothendieckError::NotCocartRight(_))
        ));
    }
}
