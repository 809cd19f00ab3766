use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dblcat::{DoubleCategory, SqId};
use crate::fincat::{
    check_functor, check_natural, is_isomorphism, FinCategory, Functor, FunctorError, MorId,
    NatTrans, NatTransError, ObjId,
};

/// A double functor from the vertical opposite of `base` into categories:
/// a category per object, a functor `X(c) → X(d)` per horizontal `h: c → d`,
/// a functor `X(c') → X(c)` per vertical `v: c → c'`, and per square with
/// top `h_t`, bottom `h_b`, left `v_l`, right `v_r` a natural transformation
/// `X(h_t) ∘ X(v_l) ⇒ X(v_r) ∘ X(h_b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DblIndexing {
    pub base: DoubleCategory,
    pub obj_cat: Vec<FinCategory>,
    pub h_fun: Vec<Functor>,
    pub v_fun: Vec<Functor>,
    pub sq_nat: Vec<NatTrans>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum IndexingDefect {
    #[error("wrong number of {0}")]
    Shape(String),
    #[error("horizontal functor {h}: {error}")]
    HFunctor { h: MorId, error: String },
    #[error("vertical functor {v}: {error}")]
    VFunctor { v: MorId, error: String },
    #[error("horizontal identity at {x} is not sent to the identity functor")]
    HIdentity { x: ObjId },
    #[error("vertical identity at {x} is not sent to the identity functor")]
    VIdentity { x: ObjId },
    #[error("horizontal composite {g} after {f} is not preserved")]
    HComposition { g: MorId, f: MorId },
    #[error("vertical composite {g} after {f} is not preserved")]
    VComposition { g: MorId, f: MorId },
    #[error("transformation of square {square}: {error}")]
    Transformation { square: SqId, error: String },
    #[error("identity square {square} is not sent to the identity transformation")]
    IdentitySquare { square: SqId },
    #[error("horizontal pasting of {tau} after {sigma} fails at object {object}")]
    HPasting {
        tau: SqId,
        sigma: SqId,
        object: ObjId,
    },
    #[error("vertical pasting of {tau} below {sigma} fails at object {object}")]
    VPasting {
        tau: SqId,
        sigma: SqId,
        object: ObjId,
    },
    #[error("component functor at {x} is not an isomorphism")]
    NotIsomorphism { x: ObjId },
    #[error("components do not commute with vertical functor {v}")]
    VerticalMismatch { v: MorId },
    #[error("comparison for horizontal {h}: {error}")]
    Comparison { h: MorId, error: String },
    #[error("comparison for horizontal {h} is not invertible at {object}")]
    ComparisonNotIso { h: MorId, object: ObjId },
    #[error("comparisons are not compatible with composite {g} after {f}")]
    ComparisonComposition { g: MorId, f: MorId },
    #[error("comparisons are not compatible with square {square} at {object}")]
    ComparisonSquare { square: SqId, object: ObjId },
}

fn fun_err(e: FunctorError) -> String {
    e.to_string()
}

fn nat_err(e: NatTransError) -> String {
    e.to_string()
}

/// Check every axiom of an indexing exhaustively.
pub fn validate_indexing(x: &DblIndexing) -> Result<(), IndexingDefect> {
    let d = &x.base;
    let (hc, vc) = (d.horizontal(), d.vertical());
    for (what, have, want) in [
        ("categories", x.obj_cat.len(), d.num_objects()),
        ("horizontal functors", x.h_fun.len(), d.num_hmors()),
        ("vertical functors", x.v_fun.len(), d.num_vmors()),
        ("transformations", x.sq_nat.len(), d.num_squares()),
    ] {
        if have != want {
            return Err(IndexingDefect::Shape(what.into()));
        }
    }
    let cat = |c: ObjId| &x.obj_cat[c];
    for h in hc.morphism_ids() {
        check_functor(cat(hc.src(h)), cat(hc.tgt(h)), &x.h_fun[h]).map_err(|e| {
            IndexingDefect::HFunctor {
                h,
                error: fun_err(e),
            }
        })?;
    }
    for v in vc.morphism_ids() {
        check_functor(cat(vc.tgt(v)), cat(vc.src(v)), &x.v_fun[v]).map_err(|e| {
            IndexingDefect::VFunctor {
                v,
                error: fun_err(e),
            }
        })?;
    }
    for c in hc.objects() {
        let id = Functor::identity(cat(c));
        if x.h_fun[hc.identity(c)] != id {
            return Err(IndexingDefect::HIdentity { x: c });
        }
        if x.v_fun[vc.identity(c)] != id {
            return Err(IndexingDefect::VIdentity { x: c });
        }
    }
    for f in hc.morphism_ids() {
        for &g in hc.outgoing(hc.tgt(f)) {
            if x.h_fun[hc.comp(g, f)] != x.h_fun[g].after(&x.h_fun[f]) {
                return Err(IndexingDefect::HComposition { g, f });
            }
        }
    }
    for f in vc.morphism_ids() {
        for &g in vc.outgoing(vc.tgt(f)) {
            if x.v_fun[vc.comp(g, f)] != x.v_fun[f].after(&x.v_fun[g]) {
                return Err(IndexingDefect::VComposition { g, f });
            }
        }
    }
    for (s, sq) in d.squares().iter().enumerate() {
        let from = x.h_fun[sq.top].after(&x.v_fun[sq.left]);
        let to = x.v_fun[sq.right].after(&x.h_fun[sq.bottom]);
        let (src, tgt) = (cat(vc.tgt(sq.left)), cat(hc.tgt(sq.top)));
        check_natural(src, tgt, &from, &to, &x.sq_nat[s]).map_err(|e| {
            IndexingDefect::Transformation {
                square: s,
                error: nat_err(e),
            }
        })?;
    }
    let identity_squares = hc
        .morphism_ids()
        .map(|h| d.hmor_square(h))
        .chain(vc.morphism_ids().map(|v| d.vmor_square(v)));
    for s in identity_squares {
        let tgt = cat(hc.tgt(d.square(s).top));
        if x.sq_nat[s].components.iter().any(|&m| !tgt.is_identity(m)) {
            return Err(IndexingDefect::IdentitySquare { square: s });
        }
    }
    for sigma in 0..d.num_squares() {
        let ss = d.square(sigma);
        for &tau in d.squares_with_left(ss.right) {
            let ts = d.square(tau);
            let comp = d.hcomp(tau, sigma).expect("composable");
            let z = cat(hc.tgt(ts.top));
            for a in cat(vc.tgt(ss.left)).objects() {
                let b = x.h_fun[ss.bottom].obj(a);
                let pasted = z.comp(
                    x.sq_nat[tau].components[b],
                    x.h_fun[ts.top].mor(x.sq_nat[sigma].components[a]),
                );
                if x.sq_nat[comp].components[a] != pasted {
                    return Err(IndexingDefect::HPasting {
                        tau,
                        sigma,
                        object: a,
                    });
                }
            }
        }
        for &tau in d.squares_with_top(ss.bottom) {
            let ts = d.square(tau);
            let comp = d.vcomp(tau, sigma).expect("composable");
            let y = cat(hc.tgt(ss.top));
            for a in cat(vc.tgt(ts.left)).objects() {
                let pasted = y.comp(
                    x.v_fun[ss.right].mor(x.sq_nat[tau].components[a]),
                    x.sq_nat[sigma].components[x.v_fun[ts.left].obj(a)],
                );
                if x.sq_nat[comp].components[a] != pasted {
                    return Err(IndexingDefect::VPasting {
                        tau,
                        sigma,
                        object: a,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Isomorphism of indexings over the same base: isomorphisms of categories
/// `θ_c: X(c) → Y(c)` commuting strictly with the vertical functors, and
/// natural isomorphisms `α_h: θ_d ∘ X(h) ⇒ Y(h) ∘ θ_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexingIso {
    pub theta: Vec<Functor>,
    pub alpha: Vec<NatTrans>,
}

pub fn check_indexing_iso(
    x: &DblIndexing,
    y: &DblIndexing,
    iso: &IndexingIso,
) -> Result<(), IndexingDefect> {
    let d = &x.base;
    let (hc, vc) = (d.horizontal(), d.vertical());
    if iso.theta.len() != d.num_objects() || iso.alpha.len() != d.num_hmors() {
        return Err(IndexingDefect::Shape("comparison data".into()));
    }
    for c in hc.objects() {
        if !is_isomorphism(&x.obj_cat[c], &y.obj_cat[c], &iso.theta[c]) {
            return Err(IndexingDefect::NotIsomorphism { x: c });
        }
    }
    for v in vc.morphism_ids() {
        let (c, c2) = (vc.src(v), vc.tgt(v));
        if iso.theta[c].after(&x.v_fun[v]) != y.v_fun[v].after(&iso.theta[c2]) {
            return Err(IndexingDefect::VerticalMismatch { v });
        }
    }
    for h in hc.morphism_ids() {
        let (c, e) = (hc.src(h), hc.tgt(h));
        let from = iso.theta[e].after(&x.h_fun[h]);
        let to = y.h_fun[h].after(&iso.theta[c]);
        check_natural(&x.obj_cat[c], &y.obj_cat[e], &from, &to, &iso.alpha[h]).map_err(|err| {
            IndexingDefect::Comparison {
                h,
                error: nat_err(err),
            }
        })?;
        if let Some(a) = x.obj_cat[c]
            .objects()
            .find(|&a| !y.obj_cat[e].is_iso(iso.alpha[h].components[a]))
        {
            return Err(IndexingDefect::ComparisonNotIso { h, object: a });
        }
    }
    for c in hc.objects() {
        let h = hc.identity(c);
        if iso.alpha[h]
            .components
            .iter()
            .any(|&m| !y.obj_cat[c].is_identity(m))
        {
            return Err(IndexingDefect::ComparisonComposition { g: h, f: h });
        }
    }
    for f in hc.morphism_ids() {
        for &g in hc.outgoing(hc.tgt(f)) {
            let z = &y.obj_cat[hc.tgt(g)];
            for a in x.obj_cat[hc.src(f)].objects() {
                let expected = z.comp(
                    y.h_fun[g].mor(iso.alpha[f].components[a]),
                    iso.alpha[g].components[x.h_fun[f].obj(a)],
                );
                if iso.alpha[hc.comp(g, f)].components[a] != expected {
                    return Err(IndexingDefect::ComparisonComposition { g, f });
                }
            }
        }
    }
    for (s, sq) in d.squares().iter().enumerate() {
        let yy = &y.obj_cat[hc.tgt(sq.top)];
        let theta_y = &iso.theta[hc.tgt(sq.top)];
        let theta_x2 = &iso.theta[vc.tgt(sq.left)];
        for a in x.obj_cat[vc.tgt(sq.left)].objects() {
            let lhs = yy.comp(
                y.sq_nat[s].components[theta_x2.obj(a)],
                iso.alpha[sq.top].components[x.v_fun[sq.left].obj(a)],
            );
            let rhs = yy.comp(
                y.v_fun[sq.right].mor(iso.alpha[sq.bottom].components[a]),
                theta_y.mor(x.sq_nat[s].components[a]),
            );
            if lhs != rhs {
                return Err(IndexingDefect::ComparisonSquare {
                    square: s,
                    object: a,
                });
            }
        }
    }
    Ok(())
}
