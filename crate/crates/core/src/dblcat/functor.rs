use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{DoubleCategory, SqId};
use crate::budget::{Budget, BudgetExceeded};
use crate::fincat::{check_functor, FinCategory, Functor, FunctorError, MorId, ObjId};
use crate::search::{solve, solve_until, Problem};

/// A strict double functor, given by its four maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DblFunctor {
    pub obj_map: Vec<ObjId>,
    pub hmor_map: Vec<MorId>,
    pub vmor_map: Vec<MorId>,
    pub square_map: Vec<SqId>,
}

impl DblFunctor {
    pub fn identity(d: &DoubleCategory) -> Self {
        DblFunctor {
            obj_map: (0..d.num_objects()).collect(),
            hmor_map: (0..d.num_hmors()).collect(),
            vmor_map: (0..d.num_vmors()).collect(),
            square_map: (0..d.num_squares()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DblFunctor) -> DblFunctor {
        DblFunctor {
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            hmor_map: first.hmor_map.iter().map(|&x| self.hmor_map[x]).collect(),
            vmor_map: first.vmor_map.iter().map(|&x| self.vmor_map[x]).collect(),
            square_map: first
                .square_map
                .iter()
                .map(|&x| self.square_map[x])
                .collect(),
        }
    }

    /// The functor on horizontal categories.
    pub fn horizontal(&self) -> Functor {
        Functor {
            obj_map: self.obj_map.clone(),
            mor_map: self.hmor_map.clone(),
        }
    }

    /// The functor on vertical categories.
    pub fn vertical(&self) -> Functor {
        Functor {
            obj_map: self.obj_map.clone(),
            mor_map: self.vmor_map.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DblFunctorError {
    #[error("square map has the wrong length or out-of-range ids")]
    Shape,
    #[error("horizontal part: {0}")]
    Horizontal(FunctorError),
    #[error("vertical part: {0}")]
    Vertical(FunctorError),
    #[error("square {square} is sent to a square with the wrong boundary")]
    Boundary { square: SqId },
    #[error("identity square of edge {edge} is not preserved")]
    IdentitySquare { edge: MorId, horizontal: bool },
    #[error("horizontal composite of squares {tau} and {sigma} is not preserved")]
    HorizontalComposite { tau: SqId, sigma: SqId },
    #[error("vertical composite of squares {tau} and {sigma} is not preserved")]
    VerticalComposite { tau: SqId, sigma: SqId },
}

pub fn check_dbl_functor(
    src: &DoubleCategory,
    tgt: &DoubleCategory,
    f: &DblFunctor,
) -> Result<(), DblFunctorError> {
    check_functor(src.horizontal(), tgt.horizontal(), &f.horizontal())
        .map_err(DblFunctorError::Horizontal)?;
    check_functor(src.vertical(), tgt.vertical(), &f.vertical())
        .map_err(DblFunctorError::Vertical)?;
    if f.square_map.len() != src.num_squares()
        || f.square_map.iter().any(|&s| s >= tgt.num_squares())
    {
        return Err(DblFunctorError::Shape);
    }
    for (s, sq) in src.squares().iter().enumerate() {
        let img = tgt.square(f.square_map[s]);
        if img.top != f.hmor_map[sq.top]
            || img.bottom != f.hmor_map[sq.bottom]
            || img.left != f.vmor_map[sq.left]
            || img.right != f.vmor_map[sq.right]
        {
            return Err(DblFunctorError::Boundary { square: s });
        }
    }
    for h in 0..src.num_hmors() {
        if f.square_map[src.hmor_square(h)] != tgt.hmor_square(f.hmor_map[h]) {
            return Err(DblFunctorError::IdentitySquare {
                edge: h,
                horizontal: true,
            });
        }
    }
    for v in 0..src.num_vmors() {
        if f.square_map[src.vmor_square(v)] != tgt.vmor_square(f.vmor_map[v]) {
            return Err(DblFunctorError::IdentitySquare {
                edge: v,
                horizontal: false,
            });
        }
    }
    for sigma in 0..src.num_squares() {
        for (tau, r) in src.hcomp[sigma].iter().copied() {
            if tgt.hcomp(f.square_map[tau], f.square_map[sigma]) != Some(f.square_map[r]) {
                return Err(DblFunctorError::HorizontalComposite { tau, sigma });
            }
        }
        for (tau, r) in src.vcomp[sigma].iter().copied() {
            if tgt.vcomp(f.square_map[tau], f.square_map[sigma]) != Some(f.square_map[r]) {
                return Err(DblFunctorError::VerticalComposite { tau, sigma });
            }
        }
    }
    Ok(())
}

/// Bijective on all four layers.
pub fn is_double_isomorphism(src: &DoubleCategory, tgt: &DoubleCategory, f: &DblFunctor) -> bool {
    fn bijective(map: &[usize], n: usize) -> bool {
        let mut hit = vec![false; n];
        map.len() == n
            && map
                .iter()
                .all(|&i| i < n && !std::mem::replace(&mut hit[i], true))
    }
    src.num_objects() == tgt.num_objects()
        && src.num_squares() == tgt.num_squares()
        && bijective(&f.obj_map, tgt.num_objects())
        && bijective(&f.hmor_map, tgt.num_hmors())
        && bijective(&f.vmor_map, tgt.num_vmors())
        && bijective(&f.square_map, tgt.num_squares())
}

#[derive(Clone, Copy)]
enum Forced {
    HmorSquare(MorId),
    VmorSquare(MorId),
}

#[derive(Clone, Copy)]
enum Check {
    H(MorId, MorId, MorId),
    V(MorId, MorId, MorId),
    HSq(SqId, SqId, SqId),
    VSq(SqId, SqId, SqId),
}

/// Variables: objects, hmors, vmors, squares. Each composition constraint
/// is checked once all of its three participants are assigned.
struct DblProblem<'a> {
    src: &'a DoubleCategory,
    tgt: &'a DoubleCategory,
    injective: bool,
    offsets: [usize; 4],
    forced: Vec<Option<Forced>>,
    checks: Vec<Vec<Check>>,
    /// For each object, the earlier objects joined to it by an edge:
    /// `(other, horizontal, other_is_source)`.
    links: Vec<Vec<(ObjId, bool, bool)>>,
}

impl<'a> DblProblem<'a> {
    fn new(src: &'a DoubleCategory, tgt: &'a DoubleCategory, injective: bool) -> Self {
        let no = src.num_objects();
        let oh = no;
        let ov = oh + src.num_hmors();
        let os = ov + src.num_vmors();
        let total = os + src.num_squares();
        let mut checks = vec![Vec::new(); total];
        let cat_checks =
            |c: &FinCategory, off: usize, checks: &mut Vec<Vec<Check>>, horizontal: bool| {
                for f in c.morphism_ids() {
                    for &g in c.outgoing(c.tgt(f)) {
                        if c.is_identity(f) || c.is_identity(g) {
                            continue;
                        }
                        let h = c.comp(g, f);
                        let chk = if horizontal {
                            Check::H(g, f, h)
                        } else {
                            Check::V(g, f, h)
                        };
                        checks[off + f.max(g).max(h)].push(chk);
                    }
                }
            };
        cat_checks(src.horizontal(), oh, &mut checks, true);
        cat_checks(src.vertical(), ov, &mut checks, false);
        for s in 0..src.num_squares() {
            for &(t, r) in &src.hcomp[s] {
                checks[os + s.max(t).max(r)].push(Check::HSq(t, s, r));
            }
            for &(t, r) in &src.vcomp[s] {
                checks[os + s.max(t).max(r)].push(Check::VSq(t, s, r));
            }
        }
        let mut forced = vec![None; src.num_squares()];
        for v in 0..src.num_vmors() {
            forced[src.vmor_square(v)] = Some(Forced::VmorSquare(v));
        }
        for h in 0..src.num_hmors() {
            forced[src.hmor_square(h)] = Some(Forced::HmorSquare(h));
        }
        let mut links = vec![Vec::new(); no];
        for (c, horizontal) in [(src.horizontal(), true), (src.vertical(), false)] {
            for f in c.morphism_ids() {
                let (x, y) = (c.src(f), c.tgt(f));
                if x < y {
                    links[y].push((x, horizontal, true));
                } else if y < x {
                    links[x].push((y, horizontal, false));
                }
            }
        }
        for l in &mut links {
            l.sort_unstable();
            l.dedup();
        }
        DblProblem {
            src,
            tgt,
            injective,
            links,
            forced,
            offsets: [0, oh, ov, os],
            checks,
        }
    }
}

impl Problem for DblProblem<'_> {
    fn num_vars(&self) -> usize {
        self.offsets[3] + self.src.num_squares()
    }

    fn domain(&self, a: &[usize], var: usize) -> Vec<usize> {
        let [_, oh, ov, os] = self.offsets;
        let (src, tgt) = (self.src, self.tgt);
        let mut dom: Vec<usize> = if var < oh {
            (0..tgt.num_objects())
                .filter(|&x| {
                    self.links[var].iter().all(|&(p, horizontal, p_is_source)| {
                        let c = if horizontal {
                            tgt.horizontal()
                        } else {
                            tgt.vertical()
                        };
                        let (s, t) = if p_is_source { (a[p], x) } else { (x, a[p]) };
                        !c.hom(s, t).is_empty()
                    })
                })
                .collect()
        } else if var < ov {
            let h = var - oh;
            let hc = src.horizontal();
            let (x, y) = (a[hc.src(h)], a[hc.tgt(h)]);
            if hc.is_identity(h) {
                vec![tgt.horizontal().identity(x)]
            } else {
                tgt.horizontal().hom(x, y).to_vec()
            }
        } else if var < os {
            let v = var - ov;
            let vc = src.vertical();
            let (x, y) = (a[vc.src(v)], a[vc.tgt(v)]);
            if vc.is_identity(v) {
                vec![tgt.vertical().identity(x)]
            } else {
                tgt.vertical().hom(x, y).to_vec()
            }
        } else {
            let s = var - os;
            let sq = src.square(s);
            let boundary = [
                a[oh + sq.top],
                a[oh + sq.bottom],
                a[ov + sq.left],
                a[ov + sq.right],
            ];
            let candidates = match self.forced[s] {
                Some(Forced::HmorSquare(h)) => vec![tgt.hmor_square(a[oh + h])],
                Some(Forced::VmorSquare(v)) => vec![tgt.vmor_square(a[ov + v])],
                None => tgt
                    .squares_with_boundary(boundary[0], boundary[1], boundary[2], boundary[3])
                    .to_vec(),
            };
            candidates
                .into_iter()
                .filter(|&t| {
                    let img = tgt.square(t);
                    [img.top, img.bottom, img.left, img.right] == boundary
                })
                .collect()
        };
        if self.injective {
            let layer = self.offsets.iter().rposition(|&o| var >= o).unwrap();
            let start = self.offsets[layer];
            dom.retain(|value| !a[start..var].contains(value));
        }
        dom
    }

    fn consistent(&self, a: &[usize]) -> bool {
        let [_, oh, ov, os] = self.offsets;
        let var = a.len() - 1;
        let (th, tv) = (self.tgt.horizontal(), self.tgt.vertical());
        self.checks[var].iter().all(|&c| match c {
            Check::H(g, f, h) => th.compose(a[oh + g], a[oh + f]) == Some(a[oh + h]),
            Check::V(g, f, h) => tv.compose(a[ov + g], a[ov + f]) == Some(a[ov + h]),
            Check::HSq(t, s, r) => self.tgt.hcomp(a[os + t], a[os + s]) == Some(a[os + r]),
            Check::VSq(t, s, r) => self.tgt.vcomp(a[os + t], a[os + s]) == Some(a[os + r]),
        })
    }
}

fn split(p: &DblProblem<'_>, a: &[usize]) -> DblFunctor {
    let [_, oh, ov, os] = p.offsets;
    DblFunctor {
        obj_map: a[..oh].to_vec(),
        hmor_map: a[oh..ov].to_vec(),
        vmor_map: a[ov..os].to_vec(),
        square_map: a[os..].to_vec(),
    }
}

/// All double functors `src → tgt` in lexicographic order of their maps.
pub fn enumerate_dbl_functors(
    src: &DoubleCategory,
    tgt: &DoubleCategory,
    budget: &Budget,
) -> Result<Vec<DblFunctor>, BudgetExceeded> {
    let p = DblProblem::new(src, tgt, false);
    let mut out = Vec::new();
    solve(&p, budget, |a| out.push(split(&p, a)))?;
    Ok(out)
}

/// Number of double functors `src → tgt`.
pub fn count_dbl_functors(
    src: &DoubleCategory,
    tgt: &DoubleCategory,
    budget: &Budget,
) -> Result<usize, BudgetExceeded> {
    let p = DblProblem::new(src, tgt, false);
    let mut n = 0;
    solve(&p, budget, |_| n += 1)?;
    Ok(n)
}

/// First double isomorphism `src → tgt`, searching injective maps only.
pub fn find_double_isomorphism(
    src: &DoubleCategory,
    tgt: &DoubleCategory,
    budget: &Budget,
) -> Result<Option<DblFunctor>, BudgetExceeded> {
    if src.num_objects() != tgt.num_objects()
        || src.num_hmors() != tgt.num_hmors()
        || src.num_vmors() != tgt.num_vmors()
        || src.num_squares() != tgt.num_squares()
    {
        return Ok(None);
    }
    let p = DblProblem::new(src, tgt, true);
    let mut found = None;
    solve_until(&p, budget, |a| {
        found = Some(split(&p, a));
        ControlFlow::Break(())
    })?;
    Ok(found)
}
