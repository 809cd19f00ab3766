//! Strict finite double categories.
//!
//! A square has a top and a bottom horizontal morphism and a left and a
//! right vertical morphism:
//!
//! ```text
//!   x --top--> y
//!   |          |
//! left       right
//!   v          v
//!   x' -bot--> y'
//! ```
//!
//! `hcomp(τ, σ)` places `τ` to the right of `σ`; `vcomp(τ, σ)` places `τ`
//! below `σ`. Each horizontal morphism `h` carries a vertical identity square
//! (top = bottom = `h`), each vertical morphism `v` a horizontal identity
//! square (left = right = `v`).

mod bisim;
mod functor;
mod grid;
mod ops;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fincat::{
    validate_category, CategoryDefect, FinCategory, MorId, Morphism, ObjId, RawCategory,
};

pub use bisim::{bisim_to_double, double_to_bisim, BisimError, BisimTrunc};
pub use functor::{
    check_dbl_functor, count_dbl_functors, enumerate_dbl_functors, find_double_isomorphism,
    is_double_isomorphism, DblFunctor, DblFunctorError,
};
pub use grid::{count_grids, grids, Grid};
pub use ops::{boxtimes, delooping, fullop, horop, swap, terminal_double, verop};

pub type SqId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub name: String,
    pub top: MorId,
    pub bottom: MorId,
    pub left: MorId,
    pub right: MorId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// Serialized form of a double category. Composition tables list
/// `[τ, σ, result]`; in `square_hcomp` `τ` is right of `σ`, in
/// `square_vcomp` `τ` is below `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDouble {
    pub objects: Vec<String>,
    pub hmors: Vec<Morphism>,
    pub vmors: Vec<Morphism>,
    pub h_identities: BTreeMap<ObjId, MorId>,
    pub v_identities: BTreeMap<ObjId, MorId>,
    pub h_composition: Vec<[MorId; 3]>,
    pub v_composition: Vec<[MorId; 3]>,
    pub squares: Vec<Square>,
    /// Vertical identity square of each horizontal morphism.
    pub hmor_identity_squares: Vec<SqId>,
    /// Horizontal identity square of each vertical morphism.
    pub vmor_identity_squares: Vec<SqId>,
    pub square_hcomp: Vec<[SqId; 3]>,
    pub square_vcomp: Vec<[SqId; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DoubleDefect {
    Horizontal(CategoryDefect),
    Vertical(CategoryDefect),
    DanglingId {
        what: String,
        id: usize,
    },
    BoundaryMismatch {
        square: SqId,
        reason: String,
    },
    IdentitySquare {
        direction: Direction,
        edge: MorId,
    },
    IdentitySquareMismatch {
        object: ObjId,
    },
    IdentitySquareNotFunctorial {
        direction: Direction,
        second: MorId,
        first: MorId,
    },
    NonComposablePair {
        direction: Direction,
        tau: SqId,
        sigma: SqId,
    },
    CompositeBoundary {
        direction: Direction,
        tau: SqId,
        sigma: SqId,
        result: SqId,
    },
    ConflictingComposite {
        direction: Direction,
        tau: SqId,
        sigma: SqId,
    },
    MissingComposite {
        direction: Direction,
        tau: SqId,
        sigma: SqId,
    },
    UnitFailure {
        direction: Direction,
        square: SqId,
    },
    AssociativityFailure {
        direction: Direction,
        squares: [SqId; 3],
    },
    InterchangeFailure {
        top_left: SqId,
        top_right: SqId,
        bottom_left: SqId,
        bottom_right: SqId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid double category: {} failed axiom(s), first: {:?}", .defects.len(), .defects.first())]
pub struct InvalidDouble {
    pub defects: Vec<DoubleDefect>,
}

/// A corner `(left, bottom)` without exactly one filling square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerDefect {
    pub left: MorId,
    pub bottom: MorId,
    pub fillers: Vec<SqId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCategory {
    horizontal: FinCategory,
    vertical: FinCategory,
    squares: Vec<Square>,
    hmor_square: Vec<SqId>,
    vmor_square: Vec<SqId>,
    /// `hcomp[σ]` lists `(τ, hcomp(τ, σ))` sorted by `τ`.
    hcomp: Vec<Vec<(SqId, SqId)>>,
    /// `vcomp[σ]` lists `(τ, vcomp(τ, σ))` sorted by `τ`.
    vcomp: Vec<Vec<(SqId, SqId)>>,
    with_left: Vec<Vec<SqId>>,
    with_top: Vec<Vec<SqId>>,
    by_corner: HashMap<(MorId, MorId), Vec<SqId>>,
    by_boundary: HashMap<[MorId; 4], Vec<SqId>>,
}

impl DoubleCategory {
    /// Assemble from trusted parts. The compositions are called on every
    /// composable pair; axioms are not checked (see [`DoubleCategory::defects`]).
    pub fn from_parts(
        horizontal: FinCategory,
        vertical: FinCategory,
        squares: Vec<Square>,
        hmor_square: Vec<SqId>,
        vmor_square: Vec<SqId>,
        mut hcomp: impl FnMut(SqId, SqId) -> SqId,
        mut vcomp: impl FnMut(SqId, SqId) -> SqId,
    ) -> Self {
        let (with_left, with_top) = edge_indexes(&horizontal, &vertical, &squares);
        let hc = (0..squares.len())
            .map(|s| {
                with_left[squares[s].right]
                    .iter()
                    .map(|&t| (t, hcomp(t, s)))
                    .collect()
            })
            .collect();
        let vc = (0..squares.len())
            .map(|s| {
                with_top[squares[s].bottom]
                    .iter()
                    .map(|&t| (t, vcomp(t, s)))
                    .collect()
            })
            .collect();
        Self::finish(
            horizontal,
            vertical,
            squares,
            hmor_square,
            vmor_square,
            hc,
            vc,
        )
    }

    fn finish(
        horizontal: FinCategory,
        vertical: FinCategory,
        squares: Vec<Square>,
        hmor_square: Vec<SqId>,
        vmor_square: Vec<SqId>,
        hcomp: Vec<Vec<(SqId, SqId)>>,
        vcomp: Vec<Vec<(SqId, SqId)>>,
    ) -> Self {
        let (with_left, with_top) = edge_indexes(&horizontal, &vertical, &squares);
        let mut by_corner: HashMap<(MorId, MorId), Vec<SqId>> = HashMap::new();
        let mut by_boundary: HashMap<[MorId; 4], Vec<SqId>> = HashMap::new();
        for (id, s) in squares.iter().enumerate() {
            by_corner.entry((s.left, s.bottom)).or_default().push(id);
            by_boundary
                .entry([s.top, s.bottom, s.left, s.right])
                .or_default()
                .push(id);
        }
        DoubleCategory {
            horizontal,
            vertical,
            squares,
            hmor_square,
            vmor_square,
            hcomp,
            vcomp,
            with_left,
            with_top,
            by_corner,
            by_boundary,
        }
    }

    /// The category of objects and horizontal morphisms.
    pub fn horizontal(&self) -> &FinCategory {
        &self.horizontal
    }

    /// The category of objects and vertical morphisms.
    pub fn vertical(&self) -> &FinCategory {
        &self.vertical
    }

    pub fn num_objects(&self) -> usize {
        self.horizontal.num_objects()
    }

    pub fn num_hmors(&self) -> usize {
        self.horizontal.num_morphisms()
    }

    pub fn num_vmors(&self) -> usize {
        self.vertical.num_morphisms()
    }

    pub fn num_squares(&self) -> usize {
        self.squares.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        self.horizontal.object_name(x)
    }

    pub fn square(&self, s: SqId) -> &Square {
        &self.squares[s]
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Vertical identity square on a horizontal morphism.
    pub fn hmor_square(&self, h: MorId) -> SqId {
        self.hmor_square[h]
    }

    /// Horizontal identity square on a vertical morphism.
    pub fn vmor_square(&self, v: MorId) -> SqId {
        self.vmor_square[v]
    }

    /// Identity square on an object.
    pub fn object_square(&self, x: ObjId) -> SqId {
        self.hmor_square[self.horizontal.identity(x)]
    }

    /// `τ` to the right of `σ`.
    pub fn hcomp(&self, tau: SqId, sigma: SqId) -> Option<SqId> {
        lookup(&self.hcomp[sigma], tau)
    }

    /// `τ` below `σ`.
    pub fn vcomp(&self, tau: SqId, sigma: SqId) -> Option<SqId> {
        lookup(&self.vcomp[sigma], tau)
    }

    pub fn squares_with_left(&self, v: MorId) -> &[SqId] {
        &self.with_left[v]
    }

    pub fn squares_with_top(&self, h: MorId) -> &[SqId] {
        &self.with_top[h]
    }

    /// Squares with the given left vertical and bottom horizontal morphism.
    pub fn fillers(&self, left: MorId, bottom: MorId) -> &[SqId] {
        self.by_corner
            .get(&(left, bottom))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn squares_with_boundary(
        &self,
        top: MorId,
        bottom: MorId,
        left: MorId,
        right: MorId,
    ) -> &[SqId] {
        self.by_boundary
            .get(&[top, bottom, left, right])
            .map_or(&[], |v| v.as_slice())
    }

    /// Object in the top-left corner of a square.
    pub fn square_origin(&self, s: SqId) -> ObjId {
        self.horizontal.src(self.squares[s].top)
    }

    pub fn to_raw(&self) -> RawDouble {
        let h = self.horizontal.to_raw();
        let v = self.vertical.to_raw();
        let table = |t: &Vec<Vec<(SqId, SqId)>>| {
            let mut out: Vec<[SqId; 3]> = t
                .iter()
                .enumerate()
                .flat_map(|(s, row)| row.iter().map(move |&(t, r)| [t, s, r]))
                .collect();
            out.sort();
            out
        };
        RawDouble {
            objects: h.objects,
            hmors: h.morphisms,
            vmors: v.morphisms,
            h_identities: h.identities,
            v_identities: v.identities,
            h_composition: h.composition,
            v_composition: v.composition,
            squares: self.squares.clone(),
            hmor_identity_squares: self.hmor_square.clone(),
            vmor_identity_squares: self.vmor_square.clone(),
            square_hcomp: table(&self.hcomp),
            square_vcomp: table(&self.vcomp),
        }
    }

    /// Failed unit, associativity, identity-square and interchange axioms.
    /// Assumes boundaries and composition tables are well formed, which holds
    /// for anything built by [`DoubleCategory::from_parts`] or
    /// [`validate_double`].
    pub fn defects(&self) -> Vec<DoubleDefect> {
        let mut out = Vec::new();
        out.extend(
            self.horizontal
                .defects()
                .into_iter()
                .map(DoubleDefect::Horizontal),
        );
        out.extend(
            self.vertical
                .defects()
                .into_iter()
                .map(DoubleDefect::Vertical),
        );
        let (hc, vc) = (&self.horizontal, &self.vertical);

        for x in hc.objects() {
            if self.hmor_square[hc.identity(x)] != self.vmor_square[vc.identity(x)] {
                out.push(DoubleDefect::IdentitySquareMismatch { object: x });
            }
        }
        for first in hc.morphism_ids() {
            for &second in hc.outgoing(hc.tgt(first)) {
                let lhs = self.hmor_square[hc.comp(second, first)];
                let rhs = self.hcomp(self.hmor_square[second], self.hmor_square[first]);
                if rhs != Some(lhs) {
                    out.push(DoubleDefect::IdentitySquareNotFunctorial {
                        direction: Direction::Horizontal,
                        second,
                        first,
                    });
                }
            }
        }
        for first in vc.morphism_ids() {
            for &second in vc.outgoing(vc.tgt(first)) {
                let lhs = self.vmor_square[vc.comp(second, first)];
                let rhs = self.vcomp(self.vmor_square[second], self.vmor_square[first]);
                if rhs != Some(lhs) {
                    out.push(DoubleDefect::IdentitySquareNotFunctorial {
                        direction: Direction::Vertical,
                        second,
                        first,
                    });
                }
            }
        }

        for (s, sq) in self.squares.iter().enumerate() {
            let h_ok = self.hcomp(self.vmor_square[sq.right], s) == Some(s)
                && self.hcomp(s, self.vmor_square[sq.left]) == Some(s);
            if !h_ok {
                out.push(DoubleDefect::UnitFailure {
                    direction: Direction::Horizontal,
                    square: s,
                });
            }
            let v_ok = self.vcomp(self.hmor_square[sq.bottom], s) == Some(s)
                && self.vcomp(s, self.hmor_square[sq.top]) == Some(s);
            if !v_ok {
                out.push(DoubleDefect::UnitFailure {
                    direction: Direction::Vertical,
                    square: s,
                });
            }
        }

        for (direction, table) in [
            (Direction::Horizontal, &self.hcomp),
            (Direction::Vertical, &self.vcomp),
        ] {
            for s in 0..self.squares.len() {
                for &(t, ts) in &table[s] {
                    for &(r, rt) in &table[t] {
                        let lhs = lookup(&table[ts], r);
                        let rhs = lookup(&table[s], rt);
                        if lhs.is_none() || lhs != rhs {
                            out.push(DoubleDefect::AssociativityFailure {
                                direction,
                                squares: [r, t, s],
                            });
                        }
                    }
                }
            }
        }

        for s in 0..self.squares.len() {
            for &(t, ts) in &self.hcomp[s] {
                for &(s2, s2s) in &self.vcomp[s] {
                    for &(t2, t2t) in &self.vcomp[t] {
                        if self.squares[t2].left != self.squares[s2].right {
                            continue;
                        }
                        let lhs = self.hcomp(t2, s2).and_then(|bottom| self.vcomp(bottom, ts));
                        let rhs = self.hcomp(t2t, s2s);
                        if lhs.is_none() || lhs != rhs {
                            out.push(DoubleDefect::InterchangeFailure {
                                top_left: s,
                                top_right: t,
                                bottom_left: s2,
                                bottom_right: t2,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

fn lookup(row: &[(SqId, SqId)], key: SqId) -> Option<SqId> {
    row.binary_search_by_key(&key, |&(t, _)| t)
        .ok()
        .map(|i| row[i].1)
}

fn edge_indexes(
    h: &FinCategory,
    v: &FinCategory,
    squares: &[Square],
) -> (Vec<Vec<SqId>>, Vec<Vec<SqId>>) {
    let mut with_left = vec![Vec::new(); v.num_morphisms()];
    let mut with_top = vec![Vec::new(); h.num_morphisms()];
    for (id, s) in squares.iter().enumerate() {
        with_left[s.left].push(id);
        with_top[s.top].push(id);
    }
    (with_left, with_top)
}

/// Check every axiom of a strict double category on raw tables.
pub fn validate_double(raw: &RawDouble) -> Result<DoubleCategory, InvalidDouble> {
    let fail = |defects: Vec<DoubleDefect>| Err(InvalidDouble { defects });
    let horizontal = validate_category(&RawCategory {
        objects: raw.objects.clone(),
        morphisms: raw.hmors.clone(),
        identities: raw.h_identities.clone(),
        composition: raw.h_composition.clone(),
    });
    let vertical = validate_category(&RawCategory {
        objects: raw.objects.clone(),
        morphisms: raw.vmors.clone(),
        identities: raw.v_identities.clone(),
        composition: raw.v_composition.clone(),
    });
    let (horizontal, vertical) = match (horizontal, vertical) {
        (Ok(h), Ok(v)) => (h, v),
        (h, v) => {
            let mut defects = Vec::new();
            if let Err(e) = h {
                defects.extend(e.defects.into_iter().map(DoubleDefect::Horizontal));
            }
            if let Err(e) = v {
                defects.extend(e.defects.into_iter().map(DoubleDefect::Vertical));
            }
            return fail(defects);
        }
    };

    let mut defects = Vec::new();
    let (nh, nv, ns) = (
        horizontal.num_morphisms(),
        vertical.num_morphisms(),
        raw.squares.len(),
    );
    for (id, s) in raw.squares.iter().enumerate() {
        if s.top >= nh || s.bottom >= nh || s.left >= nv || s.right >= nv {
            defects.push(DoubleDefect::DanglingId {
                what: format!("boundary of square {}", s.name),
                id,
            });
        }
    }
    if raw.hmor_identity_squares.len() != nh || raw.vmor_identity_squares.len() != nv {
        defects.push(DoubleDefect::DanglingId {
            what: "identity square list length".into(),
            id: raw
                .hmor_identity_squares
                .len()
                .max(raw.vmor_identity_squares.len()),
        });
    }
    for &s in raw
        .hmor_identity_squares
        .iter()
        .chain(&raw.vmor_identity_squares)
    {
        if s >= ns {
            defects.push(DoubleDefect::DanglingId {
                what: "identity square".into(),
                id: s,
            });
        }
    }
    for entry in raw.square_hcomp.iter().chain(&raw.square_vcomp) {
        for &s in entry {
            if s >= ns {
                defects.push(DoubleDefect::DanglingId {
                    what: "square composition entry".into(),
                    id: s,
                });
            }
        }
    }
    if !defects.is_empty() {
        return fail(defects);
    }

    let (hc, vc) = (&horizontal, &vertical);
    for (id, s) in raw.squares.iter().enumerate() {
        let mut reason = None;
        if hc.src(s.top) != vc.src(s.left) {
            reason = Some("top and left do not share a source");
        } else if hc.tgt(s.top) != vc.src(s.right) {
            reason = Some("top does not end where right starts");
        } else if hc.src(s.bottom) != vc.tgt(s.left) {
            reason = Some("bottom does not start where left ends");
        } else if hc.tgt(s.bottom) != vc.tgt(s.right) {
            reason = Some("bottom and right do not share a target");
        }
        if let Some(r) = reason {
            defects.push(DoubleDefect::BoundaryMismatch {
                square: id,
                reason: r.into(),
            });
        }
    }
    for (h, &s) in raw.hmor_identity_squares.iter().enumerate() {
        let sq = &raw.squares[s];
        let x = hc.src(h);
        let y = hc.tgt(h);
        if sq.top != h || sq.bottom != h || sq.left != vc.identity(x) || sq.right != vc.identity(y)
        {
            defects.push(DoubleDefect::IdentitySquare {
                direction: Direction::Vertical,
                edge: h,
            });
        }
    }
    for (v, &s) in raw.vmor_identity_squares.iter().enumerate() {
        let sq = &raw.squares[s];
        let x = vc.src(v);
        let y = vc.tgt(v);
        if sq.left != v || sq.right != v || sq.top != hc.identity(x) || sq.bottom != hc.identity(y)
        {
            defects.push(DoubleDefect::IdentitySquare {
                direction: Direction::Horizontal,
                edge: v,
            });
        }
    }
    if !defects.is_empty() {
        return fail(defects);
    }

    let (with_left, with_top) = edge_indexes(hc, vc, &raw.squares);
    let sq = &raw.squares;
    let mut tables = Vec::new();
    for (direction, entries) in [
        (Direction::Horizontal, &raw.square_hcomp),
        (Direction::Vertical, &raw.square_vcomp),
    ] {
        let mut table: Vec<BTreeMap<SqId, SqId>> = vec![BTreeMap::new(); ns];
        for &[tau, sigma, result] in entries {
            let (t, s, r) = (&sq[tau], &sq[sigma], &sq[result]);
            let composable = match direction {
                Direction::Horizontal => s.right == t.left,
                Direction::Vertical => s.bottom == t.top,
            };
            if !composable {
                defects.push(DoubleDefect::NonComposablePair {
                    direction,
                    tau,
                    sigma,
                });
                continue;
            }
            let boundary_ok = match direction {
                Direction::Horizontal => {
                    r.left == s.left
                        && r.right == t.right
                        && r.top == hc.comp(t.top, s.top)
                        && r.bottom == hc.comp(t.bottom, s.bottom)
                }
                Direction::Vertical => {
                    r.top == s.top
                        && r.bottom == t.bottom
                        && r.left == vc.comp(t.left, s.left)
                        && r.right == vc.comp(t.right, s.right)
                }
            };
            if !boundary_ok {
                defects.push(DoubleDefect::CompositeBoundary {
                    direction,
                    tau,
                    sigma,
                    result,
                });
            }
            match table[sigma].get(&tau) {
                Some(&prev) if prev != result => defects.push(DoubleDefect::ConflictingComposite {
                    direction,
                    tau,
                    sigma,
                }),
                _ => {
                    table[sigma].insert(tau, result);
                }
            }
        }
        for sigma in 0..ns {
            let partners = match direction {
                Direction::Horizontal => &with_left[sq[sigma].right],
                Direction::Vertical => &with_top[sq[sigma].bottom],
            };
            for &tau in partners {
                if !table[sigma].contains_key(&tau) {
                    defects.push(DoubleDefect::MissingComposite {
                        direction,
                        tau,
                        sigma,
                    });
                }
            }
        }
        tables.push(
            table
                .into_iter()
                .map(|m| m.into_iter().collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
    }
    if !defects.is_empty() {
        return fail(defects);
    }
    let vcomp = tables.pop().unwrap();
    let hcomp = tables.pop().unwrap();
    let d = DoubleCategory::finish(
        horizontal,
        vertical,
        raw.squares.clone(),
        raw.hmor_identity_squares.clone(),
        raw.vmor_identity_squares.clone(),
        hcomp,
        vcomp,
    );
    let defects = d.defects();
    if defects.is_empty() {
        Ok(d)
    } else {
        fail(defects)
    }
}

/// Every corner `(left v, bottom e)` with `tgt v = src e` has exactly one
/// filling square.
pub fn is_factorization_double(d: &DoubleCategory) -> Result<(), CornerDefect> {
    let (hc, vc) = (d.horizontal(), d.vertical());
    for left in vc.morphism_ids() {
        for &bottom in hc.outgoing(vc.tgt(left)) {
            let fillers = d.fillers(left, bottom);
            if fillers.len() != 1 {
                return Err(CornerDefect {
                    left,
                    bottom,
                    fillers: fillers.to_vec(),
                });
            }
        }
    }
    Ok(())
}

/// Every corner `(top h, right v)` with `tgt h = src v` has exactly one
/// filling square. The witness reuses [`CornerDefect`] with `left` holding
/// the right vertical and `bottom` the top horizontal morphism.
pub fn unique_top_right_fillers(d: &DoubleCategory) -> Result<(), CornerDefect> {
    let (hc, vc) = (d.horizontal(), d.vertical());
    for top in hc.morphism_ids() {
        for &right in vc.outgoing(hc.tgt(top)) {
            let fillers: Vec<SqId> = d
                .squares_with_top(top)
                .iter()
                .copied()
                .filter(|&s| d.square(s).right == right)
                .collect();
            if fillers.len() != 1 {
                return Err(CornerDefect {
                    left: right,
                    bottom: top,
                    fillers,
                });
            }
        }
    }
    Ok(())
}

/// All vertical morphisms are identities.
pub fn is_2category(d: &DoubleCategory) -> bool {
    d.vertical()
        .morphism_ids()
        .all(|v| d.vertical().is_identity(v))
}

/// At most one square per boundary.
pub fn is_thin(d: &DoubleCategory) -> bool {
    d.by_boundary.values().all(|v| v.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{from_monoid, poset_category, product};

    #[test]
    fn boxtimes_validates() {
        for (m, n) in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)] {
            let d = boxtimes(&poset_category(m), &poset_category(n));
            assert!(d.defects().is_empty());
            validate_double(&d.to_raw()).unwrap();
        }
        let c = product(
            &poset_category(1),
            &from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]),
        );
        validate_double(&boxtimes(&c, &poset_category(1)).to_raw()).unwrap();
    }

    #[test]
    fn raw_round_trip() {
        let d = boxtimes(&poset_category(1), &poset_category(2));
        let raw = d.to_raw();
        let back = validate_double(&raw).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_raw(), raw);
    }

    #[test]
    fn z2_delooping_is_valid_but_not_factorization() {
        let d = delooping(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        let d = validate_double(&d).unwrap();
        let err = is_factorization_double(&d).unwrap_err();
        assert_eq!(err.fillers.len(), 2);
        assert_eq!((err.left, err.bottom), (0, 0));
    }

    #[test]
    fn s3_delooping_fails_interchange() {
        // S3 as permutations of {0,1,2}; table[a][b] = a∘b.
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c = [a[b[0]], a[b[1]], a[b[2]]];
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        let names = ["e", "s01", "s12", "s02", "r", "r2"];
        let err = validate_double(&delooping(&names, &table)).unwrap_err();
        assert!(err
            .defects
            .iter()
            .all(|d| matches!(d, DoubleDefect::InterchangeFailure { .. })));
        assert!(!err.defects.is_empty());
    }

    #[test]
    fn boundary_errors_are_reported() {
        let mut raw = boxtimes(&poset_category(1), &poset_category(1)).to_raw();
        let s = raw
            .squares
            .iter()
            .position(|s| raw.hmors[s.top].src != raw.hmors[s.top].tgt)
            .unwrap();
        let sq = &mut raw.squares[s];
        std::mem::swap(&mut sq.left, &mut sq.right);
        let err = validate_double(&raw).unwrap_err();
        assert!(matches!(
            err.defects[0],
            DoubleDefect::BoundaryMismatch { .. }
        ));

        let mut raw = boxtimes(&poset_category(1), &poset_category(1)).to_raw();
        raw.square_hcomp.pop();
        let err = validate_double(&raw).unwrap_err();
        assert!(matches!(
            err.defects[0],
            DoubleDefect::MissingComposite { .. }
        ));
    }

    #[test]
    fn predicates_on_boxtimes() {
        let d = boxtimes(&poset_category(1), &poset_category(1));
        assert!(is_factorization_double(&d).is_ok());
        assert!(is_thin(&d));
        assert!(is_2category(&boxtimes(
            &poset_category(2),
            &poset_category(0)
        )));
        assert!(!is_2category(&boxtimes(
            &poset_category(0),
            &poset_category(1)
        )));
        assert!(unique_top_right_fillers(&fullop(&d)).is_ok());
    }
}
