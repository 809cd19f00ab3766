//! Bisimplicial sets truncated at level 2 in each direction, as an ingestion
//! format for double categories.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::grid::{grids, Grid};
use super::{validate_double, DoubleCategory, InvalidDouble, RawDouble, Square};
use crate::budget::{Budget, BudgetExceeded};
use crate::fincat::Morphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// `X(m, n) → X(m-1, n)`.
    HFace,
    /// `X(m, n) → X(m, n-1)`.
    VFace,
    /// `X(m, n) → X(m+1, n)`.
    HDegen,
    /// `X(m, n) → X(m, n+1)`.
    VDegen,
}

/// Cells `X(m, n)` for `m, n ≤ 2` with their face and degeneracy maps.
/// Cells are numbered `0..sizes[m][n]`; the low levels carry names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimTrunc {
    pub sizes: [[usize; 3]; 3],
    pub object_names: Vec<String>,
    pub hmor_names: Vec<String>,
    pub vmor_names: Vec<String>,
    pub square_names: Vec<String>,
    /// Keyed by `(kind, m, n, k)` where `(m, n)` is the source level.
    pub maps: BTreeMap<(MapKind, usize, usize, usize), Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisimError {
    #[error("malformed truncation: {0}")]
    Malformed(String),
    #[error("Segal map at level ({m},{n}) is not a bijection")]
    SegalFailure { m: usize, n: usize },
    #[error("simplicial identity fails: {0}")]
    SimplicialIdentity(String),
    #[error("extracted tables do not form a double category: {0}")]
    NonAssociativeExtraction(InvalidDouble),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

fn target(kind: MapKind, m: usize, n: usize) -> (usize, usize) {
    match kind {
        MapKind::HFace => (m - 1, n),
        MapKind::VFace => (m, n - 1),
        MapKind::HDegen => (m + 1, n),
        MapKind::VDegen => (m, n + 1),
    }
}

/// Every map the truncation must carry, as `(kind, m, n, k)`.
fn required_maps() -> Vec<(MapKind, usize, usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            if m >= 1 {
                out.extend((0..=m).map(|k| (MapKind::HFace, m, n, k)));
            }
            if n >= 1 {
                out.extend((0..=n).map(|k| (MapKind::VFace, m, n, k)));
            }
            if m <= 1 {
                out.extend((0..=m).map(|k| (MapKind::HDegen, m, n, k)));
            }
            if n <= 1 {
                out.extend((0..=n).map(|k| (MapKind::VDegen, m, n, k)));
            }
        }
    }
    out
}

impl BisimTrunc {
    fn map(&self, kind: MapKind, m: usize, n: usize, k: usize) -> &[usize] {
        &self.maps[&(kind, m, n, k)]
    }

    fn check_shape(&self) -> Result<(), BisimError> {
        let named = [
            (&self.object_names, 0, 0),
            (&self.hmor_names, 1, 0),
            (&self.vmor_names, 0, 1),
            (&self.square_names, 1, 1),
        ];
        for (names, m, n) in named {
            if names.len() != self.sizes[m][n] {
                return Err(BisimError::Malformed(format!("names at level ({m},{n})")));
            }
        }
        for key @ (kind, m, n, k) in required_maps() {
            let map = self.maps.get(&key).ok_or_else(|| {
                BisimError::Malformed(format!("missing {kind:?} {k} at ({m},{n})"))
            })?;
            let (tm, tn) = target(kind, m, n);
            if map.len() != self.sizes[m][n] || map.iter().any(|&x| x >= self.sizes[tm][tn]) {
                return Err(BisimError::Malformed(format!("{kind:?} {k} at ({m},{n})")));
            }
        }
        Ok(())
    }

    /// Horizontal Segal map at `(2, n)`: `x ↦ (d₂x, d₀x)` onto composable
    /// pairs. Returns the inverse on success.
    fn segal(
        &self,
        horizontal: bool,
        level: usize,
    ) -> Result<HashMap<(usize, usize), usize>, BisimError> {
        let (kind, m, n, edge) = if horizontal {
            (MapKind::HFace, 2, level, (1, level))
        } else {
            (MapKind::VFace, level, 2, (level, 1))
        };
        let fail = || BisimError::SegalFailure { m, n };
        let first = self.map(kind, m, n, 2);
        let second = self.map(kind, m, n, 0);
        let (tgt, src) = (
            self.map(kind, edge.0, edge.1, 0),
            self.map(kind, edge.0, edge.1, 1),
        );
        let mut inverse = HashMap::new();
        for x in 0..self.sizes[m][n] {
            let (a, b) = (first[x], second[x]);
            if tgt[a] != src[b] || inverse.insert((a, b), x).is_some() {
                return Err(fail());
            }
        }
        let pairs = (0..self.sizes[edge.0][edge.1])
            .flat_map(|a| (0..self.sizes[edge.0][edge.1]).map(move |b| (a, b)))
            .filter(|&(a, b)| tgt[a] == src[b])
            .count();
        if pairs != inverse.len() {
            return Err(fail());
        }
        Ok(inverse)
    }

    fn check_identities(&self) -> Result<(), BisimError> {
        let size = |m: usize, n: usize| self.sizes[m][n];
        let fail = |what: String| Err(BisimError::SimplicialIdentity(what));
        // The one-directional identities, with `at` placing the moving
        // coordinate.
        for horizontal in [true, false] {
            let (face, degen) = if horizontal {
                (MapKind::HFace, MapKind::HDegen)
            } else {
                (MapKind::VFace, MapKind::VDegen)
            };
            let at = |moving: usize, fixed: usize| {
                if horizontal {
                    (moving, fixed)
                } else {
                    (fixed, moving)
                }
            };
            for fixed in 0..=2 {
                let d = |lvl: usize, k: usize| {
                    let (m, n) = at(lvl, fixed);
                    self.map(face, m, n, k)
                };
                let s = |lvl: usize, k: usize| {
                    let (m, n) = at(lvl, fixed);
                    self.map(degen, m, n, k)
                };
                let (m2, n2) = at(2, fixed);
                for x in 0..size(m2, n2) {
                    for i in 0..2 {
                        for j in (i + 1)..=2 {
                            if d(1, i)[d(2, j)[x]] != d(1, j - 1)[d(2, i)[x]] {
                                return fail(format!("{face:?} d{i}d{j} at {:?}", at(2, fixed)));
                            }
                        }
                    }
                }
                for lvl in 0..=1 {
                    let (m, n) = at(lvl, fixed);
                    for x in 0..size(m, n) {
                        for j in 0..=lvl {
                            let y = s(lvl, j)[x];
                            for i in 0..=lvl + 1 {
                                let lhs = d(lvl + 1, i)[y];
                                let rhs = if i == j || i == j + 1 {
                                    Some(x)
                                } else if i < j {
                                    Some(s(lvl - 1, j - 1)[d(lvl, i)[x]])
                                } else if lvl >= 1 {
                                    Some(s(lvl - 1, j)[d(lvl, i - 1)[x]])
                                } else {
                                    None
                                };
                                if rhs.is_some_and(|r| r != lhs) {
                                    return fail(format!(
                                        "{face:?} d{i}s{j} at {:?}",
                                        at(lvl, fixed)
                                    ));
                                }
                            }
                        }
                    }
                }
                let (m0, n0) = at(0, fixed);
                for x in 0..size(m0, n0) {
                    if s(1, 1)[s(0, 0)[x]] != s(1, 0)[s(0, 0)[x]] {
                        return fail(format!("{degen:?} s1s0 at {:?}", at(0, fixed)));
                    }
                }
            }
        }
        // Horizontal and vertical structure maps commute.
        for m in 0..=2 {
            for n in 0..=2 {
                for x in 0..size(m, n) {
                    let hs: Vec<(MapKind, usize)> = (if m >= 1 {
                        (0..=m).map(|k| (MapKind::HFace, k)).collect::<Vec<_>>()
                    } else {
                        vec![]
                    })
                    .into_iter()
                    .chain(if m <= 1 {
                        (0..=m).map(|k| (MapKind::HDegen, k)).collect::<Vec<_>>()
                    } else {
                        vec![]
                    })
                    .collect();
                    let vs: Vec<(MapKind, usize)> = (if n >= 1 {
                        (0..=n).map(|k| (MapKind::VFace, k)).collect::<Vec<_>>()
                    } else {
                        vec![]
                    })
                    .into_iter()
                    .chain(if n <= 1 {
                        (0..=n).map(|k| (MapKind::VDegen, k)).collect::<Vec<_>>()
                    } else {
                        vec![]
                    })
                    .collect();
                    for &(hk, i) in &hs {
                        for &(vk, j) in &vs {
                            let (hm, hn) = target(hk, m, n);
                            let (vm, vn) = target(vk, m, n);
                            let (tm, tn) = target(vk, hm, hn);
                            if tm > 2 || tn > 2 {
                                continue;
                            }
                            let lhs = self.map(vk, hm, hn, j)[self.map(hk, m, n, i)[x]];
                            let rhs = self.map(hk, vm, vn, i)[self.map(vk, m, n, j)[x]];
                            if lhs != rhs {
                                return fail(format!(
                                    "{hk:?}{i} and {vk:?}{j} do not commute at ({m},{n})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The truncated double nerve: grids of shape `m × n` for `m, n ≤ 2`.
pub fn double_to_bisim(d: &DoubleCategory, budget: &Budget) -> Result<BisimTrunc, BudgetExceeded> {
    let mut cells: Vec<Vec<Vec<Grid>>> = Vec::new();
    let mut index: Vec<Vec<HashMap<Grid, usize>>> = Vec::new();
    for m in 0..=2 {
        let mut row = Vec::new();
        let mut idx = Vec::new();
        for n in 0..=2 {
            let g = grids(d, m, n, budget)?;
            idx.push(g.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect());
            row.push(g);
        }
        cells.push(row);
        index.push(idx);
    }
    let mut maps = BTreeMap::new();
    for key @ (kind, m, n, k) in required_maps() {
        let (tm, tn) = target(kind, m, n);
        let map = cells[m][n]
            .iter()
            .map(|g| {
                let image = match kind {
                    MapKind::HFace => g.hface(d, k),
                    MapKind::VFace => g.vface(d, k),
                    MapKind::HDegen => g.hdegen(d, k),
                    MapKind::VDegen => g.vdegen(d, k),
                };
                index[tm][tn][&image]
            })
            .collect();
        maps.insert(key, map);
    }
    let mut sizes = [[0; 3]; 3];
    for m in 0..=2 {
        for n in 0..=2 {
            sizes[m][n] = cells[m][n].len();
        }
    }
    Ok(BisimTrunc {
        sizes,
        object_names: (0..d.num_objects())
            .map(|x| d.object_name(x).to_string())
            .collect(),
        hmor_names: d
            .horizontal()
            .morphisms()
            .iter()
            .map(|m| m.name.clone())
            .collect(),
        vmor_names: d
            .vertical()
            .morphisms()
            .iter()
            .map(|m| m.name.clone())
            .collect(),
        square_names: d.squares().iter().map(|s| s.name.clone()).collect(),
        maps,
    })
}

/// Check the truncation and extract strict composition tables.
pub fn bisim_to_double(b: &BisimTrunc) -> Result<DoubleCategory, BisimError> {
    b.check_shape()?;
    let h_pairs = [b.segal(true, 0)?, b.segal(true, 1)?, b.segal(true, 2)?];
    let v_pairs = [b.segal(false, 0)?, b.segal(false, 1)?];
    b.check_identities()?;

    let edges = |names: &[String], kind: MapKind, m: usize, n: usize| -> Vec<Morphism> {
        let (src, tgt) = (b.map(kind, m, n, 1), b.map(kind, m, n, 0));
        names
            .iter()
            .enumerate()
            .map(|(i, name)| Morphism {
                name: name.clone(),
                src: src[i],
                tgt: tgt[i],
            })
            .collect()
    };
    let hmors = edges(&b.hmor_names, MapKind::HFace, 1, 0);
    let vmors = edges(&b.vmor_names, MapKind::VFace, 0, 1);
    let (top, bottom) = (
        b.map(MapKind::VFace, 1, 1, 1),
        b.map(MapKind::VFace, 1, 1, 0),
    );
    let (left, right) = (
        b.map(MapKind::HFace, 1, 1, 1),
        b.map(MapKind::HFace, 1, 1, 0),
    );
    let squares = b
        .square_names
        .iter()
        .enumerate()
        .map(|(s, name)| Square {
            name: name.clone(),
            top: top[s],
            bottom: bottom[s],
            left: left[s],
            right: right[s],
        })
        .collect();
    let table = |pairs: &HashMap<(usize, usize), usize>, kind: MapKind, m: usize, n: usize| {
        let mid = b.map(kind, m, n, 1);
        let mut out: Vec<[usize; 3]> = pairs.iter().map(|(&(f, g), &x)| [g, f, mid[x]]).collect();
        out.sort();
        out
    };
    let raw = RawDouble {
        objects: b.object_names.clone(),
        hmors,
        vmors,
        h_identities: b
            .map(MapKind::HDegen, 0, 0, 0)
            .iter()
            .copied()
            .enumerate()
            .collect(),
        v_identities: b
            .map(MapKind::VDegen, 0, 0, 0)
            .iter()
            .copied()
            .enumerate()
            .collect(),
        h_composition: table(&h_pairs[0], MapKind::HFace, 2, 0),
        v_composition: table(&v_pairs[0], MapKind::VFace, 0, 2),
        squares,
        hmor_identity_squares: b.map(MapKind::VDegen, 1, 0, 0).to_vec(),
        vmor_identity_squares: b.map(MapKind::HDegen, 0, 1, 0).to_vec(),
        square_hcomp: table(&h_pairs[1], MapKind::HFace, 2, 1),
        square_vcomp: table(&v_pairs[1], MapKind::VFace, 1, 2),
    };
    validate_double(&raw).map_err(BisimError::NonAssociativeExtraction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::boxtimes;
    use crate::fincat::{from_monoid, poset_category, product};

    #[test]
    fn round_trip_through_truncation() {
        let b = Budget::default();
        for d in [
            boxtimes(&poset_category(1), &poset_category(2)),
            boxtimes(&poset_category(1), &poset_category(1)),
            boxtimes(
                &product(
                    &poset_category(1),
                    &from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]),
                ),
                &poset_category(1),
            ),
        ] {
            let t = double_to_bisim(&d, &b).unwrap();
            assert_eq!(bisim_to_double(&t).unwrap(), d);
        }
    }

    #[test]
    fn extra_composite_breaks_segal() {
        let d = boxtimes(&poset_category(1), &poset_category(1));
        let mut t = double_to_bisim(&d, &Budget::default()).unwrap();
        // Duplicate a horizontal 2-chain, with all structure maps copied.
        let x = 0;
        t.sizes[2][0] += 1;
        for ((_, m, n, _), map) in t.maps.iter_mut() {
            if (*m, *n) == (2, 0) {
                let v = map[x];
                map.push(v);
            }
        }
        assert_eq!(
            bisim_to_double(&t),
            Err(BisimError::SegalFailure { m: 2, n: 0 })
        );
    }

    #[test]
    fn missing_map_is_malformed() {
        let d = boxtimes(&poset_category(1), &poset_category(0));
        let mut t = double_to_bisim(&d, &Budget::default()).unwrap();
        t.maps.remove(&(MapKind::HFace, 1, 0, 0));
        assert!(matches!(bisim_to_double(&t), Err(BisimError::Malformed(_))));
    }

    #[test]
    fn broken_face_is_caught() {
        let d = boxtimes(&poset_category(1), &poset_category(1));
        let mut t = double_to_bisim(&d, &Budget::default()).unwrap();
        // Point an identity hmor's degeneracy at a non-identity.
        let hmors = t.sizes[1][0];
        let s0 = t.maps.get_mut(&(MapKind::HDegen, 0, 0, 0)).unwrap();
        let nonid = (0..hmors).find(|&h| !s0.contains(&h)).unwrap();
        s0[0] = nonid;
        assert!(bisim_to_double(&t).is_err());
    }
}
