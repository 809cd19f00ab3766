use super::{DoubleCategory, RawDouble, SqId, Square};
use crate::fincat::{discrete, opposite, product, terminal, FinCategory, Morphism};

/// The double category with one object and only identities.
pub fn terminal_double() -> DoubleCategory {
    boxtimes(&terminal(), &terminal())
}

/// `C ⊠ D`: objects `Ob C × Ob D`, horizontal morphisms `Mor C × Ob D`,
/// vertical morphisms `Ob C × Mor D`, squares `Mor C × Mor D`.
///
/// Ids: object `(c, d)` is `c·|Ob D| + d`, horizontal `(f, d)` is
/// `f·|Ob D| + d`, vertical `(c, g)` is `c·|Mor D| + g`, square `(f, g)` is
/// `f·|Mor D| + g`.
pub fn boxtimes(c: &FinCategory, d: &FinCategory) -> DoubleCategory {
    let obd = discrete(d.object_names().to_vec());
    let obc = discrete(c.object_names().to_vec());
    let horizontal = product(c, &obd);
    let vertical = product(&obc, d);
    let (nod, nmd) = (d.num_objects(), d.num_morphisms());
    let mut squares = Vec::with_capacity(c.num_morphisms() * nmd);
    for f in c.morphism_ids() {
        for g in d.morphism_ids() {
            squares.push(Square {
                name: format!("({},{})", c.morphism(f).name, d.morphism(g).name),
                top: f * nod + d.src(g),
                bottom: f * nod + d.tgt(g),
                left: c.src(f) * nmd + g,
                right: c.tgt(f) * nmd + g,
            });
        }
    }
    let hmor_square = c
        .morphism_ids()
        .flat_map(|f| d.objects().map(move |y| (f, y)))
        .map(|(f, y)| f * nmd + d.identity(y))
        .collect();
    let vmor_square = c
        .objects()
        .flat_map(|x| d.morphism_ids().map(move |g| (x, g)))
        .map(|(x, g)| c.identity(x) * nmd + g)
        .collect();
    DoubleCategory::from_parts(
        horizontal,
        vertical,
        squares,
        hmor_square,
        vmor_square,
        |t, s| c.comp(t / nmd, s / nmd) * nmd + s % nmd,
        |t, s| (s / nmd) * nmd + d.comp(t % nmd, s % nmd),
    )
}

/// Reverse the horizontal direction. Square ids are kept; left and right
/// are exchanged.
pub fn horop(d: &DoubleCategory) -> DoubleCategory {
    let squares = d
        .squares()
        .iter()
        .map(|s| Square {
            name: s.name.clone(),
            top: s.top,
            bottom: s.bottom,
            left: s.right,
            right: s.left,
        })
        .collect();
    DoubleCategory::from_parts(
        opposite(d.horizontal()),
        d.vertical().clone(),
        squares,
        d.hmor_square.clone(),
        d.vmor_square.clone(),
        |t, s| d.hcomp(s, t).expect("composable"),
        |t, s| d.vcomp(t, s).expect("composable"),
    )
}

/// Reverse the vertical direction. Square ids are kept; top and bottom are
/// exchanged.
pub fn verop(d: &DoubleCategory) -> DoubleCategory {
    let squares = d
        .squares()
        .iter()
        .map(|s| Square {
            name: s.name.clone(),
            top: s.bottom,
            bottom: s.top,
            left: s.left,
            right: s.right,
        })
        .collect();
    DoubleCategory::from_parts(
        d.horizontal().clone(),
        opposite(d.vertical()),
        squares,
        d.hmor_square.clone(),
        d.vmor_square.clone(),
        |t, s| d.hcomp(t, s).expect("composable"),
        |t, s| d.vcomp(s, t).expect("composable"),
    )
}

/// Exchange the two directions (transpose every square).
pub fn swap(d: &DoubleCategory) -> DoubleCategory {
    let squares = d
        .squares()
        .iter()
        .map(|s| Square {
            name: s.name.clone(),
            top: s.left,
            bottom: s.right,
            left: s.top,
            right: s.bottom,
        })
        .collect();
    DoubleCategory::from_parts(
        d.vertical().clone(),
        d.horizontal().clone(),
        squares,
        d.vmor_square.clone(),
        d.hmor_square.clone(),
        |t, s| d.vcomp(t, s).expect("composable"),
        |t, s| d.hcomp(t, s).expect("composable"),
    )
}

/// Reverse both directions.
pub fn fullop(d: &DoubleCategory) -> DoubleCategory {
    horop(&verop(d))
}

/// Raw tables of the double category with one object, identity edges only,
/// and one square per element of a finite monoid, composed by the monoid
/// law in both directions. Element 0 must be the unit. Interchange holds
/// exactly when the monoid is commutative.
pub fn delooping(names: &[&str], table: &[Vec<usize>]) -> RawDouble {
    let n = names.len();
    let id = Morphism {
        name: "id".into(),
        src: 0,
        tgt: 0,
    };
    let squares = names
        .iter()
        .map(|name| Square {
            name: name.to_string(),
            top: 0,
            bottom: 0,
            left: 0,
            right: 0,
        })
        .collect();
    let comp: Vec<[SqId; 3]> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| [a, b, table[a][b]])
        .collect();
    RawDouble {
        objects: vec!["*".into()],
        hmors: vec![id.clone()],
        vmors: vec![id],
        h_identities: [(0, 0)].into_iter().collect(),
        v_identities: [(0, 0)].into_iter().collect(),
        h_composition: vec![[0, 0, 0]],
        v_composition: vec![[0, 0, 0]],
        squares,
        hmor_identity_squares: vec![0],
        vmor_identity_squares: vec![0],
        square_hcomp: comp.clone(),
        square_vcomp: comp,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dblcat::{validate_double, DblFunctor};
    use crate::fincat::{from_monoid, poset_category};

    fn arrow_with_z2() -> FinCategory {
        product(
            &poset_category(1),
            &from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]),
        )
    }

    #[test]
    fn dualities_are_involutions_and_valid() {
        let d = boxtimes(&arrow_with_z2(), &poset_category(2));
        for op in [horop, verop, swap, fullop] {
            let once = op(&d);
            assert!(once.defects().is_empty());
            validate_double(&once.to_raw()).unwrap();
            assert_eq!(op(&once), d);
        }
        assert_eq!(fullop(&d), verop(&horop(&d)));
    }

    #[test]
    fn verop_of_boxtimes() {
        let c = poset_category(1);
        let d = arrow_with_z2();
        assert_eq!(
            verop(&boxtimes(&c, &poset_category(2))),
            boxtimes(&c, &opposite(&poset_category(2)))
        );
        assert_eq!(verop(&boxtimes(&c, &d)), boxtimes(&c, &opposite(&d)));
        assert_eq!(horop(&boxtimes(&d, &c)), boxtimes(&opposite(&d), &c));
    }

    #[test]
    fn swap_of_boxtimes_is_boxtimes_swapped() {
        let c = poset_category(2);
        let d = poset_category(1);
        let lhs = swap(&boxtimes(&c, &d));
        let rhs = boxtimes(&d, &c);
        let (noc, nod) = (c.num_objects(), d.num_objects());
        let (nmc, nmd) = (c.num_morphisms(), d.num_morphisms());
        // (c, d) ↦ (d, c) on every layer.
        let f = DblFunctor {
            obj_map: (0..noc * nod).map(|x| (x % nod) * noc + x / nod).collect(),
            hmor_map: (0..noc * nmd).map(|v| (v % nmd) * noc + v / nmd).collect(),
            vmor_map: (0..nmc * nod).map(|h| (h % nod) * nmc + h / nod).collect(),
            square_map: (0..nmc * nmd).map(|s| (s % nmd) * nmc + s / nmd).collect(),
        };
        crate::dblcat::check_dbl_functor(&lhs, &rhs, &f).unwrap();
        assert!(crate::dblcat::is_double_isomorphism(&lhs, &rhs, &f));
    }

    #[test]
    fn boxtimes_with_point_has_identity_vmors() {
        let d = boxtimes(&poset_category(2), &poset_category(0));
        assert!(d
            .vertical()
            .morphism_ids()
            .all(|v| d.vertical().is_identity(v)));
        assert_eq!(d.num_squares(), 6);
    }
}
