use super::{FinCategory, MorId, Morphism, ObjId};

/// The category with one object and one morphism.
pub fn terminal() -> FinCategory {
    poset_category(0)
}

/// The linear order `[n] = {0 < 1 < … < n}`.
pub fn poset_category(n: usize) -> FinCategory {
    let names = (0..=n).map(|i| i.to_string()).collect();
    from_poset(names, |i, j| i <= j)
}

/// The category of a finite preorder given by `leq`, which must be reflexive
/// and transitive. Morphisms are the pairs `i ≤ j`, ordered lexicographically.
pub fn from_poset(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> FinCategory {
    let n = names.len();
    let mut index = vec![usize::MAX; n * n];
    let mut morphisms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                index[i * n + j] = morphisms.len();
                morphisms.push(Morphism {
                    name: format!("{}->{}", names[i], names[j]),
                    src: i,
                    tgt: j,
                });
            }
        }
    }
    let identities = (0..n).map(|i| index[i * n + i]).collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    FinCategory::from_parts(names, morphisms, identities, |g, f| {
        index[ends[f].0 * n + ends[g].1]
    })
}

/// Discrete category on the given object names.
pub fn discrete(names: Vec<String>) -> FinCategory {
    from_poset(names, |i, j| i == j)
}

/// Codiscrete groupoid: exactly one morphism between any two objects.
pub fn codiscrete(names: Vec<String>) -> FinCategory {
    from_poset(names, |_, _| true)
}

/// One-object category of a finite monoid. `table[a][b]` is `a · b`, read as
/// composition `a ∘ b`; element 0 must be the unit.
pub fn from_monoid(element_names: &[&str], table: &[Vec<usize>]) -> FinCategory {
    let morphisms = element_names
        .iter()
        .map(|n| Morphism {
            name: n.to_string(),
            src: 0,
            tgt: 0,
        })
        .collect();
    FinCategory::from_parts(vec!["*".into()], morphisms, vec![0], |g, f| table[g][f])
}

/// Product category. Object `(c, d)` has id `c * |Ob D| + d`, morphism
/// `(f, g)` has id `f * |Mor D| + g`.
pub fn product(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let (nod, nmd) = (d.num_objects(), d.num_morphisms());
    let mut objects = Vec::with_capacity(c.num_objects() * nod);
    for x in c.objects() {
        for y in d.objects() {
            objects.push(format!("({},{})", c.object_name(x), d.object_name(y)));
        }
    }
    let mut morphisms = Vec::with_capacity(c.num_morphisms() * nmd);
    for f in c.morphism_ids() {
        for g in d.morphism_ids() {
            morphisms.push(Morphism {
                name: format!("({},{})", c.morphism(f).name, d.morphism(g).name),
                src: c.src(f) * nod + d.src(g),
                tgt: c.tgt(f) * nod + d.tgt(g),
            });
        }
    }
    let identities = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| c.identity(x) * nmd + d.identity(y))
        .collect();
    FinCategory::from_parts(objects, morphisms, identities, |g, f| {
        let (g1, g2) = (g / nmd, g % nmd);
        let (f1, f2) = (f / nmd, f % nmd);
        c.comp(g1, f1) * nmd + d.comp(g2, f2)
    })
}

/// Opposite category: same ids, endpoints exchanged.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| Morphism {
            name: m.name.clone(),
            src: m.tgt,
            tgt: m.src,
        })
        .collect();
    let identities = c.objects().map(|x| c.identity(x)).collect();
    FinCategory::from_parts(c.object_names().to_vec(), morphisms, identities, |g, f| {
        c.comp(f, g)
    })
}

/// Arrow category `Fun([1], C)`. Objects are the morphisms of `C` (same ids);
/// a morphism `f → f'` is a commuting square `(σ, τ)` with `τ ∘ f = f' ∘ σ`.
/// Also returns the `(σ, τ)` components of each morphism.
pub fn arrow_category_with_components(c: &FinCategory) -> (FinCategory, Vec<(MorId, MorId)>) {
    let objects: Vec<String> = c.morphisms().iter().map(|m| m.name.clone()).collect();
    let mut morphisms = Vec::new();
    let mut components = Vec::new();
    for f in c.morphism_ids() {
        for f2 in c.morphism_ids() {
            for &sigma in c.hom(c.src(f), c.src(f2)) {
                for &tau in c.hom(c.tgt(f), c.tgt(f2)) {
                    if c.comp(tau, f) == c.comp(f2, sigma) {
                        morphisms.push(Morphism {
                            name: format!("[{},{}]", c.morphism(sigma).name, c.morphism(tau).name),
                            src: f,
                            tgt: f2,
                        });
                        components.push((sigma, tau));
                    }
                }
            }
        }
    }
    let ends: Vec<(ObjId, ObjId)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    let mut index = std::collections::HashMap::new();
    for (i, &(s, t)) in components.iter().enumerate() {
        index.insert((s, t, ends[i].0, ends[i].1), i);
    }
    let identities = c
        .morphism_ids()
        .map(|f| index[&(c.identity(c.src(f)), c.identity(c.tgt(f)), f, f)])
        .collect::<Vec<_>>();
    let comp_table = &components;
    let cat = FinCategory::from_parts(objects, morphisms, identities, |g, f| {
        let (gs, gt) = comp_table[g];
        let (fs, ft) = comp_table[f];
        index[&(c.comp(gs, fs), c.comp(gt, ft), ends[f].0, ends[g].1)]
    });
    (cat, components)
}

pub fn arrow_category(c: &FinCategory) -> FinCategory {
    arrow_category_with_components(c).0
}

/// Wide subcategory on the morphisms selected by `keep`, which must contain
/// every identity and be closed under composition. Returns the subcategory
/// and, for each of its morphisms, the original id.
pub fn wide_subcategory(
    c: &FinCategory,
    keep: impl Fn(MorId) -> bool,
) -> (FinCategory, Vec<MorId>) {
    let embedding: Vec<MorId> = c.morphism_ids().filter(|&f| keep(f)).collect();
    let mut rank = vec![usize::MAX; c.num_morphisms()];
    for (i, &f) in embedding.iter().enumerate() {
        rank[f] = i;
    }
    let morphisms = embedding.iter().map(|&f| c.morphism(f).clone()).collect();
    let identities = c
        .objects()
        .map(|x| {
            let r = rank[c.identity(x)];
            assert!(r != usize::MAX, "wide subcategory must contain identities");
            r
        })
        .collect();
    let sub = FinCategory::from_parts(c.object_names().to_vec(), morphisms, identities, |g, f| {
        let r = rank[c.comp(embedding[g], embedding[f])];
        assert!(
            r != usize::MAX,
            "wide subcategory must be closed under composition"
        );
        r
    });
    (sub, embedding)
}

/// Maximal subgroupoid.
pub fn core(c: &FinCategory) -> FinCategory {
    wide_subcategory(c, |f| c.is_iso(f)).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    fn valid(c: &FinCategory) {
        validate_category(&c.to_raw()).expect("constructed category is valid");
    }

    #[test]
    fn poset_counts() {
        assert_eq!(poset_category(0).num_morphisms(), 1);
        assert_eq!(poset_category(1).num_objects(), 2);
        assert_eq!(poset_category(1).num_morphisms(), 3);
        assert_eq!(poset_category(2).num_morphisms(), 6);
        for n in 0..5 {
            valid(&poset_category(n));
        }
    }

    #[test]
    fn product_counts() {
        let p = product(&poset_category(1), &poset_category(1));
        assert_eq!((p.num_objects(), p.num_morphisms()), (4, 9));
        assert_eq!(
            product(&poset_category(1), &poset_category(2)).num_morphisms(),
            18
        );
        valid(&p);
        let c = poset_category(2);
        let pt = product(&c, &terminal());
        assert_eq!(pt.num_objects(), c.num_objects());
        assert_eq!(pt.num_morphisms(), c.num_morphisms());
    }

    #[test]
    fn arrow_category_of_one() {
        // Down-sets of the 2x2 grid poset: 6.
        let a = arrow_category(&poset_category(1));
        assert_eq!((a.num_objects(), a.num_morphisms()), (3, 6));
        valid(&a);
        valid(&arrow_category(&poset_category(2)));
        valid(&arrow_category(&codiscrete(vec!["a".into(), "b".into()])));
    }

    #[test]
    fn core_of_poset_is_discrete() {
        for n in 0..4 {
            let k = core(&poset_category(n));
            assert_eq!(k.num_objects(), n + 1);
            assert_eq!(k.num_morphisms(), n + 1);
        }
        let g = codiscrete(vec!["a".into(), "b".into()]);
        assert_eq!(core(&g), g);
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = product(&poset_category(1), &poset_category(2));
        assert_eq!(opposite(&opposite(&c)), c);
        valid(&opposite(&c));
    }

    #[test]
    fn monoid_category() {
        let z2 = from_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]);
        valid(&z2);
        assert!(z2.is_iso(1));
        let idem = from_monoid(&["1", "p"], &[vec![0, 1], vec![1, 1]]);
        valid(&idem);
        assert!(!idem.is_iso(1));
    }
}
