use fqlab_core::permgroup::*;
use proptest::prelude::*;

fn perm(text: &str, degree: usize) -> Permutation {
    parse_permutation(text, degree).unwrap()
}

fn group(gens: &[&str], degree: usize) -> PermGroup {
    PermGroup::close(degree, gens.iter().map(|g| perm(g, degree)).collect(), DEFAULT_ELEMENT_CAP).unwrap()
}

fn s3() -> PermGroup {
    group(&["(1 2)", "(1 2 3)"], 3)
}

fn a4() -> PermGroup {
    group(&["(1 2 3)", "(1 2)(3 4)"], 4)
}

fn cyclic(n: usize) -> PermGroup {
    let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    group(&[&format!("({})", cycle.join(" "))], n)
}

fn catalog_group(name: &str) -> PermGroup {
    builtin_catalog().into_iter().find(|e| e.name == name).unwrap().group
}

#[test]
fn closure_examples() {
    assert_eq!(group(&["(1 2 3)"], 3).order(), 3);
    assert_eq!(s3().order(), 6);
    assert_eq!(a4().order(), 12);
    assert_eq!(
        PermGroup::close(5, vec![perm("(1 2 3 4 5)", 5), perm("(1 2)", 5)], 100),
        Err(PermError::TooLarge { cap: 100 })
    );
    assert!(matches!(
        PermGroup::close(4, vec![perm("(1 2)", 3)], 10),
        Err(PermError::DegreeMismatch { .. })
    ));
}

#[test]
fn elements_are_sorted_and_closed() {
    let g = catalog_group("S4");
    assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    for x in g.elements() {
        assert!(g.contains(&x.inverse()));
        for y in g.generators() {
            assert!(g.contains(&(x * y)));
        }
    }
}

#[test]
fn torsion_examples() {
    let odd = s3().torsion_subgroup(TorsionSelector::Odd);
    assert_eq!(odd.order(), 3);
    assert!(odd.elements().iter().all(|g| g.order() != 2));
    assert_eq!(cyclic(8).torsion_subgroup(TorsionSelector::Odd).order(), 1);
    let klein = a4().torsion_subgroup(TorsionSelector::Divides(2));
    assert_eq!(klein.order(), 4);
    assert!(a4().is_normal(&klein).unwrap());
}

#[test]
fn normality_examples() {
    let s3 = s3();
    assert_eq!(s3.normal_closure(&[perm("(1 2 3)", 3)]).unwrap().order(), 3);
    assert_eq!(s3.normal_closure(&[perm("(1 2)", 3)]).unwrap().order(), 6);
    let t = s3.subgroup(vec![perm("(1 2)", 3)]).unwrap();
    assert!(!s3.is_normal(&t).unwrap());
    let a4 = a4();
    let outside = group(&["(1 2)"], 4);
    assert!(matches!(a4.is_normal(&outside), Err(PermError::NotSubgroup(_))));
}

#[test]
fn normal_subgroup_examples() {
    let orders = |g: &PermGroup| -> Vec<usize> {
        g.normal_subgroups(DEFAULT_NORMAL_SUBGROUP_CAP).unwrap().iter().map(PermGroup::order).collect()
    };
    assert_eq!(orders(&cyclic(6)), vec![1, 2, 3, 6]);
    assert_eq!(orders(&s3()), vec![1, 3, 6]);
    assert_eq!(orders(&a4()), vec![1, 4, 12]);
    assert_eq!(orders(&catalog_group("S4")), vec![1, 4, 12, 24]);
    assert_eq!(orders(&catalog_group("Q8")), vec![1, 2, 4, 4, 4, 8]);
    assert!(matches!(catalog_group("S5").normal_subgroups(100), Err(PermError::TooLarge { .. })));
}

/// Independent lattice oracle: all subgroups as joins of cyclic subgroups,
/// then a full conjugation scan.
fn normal_subgroups_brute(g: &PermGroup) -> Vec<Vec<Permutation>> {
    let mut subgroups: Vec<Vec<Permutation>> = Vec::new();
    let cyclics: Vec<PermGroup> = g.elements().iter().map(|x| g.subgroup(vec![x.clone()]).unwrap()).collect();
    let mut frontier: Vec<PermGroup> = cyclics.clone();
    while let Some(h) = frontier.pop() {
        if subgroups.iter().any(|s| s == h.elements()) {
            continue;
        }
        subgroups.push(h.elements().to_vec());
        for c in &cyclics {
            if !c.is_subgroup_of(&h) {
                let mut gens = h.elements().to_vec();
                gens.push(c.generators()[0].clone());
                frontier.push(g.subgroup_generated_by(gens.iter()));
            }
        }
    }
    let mut normal: Vec<Vec<Permutation>> = subgroups
        .into_iter()
        .filter(|s| {
            s.iter().all(|n| g.elements().iter().all(|x| s.binary_search(&n.conjugate_by(x)).is_ok()))
        })
        .collect();
    normal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    normal
}

#[test]
fn normal_subgroups_match_lattice_oracle() {
    for entry in builtin_catalog().into_iter().filter(|e| e.group.order() <= 60) {
        let fast: Vec<Vec<Permutation>> = entry
            .group
            .normal_subgroups(DEFAULT_NORMAL_SUBGROUP_CAP)
            .unwrap()
            .iter()
            .map(|n| n.elements().to_vec())
            .collect();
        assert_eq!(fast, normal_subgroups_brute(&entry.group), "{}", entry.name);
    }
}

#[test]
fn quotient_examples() {
    let s3 = s3();
    let trivial = PermGroup::trivial(3);
    let regular = s3.quotient(&trivial).unwrap();
    assert_eq!(regular.group().order(), 6);
    assert_eq!(regular.group().degree(), 6);
    let a3 = s3.torsion_subgroup(TorsionSelector::Odd);
    assert_eq!(s3.quotient(&a3).unwrap().group().order(), 2);
    let a4 = a4();
    let v4 = a4.torsion_subgroup(TorsionSelector::Divides(2));
    let q = a4.quotient(&v4).unwrap();
    assert_eq!(q.group().order(), 3);
    assert_eq!(q.index(), 3);
    let t = s3.subgroup(vec![perm("(1 2)", 3)]).unwrap();
    assert!(matches!(s3.quotient(&t), Err(PermError::NotNormal)));
}

#[test]
fn quotient_orders_multiply() {
    for entry in builtin_catalog() {
        let g = &entry.group;
        for n in g.normal_subgroups(DEFAULT_NORMAL_SUBGROUP_CAP).unwrap() {
            let q = g.quotient(&n).unwrap();
            assert_eq!(q.group().order() * n.order(), g.order(), "{}", entry.name);
        }
    }
}

#[test]
fn odd_part_is_normal_and_odd_a_inside_a_a() {
    for entry in builtin_catalog() {
        let g = &entry.group;
        let odd = g.torsion_subgroup(TorsionSelector::Odd);
        let conj_closed = odd
            .elements()
            .iter()
            .all(|n| g.elements().iter().all(|x| odd.contains(&n.conjugate_by(x))));
        assert!(conj_closed, "{}", entry.name);
        for a in 1..=12 {
            let oa = g.torsion_subgroup(TorsionSelector::OddAndDivides(a));
            let aa = g.torsion_subgroup(TorsionSelector::Divides(a));
            assert!(oa.is_subgroup_of(&aa), "{} a={a}", entry.name);
        }
    }
}

#[test]
fn odd_lemma_examples() {
    let r = verify_odd_lemma(&s3()).unwrap();
    assert_eq!(r.entries.len(), 3);
    assert!(r.passed());
    let r = verify_odd_lemma(&cyclic(4)).unwrap();
    assert!(r.passed());
    assert!(r.entries.iter().all(|e| e.odd_part_order == 1));
    let r = verify_odd_lemma(&catalog_group("S4")).unwrap();
    assert_eq!(r.entries.len(), 4);
    assert!(r.passed());
}

#[test]
fn odd_lemma_full_catalog() {
    for entry in builtin_catalog() {
        assert!(verify_odd_lemma(&entry.group).unwrap().passed(), "{}", entry.name);
    }
}

#[test]
fn shape_examples() {
    assert_eq!(cyclic(7).shape(), GroupShape::Cyclic(7));
    assert_eq!(s3().shape(), GroupShape::Dihedral(3));
    assert_eq!(a4().shape(), GroupShape::Other);
    assert_eq!(cyclic(2).shape(), GroupShape::Cyclic(2));
    assert_eq!(catalog_group("V4").shape(), GroupShape::Dihedral(2));
    assert_eq!(catalog_group("D8").shape(), GroupShape::Dihedral(4));
    assert_eq!(catalog_group("Q8").shape(), GroupShape::Other);
    assert_eq!(catalog_group("C1").shape(), GroupShape::Cyclic(1));
    assert_eq!(GroupShape::Dihedral(3).to_string(), "D6");
}

#[test]
fn sylow_quotient_examples() {
    let (q, r) = normal_sylow_quotient(&s3(), 3).unwrap();
    assert_eq!((q.order(), r.kernel_order, r.structure()), (6, 1, "C3:C2".to_string()));
    assert!(r.valid());

    let (q, r) = normal_sylow_quotient(&catalog_group("C15"), 5).unwrap();
    assert_eq!((q.order(), r.kernel_order, r.complement_order), (5, 3, 1));
    assert!(r.valid());

    let (q, r) = normal_sylow_quotient(&catalog_group("F21"), 7).unwrap();
    assert_eq!((q.order(), r.kernel_order, r.complement_order), (21, 1, 3));
    assert!(r.valid());

    assert!(matches!(normal_sylow_quotient(&a4(), 3), Err(PermError::NotInNp { order: 12, p: 3 })));
}

#[test]
fn sylow_quotient_full_catalog() {
    use fqlab_core::numtheory::{factor, np_contains};
    let mut checked = 0;
    for entry in builtin_catalog() {
        let order = entry.group.order() as u64;
        for &(p, _) in factor(order).unwrap().factors() {
            if np_contains(order, p).unwrap() {
                let (_, r) = normal_sylow_quotient(&entry.group, p).unwrap();
                assert!(r.valid(), "{} p={p}: {r:?}", entry.name);
                checked += 1;
            }
        }
    }
    assert!(checked >= 15);
}

#[test]
fn quasiprimitive_examples() {
    let c5 = cyclic(5);
    assert!(is_quasiprimitive(&c5).unwrap());
    let r = verify_quasiprimitive_odd(&c5).unwrap();
    assert!(r.odd_part_transitive && r.pass());

    let c2 = cyclic(2);
    let r = verify_quasiprimitive_odd(&c2).unwrap();
    assert!(r.quasiprimitive && !r.odd_part_transitive && r.pass());

    let r = verify_quasiprimitive_odd(&s3()).unwrap();
    assert!(r.quasiprimitive && r.odd_part_order == 3 && r.odd_part_transitive);

    assert!(!is_quasiprimitive(&catalog_group("D8")).unwrap());
    assert_eq!(is_quasiprimitive(&catalog_group("C2^3")), Err(PermError::NotTransitive));
}

#[test]
fn quasiprimitive_full_catalog() {
    let mut qp = 0;
    for entry in builtin_catalog().into_iter().filter(|e| e.group.is_transitive() && e.group.degree() >= 3) {
        let r = verify_quasiprimitive_odd(&entry.group).unwrap();
        assert!(r.pass(), "{}", entry.name);
        qp += r.quasiprimitive as usize;
    }
    assert!(qp >= 10);
}

#[test]
fn struc_lemma_examples() {
    match verify_struc_lemma(&s3(), 2).unwrap() {
        StrucOutcome::Checked { witness_prime, shape } => {
            assert_eq!(witness_prime, 3);
            assert_eq!(shape, GroupShape::Dihedral(3));
        }
        other => panic!("{other:?}"),
    }
    // F21 is not generated by its elements of order dividing 3
    assert!(matches!(verify_struc_lemma(&catalog_group("F21"), 3).unwrap(), StrucOutcome::HypothesesFail(_)));
    // 12 is not in SP_2
    assert!(matches!(verify_struc_lemma(&a4(), 2).unwrap(), StrucOutcome::HypothesesFail(_)));
}

#[test]
fn struc_lemma_full_catalog() {
    for entry in builtin_catalog() {
        for a in 1..=12 {
            assert!(verify_struc_lemma(&entry.group, a).unwrap().pass(), "{} a={a}", entry.name);
        }
    }
}

proptest! {
    #[test]
    fn shape_is_invariant_under_relabelling(idx in 0usize..32, seed in any::<u64>()) {
        let entries = builtin_catalog();
        let g = &entries[idx % entries.len()].group;
        let n = g.degree();
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabel = Permutation::from_images(images).unwrap();
        let h = g.conjugate(&relabel);
        prop_assert_eq!(h.shape(), g.shape());
        let again = PermGroup::close(n, h.generators().to_vec(), DEFAULT_ELEMENT_CAP).unwrap();
        prop_assert_eq!(again.order(), g.order());
    }
}
