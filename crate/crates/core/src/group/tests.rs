use super::*;
use crate::constructions::{
    build_family_group, cyclic, cyclic_by_cyclic, direct_product, field_by_cyclic, FamilyParams,
};
use crate::field::make_field;

fn s3() -> Arc<FiniteGroup> {
    cyclic_by_cyclic(3, 2, 2, Limits::default()).unwrap()
}

fn h1_25_2() -> Arc<FiniteGroup> {
    field_by_cyclic(5, 2, 2, Limits::default()).unwrap()
}

fn fixtures() -> Vec<Arc<FiniteGroup>> {
    let c2 = cyclic(2).unwrap();
    vec![
        cyclic(1).unwrap(),
        cyclic(6).unwrap(),
        s3(),
        direct_product(&c2, &c2).unwrap(),
        cyclic_by_cyclic(3, 4, 2, Limits::default()).unwrap(),
        h1_25_2(),
        field_by_cyclic(2, 4, 5, Limits::default()).unwrap(),
    ]
}

#[test]
fn inverses_and_identity() {
    for g in fixtures() {
        for x in 0..g.order() as ElemId {
            assert_eq!(g.compose(x, g.invert(x)), 0);
            assert_eq!(g.compose(g.invert(x), x), 0);
            assert_eq!(g.compose(0, x), x);
            assert_eq!(g.compose(x, 0), x);
        }
    }
}

#[test]
fn cyclic_composition_is_residue_addition() {
    let c6 = cyclic(6).unwrap();
    assert_eq!(c6.order(), 6);
    assert_eq!(c6.compose(4, 5), 3);
    assert_eq!(c6.element(4), GroupElement::Cyclic(4));
}

#[test]
fn inversion_action_gives_involutions() {
    let h = h1_25_2();
    let f = make_field(5, 2).unwrap();
    let x = GroupElement::pair(GroupElement::FieldAdd(f.variable()), GroupElement::Cyclic(1));
    let id = h.id_of(&x).unwrap();
    assert_eq!(h.compose(id, id), 0);
    assert_eq!(h.element_order(id), 2);
}

#[test]
fn associativity() {
    // exhaustive on small groups
    for g in fixtures().into_iter().filter(|g| g.order() <= 100) {
        let n = g.order() as ElemId;
        for a in 0..n {
            for b in 0..n {
                let ab = g.compose(a, b);
                for c in 0..n {
                    assert_eq!(g.compose(ab, c), g.compose(a, g.compose(b, c)));
                }
            }
        }
    }
    // sampled triples on a family group
    let g = build_family_group(FamilyParams::new(5, 2, 3, 2, 4).unwrap(), Limits::default()).unwrap();
    let n = g.order() as u64;
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % n) as ElemId
    };
    for _ in 0..20_000 {
        let (a, b, c) = (next(), next(), next());
        assert_eq!(g.compose(g.compose(a, b), c), g.compose(a, g.compose(b, c)));
    }
}

#[test]
fn enumeration_errors() {
    let c2 = cyclic(2).unwrap();
    let construction = Construction::Direct(c2.clone(), c2.clone());
    let one_gen = [GroupElement::pair(GroupElement::Cyclic(1), GroupElement::Cyclic(1))];
    assert_eq!(
        FiniteGroup::enumerate(construction, &one_gen, Limits::default()).unwrap_err(),
        Error::GeneratorsDoNotGenerate { found: 2, expected: 4 }
    );
    let small = Limits { element_cap: 10, ..Limits::default() };
    assert!(matches!(
        crate::constructions::cyclic_with_limits(11, small),
        Err(Error::SizeCapExceeded { requested: 11, cap: 10 })
    ));
}

#[test]
fn element_set_does_not_depend_on_generator_order() {
    let h = h1_25_2();
    let Construction::Semidirect { kernel, acting, action } = h.construction() else { panic!() };
    let gens: Vec<GroupElement> = h.generators().iter().rev().map(|&g| h.element(g)).collect();
    let rebuilt = FiniteGroup::enumerate(
        Construction::Semidirect {
            kernel: kernel.clone(),
            acting: acting.clone(),
            action: action.clone(),
        },
        &gens,
        Limits::default(),
    )
    .unwrap();
    let set = |g: &FiniteGroup| {
        (0..g.order() as ElemId).map(|i| g.element(i)).collect::<std::collections::HashSet<_>>()
    };
    assert_eq!(set(&h), set(&rebuilt));
    // products agree element-wise even though ids differ
    for a in 0..h.order() as ElemId {
        for b in (0..h.order() as ElemId).step_by(7) {
            let (ea, eb) = (h.element(a), h.element(b));
            let lhs = h.element(h.compose(a, b));
            let rhs = rebuilt.element(rebuilt.compose(rebuilt.id_of(&ea).unwrap(), rebuilt.id_of(&eb).unwrap()));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn element_orders() {
    let c6 = cyclic(6).unwrap();
    assert_eq!(c6.element_order(0), 1);
    assert_eq!(c6.element_order(2), 3);
    for g in fixtures() {
        for x in 0..g.order() as ElemId {
            let o = g.element_order(x);
            assert_eq!(g.order() as u32 % o, 0);
            assert_eq!(g.power(x, o as u64), 0);
        }
    }
}

#[test]
fn closures() {
    let h = h1_25_2();
    assert!(h.closure(&[]).is_trivial());
    assert!(h.closure(h.generators()).is_whole());
    let f = make_field(5, 2).unwrap();
    let x = GroupElement::pair(GroupElement::FieldAdd(f.variable()), GroupElement::Cyclic(0));
    assert_eq!(h.closure(&[h.id_of(&x).unwrap()]).order(), 5);
}

#[test]
fn centralizers_and_normalizers() {
    let c6 = cyclic(6).unwrap();
    assert!(c6.centralizer(&[1, 2]).is_whole());
    assert!(c6.center().is_whole());
    let g = s3();
    assert!(g.center().is_trivial());
    let rotations = g.closure(&[g.id_of(&GroupElement::pair(GroupElement::Cyclic(1), GroupElement::Cyclic(0))).unwrap()]);
    assert_eq!(rotations.order(), 3);
    assert!(g.normalizer(&rotations).is_whole());
    let flip = g.closure(&[g.id_of(&GroupElement::pair(GroupElement::Cyclic(0), GroupElement::Cyclic(1))).unwrap()]);
    assert_eq!(g.normalizer(&flip), flip);
    assert_eq!(g.centralizer(flip.generators()), flip);
}

#[test]
fn derived_series() {
    let c6 = cyclic(6).unwrap();
    let ds: Vec<usize> = c6.derived_series().iter().map(|s| s.order()).collect();
    assert_eq!(ds, vec![6, 1]);
    let ds: Vec<usize> = s3().derived_series().iter().map(|s| s.order()).collect();
    assert_eq!(ds, vec![6, 3, 1]);
    assert_eq!(cyclic(1).unwrap().derived_series().len(), 1);
}

/// Reference derived subgroup: closure of all commutators, full double loop.
fn derived_by_double_loop(g: &Arc<FiniteGroup>, s: &Subgroup) -> Subgroup {
    let mut comms = Vec::new();
    for &a in s.members() {
        for &b in s.members() {
            comms.push(g.commutator(a, b));
        }
    }
    comms.sort_unstable();
    comms.dedup();
    g.closure(&comms)
}

#[test]
fn derived_subgroup_matches_double_loop() {
    for g in fixtures() {
        let mut s = g.whole();
        loop {
            let fast = s.derived_subgroup();
            assert_eq!(fast, derived_by_double_loop(&g, &s));
            if fast.order() == s.order() {
                break;
            }
            s = fast;
        }
    }
}

#[test]
fn conjugacy_classes() {
    let c6 = cyclic(6).unwrap();
    assert_eq!(c6.conjugacy_classes().len(), 6);
    let mut sizes: Vec<usize> = s3().conjugacy_classes().iter().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 3]);
    for g in fixtures() {
        let classes = g.conjugacy_classes();
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
        for class in classes {
            assert_eq!(class.len() * g.centralizer(&[class[0]]).order(), g.order());
        }
    }
}

#[test]
fn normal_subgroup_counts() {
    let c2 = cyclic(2).unwrap();
    assert_eq!(cyclic(6).unwrap().normal_subgroups().unwrap().len(), 4);
    assert_eq!(s3().normal_subgroups().unwrap().len(), 3);
    assert_eq!(direct_product(&c2, &c2).unwrap().normal_subgroups().unwrap().len(), 5);
    for g in fixtures() {
        let ns = g.normal_subgroups().unwrap();
        assert!(ns.first().unwrap().is_trivial());
        assert!(ns.last().unwrap().is_whole());
        assert!(ns.iter().all(|n| n.is_normal() && g.order() % n.order() == 0));
    }
}

#[test]
fn lattice_cap() {
    let c2 = cyclic_with_limits_for_test(2, 3);
    let v = direct_product(&c2, &c2).unwrap();
    assert_eq!(v.normal_subgroups().unwrap_err(), Error::LatticeCapExceeded(3));
}

fn cyclic_with_limits_for_test(n: u32, lattice_cap: usize) -> Arc<FiniteGroup> {
    crate::constructions::cyclic_with_limits(n, Limits { lattice_cap, ..Limits::default() }).unwrap()
}

#[test]
fn quotients() {
    for g in fixtures() {
        let q = g.quotient(&g.trivial_subgroup()).unwrap();
        assert_eq!(q.order(), g.order());
        let q = g.quotient(&g.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let derived = g.whole().derived_subgroup();
        let ab = g.quotient(&derived).unwrap();
        assert_eq!(ab.order() * derived.order(), g.order());
        assert!(ab.is_abelian());
        assert!(ab.whole().derived_subgroup().is_trivial());
    }
    let g = s3();
    let flip = g.closure(&[g.id_of(&GroupElement::pair(GroupElement::Cyclic(0), GroupElement::Cyclic(1))).unwrap()]);
    assert_eq!(g.quotient(&flip).unwrap_err(), Error::NotNormal);
}

#[test]
fn quotient_of_quotient() {
    let g = cyclic(12).unwrap();
    let n2 = g.closure(&[6]);
    let q = g.quotient(&n2).unwrap();
    assert_eq!(q.order(), 6);
    let q3 = q.closure(&[q.quotient_image(4).unwrap()]);
    let qq = q.quotient(&q3).unwrap();
    assert_eq!(qq.order(), 2);
    assert!(matches!(qq.element(1), GroupElement::Coset(_)));
    // canonical representative is the minimal parent id in the coset
    for x in 0..q.order() as ElemId {
        let rep = q.quotient_representative(x).unwrap();
        let coset: Vec<ElemId> = (0..12).filter(|&y| q.quotient_image(y) == Some(x)).collect();
        assert_eq!(rep, coset[0]);
    }
}

#[test]
fn sylow_subgroups() {
    let c6 = cyclic(6).unwrap();
    assert_eq!(c6.sylow(2).unwrap().order(), 2);
    assert_eq!(c6.sylow(5).unwrap_err(), Error::PrimeDoesNotDivide { prime: 5, order: 6 });
    for g in fixtures().into_iter().filter(|g| g.order() > 1) {
        for l in crate::numtheory::prime_divisors(g.order() as u64) {
            let p = g.sylow(l).unwrap();
            assert_eq!(p.order() as u64, crate::numtheory::prime_part(g.order() as u64, l));
            assert_eq!(p, g.sylow(l).unwrap());
        }
    }
}

#[test]
fn embedded_subgroup_groups() {
    let h = h1_25_2();
    let sylow5 = h.sylow(5).unwrap();
    let e = FiniteGroup::embed(&sylow5).unwrap();
    assert_eq!(e.order(), 25);
    assert!(e.is_abelian());
    for x in 0..e.order() as ElemId {
        assert!(sylow5.contains(e.embedded_parent_id(x).unwrap()));
        assert_eq!(e.id_of(&e.element(x)).unwrap(), x);
    }
}

#[test]
fn element_round_trip() {
    for g in fixtures() {
        for x in 0..g.order() as ElemId {
            assert_eq!(g.id_of(&g.element(x)).unwrap(), x);
        }
    }
    let c6 = cyclic(6).unwrap();
    assert_eq!(c6.id_of(&GroupElement::Cyclic(7)), Err(Error::UnknownElement));
}
