mod common;

use agroup::classify::{is_a_prime_group, two_prime_decompose};
use agroup::constructions::{cyclic, direct_product};
use agroup::field::make_field;
use agroup::numtheory::lcm;
use agroup::group::Construction;
use agroup::{ElemId, FiniteGroup, GroupElement};
use common::*;
use proptest::prelude::*;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

fn fixtures() -> &'static Vec<(&'static str, Arc<FiniteGroup>)> {
    static F: OnceLock<Vec<(&'static str, Arc<FiniteGroup>)>> = OnceLock::new();
    F.get_or_init(oracle_fixtures)
}

fn order_multiset(orders: impl IntoIterator<Item = u64>) -> BTreeMap<u64, u64> {
    let mut m = BTreeMap::new();
    for o in orders {
        *m.entry(o).or_default() += 1;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_identities(
        (p, d) in prop::sample::select(vec![(2u32, 1u32), (2, 3), (2, 4), (3, 2), (5, 2), (7, 1), (13, 2)]),
        xs in prop::array::uniform3(any::<u32>()),
    ) {
        let f = make_field(p, d).unwrap();
        let [x, y, z] = xs.map(|c| f.decode(c % f.order()));
        prop_assert_eq!(f.add(&x, &y).unwrap(), f.add(&y, &x).unwrap());
        prop_assert_eq!(f.mul(&x, &y).unwrap(), f.mul(&y, &x).unwrap());
        let lhs = f.mul(&x, &f.add(&y, &z).unwrap()).unwrap();
        let rhs = f.add(&f.mul(&x, &y).unwrap(), &f.mul(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        if !f.is_zero(&x) {
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()).unwrap(), f.one());
            prop_assert_eq!(f.pow(&x, f.order() as i64 - 1).unwrap(), f.one());
        }
    }

    #[test]
    fn lagrange_and_class_equation(idx in 0usize..14, seeds in prop::collection::vec(any::<u32>(), 0..4)) {
        let (_, g) = &fixtures()[idx % fixtures().len()];
        let n = g.order() as u32;
        let gens: Vec<ElemId> = seeds.iter().map(|s| s % n).collect();
        let s = g.closure(&gens);
        prop_assert_eq!(g.order() % s.order(), 0);
        let c = g.centralizer(&gens);
        prop_assert!(c.is_subset_of(&g.normalizer(&c)));
        for &x in &gens {
            let class = g.conjugacy_classes().iter().find(|cl| cl.contains(&x)).unwrap().len();
            prop_assert_eq!(class * g.centralizer(&[x]).order(), g.order());
            prop_assert_eq!(g.order() as u32 % g.element_order(x), 0);
        }
    }

    #[test]
    fn quotients_by_normal_subgroups(idx in 0usize..14) {
        let (_, g) = &fixtures()[idx % fixtures().len()];
        prop_assume!(g.order() <= 400);
        for nsub in g.normal_subgroups().unwrap().iter() {
            let q = g.quotient(nsub).unwrap();
            prop_assert_eq!(q.order() * nsub.order(), g.order());
            for x in (0..g.order() as ElemId).step_by(5) {
                for y in (0..g.order() as ElemId).step_by(7) {
                    let img = |z| q.quotient_image(z).unwrap();
                    prop_assert_eq!(img(g.compose(x, y)), q.compose(img(x), img(y)));
                }
            }
        }
    }

    #[test]
    fn enumeration_ignores_generator_order(ns in prop::collection::vec(2u32..7, 2..5), rot in 0usize..3) {
        let mut g = cyclic(ns[0]).unwrap();
        for &n in &ns[1..] {
            g = direct_product(&g, &cyclic(n).unwrap()).unwrap();
        }
        let mut gens: Vec<GroupElement> = g.generators().iter().map(|&x| g.element(x)).collect();
        let len = gens.len();
        gens.rotate_left(rot % len);
        gens.reverse();
        let Construction::Direct(l, r) = g.construction() else { unreachable!() };
        let construction = Construction::Direct(l.clone(), r.clone());
        let rebuilt = FiniteGroup::enumerate(construction, &gens, g.limits()).unwrap();
        prop_assert_eq!(rebuilt.order(), g.order());
        for x in 0..g.order() as ElemId {
            let e = g.element(x);
            let y = rebuilt.id_of(&e).unwrap();
            prop_assert_eq!(rebuilt.element_order(y), g.element_order(x));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn two_prime_components_decompose(pick in any::<prop::sample::Index>()) {
        let candidates = component_candidates(600);
        let (p, q, a, b) = candidates[pick.index(candidates.len())];
        let (h1, h2) = components(p, q, a, b);
        let g = direct_product(&h1, &h2).unwrap();
        let d = two_prime_decompose(&g).unwrap();
        prop_assert!(d.certificate.passes());
        let mut got = [d.k_p.order(), d.k_q.order()];
        let mut want = [h1.order(), h2.order()];
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
        // K_p × K_q has the element-order profile of G
        let orders = g.element_orders();
        let kp: Vec<u64> = d.k_p.members().iter().map(|&x| orders[x as usize] as u64).collect();
        let kq: Vec<u64> = d.k_q.members().iter().map(|&x| orders[x as usize] as u64).collect();
        let product = order_multiset(kp.iter().flat_map(|&x| kq.iter().map(move |&y| lcm(x, y))));
        prop_assert_eq!(product, order_multiset(orders.iter().map(|&o| o as u64)));
        prop_assert!(is_a_prime_group(&h1).unwrap().holds());
        prop_assert!(is_a_prime_group(&h2).unwrap().holds());
    }
}
