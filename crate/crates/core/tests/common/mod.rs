//! Fixtures and naive reference implementations shared by the integration tests.
#![allow(dead_code)]

use agroup::constructions::{cyclic, cyclic_by_cyclic, family_components, semidirect_product};
use agroup::expr::GroupExpr;
use agroup::{Action, ElemId, FiniteGroup, GroupElement, Limits};
use std::collections::BTreeSet;
use std::sync::Arc;

pub fn build(expr: &str) -> Arc<FiniteGroup> {
    expr.parse::<GroupExpr>()
        .unwrap_or_else(|e| panic!("{expr}: {e}"))
        .build(Limits::default())
        .unwrap_or_else(|e| panic!("{expr}: {e}"))
}

/// F_7⁺ ⋊ S_3, with S_3 acting through its sign by ±1.
pub fn f7_by_s3() -> Arc<FiniteGroup> {
    let kernel = cyclic(7).unwrap();
    let s3 = cyclic_by_cyclic(3, 2, 2, Limits::default()).unwrap();
    let action = Action::from_fn(&kernel, &s3, |g, h| {
        let GroupElement::Pair(_, sign) = s3.element(g) else { unreachable!() };
        match *sign {
            GroupElement::Cyclic(0) => h,
            _ => kernel.invert(h),
        }
    })
    .unwrap();
    semidirect_product(&kernel, &s3, action).unwrap()
}

/// Small groups used by the oracle comparisons, all of order at most 2000.
pub fn oracle_fixtures() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let mut v: Vec<(&'static str, Arc<FiniteGroup>)> = [
        "cyclic(6)",
        "csd(3,2,2)",
        "csd(3,4,2)",
        "direct(cyclic(2),cyclic(2))",
        "scalar(5,2,2)",
        "scalar(2,4,5)",
        "heis3()",
        "pair(3,2,1,2)",
        "scalar(13,1,12)",
        "scalar(2,4,15)",
        "scalar(3,3,13)",
        "scalar(7,2,16)",
        "direct(csd(3,2,2),csd(5,4,2))",
    ]
    .into_iter()
    .map(|e| (e, build(e)))
    .collect();
    v.push(("F7 : S3", f7_by_s3()));
    v
}

/// Valid two-prime component parameters (p, q, a, b): q | p^a − 1 and
/// p | q^b − 1, with each component of order at most `max_component`.
pub fn component_candidates(max_component: u64) -> Vec<(u32, u32, u32, u32)> {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43];
    let mut out = Vec::new();
    for &p in &primes {
        for &q in &primes {
            if p == q {
                continue;
            }
            // smallest degree with the required divisibility, if it fits
            let degree = |base: u64, modulus: u64, cofactor: u64| {
                let mut power = base;
                for d in 1.. {
                    if power * cofactor > max_component {
                        return None;
                    }
                    if (power - 1).is_multiple_of(modulus) {
                        return Some(d);
                    }
                    power *= base;
                }
                None
            };
            if let (Some(a), Some(b)) = (degree(p, q, q), degree(q, p, p)) {
                out.push((p as u32, q as u32, a, b));
            }
        }
    }
    out
}

pub fn components(p: u32, q: u32, a: u32, b: u32) -> (Arc<FiniteGroup>, Arc<FiniteGroup>) {
    family_components(p, q, a, b, Limits::default()).unwrap()
}

// Naive references: plain sets of ids, only compose/invert are used.

pub fn naive_order(g: &FiniteGroup, x: ElemId) -> u32 {
    let mut y = x;
    let mut n = 1;
    while y != 0 {
        y = g.compose(y, x);
        n += 1;
    }
    n
}

pub fn naive_closure(g: &FiniteGroup, gens: &[ElemId]) -> BTreeSet<ElemId> {
    let mut set: BTreeSet<ElemId> = gens.iter().copied().collect();
    set.insert(0);
    loop {
        let current: Vec<ElemId> = set.iter().copied().collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                grew |= set.insert(g.compose(a, b));
            }
        }
        if !grew {
            return set;
        }
    }
}

pub fn naive_centralizer(g: &FiniteGroup, targets: &[ElemId]) -> BTreeSet<ElemId> {
    (0..g.order() as ElemId)
        .filter(|&x| targets.iter().all(|&t| g.compose(x, t) == g.compose(t, x)))
        .collect()
}

pub fn naive_normalizer(g: &FiniteGroup, s: &BTreeSet<ElemId>) -> BTreeSet<ElemId> {
    (0..g.order() as ElemId)
        .filter(|&x| {
            let xi = g.invert(x);
            let conj: BTreeSet<ElemId> = s.iter().map(|&y| g.compose(g.compose(x, y), xi)).collect();
            &conj == s
        })
        .collect()
}

fn set_of(members: &[ElemId]) -> BTreeSet<ElemId> {
    members.iter().copied().collect()
}

/// Compares the indexed operations against the naive ones on one group.
/// Returns the number of queries and a description of the first mismatch.
pub fn oracle_compare(g: &Arc<FiniteGroup>, seed: u64) -> Result<usize, String> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let n = g.order() as ElemId;
    let mut queries = 0;
    for x in 0..n {
        queries += 1;
        if g.element_order(x) != naive_order(g, x) {
            return Err(format!("element_order({x})"));
        }
    }
    // single-element centralizers: all of them on small groups, a sample otherwise
    let singles: Vec<ElemId> = if n <= 400 { (0..n).collect() } else { (0..60).map(|_| rng.gen_range(0..n)).collect() };
    for x in singles {
        queries += 1;
        if set_of(g.centralizer(&[x]).members()) != naive_centralizer(g, &[x]) {
            return Err(format!("centralizer([{x}])"));
        }
    }
    for _ in 0..40 {
        let k = rng.gen_range(0..=3);
        let gens: Vec<ElemId> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        queries += 3;
        let fast = g.closure(&gens);
        let slow = naive_closure(g, &gens);
        if set_of(fast.members()) != slow {
            return Err(format!("closure({gens:?})"));
        }
        if set_of(g.centralizer(&gens).members()) != naive_centralizer(g, &gens) {
            return Err(format!("centralizer({gens:?})"));
        }
        if set_of(g.normalizer(&fast).members()) != naive_normalizer(g, &slow) {
            return Err(format!("normalizer(<{gens:?}>)"));
        }
    }
    Ok(queries)
}
