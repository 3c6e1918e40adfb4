use super::{ElemId, FiniteGroup};
use crate::error::{Error, Result};
use crate::numtheory::{factorize, prime_part};
use std::sync::Arc;

/// A subgroup of an enumerated group: sorted member ids, a membership mask
/// over the ambient group, and a generating list.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    members: Vec<ElemId>,
    mask: Vec<bool>,
    generators: Vec<ElemId>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Equality of member sets within the same ambient group.
impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.members == other.members
    }
}

impl Eq for Subgroup {}

/// Incremental closure state: grows a subgroup one generator at a time.
struct Closure<'a> {
    group: &'a FiniteGroup,
    members: Vec<ElemId>,
    mask: Vec<bool>,
    generators: Vec<ElemId>,
}

impl<'a> Closure<'a> {
    fn trivial(group: &'a FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[0] = true;
        Closure { group, members: vec![0], mask, generators: Vec::new() }
    }

    fn from_subgroup(s: &'a Subgroup) -> Self {
        Closure {
            group: &s.group,
            members: s.members.clone(),
            mask: s.mask.clone(),
            generators: s.generators.clone(),
        }
    }

    /// Adds `g` as a generator unless it is already a member.
    fn add(&mut self, g: ElemId) -> bool {
        if self.mask[g as usize] {
            return false;
        }
        self.generators.push(g);
        // right multiplication of every member by every generator
        let mut head = 0;
        while head < self.members.len() {
            let x = self.members[head];
            head += 1;
            for &s in &self.generators {
                let y = self.group.compose(x, s);
                if !self.mask[y as usize] {
                    self.mask[y as usize] = true;
                    self.members.push(y);
                }
            }
        }
        true
    }

    fn finish(mut self, group: Arc<FiniteGroup>) -> Subgroup {
        self.members.sort_unstable();
        Subgroup { group, members: self.members, mask: self.mask, generators: self.generators }
    }
}

impl Subgroup {
    pub(crate) fn from_parts_unchecked(
        group: Arc<FiniteGroup>,
        members: Vec<ElemId>,
        generators: Vec<ElemId>,
    ) -> Subgroup {
        let mut mask = vec![false; group.order()];
        for &m in &members {
            mask[m as usize] = true;
        }
        Subgroup { group, members, mask, generators }
    }

    /// Least subgroup containing `ids`, generated greedily in the given order.
    pub fn closure(group: &Arc<FiniteGroup>, ids: &[ElemId]) -> Subgroup {
        let mut c = Closure::trivial(group);
        for &g in ids {
            c.add(g);
        }
        c.finish(group.clone())
    }

    /// Builds a subgroup from a member set, verifying that the set is closed.
    pub fn from_members(group: &Arc<FiniteGroup>, mut members: Vec<ElemId>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        let s = Subgroup::closure(group, &members);
        if s.members != members {
            return Err(Error::UnknownElement);
        }
        Ok(s)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn contains(&self, g: ElemId) -> bool {
        self.mask[g as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.group.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let (small, large) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        let common: Vec<ElemId> = small.members.iter().copied().filter(|&m| large.contains(m)).collect();
        Subgroup::closure(&self.group, &common)
    }

    /// Closure of the union.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut c = Closure::from_subgroup(self);
        for &g in &other.generators {
            c.add(g);
        }
        c.finish(self.group.clone())
    }

    /// Adds one more generator.
    pub fn extend(&self, g: ElemId) -> Subgroup {
        let mut c = Closure::from_subgroup(self);
        c.add(g);
        c.finish(self.group.clone())
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| self.group.compose(a, b) == self.group.compose(b, a))
        })
    }

    /// Normal in the ambient group.
    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(self.group.generators())
    }

    /// Normal in `over`, which must contain this subgroup.
    pub fn is_normal_in(&self, over: &Subgroup) -> bool {
        self.is_subset_of(over) && self.is_normalized_by(over.generators())
    }

    fn is_normalized_by(&self, conjugators: &[ElemId]) -> bool {
        conjugators.iter().all(|&g| {
            self.generators
                .iter()
                .all(|&s| self.contains(self.group.conjugate(g, s)))
        })
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        let orders = self.group.element_orders();
        self.members
            .iter()
            .fold(1, |acc, &m| crate::numtheory::lcm(acc, orders[m as usize] as u64))
    }

    /// Elements of this subgroup commuting with every target.
    pub fn centralizer_of(&self, targets: &[ElemId]) -> Subgroup {
        let g = &self.group;
        let members: Vec<ElemId> = self
            .members
            .iter()
            .copied()
            .filter(|&x| targets.iter().all(|&t| g.compose(x, t) == g.compose(t, x)))
            .collect();
        Subgroup::from_members(g, members).expect("centralizer is a subgroup")
    }

    /// Elements of this subgroup normalizing `s`.
    pub fn normalizer_of(&self, s: &Subgroup) -> Subgroup {
        let g = &self.group;
        let members: Vec<ElemId> = self
            .members
            .iter()
            .copied()
            .filter(|&x| s.generators.iter().all(|&t| s.contains(g.conjugate(x, t))))
            .collect();
        Subgroup::from_members(g, members).expect("normalizer is a subgroup")
    }

    /// Normal closure of `ids` inside this subgroup.
    pub fn normal_closure_of(&self, ids: &[ElemId]) -> Subgroup {
        let g = &self.group;
        let mut c = Closure::trivial(g);
        for &x in ids {
            c.add(x);
        }
        loop {
            let mut grew = false;
            let mut i = 0;
            while i < c.generators.len() {
                let h = c.generators[i];
                for &s in &self.generators {
                    grew |= c.add(g.conjugate(s, h));
                }
                i += 1;
            }
            if !grew {
                break;
            }
        }
        c.finish(g.clone())
    }

    /// Commutator subgroup of this subgroup.
    pub fn derived_subgroup(&self) -> Subgroup {
        let g = &self.group;
        let gens = &self.generators;
        let mut commutators = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                commutators.push(g.commutator(a, b));
            }
        }
        self.normal_closure_of(&commutators)
    }

    /// This subgroup followed by successive derived subgroups, stopping at
    /// the first repeated term.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Sylow subgroup by ascent through normalizers.
    ///
    /// Seeds with the lowest-id element of largest prime-power order, then
    /// repeatedly adjoins the lowest-id prime-power element of the
    /// normalizer that lies outside the current subgroup.
    pub fn sylow(&self, prime: u64) -> Result<Subgroup> {
        let order = self.order() as u64;
        if prime < 2 || !order.is_multiple_of(prime) {
            return Err(Error::PrimeDoesNotDivide { prime, order });
        }
        let target = prime_part(order, prime) as usize;
        let orders = self.group.element_orders();
        let is_prime_power = |x: ElemId| {
            let o = orders[x as usize] as u64;
            o > 1 && prime_part(o, prime) == o
        };
        let seed = self
            .members
            .iter()
            .copied()
            .filter(|&x| is_prime_power(x))
            .max_by(|&a, &b| orders[a as usize].cmp(&orders[b as usize]).then(b.cmp(&a)))
            .expect("Cauchy: an element of prime order exists");
        let mut p = Subgroup::closure(&self.group, &[seed]);
        while p.order() < target {
            let n = self.normalizer_of(&p);
            let next = n
                .members
                .iter()
                .copied()
                .find(|&x| is_prime_power(x) && !p.contains(x))
                .expect("a non-Sylow p-subgroup is properly contained in its normalizer's Sylow");
            p = p.extend(next);
        }
        debug_assert_eq!(p.order(), target);
        Ok(p)
    }

    /// Conjugacy classes of this subgroup under its own conjugation.
    pub fn conjugacy_classes(&self) -> Vec<Vec<ElemId>> {
        let g = &self.group;
        let mut seen = vec![false; g.order()];
        let mut classes = Vec::new();
        for &start in &self.members {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut class = vec![start];
            let mut head = 0;
            while head < class.len() {
                let x = class[head];
                head += 1;
                for &s in &self.generators {
                    let y = g.conjugate(s, x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        class.push(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Prime divisors of the order with their multiplicities.
    pub fn order_factorization(&self) -> Vec<(u64, u32)> {
        factorize(self.order() as u64)
    }
}
