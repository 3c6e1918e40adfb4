//! Enumerated finite groups.
//!
//! A [`FiniteGroup`] is a construction tree (cyclic and field-additive
//! leaves, direct and semidirect products, quotients, and subgroups viewed
//! as groups in their own right) together with a dense element table.
//!
//! Every node has a structural *code* space `0..order`: leaves use their
//! residue or field encoding, product nodes pack the child ids in mixed
//! radix, and quotient / subgroup nodes index their cosets / members.
//! Element ids are assigned by breadth-first closure from the generators,
//! so id 0 is the identity and ids are a discovery rank. The reverse lookup
//! from code to id is a flat array, so composition costs one structural
//! step per tree level and no Cayley table is needed for large groups.

mod action;
mod subgroup;

pub use action::Action;
pub use subgroup::Subgroup;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use std::sync::{Arc, OnceLock};

pub type ElemId = u32;

/// Default cap on enumerated group order.
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;
/// Default cap on the number of normal subgroups enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 10_000;
/// Groups up to this order get a full multiplication table.
const CAYLEY_TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: u64,
    pub lattice_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { element_cap: DEFAULT_ELEMENT_CAP, lattice_cap: DEFAULT_LATTICE_CAP }
    }
}

/// An element in the shape of its group's construction tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Cyclic(u32),
    FieldAdd(FieldElement),
    Pair(Box<GroupElement>, Box<GroupElement>),
    /// A coset of a quotient group, named by its minimal-id representative.
    Coset(Box<GroupElement>),
}

impl GroupElement {
    pub fn pair(left: GroupElement, right: GroupElement) -> GroupElement {
        GroupElement::Pair(Box::new(left), Box::new(right))
    }
}

pub enum Construction {
    Cyclic(u32),
    FieldAdd(Arc<FieldSpec>),
    Direct(Arc<FiniteGroup>, Arc<FiniteGroup>),
    Semidirect {
        kernel: Arc<FiniteGroup>,
        acting: Arc<FiniteGroup>,
        action: Arc<Action>,
    },
    Quotient {
        parent: Arc<FiniteGroup>,
        /// Parent id of the minimal element of each coset, ascending.
        reps: Vec<ElemId>,
        /// Parent id to coset code.
        coset_of: Vec<u32>,
    },
    /// A subgroup re-enumerated as a group; codes index `members`.
    Embedded {
        parent: Arc<FiniteGroup>,
        members: Vec<ElemId>,
        index_of: Vec<u32>,
    },
}

impl std::fmt::Debug for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Construction {
    /// Short human-readable description of the tree.
    pub fn describe(&self) -> String {
        match self {
            Construction::Cyclic(n) => format!("C{n}"),
            Construction::FieldAdd(f) => format!("F{}^+", f.order()),
            Construction::Direct(l, r) => {
                format!("({} x {})", l.construction.describe(), r.construction.describe())
            }
            Construction::Semidirect { kernel, acting, .. } => format!(
                "({} : {})",
                kernel.construction.describe(),
                acting.construction.describe()
            ),
            Construction::Quotient { parent, reps, .. } => {
                format!("{}/N[{}]", parent.construction.describe(), parent.order() / reps.len())
            }
            Construction::Embedded { parent, members, .. } => {
                format!("<{} in {}>", members.len(), parent.construction.describe())
            }
        }
    }

    fn predicted_order(&self) -> u128 {
        match self {
            Construction::Cyclic(n) => *n as u128,
            Construction::FieldAdd(f) => f.order() as u128,
            Construction::Direct(l, r) => l.order() as u128 * r.order() as u128,
            Construction::Semidirect { kernel, acting, .. } => {
                kernel.order() as u128 * acting.order() as u128
            }
            Construction::Quotient { reps, .. } => reps.len() as u128,
            Construction::Embedded { members, .. } => members.len() as u128,
        }
    }

    fn identity_code(&self) -> u32 {
        match self {
            Construction::Quotient { coset_of, .. } => coset_of[0],
            Construction::Embedded { index_of, .. } => index_of[0],
            _ => 0,
        }
    }

    fn compose_code(&self, a: u32, b: u32) -> u32 {
        match self {
            Construction::Cyclic(n) => ((a as u64 + b as u64) % *n as u64) as u32,
            Construction::FieldAdd(f) => field_add_codes(f.characteristic(), a, b),
            Construction::Direct(l, r) => {
                let rn = r.order() as u32;
                let (la, ra) = (a / rn, a % rn);
                let (lb, rb) = (b / rn, b % rn);
                l.compose(la, lb) * rn + r.compose(ra, rb)
            }
            Construction::Semidirect { kernel, acting, action } => {
                let an = acting.order() as u32;
                let (ka, ga) = (a / an, a % an);
                let (kb, gb) = (b / an, b % an);
                let k = kernel.compose(ka, action.apply(ga, kb));
                k * an + acting.compose(ga, gb)
            }
            Construction::Quotient { parent, reps, coset_of } => {
                coset_of[parent.compose(reps[a as usize], reps[b as usize]) as usize]
            }
            Construction::Embedded { parent, members, index_of } => {
                index_of[parent.compose(members[a as usize], members[b as usize]) as usize]
            }
        }
    }

    fn invert_code(&self, a: u32) -> u32 {
        match self {
            Construction::Cyclic(n) => (n - a % n) % n,
            Construction::FieldAdd(f) => field_neg_code(f.characteristic(), a),
            Construction::Direct(l, r) => {
                let rn = r.order() as u32;
                l.invert(a / rn) * rn + r.invert(a % rn)
            }
            Construction::Semidirect { kernel, acting, action } => {
                let an = acting.order() as u32;
                let (k, g) = (a / an, a % an);
                let gi = acting.invert(g);
                action.apply(gi, kernel.invert(k)) * an + gi
            }
            Construction::Quotient { parent, reps, coset_of } => {
                coset_of[parent.invert(reps[a as usize]) as usize]
            }
            Construction::Embedded { parent, members, index_of } => {
                index_of[parent.invert(members[a as usize]) as usize]
            }
        }
    }

    fn element_of_code(&self, code: u32) -> GroupElement {
        match self {
            Construction::Cyclic(_) => GroupElement::Cyclic(code),
            Construction::FieldAdd(f) => GroupElement::FieldAdd(f.decode(code)),
            Construction::Direct(l, r) => {
                let rn = r.order() as u32;
                GroupElement::pair(l.element(code / rn), r.element(code % rn))
            }
            Construction::Semidirect { kernel, acting, .. } => {
                let an = acting.order() as u32;
                GroupElement::pair(kernel.element(code / an), acting.element(code % an))
            }
            Construction::Quotient { parent, reps, .. } => {
                GroupElement::Coset(Box::new(parent.element(reps[code as usize])))
            }
            Construction::Embedded { parent, members, .. } => {
                parent.element(members[code as usize])
            }
        }
    }

    fn code_of_element(&self, e: &GroupElement) -> Result<u32> {
        match (self, e) {
            (Construction::Cyclic(n), GroupElement::Cyclic(r)) if r < n => Ok(*r),
            (Construction::FieldAdd(f), GroupElement::FieldAdd(x)) => {
                let x = f.element(x.coeffs()).map_err(|_| Error::UnknownElement)?;
                Ok(f.encode(&x))
            }
            (Construction::Direct(l, r), GroupElement::Pair(a, b)) => {
                Ok(l.id_of(a)? * r.order() as u32 + r.id_of(b)?)
            }
            (Construction::Semidirect { kernel, acting, .. }, GroupElement::Pair(a, b)) => {
                Ok(kernel.id_of(a)? * acting.order() as u32 + acting.id_of(b)?)
            }
            (Construction::Quotient { parent, coset_of, .. }, GroupElement::Coset(rep)) => {
                Ok(coset_of[parent.id_of(rep)? as usize])
            }
            (Construction::Embedded { parent, index_of, .. }, e) => {
                match index_of[parent.id_of(e)? as usize] {
                    u32::MAX => Err(Error::UnknownElement),
                    i => Ok(i),
                }
            }
            _ => Err(Error::UnknownElement),
        }
    }

    fn limits(&self) -> Option<Limits> {
        match self {
            Construction::Cyclic(_) | Construction::FieldAdd(_) => None,
            Construction::Direct(l, _) => Some(l.limits),
            Construction::Semidirect { kernel, .. } => Some(kernel.limits),
            Construction::Quotient { parent, .. } | Construction::Embedded { parent, .. } => {
                Some(parent.limits)
            }
        }
    }
}

fn field_add_codes(p: u32, mut a: u32, mut b: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn field_neg_code(p: u32, mut a: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

pub struct FiniteGroup {
    construction: Construction,
    generators: Vec<ElemId>,
    id_to_code: Vec<u32>,
    code_to_id: Vec<ElemId>,
    inverses: Vec<ElemId>,
    table: Option<Vec<ElemId>>,
    limits: Limits,
    element_orders: OnceLock<Vec<u32>>,
    classes: OnceLock<Vec<Vec<ElemId>>>,
    normal_lattice: OnceLock<Vec<(Vec<ElemId>, Vec<ElemId>)>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("construction", &self.construction.describe())
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    /// Breadth-first closure from `generators`; ids are discovery ranks.
    ///
    /// Fails if the closure is smaller than the order predicted by the tree.
    pub fn enumerate(
        construction: Construction,
        generators: &[GroupElement],
        limits: Limits,
    ) -> Result<Arc<FiniteGroup>> {
        let codes = generators
            .iter()
            .map(|g| construction.code_of_element(g))
            .collect::<Result<Vec<_>>>()?;
        Self::enumerate_codes(construction, codes, limits)
    }

    pub(crate) fn enumerate_codes(
        construction: Construction,
        generator_codes: Vec<u32>,
        limits: Limits,
    ) -> Result<Arc<FiniteGroup>> {
        let limits = construction.limits().map_or(limits, |inherited| Limits {
            element_cap: limits.element_cap.min(inherited.element_cap),
            lattice_cap: limits.lattice_cap.min(inherited.lattice_cap),
        });
        let predicted = construction.predicted_order();
        if predicted > limits.element_cap as u128 || predicted > u32::MAX as u128 / 2 {
            return Err(Error::SizeCapExceeded { requested: predicted, cap: limits.element_cap });
        }
        let n = predicted as usize;
        let identity = construction.identity_code();
        let mut gen_codes: Vec<u32> = Vec::new();
        for c in generator_codes {
            if c as usize >= n {
                return Err(Error::UnknownElement);
            }
            if c != identity && !gen_codes.contains(&c) {
                gen_codes.push(c);
            }
        }

        let mut code_to_id = vec![ElemId::MAX; n];
        let mut id_to_code = Vec::with_capacity(n);
        code_to_id[identity as usize] = 0;
        id_to_code.push(identity);
        let mut head = 0;
        while head < id_to_code.len() {
            let x = id_to_code[head];
            head += 1;
            for &s in &gen_codes {
                let y = construction.compose_code(x, s);
                if code_to_id[y as usize] == ElemId::MAX {
                    code_to_id[y as usize] = id_to_code.len() as ElemId;
                    id_to_code.push(y);
                }
            }
        }
        if id_to_code.len() != n {
            return Err(Error::GeneratorsDoNotGenerate { found: id_to_code.len(), expected: n });
        }
        let inverses = id_to_code
            .iter()
            .map(|&c| code_to_id[construction.invert_code(c) as usize])
            .collect();
        let generators = gen_codes.iter().map(|&c| code_to_id[c as usize]).collect();
        let mut group = FiniteGroup {
            construction,
            generators,
            id_to_code,
            code_to_id,
            inverses,
            table: None,
            limits,
            element_orders: OnceLock::new(),
            classes: OnceLock::new(),
            normal_lattice: OnceLock::new(),
        };
        if n <= CAYLEY_TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n as ElemId {
                for b in 0..n as ElemId {
                    table.push(group.compose(a, b));
                }
            }
            group.table = Some(table);
        }
        Ok(Arc::new(group))
    }

    pub fn order(&self) -> usize {
        self.id_to_code.len()
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn compose(&self, a: ElemId, b: ElemId) -> ElemId {
        if let Some(t) = &self.table {
            return t[a as usize * self.order() + b as usize];
        }
        let c = self
            .construction
            .compose_code(self.id_to_code[a as usize], self.id_to_code[b as usize]);
        self.code_to_id[c as usize]
    }

    pub fn invert(&self, a: ElemId) -> ElemId {
        self.inverses[a as usize]
    }

    /// `g · h · g⁻¹`.
    pub fn conjugate(&self, g: ElemId, h: ElemId) -> ElemId {
        self.compose(self.compose(g, h), self.invert(g))
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: ElemId, b: ElemId) -> ElemId {
        let ai_bi = self.compose(self.invert(a), self.invert(b));
        self.compose(self.compose(ai_bi, a), b)
    }

    pub fn power(&self, g: ElemId, mut e: u64) -> ElemId {
        let mut acc = 0;
        let mut sq = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(acc, sq);
            }
            sq = self.compose(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element(&self, id: ElemId) -> GroupElement {
        self.construction.element_of_code(self.id_to_code[id as usize])
    }

    pub fn id_of(&self, e: &GroupElement) -> Result<ElemId> {
        let code = self.construction.code_of_element(e)?;
        match self.code_to_id.get(code as usize) {
            Some(&id) if id != ElemId::MAX => Ok(id),
            _ => Err(Error::UnknownElement),
        }
    }

    pub fn element_order(&self, g: ElemId) -> u32 {
        self.element_orders()[g as usize]
    }

    /// Orders of all elements, indexed by id.
    pub fn element_orders(&self) -> &[u32] {
        self.element_orders.get_or_init(|| {
            let n = self.order();
            let mut orders = vec![0u32; n];
            orders[0] = 1;
            for g in 1..n as ElemId {
                if orders[g as usize] != 0 {
                    continue;
                }
                let mut powers = vec![g];
                let mut x = g;
                while x != 0 {
                    x = self.compose(x, g);
                    powers.push(x);
                }
                let k = powers.len() as u32;
                // g^i has order k / gcd(i, k)
                for (i, &x) in powers.iter().enumerate() {
                    let i = i as u32 + 1;
                    if orders[x as usize] == 0 {
                        orders[x as usize] = k / crate::numtheory::gcd(i as u64, k as u64) as u32;
                    }
                }
            }
            orders
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..].iter().all(|&b| self.compose(a, b) == self.compose(b, a))
        })
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_parts_unchecked(
            self.clone(),
            (0..self.order() as ElemId).collect(),
            self.generators.clone(),
        )
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_parts_unchecked(self.clone(), vec![0], Vec::new())
    }

    /// Least subgroup containing `ids`.
    pub fn closure(self: &Arc<Self>, ids: &[ElemId]) -> Subgroup {
        Subgroup::closure(self, ids)
    }

    pub fn centralizer(self: &Arc<Self>, targets: &[ElemId]) -> Subgroup {
        self.whole().centralizer_of(targets)
    }

    pub fn center(self: &Arc<Self>) -> Subgroup {
        let gens = self.generators.clone();
        self.centralizer(&gens)
    }

    pub fn normalizer(self: &Arc<Self>, s: &Subgroup) -> Subgroup {
        self.whole().normalizer_of(s)
    }

    pub fn derived_series(self: &Arc<Self>) -> Vec<Subgroup> {
        self.whole().derived_series()
    }

    pub fn sylow(self: &Arc<Self>, prime: u64) -> Result<Subgroup> {
        self.whole().sylow(prime)
    }

    /// Conjugacy classes, each sorted, ordered by their minimal id.
    pub fn conjugacy_classes(self: &Arc<Self>) -> &[Vec<ElemId>] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut seen = vec![false; n];
            let mut classes = Vec::new();
            for start in 0..n as ElemId {
                if seen[start as usize] {
                    continue;
                }
                seen[start as usize] = true;
                let mut class = vec![start];
                let mut head = 0;
                while head < class.len() {
                    let x = class[head];
                    head += 1;
                    for &g in &self.generators {
                        let y = self.conjugate(g, x);
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
        })
    }

    /// All normal subgroups, ordered by size then by member list.
    ///
    /// Atoms are the normal closures of single conjugacy classes; every
    /// normal subgroup is a join of atoms, so the lattice is reached by
    /// joining atoms onto known members until nothing new appears.
    pub fn normal_subgroups(self: &Arc<Self>) -> Result<Vec<Subgroup>> {
        if let Some(raw) = self.normal_lattice.get() {
            return Ok(self.lattice_from_raw(raw));
        }
        let cap = self.limits.lattice_cap;
        let mut known: std::collections::HashSet<Vec<ElemId>> = std::collections::HashSet::new();
        let mut atoms: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes() {
            let atom = self.closure(class);
            if known.insert(atom.members().to_vec()) {
                atoms.push(atom);
            }
        }
        let trivial = self.trivial_subgroup();
        let mut all: Vec<Subgroup> = Vec::new();
        if known.insert(trivial.members().to_vec()) {
            all.push(trivial);
        }
        all.extend(atoms.iter().cloned());
        let mut frontier: Vec<usize> = (0..all.len()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for idx in frontier {
                for atom in &atoms {
                    if atom.is_subset_of(&all[idx]) {
                        continue;
                    }
                    let join = all[idx].join(atom);
                    if known.insert(join.members().to_vec()) {
                        if all.len() >= cap {
                            return Err(Error::LatticeCapExceeded(cap));
                        }
                        next.push(all.len());
                        all.push(join);
                    }
                }
            }
            frontier = next;
        }
        if all.len() > cap {
            return Err(Error::LatticeCapExceeded(cap));
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
        let raw = all.iter().map(|s| (s.members().to_vec(), s.generators().to_vec())).collect();
        let _ = self.normal_lattice.set(raw);
        Ok(all)
    }

    fn lattice_from_raw(self: &Arc<Self>, raw: &[(Vec<ElemId>, Vec<ElemId>)]) -> Vec<Subgroup> {
        raw.iter()
            .map(|(m, g)| Subgroup::from_parts_unchecked(self.clone(), m.clone(), g.clone()))
            .collect()
    }

    /// Quotient by a normal subgroup; cosets are named by their minimal id.
    pub fn quotient(self: &Arc<Self>, normal: &Subgroup) -> Result<Arc<FiniteGroup>> {
        if !Arc::ptr_eq(normal.group(), self) {
            return Err(Error::UnknownElement);
        }
        if !normal.is_normal() {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / normal.order());
        for g in 0..n as ElemId {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let code = reps.len() as u32;
            reps.push(g);
            for &h in normal.members() {
                coset_of[self.compose(g, h) as usize] = code;
            }
        }
        let gens = self.generators.iter().map(|&g| coset_of[g as usize]).collect();
        let construction = Construction::Quotient { parent: self.clone(), reps, coset_of };
        Self::enumerate_codes(construction, gens, self.limits)
    }

    /// Image of a parent element in a quotient group.
    pub fn quotient_image(&self, parent_id: ElemId) -> Option<ElemId> {
        match &self.construction {
            Construction::Quotient { coset_of, .. } => {
                Some(self.code_to_id[coset_of[parent_id as usize] as usize])
            }
            _ => None,
        }
    }

    /// Minimal parent id of the coset named by a quotient element.
    pub fn quotient_representative(&self, id: ElemId) -> Option<ElemId> {
        match &self.construction {
            Construction::Quotient { reps, .. } => Some(reps[self.id_to_code[id as usize] as usize]),
            _ => None,
        }
    }

    /// A subgroup re-enumerated as a group of its own.
    pub fn embed(subgroup: &Subgroup) -> Result<Arc<FiniteGroup>> {
        let parent = subgroup.group().clone();
        let members = subgroup.members().to_vec();
        let mut index_of = vec![u32::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            index_of[m as usize] = i as u32;
        }
        let gens = subgroup.generators().iter().map(|&g| index_of[g as usize]).collect();
        let limits = parent.limits;
        Self::enumerate_codes(Construction::Embedded { parent, members, index_of }, gens, limits)
    }

    /// Parent id of an element of an embedded subgroup group.
    pub fn embedded_parent_id(&self, id: ElemId) -> Option<ElemId> {
        match &self.construction {
            Construction::Embedded { members, .. } => {
                Some(members[self.id_to_code[id as usize] as usize])
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests;
