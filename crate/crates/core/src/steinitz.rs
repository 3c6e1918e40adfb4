//! Group-theoretic checks on family groups G = H ⋊ Γ with
//! H = F_{p^a}⁺ × F_{q^b}⁺ and Γ = C_q × C_p × C_r.
//!
//! For each prime ℓ the Sylow ℓ-subgroups have exponent ℓ, and every
//! element τ of order ℓ falls in one of two cases by its image π(τ) in Γ:
//! (a) π(τ) has order ℓ, and then N_G(⟨τ⟩) = C_G(τ) because Γ is abelian;
//! (b) π(τ) = 1, so τ ∈ H. Each class also carries the integer
//! ((ℓ − 1)/2)·(|G|/ℓ) used as a multiplicity downstream.
//!
//! The checks are parity independent and run on even-order groups too; the
//! report records whether p, q, r are all odd.

use crate::constructions::FamilyParams;
use crate::error::{Error, Result};
use crate::group::{Construction, ElemId, FiniteGroup, GroupElement, Subgroup};
use crate::numtheory::prime_divisors;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// The splitting G = H ⋊ Γ of a family group with its projection to Γ.
#[derive(Debug, Clone)]
pub struct FamilyProjection {
    pub params: FamilyParams,
    pub h: Subgroup,
    pub gamma: Subgroup,
    /// `projection[g]` is the id in G of the Γ-coordinate of g.
    pub projection: Vec<ElemId>,
}

impl FamilyProjection {
    pub fn project(&self, g: ElemId) -> ElemId {
        self.projection[g as usize]
    }
}

/// Reads the family parameters off the construction tree.
pub fn family_params_of(g: &FiniteGroup) -> Result<FamilyParams> {
    let Construction::Semidirect { kernel, acting, .. } = g.construction() else {
        return Err(Error::NotFamilyGroup);
    };
    let Construction::Cyclic(r) = acting.construction() else {
        return Err(Error::NotFamilyGroup);
    };
    let Construction::Direct(h1, h2) = kernel.construction() else {
        return Err(Error::NotFamilyGroup);
    };
    let field_by_cyclic = |h: &FiniteGroup| -> Option<(u32, u32, u32)> {
        let Construction::Semidirect { kernel, acting, .. } = h.construction() else {
            return None;
        };
        match (kernel.construction(), acting.construction()) {
            (Construction::FieldAdd(f), Construction::Cyclic(m)) => {
                Some((f.characteristic(), f.degree(), *m))
            }
            _ => None,
        }
    };
    let (Some((p, a, q)), Some((q2, b, p2))) = (field_by_cyclic(h1), field_by_cyclic(h2)) else {
        return Err(Error::NotFamilyGroup);
    };
    if p != p2 || q != q2 {
        return Err(Error::NotFamilyGroup);
    }
    FamilyParams::new(p, q, *r, a, b).map_err(|_| Error::NotFamilyGroup)
}

/// Field and cyclic coordinates of a family group element:
/// ((x, c_q), (y, c_p)), c_r.
fn coordinates(
    e: GroupElement,
) -> Option<(GroupElement, u32, GroupElement, u32, u32)> {
    let GroupElement::Pair(kernel, cr) = e else { return None };
    let GroupElement::Cyclic(cr) = *cr else { return None };
    let GroupElement::Pair(h1, h2) = *kernel else { return None };
    let GroupElement::Pair(x, cq) = *h1 else { return None };
    let GroupElement::Pair(y, cp) = *h2 else { return None };
    let (GroupElement::Cyclic(cq), GroupElement::Cyclic(cp)) = (*cq, *cp) else {
        return None;
    };
    Some((*x, cq, *y, cp, cr))
}

fn assemble(x: GroupElement, cq: u32, y: GroupElement, cp: u32, cr: u32) -> GroupElement {
    GroupElement::pair(
        GroupElement::pair(
            GroupElement::pair(x, GroupElement::Cyclic(cq)),
            GroupElement::pair(y, GroupElement::Cyclic(cp)),
        ),
        GroupElement::Cyclic(cr),
    )
}

fn certificate(ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::NotFamilyGroup)
    }
}

/// Extracts H and Γ by coordinates and verifies the splitting: H normal
/// abelian of order p^a q^b, Γ a complement, and π a homomorphism with
/// kernel H.
pub fn family_projection(g: &Arc<FiniteGroup>) -> Result<FamilyProjection> {
    let params = family_params_of(g)?;
    let (zero_x, zero_y) = {
        let e = g.element(0);
        let (x, _, y, _, _) = coordinates(e).ok_or(Error::NotFamilyGroup)?;
        (x, y)
    };
    let mut h_members = Vec::new();
    let mut gamma_members = Vec::new();
    let mut projection = Vec::with_capacity(g.order());
    for id in 0..g.order() as ElemId {
        let (x, cq, y, cp, cr) = coordinates(g.element(id)).ok_or(Error::NotFamilyGroup)?;
        if cq == 0 && cp == 0 && cr == 0 {
            h_members.push(id);
        }
        if x == zero_x && y == zero_y {
            gamma_members.push(id);
        }
        projection.push(g.id_of(&assemble(zero_x.clone(), cq, zero_y.clone(), cp, cr))?);
    }
    let h = Subgroup::from_members(g, h_members).map_err(|_| Error::NotFamilyGroup)?;
    let gamma = Subgroup::from_members(g, gamma_members).map_err(|_| Error::NotFamilyGroup)?;
    let FamilyParams { p, q, r, a, b } = params;
    certificate(h.order() as u64 == (p as u64).pow(a) * (q as u64).pow(b))?;
    certificate(gamma.order() as u64 == p as u64 * q as u64 * r as u64)?;
    certificate(h.is_normal() && h.is_abelian())?;
    certificate(h.intersection(&gamma).is_trivial())?;
    certificate(h.order() * gamma.order() == g.order())?;
    // π(x·s) = π(x)·π(s) for all x and generators s makes π a homomorphism
    for x in 0..g.order() as ElemId {
        for &s in g.generators() {
            let lhs = projection[g.compose(x, s) as usize];
            let rhs = g.compose(projection[x as usize], projection[s as usize]);
            certificate(lhs == rhs)?;
        }
    }
    let kernel_size = projection.iter().filter(|&&x| x == 0).count();
    certificate(kernel_size == h.order())?;
    Ok(FamilyProjection { params, h, gamma, projection })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowExponent {
    pub prime: u64,
    pub exponent: u64,
}

/// Exponent of a Sylow ℓ-subgroup for every prime ℓ dividing |G|.
pub fn sylow_exponent_report(g: &Arc<FiniteGroup>) -> Result<Vec<SylowExponent>> {
    prime_divisors(g.order() as u64)
        .into_iter()
        .map(|prime| Ok(SylowExponent { prime, exponent: g.sylow(prime)?.exponent() }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderEllCase {
    /// π(τ) has order ℓ.
    A,
    /// π(τ) = 1.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub prime: u64,
    pub representative: ElemId,
    pub size: u64,
    pub case: OrderEllCase,
    /// Case (a) only: N_G(⟨τ⟩) and C_G(τ) have equal member sets.
    pub normalizer_equals_centralizer: Option<bool>,
    /// Case (b) only: every element of the class lies in H.
    pub inside_h: Option<bool>,
    /// 2·((ℓ − 1)/2)·(|G|/ℓ) = (ℓ − 1)·|G|/ℓ, always an integer.
    pub exponent_doubled: u64,
    /// ((ℓ − 1)/2)·(|G|/ℓ) when it is an integer (always for odd ℓ).
    pub exponent: Option<u64>,
    /// Case (a) classes are absorbed into the Γ-term of the product.
    pub absorbed_into_gamma: bool,
}

impl ClassRow {
    pub fn passes(&self) -> bool {
        self.normalizer_equals_centralizer.unwrap_or(true) && self.inside_h.unwrap_or(true)
    }
}

/// Classifies the conjugacy classes of elements of order exactly ℓ.
pub fn order_ell_classification(g: &Arc<FiniteGroup>, prime: u64) -> Result<Vec<ClassRow>> {
    let proj = family_projection(g)?;
    classify_with(g, &proj, prime)
}

fn classify_with(g: &Arc<FiniteGroup>, proj: &FamilyProjection, prime: u64) -> Result<Vec<ClassRow>> {
    let order = g.order() as u64;
    if prime < 2 || !order.is_multiple_of(prime) {
        return Err(Error::PrimeDoesNotDivide { prime, order });
    }
    let orders = g.element_orders();
    let exponent_doubled = (prime - 1) * (order / prime);
    let mut rows = Vec::new();
    for class in g.conjugacy_classes() {
        let tau = class[0];
        if orders[tau as usize] as u64 != prime {
            continue;
        }
        let image_order = orders[proj.project(tau) as usize] as u64;
        let case = if image_order == 1 { OrderEllCase::B } else { OrderEllCase::A };
        let (normalizer_equals_centralizer, inside_h) = match case {
            OrderEllCase::A => {
                let cyclic = g.closure(&[tau]);
                let n = g.normalizer(&cyclic);
                let c = g.centralizer(&[tau]);
                (Some(n.members() == c.members()), None)
            }
            OrderEllCase::B => (None, Some(class.iter().all(|&x| proj.h.contains(x)))),
        };
        rows.push(ClassRow {
            prime,
            representative: tau,
            size: class.len() as u64,
            case,
            normalizer_equals_centralizer,
            inside_h,
            exponent_doubled,
            exponent: exponent_doubled.is_multiple_of(2).then_some(exponent_doubled / 2),
            absorbed_into_gamma: case == OrderEllCase::A,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentEntry {
    pub prime: u64,
    pub representative: ElemId,
    pub case: OrderEllCase,
    pub exponent: Option<u64>,
    pub absorbed_into_gamma: bool,
}

/// One exponent per class of prime-order elements, for every prime.
pub fn steinitz_exponent_table(g: &Arc<FiniteGroup>) -> Result<Vec<ExponentEntry>> {
    let proj = family_projection(g)?;
    let mut out = Vec::new();
    for prime in prime_divisors(g.order() as u64) {
        for row in classify_with(g, &proj, prime)? {
            out.push(ExponentEntry {
                prime,
                representative: row.representative,
                case: row.case,
                exponent: row.exponent,
                absorbed_into_gamma: row.absorbed_into_gamma,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSummary {
    pub prime: u64,
    pub sylow_exponent: u64,
    pub elements_of_order: u64,
    pub case_a_elements: u64,
    pub case_b_elements: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinitzReport {
    /// p, q, r all odd, as the number-theoretic application assumes.
    pub odd_primes: bool,
    pub h_order: u64,
    pub gamma_order: u64,
    pub primes: Vec<PrimeSummary>,
    pub classes: Vec<ClassRow>,
    pub all_checks_pass: bool,
}

pub fn steinitz_report(g: &Arc<FiniteGroup>) -> Result<SteinitzReport> {
    let proj = family_projection(g)?;
    let orders = g.element_orders();
    let mut primes = Vec::new();
    let mut classes = Vec::new();
    let mut ok = true;
    for SylowExponent { prime, exponent } in sylow_exponent_report(g)? {
        let rows = classify_with(g, &proj, prime)?;
        let count = |case| rows.iter().filter(|r| r.case == case).map(|r| r.size).sum::<u64>();
        let summary = PrimeSummary {
            prime,
            sylow_exponent: exponent,
            elements_of_order: orders.iter().filter(|&&o| o as u64 == prime).count() as u64,
            case_a_elements: count(OrderEllCase::A),
            case_b_elements: count(OrderEllCase::B),
        };
        ok &= exponent == prime
            && summary.case_a_elements + summary.case_b_elements == summary.elements_of_order
            && rows.iter().all(ClassRow::passes);
        primes.push(summary);
        classes.extend(rows);
    }
    let FamilyParams { p, q, r, .. } = proj.params;
    Ok(SteinitzReport {
        odd_primes: p % 2 == 1 && q % 2 == 1 && r % 2 == 1,
        h_order: proj.h.order() as u64,
        gamma_order: proj.gamma.order() as u64,
        primes,
        classes,
        all_checks_pass: ok,
    })
}

/// The subgroup of elements whose only nonzero coordinate is the C_r one.
pub fn acting_cyclic_subgroup(g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    family_params_of(g)?;
    let (x, _, y, _, _) = coordinates(g.element(0)).ok_or(Error::NotFamilyGroup)?;
    let generator = g.id_of(&assemble(x, 0, y, 0, 1))?;
    Ok(g.closure(&[generator]))
}
