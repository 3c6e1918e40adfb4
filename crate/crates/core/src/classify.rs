//! Decision procedures: A-groups, the inductive A′ class, normal Hall
//! subgroups, direct factorizations, and the splitting of two-prime
//! A-groups into a direct product of two coprime-kernel extensions.

use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup, Subgroup};
use crate::numtheory::{factorize, prime_divisors, prime_part};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowInfo {
    pub prime: u64,
    pub order: u64,
    pub abelian: bool,
    pub normal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: u64,
    /// (prime, exponent) pairs, ascending.
    pub factorization: Vec<(u64, u32)>,
    pub abelian: bool,
    pub solvable: bool,
    pub derived_length: u32,
    pub metabelian: bool,
    /// Orders of G, G′, G″, … down to the stable term.
    pub derived_orders: Vec<u64>,
    pub sylow: Vec<SylowInfo>,
}

pub fn structure_report(g: &Arc<FiniteGroup>) -> Result<StructureReport> {
    let series = g.derived_series();
    let solvable = series.last().is_some_and(|s| s.is_trivial());
    let derived_length = (series.len() - 1) as u32;
    let sylow = prime_divisors(g.order() as u64)
        .into_iter()
        .map(|prime| {
            let s = g.sylow(prime)?;
            Ok(SylowInfo {
                prime,
                order: s.order() as u64,
                abelian: s.is_abelian(),
                normal: g.normalizer(&s).is_whole(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureReport {
        order: g.order() as u64,
        factorization: factorize(g.order() as u64),
        abelian: g.is_abelian(),
        solvable,
        derived_length,
        metabelian: solvable && derived_length <= 2,
        derived_orders: series.iter().map(|s| s.order() as u64).collect(),
        sylow,
    })
}

/// Every Sylow subgroup abelian. One Sylow per prime suffices since they
/// are all conjugate.
pub fn is_a_group(g: &Arc<FiniteGroup>) -> bool {
    prime_divisors(g.order() as u64)
        .into_iter()
        .all(|l| g.sylow(l).expect("prime divides order").is_abelian())
}

fn is_pi_number(mut n: u64, pi: &[u64]) -> bool {
    for &l in pi {
        while n.is_multiple_of(l) {
            n /= l;
        }
    }
    n == 1
}

/// The normal Hall π-subgroup, if it exists: the set of π-elements is a
/// subgroup of order the π-part of |G| exactly when it exists, and it is
/// then normal since that set is conjugation invariant.
pub fn normal_hall(g: &Arc<FiniteGroup>, pi: &[u64]) -> Option<Subgroup> {
    let order = g.order() as u64;
    let pi_part: u64 = pi.iter().map(|&l| prime_part(order, l)).product();
    let orders = g.element_orders();
    let candidates: Vec<ElemId> = (0..g.order() as ElemId)
        .filter(|&x| is_pi_number(orders[x as usize] as u64, pi))
        .collect();
    if candidates.len() as u64 != pi_part {
        return None;
    }
    let s = g.closure(&candidates);
    if s.order() != candidates.len() {
        return None;
    }
    debug_assert!(s.members().iter().all(|&x| is_pi_number(orders[x as usize] as u64, pi)));
    Some(s)
}

/// Unordered pairs of nontrivial proper normal subgroups with trivial
/// intersection and |N₁|·|N₂| = |G|, i.e. internal direct decompositions.
pub fn direct_factor_pairs(g: &Arc<FiniteGroup>) -> Result<Vec<(Subgroup, Subgroup)>> {
    let normals = g.normal_subgroups()?;
    let n = g.order();
    let mut pairs = Vec::new();
    for (i, a) in normals.iter().enumerate() {
        if a.is_trivial() || a.is_whole() {
            continue;
        }
        for b in &normals[i + 1..] {
            if b.is_trivial() || b.is_whole() || a.order() * b.order() != n {
                continue;
            }
            if a.members().iter().filter(|&&x| b.contains(x)).count() == 1 {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs)
}

/// How a group was shown to be (or failed to be) an A′-group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Derivation {
    /// Rule 1: the group is abelian.
    Abelian { order: u64 },
    /// Rule 2: an abelian normal Hall subgroup whose quotient (isomorphic
    /// to any complement) is an A′-group.
    CoprimeExtension {
        order: u64,
        kernel_primes: Vec<u64>,
        kernel_order: u64,
        quotient: Box<Derivation>,
    },
    /// Rule 3: a direct product of two A′-groups.
    DirectProduct {
        order: u64,
        left: Box<Derivation>,
        right: Box<Derivation>,
    },
    /// Every rule was tried and none applies.
    Failed { order: u64, attempts: Vec<Attempt> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Attempt {
    NoNormalHall { primes: Vec<u64> },
    NonabelianHall { primes: Vec<u64>, order: u64 },
    QuotientNotAPrime { primes: Vec<u64>, quotient_order: u64 },
    FactorNotAPrime { left_order: u64, right_order: u64 },
}

impl Derivation {
    pub fn holds(&self) -> bool {
        !matches!(self, Derivation::Failed { .. })
    }
}

/// Nonempty proper subsets of `primes`, by size then lexicographically.
fn proper_prime_subsets(primes: &[u64]) -> Vec<Vec<u64>> {
    let n = primes.len();
    let mut subsets: Vec<Vec<u64>> = (1..(1u32 << n) - 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// Decides membership in the inductive A′ class.
///
/// Rule 2 is applied with the quotient G/H in place of a complement, which
/// is isomorphic to it by Schur–Zassenhaus; membership is treated as an
/// isomorphism invariant. Recursion terminates because every step passes
/// to a strictly smaller group.
pub fn is_a_prime_group(g: &Arc<FiniteGroup>) -> Result<Derivation> {
    let order = g.order() as u64;
    if g.is_abelian() {
        return Ok(Derivation::Abelian { order });
    }
    let mut attempts = Vec::new();
    let primes = prime_divisors(order);
    for pi in proper_prime_subsets(&primes) {
        let Some(hall) = normal_hall(g, &pi) else {
            attempts.push(Attempt::NoNormalHall { primes: pi });
            continue;
        };
        if !hall.is_abelian() {
            attempts.push(Attempt::NonabelianHall { primes: pi, order: hall.order() as u64 });
            continue;
        }
        let quotient = g.quotient(&hall)?;
        let sub = is_a_prime_group(&quotient)?;
        if sub.holds() {
            return Ok(Derivation::CoprimeExtension {
                order,
                kernel_primes: pi,
                kernel_order: hall.order() as u64,
                quotient: Box::new(sub),
            });
        }
        attempts.push(Attempt::QuotientNotAPrime {
            primes: pi,
            quotient_order: quotient.order() as u64,
        });
    }
    for (a, b) in direct_factor_pairs(g)? {
        let left = is_a_prime_group(&FiniteGroup::embed(&a)?)?;
        if left.holds() {
            let right = is_a_prime_group(&FiniteGroup::embed(&b)?)?;
            if right.holds() {
                return Ok(Derivation::DirectProduct {
                    order,
                    left: Box::new(left),
                    right: Box::new(right),
                });
            }
        }
        attempts.push(Attempt::FactorNotAPrime {
            left_order: a.order() as u64,
            right_order: b.order() as u64,
        });
    }
    Ok(Derivation::Failed { order, attempts })
}

/// Runtime evidence that `G = K_p × K_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub primes: Vec<u64>,
    pub k_p_order: u64,
    pub k_q_order: u64,
    pub both_normal: bool,
    pub trivial_intersection: bool,
    pub product_is_whole: bool,
    /// Each factor has abelian Sylow subgroups and a normal Sylow subgroup
    /// for the other prime.
    pub factors_split: bool,
}

impl DecompositionCertificate {
    pub fn passes(&self) -> bool {
        self.both_normal && self.trivial_intersection && self.product_is_whole && self.factors_split
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub k_p: Subgroup,
    pub k_q: Subgroup,
    pub certificate: DecompositionCertificate,
}

fn invariant(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DecompositionInvariantFailed(what.into()))
    }
}

/// Splits an A-group whose order has at most two prime divisors p < q into
/// normal subgroups K_p, K_q with G = K_p × K_q.
///
/// K_p is the preimage, under G → G/S_q with S_q the q-Sylow of G′, of the
/// fixed points of a q-Sylow acting on the (normal) p-Sylow of G/S_q. Those
/// fixed points complement the derived subgroup of G/S_q inside the
/// p-Sylow; the identity is checked rather than assumed.
pub fn two_prime_decompose(g: &Arc<FiniteGroup>) -> Result<Decomposition> {
    let primes = prime_divisors(g.order() as u64);
    if primes.len() > 2 {
        return Err(Error::TooManyPrimes(primes.len()));
    }
    if !is_a_group(g) {
        return Err(Error::NotAGroup);
    }
    let (k_p, k_q) = if primes.len() < 2 {
        invariant(g.is_abelian(), "a one-prime A-group is abelian")?;
        (g.whole(), g.trivial_subgroup())
    } else {
        let derived = g.whole().derived_subgroup();
        invariant(derived.is_abelian(), "derived subgroup is abelian")?;
        let (p, q) = (primes[0], primes[1]);
        (split_factor(g, &derived, p, q)?, split_factor(g, &derived, q, p)?)
    };
    let certificate = certify(g, &primes, &k_p, &k_q)?;
    invariant(certificate.passes(), "certificate")?;
    Ok(Decomposition { k_p, k_q, certificate })
}

/// Sylow subgroup, or the trivial subgroup when the prime does not divide.
fn sylow_or_trivial(s: &Subgroup, prime: u64) -> Result<Subgroup> {
    if (s.order() as u64).is_multiple_of(prime) {
        s.sylow(prime)
    } else {
        Ok(s.group().trivial_subgroup())
    }
}

fn split_factor(g: &Arc<FiniteGroup>, derived: &Subgroup, p: u64, q: u64) -> Result<Subgroup> {
    let s_q = sylow_or_trivial(derived, q)?;
    let gt = g.quotient(&s_q)?;
    let p_t = gt.sylow(p)?;
    invariant(p_t.is_normal(), "p-Sylow of G/S_q is normal")?;
    let q_t = sylow_or_trivial(&gt.whole(), q)?;
    let gt_derived = gt.whole().derived_subgroup();
    invariant(gt_derived.is_subset_of(&p_t), "derived subgroup of G/S_q lies in its p-Sylow")?;
    let f_p = p_t.centralizer_of(q_t.generators());
    invariant(f_p.intersection(&gt_derived).is_trivial(), "F_p meets (G/S_q)' trivially")?;
    invariant(
        f_p.order() * gt_derived.order() == p_t.order(),
        "F_p and (G/S_q)' fill the p-Sylow",
    )?;
    invariant(f_p.is_normal(), "F_p is normal in G/S_q")?;
    let preimage: Vec<ElemId> = (0..g.order() as ElemId)
        .filter(|&x| f_p.contains(gt.quotient_image(x).expect("quotient group")))
        .collect();
    Subgroup::from_members(g, preimage)
        .map_err(|_| Error::DecompositionInvariantFailed("preimage of F_p is a subgroup".into()))
}

fn certify(
    g: &Arc<FiniteGroup>,
    primes: &[u64],
    k_p: &Subgroup,
    k_q: &Subgroup,
) -> Result<DecompositionCertificate> {
    let factor_splits = |k: &Subgroup, other: Option<u64>| -> Result<bool> {
        let kg = FiniteGroup::embed(k)?;
        let sylows_abelian = is_a_group(&kg);
        let normal_other = match other {
            Some(l) if (kg.order() as u64).is_multiple_of(l) => normal_hall(&kg, &[l]).is_some(),
            _ => true,
        };
        Ok(sylows_abelian && normal_other)
    };
    let (p, q) = (primes.first().copied(), primes.get(1).copied());
    Ok(DecompositionCertificate {
        primes: primes.to_vec(),
        k_p_order: k_p.order() as u64,
        k_q_order: k_q.order() as u64,
        both_normal: k_p.is_normal() && k_q.is_normal(),
        trivial_intersection: k_p.intersection(k_q).is_trivial(),
        product_is_whole: k_p.order() * k_q.order() == g.order(),
        factors_split: factor_splits(k_p, q)? && factor_splits(k_q, p)?,
    })
}
