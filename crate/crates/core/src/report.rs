//! Machine-readable reports for the command-line tool. Text output is
//! rendered from the same structures.

use crate::classify::{
    direct_factor_pairs, is_a_group, is_a_prime_group, normal_hall, structure_report,
    two_prime_decompose, DecompositionCertificate, Derivation, SylowInfo,
};
use crate::constructions::{build_family_group, FamilyEntry, FamilyParams};
use crate::error::Result;
use crate::group::{FiniteGroup, Limits};
use crate::numtheory::{factorize, prime_divisors};
use crate::steinitz::{acting_cyclic_subgroup, family_projection, steinitz_report, SteinitzReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSection {
    pub factorization: Vec<(u64, u32)>,
    pub abelian: bool,
    pub solvable: bool,
    pub derived_length: u32,
    pub metabelian: bool,
    pub derived_orders: Vec<u64>,
    pub a_group: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerCheck {
    pub order: u64,
    pub expected_order: u64,
    /// The centralizer has exactly the C_q × C_p × C_r coordinate elements.
    pub equals_cyclic_coordinates: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSection {
    pub normal_subgroup_orders: Vec<u64>,
    /// Orders of (N₁, N₂) for every internal direct decomposition.
    pub direct_factor_pairs: Vec<(u64, u64)>,
    pub centralizer_of_cr: CentralizerCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallRow {
    pub primes: Vec<u64>,
    pub order: Option<u64>,
    pub abelian: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct APrimeSection {
    pub is_a_prime: bool,
    pub normal_hall: Vec<HallRow>,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: FamilyParams,
    pub order: u64,
    pub structure: StructureSection,
    pub sylow: Vec<SylowInfo>,
    pub factorizations: FactorizationSection,
    pub a_prime: APrimeSection,
    pub steinitz: SteinitzReport,
}

impl VerificationReport {
    /// Named pass/fail checks derived from the report content.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        let expected_order = self.params.order().map(|o| o as u64);
        vec![
            ("order is p^(a+1) q^(b+1) r", expected_order == Some(self.order)),
            ("A-group", self.structure.a_group),
            (
                "metabelian and nonabelian",
                self.structure.metabelian && self.structure.derived_length == 2,
            ),
            ("no normal Sylow subgroup", self.sylow.iter().all(|s| !s.normal)),
            ("not a direct product", self.factorizations.direct_factor_pairs.is_empty()),
            ("not an A'-group", !self.a_prime.is_a_prime),
            (
                "centralizer of C_r is C_q x C_p x C_r",
                self.factorizations.centralizer_of_cr.order
                    == self.factorizations.centralizer_of_cr.expected_order
                    && self.factorizations.centralizer_of_cr.equals_cyclic_coordinates,
            ),
            ("order-l element checks", self.steinitz.all_checks_pass),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "family group G({})", self.params);
        let _ = writeln!(s, "order: {} = {}", self.order, format_factorization(&self.structure.factorization));
        let _ = writeln!(
            s,
            "derived series orders: {:?} (derived length {})",
            self.structure.derived_orders, self.structure.derived_length
        );
        let _ = writeln!(s, "sylow subgroups:");
        for info in &self.sylow {
            let _ = writeln!(
                s,
                "  {:>3}: order {:>6}  abelian {:<5}  normal {}",
                info.prime, info.order, info.abelian, info.normal
            );
        }
        let _ = writeln!(s, "normal subgroup orders: {:?}", self.factorizations.normal_subgroup_orders);
        let _ = writeln!(s, "direct factor pairs: {:?}", self.factorizations.direct_factor_pairs);
        let c = &self.factorizations.centralizer_of_cr;
        let _ = writeln!(
            s,
            "centralizer of C_r: order {} (expected {}), equals coordinate subgroup: {}",
            c.order, c.expected_order, c.equals_cyclic_coordinates
        );
        let _ = writeln!(s, "normal Hall subgroups:");
        for row in &self.a_prime.normal_hall {
            match (row.order, row.abelian) {
                (Some(o), Some(ab)) => {
                    let _ = writeln!(s, "  {:?}: order {o}, abelian {ab}", row.primes);
                }
                _ => {
                    let _ = writeln!(s, "  {:?}: none", row.primes);
                }
            }
        }
        let _ = writeln!(s, "A'-group: {}", self.a_prime.is_a_prime);
        let st = &self.steinitz;
        let _ = writeln!(s, "H order {}, Gamma order {}, odd primes {}", st.h_order, st.gamma_order, st.odd_primes);
        for p in &st.primes {
            let _ = writeln!(
                s,
                "  l = {:>3}: sylow exponent {}, {} elements of order l ({} case a, {} case b)",
                p.prime, p.sylow_exponent, p.elements_of_order, p.case_a_elements, p.case_b_elements
            );
        }
        for row in &st.classes {
            let exponent = row.exponent.map_or_else(|| format!("{}/2", row.exponent_doubled), |e| e.to_string());
            let _ = writeln!(
                s,
                "    class of {:>6} (l = {}, size {}): case {:?}, exponent {}, check {}",
                row.representative,
                row.prime,
                row.size,
                row.case,
                exponent,
                if row.passes() { "ok" } else { "FAILED" }
            );
        }
        let _ = writeln!(s, "checks:");
        for (name, ok) in self.checks() {
            let _ = writeln!(s, "  [{}] {name}", if ok { "pass" } else { "FAIL" });
        }
        s
    }
}

fn format_factorization(f: &[(u64, u32)]) -> String {
    if f.is_empty() {
        return "1".into();
    }
    f.iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Builds the family group and fills every report section.
pub fn verify_family(params: FamilyParams, limits: Limits) -> Result<VerificationReport> {
    let g = build_family_group(params, limits)?;
    verify_group(params, &g)
}

pub fn verify_group(params: FamilyParams, g: &Arc<FiniteGroup>) -> Result<VerificationReport> {
    let report = structure_report(g)?;
    let structure = StructureSection {
        factorization: report.factorization.clone(),
        abelian: report.abelian,
        solvable: report.solvable,
        derived_length: report.derived_length,
        metabelian: report.metabelian,
        derived_orders: report.derived_orders.clone(),
        a_group: is_a_group(g),
    };
    let normals = g.normal_subgroups()?;
    let pairs = direct_factor_pairs(g)?
        .into_iter()
        .map(|(a, b)| (a.order() as u64, b.order() as u64))
        .collect();
    let proj = family_projection(g)?;
    let cr = acting_cyclic_subgroup(g)?;
    let centralizer = g.centralizer(cr.generators());
    let centralizer_of_cr = CentralizerCheck {
        order: centralizer.order() as u64,
        expected_order: params.p as u64 * params.q as u64 * params.r as u64,
        equals_cyclic_coordinates: centralizer == proj.gamma,
    };
    let primes = prime_divisors(g.order() as u64);
    let mut normal_hall_rows = Vec::new();
    for mask in 1..(1u32 << primes.len()) - 1 {
        let pi: Vec<u64> = (0..primes.len()).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).collect();
        let hall = normal_hall(g, &pi);
        normal_hall_rows.push(HallRow {
            primes: pi,
            order: hall.as_ref().map(|h| h.order() as u64),
            abelian: hall.as_ref().map(|h| h.is_abelian()),
        });
    }
    normal_hall_rows.sort_by(|a, b| a.primes.len().cmp(&b.primes.len()).then_with(|| a.primes.cmp(&b.primes)));
    let derivation = is_a_prime_group(g)?;
    Ok(VerificationReport {
        params,
        order: g.order() as u64,
        structure,
        sylow: report.sylow,
        factorizations: FactorizationSection {
            normal_subgroup_orders: normals.iter().map(|n| n.order() as u64).collect(),
            direct_factor_pairs: pairs,
            centralizer_of_cr,
        },
        a_prime: APrimeSection {
            is_a_prime: derivation.holds(),
            normal_hall: normal_hall_rows,
            derivation,
        },
        steinitz: steinitz_report(g)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub max_order: u64,
    pub entries: Vec<FamilyEntry>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>10}  p,q,r,a,b", "order");
        for e in &self.entries {
            let _ = writeln!(s, "{:>10}  {}", e.order, e.params);
        }
        let _ = writeln!(s, "{} parameter tuples with order <= {}", self.entries.len(), self.max_order);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub expression: String,
    pub order: u64,
    pub factorization: Vec<(u64, u32)>,
    pub certificate: DecompositionCertificate,
    pub a_prime: Derivation,
}

impl DecompositionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn render_text(&self) -> String {
        let c = &self.certificate;
        let mut s = String::new();
        let _ = writeln!(s, "group: {}", self.expression);
        let _ = writeln!(s, "order: {} = {}", self.order, format_factorization(&self.factorization));
        let _ = writeln!(s, "primes: {:?}", c.primes);
        let _ = writeln!(s, "K_p order: {}", c.k_p_order);
        let _ = writeln!(s, "K_q order: {}", c.k_q_order);
        let _ = writeln!(s, "both normal: {}", c.both_normal);
        let _ = writeln!(s, "trivial intersection: {}", c.trivial_intersection);
        let _ = writeln!(s, "product is whole group: {}", c.product_is_whole);
        let _ = writeln!(s, "factors split: {}", c.factors_split);
        let _ = writeln!(s, "A'-group: {}", self.a_prime.holds());
        s
    }
}

pub fn decompose_group(expression: &str, g: &Arc<FiniteGroup>) -> Result<DecompositionReport> {
    let d = two_prime_decompose(g)?;
    Ok(DecompositionReport {
        expression: expression.to_string(),
        order: g.order() as u64,
        factorization: factorize(g.order() as u64),
        certificate: d.certificate,
        a_prime: is_a_prime_group(g)?,
    })
}
