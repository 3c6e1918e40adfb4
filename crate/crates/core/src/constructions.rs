//! Group builders: cyclic groups, field additive groups, direct and
//! semidirect products, scalar actions, and the metabelian family
//! `G(p,q,r;a,b) = (F_{p^a}⁺ ⋊ C_q × F_{q^b}⁺ ⋊ C_p) ⋊ C_r`.

use crate::error::{Error, Result};
use crate::field::{make_field_capped, FieldElement, FieldSpec};
use crate::group::{Action, Construction, ElemId, FiniteGroup, GroupElement, Limits};
use crate::numtheory::{is_prime, multiplicative_order, primes_up_to};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub fn cyclic(n: u32) -> Result<Arc<FiniteGroup>> {
    cyclic_with_limits(n, Limits::default())
}

pub fn cyclic_with_limits(n: u32, limits: Limits) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::BadParams("cyclic group order must be positive".into()));
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::enumerate_codes(Construction::Cyclic(n), gens, limits)
}

/// The additive group of a field, generated by the monomial basis.
pub fn field_additive(field: &Arc<FieldSpec>, limits: Limits) -> Result<Arc<FiniteGroup>> {
    let p = field.characteristic();
    let gens = (0..field.degree()).map(|i| p.pow(i)).collect();
    FiniteGroup::enumerate_codes(Construction::FieldAdd(field.clone()), gens, limits)
}

pub fn direct_product(left: &Arc<FiniteGroup>, right: &Arc<FiniteGroup>) -> Result<Arc<FiniteGroup>> {
    check_product_size(left, right)?;
    let mut gens: Vec<GroupElement> = left
        .generators()
        .iter()
        .map(|&g| GroupElement::pair(left.element(g), right.element(0)))
        .collect();
    gens.extend(
        right
            .generators()
            .iter()
            .map(|&g| GroupElement::pair(left.element(0), right.element(g))),
    );
    let limits = left.limits();
    FiniteGroup::enumerate(Construction::Direct(left.clone(), right.clone()), &gens, limits)
}

pub fn semidirect_product(
    kernel: &Arc<FiniteGroup>,
    acting: &Arc<FiniteGroup>,
    action: Action,
) -> Result<Arc<FiniteGroup>> {
    check_product_size(kernel, acting)?;
    action.verify(kernel, acting)?;
    let mut gens: Vec<GroupElement> = kernel
        .generators()
        .iter()
        .map(|&g| GroupElement::pair(kernel.element(g), acting.element(0)))
        .collect();
    gens.extend(
        acting
            .generators()
            .iter()
            .map(|&g| GroupElement::pair(kernel.element(0), acting.element(g))),
    );
    let construction = Construction::Semidirect {
        kernel: kernel.clone(),
        acting: acting.clone(),
        action: Arc::new(action),
    };
    FiniteGroup::enumerate(construction, &gens, kernel.limits())
}

fn check_product_size(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    let requested = a.order() as u128 * b.order() as u128;
    let cap = a.limits().element_cap.min(b.limits().element_cap);
    if requested > cap as u128 {
        return Err(Error::SizeCapExceeded { requested, cap });
    }
    Ok(())
}

fn field_of(group: &FiniteGroup) -> Result<&Arc<FieldSpec>> {
    match group.construction() {
        Construction::FieldAdd(f) => Ok(f),
        _ => Err(Error::InvalidAction("kernel is not a field additive group".into())),
    }
}

/// Kernel id -> kernel id map of multiplication by `u` on a field additive group.
fn scaling_map(group: &FiniteGroup, field: &FieldSpec, u: &FieldElement) -> Result<Vec<ElemId>> {
    let table = field.scaling_table(u)?;
    (0..group.order() as ElemId)
        .map(|h| {
            let GroupElement::FieldAdd(x) = group.element(h) else {
                unreachable!("field additive group element")
            };
            let scaled = field.decode(table[field.encode(&x) as usize]);
            group.id_of(&GroupElement::FieldAdd(scaled))
        })
        .collect()
}

/// Action of the cyclic group `acting` (order m) on a field additive group
/// where the generator multiplies by `u`, a unit of exact order m.
pub fn scalar_action(
    field_group: &FiniteGroup,
    acting: &FiniteGroup,
    u: &FieldElement,
) -> Result<Action> {
    let field = field_of(field_group)?;
    let m = acting.order() as u64;
    if field.is_zero(u) {
        return Err(Error::WrongOrder { expected: m, actual: 0 });
    }
    let actual = field.multiplicative_order(u)?;
    if actual != m {
        return Err(Error::WrongOrder { expected: m, actual });
    }
    if !matches!(acting.construction(), Construction::Cyclic(_)) {
        return Err(Error::InvalidAction("scalar actions need a cyclic acting group".into()));
    }
    let images: Vec<Vec<ElemId>> = if m == 1 {
        Vec::new()
    } else {
        vec![scaling_map(field_group, field, u)?]
    };
    Action::from_generator_images(field_group, acting, &images)
}

/// `F_{p^a}⁺ ⋊ C_m`, the generator of C_m acting by the canonical unit of order m.
pub fn field_by_cyclic(p: u32, a: u32, m: u32, limits: Limits) -> Result<Arc<FiniteGroup>> {
    let field = Arc::new(make_field_capped(p, a, limits.element_cap)?);
    let u = field.element_of_order(m as u64)?;
    let kernel = field_additive(&field, limits)?;
    let acting = cyclic_with_limits(m, limits)?;
    let action = scalar_action(&kernel, &acting, &u)?;
    semidirect_product(&kernel, &acting, action)
}

/// `C_n ⋊ C_m` with the generator of C_m acting by multiplication by `k`.
pub fn cyclic_by_cyclic(n: u32, m: u32, k: u32, limits: Limits) -> Result<Arc<FiniteGroup>> {
    let kernel = cyclic_with_limits(n, limits)?;
    let acting = cyclic_with_limits(m, limits)?;
    if crate::numtheory::gcd(k as u64, n as u64) != 1
        || crate::numtheory::pow_mod(k as u64, m as u64, n as u64) != 1 % n as u64
    {
        return Err(Error::InvalidAction(format!(
            "multiplication by {k} is not an automorphism of C{n} of order dividing {m}"
        )));
    }
    // ids of a cyclic group generated by 1 coincide with residues
    let images = if m > 1 {
        vec![(0..n).map(|h| ((h as u64 * k as u64) % n as u64) as ElemId).collect()]
    } else {
        Vec::new()
    };
    let action = Action::from_generator_images(&kernel, &acting, &images)?;
    semidirect_product(&kernel, &acting, action)
}

/// `(C_3 × C_3) ⋊ C_3`, the generator acting by the shear (x, y) ↦ (x + y, y).
/// Nonabelian of order 27, so not an A-group.
pub fn heisenberg_mod3(limits: Limits) -> Result<Arc<FiniteGroup>> {
    let c3 = cyclic_with_limits(3, limits)?;
    let kernel = direct_product(&c3, &c3)?;
    let acting = cyclic_with_limits(3, limits)?;
    let shear: Vec<ElemId> = (0..kernel.order() as ElemId)
        .map(|h| {
            let GroupElement::Pair(x, y) = kernel.element(h) else { unreachable!() };
            let (GroupElement::Cyclic(x), GroupElement::Cyclic(y)) = (*x, *y) else {
                unreachable!()
            };
            kernel
                .id_of(&GroupElement::pair(
                    GroupElement::Cyclic((x + y) % 3),
                    GroupElement::Cyclic(y),
                ))
                .unwrap()
        })
        .collect();
    let action = Action::from_generator_images(&kernel, &acting, &[shear])?;
    semidirect_product(&kernel, &acting, action)
}

/// Parameters of the family group: distinct primes p, q, r and degrees a, b
/// with qr | p^a − 1 and pr | q^b − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub a: u32,
    pub b: u32,
}

impl FamilyParams {
    pub fn new(p: u32, q: u32, r: u32, a: u32, b: u32) -> Result<FamilyParams> {
        let params = FamilyParams { p, q, r, a, b };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let FamilyParams { p, q, r, a, b } = *self;
        for x in [p, q, r] {
            if !is_prime(x as u64) {
                return Err(Error::BadParams(format!("{x} is not prime")));
            }
        }
        if p == q || q == r || p == r {
            return Err(Error::BadParams("p, q, r must be pairwise distinct".into()));
        }
        if a == 0 || b == 0 {
            return Err(Error::BadParams("a and b must be positive".into()));
        }
        let qr = q as u64 * r as u64;
        let pr = p as u64 * r as u64;
        let ord_a = multiplicative_order(p as u64, qr).expect("distinct primes are coprime");
        let ord_b = multiplicative_order(q as u64, pr).expect("distinct primes are coprime");
        if !(a as u64).is_multiple_of(ord_a) {
            return Err(Error::BadParams(format!(
                "qr = {qr} does not divide p^a - 1 = {p}^{a} - 1"
            )));
        }
        if !(b as u64).is_multiple_of(ord_b) {
            return Err(Error::BadParams(format!(
                "pr = {pr} does not divide q^b - 1 = {q}^{b} - 1"
            )));
        }
        Ok(())
    }

    /// p^{a+1} q^{b+1} r, or None on overflow.
    pub fn order(&self) -> Option<u128> {
        let pa = (self.p as u128).checked_pow(self.a + 1)?;
        let qb = (self.q as u128).checked_pow(self.b + 1)?;
        pa.checked_mul(qb)?.checked_mul(self.r as u128)
    }

    /// The parameters with the roles of p and q exchanged.
    pub fn mirror(&self) -> FamilyParams {
        FamilyParams { p: self.q, q: self.p, r: self.r, a: self.b, b: self.a }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.p, self.q, self.r, self.a, self.b)
    }
}

impl FromStr for FamilyParams {
    type Err = Error;

    /// Parses `"p,q,r,a,b"` and validates.
    fn from_str(s: &str) -> Result<FamilyParams> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::BadParams(format!("cannot parse '{s}': {e}")))?;
        let [p, q, r, a, b] = parts[..] else {
            return Err(Error::BadParams(format!("expected 5 comma-separated integers, got '{s}'")));
        };
        FamilyParams::new(p, q, r, a, b)
    }
}

/// `H_1 = F_{p^a}⁺ ⋊ C_q` and `H_2 = F_{q^b}⁺ ⋊ C_p`, the two factors of the
/// family kernel. Only q | p^a − 1 and p | q^b − 1 are required.
pub fn family_components(
    p: u32,
    q: u32,
    a: u32,
    b: u32,
    limits: Limits,
) -> Result<(Arc<FiniteGroup>, Arc<FiniteGroup>)> {
    let h1 = field_by_cyclic(p, a, q, limits).map_err(as_bad_params)?;
    let h2 = field_by_cyclic(q, b, p, limits).map_err(as_bad_params)?;
    Ok((h1, h2))
}

fn as_bad_params(e: Error) -> Error {
    match e {
        Error::OrderDoesNotDivide { m, group_order } => {
            Error::BadParams(format!("{m} does not divide {group_order}"))
        }
        Error::NonPrime(x) => Error::BadParams(format!("{x} is not prime")),
        other => other,
    }
}

/// Builds `G(p,q,r;a,b)`. C_r acts on both field coordinates by units of
/// order r and trivially on the C_q and C_p coordinates.
pub fn build_family_group(params: FamilyParams, limits: Limits) -> Result<Arc<FiniteGroup>> {
    params.validate()?;
    let requested = params.order().unwrap_or(u128::MAX);
    if requested > limits.element_cap as u128 {
        return Err(Error::SizeCapExceeded { requested, cap: limits.element_cap });
    }
    let FamilyParams { p, q, r, a, b } = params;
    let f1 = Arc::new(make_field_capped(p, a, limits.element_cap)?);
    let f2 = Arc::new(make_field_capped(q, b, limits.element_cap)?);
    let h1 = semidirect_over_field(&f1, q, limits)?;
    let h2 = semidirect_over_field(&f2, p, limits)?;
    let kernel = direct_product(&h1, &h2)?;
    let acting = cyclic_with_limits(r, limits)?;

    let rho1 = f1.scaling_table(&f1.element_of_order(r as u64)?)?;
    let rho2 = f2.scaling_table(&f2.element_of_order(r as u64)?)?;
    let scale = |h: &FiniteGroup, field: &FieldSpec, table: &[u32], id: ElemId| -> GroupElement {
        let GroupElement::Pair(x, c) = h.element(id) else { unreachable!() };
        let GroupElement::FieldAdd(x) = *x else { unreachable!() };
        let y = field.decode(table[field.encode(&x) as usize]);
        GroupElement::Pair(Box::new(GroupElement::FieldAdd(y)), c)
    };
    let image: Vec<ElemId> = (0..kernel.order() as ElemId)
        .map(|id| {
            let GroupElement::Pair(x1, x2) = kernel.element(id) else { unreachable!() };
            let y1 = scale(&h1, &f1, &rho1, h1.id_of(&x1)?);
            let y2 = scale(&h2, &f2, &rho2, h2.id_of(&x2)?);
            kernel.id_of(&GroupElement::pair(y1, y2))
        })
        .collect::<Result<_>>()?;
    let action = Action::from_generator_images(&kernel, &acting, &[image])?;
    semidirect_product(&kernel, &acting, action)
}

fn semidirect_over_field(field: &Arc<FieldSpec>, m: u32, limits: Limits) -> Result<Arc<FiniteGroup>> {
    let kernel = field_additive(field, limits)?;
    let acting = cyclic_with_limits(m, limits)?;
    let u = field.element_of_order(m as u64)?;
    let action = scalar_action(&kernel, &acting, &u)?;
    semidirect_product(&kernel, &acting, action)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub params: FamilyParams,
    pub order: u64,
}

/// All family parameter tuples with group order at most `max_order`,
/// sorted by order and then by parameters.
///
/// For each ordered triple of distinct primes the minimal degrees are the
/// multiplicative orders of p mod qr and q mod pr; multiples of them are
/// included while the order still fits.
pub fn search_family(max_order: u64) -> Vec<FamilyEntry> {
    let mut out = Vec::new();
    let primes = primes_up_to(max_order / 6);
    let bound = max_order as u128;
    for &p in &primes {
        for &q in &primes {
            if p * q * 2 > max_order {
                break;
            }
            if q == p {
                continue;
            }
            for &r in &primes {
                if p * q * r > max_order {
                    break;
                }
                if r == p || r == q {
                    continue;
                }
                // a, b ≥ 1 forces order ≥ p² q² r
                if (p * p) as u128 * (q * q) as u128 * r as u128 > bound {
                    continue;
                }
                let a0 = multiplicative_order(p, q * r).unwrap() as u32;
                let b0 = multiplicative_order(q, p * r).unwrap() as u32;
                let mut a = a0;
                loop {
                    let base = FamilyParams { p: p as u32, q: q as u32, r: r as u32, a, b: b0 };
                    match base.order() {
                        Some(o) if o <= bound => {}
                        _ => break,
                    }
                    let mut b = b0;
                    loop {
                        let params = FamilyParams { b, ..base };
                        match params.order() {
                            Some(o) if o <= bound => {
                                out.push(FamilyEntry { params, order: o as u64 })
                            }
                            _ => break,
                        }
                        b += b0;
                    }
                    a += a0;
                }
            }
        }
    }
    out.sort_by(|x, y| x.order.cmp(&y.order).then(x.params.cmp(&y.params)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use std::collections::BTreeMap;

    fn order_multiset(g: &FiniteGroup) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &o in g.element_orders() {
            *m.entry(o).or_default() += 1;
        }
        m
    }

    #[test]
    fn small_products() {
        let c2 = cyclic(2).unwrap();
        let c3 = cyclic(3).unwrap();
        let c6 = direct_product(&c2, &c3).unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        assert_eq!(order_multiset(&c6), order_multiset(&cyclic(6).unwrap()));
        let s3 = cyclic_by_cyclic(3, 2, 2, Limits::default()).unwrap();
        assert!(!s3.is_abelian());
        let h = heisenberg_mod3(Limits::default()).unwrap();
        assert_eq!(h.order(), 27);
        assert!(!h.is_abelian());
        assert!(h.element_orders().iter().all(|&o| o == 1 || o == 3));
    }

    #[test]
    fn scalar_actions() {
        let f = Arc::new(make_field(5, 2).unwrap());
        let k = field_additive(&f, Limits::default()).unwrap();
        let c1 = cyclic(1).unwrap();
        let trivial = scalar_action(&k, &c1, &f.one()).unwrap();
        assert!((0..25).all(|h| trivial.apply(0, h) == h));
        let c2 = cyclic(2).unwrap();
        let minus_one = f.neg(&f.one()).unwrap();
        let inv = scalar_action(&k, &c2, &minus_one).unwrap();
        assert!((0..25).all(|h| inv.apply(1, h) == k.invert(h)));
        assert_eq!(
            scalar_action(&k, &cyclic(3).unwrap(), &minus_one).unwrap_err(),
            Error::WrongOrder { expected: 3, actual: 2 }
        );
    }

    #[test]
    fn order_five_unit_on_f16_has_no_fixed_points() {
        let g = field_by_cyclic(2, 4, 5, Limits::default()).unwrap();
        let Construction::Semidirect { action, .. } = g.construction() else { panic!() };
        for gamma in 1..5 {
            assert!((1..16).all(|h| action.apply(gamma, h) != h));
        }
    }

    #[test]
    fn field_by_cyclic_errors() {
        assert!(matches!(field_by_cyclic(5, 1, 3, Limits::default()), Err(Error::OrderDoesNotDivide { .. })));
        assert!(matches!(cyclic_by_cyclic(5, 2, 2, Limits::default()), Err(Error::InvalidAction(_))));
        assert!(family_components(5, 2, 1, 4, Limits::default()).is_ok());
        assert!(matches!(family_components(5, 3, 1, 4, Limits::default()), Err(Error::BadParams(_))));
    }

    #[test]
    fn parameter_validation() {
        let e = FamilyParams::new(5, 2, 3, 1, 4).unwrap_err();
        assert_eq!(e, Error::BadParams("qr = 6 does not divide p^a - 1 = 5^1 - 1".into()));
        assert!(FamilyParams::new(4, 2, 3, 2, 4).is_err());
        assert!(FamilyParams::new(5, 5, 3, 2, 4).is_err());
        assert!(FamilyParams::new(5, 2, 3, 0, 4).is_err());
        let params: FamilyParams = "5, 2, 3, 2, 4".parse().unwrap();
        assert_eq!(params.order(), Some(12000));
        assert_eq!(params.to_string(), "5,2,3,2,4");
        assert_eq!(params.mirror(), FamilyParams { p: 2, q: 5, r: 3, a: 4, b: 2 });
        assert!(params.mirror().validate().is_ok());
        assert!("5,2,3".parse::<FamilyParams>().is_err());
    }

    /// Independent of `search_family`: brute force over small parameters
    /// testing the divisibility conditions directly.
    fn search_oracle(max_order: u64) -> Vec<(u64, FamilyParams)> {
        let primes: Vec<u128> = (2..200u128).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
        let mut out = Vec::new();
        for &p in &primes {
            for &q in &primes {
                for &r in &primes {
                    if p == q || q == r || p == r {
                        continue;
                    }
                    for a in 1..=16u32 {
                        if p.pow(a) > max_order as u128 {
                            break;
                        }
                        for b in 1..=16u32 {
                            if q.pow(b) > max_order as u128 {
                                break;
                            }
                            let order = p.pow(a + 1) * q.pow(b + 1) * r;
                            if order > max_order as u128 {
                                continue;
                            }
                            if (p.pow(a) - 1) % (q * r) == 0 && (q.pow(b) - 1) % (p * r) == 0 {
                                let params = FamilyParams { p: p as u32, q: q as u32, r: r as u32, a, b };
                                out.push((order as u64, params));
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn search_matches_brute_force() {
        assert!(search_family(100).is_empty());
        for max in [11_999, 12_000, 30_000, 100_000] {
            let got: Vec<(u64, FamilyParams)> =
                search_family(max).into_iter().map(|e| (e.order, e.params)).collect();
            assert_eq!(got, search_oracle(max), "max_order {max}");
        }
        let orders: Vec<u64> = search_family(30_000).iter().map(|e| e.order).collect();
        assert_eq!(orders, vec![12000, 12000, 18816, 18816, 27378, 27378]);
    }

    #[test]
    fn family_group_and_mirror() {
        let params = FamilyParams::new(5, 2, 3, 2, 4).unwrap();
        let g = build_family_group(params, Limits::default()).unwrap();
        let m = build_family_group(params.mirror(), Limits::default()).unwrap();
        assert_eq!(g.order(), 12000);
        assert_eq!(order_multiset(&g), order_multiset(&m));
        let small = Limits { element_cap: 11_999, ..Limits::default() };
        assert_eq!(
            build_family_group(params, small).unwrap_err(),
            Error::SizeCapExceeded { requested: 12000, cap: 11_999 }
        );
    }
}
