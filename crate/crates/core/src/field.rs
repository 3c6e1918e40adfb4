//! Arithmetic in F_{p^a} as polynomials over Z_p modulo a monic irreducible.
//!
//! Elements are coefficient vectors, constant term first. The integer
//! encoding `sum c_i p^i` orders elements and polynomials throughout the
//! crate, so every "first" choice below is taken in that order.

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_divisors};

/// Default cap on the number of field elements.
pub const DEFAULT_FIELD_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    degree: u32,
    /// Monic, length `degree + 1`, constant term first.
    modulus: Vec<u32>,
    order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

/// Builds F_{p^a} with the default element cap.
pub fn make_field(p: u32, a: u32) -> Result<FieldSpec> {
    make_field_capped(p, a, DEFAULT_FIELD_CAP)
}

pub fn make_field_capped(p: u32, a: u32, cap: u64) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    if a == 0 {
        return Err(Error::BadParams("field degree must be positive".into()));
    }
    let order = (p as u128).checked_pow(a).unwrap_or(u128::MAX);
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::SizeCapExceeded { requested: order, cap });
    }
    let order = order as u32;
    // Monic candidates in ascending encoding of their lower coefficients.
    let modulus = (0..order)
        .map(|code| {
            let mut poly = decode_digits(code, p, a);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(p, poly))
        .expect("an irreducible polynomial of every degree exists");
    Ok(FieldSpec { p, degree: a, modulus, order })
}

fn decode_digits(mut code: u32, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// Remainder of `num` modulo a monic `den`, both constant-term first.
fn poly_rem_monic(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dl = den.len();
    let p = p as u64;
    while r.len() >= dl {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - dl;
        if lead != 0 {
            for (i, &d) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * d as u64) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d);
        for code in 0..count {
            let mut divisor = decode_digits(code, p, d);
            divisor.push(1);
            if poly_rem_monic(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements, p^a.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.degree as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The constant `n mod p`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// The class of x. Zero for prime fields, whose modulus is x itself.
    pub fn variable(&self) -> FieldElement {
        if self.degree == 1 {
            self.from_int(-(self.modulus[0] as i64))
        } else {
            let mut e = self.zero();
            e.coeffs[1] = 1;
            e
        }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let e = FieldElement { coeffs: coeffs.to_vec() };
        self.check(&e)?;
        Ok(e)
    }

    pub fn encode(&self, x: &FieldElement) -> u32 {
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn decode(&self, code: u32) -> FieldElement {
        debug_assert!(code < self.order);
        FieldElement { coeffs: decode_digits(code, self.p, self.degree) }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|c| self.decode(c))
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if x.coeffs.len() != self.degree as usize || x.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn is_zero(&self, x: &FieldElement) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn neg(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        let coeffs = x.coeffs.iter().map(|&a| (self.p - a) % self.p).collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.add(x, &self.neg(y)?)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        let a = self.degree as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * a - 1];
        for (i, &xi) in x.coeffs.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut coeffs = poly_rem_monic(&prod, &self.modulus, self.p);
        coeffs.resize(a, 0);
        Ok(FieldElement { coeffs })
    }

    /// Square-and-multiply; negative exponents go through the inverse.
    pub fn pow(&self, x: &FieldElement, exp: i64) -> Result<FieldElement> {
        self.check(x)?;
        let base = if exp < 0 { self.inv(x)? } else { x.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        if self.is_zero(x) {
            return Err(Error::ZeroInverse);
        }
        self.pow(x, self.order as i64 - 2)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: &FieldElement) -> Result<u64> {
        self.check(x)?;
        if self.is_zero(x) {
            return Err(Error::ZeroInverse);
        }
        let mut n = self.order as u64 - 1;
        for l in prime_divisors(n) {
            while n.is_multiple_of(l) && self.pow(x, (n / l) as i64)? == self.one() {
                n /= l;
            }
        }
        Ok(n)
    }

    /// First nonzero element (by encoding) generating the multiplicative group.
    pub fn canonical_generator(&self) -> FieldElement {
        let target = self.order as u64 - 1;
        (1..self.order)
            .map(|c| self.decode(c))
            .find(|x| self.multiplicative_order(x).unwrap() == target)
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// `canonical_generator^((p^a - 1)/m)`, an element of exact order m.
    pub fn element_of_order(&self, m: u64) -> Result<FieldElement> {
        let group_order = self.order as u64 - 1;
        if m == 0 || !group_order.is_multiple_of(m) {
            return Err(Error::OrderDoesNotDivide { m, group_order });
        }
        self.pow(&self.canonical_generator(), (group_order / m) as i64)
    }

    /// Table of x ↦ u·x on encodings.
    pub fn scaling_table(&self, u: &FieldElement) -> Result<Vec<u32>> {
        self.check(u)?;
        (0..self.order)
            .map(|c| Ok(self.encode(&self.mul(u, &self.decode(c))?)))
            .collect()
    }
}
