//! Exact arithmetic in GF(p^h) with a polynomial representation, primitive
//! element search, and cubic extension towers.
//!
//! Elements are coefficient vectors of length `h` over GF(p), constant term
//! first. The canonical enumeration orders elements lexicographically on
//! `(c0, c1, ..., c_{h-1})` with the constant coefficient most significant;
//! this makes every search in this module deterministic.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Decomposes a prime power `q = p^h`; errors otherwise.
pub fn prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = fs[0];
    let mut h = 0usize;
    let mut x = q;
    while x > 1 {
        x /= p;
        h += 1;
    }
    Ok((p, h))
}

// ---------------------------------------------------------------------------
// Polynomials over GF(p): coefficient vectors, constant term first, no
// implied length. Used only for modulus bookkeeping, so plain schoolbook
// arithmetic is enough.
// ---------------------------------------------------------------------------

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_deg(a: &[u64]) -> usize {
    let mut d = a.len() - 1;
    while d > 0 && a[d] == 0 {
        d -= 1;
    }
    d
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` mod the monic polynomial `m`.
fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let md = poly_deg(m);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while poly_deg(&r) >= md && !(poly_deg(&r) == 0 && r[0] == 0) {
        let rd = poly_deg(&r);
        if rd < md {
            break;
        }
        let c = r[rd];
        if c == 0 {
            break;
        }
        for i in 0..=md {
            let idx = rd - md + i;
            r[idx] = (r[idx] + p - c * m[i] % p) % p;
        }
        poly_trim(&mut r);
        if rd == 0 {
            break;
        }
    }
    r.truncate(md.max(1));
    while r.len() < md.max(1) {
        r.push(0);
    }
    r
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Irreducibility over GF(p) by trial division with every monic polynomial
/// of degree up to half the degree of `m`. Desk-scale fields only.
fn poly_irreducible(p: u64, m: &[u64]) -> bool {
    let d = poly_deg(m);
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for dd in 1..=(d / 2) {
        // monic divisors of degree dd, low coefficients enumerated in
        // highest-degree-first lexicographic order (order is irrelevant here)
        let total = p.pow(dd as u32);
        for idx in 0..total {
            let mut div = vec![0u64; dd + 1];
            div[dd] = 1;
            let mut v = idx;
            for i in 0..dd {
                div[dd - 1 - i] = v % p;
                v /= p;
            }
            if poly_is_zero(&poly_rem(p, m, &div)) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// FiniteField
// ---------------------------------------------------------------------------

/// GF(p^h) as GF(p)[x] modulo a monic irreducible polynomial of degree h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    h: usize,
    /// Monic modulus, length `h + 1`, constant term first.
    modulus: Vec<u64>,
    q: u64,
    id: u64,
}

/// An element of a [`FiniteField`], tagged with the owning field's id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: u64,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

fn field_fingerprint(p: u64, h: usize, modulus: &[u64]) -> u64 {
    let mut acc = 0xcbf29ce484222325u64;
    let mut mix = |v: u64| {
        acc ^= v;
        acc = acc.wrapping_mul(0x100000001b3);
    };
    mix(p);
    mix(h as u64);
    for &c in modulus {
        mix(c);
    }
    acc
}

impl FiniteField {
    /// Builds GF(p^h). If no modulus is given, the lexicographically smallest
    /// irreducible monic polynomial of degree h is found by exhaustive search
    /// (coefficients read from the highest degree below the leading term down
    /// to the constant).
    pub fn new(p: u64, h: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(h >= 1, "extension degree must be at least 1");
        let modulus = match modulus {
            Some(mut m) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                if m.len() != h + 1 || m[h] != 1 {
                    return Err(Error::BadModulusDegree {
                        expected: h,
                        got: poly_deg(&m),
                    });
                }
                if !poly_irreducible(p, &m) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => Self::smallest_irreducible(p, h),
        };
        let q = p.pow(h as u32);
        let id = field_fingerprint(p, h, &modulus);
        Ok(FiniteField { p, h, modulus, q, id })
    }

    /// Convenience constructor from a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, h) = prime_power(q)?;
        FiniteField::new(p, h, None)
    }

    fn smallest_irreducible(p: u64, h: usize) -> Vec<u64> {
        if h == 1 {
            return vec![0, 1]; // x
        }
        let total = p.pow(h as u32);
        for idx in 0..total {
            let mut m = vec![0u64; h + 1];
            m[h] = 1;
            let mut v = idx;
            for i in 0..h {
                m[h - 1 - i] = v % p;
                v /= p;
            }
            if poly_irreducible(p, &m) {
                return m;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.h
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.id,
            coeffs: vec![0; self.h],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.element_from_index(self.index_one())
    }

    fn index_one(&self) -> u64 {
        // (c0, .., c_{h-1}) = (1, 0, .., 0) sits at index p^{h-1}
        self.p.pow(self.h as u32 - 1)
    }

    /// The i-th element in the canonical enumeration, i in [0, q).
    pub fn element_from_index(&self, i: u64) -> FieldElement {
        assert!(i < self.q);
        let mut coeffs = vec![0u64; self.h];
        let mut v = i;
        for j in (0..self.h).rev() {
            coeffs[j] = v % self.p;
            v /= self.p;
        }
        FieldElement {
            field: self.id,
            coeffs,
        }
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let mut v = 0u64;
        for j in 0..self.h {
            v = v * self.p + a.coeffs[j];
        }
        v
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.element_from_index(i))
    }

    /// Embeds an integer via repeated addition of 1 (i.e. the prime subfield).
    pub fn from_integer(&self, n: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n % self.p;
        e
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.field != self.id {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(FieldElement {
            field: self.id,
            coeffs,
        })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        Ok(FieldElement {
            field: self.id,
            coeffs,
        })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let prod = poly_mul(self.p, &a.coeffs, &b.coeffs);
        let mut r = poly_rem(self.p, &prod, &self.modulus);
        r.resize(self.h, 0);
        Ok(FieldElement {
            field: self.id,
            coeffs: r,
        })
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2); q is tiny so square-and-multiply is plenty
        self.pow(a, self.q as i64 - 2)
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        let bi = self.inv(b)?;
        self.mul(a, &bi)
    }

    /// `a^e` for an arbitrary integer exponent, reduced mod q-1 for nonzero
    /// bases. `0^0 = 1`; a negative exponent of zero is a division by zero.
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        self.check(a)?;
        if self.is_zero(a) {
            return match e.cmp(&0) {
                std::cmp::Ordering::Equal => Ok(self.one()),
                std::cmp::Ordering::Greater => Ok(self.zero()),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let qm1 = (self.q - 1) as i64;
        let e = if qm1 == 0 { 0 } else { e.rem_euclid(qm1) } as u64;
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FieldElement) -> Result<u64> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while ord % r == 0 && self.is_one(&self.pow(a, (ord / r) as i64)?) {
                ord /= r;
            }
        }
        Ok(ord)
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.coeffs[0] == 1 && a.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// First element in the canonical enumeration with multiplicative order
    /// q - 1, verified through the prime factorization of q - 1.
    pub fn primitive_element(&self) -> FieldElement {
        if self.q == 2 {
            return self.one();
        }
        for e in self.elements() {
            if self.is_zero(&e) {
                continue;
            }
            if self.element_order(&e).unwrap() == self.q - 1 {
                return e;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

// ---------------------------------------------------------------------------
// Cubic extension tower
// ---------------------------------------------------------------------------

/// GF(q^3) as F[x] modulo a monic irreducible cubic over F. Elements are
/// coefficient triples over the base field, constant term first.
#[derive(Debug, Clone)]
pub struct CubicExtension {
    base: FiniteField,
    /// Monic cubic, 4 base-field coefficients, constant term first.
    modulus: Vec<FieldElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    coeffs: [FieldElement; 3],
}

impl ExtElement {
    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }
}

impl CubicExtension {
    /// Finds the lexicographically first irreducible monic cubic over the
    /// base field (a cubic is irreducible iff it has no root) and builds the
    /// tower. Coefficients are ranked by the base field's canonical
    /// enumeration, highest degree first.
    pub fn new(base: FiniteField) -> Self {
        let q = base.order();
        let mut modulus = None;
        'outer: for c2 in 0..q {
            for c1 in 0..q {
                for c0 in 0..q {
                    let cand = vec![
                        base.element_from_index(c0),
                        base.element_from_index(c1),
                        base.element_from_index(c2),
                        base.one(),
                    ];
                    if Self::cubic_has_root(&base, &cand) {
                        continue;
                    }
                    modulus = Some(cand);
                    break 'outer;
                }
            }
        }
        CubicExtension {
            modulus: modulus.expect("irreducible cubics exist over every finite field"),
            base,
        }
    }

    fn cubic_has_root(base: &FiniteField, m: &[FieldElement]) -> bool {
        base.elements().any(|x| {
            let mut acc = base.zero();
            for c in m.iter().rev() {
                acc = base.add(&base.mul(&acc, &x).unwrap(), c).unwrap();
            }
            base.is_zero(&acc)
        })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn order(&self) -> u64 {
        let q = self.base.order();
        q * q * q
    }

    pub fn modulus(&self) -> &[FieldElement] {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            coeffs: [self.base.zero(), self.base.zero(), self.base.zero()],
        }
    }

    pub fn one(&self) -> ExtElement {
        ExtElement {
            coeffs: [self.base.one(), self.base.zero(), self.base.zero()],
        }
    }

    /// Embedding of the base field as the constant polynomials.
    pub fn embed(&self, a: &FieldElement) -> ExtElement {
        ExtElement {
            coeffs: [a.clone(), self.base.zero(), self.base.zero()],
        }
    }

    pub fn is_zero(&self, a: &ExtElement) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }

    /// The i-th element in the canonical enumeration: base-field indices
    /// `(i0, i1, i2)` with the constant coefficient most significant.
    pub fn element_from_index(&self, i: u64) -> ExtElement {
        let q = self.base.order();
        let i2 = i % q;
        let i1 = (i / q) % q;
        let i0 = i / (q * q);
        ExtElement {
            coeffs: [
                self.base.element_from_index(i0),
                self.base.element_from_index(i1),
                self.base.element_from_index(i2),
            ],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.order()).map(move |i| self.element_from_index(i))
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement {
            coeffs: [
                f.add(&a.coeffs[0], &b.coeffs[0]).unwrap(),
                f.add(&a.coeffs[1], &b.coeffs[1]).unwrap(),
                f.add(&a.coeffs[2], &b.coeffs[2]).unwrap(),
            ],
        }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let f = &self.base;
        // schoolbook product, degree <= 4
        let mut prod = vec![f.zero(); 5];
        for i in 0..3 {
            for j in 0..3 {
                let t = f.mul(&a.coeffs[i], &b.coeffs[j]).unwrap();
                prod[i + j] = f.add(&prod[i + j], &t).unwrap();
            }
        }
        // reduce by the monic cubic: x^3 = -(m2 x^2 + m1 x + m0)
        for d in (3..5).rev() {
            let c = prod[d].clone();
            if f.is_zero(&c) {
                continue;
            }
            prod[d] = f.zero();
            for i in 0..3 {
                let t = f.mul(&c, &self.modulus[i]).unwrap();
                prod[d - 3 + i] = f.sub(&prod[d - 3 + i], &t).unwrap();
            }
        }
        ExtElement {
            coeffs: [prod[0].clone(), prod[1].clone(), prod[2].clone()],
        }
    }

    pub fn pow(&self, a: &ExtElement, e: u64) -> ExtElement {
        let n = self.order() - 1;
        let e = if self.is_zero(a) { e } else { e % n.max(1) };
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        if self.is_zero(a) {
            return if e == 0 { self.one() } else { self.zero() };
        }
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn is_one(&self, a: &ExtElement) -> bool {
        self.base.is_one(&a.coeffs[0])
            && self.base.is_zero(&a.coeffs[1])
            && self.base.is_zero(&a.coeffs[2])
    }

    pub fn element_order(&self, a: &ExtElement) -> u64 {
        assert!(!self.is_zero(a));
        let n = self.order() - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord % r == 0 && self.is_one(&self.pow(a, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    /// First element in the canonical enumeration of order q^3 - 1.
    pub fn primitive_element(&self) -> ExtElement {
        for e in self.elements() {
            if self.is_zero(&e) {
                continue;
            }
            if self.element_order(&e) == self.order() - 1 {
                return e;
            }
        }
        unreachable!()
    }

    /// Whether `x` lies in the 2-dimensional GF(q)-subspace spanned by
    /// `1` and `theta`, i.e. `x = c0 + c1 * theta` with `c0, c1` in GF(q).
    pub fn in_span_one_theta(&self, theta: &ExtElement, x: &ExtElement) -> bool {
        let f = &self.base;
        let (t1, t2) = (&theta.coeffs[1], &theta.coeffs[2]);
        let (x1, x2) = (&x.coeffs[1], &x.coeffs[2]);
        // c1 is pinned by the degree-1 and degree-2 components
        let c1 = if !f.is_zero(t1) {
            let c1 = f.div(x1, t1).unwrap();
            if f.mul(&c1, t2).unwrap() != *x2 {
                return false;
            }
            c1
        } else if !f.is_zero(t2) {
            if !f.is_zero(x1) {
                return false;
            }
            f.div(x2, t2).unwrap()
        } else {
            // theta lies in the base field; span(1, theta) is 1-dimensional
            return f.is_zero(x1) && f.is_zero(x2);
        };
        let _ = c1; // c0 = x0 - c1 * t0 always exists
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_is_the_unique_irreducible_quadratic() {
        let f = FiniteField::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]); // x^2 + x + 1
    }

    #[test]
    fn gf5_is_the_prime_field() {
        let f = FiniteField::new(5, 1, None).unwrap();
        assert_eq!(f.order(), 5);
        // agrees with integer arithmetic mod 5
        for a in 0..5u64 {
            for b in 0..5u64 {
                let ea = f.from_integer(a);
                let eb = f.from_integer(b);
                assert_eq!(f.add(&ea, &eb).unwrap(), f.from_integer(a + b));
                assert_eq!(f.mul(&ea, &eb).unwrap(), f.from_integer(a * b));
            }
        }
    }

    #[test]
    fn gf27_frobenius_fixed_points() {
        let f = FiniteField::new(3, 3, None).unwrap();
        assert_eq!(f.order(), 27);
        for e in f.elements() {
            assert_eq!(f.pow(&e, 27).unwrap(), e);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            FiniteField::new(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(
            FiniteField::new(4, 1, None),
            Err(Error::NotPrime(4))
        ));
    }

    #[test]
    fn gf5_power_and_identity() {
        let f = FiniteField::new(5, 1, None).unwrap();
        let two = f.from_integer(2);
        assert_eq!(f.pow(&two, 4).unwrap(), f.one()); // 16 mod 5
        for a in f.elements() {
            assert_eq!(f.mul(&a, &f.one()).unwrap(), a);
        }
    }

    #[test]
    fn gf4_x_squared() {
        let f = FiniteField::new(2, 2, None).unwrap();
        // x is the element with coefficients (0, 1)
        let x = f
            .elements()
            .find(|e| e.coeffs() == [0, 1])
            .unwrap();
        let xsq = f.mul(&x, &x).unwrap();
        assert_eq!(xsq.coeffs(), &[1, 1]); // x + 1
    }

    #[test]
    fn primitive_elements_small_fields() {
        let f5 = FiniteField::new(5, 1, None).unwrap();
        assert_eq!(f5.primitive_element(), f5.from_integer(2));
        let f7 = FiniteField::new(7, 1, None).unwrap();
        assert_eq!(f7.primitive_element(), f7.from_integer(3));
        let f2 = FiniteField::new(2, 1, None).unwrap();
        assert_eq!(f2.primitive_element(), f2.one());
    }

    #[test]
    fn primitive_element_order_checks() {
        for q in [4u64, 8, 9, 16, 25, 27] {
            let f = FiniteField::of_order(q).unwrap();
            let g = f.primitive_element();
            assert_eq!(f.pow(&g, (q - 1) as i64).unwrap(), f.one());
            for r in prime_factors(q - 1) {
                assert!(!f.is_one(&f.pow(&g, ((q - 1) / r) as i64).unwrap()));
            }
        }
    }

    #[test]
    fn frobenius_all_small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128] {
            let f = FiniteField::of_order(q).unwrap();
            for e in f.elements() {
                assert_eq!(f.pow(&e, q as i64).unwrap(), e, "a^q != a in GF({q})");
            }
        }
    }

    #[test]
    fn division_and_inverse() {
        for q in [7u64, 8, 9] {
            let f = FiniteField::of_order(q).unwrap();
            for a in f.elements() {
                if f.is_zero(&a) {
                    assert!(matches!(f.inv(&a), Err(Error::DivisionByZero)));
                    continue;
                }
                let ai = f.inv(&a).unwrap();
                assert!(f.is_one(&f.mul(&a, &ai).unwrap()));
                let na = f.neg(&a).unwrap();
                assert!(f.is_zero(&f.add(&a, &na).unwrap()));
            }
        }
    }

    #[test]
    fn mismatched_fields_rejected() {
        let f5 = FiniteField::new(5, 1, None).unwrap();
        let f7 = FiniteField::new(7, 1, None).unwrap();
        let a = f5.from_integer(2);
        let b = f7.from_integer(2);
        assert!(matches!(f5.add(&a, &b), Err(Error::FieldMismatch)));
    }

    #[test]
    fn cubic_extension_of_gf2() {
        let f = FiniteField::new(2, 1, None).unwrap();
        let ext = CubicExtension::new(f);
        assert_eq!(ext.order(), 8);
        // modulus x^3 + x + 1: coefficients (1, 1, 0) below the leading term
        let m: Vec<u64> = ext.modulus()[..3].iter().map(|c| c.coeffs()[0]).collect();
        assert_eq!(m, vec![1, 1, 0]);
    }

    #[test]
    fn cubic_extension_of_gf3_subfield() {
        let f = FiniteField::new(3, 1, None).unwrap();
        let ext = CubicExtension::new(f);
        assert_eq!(ext.order(), 27);
        // the base field is exactly the set of elements fixed by e -> e^3
        for e in ext.elements() {
            let cubed = ext.pow(&e, 3);
            let in_base = ext.base().is_zero(&e.coeffs()[1]) && ext.base().is_zero(&e.coeffs()[2]);
            assert_eq!(cubed == e, in_base);
        }
    }

    #[test]
    fn cubic_extension_of_gf4_primitive_order() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let ext = CubicExtension::new(f);
        assert_eq!(ext.order(), 64);
        let theta = ext.primitive_element();
        assert_eq!(ext.element_order(&theta), 63);
    }

    #[test]
    fn span_membership_counts() {
        // |span(1, theta) \ {0}| = q^2 - 1 for any theta outside the base
        for q in [2u64, 3, 4] {
            let f = FiniteField::of_order(q).unwrap();
            let ext = CubicExtension::new(f);
            let theta = ext.primitive_element();
            let cnt = ext
                .elements()
                .filter(|x| !ext.is_zero(x) && ext.in_span_one_theta(&theta, x))
                .count() as u64;
            assert_eq!(cnt, q * q - 1);
        }
    }
}
