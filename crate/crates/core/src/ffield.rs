//! Finite fields as explicit polynomial quotients.
//!
//! A base field F_q (q = p^k) is F_p[X]/(g) where g is the canonical
//! modulus: the lexicographically smallest monic irreducible of degree k,
//! coefficients compared from the constant term up with residues ordered
//! 0..p-1. Extensions F_{q^d} are built the same way over F_q. Elements
//! are coefficient vectors; every operation is exact.
//!
//! The module also provides the operations on irreducible polynomials that
//! label semisimple classes: enumeration (optionally restricted to nonzero
//! constant term), counting by the necklace formula
//! `N_q(d) = (1/d) sum_{e | d} mu(e) q^{d/e}`, minimal polynomials of
//! extension elements, multiplicative orders, and the power map
//! `f -> min_poly(alpha^r)` for a root `alpha` of `f`.

use std::sync::Arc;

use crate::combinat::{divisors, factorize, moebius};
use crate::error::{Error, Result};

/// Cap on the number of elements of a constructed base field.
pub const FIELD_SIZE_CAP: u64 = 1 << 20;
/// Cap on q^d for operations that walk every element of an extension
/// (generator search tables, discrete logs, exhaustive enumeration).
pub const ENUMERATION_CAP: u64 = 1 << 20;
/// Lookup tables are built for composite fields up to this size.
const TABLE_CAP: u64 = 512;

/// An element of a base field, stored as its packed index
/// `sum_i c_i p^i` where `(c_0, ..., c_{k-1})` are the residue coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement(pub u64);

#[derive(Debug)]
struct FieldTables {
    add: Vec<u64>,
    mul: Vec<u64>,
    neg: Vec<u64>,
    inv: Vec<u64>,
}

/// A base field F_{p^k} with its canonical modulus.
#[derive(Debug, Clone)]
pub struct FieldDescriptor {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus over F_p, residues constant term first, length k+1.
    modulus: Vec<u64>,
    tables: Option<Arc<FieldTables>>,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldDescriptor {}

/// Wire form of a field: {"p":…, "k":…, "modulus":[…]} with the modulus
/// residues constant term first. Deserialization insists on the canonical
/// modulus so that equal fields always have equal wire forms.
#[derive(serde::Serialize, serde::Deserialize)]
struct FieldDescriptorDto {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
}

impl serde::Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FieldDescriptorDto {
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = FieldDescriptorDto::deserialize(deserializer)?;
        let field = FieldDescriptor::build(dto.p, dto.k).map_err(serde::de::Error::custom)?;
        if field.modulus != dto.modulus {
            return Err(serde::de::Error::custom(format!(
                "modulus {:?} is not the canonical modulus of F_{{{}^{}}}",
                dto.modulus, dto.p, dto.k
            )));
        }
        Ok(field)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into (p, k); rejects anything else.
pub fn prime_power_decompose(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let factors = factorize(q);
    if factors.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok(factors[0])
}

impl FieldDescriptor {
    /// Builds F_{p^k} with the canonical modulus.
    pub fn build(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::DegenerateSize("extension degree k = 0".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= FIELD_SIZE_CAP)
            .ok_or_else(|| Error::DegenerateSize(format!("p^k = {p}^{k} exceeds the field cap")))?;
        let modulus = if k == 1 {
            vec![0, 1] // X itself: F_p[X]/(X) = F_p
        } else {
            canonical_prime_modulus(p, k)?
        };
        let mut field = FieldDescriptor {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if k > 1 && q <= TABLE_CAP {
            field.tables = Some(Arc::new(field.build_tables()));
        }
        Ok(field)
    }

    /// Builds the field with q elements (q must be a prime power).
    pub fn from_q(q: u64) -> Result<Self> {
        let (p, k) = prime_power_decompose(q)?;
        Self::build(p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Modulus residues, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement(0)
    }
    pub fn one(&self) -> FqElement {
        FqElement(1)
    }
    pub fn is_zero(&self, a: FqElement) -> bool {
        a.0 == 0
    }

    /// Element from its packed index.
    pub fn element(&self, index: u64) -> FqElement {
        assert!(index < self.q, "element index out of range");
        FqElement(index)
    }

    /// Residue coordinates, constant term first, length k.
    pub fn residues(&self, a: FqElement) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut x = a.0;
        for _ in 0..self.k {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn pack(&self, residues: &[u64]) -> FqElement {
        let mut x = 0u64;
        for &c in residues.iter().rev() {
            x = x * self.p + c % self.p;
        }
        FqElement(x)
    }

    /// Lexicographic comparison of coefficient vectors, constant term first.
    pub fn lex_cmp(&self, a: FqElement, b: FqElement) -> std::cmp::Ordering {
        self.residues(a).cmp(&self.residues(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.q).map(FqElement)
    }

    fn build_tables(&self) -> FieldTables {
        let q = self.q as usize;
        let mut add = vec![0u64; q * q];
        let mut mul = vec![0u64; q * q];
        let mut neg = vec![0u64; q];
        let mut inv = vec![0u64; q];
        for a in 0..self.q {
            neg[a as usize] = self.neg_direct(FqElement(a)).0;
            for b in a..self.q {
                let s = self.add_direct(FqElement(a), FqElement(b)).0;
                let m = self.mul_direct(FqElement(a), FqElement(b)).0;
                add[(a * self.q + b) as usize] = s;
                add[(b * self.q + a) as usize] = s;
                mul[(a * self.q + b) as usize] = m;
                mul[(b * self.q + a) as usize] = m;
                if m == 1 {
                    inv[a as usize] = b;
                    inv[b as usize] = a;
                }
            }
        }
        FieldTables { add, mul, neg, inv }
    }

    fn add_direct(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.k == 1 {
            return FqElement((a.0 + b.0) % self.p);
        }
        let (ra, rb) = (self.residues(a), self.residues(b));
        let sum: Vec<u64> = ra.iter().zip(&rb).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&sum)
    }

    fn neg_direct(&self, a: FqElement) -> FqElement {
        if self.k == 1 {
            return FqElement((self.p - a.0) % self.p);
        }
        let ra = self.residues(a);
        let neg: Vec<u64> = ra.iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack(&neg)
    }

    fn mul_direct(&self, a: FqElement, b: FqElement) -> FqElement {
        if self.k == 1 {
            return FqElement(a.0 * b.0 % self.p);
        }
        let (ra, rb) = (self.residues(a), self.residues(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ra.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce mod the monic modulus
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in self.modulus.iter().enumerate().take(k) {
                let idx = i - k + j;
                prod[idx] = (prod[idx] + c * (self.p - mj)) % self.p;
            }
        }
        prod.truncate(k);
        self.pack(&prod)
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        match &self.tables {
            Some(t) => FqElement(t.add[(a.0 * self.q + b.0) as usize]),
            None => self.add_direct(a, b),
        }
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        match &self.tables {
            Some(t) => FqElement(t.neg[a.0 as usize]),
            None => self.neg_direct(a),
        }
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        match &self.tables {
            Some(t) => FqElement(t.mul[(a.0 * self.q + b.0) as usize]),
            None => self.mul_direct(a, b),
        }
    }

    pub fn inv(&self, a: FqElement) -> Result<FqElement> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        if let Some(t) = &self.tables {
            return Ok(FqElement(t.inv[a.0 as usize]));
        }
        // a^(q-2) in the multiplicative group
        Ok(self.pow(a, self.q - 2))
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FqElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(order_in_group(self.q - 1, |e| self.pow(a, e).0 == 1))
    }

    /// Irreducibility over this field (Rabin's test). The input may be
    /// non-monic; the zero polynomial is rejected.
    pub fn is_irreducible(&self, f: &[FqElement]) -> Result<bool> {
        let f = trim(f);
        if f.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let n = f.len() - 1;
        if n == 0 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        let f = self.monicize(&f)?;
        // h = X^(q^i) mod f, computed by iterated q-th powering
        let x = vec![self.zero(), self.one()];
        let mut h = x.clone();
        let prime_divs: Vec<usize> = factorize(n as u64).iter().map(|&(p, _)| p as usize).collect();
        for i in 1..=n {
            h = self.poly_powmod(&h, self.q, &f);
            if i < n && prime_divs.contains(&(n / i)) && i * (n / i) == n {
                // i = n / t for a prime t | n: gcd(X^(q^i) - X, f) must be 1
                let diff = self.poly_sub(&h, &x);
                let g = self.poly_gcd(&diff, &f);
                if g.len() != 1 {
                    return Ok(false);
                }
            }
            if i == n {
                let diff = self.poly_sub(&h, &x);
                if !trim(&diff).is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // ---- polynomial helpers over this field (dense, constant term first) ----

    fn monicize(&self, f: &[FqElement]) -> Result<Vec<FqElement>> {
        let f = trim(f);
        if f.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let lead = *f.last().unwrap();
        if lead == self.one() {
            return Ok(f);
        }
        let li = self.inv(lead)?;
        Ok(f.iter().map(|&c| self.mul(c, li)).collect())
    }

    pub(crate) fn poly_sub(&self, a: &[FqElement], b: &[FqElement]) -> Vec<FqElement> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(self.zero());
            let y = b.get(i).copied().unwrap_or(self.zero());
            out.push(self.sub(x, y));
        }
        out
    }

    pub(crate) fn poly_mul(&self, a: &[FqElement], b: &[FqElement]) -> Vec<FqElement> {
        let (a, b) = (trim(a), trim(b));
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        out
    }

    /// Remainder of a by the monic polynomial m.
    pub(crate) fn poly_rem(&self, a: &[FqElement], m: &[FqElement]) -> Vec<FqElement> {
        let m = trim(m);
        assert!(*m.last().expect("modulus nonzero") == self.one(), "modulus must be monic");
        let d = m.len() - 1;
        let mut r = trim(a);
        while r.len() > d {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if c.0 != 0 {
                for (j, &mj) in m.iter().enumerate().take(d) {
                    r[shift + j] = self.sub(r[shift + j], self.mul(c, mj));
                }
            }
            r.pop();
            r = trim(&r);
        }
        r
    }

    fn poly_powmod(&self, base: &[FqElement], mut e: u64, m: &[FqElement]) -> Vec<FqElement> {
        let mut acc = vec![self.one()];
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    fn poly_gcd(&self, a: &[FqElement], b: &[FqElement]) -> Vec<FqElement> {
        let mut a = trim(a);
        let mut b = trim(b);
        while !b.is_empty() {
            let bm = self.monicize(&b).expect("nonzero");
            let r = self.poly_rem(&a, &bm);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monicize(&a).expect("nonzero")
        }
    }
}

fn trim(f: &[FqElement]) -> Vec<FqElement> {
    let mut v = f.to_vec();
    while v.last().is_some_and(|c| c.0 == 0) {
        v.pop();
    }
    v
}

/// Order of an element in a cyclic group of order `n`, given a predicate
/// deciding whether the e-th power is the identity.
fn order_in_group(n: u64, is_identity_power: impl Fn(u64) -> bool) -> u64 {
    let mut order = n;
    for (p, _) in factorize(n) {
        while order.is_multiple_of(p) && is_identity_power(order / p) {
            order /= p;
        }
    }
    order
}

/// Finds the canonical modulus for F_{p^k} over F_p: the lexicographically
/// smallest monic irreducible of degree k (constant term compared first).
fn canonical_prime_modulus(p: u64, k: u32) -> Result<Vec<u64>> {
    let fp = FieldDescriptor::build(p, 1)?;
    let total = p.pow(k);
    for rank in 0..total {
        // ascending rank is lexicographic order with c_0 most significant
        let mut f = decode_lex_rank(p, k, rank);
        f.push(FqElement(1));
        if fp.is_irreducible(&f)? {
            return Ok(f.iter().map(|c| c.0).collect());
        }
    }
    unreachable!("irreducibles of every degree exist over F_p")
}

/// Builds F_{p^k} with the canonical modulus. Free-function alias for
/// `FieldDescriptor::build`, convenient as a bare constructor.
pub fn build_field(p: u64, k: u32) -> Result<FieldDescriptor> {
    FieldDescriptor::build(p, k)
}

/// Number of monic irreducible degree-d polynomials over F_q, by the
/// necklace formula `(1/d) sum_{e | d} mu(e) q^{d/e}`.
pub fn count_irreducibles(q: u64, d: u32) -> Result<u64> {
    prime_power_decompose(q)?;
    if d == 0 {
        return Err(Error::DegenerateSize("degree d = 0".into()));
    }
    let mut acc: i128 = 0;
    for e in divisors(d as u64) {
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        let power = (q as i128).checked_pow(d / e as u32)
            .ok_or_else(|| Error::DegenerateSize("q^d overflows".into()))?;
        acc += mu as i128 * power;
    }
    let n = acc / d as i128;
    assert!(acc % d as i128 == 0 && n >= 0, "necklace sum must divide exactly");
    Ok(n as u64)
}

/// A monic irreducible polynomial over a base field, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreduciblePoly {
    coeffs: Vec<FqElement>,
}

/// Polynomials serialize as plain arrays of packed coefficient indices,
/// constant term first and leading one included. Parsing needs the field
/// for the irreducibility check, so it goes through the label DTOs.
impl serde::Serialize for IrreduciblePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(serializer)
    }
}

impl IrreduciblePoly {
    /// Validates monicity and irreducibility.
    pub fn new(field: &FieldDescriptor, coeffs: Vec<FqElement>) -> Result<Self> {
        let t = trim(&coeffs);
        if t.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if t.len() != coeffs.len() || *t.last().unwrap() != field.one() {
            return Err(Error::InvalidLabel("polynomial must be monic".into()));
        }
        if !field.is_irreducible(&coeffs)? {
            return Err(Error::NotIrreducible);
        }
        Ok(IrreduciblePoly { coeffs })
    }

    fn new_unchecked(coeffs: Vec<FqElement>) -> Self {
        IrreduciblePoly { coeffs }
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> FqElement {
        self.coeffs[0]
    }

    /// Packed indices of the coefficients, constant term first; this is the
    /// serialization form and also the canonical sort key (per degree).
    pub fn indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    /// Canonical order: degree first, then coefficient vectors
    /// lexicographically from the constant term up.
    pub fn canonical_cmp(&self, other: &Self, field: &FieldDescriptor) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let a: Vec<Vec<u64>> = self.coeffs.iter().map(|&c| field.residues(c)).collect();
            let b: Vec<Vec<u64>> = other.coeffs.iter().map(|&c| field.residues(c)).collect();
            a.cmp(&b)
        })
    }

    /// The linear polynomial X - a.
    pub fn linear(field: &FieldDescriptor, a: FqElement) -> Self {
        IrreduciblePoly {
            coeffs: vec![field.neg(a), field.one()],
        }
    }
}

/// All monic irreducibles of degree d over the field, canonically sorted.
/// With `nonzero_constant_only` the polynomial X is excluded (for d >= 2
/// irreducibility already forces a nonzero constant term).
pub fn enumerate_irreducibles(
    field: &FieldDescriptor,
    d: u32,
    nonzero_constant_only: bool,
) -> Result<Vec<IrreduciblePoly>> {
    if d == 0 {
        return Err(Error::DegenerateSize("degree d = 0".into()));
    }
    let q = field.q();
    let total = q
        .checked_pow(d)
        .filter(|&t| t <= ENUMERATION_CAP)
        .ok_or_else(|| Error::DegenerateSize(format!("q^d = {q}^{d} exceeds the enumeration cap")))?;
    let mut out = Vec::new();
    for rank in 0..total {
        let mut coeffs = decode_lex_rank(q, d, rank);
        coeffs.push(field.one());
        if nonzero_constant_only && coeffs[0].0 == 0 {
            continue;
        }
        if field.is_irreducible(&coeffs)? {
            out.push(IrreduciblePoly::new_unchecked(coeffs));
        }
    }
    // ranks ascend lexicographically already, but sort defensively
    out.sort_by(|a, b| a.canonical_cmp(b, field));
    Ok(out)
}

/// Decodes a lexicographic rank into coefficients (c_0, ..., c_{d-1}), the
/// constant term being the most significant digit.
fn decode_lex_rank(q: u64, d: u32, rank: u64) -> Vec<FqElement> {
    let mut digits = Vec::with_capacity(d as usize);
    let mut r = rank;
    for i in (0..d).rev() {
        let base = q.pow(i);
        digits.push(FqElement(r / base));
        r %= base;
    }
    digits
}

/// An extension F_{q^d} = F_q[Y]/(modulus) over a base field.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: FieldDescriptor,
    d: u32,
    modulus: Vec<FqElement>,
    size: u64,
}

/// An element of an extension field: coefficients over the base field,
/// constant term first, length d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtFieldElement {
    pub coeffs: Vec<FqElement>,
}

impl ExtField {
    /// Builds the quotient by a given monic irreducible modulus.
    pub fn new(base: FieldDescriptor, modulus: Vec<FqElement>) -> Result<Self> {
        let t = trim(&modulus);
        if t.len() != modulus.len() || modulus.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if *modulus.last().unwrap() != base.one() {
            return Err(Error::InvalidLabel("modulus must be monic".into()));
        }
        if !base.is_irreducible(&modulus)? {
            return Err(Error::NotIrreducible);
        }
        let d = (modulus.len() - 1) as u32;
        let size = base
            .q()
            .checked_pow(d)
            .ok_or_else(|| Error::DegenerateSize("extension size overflows".into()))?;
        Ok(ExtField {
            base,
            d,
            modulus,
            size,
        })
    }

    /// Builds F_{q^d} with the canonical (lex-smallest) modulus over F_q.
    pub fn canonical(base: FieldDescriptor, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::DegenerateSize("extension degree d = 0".into()));
        }
        let q = base.q();
        let total = q
            .checked_pow(d)
            .ok_or_else(|| Error::DegenerateSize("q^d overflows".into()))?;
        for rank in 0..total {
            let mut coeffs = decode_lex_rank(q, d, rank);
            coeffs.push(base.one());
            if base.is_irreducible(&coeffs)? {
                return ExtField::new(base, coeffs);
            }
        }
        unreachable!("irreducibles of every degree exist")
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }
    pub fn degree(&self) -> u32 {
        self.d
    }
    /// Number of elements q^d.
    pub fn size(&self) -> u64 {
        self.size
    }
    pub fn modulus(&self) -> &[FqElement] {
        &self.modulus
    }

    pub fn zero(&self) -> ExtFieldElement {
        ExtFieldElement {
            coeffs: vec![self.base.zero(); self.d as usize],
        }
    }

    pub fn one(&self) -> ExtFieldElement {
        self.embed(self.base.one())
    }

    /// The class of Y, a root of the modulus.
    pub fn gen(&self) -> ExtFieldElement {
        if self.d == 1 {
            // Y = -c_0 in the quotient by Y + c_0
            return ExtFieldElement {
                coeffs: vec![self.base.neg(self.modulus[0])],
            };
        }
        let mut coeffs = vec![self.base.zero(); self.d as usize];
        coeffs[1] = self.base.one();
        ExtFieldElement { coeffs }
    }

    pub fn embed(&self, a: FqElement) -> ExtFieldElement {
        let mut coeffs = vec![self.base.zero(); self.d as usize];
        coeffs[0] = a;
        ExtFieldElement { coeffs }
    }

    pub fn is_zero(&self, a: &ExtFieldElement) -> bool {
        a.coeffs.iter().all(|c| c.0 == 0)
    }

    /// Whether the element lies in the base field image.
    pub fn is_base(&self, a: &ExtFieldElement) -> bool {
        a.coeffs[1..].iter().all(|c| c.0 == 0)
    }

    pub fn as_base(&self, a: &ExtFieldElement) -> Option<FqElement> {
        self.is_base(a).then_some(a.coeffs[0])
    }

    /// Packed index: sum_i index(c_i) q^i.
    pub fn index_of(&self, a: &ExtFieldElement) -> u64 {
        let q = self.base.q();
        a.coeffs.iter().rev().fold(0u64, |acc, c| acc * q + c.0)
    }

    pub fn element_from_index(&self, mut idx: u64) -> ExtFieldElement {
        assert!(idx < self.size, "extension element index out of range");
        let q = self.base.q();
        let mut coeffs = Vec::with_capacity(self.d as usize);
        for _ in 0..self.d {
            coeffs.push(FqElement(idx % q));
            idx /= q;
        }
        ExtFieldElement { coeffs }
    }

    /// Lexicographic order on coefficient vectors (constant term first),
    /// where base coefficients compare by their residue vectors.
    pub fn lex_cmp(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> std::cmp::Ordering {
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            let ord = self.base.lex_cmp(*x, *y);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn add(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect();
        ExtFieldElement { coeffs }
    }

    pub fn neg(&self, a: &ExtFieldElement) -> ExtFieldElement {
        ExtFieldElement {
            coeffs: a.coeffs.iter().map(|&x| self.base.neg(x)).collect(),
        }
    }

    pub fn sub(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        let prod = self.base.poly_mul(&a.coeffs, &b.coeffs);
        let rem = self.base.poly_rem(&prod, &self.modulus);
        self.element_from_poly(rem)
    }

    fn element_from_poly(&self, mut poly: Vec<FqElement>) -> ExtFieldElement {
        poly.resize(self.d as usize, self.base.zero());
        ExtFieldElement { coeffs: poly }
    }

    pub fn pow(&self, a: &ExtFieldElement, mut e: u64) -> ExtFieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &ExtFieldElement) -> Result<ExtFieldElement> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// Frobenius x -> x^q over the base field.
    pub fn frobenius(&self, a: &ExtFieldElement) -> ExtFieldElement {
        self.pow(a, self.base.q())
    }

    /// Multiplicative order of a nonzero element (divides q^d - 1).
    pub fn element_order(&self, a: &ExtFieldElement) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let n = self.size - 1;
        Ok(order_in_group(n, |e| self.pow(a, e) == self.one()))
    }

    /// Minimal polynomial over the base field: the product of (Y - x) over
    /// the Frobenius orbit of the element. The result is checked to have
    /// base-field coefficients.
    pub fn min_poly(&self, a: &ExtFieldElement) -> IrreduciblePoly {
        let mut orbit = vec![a.clone()];
        loop {
            let next = self.frobenius(orbit.last().unwrap());
            if next == *a {
                break;
            }
            orbit.push(next);
        }
        // product of linear factors with ExtField coefficients
        let mut poly = vec![self.one()];
        for root in &orbit {
            let neg_root = self.neg(root);
            let mut next = vec![self.zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], c);
                next[i] = self.add(&next[i], &self.mul(c, &neg_root));
            }
            poly = next;
        }
        let coeffs: Vec<FqElement> = poly
            .iter()
            .map(|c| {
                self.as_base(c)
                    .expect("minimal polynomial coefficients lie in the base field")
            })
            .collect();
        IrreduciblePoly::new_unchecked(coeffs)
    }

    /// First element in lexicographic order whose multiplicative order is
    /// q^d - 1. Deterministic by construction.
    pub fn fixed_generator(&self) -> Result<ExtFieldElement> {
        if self.size > ENUMERATION_CAP {
            return Err(Error::DegenerateSize(format!(
                "generator search over {} elements exceeds the cap",
                self.size
            )));
        }
        let n = self.size - 1;
        let prime_divs: Vec<u64> = factorize(n).iter().map(|&(p, _)| p).collect();
        let mut candidates: Vec<ExtFieldElement> = (1..self.size)
            .map(|i| self.element_from_index(i))
            .collect();
        candidates.sort_by(|a, b| self.lex_cmp(a, b));
        for c in candidates {
            let is_gen = prime_divs.iter().all(|&r| self.pow(&c, n / r) != self.one());
            if is_gen || n == 1 {
                return Ok(c);
            }
        }
        unreachable!("finite field multiplicative groups are cyclic")
    }

    /// Discrete log table with respect to a generator: entry at the packed
    /// element index holds the exponent. Requires the full element walk.
    pub fn dlog_table(&self, gen: &ExtFieldElement) -> Result<Vec<Option<u64>>> {
        if self.size > ENUMERATION_CAP {
            return Err(Error::DegenerateSize(format!(
                "dlog table over {} elements exceeds the cap",
                self.size
            )));
        }
        let n = self.size - 1;
        let mut table = vec![None; self.size as usize];
        let mut x = self.one();
        for e in 0..n {
            let idx = self.index_of(&x) as usize;
            assert!(table[idx].is_none(), "dlog table requires a true generator");
            table[idx] = Some(e);
            x = self.mul(&x, gen);
        }
        assert!(x == self.one(), "generator order must be q^d - 1");
        Ok(table)
    }
}

/// The canonical generator pinning: F_{q^d} built with canonical moduli all
/// the way down, and its lexicographically least multiplicative generator.
pub fn fixed_generator(q: u64, d: u32) -> Result<(ExtField, ExtFieldElement)> {
    let base = FieldDescriptor::from_q(q)?;
    let ext = ExtField::canonical(base, d)?;
    let gen = ext.fixed_generator()?;
    Ok((ext, gen))
}

/// Multiplicative order of a root of f (all roots share it).
pub fn root_order(field: &FieldDescriptor, f: &IrreduciblePoly) -> Result<u64> {
    if f.constant_term().0 == 0 {
        // the only irreducible with zero constant term is X, whose root is 0
        return Err(Error::ZeroElement);
    }
    let ext = ExtField::new(field.clone(), f.coeffs().to_vec())?;
    ext.element_order(&ext.gen())
}

/// The power map on irreducible polynomials: f -> minimal polynomial of
/// alpha^r for a root alpha of f. Requires gcd(r, ord(alpha)) = 1, which
/// keeps the degree intact; otherwise the map would merge orbits.
pub fn power_map(field: &FieldDescriptor, f: &IrreduciblePoly, r: u64) -> Result<IrreduciblePoly> {
    let ext = ExtField::new(field.clone(), f.coeffs().to_vec())?;
    let alpha = ext.gen();
    let order = ext.element_order(&alpha)?;
    if num_integer::gcd(r % order, order) != 1 {
        return Err(Error::NonCoprimePower { r, order });
    }
    let image = ext.pow(&alpha, r % order);
    let out = ext.min_poly(&image);
    assert_eq!(out.degree(), f.degree(), "coprime powering preserves degree");
    Ok(out)
}
