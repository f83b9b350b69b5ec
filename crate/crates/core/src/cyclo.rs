//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! [`CycloNumber`] is the canonical dense form: a vector of exact rationals
//! of length phi(m) over the power basis 1, zeta, ..., zeta^{phi(m)-1},
//! kept reduced modulo the m-th cyclotomic polynomial. The Galois action
//! sigma_r (zeta -> zeta^r, gcd(r, m) = 1) is computed by remapping
//! exponents on the full length-m group-ring vector and reducing again,
//! which sidesteps any basis bookkeeping.
//!
//! [`ZetaSum`] is a sparse companion: an integer linear combination of
//! roots of unity stored by exponent. Character tables are built out of
//! short sums like zeta^a + zeta^b, and the heavy sweeps (orthogonality,
//! Galois orbits of table rows) only ever add, multiply, and compare such
//! sums; doing that through dense rational vectors would be orders of
//! magnitude slower. A [`ReductionTable`] caches the reduction of every
//! zeta^e to the power basis so sparse sums can be canonicalized by table
//! lookups. Both forms are exact and the test suite checks them against
//! each other.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::{cyclotomic_poly, euler_phi};
use crate::error::{Error, Result};

/// Cached coefficients of cyclotomic polynomials; these get recomputed on
/// every reduction otherwise, which dominates dense multiplication.
fn phi_poly(m: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(m)
        .or_insert_with(|| Arc::new(cyclotomic_poly(m)))
        .clone()
}

/// An element of Q(zeta_m) in reduced power-basis form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloNumber {
    m: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        CycloNumber {
            m,
            coeffs: vec![BigRational::zero(); euler_phi(m) as usize],
        }
    }

    pub fn from_rational(m: u64, value: BigRational) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = value;
        x
    }

    pub fn from_integer(m: u64, value: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(value)))
    }

    /// zeta_m^k, reduced.
    pub fn root_of_unity(m: u64, k: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let k = (k % m) as usize;
        let mut dense = vec![BigRational::zero(); k + 1];
        dense[k] = BigRational::one();
        Self::reduce(m, dense)
    }

    fn reduce(m: u64, mut dense: Vec<BigRational>) -> Self {
        let phi = euler_phi(m) as usize;
        let modpoly = phi_poly(m);
        for i in (phi..dense.len()).rev() {
            if dense[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[i], BigRational::zero());
            for (j, &mj) in modpoly.iter().enumerate().take(phi) {
                if mj != 0 {
                    let t = &c * BigRational::from_integer(BigInt::from(mj));
                    dense[i - phi + j] -= t;
                }
            }
        }
        dense.resize(phi, BigRational::zero());
        CycloNumber { m, coeffs: dense }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Power-basis coordinates, length phi(m).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check_same_m(&self, other: &Self) {
        assert_eq!(
            self.m, other.m,
            "cyclotomic numbers from different conductors cannot be combined"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_m(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloNumber { m: self.m, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_m(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloNumber { m: self.m, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_m(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.m);
        }
        let mut dense = vec![BigRational::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.m, dense)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycloNumber {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The Galois automorphism sigma_r: zeta -> zeta^r, for gcd(r, m) = 1.
    /// Exponents of the full group-ring lift are remapped, then reduced.
    pub fn galois_apply(&self, r: u64) -> Result<Self> {
        let r = r % self.m;
        if num_integer::gcd(r, self.m) != 1 {
            return Err(Error::NonCoprime { r, m: self.m });
        }
        let mut dense = vec![BigRational::zero(); self.m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as u64 * r % self.m) as usize;
                dense[e] += c;
            }
        }
        Ok(Self::reduce(self.m, dense))
    }

    /// Complex conjugation, sigma_{-1}.
    pub fn conj(&self) -> Self {
        self.galois_apply(self.m - 1)
            .expect("m - 1 is always coprime to m")
    }

    /// Some(value) when the number is rational, i.e. supported on the
    /// constant basis vector.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    /// Some(value) when the number is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        r.is_integer().then(|| r.to_integer())
    }

    /// Numerical evaluation at zeta = exp(2 pi i / m); a test-only sanity
    /// overlay, never part of any exact computation.
    pub fn approx_eval(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = rational_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (self.m as f64);
            re += x * theta.cos();
            im += x * theta.sin();
        }
        (re, im)
    }
}

/// Serialized form of a cyclotomic number: the conductor and the phi(m)
/// power-basis coordinates as exact [numerator, denominator] pairs of
/// decimal strings, so no precision is lost for large coefficients.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct CycloNumberDto {
    pub m: u64,
    pub coeffs: Vec<[String; 2]>,
}

impl From<&CycloNumber> for CycloNumberDto {
    fn from(x: &CycloNumber) -> Self {
        CycloNumberDto {
            m: x.m,
            coeffs: x
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
    }
}

impl CycloNumberDto {
    pub fn build(&self) -> Result<CycloNumber> {
        if self.m == 0 {
            return Err(Error::MalformedValue("conductor must be positive".into()));
        }
        let expected = euler_phi(self.m) as usize;
        if self.coeffs.len() != expected {
            return Err(Error::DimensionMismatch(self.coeffs.len(), expected));
        }
        let mut coeffs = Vec::with_capacity(expected);
        for [num, den] in &self.coeffs {
            let num: BigInt = num
                .parse()
                .map_err(|_| Error::MalformedValue(format!("bad numerator {num:?}")))?;
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::MalformedValue(format!("bad denominator {den:?}")))?;
            if den.is_zero() {
                return Err(Error::MalformedValue("zero denominator".into()));
            }
            coeffs.push(BigRational::new(num, den));
        }
        Ok(CycloNumber { m: self.m, coeffs })
    }
}

impl serde::Serialize for CycloNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloNumberDto::from(self).serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for CycloNumber {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = CycloNumberDto::deserialize(deserializer)?;
        dto.build().map_err(serde::de::Error::custom)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    let nf: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

/// Hermitian inner product of two vectors of cyclotomic numbers indexed by
/// conjugacy classes: `(1/|G|) sum_c |c| u_c conj(v_c)`. The result must be
/// rational (as it is for rows built from characters); anything else is
/// reported as an error rather than silently truncated.
pub fn inner_product(
    u: &[CycloNumber],
    v: &[CycloNumber],
    class_sizes: &[u64],
    group_order: u64,
) -> Result<BigRational> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(u.len(), v.len()));
    }
    if u.len() != class_sizes.len() {
        return Err(Error::DimensionMismatch(u.len(), class_sizes.len()));
    }
    assert!(group_order > 0, "group order must be positive");
    if u.is_empty() {
        return Ok(BigRational::zero());
    }
    let m = u[0].m();
    for x in u.iter().chain(v.iter()) {
        if x.m() != m {
            return Err(Error::ConductorMismatch(m, x.m()));
        }
    }
    let mut acc = CycloNumber::zero(m);
    for ((a, b), &size) in u.iter().zip(v).zip(class_sizes) {
        let term = a.mul(&b.conj());
        acc = acc.add(&term.scale(&BigRational::from_integer(BigInt::from(size))));
    }
    let total = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(group_order)));
    total.as_rational().ok_or(Error::NotRational)
}

/// Precomputed reduction of every power zeta^e (0 <= e < m) to the power
/// basis; rows are integer vectors of length phi(m).
#[derive(Debug, Clone)]
pub struct ReductionTable {
    m: u64,
    phi: usize,
    rows: Vec<Vec<i64>>,
}

impl ReductionTable {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let phi = euler_phi(m) as usize;
        let modpoly = phi_poly(m);
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(m as usize);
        for e in 0..m as usize {
            if e < phi {
                let mut row = vec![0i64; phi];
                row[e] = 1;
                rows.push(row);
            } else {
                // zeta^e = zeta^{e - phi} * zeta^phi, and
                // zeta^phi = -sum_{j < phi} Phi_j zeta^j
                let mut row = vec![0i64; phi];
                for (j, &mj) in modpoly.iter().enumerate().take(phi) {
                    if mj == 0 {
                        continue;
                    }
                    let prev = &rows[e - phi + j];
                    for (t, &p) in prev.iter().enumerate() {
                        row[t] = row[t]
                            .checked_sub(mj.checked_mul(p).expect("reduction overflow"))
                            .expect("reduction overflow");
                    }
                }
                rows.push(row);
            }
        }
        ReductionTable { m, phi, rows }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn row(&self, e: u64) -> &[i64] {
        &self.rows[(e % self.m) as usize]
    }
}

/// A sparse exact sum of m-th roots of unity with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaSum {
    m: u64,
    terms: BTreeMap<u64, i64>,
}

impl ZetaSum {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        ZetaSum {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// c * zeta_m^e.
    pub fn term(m: u64, e: u64, c: i64) -> Self {
        let mut z = Self::zero(m);
        z.push(e, c);
        z
    }

    pub fn integer(m: u64, n: i64) -> Self {
        Self::term(m, 0, n)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<u64, i64> {
        &self.terms
    }

    fn push(&mut self, e: u64, c: i64) {
        if c == 0 {
            return;
        }
        let e = e % self.m;
        let entry = self.terms.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect("zeta sum coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    fn check_same_m(&self, other: &Self) {
        assert_eq!(
            self.m, other.m,
            "zeta sums from different conductors cannot be combined"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_m(other);
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.push(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_m(other);
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.push(e, c.checked_neg().expect("overflow"));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (&e, &c) in &self.terms {
            out.push(e, -c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.m);
        for (&e, &c) in &self.terms {
            out.push(e, c.checked_mul(k).expect("zeta sum coefficient overflow"));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_m(other);
        let mut out = Self::zero(self.m);
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.push(
                    (e1 + e2) % self.m,
                    c1.checked_mul(c2).expect("zeta sum coefficient overflow"),
                );
            }
        }
        out
    }

    /// sigma_r on the sparse form: pure exponent remapping.
    pub fn galois_apply(&self, r: u64) -> Result<Self> {
        let r = r % self.m;
        if num_integer::gcd(r, self.m) != 1 {
            return Err(Error::NonCoprime { r, m: self.m });
        }
        let mut out = Self::zero(self.m);
        for (&e, &c) in &self.terms {
            out.push(e * r % self.m, c);
        }
        Ok(out)
    }

    pub fn conj(&self) -> Self {
        self.galois_apply(self.m - 1)
            .expect("m - 1 is always coprime to m")
    }

    /// Canonical power-basis coordinates (length phi(m)) via the table.
    pub fn reduced(&self, tab: &ReductionTable) -> Vec<i64> {
        assert_eq!(tab.m(), self.m, "reduction table conductor mismatch");
        let mut out = vec![0i64; tab.phi()];
        for (&e, &c) in &self.terms {
            for (t, &r) in tab.row(e).iter().enumerate() {
                out[t] = out[t]
                    .checked_add(c.checked_mul(r).expect("reduction overflow"))
                    .expect("reduction overflow");
            }
        }
        out
    }

    /// Exact equality as cyclotomic numbers (sparse forms are not unique).
    pub fn eq_with(&self, other: &Self, tab: &ReductionTable) -> bool {
        self.check_same_m(other);
        self.reduced(tab) == other.reduced(tab)
    }

    pub fn is_zero_with(&self, tab: &ReductionTable) -> bool {
        self.reduced(tab).iter().all(|&c| c == 0)
    }

    /// Dense rational form.
    pub fn to_cyclo(&self) -> CycloNumber {
        let mut dense = vec![BigRational::zero(); self.m as usize];
        for (&e, &c) in &self.terms {
            dense[e as usize] += BigRational::from_integer(BigInt::from(c));
        }
        CycloNumber::reduce(self.m, dense)
    }
}
