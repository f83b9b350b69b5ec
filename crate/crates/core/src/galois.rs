//! The Galois action on character labels of GL_n(q).
//!
//! Every character value of GL_n(q) lies in Q(zeta_m) where m is the
//! exponent of the group, so the absolute Galois group acts on characters
//! through (Z/m)^x. On Jordan labels the action is concrete: sigma_r sends
//! the label (s, nu) to (s^r, nu), raising the semisimple part to its r-th
//! power entrywise while the unipotent partitions ride along unchanged
//! (unipotent characters of general linear groups are rational-valued).
//!
//! The stabilizer of a label inside (Z/m)^x is a subgroup H, and the field
//! of values of the character is the fixed field of H, of degree
//! phi(m)/|H| over the rationals. In particular the character is
//! rational-valued exactly when its semisimple label is fixed by every
//! coprime power map.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::combinat::{euler_phi, lcm_all};
use crate::error::{Error, Result};
use crate::ffield::{power_map, prime_power_decompose, FieldDescriptor, IrreduciblePoly};
use crate::labels::{
    enumerate_characters, CharacterLabel, SemisimpleLabel, MAX_ENUM_Q, MAX_ENUM_RANK,
};

/// Stabilizer iteration walks all of (Z/m)^x; this caps how large a
/// modulus that full walk is allowed to see.
pub const MAX_UNIT_ITERATION: u64 = 1 << 16;

/// An element sigma_r of Gal(Q(zeta_m)/Q), acting by zeta -> zeta^r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisElement {
    m: u64,
    r: u64,
}

impl GaloisElement {
    pub fn new(m: u64, r: u64) -> Result<Self> {
        assert!(m >= 1, "modulus must be positive");
        let r = r % m;
        if num_integer::gcd(r, m) != 1 {
            return Err(Error::NonCoprime { r, m });
        }
        Ok(GaloisElement { m, r })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "composition across moduli");
        let r = (u128::from(self.r) * u128::from(other.r) % u128::from(self.m)) as u64;
        GaloisElement { m: self.m, r }
    }
}

/// The field of values of a character, described by the stabilizer
/// subgroup H of its label in (Z/m)^x and the degree phi(m)/|H|.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueFieldDescriptor {
    pub m: u64,
    pub stabilizer: Vec<u64>,
    pub degree: u64,
}

/// The exponent of GL_n(q): the smallest power of p at least n (the
/// largest unipotent order) times lcm(q^d - 1, d = 1..n) (the largest
/// semisimple orders). Character values live in Q(zeta_m) for this m.
pub fn ambient_exponent(n: u32, q: u64) -> Result<u64> {
    if n == 0 || n > MAX_ENUM_RANK {
        return Err(Error::DegenerateSize(format!(
            "rank {n} outside supported range 1..={MAX_ENUM_RANK}"
        )));
    }
    if q > MAX_ENUM_Q {
        return Err(Error::DegenerateSize(format!(
            "field size {q} above supported bound {MAX_ENUM_Q}"
        )));
    }
    let (p, _) = prime_power_decompose(q)?;
    let mut p_part: u64 = 1;
    while p_part < u64::from(n) {
        p_part *= p;
    }
    let semisimple_part = lcm_all((1..=n).map(|d| q.pow(d) - 1))?;
    p_part
        .checked_mul(semisimple_part)
        .ok_or(Error::SizeGuard(semisimple_part))
}

/// The semisimple part of the Galois action: raise every entry polynomial
/// to the r-th power map, keeping multiplicities. Coprimality of r to the
/// group exponent guarantees the map is injective on entries; a collision
/// would be a bug and is reported as MergeDetected.
pub fn act_on_semisimple(s: &SemisimpleLabel, r: u64) -> Result<SemisimpleLabel> {
    let m = ambient_exponent(s.n(), s.q())?;
    let r = r % m;
    if num_integer::gcd(r, m) != 1 {
        return Err(Error::NonCoprime { r, m });
    }
    let field = FieldDescriptor::from_q(s.q())?;
    let mut entries: Vec<(IrreduciblePoly, u32)> = Vec::with_capacity(s.entries().len());
    for (f, mult) in s.entries() {
        entries.push((power_map(&field, f, r)?, *mult));
    }
    let mut images: Vec<&IrreduciblePoly> = entries.iter().map(|(f, _)| f).collect();
    images.sort_by(|a, b| a.canonical_cmp(b, &field));
    if images.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MergeDetected);
    }
    SemisimpleLabel::new(s.n(), s.q(), entries)
}

/// sigma_r on a full label: the semisimple part moves by the power map and
/// each partition follows its polynomial.
pub fn act_on_label(label: &CharacterLabel, r: u64) -> Result<CharacterLabel> {
    let s = label.s();
    let m = ambient_exponent(s.n(), s.q())?;
    let r = r % m;
    if num_integer::gcd(r, m) != 1 {
        return Err(Error::NonCoprime { r, m });
    }
    let field = FieldDescriptor::from_q(s.q())?;
    let mut moved: Vec<(IrreduciblePoly, u32, crate::combinat::Partition)> =
        Vec::with_capacity(s.entries().len());
    for ((f, mult), lambda) in s.entries().iter().zip(label.nu()) {
        moved.push((power_map(&field, f, r)?, *mult, lambda.clone()));
    }
    moved.sort_by(|a, b| a.0.canonical_cmp(&b.0, &field));
    if moved.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::MergeDetected);
    }
    let entries = moved.iter().map(|(f, m, _)| (f.clone(), *m)).collect();
    let nu = moved.into_iter().map(|(_, _, lambda)| lambda).collect();
    CharacterLabel::new(SemisimpleLabel::new(s.n(), s.q(), entries)?, nu)
}

fn units(m: u64) -> Result<Vec<u64>> {
    if m > MAX_UNIT_ITERATION {
        return Err(Error::SizeGuard(m));
    }
    Ok((1..=m)
        .filter(|&r| num_integer::gcd(r, m) == 1)
        .map(|r| r % m)
        .collect())
}

/// The stabilizer subgroup H = { r : sigma_r fixes the label } together
/// with the degree phi(m)/|H| of the field of values. Computed by walking
/// every residue class; (Z/m)^x need not be cyclic, and at these moduli
/// the full walk is cheap.
pub fn field_of_values(label: &CharacterLabel) -> Result<ValueFieldDescriptor> {
    let m = ambient_exponent(label.n(), label.q())?;
    let mut stabilizer = Vec::new();
    for r in units(m)? {
        if act_on_label(label, r)? == *label {
            stabilizer.push(r);
        }
    }
    let phi = euler_phi(m);
    assert!(
        phi.is_multiple_of(stabilizer.len() as u64),
        "stabilizer size must divide the unit group order"
    );
    for &a in &stabilizer {
        assert!(
            stabilizer
                .binary_search(&((u128::from(a) * u128::from(stabilizer[0]) % u128::from(m)) as u64))
                .is_ok(),
            "stabilizer not closed under multiplication"
        );
    }
    let degree = phi / stabilizer.len() as u64;
    Ok(ValueFieldDescriptor {
        m,
        stabilizer,
        degree,
    })
}

/// True when every coprime power map fixes the label, i.e. the field of
/// values is Q itself.
pub fn is_rational_character(label: &CharacterLabel) -> Result<bool> {
    Ok(field_of_values(label)?.degree == 1)
}

/// The orbits of the Galois action on all character labels of GL_n(q).
/// Each orbit is canonically sorted; orbits are ordered by their first
/// label.
pub fn galois_orbits(n: u32, q: u64) -> Result<Vec<Vec<CharacterLabel>>> {
    let field = FieldDescriptor::from_q(q)?;
    let labels = enumerate_characters(n, q)?;
    let m = ambient_exponent(n, q)?;
    let unit_list = units(m)?;
    let mut seen: HashSet<CharacterLabel> = HashSet::new();
    let mut orbits = Vec::new();
    for label in &labels {
        if seen.contains(label) {
            continue;
        }
        let mut orbit: Vec<CharacterLabel> = Vec::new();
        for &r in &unit_list {
            let image = act_on_label(label, r)?;
            if seen.insert(image.clone()) {
                orbit.push(image);
            }
        }
        orbit.sort_by(|a, b| a.canonical_cmp(b, &field));
        orbits.push(orbit);
    }
    Ok(orbits)
}
