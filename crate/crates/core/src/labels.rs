//! Jordan-decomposition labels for the irreducible characters of GL_n(q).
//!
//! A semisimple conjugacy class of GL_n(q) is the same thing as a monic
//! degree-n polynomial with nonzero constant term, recorded here as a
//! multiset of distinct monic irreducible factors f with multiplicities m_f
//! satisfying sum deg(f) * m_f = n. The centralizer of such a class is a
//! product of general linear groups GL_{m_f}(q^{deg f}) over extension
//! fields, one factor per irreducible f.
//!
//! An irreducible character is labeled by a pair (s, nu): a semisimple
//! label s together with a partition of m_f for every entry, the unipotent
//! part. Degrees factor through this data: the prime-to-p part of the index
//! of the centralizer times the product of unipotent character degrees of
//! the centralizer factors, evaluated at q^{deg f}.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{lcm_all, partitions_of, unipotent_degree, Partition};
pub use crate::combinat::gl_order;
use crate::error::{Error, Result};
use crate::ffield::{
    enumerate_irreducibles, root_order, FieldDescriptor, FqElement, IrreduciblePoly,
};

/// Enumeration guards. Everything here is exact arithmetic on full lists of
/// labels, so the bounds are deliberately desk-scale.
pub const MAX_ENUM_RANK: u32 = 6;
pub const MAX_ENUM_Q: u64 = 16;

/// A semisimple class label: distinct irreducible polynomials with
/// multiplicities, total weight n, entries canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemisimpleLabel {
    n: u32,
    q: u64,
    entries: Vec<(IrreduciblePoly, u32)>,
}

impl SemisimpleLabel {
    pub fn new(n: u32, q: u64, mut entries: Vec<(IrreduciblePoly, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateSize("rank must be positive".into()));
        }
        let field = FieldDescriptor::from_q(q)?;
        let mut weight: u64 = 0;
        for (f, m) in &entries {
            if *m == 0 {
                return Err(Error::InvalidLabel("zero multiplicity".into()));
            }
            if f.coeffs().iter().any(|c| c.0 >= q) {
                return Err(Error::InvalidLabel(
                    "polynomial coefficients out of range for the field".into(),
                ));
            }
            if field.is_zero(f.constant_term()) {
                return Err(Error::ZeroConstantTerm);
            }
            if !field.is_irreducible(f.coeffs())? {
                return Err(Error::NotIrreducible);
            }
            weight += u64::from(f.degree()) * u64::from(*m);
        }
        if weight != u64::from(n) {
            return Err(Error::InvalidLabel(format!(
                "entry weight {weight} does not match rank {n}"
            )));
        }
        entries.sort_by(|a, b| a.0.canonical_cmp(&b.0, &field));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidLabel("duplicate polynomial entry".into()));
            }
        }
        Ok(SemisimpleLabel { n, q, entries })
    }

    /// The identity class: (X - 1)^n.
    pub fn identity(n: u32, q: u64) -> Result<Self> {
        let field = FieldDescriptor::from_q(q)?;
        let poly = IrreduciblePoly::linear(&field, field.one());
        Self::new(n, q, vec![(poly, n)])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn entries(&self) -> &[(IrreduciblePoly, u32)] {
        &self.entries
    }

    pub fn canonical_cmp(&self, other: &Self, field: &FieldDescriptor) -> Ordering {
        let lhs = self.entries.iter();
        let rhs = other.entries.iter();
        for (a, b) in lhs.zip(rhs) {
            match a.0.canonical_cmp(&b.0, field).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.entries.len().cmp(&other.entries.len())
    }
}

/// The reductive shape of the centralizer of a semisimple class: one factor
/// GL_{m}(q^{d}) for each entry (f, m) with d = deg f.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerShape {
    pub factors: Vec<(u32, u32)>,
}

pub fn centralizer_shape(s: &SemisimpleLabel) -> CentralizerShape {
    CentralizerShape {
        factors: s
            .entries()
            .iter()
            .map(|(f, m)| (f.degree(), *m))
            .collect(),
    }
}

pub fn centralizer_order(s: &SemisimpleLabel) -> BigInt {
    let mut order = BigInt::one();
    for (f, m) in s.entries() {
        let qd = s.q().pow(f.degree());
        order *= gl_order(*m, qd);
    }
    order
}

/// The multiplicative order of the class, i.e. the lcm of the orders of the
/// roots of the entry polynomials.
pub fn semisimple_order(s: &SemisimpleLabel) -> Result<u64> {
    let field = FieldDescriptor::from_q(s.q())?;
    let mut orders = Vec::with_capacity(s.entries().len());
    for (f, _) in s.entries() {
        orders.push(root_order(&field, f)?);
    }
    lcm_all(orders)
}

/// All semisimple labels of weight n over F_q, canonically sorted.
pub fn enumerate_semisimple(n: u32, q: u64) -> Result<Vec<SemisimpleLabel>> {
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
    let field = FieldDescriptor::from_q(q)?;
    let mut polys: Vec<IrreduciblePoly> = Vec::new();
    for d in 1..=n {
        polys.extend(enumerate_irreducibles(&field, d, true)?);
    }
    let mut out = Vec::new();
    let mut stack: Vec<(IrreduciblePoly, u32)> = Vec::new();
    assign(&polys, 0, n, &mut stack, &mut |entries| {
        out.push(SemisimpleLabel {
            n,
            q,
            entries: entries.to_vec(),
        });
    });
    out.sort_by(|a, b| a.canonical_cmp(b, &field));
    Ok(out)
}

/// Recursively assign multiplicities to polynomials from index `idx` on so
/// remaining weight `rem` is exactly consumed.
fn assign(
    polys: &[IrreduciblePoly],
    idx: usize,
    rem: u32,
    stack: &mut Vec<(IrreduciblePoly, u32)>,
    emit: &mut impl FnMut(&[(IrreduciblePoly, u32)]),
) {
    if rem == 0 {
        emit(stack);
        return;
    }
    if idx == polys.len() {
        return;
    }
    // skip this polynomial entirely
    assign(polys, idx + 1, rem, stack, emit);
    let d = polys[idx].degree();
    let mut m = 1;
    while d * m <= rem {
        stack.push((polys[idx].clone(), m));
        assign(polys, idx + 1, rem - d * m, stack, emit);
        stack.pop();
        m += 1;
    }
}

/// A full character label: semisimple part plus one partition per entry,
/// with nu[i] a partition of the multiplicity of entry i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacterLabel {
    s: SemisimpleLabel,
    nu: Vec<Partition>,
}

impl CharacterLabel {
    pub fn new(s: SemisimpleLabel, nu: Vec<Partition>) -> Result<Self> {
        if nu.len() != s.entries().len() {
            return Err(Error::InvalidLabel(format!(
                "{} partitions attached to {} entries",
                nu.len(),
                s.entries().len()
            )));
        }
        for ((_, m), lambda) in s.entries().iter().zip(&nu) {
            if lambda.size() != *m {
                return Err(Error::InvalidLabel(format!(
                    "partition of {} attached to multiplicity {}",
                    lambda.size(),
                    m
                )));
            }
        }
        Ok(CharacterLabel { s, nu })
    }

    /// The trivial character: identity class, one-row partition.
    pub fn trivial(n: u32, q: u64) -> Result<Self> {
        let s = SemisimpleLabel::identity(n, q)?;
        Self::new(s, vec![Partition::new(vec![n])?])
    }

    /// The Steinberg character: identity class, one-column partition.
    pub fn steinberg(n: u32, q: u64) -> Result<Self> {
        let s = SemisimpleLabel::identity(n, q)?;
        Self::new(s, vec![Partition::new(vec![1; n as usize])?])
    }

    pub fn s(&self) -> &SemisimpleLabel {
        &self.s
    }

    pub fn nu(&self) -> &[Partition] {
        &self.nu
    }

    pub fn n(&self) -> u32 {
        self.s.n()
    }

    pub fn q(&self) -> u64 {
        self.s.q()
    }

    pub fn canonical_cmp(&self, other: &Self, field: &FieldDescriptor) -> Ordering {
        self.s.canonical_cmp(&other.s, field).then_with(|| {
            for (a, b) in self.nu.iter().zip(&other.nu) {
                match a.canonical_cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

/// All characters in the series attached to s: one label per choice of a
/// partition of each multiplicity.
pub fn lusztig_series(s: &SemisimpleLabel) -> Result<Vec<CharacterLabel>> {
    let choices: Vec<Vec<Partition>> = s
        .entries()
        .iter()
        .map(|(_, m)| partitions_of(*m))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut current: Vec<Partition> = Vec::new();
    cartesian(&choices, &mut current, &mut |nu| {
        out.push(CharacterLabel {
            s: s.clone(),
            nu: nu.to_vec(),
        });
    });
    Ok(out)
}

fn cartesian(
    choices: &[Vec<Partition>],
    current: &mut Vec<Partition>,
    emit: &mut impl FnMut(&[Partition]),
) {
    if current.len() == choices.len() {
        emit(current);
        return;
    }
    for p in &choices[current.len()] {
        current.push(p.clone());
        cartesian(choices, current, emit);
        current.pop();
    }
}

/// Every irreducible character label of GL_n(q), grouped by semisimple
/// label in canonical order.
pub fn enumerate_characters(n: u32, q: u64) -> Result<Vec<CharacterLabel>> {
    let mut out = Vec::new();
    for s in enumerate_semisimple(n, q)? {
        out.extend(lusztig_series(&s)?);
    }
    Ok(out)
}

fn strip_p(mut x: BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    while (&x % &p).is_zero() {
        x /= &p;
    }
    x
}

/// The degree of the character labeled by L: the prime-to-p part of
/// [GL_n(q) : C(s)] times the product over entries of the unipotent
/// character degree of GL_{m_f}(q^{deg f}) attached to the partition.
pub fn character_degree(label: &CharacterLabel) -> Result<BigInt> {
    let s = label.s();
    let p = FieldDescriptor::from_q(s.q())?.p();
    let g_part = strip_p(gl_order(s.n(), s.q()), p);
    let c_part = strip_p(centralizer_order(s), p);
    if (&g_part % &c_part) != BigInt::zero() {
        return Err(Error::NonIntegralDegree);
    }
    let mut degree = g_part / c_part;
    for ((f, _), lambda) in s.entries().iter().zip(label.nu()) {
        degree *= unipotent_degree(lambda, s.q().pow(f.degree()));
    }
    Ok(degree)
}

/// Serialized form of a semisimple entry: packed coefficient indices of the
/// polynomial (constant term first, leading 1 included) and multiplicity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryDto {
    pub poly: Vec<u64>,
    pub mult: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemisimpleLabelDto {
    pub n: u32,
    pub q: u64,
    pub s: Vec<EntryDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterLabelDto {
    pub n: u32,
    pub q: u64,
    pub s: Vec<EntryDto>,
    pub nu: Vec<Vec<u32>>,
}

impl From<&SemisimpleLabel> for SemisimpleLabelDto {
    fn from(s: &SemisimpleLabel) -> Self {
        SemisimpleLabelDto {
            n: s.n(),
            q: s.q(),
            s: s
                .entries()
                .iter()
                .map(|(f, m)| EntryDto {
                    poly: f.indices(),
                    mult: *m,
                })
                .collect(),
        }
    }
}

impl From<&CharacterLabel> for CharacterLabelDto {
    fn from(label: &CharacterLabel) -> Self {
        let s_dto = SemisimpleLabelDto::from(label.s());
        CharacterLabelDto {
            n: s_dto.n,
            q: s_dto.q,
            s: s_dto.s,
            nu: label.nu().iter().map(|p| p.parts().to_vec()).collect(),
        }
    }
}

impl SemisimpleLabelDto {
    pub fn build(&self) -> Result<SemisimpleLabel> {
        let field = FieldDescriptor::from_q(self.q)?;
        let mut entries = Vec::with_capacity(self.s.len());
        for entry in &self.s {
            let coeffs: Vec<FqElement> = entry.poly.iter().map(|&i| FqElement(i)).collect();
            entries.push((IrreduciblePoly::new(&field, coeffs)?, entry.mult));
        }
        SemisimpleLabel::new(self.n, self.q, entries)
    }
}

impl CharacterLabelDto {
    pub fn build(&self) -> Result<CharacterLabel> {
        let s_dto = SemisimpleLabelDto {
            n: self.n,
            q: self.q,
            s: self.s.clone(),
        };
        let s = s_dto.build()?;
        let nu = self
            .nu
            .iter()
            .map(|parts| Partition::new(parts.clone()))
            .collect::<Result<Vec<_>>>()?;
        CharacterLabel::new(s, nu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldDescriptor {
        FieldDescriptor::from_q(q).unwrap()
    }

    fn linear(q: u64, a: u64) -> IrreduciblePoly {
        let f = field(q);
        IrreduciblePoly::linear(&f, FqElement(a))
    }

    fn quadratic(q: u64, c0: u64, c1: u64) -> IrreduciblePoly {
        let f = field(q);
        IrreduciblePoly::new(&f, vec![FqElement(c0), FqElement(c1), f.one()]).unwrap()
    }

    #[test]
    fn rank_one_over_f2_has_a_single_label() {
        let labels = enumerate_semisimple(1, 2).unwrap();
        assert_eq!(labels.len(), 1);
        assert_eq!(labels[0].entries()[0].0.indices(), vec![1, 1]);
    }

    #[test]
    fn rank_two_semisimple_counts() {
        assert_eq!(enumerate_semisimple(2, 2).unwrap().len(), 2);
        let labels = enumerate_semisimple(2, 3).unwrap();
        assert_eq!(labels.len(), 6);
        let mut scalar = 0;
        let mut split = 0;
        let mut elliptic = 0;
        for s in &labels {
            match s.entries() {
                [(f, 2)] if f.degree() == 1 => scalar += 1,
                [(f, 1), (g, 1)] if f.degree() == 1 && g.degree() == 1 => split += 1,
                [(f, 1)] if f.degree() == 2 => elliptic += 1,
                other => panic!("unexpected shape {other:?}"),
            }
        }
        assert_eq!((scalar, split, elliptic), (2, 1, 3));
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        for (n, q) in [(2u32, 4u64), (3, 2), (3, 3), (4, 2)] {
            let f = field(q);
            let labels = enumerate_semisimple(n, q).unwrap();
            for w in labels.windows(2) {
                assert_eq!(w[0].canonical_cmp(&w[1], &f), Ordering::Less);
            }
        }
    }

    #[test]
    fn enumeration_rejects_out_of_range_sizes() {
        assert!(matches!(
            enumerate_semisimple(0, 3),
            Err(Error::DegenerateSize(_))
        ));
        assert!(matches!(
            enumerate_semisimple(7, 3),
            Err(Error::DegenerateSize(_))
        ));
        assert!(matches!(
            enumerate_semisimple(2, 17),
            Err(Error::DegenerateSize(_))
        ));
    }

    #[test]
    fn label_validation_catches_bad_input() {
        let x_plus_1_f3 = linear(3, 2); // X + 1 = X - 2, root 2
        assert!(SemisimpleLabel::new(2, 3, vec![(x_plus_1_f3.clone(), 0)]).is_err());
        assert!(SemisimpleLabel::new(3, 3, vec![(x_plus_1_f3.clone(), 2)]).is_err());
        assert!(SemisimpleLabel::new(
            2,
            3,
            vec![(x_plus_1_f3.clone(), 1), (x_plus_1_f3.clone(), 1)]
        )
        .is_err());
        assert!(SemisimpleLabel::new(2, 3, vec![(x_plus_1_f3, 1), (linear(3, 1), 1)]).is_ok());
    }

    #[test]
    fn centralizer_shapes_and_orders_for_gl2_3() {
        let identity = SemisimpleLabel::identity(2, 3).unwrap();
        assert_eq!(centralizer_shape(&identity).factors, vec![(1, 2)]);
        assert_eq!(centralizer_order(&identity), BigInt::from(48));

        let elliptic = SemisimpleLabel::new(2, 3, vec![(quadratic(3, 1, 0), 1)]).unwrap();
        assert_eq!(centralizer_shape(&elliptic).factors, vec![(2, 1)]);
        assert_eq!(centralizer_order(&elliptic), BigInt::from(8));

        let split =
            SemisimpleLabel::new(2, 3, vec![(linear(3, 1), 1), (linear(3, 2), 1)]).unwrap();
        assert_eq!(centralizer_order(&split), BigInt::from(4));
    }

    #[test]
    fn class_sizes_are_integral() {
        for (n, q) in [(2u32, 3u64), (3, 3), (3, 4)] {
            let g = gl_order(n, q);
            for s in enumerate_semisimple(n, q).unwrap() {
                let c = centralizer_order(&s);
                assert_eq!(&g % &c, BigInt::zero(), "{s:?}");
            }
        }
    }

    #[test]
    fn semisimple_orders() {
        assert_eq!(
            semisimple_order(&SemisimpleLabel::identity(3, 4).unwrap()).unwrap(),
            1
        );
        let elliptic = SemisimpleLabel::new(2, 3, vec![(quadratic(3, 1, 0), 1)]).unwrap();
        assert_eq!(semisimple_order(&elliptic).unwrap(), 4);
        let two_mod_5 = SemisimpleLabel::new(1, 5, vec![(linear(5, 2), 1)]).unwrap();
        assert_eq!(semisimple_order(&two_mod_5).unwrap(), 4);
    }

    #[test]
    fn character_counts_match_class_counts() {
        assert_eq!(enumerate_characters(2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_characters(2, 3).unwrap().len(), 8);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            assert_eq!(
                enumerate_characters(1, q).unwrap().len(),
                (q - 1) as usize
            );
        }
    }

    /// Independent class-count oracle: the number of conjugacy classes of
    /// GL_n(q) is the coefficient of x^n in prod_j (1 - x^j)/(1 - q x^j).
    fn class_count_series(n: usize, q: i128) -> Vec<i128> {
        let mut series = vec![0i128; n + 1];
        series[0] = 1;
        for j in 1..=n {
            // multiply by 1/(1 - q x^j): series[i] += q * series[i - j]
            for i in j..=n {
                series[i] += q * series[i - j];
            }
            // multiply by (1 - x^j)
            for i in (j..=n).rev() {
                series[i] -= series[i - j];
            }
        }
        series
    }

    #[test]
    fn character_counts_match_generating_function() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let series = class_count_series(4, q as i128);
            for n in 1..=4u32 {
                if n >= 3 && q > 5 {
                    continue;
                }
                let count = enumerate_characters(n, q).unwrap().len();
                assert_eq!(count as i128, series[n as usize], "n={n} q={q}");
            }
        }
    }

    #[test]
    fn gl2_3_degrees() {
        let labels = enumerate_characters(2, 3).unwrap();
        let mut degrees: Vec<BigInt> = labels
            .iter()
            .map(|l| character_degree(l).unwrap())
            .collect();
        degrees.sort();
        let expected: Vec<BigInt> = [1, 1, 2, 2, 2, 3, 3, 4]
            .iter()
            .map(|&d| BigInt::from(d))
            .collect();
        assert_eq!(degrees, expected);
    }

    #[test]
    fn degree_squares_sum_to_group_order() {
        for (n, q) in [(2u32, 3u64), (2, 4), (3, 2), (3, 3)] {
            let mut sum = BigInt::zero();
            for label in enumerate_characters(n, q).unwrap() {
                let d = character_degree(&label).unwrap();
                sum += &d * &d;
            }
            assert_eq!(sum, gl_order(n, q), "n={n} q={q}");
        }
    }

    #[test]
    fn named_character_degrees() {
        assert_eq!(
            character_degree(&CharacterLabel::trivial(4, 3).unwrap()).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            character_degree(&CharacterLabel::steinberg(2, 3).unwrap()).unwrap(),
            BigInt::from(3)
        );
        // cuspidal character of GL_2(3): elliptic class, trivial partition
        let elliptic = SemisimpleLabel::new(2, 3, vec![(quadratic(3, 1, 0), 1)]).unwrap();
        let cuspidal = CharacterLabel::new(elliptic, vec![Partition::new(vec![1]).unwrap()]);
        assert_eq!(
            character_degree(&cuspidal.unwrap()).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn series_sizes_are_partition_products() {
        let split =
            SemisimpleLabel::new(2, 5, vec![(linear(5, 1), 1), (linear(5, 2), 1)]).unwrap();
        assert_eq!(lusztig_series(&split).unwrap().len(), 1);
        assert_eq!(
            lusztig_series(&SemisimpleLabel::identity(2, 5).unwrap())
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            lusztig_series(&SemisimpleLabel::identity(4, 2).unwrap())
                .unwrap()
                .len(),
            5
        );
        for s in enumerate_semisimple(3, 3).unwrap() {
            let expected: usize = s
                .entries()
                .iter()
                .map(|(_, m)| partitions_of(*m).unwrap().len())
                .product();
            assert_eq!(lusztig_series(&s).unwrap().len(), expected);
        }
    }

    #[test]
    fn dto_round_trip() {
        for label in enumerate_characters(2, 4).unwrap() {
            let dto = CharacterLabelDto::from(&label);
            let json = serde_json::to_string(&dto).unwrap();
            let back: CharacterLabelDto = serde_json::from_str(&json).unwrap();
            assert_eq!(back.build().unwrap(), label);
        }
    }

    #[test]
    fn dto_rejects_corrupted_labels() {
        let label = CharacterLabel::trivial(2, 3).unwrap();
        let mut dto = CharacterLabelDto::from(&label);
        dto.nu = vec![vec![3]];
        assert!(dto.build().is_err());
        let mut dto2 = CharacterLabelDto::from(&label);
        dto2.s[0].poly = vec![0, 1]; // constant term zero
        assert!(dto2.build().is_err());
    }
}
