//! Partitions, hook lengths, and the small number-theoretic helpers
//! (Moebius, Euler phi, cyclotomic polynomials) that the rest of the
//! crate leans on.
//!
//! The one nontrivial formula here is [`unipotent_degree`]: for a
//! partition `lambda` of `m` and a prime power `Q`, the polynomial
//!
//! ```text
//! Q^{n(lambda)} * prod_{i=1..m} (Q^i - 1) / prod_{h in hooks(lambda)} (Q^h - 1)
//! ```
//!
//! evaluated at `Q` is an integer (the hook products divide exactly).
//! All arithmetic is exact; the division is checked, never rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`partitions_of`]. p(40) = 37338, still desk scale.
pub const MAX_PARTITION_SIZE: u32 = 40;

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Partitions serialize as plain JSON arrays, weakly decreasing; parsing
/// re-validates through [`Partition::new`].
impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl Partition {
    /// Builds a partition, rejecting zero parts and out-of-order input.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidLabel(format!(
                    "partition parts must be weakly decreasing, got {parts:?}"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidLabel("partition parts must be positive".into()));
        }
        Ok(Partition { parts })
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Conjugate (transpose) partition.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        let mut j = 1;
        loop {
            let col = self.parts.iter().filter(|&&p| p >= j).count() as u32;
            if col == 0 {
                break;
            }
            parts.push(col);
            j += 1;
        }
        Partition { parts }
    }

    /// Hook lengths of all cells, as a descending-sorted multiset.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - 1 - j as u32;
                let leg = conj.parts[j] - 1 - i as u32;
                hooks.push(arm + leg + 1);
            }
        }
        hooks.sort_unstable_by(|a, b| b.cmp(a));
        hooks
    }

    /// The statistic n(lambda) = sum_i (i - 1) * lambda_i.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Position in the canonical output of [`partitions_of`]: descending
    /// lexicographic on the part vectors, `[n]` first, `[1,...,1]` last.
    pub fn canonical_cmp(&self, other: &Partition) -> std::cmp::Ordering {
        other.parts.cmp(&self.parts)
    }
}

/// All partitions of `n` in canonical order (descending lexicographic,
/// so `[n]` comes first and the all-ones partition last).
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    if n > MAX_PARTITION_SIZE {
        return Err(Error::DegenerateSize(format!(
            "partitions_of({n}) exceeds the cap {MAX_PARTITION_SIZE}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    Ok(out)
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    let top = remaining.min(max_part);
    for part in (1..=top).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Moebius function; 0 on inputs with a square factor.
pub fn moebius(n: u64) -> i64 {
    assert!(n > 0, "moebius is defined on positive integers");
    let mut m = n;
    let mut sign = 1i64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n > 0, "euler_phi is defined on positive integers");
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}

/// Prime factorization by trial division, `(prime, multiplicity)` pairs in
/// ascending order. Desk-scale inputs only.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize is defined on positive integers");
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    factors
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let snapshot = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(snapshot.iter().map(|d| d * pe));
        }
    }
    divs.sort_unstable();
    divs
}

/// Least common multiple of a sequence, with overflow checked.
pub fn lcm_all<I: IntoIterator<Item = u64>>(values: I) -> Result<u64> {
    let mut acc: u64 = 1;
    for v in values {
        assert!(v > 0, "lcm_all needs positive inputs");
        let g = acc.gcd(&v);
        let wide = (acc / g) as u128 * v as u128;
        acc = u64::try_from(wide)
            .map_err(|_| Error::DegenerateSize("lcm overflows u64".into()))?;
    }
    Ok(acc)
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
///
/// Computed by exact division: Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    assert!(m > 0, "cyclotomic_poly is defined for m >= 1");
    // X^m - 1
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = exact_poly_div(&num, &phi_d);
    }
    num
}

/// Exact division of integer polynomials (constant-first), panics if the
/// division leaves a remainder. Both inputs must have unit leading term.
fn exact_poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd] == 1, "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "polynomial division not exact");
    quot
}

/// Order of GL_n(q): q^{n(n-1)/2} * prod_{i=1..n} (q^i - 1).
pub fn gl_order(n: u32, q: u64) -> BigInt {
    let q = BigInt::from(q);
    let mut order = q.pow(n * (n - 1) / 2);
    let mut qi = BigInt::one();
    for _ in 1..=n {
        qi *= &q;
        order *= &qi - BigInt::one();
    }
    order
}

/// Generic degree of the unipotent character attached to `lambda`, evaluated
/// at the prime power `Q`:
///
/// `Q^{n(lambda)} * prod_{i=1..|lambda|} (Q^i - 1) / prod_{h} (Q^h - 1)`.
///
/// The quotient is taken exactly; a non-exact division panics because it can
/// only mean a transcription bug.
pub fn unipotent_degree(lambda: &Partition, q_power: u64) -> BigInt {
    let q = BigInt::from(q_power);
    let m = lambda.size();
    let mut num = q.pow(u32::try_from(lambda.n_stat()).expect("n_stat fits u32"));
    let mut qi = BigInt::one();
    for _ in 1..=m {
        qi *= &q;
        num *= &qi - BigInt::one();
    }
    let mut den = BigInt::one();
    for h in lambda.hooks() {
        den *= q.pow(h) - BigInt::one();
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "hook quotient must divide exactly");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_match_known_values() {
        assert_eq!(partitions_of(4).unwrap().len(), 5);
        assert_eq!(partitions_of(10).unwrap().len(), 42);
        assert_eq!(partitions_of(0).unwrap().len(), 1);
        assert!(partitions_of(41).is_err());
    }

    #[test]
    fn partitions_come_out_in_descending_lex_order() {
        let parts: Vec<Vec<u32>> = partitions_of(4)
            .unwrap()
            .iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(
            parts,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    /// Euler's pentagonal-number recurrence, an independent route to p(n).
    fn pentagonal_counts(up_to: usize) -> Vec<i64> {
        let mut p = vec![0i64; up_to + 1];
        p[0] = 1;
        for n in 1..=up_to {
            let mut acc = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 as usize > n && g2 as usize > n {
                    break;
                }
                let sign = if k % 2 == 0 { -1 } else { 1 };
                if g1 as usize <= n {
                    acc += sign * p[n - g1 as usize];
                }
                if g2 as usize <= n {
                    acc += sign * p[n - g2 as usize];
                }
                k += 1;
            }
            p[n] = acc;
        }
        p
    }

    #[test]
    fn partition_counts_match_pentagonal_recurrence() {
        let expected = pentagonal_counts(40);
        for n in 0..=40u32 {
            assert_eq!(
                partitions_of(n).unwrap().len() as i64,
                expected[n as usize],
                "p({n})"
            );
        }
    }

    #[test]
    fn partition_constructor_rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![3, 1, 1]).is_ok());
    }

    #[test]
    fn hooks_and_n_stat_on_small_shapes() {
        let l = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(l.hooks(), vec![3, 1, 1]);
        assert_eq!(l.n_stat(), 1);
        let col = Partition::new(vec![1, 1, 1]).unwrap();
        assert_eq!(col.hooks(), vec![3, 2, 1]);
        assert_eq!(col.n_stat(), 3);
        assert_eq!(Partition::empty().hooks(), Vec::<u32>::new());
    }

    #[test]
    fn hook_sum_identity_exhaustive() {
        // sum of hooks = n(lambda) + n(lambda') + |lambda|
        for n in 0..=12u32 {
            for l in partitions_of(n).unwrap() {
                let sum: u64 = l.hooks().iter().map(|&h| h as u64).sum();
                assert_eq!(sum, l.n_stat() + l.conjugate().n_stat() + n as u64);
            }
        }
    }

    #[test]
    fn conjugate_is_an_involution() {
        for n in 0..=12u32 {
            for l in partitions_of(n).unwrap() {
                assert_eq!(l.conjugate().conjugate(), l);
            }
        }
    }

    #[test]
    fn unipotent_degree_examples() {
        let two_ones = Partition::new(vec![1, 1]).unwrap();
        for q in [2u64, 3, 4, 5, 9] {
            assert_eq!(unipotent_degree(&two_ones, q), BigInt::from(q));
        }
        let col3 = Partition::new(vec![1, 1, 1]).unwrap();
        assert_eq!(unipotent_degree(&col3, 2), BigInt::from(8));
        let trivial = Partition::new(vec![3]).unwrap();
        assert_eq!(unipotent_degree(&trivial, 5), BigInt::from(1));
        assert_eq!(unipotent_degree(&Partition::empty(), 7), BigInt::from(1));
    }

    #[test]
    fn transpose_degree_identity() {
        // deg(lambda', Q) = Q^{n(lambda') - n(lambda)} * deg(lambda, Q)
        for q in [2u64, 3, 4, 5] {
            for n in 1..=8u32 {
                for l in partitions_of(n).unwrap() {
                    let lt = l.conjugate();
                    let d = unipotent_degree(&l, q);
                    let dt = unipotent_degree(&lt, q);
                    let (a, b) = (l.n_stat(), lt.n_stat());
                    let (lhs, rhs) = if b >= a {
                        (dt.clone(), BigInt::from(q).pow((b - a) as u32) * &d)
                    } else {
                        (d.clone(), BigInt::from(q).pow((a - b) as u32) * &dt)
                    };
                    assert_eq!(lhs, rhs, "lambda = {:?}, q = {q}", l.parts());
                }
            }
        }
    }

    #[test]
    fn moebius_and_phi_basics() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(2), -1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(240), 64);
        // sum_{d | n} phi(d) = n and sum_{d | n} mu(d) = [n = 1]
        for n in 1..=200u64 {
            let phi_sum: u64 = divisors(n).iter().map(|&d| euler_phi(d)).sum();
            assert_eq!(phi_sum, n);
            let mu_sum: i64 = divisors(n).iter().map(|&d| moebius(d)).sum();
            assert_eq!(mu_sum, i64::from(n == 1));
        }
    }

    #[test]
    fn lcm_all_handles_overflow() {
        assert_eq!(lcm_all([4u64, 6, 10]).unwrap(), 60);
        assert_eq!(lcm_all(std::iter::empty()).unwrap(), 1);
        let big = u64::MAX / 2;
        assert!(lcm_all([big, big - 1, big - 3]).is_err());
    }

    #[test]
    fn cyclotomic_polynomials_match_known_tables() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // first index with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn cyclotomic_product_recovers_x_n_minus_1() {
        for n in 1..=60u64 {
            let mut prod = vec![1i64];
            for d in divisors(n) {
                prod = mul_int_poly(&prod, &cyclotomic_poly(d));
            }
            let mut expected = vec![0i64; n as usize + 1];
            expected[0] = -1;
            expected[n as usize] = 1;
            assert_eq!(prod, expected, "n = {n}");
        }
    }

    fn mul_int_poly(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        for m in 1..=100u64 {
            assert_eq!(cyclotomic_poly(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1, 5), BigInt::from(4));
        assert_eq!(gl_order(2, 2), BigInt::from(6));
        assert_eq!(gl_order(2, 3), BigInt::from(48));
        assert_eq!(gl_order(2, 5), BigInt::from(480));
        assert_eq!(gl_order(3, 2), BigInt::from(168));
        assert_eq!(gl_order(3, 3), BigInt::from(11232));
    }

    #[test]
    fn partitions_serialize_as_plain_arrays() {
        let p = Partition::new(vec![4, 2, 2, 1]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[4,2,2,1]");
        let back: Partition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        let empty: Partition = serde_json::from_str("[]").unwrap();
        assert_eq!(empty, Partition::empty());
        // out of order and zero parts are rejected on the way in
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        assert!(serde_json::from_str::<Partition>("[2,0]").is_err());
    }
}
