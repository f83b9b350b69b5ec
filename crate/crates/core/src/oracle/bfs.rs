//! Breadth-first closure of matrix groups over small finite fields.
//!
//! The engine enumerates a group literally: starting from the identity,
//! repeatedly multiply frontier elements by the generators until nothing
//! new appears. Orders are then exact counts and exponents are exact lcms
//! of element orders, with no theory in the loop. Built-in generator sets
//! cover the groups the exponent formulas are checked against: GL_n(q),
//! SL_2(q), PGL_2(q), Sp_4(q), SO_5(q) and the central quotient PSp_4(q).
//! Each built-in carries its classical order as a hard assertion, so a
//! wrong generator set cannot quietly produce a wrong exponent.
//!
//! Projective groups reuse the linear machinery: elements are normalized
//! so the first nonzero entry is 1, which picks one representative per
//! scalar coset.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::HashSet;

use crate::combinat::gl_order;
use crate::error::{Error, Result};
use crate::expo::{group_order, Family, GroupSpec};
use crate::ffield::{FieldDescriptor, FqElement};

/// Hard ceiling on the number of elements a closure may reach.
pub const BFS_ORDER_GUARD: u64 = 1_000_000;

/// A matrix group given by generators, with optional exact expected order.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    field: FieldDescriptor,
    dim: usize,
    gens: Vec<Vec<FqElement>>,
    projective: bool,
    expected_order: Option<BigInt>,
}

/// Row-major dim x dim multiplication over F_q.
fn mat_mul(field: &FieldDescriptor, dim: usize, a: &[FqElement], b: &[FqElement]) -> Vec<FqElement> {
    let mut out = vec![field.zero(); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..dim {
                let prod = field.mul(aik, b[k * dim + j]);
                out[i * dim + j] = field.add(out[i * dim + j], prod);
            }
        }
    }
    out
}

fn identity(field: &FieldDescriptor, dim: usize) -> Vec<FqElement> {
    let mut out = vec![field.zero(); dim * dim];
    for i in 0..dim {
        out[i * dim + i] = field.one();
    }
    out
}

/// Scale so the first nonzero entry is 1; the canonical representative of
/// a scalar coset.
fn normalize_projective(field: &FieldDescriptor, mat: &mut [FqElement]) {
    let lead = mat.iter().find(|e| !field.is_zero(**e)).copied();
    if let Some(lead) = lead {
        if lead != field.one() {
            let inv = field.inv(lead).expect("leading entry of invertible matrix");
            for e in mat.iter_mut() {
                *e = field.mul(*e, inv);
            }
        }
    }
}

/// Rank by Gaussian elimination; used only to validate generators.
fn is_invertible(field: &FieldDescriptor, dim: usize, mat: &[FqElement]) -> bool {
    let mut work: Vec<FqElement> = mat.to_vec();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !field.is_zero(work[r * dim + col]));
        let pivot = match pivot {
            Some(p) => p,
            None => return false,
        };
        if pivot != col {
            for j in 0..dim {
                work.swap(pivot * dim + j, col * dim + j);
            }
        }
        let inv = field.inv(work[col * dim + col]).expect("pivot is nonzero");
        for j in 0..dim {
            work[col * dim + j] = field.mul(work[col * dim + j], inv);
        }
        for r in 0..dim {
            if r == col || field.is_zero(work[r * dim + col]) {
                continue;
            }
            let factor = work[r * dim + col];
            for j in 0..dim {
                let sub = field.mul(factor, work[col * dim + j]);
                work[r * dim + j] = field.sub(work[r * dim + j], sub);
            }
        }
    }
    true
}

impl MatrixGroup {
    pub fn new(
        field: FieldDescriptor,
        dim: usize,
        gens: Vec<Vec<FqElement>>,
        projective: bool,
        expected_order: Option<BigInt>,
    ) -> Result<Self> {
        if dim == 0 || gens.is_empty() {
            return Err(Error::DegenerateSize(
                "matrix group needs a positive dimension and at least one generator".into(),
            ));
        }
        for g in &gens {
            if g.len() != dim * dim {
                return Err(Error::DimensionMismatch(g.len(), dim * dim));
            }
            if g.iter().any(|e| e.0 >= field.q()) {
                return Err(Error::DegenerateSize(
                    "matrix entry outside the field".into(),
                ));
            }
            if !is_invertible(&field, dim, g) {
                return Err(Error::DegenerateSize("singular generator".into()));
            }
        }
        let mut gens = gens;
        if projective {
            for g in &mut gens {
                normalize_projective(&field, g);
            }
        }
        if let Some(expected) = &expected_order {
            let guard = BigInt::from(BFS_ORDER_GUARD);
            if expected > &guard {
                let approx = expected.to_u64().unwrap_or(u64::MAX);
                return Err(Error::SizeGuard(approx));
            }
        }
        Ok(MatrixGroup {
            field,
            dim,
            gens,
            projective,
            expected_order,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// The order this group was declared to have, when one is known in
    /// closed form. Used by callers that want to refuse a closure before
    /// starting it.
    pub fn expected_order(&self) -> Option<&BigInt> {
        self.expected_order.as_ref()
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    /// Whether elements are identified up to scalar multiples.
    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// The full element list, breadth-first from the identity. Asserts the
    /// expected order when one was declared.
    pub fn closure(&self) -> Result<Vec<Vec<FqElement>>> {
        let id = identity(&self.field, self.dim);
        let mut seen: HashSet<Vec<FqElement>> = HashSet::new();
        seen.insert(id.clone());
        let mut elements = vec![id];
        let mut cursor = 0usize;
        while cursor < elements.len() {
            let current = elements[cursor].clone();
            cursor += 1;
            for g in &self.gens {
                let mut next = mat_mul(&self.field, self.dim, &current, g);
                if self.projective {
                    normalize_projective(&self.field, &mut next);
                }
                if seen.insert(next.clone()) {
                    if elements.len() as u64 >= BFS_ORDER_GUARD {
                        return Err(Error::SizeGuard(BFS_ORDER_GUARD));
                    }
                    elements.push(next);
                }
            }
        }
        if let Some(expected) = &self.expected_order {
            let got = BigInt::from(elements.len());
            if got != *expected {
                return Err(Error::OrderMismatch {
                    got: elements.len() as u64,
                    expected: expected.to_u64().unwrap_or(u64::MAX),
                });
            }
        }
        Ok(elements)
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.closure()?.len() as u64)
    }

    /// lcm of the orders of all elements, by literal iteration.
    pub fn exponent(&self) -> Result<u64> {
        Ok(self.survey()?.1)
    }

    /// Order and exponent from a single breadth-first pass.
    pub fn survey(&self) -> Result<(u64, u64)> {
        let elements = self.closure()?;
        let id = identity(&self.field, self.dim);
        let mut exponent = 1u64;
        for e in &elements {
            let mut power = e.clone();
            let mut order = 1u64;
            while power != id {
                power = mat_mul(&self.field, self.dim, &power, e);
                if self.projective {
                    normalize_projective(&self.field, &mut power);
                }
                order += 1;
                assert!(
                    order <= elements.len() as u64,
                    "element order exceeded the group order"
                );
            }
            exponent = num_integer::lcm(exponent, order);
        }
        Ok((elements.len() as u64, exponent))
    }
}

fn fq(v: u64) -> FqElement {
    FqElement(v)
}

/// GL_n(q) from a diagonal torus generator, an n-cycle permutation and one
/// transvection.
pub fn gl_group(n: usize, q: u64) -> Result<MatrixGroup> {
    if n < 2 {
        return Err(Error::DegenerateSize("rank at least 2 for the built-in".into()));
    }
    let field = FieldDescriptor::from_q(q)?;
    let xi = crate::ffield::fixed_generator(q, 1).map(|(ext, g)| {
        ext.as_base(&g).expect("degree-1 generator is a base element")
    })?;
    let dim = n;
    let mut diag = identity(&field, dim);
    diag[0] = xi;
    let mut cycle = vec![field.zero(); dim * dim];
    for i in 0..dim {
        cycle[i * dim + (i + 1) % dim] = field.one();
    }
    let mut transvection = identity(&field, dim);
    transvection[dim] = field.one(); // row 1, column 0
    let expected = gl_order(n as u32, q);
    MatrixGroup::new(field, dim, vec![diag, cycle, transvection], false, Some(expected))
}

/// SL_2(q) as upper and lower unipotent root groups.
pub fn sl2_group(q: u64) -> Result<MatrixGroup> {
    let field = FieldDescriptor::from_q(q)?;
    let mut gens = Vec::new();
    for a in 1..q {
        gens.push(vec![field.one(), fq(a), field.zero(), field.one()]);
        gens.push(vec![field.one(), field.zero(), fq(a), field.one()]);
    }
    let expected = BigInt::from(q) * BigInt::from(q * q - 1);
    MatrixGroup::new(field, 2, gens, false, Some(expected))
}

/// PGL_2(q): the GL_2(q) generators taken projectively.
pub fn pgl2_group(q: u64) -> Result<MatrixGroup> {
    let field = FieldDescriptor::from_q(q)?;
    let xi = crate::ffield::fixed_generator(q, 1).map(|(ext, g)| {
        ext.as_base(&g).expect("degree-1 generator is a base element")
    })?;
    let gens = vec![
        vec![xi, field.zero(), field.zero(), field.one()],
        vec![field.zero(), field.one(), field.one(), field.zero()],
        vec![field.one(), field.one(), field.zero(), field.one()],
    ];
    let expected = BigInt::from(q) * BigInt::from(q * q - 1);
    MatrixGroup::new(field, 2, gens, true, Some(expected))
}

/// All symplectic transvections x -> x + B(x, v) v for the standard form
/// B with Gram matrix [[0, I], [-I, 0]], v over all projective lines.
fn symplectic_transvections(field: &FieldDescriptor, m: usize) -> Vec<Vec<FqElement>> {
    let dim = 2 * m;
    let q = field.q();
    // B(x, v) = sum_i (x_i v_{m+i} - x_{m+i} v_i)
    let mut gens = Vec::new();
    let mut vectors: Vec<Vec<FqElement>> = Vec::new();
    let total = q.pow(dim as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(dim);
        let mut c = code;
        for _ in 0..dim {
            v.push(fq(c % q));
            c /= q;
        }
        // one vector per line: first nonzero coordinate equal to 1
        let lead = v.iter().find(|e| !field.is_zero(**e)).copied();
        if lead != Some(field.one()) {
            continue;
        }
        vectors.push(v);
    }
    for v in vectors {
        let mut t = identity(field, dim);
        // T(x)_j = x_j + B(x, v) v_j; column form: T_{jk} = delta_jk + v_j * w_k
        // where w_k encodes B(e_k, v)
        let mut w = vec![field.zero(); dim];
        for i in 0..m {
            w[i] = v[m + i];
            w[m + i] = field.neg(v[i]);
        }
        for j in 0..dim {
            for k in 0..dim {
                let add = field.mul(v[j], w[k]);
                t[j * dim + k] = field.add(t[j * dim + k], add);
            }
        }
        gens.push(t);
    }
    gens
}

/// Sp_4(q) from its transvections.
pub fn sp4_group(q: u64) -> Result<MatrixGroup> {
    let field = FieldDescriptor::from_q(q)?;
    let gens = symplectic_transvections(&field, 2);
    let expected = group_order(&GroupSpec::new(Family::Sp, 2, q)?);
    MatrixGroup::new(field, 4, gens, false, Some(expected))
}

/// PSp_4(q) = Sp_4(q) / {+-I}, the transvections taken projectively.
pub fn psp4_group(q: u64) -> Result<MatrixGroup> {
    let field = FieldDescriptor::from_q(q)?;
    let gens = symplectic_transvections(&field, 2);
    let (_, k) = crate::ffield::prime_power_decompose(q)?;
    let center = if q % 2 == 1 { 2u64 } else { 1 };
    let _ = k;
    let expected = group_order(&GroupSpec::new(Family::Sp, 2, q)?) / BigInt::from(center);
    MatrixGroup::new(field, 4, gens, true, Some(expected))
}

/// SO_5(q), q odd, for the dot-product form: generated by products of two
/// reflections r_{e_1} r_v over all anisotropic vectors v. Every product
/// of two reflections is such a pair composition, so the closure is the
/// full special orthogonal group.
pub fn so5_group(q: u64) -> Result<MatrixGroup> {
    let spec = GroupSpec::new(Family::SOodd, 2, q)?; // rejects even q
    let field = FieldDescriptor::from_q(q)?;
    let dim = 5usize;
    let dot = |a: &[FqElement], b: &[FqElement]| {
        let mut acc = field.zero();
        for i in 0..dim {
            acc = field.add(acc, field.mul(a[i], b[i]));
        }
        acc
    };
    // reflection r_v as a matrix: r_v(e_k) = e_k - 2 <e_k, v> / Q(v) * v
    let reflection = |v: &[FqElement]| -> Vec<FqElement> {
        let qv = dot(v, v);
        let two = field.add(field.one(), field.one());
        let scale = field.mul(two, field.inv(qv).expect("anisotropic vector"));
        let mut r = identity(&field, dim);
        for k in 0..dim {
            let coeff = field.mul(scale, v[k]);
            for j in 0..dim {
                let sub = field.mul(coeff, v[j]);
                // entry (j, k): image of e_k, j-th coordinate
                r[j * dim + k] = field.sub(r[j * dim + k], sub);
            }
        }
        r
    };
    let mut e1 = vec![field.zero(); dim];
    e1[0] = field.one();
    let r_e1 = reflection(&e1);
    let mut gens = Vec::new();
    let total = q.pow(dim as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(dim);
        let mut c = code;
        for _ in 0..dim {
            v.push(fq(c % q));
            c /= q;
        }
        let lead = v.iter().find(|e| !field.is_zero(**e)).copied();
        if lead != Some(field.one()) {
            continue; // one representative per line; r_v = r_{cv}
        }
        if field.is_zero(dot(&v, &v)) {
            continue; // isotropic vectors carry no reflection
        }
        gens.push(mat_mul(&field, dim, &r_e1, &reflection(&v)));
    }
    let expected = group_order(&spec);
    MatrixGroup::new(field, dim, gens, false, Some(expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_of_f2_is_s3() {
        let g = gl_group(2, 2).unwrap();
        assert_eq!(g.order().unwrap(), 6);
        assert_eq!(g.exponent().unwrap(), 6);
    }

    #[test]
    fn gl2_orders_and_exponents() {
        let g3 = gl_group(2, 3).unwrap();
        assert_eq!(g3.order().unwrap(), 48);
        assert_eq!(g3.exponent().unwrap(), 24);
        let g4 = gl_group(2, 4).unwrap();
        assert_eq!(g4.order().unwrap(), 180);
        assert_eq!(g4.exponent().unwrap(), 30);
        let g5 = gl_group(2, 5).unwrap();
        assert_eq!(g5.order().unwrap(), 480);
        assert_eq!(g5.exponent().unwrap(), 120);
    }

    #[test]
    fn gl3_of_f2_exponent() {
        let g = gl_group(3, 2).unwrap();
        assert_eq!(g.order().unwrap(), 168);
        assert_eq!(g.exponent().unwrap(), 84);
    }

    #[test]
    fn sl2_and_pgl2_at_q3() {
        let sl2 = sl2_group(3).unwrap();
        assert_eq!(sl2.order().unwrap(), 24);
        assert_eq!(sl2.exponent().unwrap(), 12);
        let pgl2 = pgl2_group(3).unwrap();
        assert_eq!(pgl2.order().unwrap(), 24);
        assert_eq!(pgl2.exponent().unwrap(), 12);
    }

    #[test]
    fn invalid_generators_are_rejected() {
        let field = FieldDescriptor::from_q(3).unwrap();
        let singular = vec![field.one(), field.one(), field.one(), field.one()];
        assert!(MatrixGroup::new(field, 2, vec![singular], false, None).is_err());
    }

    #[test]
    fn exponent_matches_formula_on_small_groups() {
        use crate::expo::exponent_formula;
        for q in [2u64, 3, 4] {
            let bfs = gl_group(2, q).unwrap().exponent().unwrap();
            let formula =
                exponent_formula(&GroupSpec::new(Family::Gl, 2, q).unwrap()).unwrap();
            assert_eq!(BigInt::from(bfs), formula, "q={q}");
        }
    }

    #[test]
    fn rank_two_symplectic_and_odd_orthogonal_closures() {
        let sp = sp4_group(3).unwrap();
        assert_eq!(sp.order().unwrap(), 51840);
        assert_eq!(sp.exponent().unwrap(), 360);
        let so = so5_group(3).unwrap();
        assert_eq!(so.order().unwrap(), 51840);
        assert_eq!(so.exponent().unwrap(), 360);
    }

    #[test]
    fn central_quotient_of_the_symplectic_group() {
        // Sp_4(3)/{+-I} has half the order; its exponent drops to 180
        // because the order-4 and order-8 torus elements square resp.
        // quadruple into the center
        let psp = psp4_group(3).unwrap();
        assert_eq!(psp.order().unwrap(), 25920);
        assert_eq!(psp.exponent().unwrap(), 180);
    }

    #[test]
    fn so5_rejects_even_characteristic() {
        assert!(matches!(so5_group(4), Err(Error::EvenCharSOodd(4))));
    }
}
