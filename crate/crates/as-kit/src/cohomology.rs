//! Finite graded commutative algebras modeling the even-degree rational
//! cohomology of a closed manifold, with coefficients extended to
//! Q(zeta_p), together with the fundamental-class pairing.
//!
//! Rings enter through three constructors — `ring_cpn`, `ring_tensor`,
//! `ring_from_table` — and every constructed ring is exhaustively
//! validated: graded, commutative, associative, unital, one basis element
//! per product expansion out of range. Only even degrees are modeled, so
//! commutativity carries no signs.

use crate::cyclotomic::{check_odd_prime, CyclotomicNumber};
use crate::series::RingOps;
use crate::{Error, Result};
use num::{BigInt, BigRational};
use std::fmt;
use std::sync::Arc;

/// Structure-constant description consumed by [`ring_from_table`].
///
/// Products may be listed in either order; unlisted products default to
/// zero, except products with the unit, which default to the identity.
#[derive(Debug, Clone)]
pub struct RingSpec {
    pub p: u64,
    pub top: u32,
    /// (name, degree) pairs; exactly one entry must have degree 0.
    pub basis: Vec<(String, u32)>,
    /// Sparse products: (i, j, dense coefficient vector over the basis).
    pub mult: Vec<(usize, usize, Vec<CyclotomicNumber>)>,
    /// Name of the degree-`top` basis functional.
    pub fundamental: String,
}

/// A validated graded commutative Q(zeta_p)-algebra with chosen basis.
pub struct CohomologyRing {
    p: u64,
    top: u32,
    names: Vec<String>,
    degrees: Vec<u32>,
    unit: usize,
    fundamental: usize,
    /// mult[i][j]: sparse expansion of basis_i * basis_j.
    mult: Vec<Vec<Vec<(usize, CyclotomicNumber)>>>,
}

impl fmt::Debug for CohomologyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohomologyRing")
            .field("p", &self.p)
            .field("top", &self.top)
            .field("basis", &self.names)
            .finish()
    }
}

impl CohomologyRing {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn fundamental_index(&self) -> usize {
        self.fundamental
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Structural equality — everything except basis names. Elements of
    /// structurally equal rings are interoperable.
    pub fn same_structure(&self, other: &CohomologyRing) -> bool {
        std::ptr::eq(self, other)
            || (self.p == other.p
                && self.top == other.top
                && self.degrees == other.degrees
                && self.unit == other.unit
                && self.fundamental == other.fundamental
                && self.mult == other.mult)
    }

    /// Dense coordinates of the product of two basis elements.
    pub fn product_coords(&self, i: usize, j: usize) -> Vec<CyclotomicNumber> {
        let mut out = vec![CyclotomicNumber::zero(self.p); self.dim()];
        for (m, c) in &self.mult[i][j] {
            out[*m] = c.clone();
        }
        out
    }

    fn mul_coords(
        &self,
        x: &[CyclotomicNumber],
        y: &[CyclotomicNumber],
    ) -> Vec<CyclotomicNumber> {
        let mut out = vec![CyclotomicNumber::zero(self.p); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                // Scalar lane: all-rational factors collapse to arithmetic
                // on the constant coordinate, with no cyclotomic temporaries.
                if let (Some(a), Some(b)) = (xi.as_rational(), yj.as_rational()) {
                    let ab = a * b;
                    for (m, c) in &self.mult[i][j] {
                        if let Some(rc) = c.as_rational() {
                            out[*m].rational_mul_add_assign(&ab, rc);
                        } else {
                            out[*m] =
                                out[*m].checked_add(&c.scale(&ab)).expect("same field");
                        }
                    }
                    continue;
                }
                let factor = xi * yj;
                for (m, c) in &self.mult[i][j] {
                    out[*m] = out[*m].checked_add(&(&factor * c)).expect("same field");
                }
            }
        }
        out
    }
}

fn validation_error(msg: String) -> Error {
    Error::RingValidation(msg)
}

/// Builds and exhaustively validates a ring from structure constants.
pub fn ring_from_table(spec: &RingSpec) -> Result<Arc<CohomologyRing>> {
    check_odd_prime(spec.p)?;
    let dim = spec.basis.len();
    if dim == 0 {
        return Err(validation_error("basis is empty".into()));
    }
    if dim > 200 {
        return Err(validation_error(format!(
            "ring dimension {dim} exceeds the supported bound 200"
        )));
    }
    if spec.top % 2 != 0 {
        return Err(validation_error(format!(
            "top degree {} is odd; only even-degree classes are modeled",
            spec.top
        )));
    }
    let names: Vec<String> = spec.basis.iter().map(|(n, _)| n.clone()).collect();
    let degrees: Vec<u32> = spec.basis.iter().map(|(_, d)| *d).collect();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(validation_error(format!("basis entry {i} has an empty name")));
        }
        if names[..i].contains(name) {
            return Err(validation_error(format!("duplicate basis name {name:?}")));
        }
    }
    for (name, d) in &spec.basis {
        if d % 2 != 0 {
            return Err(validation_error(format!(
                "basis element {name:?} has odd degree {d}"
            )));
        }
        if *d > spec.top {
            return Err(validation_error(format!(
                "basis element {name:?} has degree {d} above the top degree {}",
                spec.top
            )));
        }
    }
    let units: Vec<usize> = (0..dim).filter(|&i| degrees[i] == 0).collect();
    let &[unit] = units.as_slice() else {
        return Err(validation_error(format!(
            "expected exactly one degree-0 basis element, found {}",
            units.len()
        )));
    };
    let fundamental = names
        .iter()
        .position(|n| *n == spec.fundamental)
        .ok_or_else(|| {
            validation_error(format!(
                "fundamental class {:?} is not a basis element",
                spec.fundamental
            ))
        })?;
    if degrees[fundamental] != spec.top {
        return Err(validation_error(format!(
            "fundamental class {:?} has degree {}, expected the top degree {}",
            spec.fundamental, degrees[fundamental], spec.top
        )));
    }

    // Dense product table; None = not yet specified.
    let mut table: Vec<Vec<Option<Vec<CyclotomicNumber>>>> = vec![vec![None; dim]; dim];
    for (i, j, coeffs) in &spec.mult {
        if *i >= dim || *j >= dim {
            return Err(validation_error(format!(
                "product entry ({i}, {j}) is out of range for dimension {dim}"
            )));
        }
        if coeffs.len() != dim {
            return Err(validation_error(format!(
                "product of {:?} and {:?} has {} coefficients, expected {dim}",
                names[*i],
                names[*j],
                coeffs.len()
            )));
        }
        for c in coeffs {
            if c.p() != spec.p {
                return Err(Error::FieldMismatch(spec.p, c.p()));
            }
        }
        for slot in [(*i, *j), (*j, *i)] {
            match &table[slot.0][slot.1] {
                Some(existing) if existing != coeffs => {
                    return Err(validation_error(format!(
                        "products of {:?} and {:?} disagree between the two listed orders",
                        names[*i], names[*j]
                    )));
                }
                _ => table[slot.0][slot.1] = Some(coeffs.clone()),
            }
        }
    }
    // Defaults: identity against the unit, zero elsewhere.
    let zero_vec = vec![CyclotomicNumber::zero(spec.p); dim];
    for i in 0..dim {
        for j in 0..dim {
            if table[i][j].is_some() {
                continue;
            }
            let filled = if i == unit {
                let mut v = zero_vec.clone();
                v[j] = CyclotomicNumber::one(spec.p);
                v
            } else if j == unit {
                let mut v = zero_vec.clone();
                v[i] = CyclotomicNumber::one(spec.p);
                v
            } else {
                zero_vec.clone()
            };
            table[i][j] = Some(filled);
        }
    }
    let table: Vec<Vec<Vec<CyclotomicNumber>>> = table
        .into_iter()
        .map(|row| row.into_iter().map(Option::unwrap).collect())
        .collect();

    // Grading.
    for i in 0..dim {
        for j in 0..dim {
            let target = degrees[i] + degrees[j];
            for (m, c) in table[i][j].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if target > spec.top {
                    return Err(validation_error(format!(
                        "product of {:?} and {:?} should vanish above the top degree",
                        names[i], names[j]
                    )));
                }
                if degrees[m] != target {
                    return Err(validation_error(format!(
                        "product of {:?} and {:?} hits {:?} of degree {}, expected degree {}",
                        names[i], names[j], names[m], degrees[m], target
                    )));
                }
            }
        }
    }
    // Unit acts as the identity.
    for j in 0..dim {
        let row = &table[unit][j];
        let identity_ok = row
            .iter()
            .enumerate()
            .all(|(m, c)| if m == j { c.is_one() } else { c.is_zero() });
        if !identity_ok {
            return Err(validation_error(format!(
                "unit does not act as the identity on {:?}",
                names[j]
            )));
        }
    }
    // Associativity on all basis triples.
    let mul_vec = |x: &[CyclotomicNumber], k: usize| -> Vec<CyclotomicNumber> {
        let mut out = zero_vec.clone();
        for (m, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, w) in table[m][k].iter().enumerate() {
                if !w.is_zero() {
                    out[t] = out[t].checked_add(&(c * w)).expect("same field");
                }
            }
        }
        out
    };
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let left = mul_vec(&table[i][j], k);
                // b_i * (b_j b_k): multiply from the left is the same as
                // from the right by commutativity of the table.
                let right = mul_vec(&table[j][k], i);
                if left != right {
                    return Err(validation_error(format!(
                        "associativity fails on ({}, {}, {})",
                        names[i], names[j], names[k]
                    )));
                }
            }
        }
    }

    let mult = table
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| {
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(Arc::new(CohomologyRing {
        p: spec.p,
        top: spec.top,
        names,
        degrees,
        unit,
        fundamental,
        mult,
    }))
}

/// The one-point ring: a single degree-0 class that is both unit and
/// fundamental.
pub fn ring_point(p: u64) -> Result<Arc<CohomologyRing>> {
    ring_from_table(&RingSpec {
        p,
        top: 0,
        basis: vec![("1".into(), 0)],
        mult: Vec::new(),
        fundamental: "1".into(),
    })
}

/// H*(CP^N): Q(zeta_p)[a]/(a^{N+1}) with deg a = 2; fundamental a^N.
pub fn ring_cpn(n: u32, p: u64) -> Result<Arc<CohomologyRing>> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "ring_cpn needs N >= 1; use ring_point for a point".into(),
        ));
    }
    let name = |j: u32| match j {
        0 => "1".to_string(),
        1 => "a".to_string(),
        j => format!("a^{j}"),
    };
    let basis: Vec<(String, u32)> = (0..=n).map(|j| (name(j), 2 * j)).collect();
    let mut mult = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let mut coeffs = vec![CyclotomicNumber::zero(p); (n + 1) as usize];
            if i + j <= n {
                coeffs[(i + j) as usize] = CyclotomicNumber::one(p);
            }
            mult.push((i as usize, j as usize, coeffs));
        }
    }
    ring_from_table(&RingSpec {
        p,
        top: 2 * n,
        basis,
        mult,
        fundamental: name(n),
    })
}

/// Tensor product of two rings over Q(zeta_p): product basis, sum grading,
/// fundamental = product of the fundamentals.
///
/// Basis names compose as "left|right" with unit factors elided; if that
/// would collide, every pair keeps the full compound name.
pub fn ring_tensor(
    a: &Arc<CohomologyRing>,
    b: &Arc<CohomologyRing>,
) -> Result<Arc<CohomologyRing>> {
    if a.p != b.p {
        return Err(Error::FieldMismatch(a.p, b.p));
    }
    let p = a.p;
    let dim = a.dim() * b.dim();
    if dim > 200 {
        return Err(validation_error(format!(
            "tensor dimension {dim} exceeds the supported bound 200"
        )));
    }
    let simple_name = |i: usize, j: usize| -> String {
        if j == b.unit {
            a.names[i].clone()
        } else if i == a.unit {
            b.names[j].clone()
        } else {
            format!("{}|{}", a.names[i], b.names[j])
        }
    };
    let full_name = |i: usize, j: usize| format!("{}|{}", a.names[i], b.names[j]);
    let pairs: Vec<(usize, usize)> = (0..a.dim())
        .flat_map(|i| (0..b.dim()).map(move |j| (i, j)))
        .collect();
    let simple: Vec<String> = pairs.iter().map(|&(i, j)| simple_name(i, j)).collect();
    let unique = {
        let mut seen = std::collections::HashSet::new();
        simple.iter().all(|n| seen.insert(n))
    };
    let names: Vec<String> = if unique {
        simple
    } else {
        pairs.iter().map(|&(i, j)| full_name(i, j)).collect()
    };
    let index = |i: usize, j: usize| i * b.dim() + j;
    let basis: Vec<(String, u32)> = pairs
        .iter()
        .zip(&names)
        .map(|(&(i, j), n)| (n.clone(), a.degrees[i] + b.degrees[j]))
        .collect();
    let mut mult = Vec::new();
    for &(i1, j1) in &pairs {
        for &(i2, j2) in &pairs {
            if index(i1, j1) > index(i2, j2) {
                continue;
            }
            let mut coeffs = vec![CyclotomicNumber::zero(p); dim];
            for (ma, ca) in &a.mult[i1][i2] {
                for (mb, cb) in &b.mult[j1][j2] {
                    let slot = &mut coeffs[index(*ma, *mb)];
                    *slot = slot.checked_add(&(ca * cb)).expect("same field");
                }
            }
            mult.push((index(i1, j1), index(i2, j2), coeffs));
        }
    }
    ring_from_table(&RingSpec {
        p,
        top: a.top + b.top,
        basis,
        mult,
        fundamental: names[index(a.fundamental, b.fundamental)].clone(),
    })
}

/// H*(CP^2 # CP^2-bar): basis {1, a, b, v} with a^2 = v, b^2 = -v, ab = 0;
/// fundamental v.
pub fn ring_cp2_cp2bar(p: u64) -> Result<Arc<CohomologyRing>> {
    let zero = || CyclotomicNumber::zero(p);
    let one = CyclotomicNumber::one(p);
    let coeff_at = |idx: usize, value: CyclotomicNumber| {
        let mut v = vec![zero(), zero(), zero(), zero()];
        v[idx] = value;
        v
    };
    ring_from_table(&RingSpec {
        p,
        top: 4,
        basis: vec![
            ("1".into(), 0),
            ("a".into(), 2),
            ("b".into(), 2),
            ("v".into(), 4),
        ],
        mult: vec![
            (1, 1, coeff_at(3, one.clone())),
            (2, 2, coeff_at(3, -&one)),
            (1, 2, vec![zero(), zero(), zero(), zero()]),
        ],
        fundamental: "v".into(),
    })
}

/// An element of a cohomology ring: a coefficient vector over the basis.
#[derive(Clone)]
pub struct RingElement {
    ring: Arc<CohomologyRing>,
    coords: Vec<CyclotomicNumber>,
}

impl RingElement {
    pub fn zero(ring: &Arc<CohomologyRing>) -> Self {
        RingElement {
            ring: ring.clone(),
            coords: vec![CyclotomicNumber::zero(ring.p); ring.dim()],
        }
    }

    pub fn unit(ring: &Arc<CohomologyRing>) -> Self {
        let mut out = Self::zero(ring);
        out.coords[ring.unit] = CyclotomicNumber::one(ring.p);
        out
    }

    pub fn basis_element(ring: &Arc<CohomologyRing>, name: &str) -> Result<Self> {
        let idx = ring
            .basis_index(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no basis element named {name:?}")))?;
        let mut out = Self::zero(ring);
        out.coords[idx] = CyclotomicNumber::one(ring.p);
        Ok(out)
    }

    pub fn from_coords(ring: &Arc<CohomologyRing>, coords: Vec<CyclotomicNumber>) -> Result<Self> {
        if coords.len() != ring.dim() {
            return Err(Error::CoordinateCount {
                p: ring.p,
                expected: ring.dim(),
                got: coords.len(),
            });
        }
        for c in &coords {
            if c.p() != ring.p {
                return Err(Error::FieldMismatch(ring.p, c.p()));
            }
        }
        Ok(RingElement {
            ring: ring.clone(),
            coords,
        })
    }

    /// n * unit for an integer n.
    pub fn from_integer(ring: &Arc<CohomologyRing>, n: i64) -> Self {
        Self::unit(ring).scale(&CyclotomicNumber::from_integer(ring.p, n))
    }

    pub fn ring(&self) -> &Arc<CohomologyRing> {
        &self.ring
    }

    pub fn coords(&self) -> &[CyclotomicNumber] {
        &self.coords
    }

    pub fn coefficient(&self, name: &str) -> Result<&CyclotomicNumber> {
        let idx = self
            .ring
            .basis_index(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no basis element named {name:?}")))?;
        Ok(&self.coords[idx])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn is_unit_element(&self) -> bool {
        self == &Self::unit(&self.ring)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_structure(&other.ring) {
            Ok(())
        } else {
            Err(Error::StructuralMismatch(
                "elements live in different cohomology rings".into(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(RingElement {
            ring: self.ring.clone(),
            coords,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(RingElement {
            ring: self.ring.clone(),
            coords,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            coords: self.ring.mul_coords(&self.coords, &other.coords),
        })
    }

    /// Scales by a field element.
    pub fn scale(&self, factor: &CyclotomicNumber) -> Self {
        assert_eq!(factor.p(), self.ring.p, "cohomology ring field mismatch");
        RingElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &BigRational) -> Self {
        RingElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::unit(&self.ring);
        for _ in 0..exponent {
            out = out.checked_mul(self).expect("same ring");
        }
        out
    }

    /// The degree-n component.
    pub fn graded_part(&self, degree: u32) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.ring.degrees[i] == degree {
                    c.clone()
                } else {
                    CyclotomicNumber::zero(self.ring.p)
                }
            })
            .collect();
        RingElement {
            ring: self.ring.clone(),
            coords,
        }
    }

    /// True when every nonzero coordinate sits in the given degree.
    pub fn has_pure_degree(&self, degree: u32) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.ring.degrees[i] == degree)
    }

    /// Applies the Galois map coefficientwise.
    pub fn galois_apply(&self, n: i64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.galois_apply(n))
            .collect::<Result<_>>()?;
        Ok(RingElement {
            ring: self.ring.clone(),
            coords,
        })
    }

    /// The coefficient of the fundamental class: the pairing with [M].
    pub fn pair_fundamental(&self) -> CyclotomicNumber {
        self.coords[self.ring.fundamental].clone()
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_structure(&other.ring))
            && self.coords == other.coords
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if i == self.ring.unit {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", self.ring.names[i])?;
            } else {
                write!(f, "({c})*{}", self.ring.names[i])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self} in p={})", self.ring.p)
    }
}

macro_rules! forward_ring_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("cohomology ring mismatch")
            }
        }
        impl std::ops::$trait for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_ring_binop!(Add, add, checked_add);
forward_ring_binop!(Sub, sub, checked_sub);
forward_ring_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl RingOps for RingElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        Self::unit(&self.ring)
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        Self::unit(&self.ring).scale(&CyclotomicNumber::from_rational(
            self.ring.p,
            BigRational::from_integer(n.clone()),
        ))
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn ref_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ref_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ref_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ref_neg(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cpn_truncation_and_pairing() {
        let s2 = ring_cpn(1, 5).unwrap();
        let a = RingElement::basis_element(&s2, "a").unwrap();
        assert!((&a * &a).is_zero());

        let cp2 = ring_cpn(2, 5).unwrap();
        let a = RingElement::basis_element(&cp2, "a").unwrap();
        let a2 = &a * &a;
        assert_eq!(a2, RingElement::basis_element(&cp2, "a^2").unwrap());
        assert!((&a2 * &a).is_zero());
        assert!(a2.pair_fundamental().is_one());
        assert!(a.pair_fundamental().is_zero());
        assert!(RingElement::unit(&cp2).pair_fundamental().is_zero());

        assert!(ring_cpn(0, 5).is_err());
    }

    #[test]
    fn cpn_round_trips_through_the_table_constructor() {
        let direct = ring_cpn(3, 7).unwrap();
        // The same presentation entered by hand.
        let mut mult = Vec::new();
        for i in 1..=3usize {
            for j in i..=3usize {
                let mut coeffs = vec![CyclotomicNumber::zero(7); 4];
                if i + j <= 3 {
                    coeffs[i + j] = CyclotomicNumber::one(7);
                }
                mult.push((i, j, coeffs));
            }
        }
        let manual = ring_from_table(&RingSpec {
            p: 7,
            top: 6,
            basis: vec![
                ("1".into(), 0),
                ("a".into(), 2),
                ("a^2".into(), 4),
                ("a^3".into(), 6),
            ],
            mult,
            fundamental: "a^3".into(),
        })
        .unwrap();
        assert!(direct.same_structure(&manual));
        assert_eq!(direct.names(), manual.names());
    }

    #[test]
    fn connected_sum_ring_relations() {
        let ring = ring_cp2_cp2bar(7).unwrap();
        let a = RingElement::basis_element(&ring, "a").unwrap();
        let b = RingElement::basis_element(&ring, "b").unwrap();
        let v = RingElement::basis_element(&ring, "v").unwrap();
        assert_eq!(&a * &a, v);
        assert_eq!(&b * &b, -&v);
        assert!((&a * &b).is_zero());
        assert!((&a * &a).pair_fundamental().is_one());
        let sum_of_squares = &(&a * &a) + &(&b * &b);
        assert!(sum_of_squares.pair_fundamental().is_zero());
        assert!(sum_of_squares.is_zero());
    }

    #[test]
    fn table_constructor_rejects_non_associative_input() {
        // 1, x, q, c, m with x*x = q, x*q = c, x*c = m but q*q = 0:
        // (x x) q = 0 while x (x q) = m.
        let p = 5;
        let coeff_at = |idx: usize| {
            let mut v = vec![CyclotomicNumber::zero(p); 5];
            v[idx] = CyclotomicNumber::one(p);
            v
        };
        let spec = RingSpec {
            p,
            top: 8,
            basis: vec![
                ("1".into(), 0),
                ("x".into(), 2),
                ("q".into(), 4),
                ("c".into(), 6),
                ("m".into(), 8),
            ],
            mult: vec![
                (1, 1, coeff_at(2)),
                (1, 2, coeff_at(3)),
                (1, 3, coeff_at(4)),
            ],
            fundamental: "m".into(),
        };
        let err = ring_from_table(&spec).unwrap_err();
        match err {
            Error::RingValidation(msg) => {
                assert!(msg.contains("associativity"), "{msg}");
                assert!(msg.contains('x') && msg.contains('q'), "{msg}");
            }
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn table_constructor_rejects_bad_grading_and_units() {
        let p = 5;
        let base = |mult: Vec<(usize, usize, Vec<CyclotomicNumber>)>| RingSpec {
            p,
            top: 4,
            basis: vec![("1".into(), 0), ("a".into(), 2), ("v".into(), 4)],
            mult,
            fundamental: "v".into(),
        };
        // a*a lands in degree 2: wrong.
        let mut bad = vec![CyclotomicNumber::zero(p); 3];
        bad[1] = CyclotomicNumber::one(p);
        assert!(matches!(
            ring_from_table(&base(vec![(1, 1, bad)])),
            Err(Error::RingValidation(_))
        ));
        // Unit row overridden with a non-identity value.
        let mut not_identity = vec![CyclotomicNumber::zero(p); 3];
        not_identity[2] = CyclotomicNumber::one(p);
        assert!(matches!(
            ring_from_table(&base(vec![(0, 1, not_identity)])),
            Err(Error::RingValidation(_))
        ));
        // Disagreeing (i,j) vs (j,i).
        let mut v1 = vec![CyclotomicNumber::zero(p); 3];
        v1[2] = CyclotomicNumber::one(p);
        let v2 = vec![CyclotomicNumber::zero(p); 3];
        assert!(matches!(
            ring_from_table(&base(vec![(1, 1, v1.clone()), (1, 1, v2)])),
            Err(Error::RingValidation(_))
        ));
        // Duplicate names.
        let dup = RingSpec {
            p,
            top: 2,
            basis: vec![("1".into(), 0), ("a".into(), 2), ("a".into(), 2)],
            mult: vec![],
            fundamental: "a".into(),
        };
        assert!(matches!(
            ring_from_table(&dup),
            Err(Error::RingValidation(_))
        ));
        // Odd degree.
        let odd = RingSpec {
            p,
            top: 2,
            basis: vec![("1".into(), 0), ("a".into(), 1)],
            mult: vec![],
            fundamental: "a".into(),
        };
        assert!(ring_from_table(&odd).is_err());
        // Fundamental must sit in the top degree.
        let low_fund = RingSpec {
            p,
            top: 4,
            basis: vec![("1".into(), 0), ("a".into(), 2), ("v".into(), 4)],
            mult: vec![],
            fundamental: "a".into(),
        };
        assert!(ring_from_table(&low_fund).is_err());
    }

    #[test]
    fn tensor_of_spheres() {
        let s2 = ring_cpn(1, 7).unwrap();
        let prod = ring_tensor(&s2, &s2).unwrap();
        assert_eq!(prod.top(), 4);
        assert_eq!(prod.dim(), 4);
        // Collision fallback: compound names on every pair.
        let x = RingElement::basis_element(&prod, "a|1").unwrap();
        let y = RingElement::basis_element(&prod, "1|a").unwrap();
        assert!((&x * &x).is_zero());
        assert!((&y * &y).is_zero());
        let xy = &x * &y;
        assert!(xy.pair_fundamental().is_one());
        // (x+y)^2 = 2xy.
        let sq = (&x + &y).pow(2);
        assert_eq!(sq, xy.scale(&CyclotomicNumber::from_integer(7, 2)));
    }

    #[test]
    fn tensor_with_point_preserves_structure_and_names() {
        let cp2 = ring_cpn(2, 5).unwrap();
        let pt = ring_point(5).unwrap();
        let prod = ring_tensor(&cp2, &pt).unwrap();
        assert!(prod.same_structure(&cp2));
        assert_eq!(prod.names(), cp2.names());
        let prod2 = ring_tensor(&pt, &cp2).unwrap();
        assert!(prod2.same_structure(&cp2));

        let other_field = ring_point(7).unwrap();
        assert!(matches!(
            ring_tensor(&cp2, &other_field),
            Err(Error::FieldMismatch(5, 7))
        ));
    }

    #[test]
    fn graded_parts_sum_back_to_the_element() {
        let ring = ring_cp2_cp2bar(5).unwrap();
        let a = RingElement::basis_element(&ring, "a").unwrap();
        let v = RingElement::basis_element(&ring, "v").unwrap();
        let x = &(&RingElement::from_integer(&ring, 3) + &a.scale_rational(&rat(1, 2))) + &v;
        let mut acc = RingElement::zero(&ring);
        for d in (0..=ring.top()).step_by(2) {
            acc = &acc + &x.graded_part(d);
        }
        assert_eq!(acc, x);
        assert!(x.graded_part(0).has_pure_degree(0));
        assert!(!x.has_pure_degree(2));
        assert!(a.has_pure_degree(2));
        assert!(RingElement::zero(&ring).has_pure_degree(2));
    }

    #[test]
    fn pairing_is_linear() {
        let ring = ring_cp2_cp2bar(5).unwrap();
        let a = RingElement::basis_element(&ring, "a").unwrap();
        let b = RingElement::basis_element(&ring, "b").unwrap();
        let x = (&a * &a).scale_rational(&rat(2, 3));
        let y = (&b * &b).scale_rational(&rat(1, 3));
        let lhs = (&x + &y).pair_fundamental();
        let rhs = x.pair_fundamental().checked_add(&y.pair_fundamental()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, CyclotomicNumber::from_rational(5, rat(1, 3)));
    }

    #[test]
    fn element_constructors_validate() {
        let ring = ring_cpn(1, 5).unwrap();
        assert!(RingElement::basis_element(&ring, "zz").is_err());
        assert!(matches!(
            RingElement::from_coords(&ring, vec![CyclotomicNumber::one(5)]),
            Err(Error::CoordinateCount { expected: 2, got: 1, .. })
        ));
        assert!(matches!(
            RingElement::from_coords(
                &ring,
                vec![CyclotomicNumber::one(7), CyclotomicNumber::zero(7)]
            ),
            Err(Error::FieldMismatch(5, 7))
        ));
        let other = ring_cpn(2, 5).unwrap();
        let x = RingElement::unit(&ring);
        let y = RingElement::unit(&other);
        assert!(matches!(
            x.checked_mul(&y),
            Err(Error::StructuralMismatch(_))
        ));
        assert_ne!(x, y);
    }

    #[test]
    #[should_panic(expected = "cohomology ring mismatch")]
    fn operator_panics_on_cross_ring_use() {
        let a = RingElement::unit(&ring_cpn(1, 5).unwrap());
        let b = RingElement::unit(&ring_cpn(2, 5).unwrap());
        let _ = a + b;
    }

    #[test]
    fn display_renders_sparse_sums() {
        let ring = ring_cp2_cp2bar(5).unwrap();
        let a = RingElement::basis_element(&ring, "a").unwrap();
        let two = RingElement::from_integer(&ring, 2);
        let x = &two + &a.scale_rational(&rat(-1, 2));
        assert_eq!(x.to_string(), "2 + (-1/2)*a");
        assert_eq!(RingElement::zero(&ring).to_string(), "0");
        assert_eq!(RingElement::unit(&ring).to_string(), "1");
    }

    #[test]
    fn galois_acts_coefficientwise() {
        let ring = ring_cpn(1, 5).unwrap();
        let zeta = CyclotomicNumber::zeta(5);
        let x = RingElement::basis_element(&ring, "a").unwrap().scale(&zeta);
        let moved = x.galois_apply(2).unwrap();
        assert_eq!(
            moved.coefficient("a").unwrap(),
            &CyclotomicNumber::zeta_pow(5, 2)
        );
    }
}
