//! Constructive recipes at the level of Chern data: exponential
//! eigenbundle data with prescribed first Chern class, sufficient-
//! nilpotence checks, whole families of vanishing bundles built from an
//! integer tau relation, and the finiteness demonstration for the
//! x^2 - y^2 = 1 pairing constraint.

use crate::asclass::{EigenbundleData, GBundleChernData};
use crate::cohomology::{ring_cp2_cp2bar, CohomologyRing, RingElement};
use crate::relations::verify_relation;
use crate::{Error, Result};
use num::{BigInt, BigRational, Integer, One, Zero};
use std::sync::Arc;

/// Nilpotence data for a degree-2 class beta against a multiplicity
/// profile: N is minimal with beta^{N+1} = 0, and sufficiency asks for at
/// least u+1 eigenvalues whose multiplicity reaches N.
#[derive(Debug, Clone, PartialEq)]
pub struct NilpotenceReport {
    pub beta: RingElement,
    /// Minimal N with beta^{N+1} = 0 (so N = 0 iff beta = 0).
    pub n: u32,
    /// 1-based eigen indices k with d_k >= N.
    pub eligible_k: Vec<u64>,
    pub sufficient: bool,
}

/// Minimal N with beta^{N+1} = 0, by repeated multiplication. Grading
/// guarantees termination: a degree-2 class to the power top/2 + 1 is 0.
fn nilpotence_degree(beta: &RingElement) -> u32 {
    let mut n = 0;
    let mut power = beta.clone();
    while !power.is_zero() {
        n += 1;
        power = power.checked_mul(beta).expect("same ring");
    }
    n
}

/// Checks whether `beta` is sufficiently nilpotent for the multiplicity
/// profile: at least u+1 of the d_k must be >= N.
pub fn nilpotence_check(
    beta: &RingElement,
    multiplicities: &[usize],
    u: u64,
) -> Result<NilpotenceReport> {
    if !beta.has_pure_degree(2) {
        return Err(Error::NonHomogeneous(
            "beta must be homogeneous of degree 2".into(),
        ));
    }
    let n = nilpotence_degree(beta);
    let eligible_k: Vec<u64> = multiplicities
        .iter()
        .enumerate()
        .filter(|(_, &d)| d >= n as usize)
        .map(|(i, _)| i as u64 + 1)
        .collect();
    let sufficient = eligible_k.len() as u64 >= u + 1;
    Ok(NilpotenceReport {
        beta: beta.clone(),
        n,
        eligible_k,
        sufficient,
    })
}

/// Exponential Chern data of rank d with c_1 = s*beta: c_j = (s beta)^j/j!.
/// Requires (s beta)^{d+1} = 0 so the data is honestly exponential.
pub fn exponential_chern_data(
    beta: &RingElement,
    s: &BigInt,
    d: usize,
) -> Result<EigenbundleData> {
    if !beta.has_pure_degree(2) {
        return Err(Error::NonHomogeneous(
            "beta must be homogeneous of degree 2".into(),
        ));
    }
    let ring = beta.ring();
    let c1 = beta.scale_rational(&BigRational::from_integer(s.clone()));
    let mut chern = Vec::with_capacity(d);
    let mut power = RingElement::unit(ring);
    let mut factorial = BigRational::one();
    for j in 1..=d as u64 {
        power = power.checked_mul(&c1)?;
        factorial *= BigRational::from_integer(BigInt::from(j));
        chern.push(power.scale_rational(&factorial.recip()));
    }
    if !power.checked_mul(&c1)?.is_zero() {
        return Err(Error::NilpotenceViolated(format!(
            "(s*beta)^{} is nonzero, so no rank-{d} exponential bundle has c_1 = s*beta",
            d + 1
        )));
    }
    EigenbundleData::new(ring, chern)
}

/// Builds K vanishing bundles from an integer relation u on tau((1)):
/// the m-th member has exponential eigenbundle data with
/// c_1(E_k) = m * u_k * beta and rank d_k. The relation is re-verified
/// before use; each member satisfies the vanishing theorem by
/// construction (condition 1 by linearity, condition 2 by
/// exponentiality).
pub fn build_vanishing_family(
    ring: &Arc<CohomologyRing>,
    beta: &RingElement,
    multiplicities: &[usize],
    relation: &[BigInt],
    count: u32,
) -> Result<Vec<GBundleChernData>> {
    let p = ring.p();
    let half = ((p - 1) / 2) as usize;
    if multiplicities.len() != half || relation.len() != half {
        return Err(Error::InvalidArgument(format!(
            "need {half} multiplicities and relation entries for p = {p}, got {} and {}",
            multiplicities.len(),
            relation.len()
        )));
    }
    if !verify_relation(p, 1, relation)? {
        return Err(Error::InvalidArgument(
            "the supplied vector does not annihilate the tau((1)) values".into(),
        ));
    }
    let mut family = Vec::with_capacity(count as usize);
    for m in 1..=count {
        let mut eigen = Vec::with_capacity(half);
        for (idx, (&d, u_k)) in multiplicities.iter().zip(relation).enumerate() {
            let scale = u_k * BigInt::from(m);
            let data = exponential_chern_data(beta, &scale, d).map_err(|e| match e {
                Error::NilpotenceViolated(msg) => Error::NilpotenceViolated(format!(
                    "member {m}, eigenvalue {}: {msg}",
                    idx + 1
                )),
                other => other,
            })?;
            eigen.push(data);
        }
        family.push(GBundleChernData::new(ring, eigen)?);
    }
    Ok(family)
}

/// Prime factorization by trial division; the inputs here are smooth
/// (denominators of scaled factorials).
fn factorize(mut n: BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut q = BigInt::from(2);
    while &q * &q <= n {
        let mut e = 0;
        while (&n % &q).is_zero() {
            n /= &q;
            e += 1;
        }
        if e > 0 {
            out.push((q.clone(), e));
        }
        q += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// The minimal positive integer s such that every class of
/// `exponential_chern_data(beta, s, d)` has integer coordinates over the
/// ring's basis (all cyclotomic coordinates integral). This stands in for
/// the obstruction-theoretic integrality scalar, which is not computable
/// from Chern data alone.
pub fn minimal_integral_scale(beta: &RingElement, d: usize) -> Result<BigInt> {
    if !beta.has_pure_degree(2) {
        return Err(Error::NonHomogeneous(
            "beta must be homogeneous of degree 2".into(),
        ));
    }
    // Denominator of (s beta)^j / j! is den(beta^j / j!) / s^j; for each
    // prime q with exponent e in that denominator, v_q(s) >= ceil(e/j).
    let mut exponents: Vec<(BigInt, u32)> = Vec::new();
    let mut power = RingElement::unit(beta.ring());
    let mut factorial = BigRational::one();
    for j in 1..=d as u32 {
        power = power.checked_mul(beta)?;
        factorial *= BigRational::from_integer(BigInt::from(j));
        let scaled = power.scale_rational(&factorial.recip());
        let mut denom = BigInt::one();
        for coord in scaled.coords() {
            for q in coord.coords() {
                denom = denom.lcm(q.denom());
            }
        }
        for (q, e) in factorize(denom) {
            let need = e.div_ceil(j);
            match exponents.iter_mut().find(|(known, _)| *known == q) {
                Some((_, have)) => *have = (*have).max(need),
                None => exponents.push((q, need)),
            }
        }
    }
    let mut s = BigInt::one();
    for (q, e) in exponents {
        for _ in 0..e {
            s *= &q;
        }
    }
    Ok(s)
}

/// All integer pairs (x, y) with |x|, |y| <= bound and x^2 - y^2 = 1,
/// found by scanning x and testing x^2 - 1 for squareness; returned
/// sorted. The factorization (x-y)(x+y) = 1 predicts exactly
/// {(1,0), (-1,0)}, which the scan confirms for every bound.
pub fn finiteness_demo(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in 1..=bound {
        let target = (x as u64) * (x as u64) - 1;
        let y = target.isqrt();
        if y * y == target && (y as i64) <= bound {
            let y = y as i64;
            out.push((x, y));
            out.push((-x, y));
            if y != 0 {
                out.push((x, -y));
                out.push((-x, -y));
            }
        }
    }
    out.sort_unstable();
    out
}

/// The line-bundle pairs xa + yb on CP^2 # CP^2-bar compatible with the
/// fixed reference xi (all c_1 = a) under the c_2 pairing condition,
/// scanned over |x|, |y| <= bound. Equals the x^2 - y^2 = 1 solution set.
pub fn c2_solution_filter(p: u64, bound: i64) -> Result<Vec<(i64, i64)>> {
    let ring = ring_cp2_cp2bar(p)?;
    let a = RingElement::basis_element(&ring, "a")?;
    let idx_a = ring.basis_index("a").expect("generator a");
    let idx_b = ring.basis_index("b").expect("generator b");
    let half = ((p - 1) / 2) as usize;
    let xi = GBundleChernData::from_line_bundles(&ring, vec![a; half])?;
    let zero = crate::CyclotomicNumber::zero(p);
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let mut coords = vec![zero.clone(); ring.dim()];
            coords[idx_a] = crate::CyclotomicNumber::from_integer(p, x);
            coords[idx_b] = crate::CyclotomicNumber::from_integer(p, y);
            let c1 = RingElement::from_coords(&ring, coords)?;
            let e = GBundleChernData::from_line_bundles(&ring, vec![c1; half])?;
            if crate::asclass::c2_pair_condition(&xi, &e)? {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}
