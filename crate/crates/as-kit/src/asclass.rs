//! Equivariant bundle data and the characteristic-class computations:
//! M-classes, A-factors, the vanishing criterion and its two-condition
//! restatement, Chern character, Euler and Pontryagin classes, L-genus,
//! Atiyah-Singer character values, and the c_2 pairing condition.
//!
//! A bundle is recorded through formal Chern data: for each eigenvalue
//! zeta^k (k = 1..(p-1)/2) of the Z/p-action on fibers, the rank d_k of
//! the eigenbundle and its Chern classes c_1..c_{d_k} as elements of a
//! fixed cohomology ring. No realizability beyond degree/rank validation
//! is attempted; the constructions of interest go through formal classes.

use crate::cohomology::{CohomologyRing, RingElement};
use crate::cyclotomic::CyclotomicNumber;
use crate::series::l_generating_series;
use crate::symfun::{multiplicative_class, partitions_bounded, tau_values_for_power, Partition};
use crate::{Error, Result};
use num::{BigInt, BigRational, One};
use std::sync::Arc;

/// One eigenbundle: the Chern classes c_1..c_d, plus the ring they live
/// in (so rank-0 data still knows where its constants sit).
#[derive(Debug, Clone)]
pub struct EigenbundleData {
    ring: Arc<CohomologyRing>,
    chern: Vec<RingElement>,
}

impl PartialEq for EigenbundleData {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_structure(&other.ring) && self.chern == other.chern
    }
}

impl EigenbundleData {
    /// Validates that `chern[j]` is homogeneous of degree 2(j+1) and lives
    /// in `ring`. The rank is the length of `chern`.
    pub fn new(ring: &Arc<CohomologyRing>, chern: Vec<RingElement>) -> Result<Self> {
        for (j, c) in chern.iter().enumerate() {
            if !c.ring().same_structure(ring) {
                return Err(Error::StructuralMismatch(format!(
                    "Chern class {} lives in a different ring",
                    j + 1
                )));
            }
            let expected = 2 * (j as u32 + 1);
            if !c.has_pure_degree(expected) {
                return Err(Error::DegreeMismatch(format!(
                    "Chern class {} must be homogeneous of degree {expected}",
                    j + 1
                )));
            }
        }
        Ok(EigenbundleData {
            ring: ring.clone(),
            chern,
        })
    }

    pub fn trivial(ring: &Arc<CohomologyRing>) -> Self {
        EigenbundleData {
            ring: ring.clone(),
            chern: Vec::new(),
        }
    }

    /// A line bundle with the given first Chern class.
    pub fn line(c1: RingElement) -> Result<Self> {
        let ring = c1.ring().clone();
        EigenbundleData::new(&ring, vec![c1])
    }

    pub fn rank(&self) -> usize {
        self.chern.len()
    }

    pub fn ring(&self) -> &Arc<CohomologyRing> {
        &self.ring
    }

    pub fn chern(&self) -> &[RingElement] {
        &self.chern
    }

    /// c_j with the conventions c_0 = 1 and c_j = 0 beyond the rank.
    pub fn chern_class(&self, j: usize) -> RingElement {
        match j {
            0 => RingElement::unit(&self.ring),
            j if j <= self.chern.len() => self.chern[j - 1].clone(),
            _ => RingElement::zero(&self.ring),
        }
    }
}

/// Chern data for a Z/p-equivariant bundle E = E_1 + ... + E_{(p-1)/2}
/// (eigenvalue zeta^k on E_k) over a space with the given cohomology.
#[derive(Debug, Clone)]
pub struct GBundleChernData {
    p: u64,
    ring: Arc<CohomologyRing>,
    eigen: Vec<EigenbundleData>,
}

impl PartialEq for GBundleChernData {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.ring.same_structure(&other.ring)
            && self.eigen == other.eigen
    }
}

impl GBundleChernData {
    pub fn new(ring: &Arc<CohomologyRing>, eigen: Vec<EigenbundleData>) -> Result<Self> {
        let p = ring.p();
        let expected = ((p - 1) / 2) as usize;
        if eigen.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "expected {expected} eigenbundle entries for p = {p}, got {}",
                eigen.len()
            )));
        }
        for (i, ek) in eigen.iter().enumerate() {
            if !ek.ring().same_structure(ring) {
                return Err(Error::StructuralMismatch(format!(
                    "eigenbundle {} lives in a different ring",
                    i + 1
                )));
            }
        }
        Ok(GBundleChernData {
            p,
            ring: ring.clone(),
            eigen,
        })
    }

    /// All eigenbundles trivial of rank 0.
    pub fn trivial(ring: &Arc<CohomologyRing>) -> Result<Self> {
        let count = ((ring.p() - 1) / 2) as usize;
        Self::new(ring, vec![EigenbundleData::trivial(ring); count])
    }

    /// Line bundles at every eigenvalue, given their first Chern classes.
    pub fn from_line_bundles(
        ring: &Arc<CohomologyRing>,
        c1: Vec<RingElement>,
    ) -> Result<Self> {
        let eigen = c1
            .into_iter()
            .map(EigenbundleData::line)
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, eigen)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ring(&self) -> &Arc<CohomologyRing> {
        &self.ring
    }

    pub fn eigen(&self) -> &[EigenbundleData] {
        &self.eigen
    }

    /// The eigenbundle at eigenvalue zeta^k, k = 1..(p-1)/2.
    pub fn eigen_at(&self, k: u64) -> Result<&EigenbundleData> {
        let max = (self.p - 1) / 2;
        if k < 1 || k > max {
            return Err(Error::EigenIndexOutOfRange { k, max });
        }
        Ok(&self.eigen[(k - 1) as usize])
    }

    /// Ranks (d_1, ..., d_{(p-1)/2}).
    pub fn rank_profile(&self) -> Vec<usize> {
        self.eigen.iter().map(EigenbundleData::rank).collect()
    }
}

/// Reduces n mod p to 1..p-1, rejecting multiples of p.
fn reduce_exponent(n: i64, p: u64) -> Result<u64> {
    let r = n.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(Error::InvalidGaloisExponent { n, p });
    }
    Ok(r)
}

/// The M-class of the k-th eigenbundle evaluated at zeta^{nk}:
/// sum_lambda tau(lambda)(zeta^{nk}) c_{lambda_1} ... c_{lambda_r},
/// truncated at weight `order` (and at the ring's top degree).
pub fn eigen_m_class(
    bundle: &GBundleChernData,
    k: u64,
    n: i64,
    order: u32,
) -> Result<RingElement> {
    let ek = bundle.eigen_at(k)?;
    let n = reduce_exponent(n, bundle.p)?;
    let mut total = RingElement::unit(&bundle.ring);
    let d = ek.rank();
    if d == 0 {
        return Ok(total);
    }
    let j = (n * k) % bundle.p;
    let w_max = order.min(bundle.ring.top() / 2);
    let tau = tau_values_for_power(bundle.p, j, w_max)?;
    for w in 1..=w_max {
        for lambda in partitions_bounded(w, d.try_into().unwrap_or(u32::MAX)) {
            let coeff = tau
                .get(&lambda)
                .expect("table covers every partition up to w_max");
            if coeff.is_zero() {
                continue;
            }
            let mut product = RingElement::unit(&bundle.ring);
            for &part in lambda.parts() {
                product = product.checked_mul(&ek.chern[(part - 1) as usize])?;
            }
            if product.is_zero() {
                continue;
            }
            total = total.checked_add(&product.scale(coeff))?;
        }
    }
    Ok(total)
}

/// The total M-class: the product of eigen_m_class over all eigenvalues,
/// truncated only by the ring's top degree.
pub fn total_m_class(bundle: &GBundleChernData, n: i64) -> Result<RingElement> {
    let order = bundle.ring.top() / 2;
    let mut total = RingElement::unit(&bundle.ring);
    for k in 1..=(bundle.p - 1) / 2 {
        total = total.checked_mul(&eigen_m_class(bundle, k, n, order)?)?;
    }
    Ok(total)
}

/// The scalar Atiyah-Singer A-factor:
/// prod_k ((zeta^{nk} + 1)/(zeta^{nk} - 1))^{d_k}.
pub fn a_factor(bundle: &GBundleChernData, n: i64) -> Result<CyclotomicNumber> {
    let p = bundle.p;
    let n = reduce_exponent(n, p)?;
    let one = CyclotomicNumber::one(p);
    let mut total = one.clone();
    for (idx, ek) in bundle.eigen.iter().enumerate() {
        if ek.rank() == 0 {
            continue;
        }
        let k = idx as u64 + 1;
        let zeta_nk = CyclotomicNumber::zeta_pow(p, ((n * k) % p) as i64);
        let factor = zeta_nk
            .checked_add(&one)?
            .checked_div(&zeta_nk.checked_sub(&one)?)?;
        total = total.checked_mul(&factor.pow(ek.rank() as i64)?)?;
    }
    Ok(total)
}

/// True iff the total M-class at the generator is exactly 1.
pub fn is_vanishing(bundle: &GBundleChernData) -> Result<bool> {
    Ok(total_m_class(bundle, 1)? == RingElement::unit(&bundle.ring))
}

/// The two conditions of the vanishing theorem:
/// cond1: sum_k tau((1))(zeta^k) c_1(E_k) = 0;
/// cond2: every eigenbundle is exponential (c_n = c_1^n/n! up to the rank,
/// and c_1^{d_k+1} = 0).
///
/// The theorem asserts is_vanishing == cond1 && cond2.
pub fn theorem_conditions(bundle: &GBundleChernData) -> Result<(bool, bool)> {
    let single_box = Partition::new(vec![1]);
    let mut sum = RingElement::zero(&bundle.ring);
    for (idx, ek) in bundle.eigen.iter().enumerate() {
        if ek.rank() == 0 {
            continue;
        }
        let k = idx as u64 + 1;
        let tau = tau_values_for_power(bundle.p, k, 1)?;
        let b1 = tau.get(&single_box).expect("weight-1 table");
        sum = sum.checked_add(&ek.chern[0].scale(b1))?;
    }
    let cond1 = sum.is_zero();
    let cond2 = bundle.eigen.iter().all(is_exponential);
    Ok((cond1, cond2))
}

/// The Chern character d + P_1 + P_2/2! + ... + P_D/D!, with the power
/// sums P_m obtained from the Chern classes by Newton's identities.
pub fn chern_character(ek: &EigenbundleData, order: u32) -> RingElement {
    let d = ek.rank();
    let mut total = RingElement::from_integer(ek.ring(), d as i64);
    if d == 0 {
        return total;
    }
    let sums = crate::symfun::newton_power_sums(&ek.chern, order as usize);
    let mut factorial = BigRational::one();
    for (m, p_m) in sums.iter().enumerate() {
        factorial *= BigRational::from_integer(BigInt::from(m as u64 + 1));
        let term = p_m.scale_rational(&factorial.recip());
        total = total.checked_add(&term).expect("same ring");
    }
    total
}

/// True iff the total Chern class is the truncated exponential of c_1:
/// c_n = c_1^n / n! for 1 <= n <= d, and c_1^{d+1} = 0.
pub fn is_exponential(ek: &EigenbundleData) -> bool {
    let d = ek.rank();
    if d == 0 {
        return true;
    }
    let c1 = &ek.chern[0];
    let mut power = c1.clone();
    let mut factorial = BigRational::one();
    for n in 2..=d {
        power = power.checked_mul(c1).expect("same ring");
        factorial *= BigRational::from_integer(BigInt::from(n as u64));
        if ek.chern[n - 1] != power.scale_rational(&factorial.recip()) {
            return false;
        }
    }
    power.checked_mul(c1).expect("same ring").is_zero()
}

/// Pontryagin classes p_1 .. p_{top/4} of the underlying real bundle:
/// p_k = (-1)^k sum_{i+j=2k} (-1)^j c_i c_j, with c_0 = 1.
pub fn pontryagin_classes(ek: &EigenbundleData) -> Vec<RingElement> {
    let ring = ek.ring();
    let count = (ring.top() / 4) as usize;
    let mut out = Vec::with_capacity(count);
    for k in 1..=count {
        let mut sum = RingElement::zero(ring);
        for i in 0..=2 * k {
            let j = 2 * k - i;
            if i > ek.rank() || j > ek.rank() {
                continue;
            }
            let term = ek
                .chern_class(i)
                .checked_mul(&ek.chern_class(j))
                .expect("same ring");
            sum = if j % 2 == 0 {
                sum.checked_add(&term).expect("same ring")
            } else {
                sum.checked_sub(&term).expect("same ring")
            };
        }
        if k % 2 == 1 {
            sum = -sum;
        }
        out.push(sum);
    }
    out
}

/// The Euler class: the product of the top Chern classes c_{d_k}(E_k)
/// (rank-0 factors contribute c_0 = 1).
pub fn euler_class(bundle: &GBundleChernData) -> RingElement {
    let mut total = RingElement::unit(&bundle.ring);
    for ek in &bundle.eigen {
        total = total
            .checked_mul(&ek.chern_class(ek.rank()))
            .expect("same ring");
    }
    total
}

/// The L-genus of a list of Pontryagin classes p_1, p_2, ...:
/// 1 + p_1/3 + (7 p_2 - p_1^2)/45 + ..., truncated at the ring's top
/// degree. `pont[j]` must be homogeneous of degree 4(j+1).
pub fn l_genus(pont: &[RingElement]) -> Result<RingElement> {
    let Some(first) = pont.first() else {
        return Err(Error::InvalidArgument(
            "l_genus needs at least one Pontryagin class (possibly zero) to locate the ring"
                .into(),
        ));
    };
    let ring = first.ring();
    let order = ring.top() / 4;
    let series = l_generating_series(order as usize)?;
    let b: Vec<CyclotomicNumber> = series
        .coeffs()
        .iter()
        .map(|c| CyclotomicNumber::from_rational(ring.p(), c.clone()))
        .collect();
    multiplicative_class(&b, pont, pont.len(), 4, order)
}

/// The Atiyah-Singer character value at the n-th power of the generator:
/// a_factor(bundle, n) * < Lclass * total_m_class(bundle, n), [M] >.
///
/// `l_class` must have degree-0 part 1.
pub fn as_character(
    bundle: &GBundleChernData,
    l_class: &RingElement,
    n: i64,
) -> Result<CyclotomicNumber> {
    if l_class.graded_part(0) != RingElement::unit(&bundle.ring) {
        return Err(Error::InvalidArgument(
            "the L-class must have degree-0 part 1".into(),
        ));
    }
    let af = a_factor(bundle, n)?;
    let m = total_m_class(bundle, n)?;
    let paired = l_class.checked_mul(&m)?.pair_fundamental();
    af.checked_mul(&paired)
}

/// Whether xi and E can share their Atiyah-Singer class at the level of
/// second Chern classes: c_2(xi_k) - c_2(E_k) = (c_1(xi_k)^2 - c_1(E_k)^2)/2
/// for every k.
pub fn c2_pair_condition(xi: &GBundleChernData, e: &GBundleChernData) -> Result<bool> {
    if xi.p != e.p {
        return Err(Error::StructuralMismatch(format!(
            "bundles live over different primes: {} vs {}",
            xi.p, e.p
        )));
    }
    if !xi.ring.same_structure(&e.ring) {
        return Err(Error::StructuralMismatch(
            "bundles live over different cohomology rings".into(),
        ));
    }
    if xi.rank_profile() != e.rank_profile() {
        return Err(Error::StructuralMismatch(format!(
            "rank profiles differ: {:?} vs {:?}",
            xi.rank_profile(),
            e.rank_profile()
        )));
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for (xk, ek) in xi.eigen.iter().zip(&e.eigen) {
        let lhs = xk.chern_class(2).checked_sub(&ek.chern_class(2))?;
        let c1x = xk.chern_class(1);
        let c1e = ek.chern_class(1);
        let rhs = c1x
            .checked_mul(&c1x)?
            .checked_sub(&c1e.checked_mul(&c1e)?)?
            .scale_rational(&half);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
