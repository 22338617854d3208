//! Symmetric-function machinery: partitions, the monomial-to-elementary
//! transition, tau coefficient tables, and Newton power sums.
//!
//! The central quantity is tau(lambda) for a generating series
//! Q(z) = 1 + b_1 z + b_2 z^2 + ...: the coefficient of the elementary
//! monomial e_lambda in prod_i Q(x_i). It is computed by expanding the
//! monomial symmetric function m_lambda in the elementary basis and
//! contracting against products of series coefficients; the formal roots
//! themselves are never materialized.
//!
//! The m-to-e transition is derived once per weight: each e_mu is expanded
//! in the m basis by iterated multiplication (a subset count per target
//! partition), and the resulting unimodular integer matrix is inverted
//! exactly.

use crate::cohomology::RingElement;
use crate::cyclotomic::{check_odd_prime, CyclotomicNumber};
use crate::linalg::invert_rational_matrix;
use crate::series::{generating_series_for_power, RingOps, Scalar, TruncatedSeries};
use crate::{weight_cap, Error, Result};
use num::{BigInt, BigRational, One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Normalizes arbitrary input: zeros are dropped, parts sorted.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().fold(0u32, |a, &x| a.saturating_add(x))
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

// Ordered by weight, then by the natural listing within one weight:
// larger first parts come first, so (3) < (2 1) < (1 1 1).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `(2 1)`, `2 1`, or `2,1`; `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = if let Some(stripped) = t.strip_prefix('(') {
            stripped.strip_suffix(')').ok_or_else(|| {
                Error::InvalidArgument(format!("unbalanced parentheses in partition {t:?}"))
            })?
        } else {
            t
        };
        let cleaned = inner.replace(',', " ");
        let mut parts = Vec::new();
        for tok in cleaned.split_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("invalid partition part {tok:?}")))?;
            if v == 0 {
                return Err(Error::InvalidArgument(
                    "partition parts must be positive".into(),
                ));
            }
            parts.push(v);
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `w` with parts bounded by `max_part`, in the canonical
/// order (largest first part first).
pub(crate) fn partitions_bounded(w: u32, max_part: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            stack.push(part);
            rec(remaining - part, part, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight exactly `w`.
pub fn partitions_of_weight(w: u32) -> Vec<Partition> {
    partitions_bounded(w, w)
}

/// All partitions of weight 0..=w: the empty partition first, then each
/// weight in canonical order. This matches `Partition`'s `Ord`.
pub fn partitions_up_to_weight(w: u32) -> Vec<Partition> {
    (0..=w).flat_map(partitions_of_weight).collect()
}

/// Calls `f` on every k-subset of 0..n, in lexicographic order.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, left: usize, buf: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            f(buf);
            return;
        }
        for i in start..=n - left {
            buf.push(i);
            rec(i + 1, n, left - 1, buf, f);
            buf.pop();
        }
    }
    if k > n {
        return;
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

type Expansion = HashMap<Partition, BigInt>;

/// Multiplies an m-basis expansion (homogeneous of some weight) by e_j.
///
/// Coefficient of m_phi in (sum_theta a_theta m_theta) * e_j: count the
/// j-subsets S of phi's parts with (phi - 1_S) normalizing to some theta,
/// weighting each by a_theta. Counting backward from phi is essential;
/// counting forward from theta misses the collisions of equal parts.
fn multiply_by_elementary(base: &Expansion, j: u32) -> Expansion {
    let base_weight = base
        .keys()
        .next()
        .map(Partition::weight)
        .expect("expansion is never empty");
    let mut out = Expansion::new();
    for phi in partitions_of_weight(base_weight + j) {
        let mut acc = BigInt::zero();
        for_each_subset(phi.len(), j as usize, &mut |chosen| {
            let mut reduced = phi.parts().to_vec();
            for &i in chosen {
                reduced[i] -= 1;
            }
            if let Some(c) = base.get(&Partition::new(reduced)) {
                acc += c;
            }
        });
        if !acc.is_zero() {
            out.insert(phi, acc);
        }
    }
    out
}

/// m-basis expansion of e_mu, memoized along prefix chains of mu.
fn expansion_of(mu: &Partition, memo: &mut HashMap<Partition, Arc<Expansion>>) -> Arc<Expansion> {
    if let Some(hit) = memo.get(mu) {
        return hit.clone();
    }
    let parent = Partition {
        parts: mu.parts[..mu.parts.len() - 1].to_vec(),
    };
    let j = *mu.parts.last().expect("empty partition is pre-seeded");
    let base = expansion_of(&parent, memo);
    let result = Arc::new(multiply_by_elementary(&base, j));
    memo.insert(mu.clone(), result.clone());
    result
}

/// Per-weight transition data: partitions of the weight in canonical order
/// and the integer matrix expressing each m_lambda in the e basis.
struct WeightTransition {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Row lambda: m_lambda = sum_mu inverse[lambda][mu] e_mu.
    inverse: Vec<Vec<BigInt>>,
}

fn build_weight_transition(w: u32) -> WeightTransition {
    let parts = partitions_of_weight(w);
    let index: HashMap<Partition, usize> =
        parts.iter().cloned().zip(0..parts.len()).collect();
    let mut memo: HashMap<Partition, Arc<Expansion>> = HashMap::new();
    let mut unit = Expansion::new();
    unit.insert(Partition::empty(), BigInt::one());
    memo.insert(Partition::empty(), Arc::new(unit));
    // N[mu][nu] = coefficient of m_nu in e_mu.
    let n_matrix: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|mu| {
            let expansion = expansion_of(mu, &mut memo);
            parts
                .iter()
                .map(|nu| {
                    BigRational::from_integer(
                        expansion.get(nu).cloned().unwrap_or_else(BigInt::zero),
                    )
                })
                .collect()
        })
        .collect();
    let inv = invert_rational_matrix(&n_matrix)
        .expect("the e-to-m transition matrix is unimodular");
    let inverse = inv
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "m-to-e coefficients must be integers");
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    WeightTransition {
        parts,
        index,
        inverse,
    }
}

fn weight_transition(w: u32) -> Arc<WeightTransition> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<WeightTransition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&w) {
        return hit.clone();
    }
    let built = Arc::new(build_weight_transition(w));
    cache
        .lock()
        .unwrap()
        .entry(w)
        .or_insert(built)
        .clone()
}

/// Expands m_lambda in the elementary basis: m_lambda = sum_mu c_mu e_mu,
/// valid in any number of variables >= |lambda|. The returned map covers
/// every partition of |lambda|, zero coefficients included.
pub fn m_to_e(lambda: &Partition) -> Result<BTreeMap<Partition, BigInt>> {
    let w = lambda.weight();
    let cap = weight_cap();
    if w > cap {
        return Err(Error::WeightAboveCap { weight: w, cap });
    }
    let table = weight_transition(w);
    let row = &table.inverse[table.index[lambda]];
    Ok(table
        .parts
        .iter()
        .cloned()
        .zip(row.iter().cloned())
        .collect())
}

/// tau(lambda) for an arbitrary coefficient list b_0, b_1, ..., b_D with
/// b_0 = 1: contracts the m-to-e transition for |lambda| against products
/// of the b's. This is the generic engine shared by the cyclotomic tau and
/// the rational L-genus coefficients.
pub(crate) fn tau_from_coefficients<C: Scalar>(lambda: &Partition, b: &[C]) -> Result<C> {
    let w = lambda.weight() as usize;
    if b.len() <= w {
        return Err(Error::SeriesTooShort {
            have: b.len().saturating_sub(1),
            need: w,
        });
    }
    if b[0] != b[0].one_like() {
        return Err(Error::InvalidArgument(
            "generating series must have constant term 1".into(),
        ));
    }
    let transition = m_to_e(lambda)?;
    let mut acc = b[0].zero_like();
    for (mu, c) in &transition {
        if c.is_zero() {
            continue;
        }
        let mut prod = b[0].from_bigint_like(c);
        for &part in mu.parts() {
            prod = prod.ref_mul(&b[part as usize]);
        }
        acc = acc.ref_add(&prod);
    }
    Ok(acc)
}

/// tau(lambda)(zeta^k): the coefficient of c_{j_1}...c_{j_r} in the
/// multiplicative class attached to the eigenvalue generating series.
///
/// `series` must be the generating series for (p, k) with order >= |lambda|.
pub fn tau(
    p: u64,
    k: u64,
    lambda: &Partition,
    series: &TruncatedSeries<CyclotomicNumber>,
) -> Result<CyclotomicNumber> {
    check_odd_prime(p)?;
    let max = (p - 1) / 2;
    if k < 1 || k > max {
        return Err(Error::EigenIndexOutOfRange { k, max });
    }
    let sp = series.coeff(0).p();
    if sp != p {
        return Err(Error::FieldMismatch(p, sp));
    }
    tau_from_coefficients(lambda, series.coeffs())
}

/// All tau(lambda)(zeta^j) for |lambda| <= weight, at an arbitrary power
/// j in 1..p-1, built from a fresh generating series and cached globally.
pub(crate) fn tau_values_for_power(
    p: u64,
    j: u64,
    weight: u32,
) -> Result<Arc<HashMap<Partition, CyclotomicNumber>>> {
    type Cache = Mutex<HashMap<(u64, u64, u32), Arc<HashMap<Partition, CyclotomicNumber>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    check_odd_prime(p)?;
    if j < 1 || j >= p {
        return Err(Error::EigenIndexOutOfRange { k: j, max: p - 1 });
    }
    let cap = weight_cap();
    if weight > cap {
        return Err(Error::WeightAboveCap { weight, cap });
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(p, j, weight)) {
        return Ok(hit.clone());
    }
    let series = generating_series_for_power(p, j, weight as usize);
    let mut values = HashMap::new();
    for lambda in partitions_up_to_weight(weight) {
        let v = tau_from_coefficients(&lambda, series.coeffs())?;
        values.insert(lambda, v);
    }
    let arc = Arc::new(values);
    Ok(cache
        .lock()
        .unwrap()
        .entry((p, j, weight))
        .or_insert(arc)
        .clone())
}

/// Table of tau(lambda)(zeta^k) for one prime: every k in 1..=(p-1)/2 and
/// every partition of weight <= the table's weight bound.
#[derive(Debug, Clone)]
pub struct TauTable {
    p: u64,
    weight: u32,
    values: Vec<Arc<HashMap<Partition, CyclotomicNumber>>>,
}

impl TauTable {
    pub fn build(p: u64, weight: u32) -> Result<Self> {
        check_odd_prime(p)?;
        let cap = weight_cap();
        if weight > cap {
            return Err(Error::WeightAboveCap { weight, cap });
        }
        let values = (1..=(p - 1) / 2)
            .map(|k| tau_values_for_power(p, k, weight))
            .collect::<Result<Vec<_>>>()?;
        Ok(TauTable { p, weight, values })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn value(&self, k: u64, lambda: &Partition) -> Result<&CyclotomicNumber> {
        let max = (self.p - 1) / 2;
        if k < 1 || k > max {
            return Err(Error::EigenIndexOutOfRange { k, max });
        }
        self.values[(k - 1) as usize]
            .get(lambda)
            .ok_or(Error::WeightAboveCap {
                weight: lambda.weight(),
                cap: self.weight,
            })
    }

    /// Partitions the table covers, in row order (weight, then canonical).
    pub fn partitions(&self) -> Vec<Partition> {
        partitions_up_to_weight(self.weight)
    }
}

/// Newton power sums P_1..P_{n_max} of the formal roots with elementary
/// symmetric values e_1..e_d (e_m = 0 beyond the list).
///
/// P_n = sum_{m=1}^{n-1} (-1)^{m-1} e_m P_{n-m} + (-1)^{n-1} n e_n.
///
/// Panics if `e` is empty while n_max >= 1 (no value to infer the
/// coefficient domain from); rank-0 inputs have no power sums to take.
pub fn newton_power_sums<C: RingOps>(e: &[C], n_max: usize) -> Vec<C> {
    if n_max == 0 {
        return Vec::new();
    }
    let witness = e
        .first()
        .expect("newton_power_sums needs e_1 to infer the coefficient domain");
    let d = e.len();
    let mut p: Vec<C> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = witness.zero_like();
        for m in 1..n.min(d + 1) {
            if e[m - 1].is_zero() {
                continue;
            }
            let term = e[m - 1].ref_mul(&p[n - m - 1]);
            acc = if (m - 1) % 2 == 0 {
                acc.ref_add(&term)
            } else {
                acc.ref_sub(&term)
            };
        }
        if n <= d && !e[n - 1].is_zero() {
            let scaled = e[n - 1].ref_mul(&witness.from_bigint_like(&BigInt::from(n)));
            acc = if (n - 1) % 2 == 0 {
                acc.ref_add(&scaled)
            } else {
                acc.ref_sub(&scaled)
            };
        }
        p.push(acc);
    }
    p
}

/// The multiplicative characteristic class attached to a generating series
/// Q(z) = b_0 + b_1 z + ..., evaluated on a bundle with Chern (or
/// Pontryagin) classes `chern` = [c_1, ..., c_d]:
///
///   sum_lambda tau(lambda) c_{lambda_1} ... c_{lambda_r},
///
/// over partitions lambda with parts <= d, truncated at weight `order`
/// (classes of cohomological degree above the ring's top vanish anyway).
/// `degree_step` is the cohomological degree of c_1: 2 for Chern input,
/// 4 for Pontryagin input.
pub fn multiplicative_class(
    b: &[CyclotomicNumber],
    chern: &[RingElement],
    d: usize,
    degree_step: u32,
    order: u32,
) -> Result<RingElement> {
    if chern.len() != d {
        return Err(Error::DegreeMismatch(format!(
            "expected {d} Chern classes, got {}",
            chern.len()
        )));
    }
    let Some(first) = chern.first() else {
        return Err(Error::InvalidArgument(
            "rank 0 carries no Chern classes; its multiplicative class is 1".into(),
        ));
    };
    if degree_step != 2 && degree_step != 4 {
        return Err(Error::InvalidArgument(format!(
            "degree step must be 2 or 4, got {degree_step}"
        )));
    }
    let ring = first.ring();
    match b.first() {
        Some(b0) if b0.is_one() => {}
        _ => {
            return Err(Error::InvalidArgument(
                "the generating series must start with constant term 1".into(),
            ))
        }
    }
    if let Some(bad) = b.iter().find(|c| c.p() != ring.p()) {
        return Err(Error::FieldMismatch(ring.p(), bad.p()));
    }
    for (j, c) in chern.iter().enumerate() {
        let expected = degree_step * (j as u32 + 1);
        if !c.has_pure_degree(expected) {
            return Err(Error::DegreeMismatch(format!(
                "class {} of {} is not homogeneous of degree {expected}",
                j + 1,
                d
            )));
        }
    }
    let w_max = order.min(ring.top() / degree_step);
    let cap = weight_cap();
    if w_max > cap {
        return Err(Error::WeightAboveCap { weight: w_max, cap });
    }
    if b.len() <= w_max as usize {
        return Err(Error::SeriesTooShort {
            have: b.len().saturating_sub(1),
            need: w_max as usize,
        });
    }
    let mut total = RingElement::unit(ring);
    for w in 1..=w_max {
        for lambda in partitions_bounded(w, d.try_into().unwrap_or(u32::MAX)) {
            let coeff = tau_from_coefficients(&lambda, b)?;
            if coeff.is_zero() {
                continue;
            }
            let mut product = RingElement::unit(ring);
            for &part in lambda.parts() {
                product = product.checked_mul(&chern[(part - 1) as usize])?;
            }
            if product.is_zero() {
                continue;
            }
            total = total.checked_add(&product.scale(&coeff))?;
        }
    }
    Ok(total)
}
