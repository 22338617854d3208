//! Number-theoretic classification of odd primes and exact Q-linear
//! algebra on tau coefficient vectors: span dimensions, kernel bases,
//! and integer relations.
//!
//! The driving question (Ewing's lemma): the span of
//! {tau((r))(zeta^k) : k = 1..(p-1)/2} over Q has dimension (p-1)/2 when
//! 2 has even multiplicative order t mod p, and (p-1)(t-1)/(2t) when t is
//! odd — so relations exist exactly for odd t, and the proof turns each
//! kernel vector into a vector-bundle construction. Everything here is
//! exact: ranks by fraction-free elimination, kernels cleared to
//! primitive integer vectors.

use crate::cyclotomic::check_odd_prime;
use crate::linalg::{
    hermite_normal_form, primitive_integer_vector, rational_kernel, rational_rank,
};
use crate::symfun::{tau_values_for_power, Partition};
use crate::{Error, Result};
use num::{BigInt, BigRational, Integer, Signed, Zero};
use std::fmt;

/// Parity of the multiplicative order of 2 mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderParity {
    Odd,
    Even,
}

impl fmt::Display for OrderParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderParity::Odd => write!(f, "odd"),
            OrderParity::Even => write!(f, "even"),
        }
    }
}

/// The number-theoretic data attached to an odd prime p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeProfile {
    pub p: u64,
    /// Multiplicative order of 2 in (Z/pZ)^x.
    pub t: u64,
    pub parity: OrderParity,
    pub residue_mod_8: u64,
    /// (p-1)(t-1)/(2t) when t is odd; the span defect dimension.
    pub u: Option<u64>,
}

impl PrimeProfile {
    /// The Q-span dimension of {tau((1))(zeta^k)} predicted by Ewing's
    /// lemma: (p-1)/2 for even t, (p-1)(t-1)/(2t) for odd t.
    pub fn ewing_span_dim(&self) -> u64 {
        match self.parity {
            OrderParity::Even => (self.p - 1) / 2,
            OrderParity::Odd => (self.p - 1) * (self.t - 1) / (2 * self.t),
        }
    }
}

/// Computes the profile of an odd prime: the order of 2, its parity, the
/// residue mod 8, and the defect u for odd order.
pub fn prime_profile(p: u64) -> Result<PrimeProfile> {
    check_odd_prime(p)?;
    let mut t = 1u64;
    let mut acc = 2u64 % p;
    while acc != 1 {
        acc = (acc * 2) % p;
        t += 1;
    }
    debug_assert_eq!((p - 1) % t, 0, "order divides the group order");
    let parity = if t % 2 == 0 {
        OrderParity::Even
    } else {
        OrderParity::Odd
    };
    let u = match parity {
        OrderParity::Odd => Some((p - 1) * (t - 1) / (2 * t)),
        OrderParity::Even => None,
    };
    Ok(PrimeProfile {
        p,
        t,
        parity,
        residue_mod_8: p % 8,
        u,
    })
}

/// Rank and integer kernel of the tau vectors for one degree r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationResult {
    pub p: u64,
    pub r: u32,
    /// dim_Q span {tau((r))(zeta^k) : k = 1..(p-1)/2}.
    pub rank: usize,
    /// Primitive integer vectors u with sum_k u_k tau((r))(zeta^k) = 0;
    /// rank + kernel.len() = (p-1)/2.
    pub kernel: Vec<Vec<BigInt>>,
}

/// The coordinate rows of tau((r))(zeta^k), k = 1..(p-1)/2, over the
/// power basis of Q(zeta_p).
fn tau_row_matrix(p: u64, r: u32, order: u32) -> Result<Vec<Vec<BigRational>>> {
    let lambda = Partition::new(vec![r]);
    let order = order.max(r);
    (1..=(p - 1) / 2)
        .map(|k| {
            let values = tau_values_for_power(p, k, order)?;
            Ok(values
                .get(&lambda)
                .expect("table covers the single-row partition")
                .coords()
                .to_vec())
        })
        .collect()
}

/// Exact rank of span {tau((r))(zeta^k)} and a primitive integer basis of
/// the relation space. `order` is the series truncation order (raised to
/// r if below it).
pub fn tau_rank(p: u64, r: u32, order: u32) -> Result<RelationResult> {
    if r < 1 {
        return Err(Error::InvalidArgument("degree r must be at least 1".into()));
    }
    let rows = tau_row_matrix(p, r, order)?;
    let rank = rational_rank(&rows);
    // Left kernel: right kernel of the transpose.
    let cols = rows.first().map_or(0, Vec::len);
    let transpose: Vec<Vec<BigRational>> = (0..cols)
        .map(|j| rows.iter().map(|row| row[j].clone()).collect())
        .collect();
    let kernel = rational_kernel(&transpose)
        .iter()
        .map(|v| primitive_integer_vector(v).expect("kernel vectors are nonzero"))
        .collect::<Vec<_>>();
    debug_assert_eq!(rank + kernel.len(), ((p - 1) / 2) as usize);
    Ok(RelationResult { p, r, rank, kernel })
}

/// A canonical nonzero integer relation sum_k u_k tau((1))(zeta^k) = 0:
/// the first row of the Hermite normal form of the kernel basis. Errors
/// when 2 has even order mod p (the tau vector is independent).
pub fn find_relation(p: u64) -> Result<Vec<BigInt>> {
    let result = tau_rank(p, 1, 1)?;
    if result.kernel.is_empty() {
        return Err(Error::NoRelationExists(p));
    }
    let hnf = hermite_normal_form(&result.kernel);
    let first = hnf.into_iter().next().expect("nonempty kernel");
    Ok(primitive_integer_vector(
        &first
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect::<Vec<_>>(),
    )
    .expect("HNF rows are nonzero"))
}

/// Searches for a relation among subsets of {tau((1))(zeta^k)} of size at
/// most `cap`, smallest support first (then lexicographic in k). Returns
/// the full-length vector, zero off the support. `None` means no relation
/// with support <= cap was found — not that none exists.
pub fn minimal_support_relation(p: u64, cap: u32) -> Result<Option<Vec<BigInt>>> {
    let rows = tau_row_matrix(p, 1, 1)?;
    let half = rows.len();
    let cap = (cap as usize).min(half);
    for size in 1..=cap {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let chosen: Vec<Vec<BigRational>> =
                subset.iter().map(|&i| rows[i].clone()).collect();
            if rational_rank(&chosen) < size {
                let cols = chosen[0].len();
                let transpose: Vec<Vec<BigRational>> = (0..cols)
                    .map(|j| chosen.iter().map(|row| row[j].clone()).collect())
                    .collect();
                let kernel = rational_kernel(&transpose);
                let small = primitive_integer_vector(&kernel[0]).expect("nonzero");
                let mut full = vec![BigInt::zero(); half];
                for (slot, value) in subset.iter().zip(small) {
                    full[*slot] = value;
                }
                return Ok(Some(full));
            }
            if !next_combination(&mut subset, half) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances to the next size-k subset of 0..n in lexicographic order;
/// false when `subset` was the last one.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// True when `u` annihilates the degree-r tau vector exactly.
pub fn verify_relation(p: u64, r: u32, u: &[BigInt]) -> Result<bool> {
    let lambda = Partition::new(vec![r]);
    if u.len() != ((p - 1) / 2) as usize {
        return Err(Error::InvalidArgument(format!(
            "relation length {} does not match (p-1)/2 = {}",
            u.len(),
            (p - 1) / 2
        )));
    }
    let mut sum = crate::cyclotomic::CyclotomicNumber::zero(p);
    for (idx, coeff) in u.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let k = idx as u64 + 1;
        let tau = tau_values_for_power(p, k, r)?;
        let value = tau.get(&lambda).expect("covered");
        let term = value.scale(&BigRational::from_integer(coeff.clone()));
        sum = sum.checked_add(&term)?;
    }
    Ok(sum.is_zero())
}

/// gcd of the entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.abs()))
}
