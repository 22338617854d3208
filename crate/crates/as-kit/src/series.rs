//! Truncated formal power series over Q or Q(zeta_p).
//!
//! A series of order D keeps the coefficients of z^0 .. z^D. The two
//! generators of interest are built here:
//!
//! - `as_generating_series(p, k, D)`: the eigenvalue series
//!   ((zeta^k - 1)/(zeta^k + 1)) * ((zeta^k e^z + 1)/(zeta^k e^z - 1)),
//!   assembled algebraically from exp/invert/multiply. Floats never enter;
//!   they exist only as a test channel.
//! - `l_generating_series(D)`: sqrt(z)/tanh(sqrt(z)), obtained as the even
//!   part of z/tanh(z) re-indexed in z, avoiding formal square roots.

use crate::cyclotomic::{check_odd_prime, CyclotomicNumber};
use crate::{weight_cap, Error, Result};
use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};

/// Commutative-ring operations shared by field scalars and cohomology
/// ring elements.
///
/// `*_like` constructors model a value of the same ring as `self`; this is
/// what lets one generic engine serve Q, every Q(zeta_p), and graded rings
/// without a global registry.
pub trait RingOps: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_bigint_like(&self, n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn ref_add(&self, other: &Self) -> Self;
    fn ref_sub(&self, other: &Self) -> Self;
    fn ref_mul(&self, other: &Self) -> Self;
    fn ref_neg(&self) -> Self;
}

/// Coefficient fields the series engine can work over.
pub trait Scalar: RingOps {
    fn same_field(&self, other: &Self) -> bool;
    /// Multiplicative inverse; `None` exactly for zero.
    fn try_inverse(&self) -> Option<Self>;
    /// Float sanity channel.
    fn embed_complex(&self) -> Complex64;
}

impl RingOps for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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

impl Scalar for BigRational {
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn embed_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl RingOps for CyclotomicNumber {
    fn zero_like(&self) -> Self {
        CyclotomicNumber::zero(self.p())
    }
    fn one_like(&self) -> Self {
        CyclotomicNumber::one(self.p())
    }
    fn from_bigint_like(&self, n: &BigInt) -> Self {
        CyclotomicNumber::from_rational(self.p(), BigRational::from_integer(n.clone()))
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
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

impl Scalar for CyclotomicNumber {
    fn same_field(&self, other: &Self) -> bool {
        self.p() == other.p()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn embed_complex(&self) -> Complex64 {
        self.to_complex()
    }
}

/// A formal power series truncated at order D; coefficients of z^0 .. z^D.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C: Scalar> {
    coeffs: Vec<C>,
}

impl<C: Scalar> TruncatedSeries<C> {
    /// Wraps explicit coefficients; they must be nonempty and share a field.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a truncated series needs at least the constant term".into(),
            ));
        }
        if coeffs.windows(2).any(|w| !w[0].same_field(&w[1])) {
            return Err(Error::InvalidArgument(
                "series coefficients must share one coefficient field".into(),
            ));
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// The constant series `value` at the given order.
    pub fn constant(value: C, order: usize) -> Self {
        let mut coeffs = vec![value.zero_like(); order + 1];
        coeffs[0] = value;
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == self.coeffs[0].one_like()
            && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if !self.coeffs[0].same_field(&other.coeffs[0]) {
            return Err(Error::InvalidArgument(
                "series coefficient fields differ".into(),
            ));
        }
        Ok(())
    }

    /// Coefficientwise sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.ref_add(b))
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Cauchy product truncated at the shared order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.order();
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(d + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].ref_add(&a.ref_mul(b));
                }
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].try_inverse().ok_or(Error::NotInvertible)?;
        let d = self.order();
        let mut out = Vec::with_capacity(d + 1);
        out.push(a0_inv.clone());
        // b_n = -a0^{-1} * sum_{j=1..n} a_j b_{n-j}
        for n in 1..=d {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc = acc.ref_add(&self.coeffs[j].ref_mul(&out[n - j]));
                }
            }
            out.push(a0_inv.ref_neg().ref_mul(&acc));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Scales every coefficient by `factor`.
    pub fn scale(&self, factor: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|c| factor.ref_mul(c)).collect();
        TruncatedSeries { coeffs }
    }

    /// Adds a constant to the z^0 coefficient.
    pub fn shift_constant(&self, delta: &C) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = coeffs[0].ref_add(delta);
        TruncatedSeries { coeffs }
    }
}

/// The exponential series sum_{j<=D} scale^j z^j / j!.
pub fn exp_series<C: Scalar>(order: usize, scale: &C) -> TruncatedSeries<C> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = scale.one_like();
    let mut factorial = BigInt::one();
    for j in 0..=order {
        if j > 0 {
            power = power.ref_mul(scale);
            factorial *= j;
        }
        let inv_fact = scale
            .from_bigint_like(&factorial)
            .try_inverse()
            .expect("factorials are nonzero");
        coeffs.push(power.ref_mul(&inv_fact));
    }
    TruncatedSeries { coeffs }
}

fn check_order_cap(order: usize) -> Result<()> {
    let cap = weight_cap();
    if order as u64 > cap as u64 {
        return Err(Error::WeightAboveCap {
            weight: order.try_into().unwrap_or(u32::MAX),
            cap,
        });
    }
    Ok(())
}

/// Generating series for the eigenvalue zeta^j, any j in 1..p-1.
///
/// This is the engine behind [`as_generating_series`]; the public entry
/// point restricts to the canonical half range k <= (p-1)/2, but class
/// computations at powers of the group generator need arbitrary exponents.
pub(crate) fn generating_series_for_power(
    p: u64,
    j: u64,
    order: usize,
) -> TruncatedSeries<CyclotomicNumber> {
    debug_assert!(j >= 1 && j < p);
    let zeta = CyclotomicNumber::zeta_pow(p, j as i64);
    let one = CyclotomicNumber::one(p);
    // (zeta e^z + 1) / (zeta e^z - 1), then the constant normalizer
    // (zeta - 1)/(zeta + 1); zeta != +-1, so both divisions are exact.
    let zeta_exp = exp_series(order, &one).scale(&zeta);
    let numerator = zeta_exp.shift_constant(&one);
    let denominator = zeta_exp.shift_constant(&-&one);
    let quotient = numerator
        .checked_mul(&denominator.invert().expect("constant zeta - 1 is nonzero"))
        .expect("orders agree by construction");
    let normalizer = (&zeta - &one)
        .checked_div(&(&zeta + &one))
        .expect("zeta + 1 is a unit");
    quotient.scale(&normalizer)
}

/// The eigenvalue generating series with coefficients b_{j,k} in Q(zeta_p);
/// constant term exactly 1.
pub fn as_generating_series(
    p: u64,
    k: u64,
    order: usize,
) -> Result<TruncatedSeries<CyclotomicNumber>> {
    check_odd_prime(p)?;
    let max = (p - 1) / 2;
    if k < 1 || k > max {
        return Err(Error::EigenIndexOutOfRange { k, max });
    }
    check_order_cap(order)?;
    Ok(generating_series_for_power(p, k, order))
}

/// The L-genus series sqrt(z)/tanh(sqrt(z)) = 1 + z/3 - z^2/45 + ... over Q.
///
/// Computed as cosh(w) * (sinh(w)/w)^{-1} to order 2D in w, an even series,
/// then re-indexed by w^2 -> z.
pub fn l_generating_series(order: usize) -> Result<TruncatedSeries<BigRational>> {
    check_order_cap(order)?;
    let inner = 2 * order;
    let mut sinh_over_w = vec![BigRational::zero(); inner + 1];
    let mut cosh = vec![BigRational::zero(); inner + 1];
    let mut factorial = BigInt::one();
    for j in 0..=inner {
        if j > 0 {
            factorial *= j;
        }
        if j % 2 == 0 {
            cosh[j] = BigRational::new(BigInt::one(), factorial.clone());
            // sinh(w)/w has the 1/(j+1)! at even slots.
            let odd_fact = &factorial * (j as u64 + 1);
            sinh_over_w[j] = BigRational::new(BigInt::one(), odd_fact);
        }
    }
    let cosh = TruncatedSeries::new(cosh)?;
    let sinh_over_w = TruncatedSeries::new(sinh_over_w)?;
    let even = cosh.checked_mul(&sinh_over_w.invert()?)?;
    let coeffs = (0..=order).map(|j| even.coeff(2 * j).clone()).collect();
    Ok(TruncatedSeries { coeffs })
}
