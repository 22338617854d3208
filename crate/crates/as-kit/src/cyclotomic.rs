//! Exact arithmetic in the cyclotomic field Q(zeta_p), p an odd prime.
//!
//! Elements are stored on the power basis {1, zeta, ..., zeta^{p-2}} with
//! arbitrary-precision rational coordinates. The relation
//! zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}) is applied eagerly, so the
//! representation is canonical and equality is coordinate equality.

use crate::{Error, Result};
use num::complex::Complex64;
use num::{BigRational, One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of Q(zeta_p) in canonical power-basis form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    p: u64,
    coords: Vec<BigRational>,
}

/// Checks that `p` is an odd prime by trial division.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::NotOddPrime(p));
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::NotOddPrime(p));
        }
        d += 2;
    }
    Ok(())
}

impl CyclotomicNumber {
    /// Builds an element from explicit power-basis coordinates.
    pub fn new(p: u64, coords: Vec<BigRational>) -> Result<Self> {
        check_odd_prime(p)?;
        let expected = (p - 1) as usize;
        if coords.len() != expected {
            return Err(Error::CoordinateCount {
                p,
                expected,
                got: coords.len(),
            });
        }
        Ok(CyclotomicNumber { p, coords })
    }

    /// The zero element of Q(zeta_p). Panics if `p` is not an odd prime.
    pub fn zero(p: u64) -> Self {
        check_odd_prime(p).expect("invalid cyclotomic modulus");
        CyclotomicNumber {
            p,
            coords: vec![BigRational::zero(); (p - 1) as usize],
        }
    }

    /// The unit element of Q(zeta_p).
    pub fn one(p: u64) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    /// Embeds a rational number as a constant.
    pub fn from_rational(p: u64, value: BigRational) -> Self {
        let mut out = Self::zero(p);
        out.coords[0] = value;
        out
    }

    /// Embeds a plain integer as a constant.
    pub fn from_integer(p: u64, value: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(value.into()))
    }

    /// The primitive root zeta.
    pub fn zeta(p: u64) -> Self {
        Self::zeta_pow(p, 1)
    }

    /// zeta^k in canonical form, any integer exponent (k mod p).
    pub fn zeta_pow(p: u64, k: i64) -> Self {
        let mut out = Self::zero(p);
        let e = k.rem_euclid(p as i64) as usize;
        if e == (p - 1) as usize {
            // zeta^{p-1} folds into -(1 + zeta + ... + zeta^{p-2}).
            for c in &mut out.coords {
                *c = -BigRational::one();
            }
        } else {
            out.coords[e] = BigRational::one();
        }
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Power-basis coordinates, length p-1.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Q (all non-constant coordinates zero).
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when [`is_rational`](Self::is_rational) holds.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.p, other.p))
        }
    }

    /// Sum, or a field-mismatch error.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        // Rational add/sub normalizes through a gcd; cloning past a zero
        // operand is much cheaper and zeros dominate in graded rings.
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                if b.is_zero() {
                    a.clone()
                } else if a.is_zero() {
                    b.clone()
                } else {
                    a + b
                }
            })
            .collect();
        Ok(CyclotomicNumber { p: self.p, coords })
    }

    /// Difference, or a field-mismatch error.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                if b.is_zero() {
                    a.clone()
                } else if a.is_zero() {
                    -b
                } else {
                    a - b
                }
            })
            .collect();
        Ok(CyclotomicNumber { p: self.p, coords })
    }

    /// Product with full reduction, or a field-mismatch error.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        // Rational factors act coordinatewise: no convolution, no
        // reduction. This is the dominant case in characteristic-class
        // arithmetic, where structure constants and Chern coefficients
        // are plain rationals.
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(r));
        }
        let n = self.coords.len();
        // Schoolbook convolution up to degree 2p-4, then eager reduction.
        let mut conv = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        Ok(CyclotomicNumber {
            p: self.p,
            coords: reduce_powers(self.p, conv),
        })
    }

    /// Adds a * b into the constant coordinate, in place. Hot path for
    /// ring multiplication over rational-valued coordinates.
    pub(crate) fn rational_mul_add_assign(&mut self, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = if b.is_one() { a.clone() } else { a * b };
        if self.coords[0].is_zero() {
            self.coords[0] = prod;
        } else {
            self.coords[0] += prod;
        }
    }

    /// Scales by a rational number.
    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_one() {
            return self.clone();
        }
        let coords = self
            .coords
            .iter()
            .map(|c| {
                if c.is_zero() || factor.is_zero() {
                    BigRational::zero()
                } else {
                    c * factor
                }
            })
            .collect();
        CyclotomicNumber { p: self.p, coords }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials modulo Phi_p(x) = 1 + x + ... + x^{p-1}.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let coords = poly_inverse_mod_phi(self.p, &self.coords);
        Ok(CyclotomicNumber {
            p: self.p,
            coords,
        })
    }

    /// Quotient, or an error for mismatched fields / zero divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let (base, mut e) = if n < 0 {
            (self.inverse()?, n.unsigned_abs())
        } else {
            (self.clone(), n as u64)
        };
        let mut acc = Self::one(self.p);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Image under the field automorphism zeta -> zeta^n.
    pub fn galois_apply(&self, n: i64) -> Result<Self> {
        let p = self.p;
        let e = n.rem_euclid(p as i64) as u64;
        if e == 0 {
            return Err(Error::InvalidGaloisExponent { n, p });
        }
        let mut out = vec![BigRational::zero(); self.coords.len()];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = ((i as u64) * e % p) as usize;
            if target == (p - 1) as usize {
                for slot in &mut out {
                    *slot -= c;
                }
            } else {
                out[target] += c;
            }
        }
        Ok(CyclotomicNumber { p, coords: out })
    }

    /// Complex conjugate (the automorphism zeta -> zeta^{p-1}).
    pub fn conjugate(&self) -> Self {
        self.galois_apply(self.p as i64 - 1)
            .expect("p-1 is invertible mod p")
    }

    /// Evaluation at zeta = exp(2*pi*i/p); float sanity channel only.
    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coords.iter().enumerate() {
            let angle = std::f64::consts::TAU * (i as f64) / (self.p as f64);
            let value = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(angle.cos(), angle.sin()) * value;
        }
        acc
    }
}

/// Folds a coefficient vector on powers 1..zeta^{len-1} into the canonical
/// basis, using zeta^p = 1 and zeta^{p-1} = -(1 + ... + zeta^{p-2}).
fn reduce_powers(p: u64, conv: Vec<BigRational>) -> Vec<BigRational> {
    let n = (p - 1) as usize;
    let mut out = vec![BigRational::zero(); n];
    for (idx, v) in conv.into_iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let e = idx % p as usize;
        if e == n {
            for slot in out.iter_mut() {
                *slot -= &v;
            }
        } else {
            out[e] += v;
        }
    }
    out
}

// Dense polynomial helpers over Q (index = degree) for the inversion path.

fn poly_trim(v: &mut Vec<BigRational>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

/// Quotient and remainder of a by b, b nonzero.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem: Vec<BigRational> = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let factor = &rem[dr] / lead;
        quot[dr - db] = factor.clone();
        for i in 0..=db {
            let t = &b[i] * &factor;
            rem[dr - db + i] -= t;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Inverse of a nonzero element modulo Phi_p. Phi_p is irreducible over Q,
/// so the Euclidean loop always ends in a nonzero constant.
fn poly_inverse_mod_phi(p: u64, coords: &[BigRational]) -> Vec<BigRational> {
    let phi: Vec<BigRational> = vec![BigRational::one(); p as usize];
    let mut a: Vec<BigRational> = coords.to_vec();
    poly_trim(&mut a);
    // Invariant: r_i ≡ s_i * a (mod Phi_p).
    let mut r0 = phi.clone();
    let mut s0: Vec<BigRational> = vec![];
    let mut r1 = a;
    let mut s1 = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r2) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let c = r1
        .first()
        .cloned()
        .expect("gcd with irreducible Phi_p is a nonzero constant");
    let inv_c = BigRational::one() / c;
    let scaled: Vec<BigRational> = s1.iter().map(|x| x * &inv_c).collect();
    // deg s1 < p-1 holds, but reduce defensively and pad to full length.
    let (_, mut rem) = poly_divmod(&scaled, &phi);
    rem.resize((p - 1) as usize, BigRational::zero());
    rem
}

impl fmt::Display for CyclotomicNumber {
    /// Renders as a sparse polynomial in `z` standing for zeta.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign_negative = c < &BigRational::zero();
            let magnitude = if sign_negative { -c } else { c.clone() };
            if first {
                if sign_negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = magnitude.is_one();
            match (i, coeff_is_one) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{magnitude}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{magnitude}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                self.$checked(rhs).expect("cyclotomic field mismatch")
            }
        }
        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        let coords = self.coords.iter().map(|c| -c).collect();
        CyclotomicNumber {
            p: self.p,
            coords,
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}
