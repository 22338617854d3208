//! Exact arithmetic in the cyclotomic field Q(zeta_p).
//!
//! Shows the power-basis representation, field inversion, the Galois
//! action, complex conjugation, and the float embedding used as a
//! sanity channel.

use as_kit::CyclotomicNumber;
use num::BigRational;

fn main() -> as_kit::Result<()> {
    let p = 7;
    let zeta = CyclotomicNumber::zeta(p);

    // zeta^7 = 1, and 1 + zeta + ... + zeta^6 = 0 after reduction.
    let mut power = CyclotomicNumber::one(p);
    let mut sum = CyclotomicNumber::zero(p);
    for _ in 0..p {
        sum = sum.checked_add(&power)?;
        power = power.checked_mul(&zeta)?;
    }
    println!("zeta^{p} = {power}");
    println!("1 + zeta + ... + zeta^{} = {sum}", p - 1);
    assert!(power.is_one());
    assert!(sum.is_zero());

    // Field inversion: (zeta - 1) is a unit away from the rationals.
    let one = CyclotomicNumber::one(p);
    let x = zeta.checked_sub(&one)?;
    let inv = x.inverse()?;
    println!("(zeta - 1)^-1 = {inv}");
    assert!(x.checked_mul(&inv)?.is_one());

    // The Galois action zeta -> zeta^n permutes the roots; applying n and
    // then its inverse modulo p is the identity.
    let y = zeta
        .scale(&BigRational::new(2.into(), 3.into()))
        .checked_add(&zeta.pow(3)?)?;
    let moved = y.galois_apply(3)?;
    let back = moved.galois_apply(5)?; // 3 * 5 = 15 = 1 mod 7
    println!("y = {y}");
    println!("sigma_3(y) = {moved}");
    assert_eq!(back, y);

    // Conjugation is the Galois element n = p - 1, and the float embedding
    // of x * conj(x) is a nonnegative real.
    let norm = y.checked_mul(&y.conjugate())?;
    let z = norm.to_complex();
    println!("y * conj(y) = {norm}  ~  {:.6}{:+.6}i", z.re, z.im);
    assert!(z.im.abs() < 1e-12);
    assert!(z.re >= 0.0);

    Ok(())
}
