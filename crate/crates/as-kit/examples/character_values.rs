//! Character values of the Atiyah-Singer invariant.
//!
//! The G-signature machinery pairs L-class times M-class against the
//! fundamental class and multiplies by the scalar A-factor. This example
//! computes the full character table n -> AS(g^n) for a non-vanishing
//! bundle on CP^2, exhibits its Galois equivariance, and shows that a
//! vanishing bundle has an identically zero table.

use as_kit::asclass::{a_factor, as_character, is_vanishing, l_genus, total_m_class};
use as_kit::cohomology::ring_cpn;
use as_kit::{GBundleChernData, RingElement};
use num::BigRational;

fn main() -> as_kit::Result<()> {
    let p = 7;
    let ring = ring_cpn(2, p)?;
    let a = RingElement::basis_element(&ring, "a")?;

    // A bundle that does NOT satisfy the tau relation: line bundles with
    // c_1 = (a, 0, 0).
    let zero = RingElement::zero(&ring);
    let bundle =
        GBundleChernData::from_line_bundles(&ring, vec![a.clone(), zero.clone(), zero])?;
    assert!(!is_vanishing(&bundle)?);

    // An L-class with rational Pontryagin input p_1 = 3a^2 gives
    // L = 1 + a^2 (degree-4 part p_1 / 3).
    let p1 = a.checked_mul(&a)?.scale_rational(&BigRational::from_integer(3.into()));
    let l_class = l_genus(&[p1])?;
    println!("L-class for p_1 = 3a^2: {l_class}");

    println!("character table with that L-class:");
    for n in 1..p as i64 {
        let value = as_character(&bundle, &l_class, n)?;
        let z = value.to_complex();
        println!("  n={n}: {value}  ~  {:.6}{:+.6}i", z.re, z.im);
    }

    // Galois equivariance: the n-th value is sigma_n of the first one
    // exactly when the whole construction commutes with zeta -> zeta^n;
    // the class side does, as total_m_class(b, n) = sigma_n(total_m_class(b, 1))
    // coefficientwise.
    let base = total_m_class(&bundle, 1)?;
    for n in 1..p as i64 {
        assert_eq!(total_m_class(&bundle, n)?, base.galois_apply(n)?);
    }
    println!("total_m_class(-, n) = sigma_n(total_m_class(-, 1)) for every n");

    // The scalar A-factor alone, for reference.
    println!("a_factor at n=1: {}", a_factor(&bundle, 1)?);

    // A vanishing bundle pairs to zero for every n (with L = 1 on a
    // positive-dimensional ring).
    let s2 = ring_cpn(1, p)?;
    let b = RingElement::basis_element(&s2, "a")?;
    let vanishing =
        GBundleChernData::from_line_bundles(&s2, vec![b.clone(), b.clone(), -&b])?;
    assert!(is_vanishing(&vanishing)?);
    let one = RingElement::unit(&s2);
    for n in 1..p as i64 {
        assert!(as_character(&vanishing, &one, n)?.is_zero());
    }
    println!("vanishing bundle on S^2: character identically zero");

    Ok(())
}
