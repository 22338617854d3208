//! Chern character, Pontryagin classes, and the L-genus.
//!
//! The classical characteristic-class toolbox shipped with the crate:
//! Newton power sums turn Chern classes into the Chern character,
//! Pontryagin classes come from c(E) * c(E-bar), and the L-genus is the
//! multiplicative sequence of sqrt(z)/tanh(sqrt(z)) — its degree-8 value
//! on Pontryagin data is (7 p_2 - p_1^2)/45.

use as_kit::asclass::{chern_character, l_genus, pontryagin_classes};
use as_kit::cohomology::ring_cpn;
use as_kit::{EigenbundleData, RingElement};
use num::BigRational;

fn main() -> as_kit::Result<()> {
    let p = 5;
    let ring = ring_cpn(2, p)?;
    let a = RingElement::basis_element(&ring, "a")?;

    // A line bundle with c_1 = a: ch = 1 + a + a^2/2.
    let line = EigenbundleData::line(a.clone())?;
    let ch = chern_character(&line, 2);
    println!("ch(O(1)) on CP^2: {ch}");
    let half = BigRational::new(1.into(), 2.into());
    assert_eq!(
        ch.graded_part(4),
        a.checked_mul(&a)?.scale_rational(&half)
    );

    // Its only Pontryagin class is p_1 = c_1^2 - 2c_2 = a^2.
    let pont = pontryagin_classes(&line);
    println!("p_1(O(1)) = {}", pont[0]);
    assert_eq!(pont[0], a.checked_mul(&a)?);

    // L-genus spot values: degree 4 is p_1/3...
    let l = l_genus(&pont)?;
    println!("L(p_1 = a^2) = {l}");
    let third = BigRational::new(1.into(), 3.into());
    assert_eq!(l.graded_part(4), pont[0].scale_rational(&third));

    // ...and degree 8 is (7 p_2 - p_1^2)/45, checked on CP^4 with
    // p_1 = a^2 and p_2 = a^4.
    let cp4 = ring_cpn(4, p)?;
    let b = RingElement::basis_element(&cp4, "a")?;
    let p1 = b.pow(2);
    let p2 = b.pow(4);
    let l2 = l_genus(&[p1.clone(), p2.clone()])?.graded_part(8);
    let expected = p2
        .scale_rational(&BigRational::from_integer(7.into()))
        .checked_sub(&p1.pow(2))?
        .scale_rational(&BigRational::new(1.into(), 45.into()));
    println!("degree-8 L-genus term: {l2}");
    assert_eq!(l2, expected);

    Ok(())
}
