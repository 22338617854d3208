//! Finite graded cohomology rings and their JSON form.
//!
//! The class machinery works over any finite graded-commutative ring in
//! even degrees with a fundamental class: truncated polynomial rings of
//! projective spaces, connected sums, tensor products, or anything a
//! validated multiplication table describes. Rings and bundles have a
//! stable JSON form for the CLI.

use as_kit::cohomology::{ring_cp2_cp2bar, ring_cpn, ring_point, ring_tensor};
use as_kit::json::{bundle_from_str, bundle_to_string_pretty, ring_to_value};
use as_kit::{GBundleChernData, RingElement};

fn main() -> as_kit::Result<()> {
    let p = 5;

    // CP^3: basis 1, a, a^2, a^3 with a^4 = 0; fundamental class a^3.
    let cp3 = ring_cpn(3, p)?;
    let a = RingElement::basis_element(&cp3, "a")?;
    let cube = a.pow(3);
    println!("on CP^3: a^3 = {cube}, <a^3, [M]> = {}", cube.pair_fundamental());
    assert!(a.pow(4).is_zero());

    // Connected sum CP^2 # CP^2-bar: x^2 = -y^2 = v, xy = 0.
    let sum = ring_cp2_cp2bar(p)?;
    let x = RingElement::basis_element(&sum, "a")?;
    let y = RingElement::basis_element(&sum, "b")?;
    println!(
        "on CP^2 # CP^2-bar: <a^2> = {}, <b^2> = {}, <ab> = {}",
        x.pow(2).pair_fundamental(),
        y.pow(2).pair_fundamental(),
        x.checked_mul(&y)?.pair_fundamental()
    );

    // Products of spaces are tensor products of rings: S^2 x S^2.
    let s2 = ring_cpn(1, p)?;
    let s2xs2 = ring_tensor(&s2, &s2)?;
    println!(
        "S^2 x S^2 basis: [{}], top degree {}",
        s2xs2.names().join(", "),
        s2xs2.top()
    );
    let point = ring_point(p)?;
    assert!(ring_tensor(&s2, &point)?.same_structure(&s2));

    // Ring JSON round trip.
    let encoded = serde_json::to_string_pretty(&ring_to_value(&sum)).expect("serialize");
    println!("ring JSON ({} bytes)", encoded.len());

    // Bundle JSON: a two-eigenvalue bundle over S^2 by builtin ring name.
    let b = RingElement::basis_element(&s2, "a")?;
    let bundle = GBundleChernData::from_line_bundles(&s2, vec![b.clone(), -&b])?;
    let text = bundle_to_string_pretty(&bundle, Some("s2"));
    println!("bundle JSON:\n{text}");
    let decoded = bundle_from_str(&text)?;
    assert_eq!(decoded, bundle);
    println!("bundle JSON round trip: ok");

    Ok(())
}
