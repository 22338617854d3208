//! The vanishing criterion for the Atiyah-Singer class.
//!
//! A Z/p-equivariant bundle is given by eigenbundle Chern data; its class
//! is the product of per-eigenvalue multiplicative classes. Vanishing
//! (class = 1) is equivalent to two checkable conditions:
//!   1. the first Chern classes satisfy the tau relation,
//!   2. every eigenbundle is exponential (c_n = c_1^n / n!).
//! The example builds the p = 7 relation bundle over S^2, checks both
//! routes, and shows the classical consequences.

use as_kit::asclass::{
    euler_class, is_vanishing, pontryagin_classes, theorem_conditions, total_m_class,
};
use as_kit::cohomology::ring_cpn;
use as_kit::{GBundleChernData, RingElement};

fn main() -> as_kit::Result<()> {
    let p = 7;
    let ring = ring_cpn(1, p)?; // H*(S^2) = H*(CP^1)
    let a = RingElement::basis_element(&ring, "a")?;

    // Eigenbundle line data with c_1 = (a, a, -a): the coefficients
    // (1, 1, -1) annihilate tau((1)) for p = 7.
    let bundle =
        GBundleChernData::from_line_bundles(&ring, vec![a.clone(), a.clone(), -&a])?;

    let total = total_m_class(&bundle, 1)?;
    println!("total class of the (1,1,-1) bundle: {total}");
    assert!(total.is_unit_element());

    let vanishing = is_vanishing(&bundle)?;
    let (cond1, cond2) = theorem_conditions(&bundle)?;
    println!("is_vanishing: {vanishing}");
    println!("condition 1 (c1 relation): {cond1}");
    println!("condition 2 (exponential eigenbundles): {cond2}");
    assert_eq!(vanishing, cond1 && cond2);

    // Consequences: vanishing forces euler class 0 and Pontryagin classes 0.
    let e = euler_class(&bundle);
    println!("euler class: {e}");
    assert!(e.is_zero());
    for (k, eigen) in bundle.eigen().iter().enumerate() {
        for (i, pk) in pontryagin_classes(eigen).iter().enumerate() {
            println!("p_{}(E_{}) = {pk}", i + 1, k + 1);
            assert!(pk.is_zero());
        }
    }

    // Perturbing one c_1 breaks condition 1 and the class with it.
    let broken = GBundleChernData::from_line_bundles(
        &ring,
        vec![a.clone(), a.clone(), a.clone()],
    )?;
    let (b1, b2) = theorem_conditions(&broken)?;
    println!(
        "perturbed bundle: vanishing={}, cond1={b1}, cond2={b2}",
        is_vanishing(&broken)?
    );
    assert!(!is_vanishing(&broken)?);
    assert!(!b1 && b2);

    Ok(())
}
