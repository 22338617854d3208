//! An infinite family of vanishing bundles from one integer relation.
//!
//! Any primitive integer vector annihilating the degree-one tau values
//! spawns a family: member m carries exponential eigenbundles with
//! c_1(E_k) = m * u_k * beta. Every member vanishes — condition 1 by
//! linearity of the relation, condition 2 by exponentiality — and the
//! first Chern profiles are pairwise distinct, so the family is honest.

use as_kit::asclass::{euler_class, is_vanishing, theorem_conditions};
use as_kit::cohomology::ring_cpn;
use as_kit::families::build_vanishing_family;
use as_kit::relations::find_relation;
use as_kit::RingElement;

fn main() -> as_kit::Result<()> {
    let p = 7;
    let ring = ring_cpn(1, p)?;
    let beta = RingElement::basis_element(&ring, "a")?;
    let relation = find_relation(p)?;
    println!("relation for p = {p}: {relation:?}");

    let family = build_vanishing_family(&ring, &beta, &[1, 1, 1], &relation, 10)?;
    println!("built {} members over S^2", family.len());

    let mut profiles = Vec::new();
    for (m, bundle) in family.iter().enumerate() {
        let vanishing = is_vanishing(bundle)?;
        let (c1, c2) = theorem_conditions(bundle)?;
        let euler = euler_class(bundle);
        println!(
            "member {}: vanishing={vanishing} cond1={c1} cond2={c2} euler={euler}",
            m + 1
        );
        assert!(vanishing && c1 && c2);
        assert!(euler.is_zero());
        profiles.push(format!(
            "{:?}",
            bundle
                .eigen()
                .iter()
                .map(|e| e.chern_class(1))
                .collect::<Vec<_>>()
        ));
    }
    profiles.sort();
    profiles.dedup();
    assert_eq!(profiles.len(), family.len(), "distinct c_1 profiles");
    println!("all {} first-Chern profiles are distinct", family.len());

    Ok(())
}
