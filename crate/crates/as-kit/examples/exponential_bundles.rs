//! Exponential Chern data, nilpotence, and the Chern character.
//!
//! A bundle is exponential when its total Chern class is e^{c_1}, i.e.
//! c_n = c_1^n / n!; equivalently its Chern character has no components
//! in degree 4 or higher. Building rank-d exponential data from a
//! degree-2 class beta needs (s beta)^{d+1} = 0, and making the data
//! integral may force a scale s > 1.

use as_kit::asclass::{chern_character, is_exponential};
use as_kit::cohomology::ring_cpn;
use as_kit::families::{exponential_chern_data, minimal_integral_scale, nilpotence_check};
use as_kit::{Error, RingElement};
use num::BigInt;

fn main() -> as_kit::Result<()> {
    let p = 7;
    let ring = ring_cpn(4, p)?;
    let a = RingElement::basis_element(&ring, "a")?;

    // a^5 = 0 on CP^4, so rank-4 exponential data with c_1 = 2a exists.
    let data = exponential_chern_data(&a, &BigInt::from(2), 4)?;
    for (j, c) in data.chern().iter().enumerate() {
        println!("c_{} = {c}", j + 1);
    }
    assert!(is_exponential(&data));

    // Its Chern character lives in degrees 0 and 2 only.
    let ch = chern_character(&data, 4);
    println!("ch = {ch}");
    for degree in (4..=ring.top()).step_by(2) {
        assert!(ch.graded_part(degree).is_zero());
    }

    // Rank 3 is impossible on CP^4: it would need (2a)^4 = 0, but a^4
    // survives to the top degree.
    match exponential_chern_data(&a, &BigInt::from(2), 3) {
        Err(Error::NilpotenceViolated(msg)) => println!("rank 3 fails: {msg}"),
        other => panic!("expected a nilpotence error, got {other:?}"),
    }

    // Sufficient nilpotence bookkeeping: which eigen-indices can carry
    // rank >= N data, and are there at least u + 1 of them?
    let report = nilpotence_check(&a, &[4, 4, 4], 2)?;
    println!(
        "nilpotence degree N = {}, eligible k = {:?}, sufficient: {}",
        report.n, report.eligible_k, report.sufficient
    );
    assert!(report.sufficient);

    // Integrality: c_j = (s a)^j / j! has integer basis coordinates for
    // every j <= 4 once s clears the factorials' primes.
    let s = minimal_integral_scale(&a, 4)?;
    println!("minimal integral scale for rank 4 on CP^4: s = {s}");
    let integral = exponential_chern_data(&a, &s, 4)?;
    for (j, c) in integral.chern().iter().enumerate() {
        println!("c_{}({s}a-data) = {c}", j + 1);
        for coeff in c.coords() {
            for q in coeff.coords() {
                assert!(q.is_integer(), "coordinates must be integral");
            }
        }
    }

    Ok(())
}
