//! Rational relations among the degree-one tau values.
//!
//! Ewing's span computation: the values tau((1))(zeta^k), k = 1..(p-1)/2,
//! span a Q-subspace of dimension (p-1)/2 when the order of 2 mod p is
//! even, and of dimension (p-1)(t-1)/(2t) when that order t is odd. The
//! defect is witnessed by primitive integer relations; for p = 7 the
//! relation is the classical cosecant identity
//! csc(2 pi/7) + csc(4 pi/7) = csc(6 pi/7).

use as_kit::relations::{find_relation, minimal_support_relation, prime_profile, tau_rank};

fn main() -> as_kit::Result<()> {
    for p in [3u64, 5, 7, 11, 13, 23, 31] {
        let profile = prime_profile(p)?;
        let result = tau_rank(p, 1, 1)?;
        println!(
            "p={p}: order of 2 is t={} ({}), predicted span {} = computed rank {}, kernel dim {}",
            profile.t,
            profile.parity,
            profile.ewing_span_dim(),
            result.rank,
            result.kernel.len()
        );
        assert_eq!(profile.ewing_span_dim() as usize, result.rank);
    }

    // The p = 7 kernel is one-dimensional, generated by (1, 1, -1).
    let u = find_relation(7)?;
    println!("p=7 relation: {u:?}");
    assert_eq!(
        u,
        vec![1.into(), 1.into(), num::BigInt::from(-1)],
        "the cosecant relation"
    );

    // In degree r >= 2 the tau values are linearly independent, so no
    // relation exists no matter the prime.
    let r2 = tau_rank(7, 2, 2)?;
    println!("p=7, degree 2: rank {} with empty kernel", r2.rank);
    assert!(r2.kernel.is_empty());

    // Relations of smallest support, found by exhausting subsets.
    match minimal_support_relation(7, 3)? {
        Some(v) => println!("minimal-support relation for p=7 within cap 3: {v:?}"),
        None => println!("no relation of support <= 3 for p=7"),
    }
    assert_eq!(minimal_support_relation(7, 2)?, None);

    Ok(())
}
