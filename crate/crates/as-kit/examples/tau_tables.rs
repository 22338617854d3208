//! Tau coefficient tables and the multiplicative-sequence engine.
//!
//! tau(lambda)(zeta^k) is the coefficient of the Chern monomial c_lambda
//! in the multiplicative class attached to eigenvalue zeta^k. The
//! degree-one values have the closed form -2 zeta^k / (zeta^{2k} - 1),
//! checked here against the table, and the table feeds the generic
//! multiplicative-class evaluator.

use as_kit::cohomology::ring_cpn;
use as_kit::series::as_generating_series;
use as_kit::symfun::multiplicative_class;
use as_kit::{CyclotomicNumber, Partition, RingElement, TauTable};

fn main() -> as_kit::Result<()> {
    let p = 7;
    let table = TauTable::build(p, 3)?;

    println!("tau values for p = {p} up to weight 3:");
    for k in 1..=(p - 1) / 2 {
        for lambda in table.partitions() {
            if lambda.weight() == 0 {
                continue;
            }
            println!("  k={k} {lambda}: {}", table.value(k, &lambda)?);
        }
    }

    // Closed form for the single-box partition.
    let one = Partition::new(vec![1]);
    for k in 1..=(p - 1) / 2 {
        let zeta_k = CyclotomicNumber::zeta_pow(p, k as i64);
        let zeta_2k = CyclotomicNumber::zeta_pow(p, 2 * k as i64);
        let closed = zeta_k
            .scale(&num::BigRational::from_integer((-2).into()))
            .checked_div(&zeta_2k.checked_sub(&CyclotomicNumber::one(p))?)?;
        assert_eq!(*table.value(k, &one)?, closed);
    }
    println!("closed form -2 zeta^k / (zeta^2k - 1) confirmed for every k");

    // The same coefficients drive the multiplicative class of any Chern
    // data: for a line bundle with c_1 = a on CP^1, the class is exactly
    // 1 + tau((1)) a.
    let ring = ring_cpn(1, p)?;
    let a = RingElement::basis_element(&ring, "a")?;
    let series = as_generating_series(p, 1, 1)?;
    let class = multiplicative_class(series.coeffs(), &[a.clone()], 1, 2, 1)?;
    println!("multiplicative class of the line bundle on CP^1, k = 1:");
    println!("  {class}");
    let expected = RingElement::unit(&ring)
        .checked_add(&a.scale(table.value(1, &one)?))?;
    assert_eq!(class, expected);

    Ok(())
}
