//! The power series behind every characteristic class in this crate.
//!
//! Prints the eigenvalue generating series M^{zeta^k}(x) (the series whose
//! coefficients become the tau values), the exponential series, and the
//! L-genus series sqrt(z)/tanh(sqrt(z)).

use as_kit::series::{as_generating_series, exp_series, l_generating_series};
use num::BigRational;

fn main() -> as_kit::Result<()> {
    let p = 7;
    let order = 4;

    for k in 1..=(p - 1) / 2 {
        let series = as_generating_series(p, k, order)?;
        println!("M^(zeta^{k}) up to x^{order}:");
        for (j, c) in series.coeffs().iter().enumerate() {
            println!("  x^{j}: {c}");
        }
        // A hyperbolic-cotangent shape: the float embedding of b_1 equals
        // -i / tan(pi k / p) + 1... up to normalization it must at least be
        // purely imaginary.
        let b1 = series.coeff(1).to_complex();
        assert!(b1.re.abs() < 1e-12, "b_1 should be purely imaginary");
    }

    let l_series = l_generating_series(4)?;
    println!("L-genus series 1 + z/3 - z^2/45 + ...:");
    for (j, c) in l_series.coeffs().iter().enumerate() {
        println!("  z^{j}: {c}");
    }
    assert_eq!(*l_series.coeff(1), BigRational::new(1.into(), 3.into()));
    assert_eq!(*l_series.coeff(2), BigRational::new((-1).into(), 45.into()));

    // exp(2x) truncated: coefficients 2^j / j!.
    let two = BigRational::from_integer(2.into());
    let e = exp_series(5, &two);
    println!("exp(2x) up to x^5:");
    for (j, c) in e.coeffs().iter().enumerate() {
        println!("  x^{j}: {c}");
    }

    Ok(())
}
