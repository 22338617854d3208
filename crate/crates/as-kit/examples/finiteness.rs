//! A finiteness phenomenon for compatible first Chern classes.
//!
//! On CP^2 # CP^2-bar, asking a line-bundle profile x*a + y*b to be
//! c2-compatible with a fixed reference bundle reduces to the Diophantine
//! equation x^2 - y^2 = 1, which has exactly two integer solutions. The
//! scan confirms the reduction by brute force on both sides.

use as_kit::families::{c2_solution_filter, finiteness_demo};

fn main() -> as_kit::Result<()> {
    // Direct solutions of x^2 - y^2 = 1 up to a large bound.
    let direct = finiteness_demo(1_000_000);
    println!("solutions of x^2 - y^2 = 1 with |x| <= 10^6: {direct:?}");
    assert_eq!(direct, vec![(-1, 0), (1, 0)]);

    // The same set through the c2-compatibility filter.
    let filtered = c2_solution_filter(5, 100)?;
    println!("c2-compatible (x, y) with |x|, |y| <= 100: {filtered:?}");
    assert_eq!(filtered, direct);

    // The count is stable under the bound — that is the finiteness.
    for bound in [1, 10, 1000] {
        assert_eq!(finiteness_demo(bound).len(), 2);
    }
    println!("solution count is 2 at every bound >= 1");

    Ok(())
}
