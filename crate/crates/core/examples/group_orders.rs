//! Classical group orders and Zsigmondy primes.

use scattered::groups::{order_gammal1, order_gl, order_sl, order_sp, zsigmondy};

fn main() -> scattered::Result<()> {
    for (d, q) in [(3, 5), (3, 9), (4, 3)] {
        println!("|GL_{d}({q})| = {}, |SL_{d}({q})| = {}, |ΓL_1({q}^{d})| = {}", order_gl(d, q)?, order_sl(d, q)?, order_gammal1(d, q)?);
    }
    println!("|Sp_4(3)| = {}", order_sp(4, 3)?);
    for (b, n) in [(3, 6), (2, 6), (5, 12), (7, 40)] {
        println!("Zsigmondy({b}, {n}) = {:?}", zsigmondy(b, n)?);
    }
    Ok(())
}
