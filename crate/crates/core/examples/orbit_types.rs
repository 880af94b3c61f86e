//! Frobenius orbit types of ℓ(x)/x - s₀x^{q^t - 1} at each specialization,
//! and the fixed-point criterion compared with the root count.

use scattered::ff::FieldCtx;
use scattered::galois::{orbit_type, verify_equivalence};
use scattered::linpoly::LinPoly;

fn main() -> scattered::Result<()> {
    let ctx = FieldCtx::new(3, &[1, 2])?;
    let l = LinPoly::new(ctx.clone(), 0, vec![1, 0, 1])?;
    for code in [0, 1, 5] {
        let o = orbit_type(&l, 1, 2, ctx.element(2, code)?)?;
        println!("s0 = {code}: degrees {:?}, fixed nonzero roots {}, ramified {}", o.degrees, o.fixed_nonzero(), o.ramified);
    }
    let report = verify_equivalence(&l, 1, 2)?;
    println!(
        "x + x^9, t = 1, m = 2: orbit criterion {}, scattered {:?}, agree {:?}",
        report.orbit_criterion, report.scattered, report.agrees
    );
    Ok(())
}
