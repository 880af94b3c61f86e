//! Checks (q, n, m, t)-scatteredness of a few polynomials, with the
//! kernel-dimension histogram and a witness when the answer is negative.

use scattered::ff::FieldCtx;
use scattered::linpoly::LinPoly;
use scattered::scatter::{index_shift, root_count_profile};

fn main() -> scattered::Result<()> {
    // ℓ = x over F_3, t = 3: scattered exactly when gcd(3, m) = 1
    for m in 1..=3 {
        let ctx = FieldCtx::new(3, &[m])?;
        let l = LinPoly::x(ctx, 0);
        let p = root_count_profile(&l, m, 3)?;
        println!("x, t = 3, m = {m}: histogram {:?}, scattered {}, witness {:?}", p.histogram, p.is_scattered(), p.witness);
    }

    // x^q + a x over F_9 read at F_81, t = 2
    let ctx = FieldCtx::new(3, &[2, 2])?;
    let l = LinPoly::new(ctx, 1, vec![2, 1])?;
    let p = root_count_profile(&l, 2, 2)?;
    println!("x^3 + 2x over F_9, t = 2, m = 2: {:?}, scattered {}", p.histogram, p.is_scattered());

    // a scattered ℓ of index t becomes one of index 0 after shifting
    let ctx = FieldCtx::new(3, &[5])?;
    let l = LinPoly::x(ctx, 0);
    let shifted = index_shift(&l, 5, 2)?;
    println!("x with t = 2 over F_3^5 shifts to coefficients {:?} on layer {}", shifted.coeffs(), shifted.coeff_layer());
    Ok(())
}
