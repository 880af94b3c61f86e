//! Reduces polynomials to t-normalized form and transports a specialization
//! s₀ through the recorded steps.

use scattered::ff::FieldCtx;
use scattered::linpoly::LinPoly;
use scattered::scatter::{is_t_normalized, kernel_dims, t_normalize};

fn main() -> scattered::Result<()> {
    let ctx = FieldCtx::new(3, &[2, 2])?;
    let f = ctx.gf(2)?;
    // 2x^9 + 7x^27 + 5x^81 over F_9 with t = 3: scale, drop x^27, descend by x^9
    let l = LinPoly::new(ctx.clone(), 1, vec![0, 0, 2, 7, 5])?;
    let n = t_normalize(&l, 3)?;
    println!("normalized coefficients {:?}, t = {}", n.poly.coeffs(), n.t);
    for step in &n.log {
        println!("  {}", serde_json::to_string(step).expect("steps serialize"));
    }
    println!("t-normalized: {}", is_t_normalized(&n.poly, n.t));

    let before = kernel_dims(&l, 2, 3)?;
    let after = kernel_dims(&n.poly, 2, n.t)?;
    let agree = (0..before.len() as u64).all(|s| after[n.map_specialization(&*f, 4, s) as usize] == before[s as usize]);
    println!("kernel dimensions agree along the transport: {agree}");
    Ok(())
}
