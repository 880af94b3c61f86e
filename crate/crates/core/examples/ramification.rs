//! Newton-polygon ramification of ℓ(x) - s x^{q^t} at s = 0 and s = ∞.

use scattered::ff::FieldCtx;
use scattered::galois::{newton_ramification, Place};
use scattered::linpoly::LinPoly;

fn main() -> scattered::Result<()> {
    let ctx = FieldCtx::new(3, &[1])?;
    for (coeffs, t) in [(vec![1, 0, 1], 1), (vec![1, 1], 3), (vec![1], 2)] {
        let l = LinPoly::new(ctx.clone(), 0, coeffs.clone())?;
        for place in [Place::Zero, Place::Infinity] {
            let p = newton_ramification(&l, t, place)?;
            let segments: Vec<String> =
                p.entries.iter().map(|s| format!("e={}×{}{}", s.e, s.multiplicity, if s.q_divisible { " (q | e)" } else { "" })).collect();
            println!("{coeffs:?}, t = {t}, s = {}: {} (total {})", serde_json::to_string(&place).unwrap(), segments.join(", "), p.total_degree);
        }
    }
    Ok(())
}
