//! Scans every 3-normalized ℓ with coefficients in F_9 and lin-degree ≤ 3
//! for scatteredness at m = 1, 2, 3, under both readings of the base field:
//! q = 3 with ℓ ∈ F_9[x] (n = 2), and q = 9 with ℓ ∈ F_9[x] (n = 1).
//! The output is evidence, not proof.

use std::sync::Arc;

use scattered::ff::FieldCtx;
use scattered::linpoly::LinPoly;
use scattered::scatter::{exceptional_scan, is_t_normalized};

const T: usize = 3;
const M_MAX: usize = 3;

fn polynomials(ctx: &Arc<FieldCtx>, layer: usize) -> Vec<LinPoly> {
    let size = ctx.cardinality(layer) as u64;
    let mut out = Vec::new();
    for r in 0..=3usize {
        let lower = r.min(3);
        let count = size.pow(lower as u32);
        for code in 0..count {
            let mut coeffs: Vec<u64> = (0..lower).map(|i| code / size.pow(i as u32) % size).collect();
            coeffs.push(1);
            let Ok(l) = LinPoly::new(ctx.clone(), layer, coeffs) else { continue };
            if l.lin_degree().unwrap() == r && is_t_normalized(&l, T) {
                out.push(l);
            }
        }
    }
    out
}

fn main() -> scattered::Result<()> {
    let readings = [
        ("q = 3, n = 2", FieldCtx::new(3, &[2])?),
        ("q = 9, n = 1", FieldCtx::new(3, &[2])?.with_base_layer(1)?),
    ];
    for (name, ctx) in readings {
        let polys = polynomials(&ctx, 1);
        let mut always = Vec::new();
        let mut pattern_counts = std::collections::BTreeMap::new();
        for l in &polys {
            let report = exceptional_scan(l, T, M_MAX)?;
            let ms = report.scattered_ms();
            *pattern_counts.entry(ms.clone()).or_insert(0) += 1;
            if ms.len() == M_MAX {
                always.push(l.coeffs().to_vec());
            }
        }
        let x = LinPoly::x(ctx.clone(), 1);
        let x_ms = exceptional_scan(&x, T, M_MAX)?.scattered_ms();
        println!("{name}: {} polynomials", polys.len());
        println!("  x is scattered for m in {x_ms:?}");
        for (ms, count) in &pattern_counts {
            println!("  scattered exactly for m in {ms:?}: {count}");
        }
        println!("  scattered for every m ≤ {M_MAX}: {always:?}");
    }
    Ok(())
}
