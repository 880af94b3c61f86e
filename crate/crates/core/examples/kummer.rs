//! Monodromy of the Kummer family ℓ = x: the geometric group is a Singer
//! cycle, the arithmetic group adds a Frobenius power.

use scattered::galois::kummer_monodromy;

fn main() -> scattered::Result<()> {
    for (q, n, m, t) in [(3, 1, 1, 3), (3, 1, 3, 3), (5, 2, 1, 3), (3, 1, 2, 4)] {
        let k = kummer_monodromy(q, n, m, t)?;
        println!(
            "q={q} n={n} m={m} t={t}: |G_geom| = {}, |G_arith| = {}, constant field degree {}, scattered {}",
            k.geometric_order, k.arithmetic_order, k.constant_field_degree, k.scattered
        );
    }
    Ok(())
}
