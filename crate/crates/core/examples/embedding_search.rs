//! Certifies that SL_2(F_13) has no copy inside GL_3(F_9), after checking
//! that the same search finds SL_2(F_13) inside GL_2(F_13).

use scattered::groups::{no_embedding_sl2_13_in_gl3_9, positive_control_gl2_13};

fn main() -> scattered::Result<()> {
    let control = positive_control_gl2_13()?;
    println!(
        "control GL_2(F_13): {} pairs, {} hits, verdict {:?}",
        control.pairs_searched,
        control.hits.len(),
        control.verdict
    );

    let cert = no_embedding_sl2_13_in_gl3_9(None)?;
    println!("order-13 class representatives: {}", cert.representatives);
    println!("B with B^2 = -I: {} ({} scalar)", cert.candidates, cert.scalar_candidates);
    println!(
        "pairs: {} searched, {} over 2184, {} below, {} of order 2184",
        cert.pairs_searched,
        cert.over_cap,
        cert.below_target,
        cert.hits.len()
    );
    println!("verdict: {:?} ({} ms)", cert.verdict, cert.elapsed_ms);
    Ok(())
}
