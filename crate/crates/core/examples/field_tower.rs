//! Builds the tower F_3 ⊆ F_9 ⊆ F_729, does arithmetic across layers and
//! round-trips the descriptor and an element through JSON.

use scattered::ff::{FieldCtx, FieldElement};

fn main() -> scattered::Result<()> {
    let ctx = FieldCtx::new(3, &[2, 3])?;
    for i in 0..=ctx.top() {
        println!("layer {i}: {} elements, modulus {:?}", ctx.cardinality(i), if i > 0 { ctx.modulus(i) } else { &[] });
    }

    let theta = ctx.theta(2);
    let inv = ctx.inv(theta)?.expect("θ is nonzero");
    println!("θ · θ^-1 = {:?}", ctx.mul(theta, inv)?);

    // a generator of F_9 lifted into F_729 keeps its order
    let g = FieldElement { layer: 1, code: 3 + 1 };
    let lifted = ctx.embed(g, 2)?;
    println!("(θ_1 + 1)^8 = {:?}", ctx.pow(lifted, 8)?);

    let descriptor = serde_json::to_string(&ctx.descriptor()).expect("descriptor serializes");
    println!("descriptor: {descriptor}");
    let back = FieldCtx::from_descriptor(&serde_json::from_str(&descriptor).expect("descriptor parses"))?;
    println!("descriptor round-trips: {}", *back == *ctx);
    println!("θ as JSON: {}, Frobenius image {:?}", ctx.element_to_json(theta), ctx.frobenius(theta, 1)?);
    Ok(())
}
