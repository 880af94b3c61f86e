//! Witnesses that exclude each overgroup case inside GL_d(F_{p^a}), with
//! an independent re-validation of each.

use scattered::groups::proposition_obstructions;

fn main() -> scattered::Result<()> {
    for (p, a, d) in [(3, 2, 3), (5, 3, 3), (3, 1, 5)] {
        println!("p = {p}, a = {a}, d = {d}:");
        for r in proposition_obstructions(p, a, d)? {
            println!(
                "  {:?} {}: {:?}, witness {}, revalidates {}",
                r.case,
                r.subgroup,
                r.verdict,
                serde_json::to_string(&r.witness).expect("witnesses serialize"),
                r.revalidate()
            );
        }
    }
    Ok(())
}
