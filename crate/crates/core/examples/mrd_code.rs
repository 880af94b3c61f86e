//! The rank-metric code ⟨x, ℓ(x)⟩ is MRD exactly when ℓ is scattered.

use scattered::ff::FieldCtx;
use scattered::linpoly::LinPoly;
use scattered::mrd::{build_code, min_rank_distance, RankCode};

fn main() -> scattered::Result<()> {
    for n in [2, 3, 4] {
        let l = LinPoly::monomial(FieldCtx::new(3, &[n])?, 1, 1, 1)?;
        let r = min_rank_distance(&build_code(&l)?)?;
        println!("x^3 over F_3^{n}: min rank {} of {}, MRD {}", r.min_rank, r.n, r.is_mrd);
    }
    let l = LinPoly::monomial(FieldCtx::new(3, &[4])?, 1, 2, 1)?;
    println!("x^9 over F_81 as a scattered code: {:?}", build_code(&l).err());
    let r = min_rank_distance(&RankCode::new(&l)?)?;
    println!("x^9 over F_81: min rank {} attained at {:?}, MRD {}", r.min_rank, r.witness, r.is_mrd);
    Ok(())
}
