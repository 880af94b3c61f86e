//! Classifies transitive subgroups of GL_3(F_5): GL_3 itself, and ΓL_1(125)
//! conjugated by a random-looking matrix.

use scattered::groups::{classify_transitive, gl_generators, singer_gammal1, Classification, MatrixGroup};
use scattered::linalg::Mat;

fn main() -> scattered::Result<()> {
    let gl = MatrixGroup::new(3, 5, gl_generators(3, 5)?)?;
    report("GL_3(F_5)", &classify_transitive(&gl)?);

    let gamma = singer_gammal1(3, 5)?;
    let f = gamma.field().clone();
    let p = Mat::from_rows(vec![vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]]);
    let pi = p.inverse(&f).expect("P is invertible");
    let gens = gamma.generators().iter().map(|g| pi.mul(&f, g).mul(&f, &p)).collect();
    report("P^-1 ΓL_1(125) P", &classify_transitive(&MatrixGroup::new(3, 5, gens)?)?);
    Ok(())
}

fn report(name: &str, c: &Classification) {
    match c {
        Classification::ContainsSL { order } => println!("{name}: contains SL_3, order {order}"),
        Classification::SubGammaL1 { order, witness } => {
            println!("{name}: inside a conjugate of ΓL_1, order {order}, cyclic part with char poly {:?}", witness.char_poly)
        }
        Classification::Inconclusive { order, reason } => println!("{name}: inconclusive at order {order}: {reason}"),
    }
}
