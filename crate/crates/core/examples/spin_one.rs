//! A = diag(1, -1, -1) with B coupling the first level to the other two.
//! The pair splits into one (σx, 5σy) block and a null direction.

use ghzcanon::canon::{canonicalize, verify};
use ghzcanon::matkit::{ComplexMatrix, HermitianOperator};

fn main() -> ghzcanon::error::Result<()> {
    let (b, c) = (3.0, 4.0);
    let a = HermitianOperator::diag(&[1.0, -1.0, -1.0]);
    let bm = HermitianOperator::new(ComplexMatrix::from_real_rows(&[&[0.0, b, c], &[b, 0.0, 0.0], &[c, 0.0, 0.0]])?)?;

    let cf = canonicalize(&a, &bm, 1e-9)?;
    for block in &cf.blocks {
        println!("{block:?}");
    }
    println!("expected pair strength sqrt(b² + c²) = {}", f64::hypot(b, c));
    println!("transform:\n{:?}", cf.transform.matrix());
    println!("{:?}", verify(&a, &bm, &cf, 1e-10));
    Ok(())
}
