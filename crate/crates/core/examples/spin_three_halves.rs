//! Two four-level pairs: a star coupling (one pair block, two null directions)
//! and an interleaved coupling whose cross block has two singular values.

use ghzcanon::canon::{canonicalize, verify};
use ghzcanon::matkit::{svd, ComplexMatrix, HermitianOperator};

fn show(name: &str, a: &HermitianOperator, b: &HermitianOperator) -> ghzcanon::error::Result<()> {
    let cf = canonicalize(a, b, 1e-9)?;
    println!("{name}");
    for block in &cf.blocks {
        println!("  {block:?}");
    }
    println!("  verify passed: {}", verify(a, b, &cf, 1e-10).passed);
    Ok(())
}

fn main() -> ghzcanon::error::Result<()> {
    let star = ComplexMatrix::from_real_rows(&[
        &[0.0, 2.0, 3.0, 6.0],
        &[2.0, 0.0, 0.0, 0.0],
        &[3.0, 0.0, 0.0, 0.0],
        &[6.0, 0.0, 0.0, 0.0],
    ])?;
    show("star, |(2,3,6)| = 7", &HermitianOperator::diag(&[1.0, -1.0, -1.0, -1.0]), &HermitianOperator::new(star)?)?;

    // rows/cols (0, 2) carry A = +1 and (1, 3) carry A = −1
    let (p, q, r, s) = (1.0, 0.5, -0.25, 2.0);
    let inter = ComplexMatrix::from_real_rows(&[
        &[0.0, p, 0.0, q],
        &[p, 0.0, r, 0.0],
        &[0.0, r, 0.0, s],
        &[q, 0.0, s, 0.0],
    ])?;
    let cross = ComplexMatrix::from_real_rows(&[&[p, q], &[r, s]])?;
    println!("cross-block singular values: {:.6?}", svd(&cross)?.singular_values);
    show("interleaved", &HermitianOperator::diag(&[1.0, -1.0, 1.0, -1.0]), &HermitianOperator::new(inter)?)
}
