//! Three spin-1 parties. After canonicalizing each local pair the GHZ
//! operators are block diagonal over block-tuples; the only tuple built from
//! pair blocks is a rescaled copy of the qubit problem and carries the same
//! contradiction, while every other tuple admits classical values.

use ghzcanon::ghz::{triviality_report, LocalPair, TupleKind};
use ghzcanon::matkit::{ComplexMatrix, HermitianOperator};

fn main() -> ghzcanon::error::Result<()> {
    let a = HermitianOperator::diag(&[1.0, -1.0, -1.0]);
    let b = HermitianOperator::new(ComplexMatrix::from_real_rows(&[&[0.0, 3.0, 4.0], &[3.0, 0.0, 0.0], &[4.0, 0.0, 0.0]])?)?;
    let r = triviality_report(&vec![LocalPair::new(a, b)?; 3], 1e-9)?;

    println!("{} dims, {} block-tuples", r.total_dim, r.tuples.len());
    println!("largest entry between tuples: {:.1e}", r.max_off_tuple);
    for t in &r.tuples {
        match &t.kind {
            TupleKind::GhzCopy { scales, lhv_satisfying, lhv_total, joint_eigenvalues, .. } => println!(
                "  {:?} dim {}: qubit copy, scales {scales:?}, eigenvalues {joint_eigenvalues:?}, {lhv_satisfying:?} of {lhv_total:?} assignments",
                t.blocks,
                t.dim()
            ),
            TupleKind::ClassicallyAssignable { singleton_parties } => {
                println!("  {:?} dim {}: singleton at parties {singleton_parties:?}", t.blocks, t.dim())
            }
        }
    }
    println!("trivial: {}", r.is_trivial());
    Ok(())
}
