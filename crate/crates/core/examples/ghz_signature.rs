//! The three-qubit GHZ operators: mutual commutation, the product identity,
//! and their joint eigenvalues on (|000⟩ − |111⟩)/√2.

use ghzcanon::ghz::{build_ghz_set, check_mutual_commutation, ghz_state, joint_eigenvalues, LocalPair};
use ghzcanon::matkit::HermitianOperator;

fn main() -> ghzcanon::error::Result<()> {
    let gs = build_ghz_set(&vec![LocalPair::pauli(); 3], 1e-9)?;
    let comm = check_mutual_commutation(&gs, 1e-9);
    println!("mutually commuting: {} (max |[O_i, O_j]| = {:.1e})", comm.passed, comm.max_norm);
    println!("O1 O2 O3 = {:?} · XXX", gs.product_sign);

    let ops: Vec<_> = gs.constrained_observables().into_iter().map(HermitianOperator::matrix).collect();
    let values = joint_eigenvalues(&ops, &ghz_state(3)?, 1e-12)?;
    println!("eigenvalues of (XYY, YXY, YYX, XXX): {values:.12?}");
    Ok(())
}
