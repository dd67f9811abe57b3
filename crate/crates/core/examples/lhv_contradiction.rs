//! Enumerate every ±1 assignment to X_i, Y_i and count those that reproduce
//! the quantum values, and the values with the last sign flipped.

use ghzcanon::ghz::{build_ghz_set, lhv_search, LocalPair};

fn main() -> ghzcanon::error::Result<()> {
    let gs = build_ghz_set(&vec![LocalPair::pauli(); 3], 1e-9)?;
    for targets in [[1.0, 1.0, 1.0, -1.0], [1.0, 1.0, 1.0, 1.0]] {
        let r = lhv_search(&gs, &targets, 1e-9)?;
        println!("targets {targets:?}: {} of {} assignments", r.satisfying.len(), r.total_assignments);
        for s in r.satisfying.iter().take(3) {
            println!("  e.g. {:+.3?}", s.values);
        }
    }
    Ok(())
}
