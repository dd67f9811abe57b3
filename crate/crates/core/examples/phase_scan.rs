//! Search random Hermitian pairs for an exact phase relation with ω ≠ ±1.
//!
//! The scan mixes generic pairs with constructed commuting, anticommuting and
//! disjoint-support pairs, plus pairs built to aim at an off-axis ω. A
//! counterexample would be a pair with AB ≠ 0 fitting some ω ∉ {±1} exactly.

use ghzcanon::omega::phase_theorem_scan;

fn main() -> ghzcanon::error::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    for dim in 2..=4 {
        let r = phase_theorem_scan(dim, trials, 7 + dim as u64)?;
        println!(
            "dim {dim}: {} pairs  commute {}  anticommute {}  degenerate {}  none {}  off-axis tries {}  counterexamples {}",
            r.total, r.commuting, r.anticommuting, r.degenerate, r.none, r.off_axis_attempts, r.counterexamples
        );
    }
    Ok(())
}
