//! Classify a few Hermitian pairs by the phase relation AB = ωBA.

use ghzcanon::matkit::{sigma_x, sigma_y, sigma_z, ComplexMatrix, HermitianOperator};
use ghzcanon::omega::{best_fit_omega, classify};

fn main() -> ghzcanon::error::Result<()> {
    let h = |m: ComplexMatrix| HermitianOperator::new(m);
    let cases = [
        ("σx, σy", h(sigma_x())?, h(sigma_y())?),
        ("σz, σz", h(sigma_z())?, h(sigma_z())?),
        ("diag(1,0), diag(0,1)", HermitianOperator::diag(&[1.0, 0.0]), HermitianOperator::diag(&[0.0, 1.0])),
        ("σx, [[1,1],[1,0]]", h(sigma_x())?, h(ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 0.0]])?)?),
    ];
    for (name, a, b) in &cases {
        let c = classify(a, b, 1e-9)?;
        let w = best_fit_omega(a, b)?;
        println!(
            "{name:<24} {:<12} |[A,B]| = {:.3}  |{{A,B}}| = {:.3}  best ω = {}",
            format!("{:?}", c.kind),
            c.residual_commute,
            c.residual_anticommute,
            w.map_or("-".into(), |w| format!("{:.3}{:+.3}i", w.re, w.im)),
        );
    }
    Ok(())
}
