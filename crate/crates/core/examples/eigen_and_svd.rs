//! Hermitian eigendecomposition and complex SVD on small random inputs.

use ghzcanon::matkit::{eig_hermitian, random_complex_matrix, random_hermitian, svd};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ghzcanon::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let h = random_hermitian(5, &mut rng);
    let eig = eig_hermitian(&h)?;
    println!("eigenvalues: {:.6?}", eig.eigenvalues);
    println!("|H V - V diag(λ)|_F = {:.2e}", eig.residual(h.matrix()));

    let m = random_complex_matrix(4, 3, &mut rng);
    let s = svd(&m)?;
    println!("singular values: {:.6?}", s.singular_values);
    println!("|U Σ V^H - M|_F = {:.2e}", (&s.reconstruct() - &m).frobenius_norm());
    Ok(())
}
