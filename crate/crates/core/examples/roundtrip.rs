//! Hide canonical block structure behind a random unitary and recover it.

use ghzcanon::canon::{canonicalize, random_anticommuting_pair, random_spec, same_blocks, verify};

fn main() -> ghzcanon::error::Result<()> {
    let mut recovered = 0;
    for seed in 0..25 {
        let dim = 2 + seed as usize % 12;
        let spec = random_spec(dim, seed)?;
        let (a, b) = random_anticommuting_pair(&spec, seed + 100)?;
        let cf = canonicalize(&a, &b, 1e-9)?;
        let ok = same_blocks(&spec, &cf.specs(), 1e-9) && verify(&a, &b, &cf, 1e-10).passed;
        recovered += ok as usize;
        println!("seed {seed:>2} dim {dim:>2} blocks {:>2} recovered {ok}", spec.len());
    }
    println!("{recovered}/25 recovered");
    Ok(())
}
