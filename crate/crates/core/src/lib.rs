//! Hermitian operator pairs with a phase relation `AB = ωBA`, their canonical
//! block form, and GHZ operator sets built from them.
//!
//! - [`matkit`]: dense complex matrices, Jacobi eigensolver and SVD, Haar
//!   random unitaries.
//! - [`omega`]: classify a pair as commuting, anticommuting, degenerate
//!   (`AB = 0`) or neither, and scan random pairs for other phases.
//! - [`canon`]: reduce an anticommuting pair to blocks `(a·σx, b·σy)` and
//!   scalars `(α, β)` with an explicit unitary.
//! - [`ghz`]: GHZ operators from local pairs, joint eigenvalues, exhaustive
//!   local-value search, and the block-tuple decomposition for higher spins.
//! - [`cli`]: JSON matrix files and the commands behind the `ghzcanon` binary.
//!
//! The `examples/` directory has one runnable program per capability, e.g.
//! `cargo run --example spin_one`.

pub mod canon;
pub mod cli;
pub mod error;
pub mod ghz;
pub mod matkit;
pub mod omega;
