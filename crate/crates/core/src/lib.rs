//! Mechanical reconstruction and verification toolkit for the non-abelian
//! quantum Painlevé II system
//!
//! ```text
//! f2'' = 2 f2^3 - 2 [z, f2]_+ + c,     z f2 - f2 z = (i ħ / 2) f2
//! ```
//!
//! * [`ncalg`]: exact noncommutative polynomials, rewriting and d/dz.
//! * [`laxderive`]: the Lax pair, its zero-curvature residual and the
//!   symbolic extraction of the system, the symmetric-form commutator and
//!   the Riccati equation.
//! * [`quasidet`]: quasideterminants over an abstract division carrier.
//! * [`darboux`]: numeric eigenfunctions, one-fold and N-fold Darboux dressing,
//!   quasideterminant solution forms and residual diagnostics.
//! * [`selftest`]: the acceptance criteria as runnable checks.

pub mod darboux;
pub mod exact;
pub mod laxderive;
pub mod ncalg;
pub mod quasidet;
pub mod report;
pub mod selftest;
