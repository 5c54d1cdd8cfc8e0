//! Densities of primes with a prescribed index of appearance in a Lucas
//! sequence.
//!
//! For a Lucas sequence `u_0 = 0, u_1 = 1, u_n = a1 u_{n-1} + a2 u_{n-2}` the
//! index of appearance of a prime `p` is `(p - (D|p)) / rho(p)`, where `rho`
//! is the rank of appearance and `D = a1^2 + 4 a2`. This crate computes the
//! density of primes whose index equals `t` as an exact rational multiple of
//! Artin's constant, checks it against a truncated Galois-theoretic series,
//! and tallies the same quantity empirically over the first primes.
//!
//! Layout, bottom-up:
//!
//! * [`numtheory`]: sieve, factorization, arithmetic functions.
//! * [`quadfield`]: exact arithmetic in `Q(sqrt(D))` and root extraction.
//! * [`lucas`]: sequence parameters, `u_n mod p`, rank and index.
//! * [`kummer`]: degrees of `K(zeta_n, gamma^(1/n))` and the periodic
//!   coefficient expansion of `#C_n / [K_n : Q]`.
//! * [`density`]: Wagstaff sums and the closed-form density.
//! * [`empirical`]: parallel prime scan and comparison tables.

pub mod density;
pub mod empirical;
pub mod error;
pub mod kummer;
pub mod lucas;
pub mod numtheory;
pub mod quadfield;
pub mod rational;

pub use density::{artin_constant, DensityProfile, DensityValue, SeriesValue};
pub use empirical::{compare, scan, CompareRow, EmpiricalTable};
pub use error::{Error, Result};
pub use kummer::{ChiDecomposition, ConditionCase, ConditionContext};
pub use lucas::LucasParams;
pub use numtheory::{build_spf, Factorization, SpfTable};
pub use quadfield::{GammaDecomposition, QElem, QField};
