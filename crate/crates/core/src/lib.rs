//! Exact-arithmetic construction of p-adic L-functions by the Eisenstein-measure
//! method.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! rational  -> Bernoulli numbers/polynomials, divisor sums       (exact Q)
//! dirichlet -> characters, cyclotomic values, classical L-values (exact Q(zeta))
//! padic     -> capped-precision Z_p, Teichmuller, log/exp        (Z_p mod p^N)
//! iwasawa   -> Lambda = Z_p[[T]] truncated, Weierstrass, Kummer  (Lambda mod (p^N, T^M))
//! measures  -> distributions on profinite systems, E_c           (exact Q -> Z_p)
//! lfunctions-> Kubota-Leopoldt by interpolation and by measure   (dual route)
//! eisenstein-> q-expansions, Serre's Lambda-valued family        (Lambda-valued)
//! ```
//!
//! Everything downstream of `rational` carries explicit precision: a value is
//! always "known mod p^N" and operations never inflate precision silently.
//! There is no floating point anywhere in the crate.

pub mod dirichlet;
pub mod eisenstein;
pub mod error;
pub mod iwasawa;
pub mod lfunctions;
pub mod measures;
pub mod padic;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
