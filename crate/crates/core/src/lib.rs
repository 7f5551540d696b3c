//! Exact computations with `m`-primary ideals of polynomial rings localized at
//! the origin: Groebner bases, colon ideals, Ratliff-Rush closures, minimal
//! reductions with their reduction numbers, and Hilbert-Samuel coefficients.

pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod ops;
pub mod parse;
pub mod poly;
pub mod reduction;
pub mod ring;
pub mod rr;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use groebner::{buchberger, GBasis, GbConfig};
pub use ideal::{ideal_equal, ideal_member, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_generators, parse_polynomial};
pub use poly::Polynomial;
pub use ring::PolyRing;
