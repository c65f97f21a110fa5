//! Noncommutative generating series over words: shuffle and quasi-shuffle
//! algebras, Lyndon bases, Bell polynomials and diagram Hopf algebras,
//! multiple polylogarithms, polyzetas and the Drinfel'd associator.

pub mod acceptance;
pub mod bell;
pub mod cache;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod kz;
pub mod poly;
pub mod polylog;
pub mod real;
pub mod lyndon;
pub mod series;
pub mod shuffle;
pub mod word;

pub use coeff::{Coeff, Magnitude, Q};
pub use error::{Error, Result};
pub use poly::{Monomial, Poly, Symbol};
pub use real::{Complex, Real};
pub use series::NCSeries;
pub use word::{Alphabet, Word};
