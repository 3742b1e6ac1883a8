//! Exact p-adic arithmetic for the circle action on q-expansions, Eisenstein
//! measures and Kummer torsion.

pub mod action;
pub mod coeff;
pub mod context;
pub mod cyclotomic;
pub mod dual;
pub mod eisenstein;
pub mod error;
pub mod functions;
pub mod json;
pub mod kummer;
pub mod measures;
pub mod padic;
pub mod qseries;
pub mod rational;
pub mod verify;

pub use coeff::Coeff;
pub use context::{default_generator, PadicContext};
pub use cyclotomic::CyclotomicElem;
pub use dual::DualNumber;
pub use error::{Error, Result};
pub use functions::{mahler_coeffs, ContinuousFn, MahlerTail, TwoVarFn};
pub use padic::PadicInt;
pub use qseries::QExpansion;

/// Dual numbers over `Z/p^N`.
pub type Dual = DualNumber<PadicInt>;

/// q-expansions over `Z/p^N`.
pub type Series = QExpansion<PadicInt>;

/// q-expansions over cyclotomic coefficients.
pub type CycloSeries = QExpansion<CyclotomicElem>;

/// q-expansions over dual numbers.
pub type DualSeries = QExpansion<Dual>;
