//! Lagerberg superforms with polynomial coefficients.

mod form;
mod poly;
pub mod random;
mod superform;

pub use form::{Form, Side};
pub use poly::Poly;
pub use superform::SuperForm;
