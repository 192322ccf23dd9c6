pub mod error;
pub mod fock;
pub mod ops;

pub use error::{Error, Result};
pub use fock::{fidelity, Register, SiteOperator, SiteSpace, SiteVector};
