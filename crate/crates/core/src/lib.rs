pub mod criteria;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod product_approx;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DimSignature, Spectrum};
