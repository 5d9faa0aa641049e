pub mod dbracket;
pub mod error;
pub mod exactlin;
pub mod integrable;
pub mod ncalg;
pub mod polyvec;
pub mod repalg;
pub mod repn;
pub mod report;
pub mod text;

pub use error::{Error, Result};
