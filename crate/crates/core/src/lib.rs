pub mod ellcurve;
pub mod error;
pub mod ffield;
pub mod mellin;
pub mod report;
pub mod pairing;
pub mod specfun;
pub mod surd;
pub mod zerofind;

pub use error::{Error, Result};
pub use specfun::Complex;
