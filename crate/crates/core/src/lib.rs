//! Exact symbolic analysis of Fuchsian linear ODEs over Q(x).

pub mod error;
pub mod exactalg;
pub mod genus;
pub mod odeanalysis;

pub use error::{Error, Result};
pub mod sympow;
pub mod transform;
