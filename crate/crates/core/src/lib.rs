//! Exact computations for the Lazard correspondence between finite
//! left-nilpotent post-Lie rings and skew braces of prime-power order.

pub mod algebra;
pub mod error;
pub mod freelie;
pub mod lazcorr;
pub mod liering;
pub mod modarith;
pub mod postlie;
pub mod skewbrace;
pub mod subset;

pub use error::{Error, Result};
