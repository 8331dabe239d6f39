//! Exact analysis of 2×2 games and their EWL quantum extensions.

pub mod error;
pub mod ewl;
pub mod extensions;
pub mod format;
pub mod game;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod report;
pub mod solver;
pub mod sweep;

pub use error::{Error, ErrorCode, Result};
pub use extensions::{extend, ClassParam, ExtensionClass};
pub use game::{Bimatrix, PayoffPair, Payoffs};
pub use poly::PayoffPoly;
pub use quad::QuadAlgebraic;
pub use rational::Rational;
