//! Exact computations with free Lie algebras, tangential derivations,
//! associators and solutions of the KV equations, truncated by degree.

pub mod assocalg;
pub mod error;
pub mod exactlin;
pub mod freelie;
pub mod kvgrt;
pub mod taut;
pub mod tder;
pub mod words;

pub use assocalg::{AssocSeries, CyclicSeries};
pub use error::{Error, Result};
pub use exactlin::{Rational, RationalMatrix};
pub use freelie::{LieCarrier, LieSeries};
pub use taut::TautLog;
pub use tder::{Pattern, TangentialDerivation};
