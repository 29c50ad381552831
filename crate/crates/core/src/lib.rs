//! Exact-arithmetic engine for one-dimensional formal group laws over the
//! rationals.
//!
//! The crate builds truncated formal power series over Q or over graded
//! polynomial rings Q[generators], assembles formal group laws from their
//! exponentials or logarithms, and realizes the dictionary between
//! probability generating functions and formal groups: moment generating
//! functions, cumulant series, the Schneider-Teitelbaum modulus, Boltzmann
//! laws of finite energy spectra, Gibbs free-energy series, and the
//! universal group law with its Cartier character.
//!
//! Every value carries an explicit truncation order; all arithmetic is
//! exact through that order and nothing is ever rounded.

pub mod bivariate;
pub mod boltzmann;
pub mod cli;
pub mod error;
pub mod fgl;
pub mod json;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod prob;
pub mod series;
pub mod symfun;
pub mod universal;
pub mod verify;

pub use bivariate::BivariateSeries;
pub use error::{Error, Result};
pub use fgl::FormalGroupLaw;
pub use poly::{GeneratorTable, GradedPolynomial, Monomial};
pub use rational::Rational;
pub use ring::{PolyRing, Rationals, Ring};
pub use series::TruncatedSeries;
