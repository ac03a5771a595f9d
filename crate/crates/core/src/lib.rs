//! Momentum-profile engine for circle-invariant Kähler metrics on line and
//! vector bundles.
//!
//! The algebra is exact by default ([`Rational`]); every routine is generic
//! over [`Scalar`] so a tolerance-based float mode ([`Approx`]) is available.

pub mod coords;
pub mod csc;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod horizontal;
pub mod io;
pub mod poly;
pub mod profile;
pub mod rational;
pub mod roots;
pub mod scalar;
pub mod vector_bundle;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::RationalFn;
pub use roots::{Extended, Interval, IsolatedRoot};
pub use scalar::{Approx, Rational, Scalar};
