//! Exact Wiener indices and higher distance moments of minuscule lattices.
//!
//! The crate builds the lattices (order ideals of rectangles, shifted
//! staircases, double-tailed diamonds, and weight orbits of minuscule
//! representations) and computes distance sums three independent ways:
//! breadth-first search on the Hasse diagram, lattice-path bijections onto
//! Motzkin words, and coefficient extraction from exact bivariate
//! generating functions. Closed formulas and Brownian limit constants are
//! checked against all three.
//!
//! ```
//! use wiener_core::formulas::{wiener, Family};
//! use wiener_core::series::{series, Route, SeriesName};
//!
//! assert_eq!(wiener(Family::Rect { m: 2, k: 2 })?.to_string(), "56");
//! let w = series(SeriesName::W, Route::FixedPoint, 10)?;
//! assert_eq!(w.coeff(4, 2).to_string(), "36");
//! # Ok::<(), wiener_core::Error>(())
//! ```

pub mod distance;
pub mod error;
pub mod formulas;
pub mod iso;
pub mod montecarlo;
pub mod paths;
pub mod poset;
pub mod real;
pub mod series;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
