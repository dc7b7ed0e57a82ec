//! Acute sets from perturbed hypercubes.
//!
//! The vertices of the unit cube `{0,1}^(d-1)` sitting in the hyperplane
//! `x_d = 0` are moved one by one toward the cube centre and lifted
//! slightly; together with an apex above the centre they form
//! `2^(d-1) + 1` points in `R^d` any three of which span an acute triangle.
//! Every construction here is certified by brute force over all triples,
//! exactly when the rational backend is used.

pub mod bounds;
pub mod construct;
pub mod error;
pub mod geometry;
pub mod io;
pub mod scalar;
pub mod verify;

pub use construct::{ConstructionConfig, ConstructionTrace, Schedule};
pub use error::{Error, Result};
pub use geometry::{Point, PointSet, Tolerance, TripleWitness};
pub use scalar::{Backend, Float, Rational, Scalar};
