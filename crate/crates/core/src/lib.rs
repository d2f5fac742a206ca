//! Distinguishing-set problems on interval graphs.
//!
//! The crate covers four related problems: metric dimension (MD),
//! location-domination (LD), identifying codes (ID) and open
//! location-domination (OLD). It provides
//!
//! * interval models with exact coordinates, their intersection graphs and
//!   order-preserving distance powers ([`interval_model`]),
//! * verification predicates and brute-force exact solvers ([`codes`]),
//! * leftmost/rightmost path machinery ([`structure`]) and the endpoint-sweep
//!   path decomposition ([`decomposition`]),
//! * a fixed-parameter dynamic program for metric dimension on interval
//!   graphs ([`fpt`]),
//! * hardness constructions from 3-dimensional matching together with the
//!   diameter-2 transformations ([`reductions`]),
//! * named fixture families ([`generators`]).
//!
//! Interval models are generic over their coordinate type (any exact,
//! totally ordered numeric type such as `i64` or a rational). The aliases
//! below fix the common choices.

pub mod codes;
pub mod decomposition;
pub mod error;
pub mod fpt;
pub mod generators;
pub mod graph;
pub mod interval_model;
pub mod reductions;
pub mod structure;

pub use codes::{ProblemKind, VertexSet};
pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph, INFINITY};
pub use interval_model::{Coordinate, Interval, IntervalModel};

/// Exact rational coordinate used by the text formats.
pub type Rational = num_rational::Ratio<i64>;

/// Interval model over rational coordinates.
pub type Model = IntervalModel<Rational>;

/// Interval model over integer coordinates.
pub type IntModel = IntervalModel<i64>;

/// Interval over rational coordinates.
pub type RationalInterval = Interval<Rational>;
