//! Executable density Turán machinery for k-uniform hypergraphs.
//!
//! * [`hypergraph`], [`blowup`] and [`tree`]: patterns, their blow-ups,
//!   edge densities, transversals and the skeleton trees used by the search.
//! * [`dyck`] and [`growth`]: exact counts of partial m-Dyck paths with
//!   height and descent caps, their canonical completion to full paths, and
//!   the growth constants `alpha`, `beta`, `gamma`.
//! * [`search`]: the two transversal searches that double as stream
//!   compressors, their decoders, and the projection of a run record onto a
//!   Dyck path.
//! * [`bounds`] and [`matching`]: lower and upper bounds on the critical
//!   edge density.
//! * [`experiment`] and [`io`]: seeded random blow-ups, batch trials and
//!   the JSON file formats.
//! * [`poly`]: exact real root isolation for integer polynomials.

pub mod blowup;
pub mod bounds;
pub mod dyck;
pub mod error;
pub mod experiment;
pub mod growth;
pub mod hypergraph;
pub mod io;
pub mod matching;
pub mod poly;
pub mod search;
pub mod tree;

pub use error::{Error, Result};

/// Exact rational numbers used for densities and bounds.
pub type Rational = num_rational::BigRational;
