//! Sums of consecutive squares and arithmetic polygons.
//!
//! Solutions of `(a+1)^2 + ... + b^2 = (b+1)^2 + ... + c^2`, equivalently
//! `P_a + P_c = 2 P_b` over square pyramidal numbers, with `0 < a+1 < b < c`.
//!
//! * [`socs`]: pyramidal numbers, verified triples, the parameterized family.
//! * [`search`]: every solution with a given span `c - a`.
//! * [`pell`]: continued fractions, Pell units, coplanar solution families.
//! * [`geometry`]: polygon constructions and validation.
//! * [`census`]: the convex arithmetic polygons.

pub mod census;
pub mod error;
pub mod geometry;
pub mod pell;
pub mod search;
pub mod socs;

pub use error::{Error, Result, TripleCheck};
pub use socs::{GapPair, SolutionTriple};
