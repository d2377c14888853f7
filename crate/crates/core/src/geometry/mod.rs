//! Arithmetic polygons: construction from a solution triple and validation.
//!
//! Vertices are listed starting at the distinguished vertex `O`; side `i`
//! joins vertex `i` to vertex `i + 1` (wrapping to `O`) and has target length
//! `a + 1 + i`. Coordinates are `f64`. Every vertex's squared distance to `O`
//! is also an exact integer (a prefix or suffix sum of squared side lengths),
//! which the validator uses as an anchor.

mod bounds;
mod chainsaw;
mod construct;
mod point;
mod validate;

pub use bounds::{convexity_side_cap, mu_lower_bound};
pub use chainsaw::{chainsaw_with_trace, construct_chainsaw, tangent_step, ChainsawTrace};
pub use construct::{construct_generic, inward_turns, TurnSequence};
pub use point::{Point2, Rotation};
pub use validate::{validate, validate_with, PolygonReport, Tolerances};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::socs::SolutionTriple;

/// Largest component accepted by the floating-point constructions.
const MAX_COMPONENT: u64 = 1 << 32;

/// A closed planar polygon with `O` at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonPath {
    pub vertices: Vec<Point2>,
    /// Intended length of each side, `a + 1, a + 2, ..., c`.
    pub side_targets: Vec<u64>,
    /// Exact `|v_i - O|^2` for each vertex.
    pub squared_diagonals: Vec<u128>,
}

impl PolygonPath {
    pub(crate) fn new(dims: &Dims, vertices: Vec<Point2>) -> Self {
        PolygonPath {
            vertices,
            side_targets: (dims.a + 1..=dims.c).collect(),
            squared_diagonals: dims.squared_diagonals(),
        }
    }

    pub fn origin(&self) -> Point2 {
        self.vertices[0]
    }

    pub fn side_count(&self) -> usize {
        self.vertices.len()
    }

    /// Sides as `(start, end)` pairs in traversal order.
    pub fn sides(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// Triple components as machine integers.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dims {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl Dims {
    pub fn of(t: &SolutionTriple) -> Result<Self> {
        let conv = |v: &num_bigint::BigInt| {
            v.to_u64()
                .filter(|&x| x <= MAX_COMPONENT)
                .ok_or_else(|| Error::TooLarge(v.to_string()))
        };
        Ok(Dims {
            a: conv(t.a())?,
            b: conv(t.b())?,
            c: conv(t.c())?,
        })
    }

    pub fn sides(&self) -> usize {
        (self.c - self.a) as usize
    }

    /// `|v_i - O|^2` for every vertex: sides `a+1 ..= a+i` before the seam
    /// at `b`, sides `a+i+1 ..= c` after it.
    pub fn squared_diagonals(&self) -> Vec<u128> {
        let n = self.sides();
        let sq = |s: u64| (s as u128) * (s as u128);
        let mut out = vec![0u128; n];
        let seam = (self.b - self.a) as usize;
        let mut acc = 0u128;
        for (i, slot) in out.iter_mut().enumerate().take(seam + 1).skip(1) {
            acc += sq(self.a + i as u64);
            *slot = acc;
        }
        acc = 0;
        for i in (seam + 1..n).rev() {
            acc += sq(self.a + i as u64 + 1);
            out[i] = acc;
        }
        out
    }
}
