//! Which arithmetic polygons are convex.
//!
//! A convex arithmetic polygon has at most 126 sides, and each solution has
//! at most one candidate up to reflection: the polygon whose every free turn
//! bends inward. Building and checking that candidate for every solution in
//! range settles the question.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{construct_generic, convexity_side_cap, inward_turns, validate, PolygonPath};
use crate::search::enumerate_up_to;
use crate::socs::{classify_parameterized, SolutionTriple};

#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    pub triple: SolutionTriple,
    pub parameterized_k: Option<BigInt>,
    pub candidate_built: bool,
    pub convex: bool,
    pub mu: usize,
    pub self_intersecting: bool,
}

/// Every solution with `c - a <= 126`.
pub fn convex_candidates() -> Vec<SolutionTriple> {
    candidates_with_at_most(0)
}

/// Every solution whose polygons could have at most `nu` reflex angles.
pub fn candidates_with_at_most(nu: u64) -> Vec<SolutionTriple> {
    enumerate_up_to(&BigInt::from(convexity_side_cap(nu)))
}

pub fn inward_turning_polygon(t: &SolutionTriple) -> Result<PolygonPath> {
    construct_generic(t, &inward_turns(t)?)
}

pub fn census_row(t: &SolutionTriple) -> CensusRow {
    let parameterized_k = classify_parameterized(t);
    match inward_turning_polygon(t) {
        Ok(path) => {
            let r = validate(&path, t);
            CensusRow {
                triple: t.clone(),
                parameterized_k,
                candidate_built: true,
                convex: r.convex && r.degenerate_vertices.is_empty(),
                mu: r.mu,
                self_intersecting: r.self_intersecting,
            }
        }
        Err(_) => CensusRow {
            triple: t.clone(),
            parameterized_k,
            candidate_built: false,
            convex: false,
            mu: 0,
            self_intersecting: false,
        },
    }
}

/// One row per convex candidate, ordered by `(c - a, a)`.
pub fn run_census() -> Vec<CensusRow> {
    run_census_over(&convex_candidates())
}

pub fn run_census_over(candidates: &[SolutionTriple]) -> Vec<CensusRow> {
    let mut rows: Vec<CensusRow> = candidates.par_iter().map(census_row).collect();
    rows.sort_by(|x, y| x.triple.cmp(&y.triple));
    rows
}
