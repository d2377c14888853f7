//! The chainsaw construction: a non-self-intersecting arithmetic polygon for
//! any solution.
//!
//! `O` sits at the origin and the seam vertex `P` at `(D, 0)`. The first arm
//! walks from `P` toward `O` across concentric circles of radius
//! `sqrt((a+1)^2 + ... + (a+j)^2)`, each step tangent to the next circle in,
//! staying strictly below the x-axis. The second arm does the same above the
//! axis on circles of radius `sqrt(c^2 + ... + (c-j)^2)`. The circles keep the
//! sides of one arm apart and the axis keeps the arms apart.

use std::f64::consts::PI;

use super::point::{Point2, Rotation};
use super::{Dims, PolygonPath};
use crate::error::{Error, Result};
use crate::socs::SolutionTriple;

const DEGENERATE_ANGLE: f64 = 1e-6;
/// A vertex counts as strictly off the axis when `|y|` exceeds this fraction
/// of its radius.
const AXIS_CLEARANCE: f64 = 1e-9;
/// Below this span the final choice near `O` is found by exhaustive search.
const SEARCH_SPAN_LIMIT: u64 = 14;

/// The point `X` on the circle of radius `r_in` about `O` such that `q X` is
/// tangent to that circle, on the side of `q` given by `sense`.
pub fn tangent_step(q: Point2, r_in: f64, sense: Rotation) -> Result<Point2> {
    let dist = q.norm();
    // written to reject NaN as well
    if r_in.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        || dist.partial_cmp(&r_in) != Some(std::cmp::Ordering::Greater)
    {
        return Err(Error::InsideCircle {
            distance: dist,
            radius: r_in,
        });
    }
    let alpha = (r_in / dist).acos();
    let signed = match sense {
        Rotation::CounterClockwise => alpha,
        Rotation::Clockwise => -alpha,
    };
    Ok((q * (r_in / dist)).rotate(signed))
}

/// Bookkeeping from one chainsaw build.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChainsawTrace {
    /// `(j, angle)` for the upper-arm step from the vertex on circle `j` to
    /// the vertex on circle `j - 1`, in construction order.
    pub upper_steps: Vec<(usize, f64)>,
    /// The last approach to `O` was steered through the sector `|x| < y`.
    pub steered: bool,
    /// The greedy choice was degenerate at `O` and a search was needed.
    pub backtracked: bool,
}

impl ChainsawTrace {
    /// Angular step leaving the upper vertex on circle `j`.
    pub fn step_from(&self, j: usize) -> Option<f64> {
        self.upper_steps.iter().find(|s| s.0 == j).map(|s| s.1)
    }
}

pub fn construct_chainsaw(t: &SolutionTriple) -> Result<PolygonPath> {
    chainsaw_with_trace(t).map(|(path, _)| path)
}

pub fn chainsaw_with_trace(t: &SolutionTriple) -> Result<(PolygonPath, ChainsawTrace)> {
    let dims = Dims::of(t)?;
    let (a, b, c) = (dims.a, dims.b, dims.c);

    // Radii: lower[j] for j = 0..=b-a, upper[j] for j = 0..c-b.
    let mut lower = vec![0u128];
    for s in a + 1..=b {
        lower.push(lower.last().unwrap() + sq(s));
    }
    let mut upper = vec![sq(c)];
    for s in (b + 1..c).rev() {
        upper.push(upper.last().unwrap() + sq(s));
    }
    debug_assert_eq!(lower.last(), upper.last());
    let radius = |v: u128| (v as f64).sqrt();

    let p = Point2::new(radius(lower[(b - a) as usize]), 0.0);

    let mut arm = Vec::new();
    let mut cur = p;
    for j in (1..(b - a) as usize).rev() {
        let r = radius(lower[j]);
        let next = [Rotation::Clockwise, Rotation::CounterClockwise]
            .into_iter()
            .map(|s| tangent_step(cur, r, s))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|x| x.y < -AXIS_CLEARANCE * r)
            .max_by(|x, y| x.y.total_cmp(&y.y))
            .ok_or_else(|| Error::Construction(format!("{t}: no lower vertex below the axis")))?;
        arm.push(next);
        cur = next;
    }
    let first_lower = arm.last().copied().unwrap_or(p);

    let radii: Vec<f64> = upper.iter().map(|&v| radius(v)).collect();
    let mut upper_arm = UpperArm {
        radii: &radii,
        steer: c - a > SEARCH_SPAN_LIMIT,
        first_lower,
        steered: false,
    };
    let start_j = (c - b - 1) as usize;
    let (upper_vertices, backtracked) = if start_j == 0 {
        (Vec::new(), false)
    } else if c - a > SEARCH_SPAN_LIMIT {
        let v = upper_arm
            .greedy(p, start_j)
            .ok_or_else(|| Error::Construction(format!("{t}: upper arm ends degenerate at O")))?;
        (v, false)
    } else {
        let greedy = upper_arm.greedy(p, start_j);
        match greedy {
            Some(v) => (v, false),
            None => {
                let v = upper_arm.search(p, start_j).ok_or_else(|| {
                    Error::Construction(format!("{t}: every upper arm is degenerate at O"))
                })?;
                (v, true)
            }
        }
    };
    if start_j == 0 && degenerate_pair(first_lower, p) {
        return Err(Error::Construction(format!("{t}: degenerate at O")));
    }

    let mut trace = ChainsawTrace {
        upper_steps: Vec::new(),
        steered: upper_arm.steered,
        backtracked,
    };
    let mut prev = p;
    for (i, &v) in upper_vertices.iter().enumerate() {
        trace.upper_steps.push((start_j - i, prev.angle_to(v)));
        prev = v;
    }

    let mut vertices = Vec::with_capacity(dims.sides());
    vertices.push(Point2::ORIGIN);
    vertices.extend(arm.iter().rev());
    vertices.push(p);
    vertices.extend(upper_vertices);
    Ok((PolygonPath::new(&dims, vertices), trace))
}

fn sq(s: u64) -> u128 {
    (s as u128) * (s as u128)
}

fn in_sector(p: Point2) -> bool {
    p.x.abs() < p.y
}

/// Angle at `O` between the first lower vertex and the last upper vertex is
/// 0 or pi.
fn degenerate_pair(first_lower: Point2, last_upper: Point2) -> bool {
    let angle = first_lower.angle_to(last_upper);
    angle < DEGENERATE_ANGLE || PI - angle < DEGENERATE_ANGLE
}

struct UpperArm<'a> {
    radii: &'a [f64],
    steer: bool,
    first_lower: Point2,
    steered: bool,
}

impl UpperArm<'_> {
    /// Candidates for the step from `cur` (on circle `j`) onto circle `j - 1`
    /// that lie strictly above the axis, most preferred first.
    fn candidates(&mut self, cur: Point2, j: usize) -> Vec<Point2> {
        let r = self.radii[j - 1];
        let step = |s| tangent_step(cur, r, s).expect("upper circles are nested");
        let ccw = step(Rotation::CounterClockwise);
        let cw = step(Rotation::Clockwise);
        let mut out: Vec<Point2> = [ccw, cw]
            .into_iter()
            .filter(|x| x.y > AXIS_CLEARANCE * r)
            .collect();
        // nearest the axis first
        out.sort_by(|x, y| x.y.total_cmp(&y.y));

        // Steps onto circles 2 and 1 steer into the sector |x| < y so both
        // final candidates stay above the axis.
        let target = j - 1;
        if self.steer && (target == 2 || target == 1) {
            self.steered = true;
            if in_sector(cur) {
                out.sort_by_key(|x| !in_sector(*x));
            } else {
                let toward = if cur.x > 0.0 { ccw } else { cw };
                out.sort_by_key(|x| *x != toward);
            }
        }
        out
    }

    fn greedy(&mut self, start: Point2, start_j: usize) -> Option<Vec<Point2>> {
        let mut out = Vec::with_capacity(start_j);
        let mut cur = start;
        for j in (2..=start_j).rev() {
            cur = *self.candidates(cur, j).first()?;
            out.push(cur);
        }
        let last = self
            .candidates(cur, 1)
            .into_iter()
            .find(|&x| !degenerate_pair(self.first_lower, x))?;
        out.push(last);
        Some(out)
    }

    /// Depth-first over all above-axis choices in preference order.
    fn search(&mut self, start: Point2, start_j: usize) -> Option<Vec<Point2>> {
        let mut path = Vec::with_capacity(start_j);
        self.search_from(start, start_j, &mut path).then_some(path)
    }

    fn search_from(&mut self, cur: Point2, j: usize, path: &mut Vec<Point2>) -> bool {
        for next in self.candidates(cur, j) {
            path.push(next);
            let done = if j == 1 {
                !degenerate_pair(self.first_lower, next)
            } else {
                self.search_from(next, j - 1, path)
            };
            if done {
                return true;
            }
            path.pop();
        }
        false
    }
}
