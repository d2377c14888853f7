use std::f64::consts::PI;

use robust::{orient2d, Coord};

use super::point::Point2;
use super::{Dims, PolygonPath};
use crate::socs::SolutionTriple;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative error allowed on side lengths and closure.
    pub length: f64,
    /// Allowed normalized dot product between a side and its diagonal.
    pub perpendicular: f64,
    /// Angles within this many radians of 0 or pi are degenerate.
    pub angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            length: 1e-9,
            perpendicular: 1e-9,
            angle: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonReport {
    /// Largest `| |side| - target | / target`.
    pub max_side_residual: f64,
    /// Largest normalized `|(V - O) . side|` over the better endpoint `V`.
    pub max_perp_residual: f64,
    /// Largest relative gap between a float `|v - O|^2` and its exact value.
    pub max_diagonal_residual: f64,
    /// Relative error of the final side back to `O`.
    pub closure_residual: f64,
    pub degenerate_vertices: Vec<usize>,
    pub self_intersecting: bool,
    /// Number of interior angles above pi.
    pub mu: usize,
    pub convex: bool,
}

impl PolygonReport {
    /// The polygon satisfies the arithmetic-polygon properties: side lengths,
    /// perpendicular diagonals through `O`, and no degenerate vertex.
    pub fn is_arithmetic(&self, tol: &Tolerances) -> bool {
        self.max_side_residual < tol.length
            && self.closure_residual < tol.length
            && self.max_perp_residual < tol.perpendicular
            && self.degenerate_vertices.is_empty()
    }
}

fn coord(p: Point2) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    orient2d(coord(a), coord(b), coord(c))
}

/// Checks `path` against the sides `a+1 ..= c` of `t`.
pub fn validate(path: &PolygonPath, t: &SolutionTriple) -> PolygonReport {
    validate_with(path, t, &Tolerances::default())
}

pub fn validate_with(path: &PolygonPath, t: &SolutionTriple, tol: &Tolerances) -> PolygonReport {
    let v = &path.vertices;
    let n = v.len();
    let dims = Dims::of(t).ok();
    let shape_ok =
        n >= 3 && v.iter().all(|p| p.is_finite()) && dims.is_some_and(|d| d.sides() == n);

    let (mut side_res, mut perp_res, mut diag_res, mut closure) = (0.0f64, 0.0f64, 0.0f64, 0.0);
    if let (true, Some(d)) = (shape_ok, dims) {
        let o = v[0];
        for i in 0..n {
            let (s, e) = (v[i], v[(i + 1) % n]);
            let target = (d.a + 1 + i as u64) as f64;
            let res = ((e - s).norm() - target).abs() / target;
            side_res = side_res.max(res);
            if i == n - 1 {
                closure = res;
            }
            if i != 0 && i != n - 1 {
                let dir = e - s;
                let at = |p: Point2| {
                    let r = p - o;
                    r.dot(dir).abs() / (r.norm() * dir.norm())
                };
                perp_res = perp_res.max(at(s).min(at(e)));
            }
        }
        for (p, exact) in v.iter().zip(d.squared_diagonals()).skip(1) {
            let exact = exact as f64;
            diag_res = diag_res.max(((*p - o).norm_sq() - exact).abs() / exact);
        }
    } else {
        side_res = f64::INFINITY;
        perp_res = f64::INFINITY;
        diag_res = f64::INFINITY;
        closure = f64::INFINITY;
    }

    let mut degenerate = Vec::new();
    for i in 0..n {
        let (prev, cur, next) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
        let angle = (prev - cur).angle_to(next - cur);
        if !(angle >= tol.angle && PI - angle >= tol.angle) {
            degenerate.push(i);
        }
    }

    let self_intersecting = self_intersects(v);
    let mu = reflex_count(v);
    PolygonReport {
        max_side_residual: side_res,
        max_perp_residual: perp_res,
        max_diagonal_residual: diag_res,
        closure_residual: closure,
        degenerate_vertices: degenerate,
        self_intersecting,
        mu,
        convex: mu == 0 && !self_intersecting,
    }
}

/// Twice the signed area (positive for counter-clockwise).
pub(crate) fn signed_area2(v: &[Point2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum()
}

/// Interior angles above pi, judged by turn direction against the overall
/// orientation.
pub(crate) fn reflex_count(v: &[Point2]) -> usize {
    let n = v.len();
    let orientation = signed_area2(v).signum();
    (0..n)
        .filter(|&i| {
            let turn = orient(v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            turn * orientation < 0.0
        })
        .count()
}

fn on_segment(p: Point2, q: Point2, r: Point2) -> bool {
    // r collinear with p q; is it within the bounding box?
    r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
}

/// Closed segments `p1 p2` and `q1 q2` share at least one point.
pub(crate) fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Any two sides meet other than adjacent sides at their shared vertex.
pub(crate) fn self_intersects(v: &[Point2]) -> bool {
    let n = v.len();
    let side = |i: usize| (v[i], v[(i + 1) % n]);
    let boxes: Vec<[f64; 4]> = (0..n)
        .map(|i| {
            let (s, e) = side(i);
            [s.x.min(e.x), s.x.max(e.x), s.y.min(e.y), s.y.max(e.y)]
        })
        .collect();
    for i in 0..n {
        let (p1, p2) = side(i);
        for j in i + 1..n {
            let (q1, q2) = side(j);
            let adjacent_fwd = j == i + 1;
            let adjacent_wrap = i == 0 && j == n - 1;
            if adjacent_fwd || adjacent_wrap {
                // Shared vertex is expected; folding back along the same line is not.
                let (shared, own, other) = if adjacent_fwd {
                    (p2, p1, q2)
                } else {
                    (p1, p2, q1)
                };
                if orient(own, shared, other) == 0.0 && (own - shared).dot(other - shared) > 0.0 {
                    return true;
                }
                continue;
            }
            let (a, b) = (&boxes[i], &boxes[j]);
            if a[1] < b[0] || b[1] < a[0] || a[3] < b[2] || b[3] < a[2] {
                continue;
            }
            if segments_intersect(p1, p2, q1, q2) {
                return true;
            }
        }
    }
    false
}
