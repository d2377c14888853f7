use std::fmt;
use std::str::FromStr;

use super::point::{Point2, Rotation};
use super::{Dims, PolygonPath};
use crate::error::{Error, Result};
use crate::socs::SolutionTriple;

/// Angular tolerance (radians) for a degenerate angle at `O`.
const DEGENERATE_ANGLE: f64 = 1e-6;

/// One bit per free side: sides `a+2 ..= b` of the first arm, then sides
/// `c-1, c-2, ..., b+1` of the second. `false` places the new vertex
/// clockwise about `O`, `true` counter-clockwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TurnSequence(pub Vec<bool>);

impl TurnSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn sense(&self, i: usize) -> Rotation {
        if self.0[i] {
            Rotation::CounterClockwise
        } else {
            Rotation::Clockwise
        }
    }
}

impl fmt::Display for TurnSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.0 {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for TurnSequence {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("turn bits must be 0 or 1, found {other:?}")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(TurnSequence)
    }
}

/// The turn sequence whose every free choice bends toward the interior.
///
/// With side `a+2` turning counter-clockwise, the first arm keeps winding
/// counter-clockwise about `O`. The second arm is traversed backwards in the
/// finished polygon, so building it clockwise keeps the same winding.
pub fn inward_turns(t: &SolutionTriple) -> Result<TurnSequence> {
    let d = Dims::of(t)?;
    let first = (d.b - d.a - 1) as usize;
    let second = (d.c - d.b - 1) as usize;
    let mut bits = vec![true; first];
    bits.extend(std::iter::repeat_n(false, second));
    Ok(TurnSequence(bits))
}

/// Builds arm 1 from `O` eastward and arm 2 from `O` westward, each side
/// perpendicular to the current diagonal, then rotates arm 2 about `O` so the
/// arm ends coincide.
///
/// When the angle at `O` comes out as 0 or pi, the choice for side `b` is
/// flipped and the polygon rebuilt.
pub fn construct_generic(t: &SolutionTriple, turns: &TurnSequence) -> Result<PolygonPath> {
    let dims = Dims::of(t)?;
    let expected = dims.sides() - 2;
    if turns.len() != expected {
        return Err(Error::TurnCount {
            expected,
            got: turns.len(),
        });
    }
    let vertices = build_two_arms(&dims, turns);
    if !degenerate_at_origin(&vertices) {
        return Ok(PolygonPath::new(&dims, vertices));
    }
    let mut flipped = turns.clone();
    let side_b = (dims.b - dims.a - 2) as usize;
    flipped.0[side_b] = !flipped.0[side_b];
    let vertices = build_two_arms(&dims, &flipped);
    if degenerate_at_origin(&vertices) {
        return Err(Error::Construction(format!(
            "{t}: angle at O stays degenerate after flipping side b"
        )));
    }
    Ok(PolygonPath::new(&dims, vertices))
}

fn degenerate_at_origin(vertices: &[Point2]) -> bool {
    let o = vertices[0];
    let first = vertices[1] - o;
    let last = vertices[vertices.len() - 1] - o;
    let angle = first.angle_to(last);
    angle < DEGENERATE_ANGLE || std::f64::consts::PI - angle < DEGENERATE_ANGLE
}

/// Grows an arm from `start`: each new side is perpendicular to the diagonal
/// from `O` to the current tip.
fn grow_arm(start: Point2, lengths: impl Iterator<Item = u64>, senses: &[Rotation]) -> Vec<Point2> {
    let mut arm = vec![start];
    let mut tip = start;
    for (len, &sense) in lengths.zip(senses) {
        let dir = tip.perp(sense) * (1.0 / tip.norm());
        tip = tip + dir * len as f64;
        arm.push(tip);
    }
    arm
}

fn build_two_arms(d: &Dims, turns: &TurnSequence) -> Vec<Point2> {
    let senses: Vec<Rotation> = (0..turns.len()).map(|i| turns.sense(i)).collect();
    let split = (d.b - d.a - 1) as usize;

    let first = grow_arm(
        Point2::new((d.a + 1) as f64, 0.0),
        d.a + 2..=d.b,
        &senses[..split],
    );
    let second = grow_arm(
        Point2::new(-(d.c as f64), 0.0),
        (d.b + 1..d.c).rev(),
        &senses[split..],
    );

    let end1 = *first.last().expect("arm has a start");
    let end2 = *second.last().expect("arm has a start");
    let scale = 1.0 / (end1.norm() * end2.norm());
    let (cos, sin) = (end2.dot(end1) * scale, end2.cross(end1) * scale);

    let mut vertices = Vec::with_capacity(d.sides());
    vertices.push(Point2::ORIGIN);
    vertices.extend(first);
    vertices.extend(
        second[..second.len() - 1]
            .iter()
            .rev()
            .map(|p| p.rotate_by(cos, sin)),
    );
    vertices
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::validate::{validate, Tolerances};

    fn triple(a: i64, b: i64, c: i64) -> SolutionTriple {
        SolutionTriple::from_i64(a, b, c).unwrap()
    }

    #[test]
    fn triangle_3_4_5() {
        let t = triple(2, 4, 5);
        for bits in ["0", "1"] {
            let path = construct_generic(&t, &bits.parse().unwrap()).unwrap();
            assert_eq!(path.vertices.len(), 3);
            let r = validate(&path, &t);
            assert!(r.is_arithmetic(&Tolerances::default()), "{r:?}");
            assert!(r.closure_residual < 1e-9);
            assert!(r.convex);
            assert_eq!(r.mu, 0);
        }
    }

    #[test]
    fn pentagon_9_12_14() {
        let t = triple(9, 12, 14);
        let turns = inward_turns(&t).unwrap();
        assert_eq!(turns.to_string(), "110");
        let path = construct_generic(&t, &turns).unwrap();
        assert_eq!(path.side_targets, vec![10, 11, 12, 13, 14]);
        assert_eq!(path.squared_diagonals[3], 365);
        assert_eq!(path.squared_diagonals[3], 13 * 13 + 14 * 14);
        let d = path.vertices[3].norm();
        assert!((d - 365f64.sqrt()).abs() < 1e-12 * d);
        let r = validate(&path, &t);
        assert!(r.convex, "{r:?}");
        assert!(r.degenerate_vertices.is_empty());
    }

    #[test]
    fn wrong_turn_count() {
        let t = triple(9, 12, 14);
        let err = construct_generic(&t, &"10".parse().unwrap()).unwrap_err();
        assert_eq!(
            err,
            Error::TurnCount {
                expected: 3,
                got: 2
            }
        );
    }

    #[test]
    fn turn_parsing() {
        assert_eq!(
            "0110".parse::<TurnSequence>().unwrap().0,
            vec![false, true, true, false]
        );
        assert!("01x".parse::<TurnSequence>().is_err());
    }

    #[test]
    fn every_turn_sequence_of_small_solutions_closes() {
        for (a, b, c) in [(2, 4, 5), (9, 12, 14), (20, 24, 27), (35, 40, 44)] {
            let t = triple(a, b, c);
            let free = (c - a - 2) as u32;
            for mask in 0..(1u64 << free) {
                let bits = (0..free).map(|i| mask >> i & 1 == 1).collect();
                let path = construct_generic(&t, &TurnSequence(bits)).unwrap();
                let r = validate(&path, &t);
                assert!(
                    r.is_arithmetic(&Tolerances::default()),
                    "{t} {mask:b}: {r:?}"
                );
            }
        }
    }
}
