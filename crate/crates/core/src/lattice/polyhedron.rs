use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::feasibility::ConstraintSystem;
use super::fm::{self, HalfSpace};
use crate::error::{HtError, Result};

pub type RationalPoint2 = (BigRational, BigRational);

/// Vertices and recession-cone generators of a rational polygon.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polyhedron2 {
    pub vertices: Vec<RationalPoint2>,
    pub rays: Vec<(BigInt, BigInt)>,
}

impl Polyhedron2 {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.rays.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }
}

fn primitive(x: BigInt, y: BigInt) -> (BigInt, BigInt) {
    let g = x.gcd(&y);
    if g.is_zero() {
        (x, y)
    } else {
        (x / &g, y / &g)
    }
}

fn in_cone(rows: &[HalfSpace], d: &(BigInt, BigInt)) -> bool {
    rows.iter().all(|r| &r.coeffs[0] * &d.0 + &r.coeffs[1] * &d.1 >= BigInt::zero())
}

fn det(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

pub fn polyhedron_vertices_2d(system: &ConstraintSystem) -> Result<Polyhedron2> {
    if system.dim() != 2 {
        return Err(HtError::UnsupportedDimension { dim: system.dim() });
    }
    Ok(vertices_of(&system.half_spaces()))
}

pub(crate) fn vertices_of(rows: &[HalfSpace]) -> Polyhedron2 {
    if !fm::rational_feasible(rows, 2) {
        return Polyhedron2::default();
    }
    let rows: Vec<&HalfSpace> = rows.iter().filter(|r| !r.is_constant()).collect();
    let mut vertices = Vec::new();
    for (i, p) in rows.iter().enumerate() {
        for q in &rows[i + 1..] {
            let (a, b) = (&p.coeffs[0], &p.coeffs[1]);
            let (c, d) = (&q.coeffs[0], &q.coeffs[1]);
            let den = a * d - b * c;
            if den.is_zero() {
                continue;
            }
            let x = BigRational::new(&p.bound * d - b * &q.bound, den.clone());
            let y = BigRational::new(a * &q.bound - &p.bound * c, den);
            let pt = [x, y];
            if rows.iter().all(|r| r.holds_at_rational(&pt)) {
                let [x, y] = pt;
                vertices.push((x, y));
            }
        }
    }
    vertices.sort();
    vertices.dedup();

    let cone: Vec<HalfSpace> = rows.iter().map(|r| HalfSpace::new(r.coeffs.clone(), BigInt::zero())).collect();
    let one = BigInt::from(1);
    let zero = BigInt::zero();
    let axes = [
        (one.clone(), zero.clone()),
        (-one.clone(), zero.clone()),
        (zero.clone(), one.clone()),
        (zero.clone(), -one.clone()),
    ];
    let mut candidates: Vec<(BigInt, BigInt)> = axes.to_vec();
    for r in &cone {
        let along = primitive(-r.coeffs[1].clone(), r.coeffs[0].clone());
        candidates.push((-along.0.clone(), -along.1.clone()));
        candidates.push(along);
        candidates.push(primitive(r.coeffs[0].clone(), r.coeffs[1].clone()));
    }
    candidates.retain(|d| in_cone(&cone, d));
    candidates.sort();
    candidates.dedup();

    let rays =
        if candidates.is_empty() {
            Vec::new()
        } else if axes.iter().all(|d| in_cone(&cone, d)) {
            axes.to_vec()
        } else if let Some(line) = candidates.iter().find(|d| in_cone(&cone, &(-d.0.clone(), -d.1.clone()))).cloned() {
            let mut rays = vec![line.clone(), (-line.0.clone(), -line.1.clone())];
            // A half-plane also needs its inward normal.
            if let Some(n) = cone.iter().map(|r| primitive(r.coeffs[0].clone(), r.coeffs[1].clone())).find(|n| {
                !det(n, &line).is_zero() && in_cone(&cone, n) && !in_cone(&cone, &(-n.0.clone(), -n.1.clone()))
            }) {
                rays.push(n);
            }
            rays.sort();
            rays
        } else {
            // Pointed cone: the extreme rays see every other candidate on one side.
            let mut rays: Vec<(BigInt, BigInt)> = candidates
                .iter()
                .filter(|d| {
                    let signs: Vec<BigInt> = candidates.iter().map(|e| det(d, e)).collect();
                    signs.iter().all(|s| !s.is_negative()) || signs.iter().all(|s| !s.is_positive())
                })
                .cloned()
                .collect();
            rays.sort();
            rays.dedup();
            rays
        };
    Polyhedron2 { vertices, rays }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::feasibility::Constraint;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sys(cs: Vec<Constraint>) -> ConstraintSystem {
        ConstraintSystem::new(2, cs).unwrap()
    }

    fn b(x: i64, y: i64) -> (BigInt, BigInt) {
        (x.into(), y.into())
    }

    #[test]
    fn origin_triangle() {
        let p = polyhedron_vertices_2d(&sys(vec![
            Constraint::ge(&[1, 0], 0),
            Constraint::ge(&[0, 1], 0),
            Constraint::ge(&[-1, -1], 0),
        ]))
        .unwrap();
        assert_eq!(p.vertices, vec![(q(0), q(0))]);
        assert!(p.rays.is_empty());
    }

    #[test]
    fn shifted_triangle() {
        let p = polyhedron_vertices_2d(&sys(vec![
            Constraint::ge(&[1, 0], -2),
            Constraint::ge(&[0, 1], 0),
            Constraint::ge(&[-1, -1], 0),
        ]))
        .unwrap();
        assert_eq!(p.vertices, vec![(q(-2), q(0)), (q(-2), q(2)), (q(0), q(0))]);
        assert!(p.is_bounded());
    }

    #[test]
    fn contradictory() {
        let p = polyhedron_vertices_2d(&sys(vec![Constraint::ge(&[1, 0], 1), Constraint::le(&[1, 0], 0)])).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn recession_shapes() {
        let quadrant =
            polyhedron_vertices_2d(&sys(vec![Constraint::ge(&[1, 0], 1), Constraint::ge(&[0, 1], 2)])).unwrap();
        assert_eq!(quadrant.vertices, vec![(q(1), q(2))]);
        assert_eq!(quadrant.rays, vec![b(0, 1), b(1, 0)]);

        let half = polyhedron_vertices_2d(&sys(vec![Constraint::ge(&[1, 1], 0)])).unwrap();
        assert!(half.vertices.is_empty());
        assert_eq!(half.rays, vec![b(-1, 1), b(1, -1), b(1, 1)]);

        let line = polyhedron_vertices_2d(&sys(vec![Constraint::eq(&[0, 2], 4)])).unwrap();
        assert_eq!(line.rays, vec![b(-1, 0), b(1, 0)]);

        let wedge =
            polyhedron_vertices_2d(&sys(vec![Constraint::ge(&[1, -2], 0), Constraint::ge(&[-1, 3], 0)])).unwrap();
        assert_eq!(wedge.rays, vec![b(2, 1), b(3, 1)]);

        let plane = polyhedron_vertices_2d(&sys(vec![Constraint::ge(&[0, 0], -1)])).unwrap();
        assert_eq!(plane.rays.len(), 4);
    }

    #[test]
    fn wrong_dimension() {
        let s = ConstraintSystem::new(1, vec![Constraint::ge(&[1], 0)]).unwrap();
        assert!(polyhedron_vertices_2d(&s).is_err());
    }
}
