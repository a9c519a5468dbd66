//! Integer feasibility for small linear systems.
//!
//! A bounded leading coordinate is swept; otherwise the recession cone's
//! linear span is moved onto trailing coordinates by a unimodular change of
//! variables, the (bounded) projection onto the leading ones is enumerated,
//! and each fiber, whose recession cone is full-dimensional, is solved by
//! pushing a rational point deep into the cone before rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fm::{self, HalfSpace};
use super::matrix::IntegerMatrix;
use super::snf::smith_normal_form;
use crate::error::{HtError, Result};

pub const MAX_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub coeffs: Vec<BigInt>,
    pub relation: Relation,
    pub bound: BigInt,
}

impl Constraint {
    pub fn new<T: Into<BigInt> + Clone>(coeffs: &[T], relation: Relation, bound: impl Into<BigInt>) -> Self {
        Constraint { coeffs: coeffs.iter().cloned().map(Into::into).collect(), relation, bound: bound.into() }
    }

    pub fn ge<T: Into<BigInt> + Clone>(coeffs: &[T], bound: impl Into<BigInt>) -> Self {
        Self::new(coeffs, Relation::Ge, bound)
    }

    pub fn le<T: Into<BigInt> + Clone>(coeffs: &[T], bound: impl Into<BigInt>) -> Self {
        Self::new(coeffs, Relation::Le, bound)
    }

    pub fn eq<T: Into<BigInt> + Clone>(coeffs: &[T], bound: impl Into<BigInt>) -> Self {
        Self::new(coeffs, Relation::Eq, bound)
    }

    pub fn holds_at(&self, x: &[BigInt]) -> bool {
        let lhs: BigInt = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Ge => lhs >= self.bound,
            Relation::Le => lhs <= self.bound,
            Relation::Eq => lhs == self.bound,
        }
    }

    fn half_spaces(&self) -> Vec<HalfSpace> {
        let neg = || self.coeffs.iter().map(|c| -c).collect::<Vec<_>>();
        match self.relation {
            Relation::Ge => vec![HalfSpace::new(self.coeffs.clone(), self.bound.clone())],
            Relation::Le => vec![HalfSpace::new(neg(), -self.bound.clone())],
            Relation::Eq => vec![
                HalfSpace::new(self.coeffs.clone(), self.bound.clone()),
                HalfSpace::new(neg(), -self.bound.clone()),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintSystem {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if dim == 0 {
            return Err(HtError::InvalidSystem("dimension must be at least 1".into()));
        }
        if constraints.is_empty() {
            return Err(HtError::InvalidSystem("at least one constraint is required".into()));
        }
        for c in &constraints {
            if c.coeffs.len() != dim {
                return Err(HtError::LengthMismatch { expected: dim, found: c.coeffs.len() });
            }
        }
        Ok(ConstraintSystem { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn satisfied_by(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim && self.constraints.iter().all(|c| c.holds_at(x))
    }

    pub fn half_spaces(&self) -> Vec<HalfSpace> {
        self.constraints.iter().flat_map(Constraint::half_spaces).collect()
    }

    pub fn rational_feasible(&self) -> bool {
        fm::rational_feasible(&self.half_spaces(), self.dim)
    }

    /// The system translated by `t`: x satisfies it iff x - t satisfies self.
    pub fn shifted(&self, t: &[BigInt]) -> ConstraintSystem {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let dot: BigInt = c.coeffs.iter().zip(t).map(|(a, b)| a * b).sum();
                Constraint { coeffs: c.coeffs.clone(), relation: c.relation, bound: &c.bound + dot }
            })
            .collect();
        ConstraintSystem { dim: self.dim, constraints }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FeasibilityResult {
    Feasible(Vec<BigInt>),
    Infeasible,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[BigInt]> {
        match self {
            FeasibilityResult::Feasible(w) => Some(w),
            FeasibilityResult::Infeasible => None,
        }
    }
}

pub fn integer_feasible(system: &ConstraintSystem) -> Result<FeasibilityResult> {
    if system.dim > MAX_DIM {
        return Err(HtError::UnsupportedDimension { dim: system.dim });
    }
    let rows = system.half_spaces();
    Ok(match solve(&rows, system.dim) {
        Some(w) => {
            debug_assert!(system.satisfied_by(&w));
            FeasibilityResult::Feasible(w)
        }
        None => FeasibilityResult::Infeasible,
    })
}

/// All integer points of a system, in lexicographic order, or `None` when
/// the rational polyhedron is unbounded.
pub fn integer_points(system: &ConstraintSystem) -> Result<Option<Vec<Vec<BigInt>>>> {
    if system.dim > MAX_DIM {
        return Err(HtError::UnsupportedDimension { dim: system.dim });
    }
    let rows = system.half_spaces();
    if !fm::rational_feasible(&rows, system.dim) {
        return Ok(Some(Vec::new()));
    }
    for v in 0..system.dim {
        match fm::bounds(&rows, system.dim, v) {
            Some((Some(_), Some(_))) => {}
            _ => return Ok(None),
        }
    }
    Ok(Some(enumerate_bounded(&rows, system.dim)))
}

/// Drop variable `var` after substituting `value` for it.
fn fix_var(rows: &[HalfSpace], var: usize, value: &BigInt) -> Vec<HalfSpace> {
    rows.iter()
        .map(|r| {
            let s = r.substitute(var, value);
            let mut coeffs = s.coeffs;
            coeffs.remove(var);
            HalfSpace::new(coeffs, s.bound)
        })
        .collect()
}

fn keep_leading(rows: &[HalfSpace], m: usize) -> Vec<HalfSpace> {
    rows.iter()
        .map(|r| {
            debug_assert!(r.coeffs[m..].iter().all(Zero::is_zero));
            HalfSpace::new(r.coeffs[..m].to_vec(), r.bound.clone())
        })
        .collect()
}

fn holds_const(rows: &[HalfSpace]) -> bool {
    !fm::is_contradiction(rows)
}

/// Every integer point of a bounded system, lexicographically.
pub(crate) fn enumerate_bounded(rows: &[HalfSpace], dim: usize) -> Vec<Vec<BigInt>> {
    if dim == 0 {
        return if holds_const(rows) { vec![vec![]] } else { vec![] };
    }
    let Some((Some(lo), Some(hi))) = fm::bounds(rows, dim, 0) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut x = fm::ceil(&lo);
    let top = fm::floor(&hi);
    while x <= top {
        for mut tail in enumerate_bounded(&fix_var(rows, 0, &x), dim - 1) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
        x += 1;
    }
    out
}

/// Exact integer feasibility for rows in any dimension; callers bound `dim`.
pub(crate) fn solve(rows: &[HalfSpace], dim: usize) -> Option<Vec<BigInt>> {
    if dim == 0 {
        return holds_const(rows).then(Vec::new);
    }
    if !fm::rational_feasible(rows, dim) {
        return None;
    }
    let (lo, hi) = fm::bounds(rows, dim, 0)?;
    if dim == 1 {
        let x = match (&lo, &hi) {
            (Some(l), _) => fm::ceil(l),
            (None, Some(h)) => fm::floor(h),
            (None, None) => BigInt::zero(),
        };
        let ok = hi.as_ref().is_none_or(|h| BigRational::from_integer(x.clone()) <= *h)
            && lo.as_ref().is_none_or(|l| BigRational::from_integer(x.clone()) >= *l);
        return ok.then(|| vec![x]);
    }
    if let (Some(lo), Some(hi)) = (lo, hi) {
        let mut x = fm::ceil(&lo);
        let top = fm::floor(&hi);
        while x <= top {
            if let Some(mut tail) = solve(&fix_var(rows, 0, &x), dim - 1) {
                tail.insert(0, x);
                return Some(tail);
            }
            x += 1;
        }
        return None;
    }
    solve_unbounded(rows, dim)
}

fn recession_rows(rows: &[HalfSpace]) -> Vec<HalfSpace> {
    rows.iter().filter(|r| !r.is_constant()).map(|r| HalfSpace::new(r.coeffs.clone(), BigInt::zero())).collect()
}

fn solve_unbounded(rows: &[HalfSpace], dim: usize) -> Option<Vec<BigInt>> {
    let cone = recession_rows(rows);
    // Implicit equalities of the recession cone cut out its linear span.
    let equalities: Vec<Vec<BigInt>> = cone
        .iter()
        .filter(|r| {
            let mut probe = cone.clone();
            probe.push(HalfSpace::new(r.coeffs.clone(), BigInt::one()));
            !fm::rational_feasible(&probe, dim)
        })
        .map(|r| r.coeffs.clone())
        .collect();
    let (v, rank) = if equalities.is_empty() {
        (IntegerMatrix::identity(dim), 0)
    } else {
        let e = IntegerMatrix::from_rows(&equalities).expect("rows share the dimension");
        let s = smith_normal_form(&e);
        let rank = s.rank();
        (s.v, rank)
    };
    // x = V y; the last dim - rank coordinates of y span the recession cone.
    let transformed: Vec<HalfSpace> =
        rows.iter().map(|r| HalfSpace::new(v.left_mul_vec(&r.coeffs), r.bound.clone())).collect();
    let mut projected = transformed.clone();
    for var in (rank..dim).rev() {
        projected = fm::eliminate(&projected, var);
    }
    let heads = if rank == 0 {
        if fm::is_contradiction(&projected) {
            Vec::new()
        } else {
            vec![Vec::new()]
        }
    } else {
        enumerate_bounded(&keep_leading(&projected, rank), rank)
    };
    for head in heads {
        let mut fiber = transformed.clone();
        for value in &head {
            fiber = fix_var(&fiber, 0, value);
        }
        if let Some(tail) = solve_full_cone(&fiber, dim - rank) {
            let y: Vec<BigInt> = head.into_iter().chain(tail).collect();
            let x = v.mul_vec(&y);
            debug_assert!(rows.iter().all(|r| r.holds_at(&x)));
            return Some(x);
        }
    }
    None
}

/// Integer point of a rationally nonempty polyhedron whose recession cone is
/// full-dimensional.
fn solve_full_cone(rows: &[HalfSpace], dim: usize) -> Option<Vec<BigInt>> {
    let p = fm::rational_point(rows, dim)?;
    let interior: Vec<HalfSpace> =
        rows.iter().filter(|r| !r.is_constant()).map(|r| HalfSpace::new(r.coeffs.clone(), BigInt::one())).collect();
    let c = fm::rational_point(&interior, dim)?;
    let denom = c.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    let c: Vec<BigInt> = c.iter().map(|q| (q * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let base: Vec<BigInt> = p.iter().map(|q| fm::floor(&(q + BigRational::new(1.into(), 2.into())))).collect();
    let reach = rows.iter().map(|r| r.coeffs.iter().map(|a| a.abs()).sum::<BigInt>()).max().unwrap_or_default();
    let t_max = (reach + 1) / 2;
    for t in [BigInt::zero(), t_max] {
        let x: Vec<BigInt> = base.iter().zip(&c).map(|(b, d)| b + &t * d).collect();
        if rows.iter().all(|r| r.holds_at(&x)) {
            return Some(x);
        }
    }
    debug_assert!(false, "rounding along an interior ray must succeed");
    None
}
