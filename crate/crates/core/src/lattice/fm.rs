//! Exact Fourier–Motzkin elimination over integer half-spaces.
//!
//! Rows are kept integral: combining two rows uses positive integer
//! multipliers, and a row is only divided by a common factor of all of its
//! entries, so the rational solution set never changes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs · x >= bound`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub coeffs: Vec<BigInt>,
    pub bound: BigInt,
}

impl HalfSpace {
    pub fn new(coeffs: Vec<BigInt>, bound: BigInt) -> Self {
        HalfSpace { coeffs, bound }.normalized()
    }

    fn normalized(mut self) -> Self {
        let mut g = self.bound.abs();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g > BigInt::one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.bound /= &g;
        }
        self
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// For a constant row: does `0 >= bound` hold.
    fn constant_holds(&self) -> bool {
        !self.bound.is_positive()
    }

    pub fn holds_at(&self, x: &[BigInt]) -> bool {
        let lhs: BigInt = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        lhs >= self.bound
    }

    pub fn holds_at_rational(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum();
        lhs >= BigRational::from_integer(self.bound.clone())
    }

    /// Replace variable `var` by the integer `value`.
    pub fn substitute(&self, var: usize, value: &BigInt) -> HalfSpace {
        let mut coeffs = self.coeffs.clone();
        let c = std::mem::take(&mut coeffs[var]);
        HalfSpace::new(coeffs, &self.bound - c * value)
    }
}

/// A constant row that can never hold.
fn contradiction(dim: usize) -> HalfSpace {
    HalfSpace { coeffs: vec![BigInt::zero(); dim], bound: BigInt::one() }
}

/// Drop trivially true constant rows and duplicates; collapse to a single
/// contradiction when some constant row fails.
fn tidy(rows: impl IntoIterator<Item = HalfSpace>, dim: usize) -> Vec<HalfSpace> {
    let mut set = BTreeSet::new();
    for r in rows {
        if r.is_constant() {
            if !r.constant_holds() {
                return vec![contradiction(dim)];
            }
            continue;
        }
        set.insert(r);
    }
    set.into_iter().collect()
}

pub fn is_contradiction(rows: &[HalfSpace]) -> bool {
    rows.iter().any(|r| r.is_constant() && !r.constant_holds())
}

/// Project out variable `var` (its coefficient becomes zero in every row).
pub fn eliminate(rows: &[HalfSpace], var: usize) -> Vec<HalfSpace> {
    let dim = rows.first().map_or(0, |r| r.coeffs.len());
    if is_contradiction(rows) {
        return vec![contradiction(dim)];
    }
    let mut keep = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in rows {
        let c = &r.coeffs[var];
        if c.is_zero() {
            keep.push(r.clone());
        } else if c.is_positive() {
            pos.push(r);
        } else {
            neg.push(r);
        }
    }
    for p in &pos {
        for q in &neg {
            let alpha = p.coeffs[var].clone();
            let beta = -q.coeffs[var].clone();
            let coeffs: Vec<BigInt> = p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| &beta * a + &alpha * b).collect();
            let bound = &beta * &p.bound + &alpha * &q.bound;
            keep.push(HalfSpace::new(coeffs, bound));
        }
    }
    tidy(keep, dim)
}

/// Interval of the single remaining variable `var` described by `rows`,
/// or `None` if the rows are contradictory. Other variables must already
/// have zero coefficients.
pub fn interval(rows: &[HalfSpace], var: usize) -> Option<(Option<BigRational>, Option<BigRational>)> {
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for r in rows {
        debug_assert!(r.coeffs.iter().enumerate().all(|(i, c)| i == var || c.is_zero()));
        let c = &r.coeffs[var];
        if c.is_zero() {
            if !r.constant_holds() {
                return None;
            }
            continue;
        }
        let q = BigRational::new(r.bound.clone(), c.clone());
        if c.is_positive() {
            if lo.as_ref().is_none_or(|l| &q > l) {
                lo = Some(q);
            }
        } else if hi.as_ref().is_none_or(|h| &q < h) {
            hi = Some(q);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

/// Rational range of variable `var` over the polyhedron.
pub fn bounds(rows: &[HalfSpace], dim: usize, var: usize) -> Option<(Option<BigRational>, Option<BigRational>)> {
    let mut cur = tidy(rows.iter().cloned(), dim);
    for v in (0..dim).rev() {
        if v != var {
            cur = eliminate(&cur, v);
        }
    }
    interval(&cur, var)
}

pub fn rational_feasible(rows: &[HalfSpace], dim: usize) -> bool {
    let mut cur = tidy(rows.iter().cloned(), dim);
    for v in (0..dim).rev() {
        if is_contradiction(&cur) {
            return false;
        }
        cur = eliminate(&cur, v);
    }
    !is_contradiction(&cur)
}

fn pick(lo: &Option<BigRational>, hi: &Option<BigRational>) -> BigRational {
    match (lo, hi) {
        (Some(l), _) => l.clone(),
        (None, Some(h)) => h.clone(),
        (None, None) => BigRational::zero(),
    }
}

/// Some rational point of the polyhedron, by back-substitution.
pub fn rational_point(rows: &[HalfSpace], dim: usize) -> Option<Vec<BigRational>> {
    if dim == 0 {
        return (!is_contradiction(&tidy(rows.iter().cloned(), 0))).then(Vec::new);
    }
    // levels[k] involves variables 0..dim-k
    let mut levels = vec![tidy(rows.iter().cloned(), dim)];
    for v in (1..dim).rev() {
        let next = eliminate(levels.last().unwrap(), v);
        levels.push(next);
    }
    let mut point: Vec<BigRational> = Vec::with_capacity(dim);
    for var in 0..dim {
        let level = &levels[dim - 1 - var];
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in level {
            let c = &r.coeffs[var];
            let fixed: BigRational =
                r.coeffs[..var].iter().zip(&point).map(|(a, x)| BigRational::from_integer(a.clone()) * x).sum();
            let rest = BigRational::from_integer(r.bound.clone()) - fixed;
            if c.is_zero() {
                if rest.is_positive() {
                    return None;
                }
                continue;
            }
            let q = rest / BigRational::from_integer(c.clone());
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| &q > l) {
                    lo = Some(q);
                }
            } else if hi.as_ref().is_none_or(|h| &q < h) {
                hi = Some(q);
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return None;
            }
        }
        point.push(pick(&lo, &hi));
    }
    debug_assert!(rows.iter().all(|r| r.holds_at_rational(&point)));
    Some(point)
}

pub fn ceil(q: &BigRational) -> BigInt {
    q.numer().div_ceil(q.denom())
}

pub fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(c: &[i64], b: i64) -> HalfSpace {
        HalfSpace::new(c.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(b))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn triangle_bounds() {
        // x >= -2, y >= 0, -x - y >= 0
        let rows = [hs(&[1, 0], -2), hs(&[0, 1], 0), hs(&[-1, -1], 0)];
        assert_eq!(bounds(&rows, 2, 0), Some((Some(q(-2, 1)), Some(q(0, 1)))));
        assert_eq!(bounds(&rows, 2, 1), Some((Some(q(0, 1)), Some(q(2, 1)))));
        assert!(rational_feasible(&rows, 2));
        let p = rational_point(&rows, 2).unwrap();
        assert!(rows.iter().all(|r| r.holds_at_rational(&p)));
    }

    #[test]
    fn contradictory_and_unbounded() {
        assert!(!rational_feasible(&[hs(&[1], 1), hs(&[-1], 0)], 1));
        let rows = [hs(&[2, -3], 1)];
        assert_eq!(bounds(&rows, 2, 0), Some((None, None)));
        assert!(rational_point(&rows, 2).is_some());
    }

    #[test]
    fn normalization_keeps_rational_set() {
        let r = hs(&[2, 4], 3);
        assert_eq!(r.coeffs, vec![BigInt::from(2), BigInt::from(4)]);
        let r = hs(&[2, 4], 6);
        assert_eq!(r.coeffs, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(r.bound, BigInt::from(3));
    }
}
