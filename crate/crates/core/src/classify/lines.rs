//! Tube directions and the H-triviality of lattice lines D1 + Z·D2.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{HtError, Result};
use crate::fan::{CollinearPair, LinearFunctional2, StackyFan};
use crate::forbidden::{is_h_trivial_divisor, DeltaFamily};
use crate::index_set::IndexSet;
use crate::lattice::feasibility::solve;
use crate::lattice::fm::HalfSpace;
use crate::picard::{LineBundleClass, PicardGroup};

/// Direction of the tube attached to a collinear pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeDirection {
    pub pair: CollinearPair,
    /// Primitive functional vanishing on the pair.
    pub h: LinearFunctional2,
    /// Indices where h is positive.
    pub positive: IndexSet,
    /// Σ_{i ∈ positive} m h(v_i) E_i.
    pub divisor: Vec<BigInt>,
    pub multiplier: BigInt,
    pub class: LineBundleClass,
}

fn check_pair(fan: &StackyFan, pair: CollinearPair) -> Result<()> {
    if pair.i >= pair.j || !fan.is_collinear_pair(pair.i, pair.j) {
        return Err(HtError::NotCollinear { first: pair.i, second: pair.j });
    }
    Ok(())
}

fn vanishing_functional(fan: &StackyFan, p: usize) -> LinearFunctional2 {
    let v = fan.vector(p);
    let g = num_integer::Integer::gcd(&v.x, &v.y);
    LinearFunctional2 { w1: -&v.y / &g, w2: &v.x / &g }
}

/// The class of Σ_{J+} h(v_i) E_i for the primitive h with h(v_p) = h(v_q) = 0.
/// Replacing h by -h gives the same class, because Σ h(v_i) E_i is a relation.
pub fn tube_line_direction(pic: &PicardGroup, pair: CollinearPair) -> Result<TubeDirection> {
    let fan = pic.fan();
    check_pair(fan, pair)?;
    let h = vanishing_functional(fan, pair.i);
    let vals = fan.evaluate(&h);
    let positive = IndexSet::from_predicate(fan.n(), |i| vals[i].is_positive());
    let divisor: Vec<BigInt> = vals.iter().map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() }).collect();
    let class = pic.class_of(&divisor)?;
    Ok(TubeDirection { pair, h, positive, divisor, multiplier: BigInt::one(), class })
}

/// Σ_{J+} h(v_i) E_i - E_p: H-trivial whenever p belongs to a collinear pair.
pub fn sign_change_divisor(pic: &PicardGroup, pair: CollinearPair) -> Result<Vec<BigInt>> {
    let mut d = tube_line_direction(pic, pair)?.divisor;
    d[pair.i] -= 1;
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineWindow {
    /// The window is [-half_width, half_width].
    pub half_width: BigInt,
    /// Values of l in the window where D1 + l D2 is not H-trivial.
    pub nontrivial: Vec<BigInt>,
    /// Some forbidden-set system has a solution with l >= half_width.
    pub nontrivial_above: bool,
    /// Some forbidden-set system has a solution with l <= -half_width.
    pub nontrivial_below: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineStatus {
    FullyTrivial,
    Mixed(LineWindow),
    NotTrivial(LineWindow),
}

impl LineStatus {
    pub fn is_fully_trivial(&self) -> bool {
        matches!(self, LineStatus::FullyTrivial)
    }

    pub fn label(&self) -> &'static str {
        match self {
            LineStatus::FullyTrivial => "fully_trivial",
            LineStatus::Mixed(_) => "mixed",
            LineStatus::NotTrivial(_) => "not_trivial",
        }
    }
}

/// Rows over (f1, f2, l) placing a + l b + f(v) in FS_I.
fn line_rows(fan: &StackyFan, a: &[BigInt], b: &[BigInt], set: IndexSet) -> Vec<HalfSpace> {
    (0..fan.n())
        .map(|i| {
            let v = fan.vector(i);
            if set.contains(i) {
                HalfSpace::new(vec![v.x.clone(), v.y.clone(), b[i].clone()], -a[i].clone())
            } else {
                HalfSpace::new(vec![-v.x.clone(), -v.y.clone(), -b[i].clone()], &a[i] + 1)
            }
        })
        .collect()
}

fn any_feasible(fan: &StackyFan, a: &[BigInt], b: &[BigInt], extra: Option<HalfSpace>) -> bool {
    let delta = DeltaFamily::new(fan.n());
    let check = |set: IndexSet| {
        let mut rows = line_rows(fan, a, b, set);
        if let Some(e) = &extra {
            rows.push(e.clone());
        }
        solve(&rows, 3).is_some()
    };
    match delta.members() {
        Some(m) => m.par_iter().any(|&s| check(s)),
        None => delta.iter().any(check),
    }
}

pub fn default_window(d1: &LineBundleClass, d2: &LineBundleClass) -> BigInt {
    let sup = |c: &LineBundleClass| c.free().iter().map(|x| x.abs()).max().unwrap_or_default();
    BigInt::from(10) * (sup(d1) + sup(d2)).max(BigInt::one())
}

/// Decide whether every point of D1 + Z·D2 is H-trivial; otherwise report
/// the nontrivial values of l in a window and whether more lie outside it.
pub fn line_fully_h_trivial(
    pic: &PicardGroup,
    d1: &LineBundleClass,
    d2: &LineBundleClass,
    window: Option<BigInt>,
) -> Result<LineStatus> {
    if d2.is_zero() {
        return Err(HtError::ZeroClass);
    }
    let fan = pic.fan();
    let a = pic.divisor_representative(d1)?;
    let b = pic.divisor_representative(d2)?;
    if !any_feasible(fan, &a, &b, None) {
        return Ok(LineStatus::FullyTrivial);
    }
    let half_width = window.unwrap_or_else(|| default_window(d1, d2));
    let mut ls = Vec::new();
    let mut l = -half_width.clone();
    while l <= half_width {
        ls.push(l.clone());
        l += 1;
    }
    let flags: Vec<bool> = ls
        .par_iter()
        .map(|l| {
            let d: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + l * y).collect();
            !is_h_trivial_divisor(fan, &d)
        })
        .collect();
    let nontrivial: Vec<BigInt> = ls.into_iter().zip(&flags).filter(|(_, &f)| f).map(|(l, _)| l).collect();
    let unit = |s: i64| vec![BigInt::zero(), BigInt::zero(), BigInt::from(s)];
    let nontrivial_above = any_feasible(fan, &a, &b, Some(HalfSpace::new(unit(1), half_width.clone())));
    let nontrivial_below = any_feasible(fan, &a, &b, Some(HalfSpace::new(unit(-1), half_width.clone())));
    let all_bad = nontrivial.len() == flags.len();
    let w = LineWindow { half_width, nontrivial, nontrivial_above, nontrivial_below };
    Ok(if all_bad { LineStatus::NotTrivial(w) } else { LineStatus::Mixed(w) })
}
