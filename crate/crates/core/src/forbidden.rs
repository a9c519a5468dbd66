//! The family Δ, forbidden-set membership and H-triviality by feasibility.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cohomology::cohomology_dims;
use crate::error::{HtError, Result};
use crate::fan::{LinearFunctional2, StackyFan};
use crate::index_set::IndexSet;
use crate::lattice::feasibility::solve;
use crate::lattice::fm::{self, HalfSpace};
use crate::lattice::small::{feasible_2d, small};
use crate::lattice::{Constraint, ConstraintSystem};
use crate::picard::{LineBundleClass, PicardGroup};

/// Above this many rays Δ is iterated lazily instead of stored.
pub const DELTA_CACHE_LIMIT: usize = 16;

/// Δ: the empty set, the full set, and every subset that is not a cyclic arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaFamily {
    n: usize,
    cached: Option<Vec<IndexSet>>,
}

fn delta_iter(n: usize) -> impl Iterator<Item = IndexSet> {
    let full = IndexSet::full(n);
    let last = full.0;
    [IndexSet::empty(), full].into_iter().chain((1..last).map(IndexSet).filter(move |s| !s.is_arc(n)))
}

pub fn delta_family(fan: &StackyFan) -> DeltaFamily {
    DeltaFamily::new(fan.n())
}

impl DeltaFamily {
    pub fn new(n: usize) -> Self {
        let cached = (n <= DELTA_CACHE_LIMIT).then(|| delta_iter(n).collect());
        DeltaFamily { n, cached }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, s: IndexSet) -> bool {
        s.0 & !IndexSet::full(self.n).0 == 0 && (s.is_empty() || s.is_full(self.n) || !s.is_arc(self.n))
    }

    /// Members in a fixed order: ∅, the full set, then by bitmask.
    pub fn iter(&self) -> Box<dyn Iterator<Item = IndexSet> + '_> {
        match &self.cached {
            Some(v) => Box::new(v.iter().copied()),
            None => Box::new(delta_iter(self.n)),
        }
    }

    pub fn len(&self) -> usize {
        match &self.cached {
            Some(v) => v.len(),
            None => delta_iter(self.n).count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> Option<&[IndexSet]> {
        self.cached.as_deref()
    }
}

/// A functional placing a representative into FS_I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub set: IndexSet,
    pub f: LinearFunctional2,
    pub r: Vec<BigInt>,
}

/// Rows over (f1, f2) of `a_i + f(v_i) >= 0` on I and `<= -1` off I.
pub fn forbidden_set_system(fan: &StackyFan, a: &[BigInt], set: IndexSet) -> ConstraintSystem {
    let cs = (0..fan.n())
        .map(|i| {
            let v = fan.vector(i);
            let coeffs = [v.x.clone(), v.y.clone()];
            if set.contains(i) {
                Constraint::ge(&coeffs, -a[i].clone())
            } else {
                Constraint::le(&coeffs, -&a[i] - 1)
            }
        })
        .collect();
    ConstraintSystem::new(2, cs).expect("n >= 3 rows of length 2")
}

fn in_forbidden_set(fan: &StackyFan, a: &[BigInt], set: IndexSet) -> Option<ForbiddenWitness> {
    let rows = forbidden_set_system(fan, a, set).half_spaces();
    let w = solve(&rows, 2)?;
    let f = LinearFunctional2 { w1: w[0].clone(), w2: w[1].clone() };
    let r: Vec<BigInt> = a.iter().zip(fan.evaluate(&f)).map(|(x, y)| x + y).collect();
    Some(ForbiddenWitness { set, f, r })
}

pub fn forbidden_set_contains(
    pic: &PicardGroup,
    set: IndexSet,
    c: &LineBundleClass,
) -> Result<Option<ForbiddenWitness>> {
    if !DeltaFamily::new(pic.n()).contains(set) {
        return Err(HtError::NotInDelta);
    }
    let a = pic.divisor_representative(c)?;
    Ok(in_forbidden_set(pic.fan(), &a, set))
}

/// The first I ∈ Δ (in Δ order) whose forbidden set contains the class.
pub fn first_forbidden_set(pic: &PicardGroup, c: &LineBundleClass) -> Result<Option<ForbiddenWitness>> {
    let a = pic.divisor_representative(c)?;
    Ok(first_forbidden_for_divisor(pic.fan(), &a))
}

pub(crate) fn first_forbidden_for_divisor(fan: &StackyFan, a: &[BigInt]) -> Option<ForbiddenWitness> {
    let delta = DeltaFamily::new(fan.n());
    match delta.members() {
        Some(m) => m.par_iter().find_map_first(|&s| in_forbidden_set(fan, a, s)),
        None => delta.iter().find_map(|s| in_forbidden_set(fan, a, s)),
    }
}

/// Machine-integer rows of the forbidden-set system, when everything fits.
fn small_rows(fan: &StackyFan, a: &[BigInt], set: IndexSet) -> Option<Vec<[i128; 3]>> {
    (0..fan.n())
        .map(|i| {
            let v = fan.vector(i);
            let (x, y, ai) = (small(&v.x)?, small(&v.y)?, small(&a[i])?);
            Some(if set.contains(i) { [x, y, -ai] } else { [-x, -y, ai + 1] })
        })
        .collect()
}

fn forbidden_set_hit(fan: &StackyFan, a: &[BigInt], set: IndexSet) -> bool {
    if let Some(hit) = small_rows(fan, a, set).and_then(|rows| feasible_2d(&rows)) {
        return hit;
    }
    in_forbidden_set(fan, a, set).is_some()
}

pub fn is_h_trivial_divisor(fan: &StackyFan, a: &[BigInt]) -> bool {
    let delta = DeltaFamily::new(fan.n());
    match delta.members() {
        Some(m) => !m.iter().any(|&s| forbidden_set_hit(fan, a, s)),
        None => !delta.iter().any(|s| forbidden_set_hit(fan, a, s)),
    }
}

pub fn is_h_trivial(pic: &PicardGroup, c: &LineBundleClass) -> Result<bool> {
    let a = pic.divisor_representative(c)?;
    Ok(is_h_trivial_divisor(pic.fan(), &a))
}

/// Both oracles; disagreement is reported as an error.
pub fn is_h_trivial_cross_checked(pic: &PicardGroup, c: &LineBundleClass) -> Result<bool> {
    let by_feasibility = is_h_trivial(pic, c)?;
    let by_cohomology = cohomology_dims(pic, c)?.is_zero();
    if by_feasibility != by_cohomology {
        return Err(HtError::OracleDisagreement(format!(
            "class {c}: forbidden-set test says {by_feasibility}, cohomology says {by_cohomology}"
        )));
    }
    Ok(by_feasibility)
}

/// Some I ∈ Δ such that a rational functional makes `a + f(v)` strictly
/// positive on I and strictly negative off I.
pub fn interior_membership_divisor(fan: &StackyFan, a: &[BigRational]) -> Option<IndexSet> {
    let n = fan.n();
    let denom = a.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    let a: Vec<BigInt> = a.iter().map(|q| (q * BigRational::from_integer(denom.clone())).to_integer()).collect();
    DeltaFamily::new(n).iter().find(|&set| {
        // Variables (f1, f2, s): s a_i + f(v_i) >= 1 on I, <= -1 off I, s >= 1.
        let mut rows: Vec<HalfSpace> = (0..n)
            .map(|i| {
                let v = fan.vector(i);
                if set.contains(i) {
                    HalfSpace::new(vec![v.x.clone(), v.y.clone(), a[i].clone()], BigInt::one())
                } else {
                    HalfSpace::new(vec![-v.x.clone(), -v.y.clone(), -a[i].clone()], BigInt::one())
                }
            })
            .collect();
        rows.push(HalfSpace::new(vec![BigInt::zero(), BigInt::zero(), BigInt::one()], BigInt::one()));
        fm::rational_feasible(&rows, 3)
    })
}

pub fn interior_membership(pic: &PicardGroup, c: &LineBundleClass) -> Result<Option<IndexSet>> {
    if c.free().iter().all(Zero::is_zero) {
        return Err(HtError::ZeroClass);
    }
    let a = pic.divisor_representative(c)?;
    let a: Vec<BigRational> = a.into_iter().map(BigRational::from_integer).collect();
    Ok(interior_membership_divisor(pic.fan(), &a))
}
