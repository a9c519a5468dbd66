//! Line-bundle cohomology by summing reduced homology of sign patterns.
//!
//! For a representative `a` and a functional `f`, the pattern of
//! `r = a + f(v)` is the set of indices with `r_i >= 0`. Only finitely many
//! `f` give a pattern with nontrivial reduced homology; [`contribution_box`]
//! bounds them and the sum runs over that box column by column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fan::{LinearFunctional2, StackyFan};
use crate::index_set::IndexSet;
use crate::lattice::fm::{self, HalfSpace};
use crate::lattice::polyhedron::vertices_of;
use crate::picard::{LineBundleClass, PicardGroup};

/// Supp(r) as a subcomplex of the n-cycle: vertices with `r_i >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SupportComplex {
    pub n: usize,
    pub vertices: IndexSet,
}

impl SupportComplex {
    /// Edges `{i, i+1}` with both ends present; all n of them for the full set.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .map(|i| (i, (i + 1) % self.n))
            .filter(|&(i, j)| self.vertices.contains(i) && self.vertices.contains(j))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct HomologyDims {
    pub h_minus1: u64,
    pub h0red: u64,
    pub h1red: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
}

impl CohomologyDims {
    pub fn total(&self) -> u64 {
        self.h0 + self.h1 + self.h2
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    fn add_pattern(&mut self, h: HomologyDims, count: u64) {
        self.h0 += h.h1red * count;
        self.h1 += h.h0red * count;
        self.h2 += h.h_minus1 * count;
    }

    fn merge(self, other: CohomologyDims) -> CohomologyDims {
        CohomologyDims { h0: self.h0 + other.h0, h1: self.h1 + other.h1, h2: self.h2 + other.h2 }
    }
}

/// Closed integer rectangle of functionals `(f1, f2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntBox {
    pub x_min: BigInt,
    pub x_max: BigInt,
    pub y_min: BigInt,
    pub y_max: BigInt,
}

impl IntBox {
    fn around(points: &[(BigRational, BigRational)]) -> IntBox {
        let mut it = points.iter();
        let (x0, y0) = it.next().expect("at least one point");
        let (mut xl, mut xh, mut yl, mut yh) = (x0.clone(), x0.clone(), y0.clone(), y0.clone());
        for (x, y) in it {
            if *x < xl {
                xl = x.clone();
            }
            if *x > xh {
                xh = x.clone();
            }
            if *y < yl {
                yl = y.clone();
            }
            if *y > yh {
                yh = y.clone();
            }
        }
        IntBox { x_min: fm::floor(&xl), x_max: fm::ceil(&xh), y_min: fm::floor(&yl), y_max: fm::ceil(&yh) }
    }

    pub fn contains(&self, f1: &BigInt, f2: &BigInt) -> bool {
        (&self.x_min..=&self.x_max).contains(&f1) && (&self.y_min..=&self.y_max).contains(&f2)
    }

    /// The box with each side pushed out by half its width (at least 1), so
    /// that both widths at least double.
    pub fn doubled(&self) -> IntBox {
        let grow = |lo: &BigInt, hi: &BigInt| {
            let w: BigInt = hi - lo;
            let pad = (w + 2) / 2;
            (lo - &pad, hi + &pad)
        };
        let (x_min, x_max) = grow(&self.x_min, &self.x_max);
        let (y_min, y_max) = grow(&self.y_min, &self.y_max);
        IntBox { x_min, x_max, y_min, y_max }
    }

    pub fn point_count(&self) -> BigInt {
        (&self.x_max - &self.x_min + 1) * (&self.y_max - &self.y_min + 1)
    }
}

pub fn support_complex(fan: &StackyFan, divisor: &[BigInt]) -> SupportComplex {
    let n = fan.n();
    SupportComplex { n, vertices: IndexSet::from_predicate(n, |i| !divisor[i].is_negative()) }
}

pub fn reduced_homology_dims(s: &SupportComplex) -> HomologyDims {
    pattern_homology(s.n, s.vertices)
}

pub(crate) fn pattern_homology(n: usize, v: IndexSet) -> HomologyDims {
    if v.is_empty() {
        HomologyDims { h_minus1: 1, ..Default::default() }
    } else if v.is_full(n) {
        HomologyDims { h1red: 1, ..Default::default() }
    } else {
        HomologyDims { h0red: (v.arcs(n) - 1) as u64, ..Default::default() }
    }
}

/// `sign * (a_i + f(v_i)) >= bound` as a row over (f1, f2).
fn row(fan: &StackyFan, a: &[BigInt], i: usize, nonneg: bool) -> HalfSpace {
    let v = fan.vector(i);
    if nonneg {
        HalfSpace::new(vec![v.x.clone(), v.y.clone()], -a[i].clone())
    } else {
        HalfSpace::new(vec![-v.x.clone(), -v.y.clone()], &a[i] + 1)
    }
}

fn parallelogram(fan: &StackyFan, i: usize, j: usize, m: &BigInt) -> Vec<(BigRational, BigRational)> {
    let (vi, vj) = (fan.vector(i), fan.vector(j));
    let det = vi.det(vj);
    let mut out = Vec::with_capacity(4);
    for si in [-1, 1] {
        for sj in [-1, 1] {
            let (ri, rj) = (m * si, m * sj);
            // f(v_i) = ri, f(v_j) = rj.
            let f1 = BigRational::new(&ri * &vj.y - &rj * &vi.y, det.clone());
            let f2 = BigRational::new(&rj * &vi.x - &ri * &vj.x, det.clone());
            out.push((f1, f2));
        }
    }
    out
}

/// A rectangle containing every `f` whose pattern has nontrivial reduced
/// homology: the vertices of P0 and P2, the pairwise parallelograms with
/// half-width `max|a_i| + 1`, and every polygon forcing an alternating
/// nonnegative/negative pattern on four cyclically ordered indices (each
/// disconnected pattern lies in one of these).
pub fn contribution_box(fan: &StackyFan, a: &[BigInt]) -> IntBox {
    let n = fan.n();
    let mut points: Vec<(BigRational, BigRational)> = vec![(BigRational::zero(), BigRational::zero())];
    let p0: Vec<HalfSpace> = (0..n).map(|i| row(fan, a, i, true)).collect();
    let p2: Vec<HalfSpace> = (0..n).map(|i| row(fan, a, i, false)).collect();
    points.extend(vertices_of(&p0).vertices);
    points.extend(vertices_of(&p2).vertices);
    let m: BigInt = a.iter().map(|x| x.abs()).max().unwrap_or_default() + 1;
    for i in 0..n {
        for j in i + 1..n {
            if !fan.vector(i).det(fan.vector(j)).is_zero() {
                points.extend(parallelogram(fan, i, j, &m));
            }
        }
    }
    let quads: Vec<[usize; 4]> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).flat_map(move |k| (k + 1..n).map(move |l| [i, j, k, l]))))
        .collect();
    let extra: Vec<(BigRational, BigRational)> = quads
        .par_iter()
        .flat_map_iter(|q| {
            [true, false].into_iter().flat_map(move |first_nonneg| {
                let rows: Vec<HalfSpace> =
                    q.iter().enumerate().map(|(k, &i)| row(fan, a, i, (k % 2 == 0) == first_nonneg)).collect();
                let p = vertices_of(&rows);
                debug_assert!(p.is_bounded());
                p.vertices
            })
        })
        .collect();
    points.extend(extra);
    IntBox::around(&points)
}

fn divide_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

/// Sum of pattern homology over one column `f1 = x`, `f2 ∈ [y_min, y_max]`.
fn column(fan: &StackyFan, a: &[BigInt], x: &BigInt, y_min: &BigInt, y_max: &BigInt) -> CohomologyDims {
    let n = fan.n();
    // Each index is nonnegative on a half-line in f2; record where it flips.
    let mut cuts: Vec<BigInt> = Vec::new();
    for (i, ai) in a.iter().enumerate().take(n) {
        let v = fan.vector(i);
        if v.y.is_zero() {
            continue;
        }
        let c = -ai - x * &v.x;
        let cut = if v.y.is_positive() { divide_ceil(&c, &v.y) } else { c.div_floor(&v.y) + 1 };
        if &cut > y_min && &cut <= y_max {
            cuts.push(cut);
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut out = CohomologyDims::default();
    let mut start = y_min.clone();
    for end in cuts.iter().cloned().chain(std::iter::once(y_max + 1)) {
        let len = &end - &start;
        if len.is_positive() {
            let pattern = IndexSet::from_predicate(n, |i| {
                let v = fan.vector(i);
                !(&a[i] + x * &v.x + &start * &v.y).is_negative()
            });
            let count: u64 = len.try_into().expect("column length fits in u64");
            out.add_pattern(pattern_homology(n, pattern), count);
        }
        start = end;
    }
    out
}

/// Cohomology of `O(Σ a_i E_i)` by summation over an explicit box.
pub fn cohomology_in_box(fan: &StackyFan, a: &[BigInt], b: &IntBox) -> CohomologyDims {
    let xs: Vec<BigInt> = num_iter(&b.x_min, &b.x_max);
    xs.par_iter().map(|x| column(fan, a, x, &b.y_min, &b.y_max)).reduce(CohomologyDims::default, CohomologyDims::merge)
}

fn num_iter(lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        out.push(x.clone());
        x += 1;
    }
    out
}

pub fn cohomology_of_divisor(fan: &StackyFan, a: &[BigInt]) -> CohomologyDims {
    cohomology_in_box(fan, a, &contribution_box(fan, a))
}

pub fn cohomology_dims(pic: &PicardGroup, c: &LineBundleClass) -> Result<CohomologyDims> {
    let a = pic.divisor_representative(c)?;
    Ok(cohomology_of_divisor(pic.fan(), &a))
}

/// Pattern of `a + f(v)` for one functional.
pub fn pattern_at(fan: &StackyFan, a: &[BigInt], f: &LinearFunctional2) -> IndexSet {
    IndexSet::from_predicate(fan.n(), |i| !(&a[i] + f.eval(fan.vector(i))).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::arb_fan;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn p2() -> StackyFan {
        StackyFan::from_pairs(&[(1, 0), (0, 1), (-1, -1)]).unwrap()
    }

    /// Point-by-point oracle.
    fn naive(fan: &StackyFan, a: &[BigInt], b: &IntBox) -> CohomologyDims {
        let mut out = CohomologyDims::default();
        for x in num_iter(&b.x_min, &b.x_max) {
            for y in num_iter(&b.y_min, &b.y_max) {
                let p = pattern_at(fan, a, &LinearFunctional2 { w1: x.clone(), w2: y });
                out.add_pattern(pattern_homology(fan.n(), p), 1);
            }
        }
        out
    }

    #[test]
    fn support_examples() {
        let f = p2();
        assert_eq!(support_complex(&f, &big(&[0, 0, 0])).edges().len(), 3);
        let e = support_complex(&f, &big(&[-1, -1, -1]));
        assert!(e.vertices.is_empty());
        assert_eq!(reduced_homology_dims(&e), HomologyDims { h_minus1: 1, h0red: 0, h1red: 0 });
        let sq = StackyFan::from_pairs(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap();
        let s = support_complex(&sq, &big(&[0, -1, 0, -1]));
        assert_eq!(s.vertices, IndexSet::from_indices([0, 2]));
        assert!(s.edges().is_empty());
        assert_eq!(reduced_homology_dims(&s), HomologyDims { h_minus1: 0, h0red: 1, h1red: 0 });
        let full = support_complex(&sq, &big(&[0, 0, 0, 0]));
        assert_eq!(reduced_homology_dims(&full), HomologyDims { h_minus1: 0, h0red: 0, h1red: 1 });
    }

    #[test]
    fn projective_plane_values() {
        let f = p2();
        let pic = PicardGroup::new(&f);
        let dims = |k: i64| cohomology_dims(&pic, &pic.class_from_i64(&[k], &[]).unwrap()).unwrap();
        assert_eq!(dims(0), CohomologyDims { h0: 1, h1: 0, h2: 0 });
        assert!(dims(-1).is_zero());
        assert!(dims(-2).is_zero());
        assert_eq!(dims(-3), CohomologyDims { h0: 0, h1: 0, h2: 1 });
        assert_eq!(dims(1).h0, 3);
        assert_eq!(dims(-4).h2, 3);
    }

    #[test]
    fn projective_plane_box() {
        let b = contribution_box(&p2(), &big(&[2, 0, 0]));
        for (x, y) in [(-2, 0), (-2, 2), (0, 0)] {
            assert!(b.contains(&x.into(), &y.into()));
        }
        let b0 = contribution_box(&p2(), &big(&[0, 0, 0]));
        assert!(b0.contains(&0.into(), &0.into()));
    }

    #[test]
    fn example_fan_box_covers_parallelograms() {
        let f = StackyFan::from_pairs(&[(1, 1), (0, 1), (-1, 0), (0, -1), (1, -1)]).unwrap();
        let b = contribution_box(&f, &big(&[0, 0, 0, 0, 0]));
        // |f(v_1)| <= 1 and |f(v_5)| <= 1 give f = (1, 0) and (0, 1), etc.
        for (x, y) in [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1)] {
            assert!(b.contains(&x.into(), &y.into()));
        }
    }

    #[test]
    fn disconnected_pattern_outside_parallelograms() {
        // Here f = (1, 0) gives a pattern with two arcs although |f(v_i)| is
        // large; the quadruple polygons must still cover it.
        let f = StackyFan::from_pairs(&[(1, 0), (10, 1), (-4, 1), (-4, -1), (10, -1)]).unwrap();
        let a = big(&[-2, 0, 0, 0, 0]);
        let p = pattern_at(&f, &a, &LinearFunctional2::new(1, 0));
        assert_eq!(p.arcs(5), 2);
        let b = contribution_box(&f, &a);
        assert!(b.contains(&1.into(), &0.into()));
        assert_eq!(cohomology_of_divisor(&f, &a), cohomology_in_box(&f, &a, &b.doubled()));
    }

    #[test]
    fn product_line_is_trivial() {
        let sq = StackyFan::from_pairs(&[(1, 0), (0, 1), (-1, 0), (0, -1)]).unwrap();
        let pic = PicardGroup::new(&sq);
        for a in [-3, 0, 3] {
            // O(a, -1): E_1 ~ E_3 carries a, E_2 ~ E_4 carries -1.
            let c = pic.class_of_i64(&[a, -1, 0, 0]).unwrap();
            assert!(cohomology_dims(&pic, &c).unwrap().is_zero());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sweep_matches_pointwise(f in arb_fan(6, 4), a in proptest::collection::vec(-4i64..=4, 6)) {
            let a = big(&a[..f.n()]);
            let b = contribution_box(&f, &a);
            prop_assert_eq!(cohomology_in_box(&f, &a, &b), naive(&f, &a, &b));
        }

        #[test]
        fn box_sufficiency(f in arb_fan(7, 4), a in proptest::collection::vec(-4i64..=4, 7)) {
            let a = big(&a[..f.n()]);
            let b = contribution_box(&f, &a);
            prop_assert_eq!(cohomology_in_box(&f, &a, &b), cohomology_in_box(&f, &a, &b.doubled()));
        }

        #[test]
        fn representative_independence(f in arb_fan(6, 4), a in proptest::collection::vec(-4i64..=4, 6), w in proptest::collection::vec((-3i64..=3, -3i64..=3), 20)) {
            let a = big(&a[..f.n()]);
            let base = cohomology_of_divisor(&f, &a);
            for (w1, w2) in w {
                let shifted: Vec<BigInt> = a.iter().zip(f.evaluate(&LinearFunctional2::new(w1, w2))).map(|(x, y)| x + y).collect();
                prop_assert_eq!(cohomology_of_divisor(&f, &shifted), base);
            }
        }

        #[test]
        fn large_functionals_follow_their_own_sign(f in arb_fan(7, 5), a in proptest::collection::vec(-4i64..=4, 7), w1 in -30i64..=30, w2 in -30i64..=30) {
            let a = big(&a[..f.n()]);
            let big_a: BigInt = a.iter().map(|x| x.abs()).max().unwrap();
            let g = LinearFunctional2::new(w1, w2);
            let vals = f.evaluate(&g);
            prop_assume!(vals.iter().all(|v| v.abs() > big_a));
            let p = pattern_at(&f, &a, &g);
            for (i, v) in vals.iter().enumerate() {
                prop_assert_eq!(p.contains(i), v.is_positive());
            }
        }

        #[test]
        fn h0_iff_p0_has_lattice_points(f in arb_fan(6, 4), a in proptest::collection::vec(-4i64..=4, 6)) {
            use crate::lattice::{integer_feasible, Constraint, ConstraintSystem};
            let a = big(&a[..f.n()]);
            let cs: Vec<Constraint> = (0..f.n())
                .map(|i| {
                    let v = f.vector(i);
                    Constraint::ge(&[v.x.clone(), v.y.clone()], -a[i].clone())
                })
                .collect();
            let feasible = integer_feasible(&ConstraintSystem::new(2, cs).unwrap()).unwrap().is_feasible();
            prop_assert_eq!(cohomology_of_divisor(&f, &a).h0 > 0, feasible);
        }
    }
}
