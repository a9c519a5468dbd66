//! Cone semigroups in M = Z^k ⊕ torsion: Γ-sets, decomposition,
//! saturation shifts and multiplicity points.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HtError, Result};
use crate::lattice::feasibility::{enumerate_bounded, solve};
use crate::lattice::fm::{self, HalfSpace};
use crate::lattice::{smith_normal_form, IntegerMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl Element {
    pub fn new(free: Vec<BigInt>, torsion: Vec<BigInt>) -> Self {
        Element { free, torsion }
    }

    pub fn from_i64(free: &[i64], torsion: &[i64]) -> Self {
        Element { free: free.iter().map(|&x| x.into()).collect(), torsion: torsion.iter().map(|&x| x.into()).collect() }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        write!(f, "({}", free.join(","))?;
        if !self.torsion.is_empty() {
            let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            write!(f, ";{}", t.join(","))?;
        }
        write!(f, ")")
    }
}

/// Generators `w_i` of M with a functional `h` positive on all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSemigroup {
    k: usize,
    torsion: Vec<BigInt>,
    generators: Vec<Element>,
    h: Vec<BigInt>,
    /// Inequalities `u · x >= 0` cutting out C, when k ≤ 3.
    facets: Option<Vec<Vec<BigInt>>>,
}

/// `p = Σ coefficients_j w_j` exactly in M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    pub point: Element,
    pub coefficients: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    pub points: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationShift {
    pub r: Element,
    pub coefficients: Vec<BigInt>,
    pub expressions: Vec<Expression>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub a: Element,
    pub b: Element,
    /// Generator indices subtracted, in order.
    pub steps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityPoint {
    pub relation: Vec<BigInt>,
    pub p1: Element,
    pub p: Element,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

impl ConeSemigroup {
    pub fn new(k: usize, torsion: Vec<BigInt>, generators: Vec<Element>, h: Vec<BigInt>) -> Result<Self> {
        let bad = |m: String| HtError::InvalidSemigroup(m);
        if k == 0 {
            return Err(bad("free rank must be positive".into()));
        }
        if generators.is_empty() {
            return Err(bad("at least one generator is required".into()));
        }
        if h.len() != k {
            return Err(HtError::LengthMismatch { expected: k, found: h.len() });
        }
        if let Some(d) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(bad(format!("torsion invariant {d} must be at least 2")));
        }
        let t = torsion.len();
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            if g.free.len() != k || g.torsion.len() != t {
                return Err(bad(format!("generator {} has the wrong shape", i + 1)));
            }
            if !dot(&h, &g.free).is_positive() {
                return Err(bad(format!("h is not positive on generator {}", i + 1)));
            }
            let torsion_part = g.torsion.iter().zip(&torsion).map(|(x, d)| x.mod_floor(d)).collect();
            gens.push(Element::new(g.free, torsion_part));
        }
        let mut s = ConeSemigroup { k, torsion, generators: gens, h, facets: None };
        let m = s.presentation();
        let snf = smith_normal_form(&m);
        if snf.rank() != k + t || !snf.invariants().iter().all(One::is_one) {
            return Err(bad("generators do not generate M".into()));
        }
        s.facets = s.compute_facets();
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn h(&self) -> &[BigInt] {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn height(&self, x: &Element) -> BigInt {
        dot(&self.h, &x.free)
    }

    /// Σ h(w_i).
    pub fn height_bound(&self) -> BigInt {
        self.generators.iter().map(|g| self.height(g)).sum()
    }

    pub fn zero(&self) -> Element {
        Element::new(vec![BigInt::zero(); self.k], vec![BigInt::zero(); self.torsion.len()])
    }

    fn reduce(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Element {
        let torsion = torsion.into_iter().zip(&self.torsion).map(|(x, d)| x.mod_floor(d)).collect();
        Element::new(free, torsion)
    }

    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<Element> {
        if free.len() != self.k || torsion.len() != self.torsion.len() {
            return Err(HtError::LengthMismatch {
                expected: self.k + self.torsion.len(),
                found: free.len() + torsion.len(),
            });
        }
        Ok(self.reduce(free, torsion))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.reduce(
            a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.reduce(
            a.free.iter().zip(&b.free).map(|(x, y)| x - y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x - y).collect(),
        )
    }

    pub fn scale(&self, a: &Element, c: &BigInt) -> Element {
        self.reduce(a.free.iter().map(|x| x * c).collect(), a.torsion.iter().map(|x| x * c).collect())
    }

    /// Σ c_j w_j.
    pub fn combine(&self, coefficients: &[BigInt]) -> Element {
        let mut acc = self.zero();
        for (c, g) in coefficients.iter().zip(&self.generators) {
            acc = self.add(&acc, &self.scale(g, c));
        }
        acc
    }

    /// (k + t) × (n + t): generator columns, then torsion relation columns.
    fn presentation(&self) -> IntegerMatrix {
        let (k, t, n) = (self.k, self.torsion.len(), self.n());
        let mut m = IntegerMatrix::zeros(k + t, n + t);
        for (j, g) in self.generators.iter().enumerate() {
            for (i, x) in g.free.iter().chain(&g.torsion).enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        for (j, d) in self.torsion.iter().enumerate() {
            m[(k + j, n + j)] = d.clone();
        }
        m
    }

    fn compute_facets(&self) -> Option<Vec<Vec<BigInt>>> {
        let ws: Vec<&Vec<BigInt>> = self.generators.iter().map(|g| &g.free).collect();
        let mut cands: Vec<Vec<BigInt>> = Vec::new();
        match self.k {
            1 => cands.push(vec![BigInt::one()]),
            2 => {
                for w in &ws {
                    cands.push(vec![-w[1].clone(), w[0].clone()]);
                }
            }
            3 => {
                for (i, a) in ws.iter().enumerate() {
                    for b in &ws[i + 1..] {
                        let c = cross(a, b);
                        if c.iter().any(|x| !x.is_zero()) {
                            cands.push(c);
                        }
                    }
                }
            }
            _ => return None,
        }
        let mut facets: Vec<Vec<BigInt>> = Vec::new();
        for c in cands {
            for u in [c.clone(), c.iter().map(|x| -x).collect()] {
                if ws.iter().all(|w| !dot(&u, w).is_negative()) {
                    let g = u.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                    let u: Vec<BigInt> = u.iter().map(|x| x / &g).collect();
                    if !facets.contains(&u) {
                        facets.push(u);
                    }
                }
            }
        }
        facets.sort();
        Some(facets)
    }

    /// Is the free part in C = Σ R≥0 w_i.
    pub fn in_cone(&self, x: &Element) -> bool {
        match &self.facets {
            Some(f) => f.iter().all(|u| !dot(u, &x.free).is_negative()),
            None => self.in_cone_by_elimination(&x.free),
        }
    }

    /// λ ≥ 0 with W λ = x, with the affine solution set of W λ = x
    /// parameterized through the Smith form of W.
    fn in_cone_by_elimination(&self, x: &[BigInt]) -> bool {
        let n = self.n();
        let mut w = IntegerMatrix::zeros(self.k, n);
        for (j, g) in self.generators.iter().enumerate() {
            for i in 0..self.k {
                w[(i, j)] = g.free[i].clone();
            }
        }
        let s = smith_normal_form(&w);
        let ux = s.u.mul_vec(x);
        let rank = s.rank();
        if ux[rank..].iter().any(|v| !v.is_zero()) {
            return false;
        }
        // λ = V μ with μ_i = (Ux)_i / d_i for i < rank and μ_i free after.
        let d = s.invariants();
        let den = d.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.clone()));
        let mu0: Vec<BigInt> =
            (0..n).map(|i| if i < rank { &ux[i] * (&den / &d[i]) } else { BigInt::zero() }).collect();
        let free = n - rank;
        // den λ = V mu0 + V_free ν ≥ 0 (ν scaled by den).
        let base = s.v.mul_vec(&mu0);
        let rows: Vec<HalfSpace> = (0..n)
            .map(|i| HalfSpace::new((rank..n).map(|j| s.v[(i, j)].clone()).collect(), -base[i].clone()))
            .collect();
        if free == 0 {
            return rows.iter().all(|r| r.is_constant() && !r.bound.is_positive());
        }
        fm::rational_feasible(&rows, free)
    }

    /// Lattice points of C with height `< bound` (or `<= bound`), all
    /// torsion cosets, ordered by (height, free, torsion).
    pub fn cone_points_below(&self, bound: &BigInt, inclusive: bool) -> Vec<Element> {
        let k = self.k;
        // C ∩ {h ≤ bound} lies in conv{0, bound · w_i / h(w_i)}.
        let mut lo = vec![BigRational::zero(); k];
        let mut hi = vec![BigRational::zero(); k];
        for g in &self.generators {
            let hw = self.height(g);
            for i in 0..k {
                let v = BigRational::new(bound * &g.free[i], hw.clone());
                if v < lo[i] {
                    lo[i] = v.clone();
                }
                if v > hi[i] {
                    hi[i] = v;
                }
            }
        }
        let mut rows = Vec::new();
        for i in 0..k {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            rows.push(HalfSpace::new(e.clone(), fm::ceil(&lo[i])));
            rows.push(HalfSpace::new(e.iter().map(|x| -x).collect(), -fm::floor(&hi[i])));
        }
        let neg_h: Vec<BigInt> = self.h.iter().map(|x| -x).collect();
        let cap = if inclusive { bound.clone() } else { bound - 1 };
        rows.push(HalfSpace::new(neg_h, -cap));
        rows.push(HalfSpace::new(self.h.clone(), BigInt::zero()));
        let mut out = Vec::new();
        for free in enumerate_bounded(&rows, k) {
            let probe = Element::new(free.clone(), vec![]);
            if !self.in_cone(&probe) {
                continue;
            }
            for tor in self.torsion_cosets() {
                out.push(Element::new(free.clone(), tor));
            }
        }
        out.sort_by(|a, b| self.height(a).cmp(&self.height(b)).then_with(|| a.cmp(b)));
        out
    }

    fn torsion_cosets(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut r = BigInt::zero();
                while &r < d {
                    let mut p = prefix.clone();
                    p.push(r.clone());
                    next.push(p);
                    r += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Γ = {p ∈ C ∩ M : h(p) < Σ h(w_i)}.
    pub fn gamma_set(&self) -> GammaSet {
        GammaSet { points: self.cone_points_below(&self.height_bound(), false) }
    }

    /// Some integer coefficients with Σ c_j w_j = p exactly, minimizing
    /// max |c_j|, then Σ |c_j|, then lexicographically.
    pub fn integer_expression(&self, p: &Element) -> Result<Vec<BigInt>> {
        let (k, t, n) = (self.k, self.torsion.len(), self.n());
        let m = self.presentation();
        let s = smith_normal_form(&m);
        let rhs: Vec<BigInt> = p.free.iter().chain(&p.torsion).cloned().collect();
        let up = s.u.mul_vec(&rhs);
        let d = s.invariants();
        let rank = d.len();
        debug_assert_eq!(rank, k + t);
        let mut y = vec![BigInt::zero(); n + t];
        for i in 0..rank {
            let (q, r) = up[i].div_rem(&d[i]);
            if !r.is_zero() {
                return Err(HtError::InvalidSemigroup("element is not in the generated group".into()));
            }
            y[i] = q;
        }
        let particular = s.v.mul_vec(&y);
        let c0: Vec<BigInt> = particular[..n].to_vec();
        let kernel: Vec<Vec<BigInt>> = s.kernel_basis().into_iter().map(|v| v[..n].to_vec()).collect();
        let dim = kernel.len();
        if dim == 0 {
            return Ok(c0);
        }
        // Rows bounding |c0 + K μ|_∞ ≤ bound.
        let boxed = |bound: &BigInt| -> Vec<HalfSpace> {
            let mut rows = Vec::with_capacity(2 * n);
            for j in 0..n {
                let coeffs: Vec<BigInt> = kernel.iter().map(|kv| kv[j].clone()).collect();
                rows.push(HalfSpace::new(coeffs.clone(), -bound - &c0[j]));
                rows.push(HalfSpace::new(coeffs.iter().map(|x| -x).collect(), &c0[j] - bound));
            }
            rows
        };
        let mut lo = BigInt::zero();
        let mut hi: BigInt = c0.iter().map(|x| x.abs()).max().unwrap_or_default();
        while lo < hi {
            let mid: BigInt = (&lo + &hi) / 2;
            if solve(&boxed(&mid), dim).is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let candidates = enumerate_bounded(&boxed(&lo), dim);
        let best = candidates
            .into_iter()
            .map(|mu| {
                (0..n)
                    .map(|j| &c0[j] + kernel.iter().zip(&mu).map(|(kv, m)| &kv[j] * m).sum::<BigInt>())
                    .collect::<Vec<BigInt>>()
            })
            .min_by(|a, b| {
                let l1 = |v: &Vec<BigInt>| v.iter().map(|x| x.abs()).sum::<BigInt>();
                l1(a).cmp(&l1(b)).then_with(|| a.cmp(b))
            })
            .expect("the bound was shown feasible");
        debug_assert_eq!(&self.combine(&best), p);
        Ok(best)
    }

    /// r = Σ a_j w_j with a_j the largest |coefficient| of w_j over the
    /// expressions of Γ; then r + (C ∩ M) ⊆ FS.
    pub fn saturation_shift(&self) -> Result<SaturationShift> {
        let gamma = self.gamma_set();
        let mut a = vec![BigInt::zero(); self.n()];
        let mut expressions = Vec::with_capacity(gamma.points.len());
        for p in gamma.points {
            let c = self.integer_expression(&p)?;
            for (aj, cj) in a.iter_mut().zip(&c) {
                if cj.abs() > *aj {
                    *aj = cj.abs();
                }
            }
            expressions.push(Expression { point: p, coefficients: c });
        }
        Ok(SaturationShift { r: self.combine(&a), coefficients: a, expressions })
    }

    /// Points p of M whose free part lies in a half-open parallelepiped
    /// Σ [0,1) w_j over some linearly independent k-subset of generators.
    /// These subcones cover C, so each x ∈ C ∩ M is p + Σ c_j w_j with c_j ≥ 0.
    pub fn parallelepiped_points(&self) -> Vec<Element> {
        let (k, n) = (self.k, self.n());
        let mut seen = std::collections::BTreeSet::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut w = IntegerMatrix::zeros(k, k);
            for (col, &j) in idx.iter().enumerate() {
                for i in 0..k {
                    w[(i, col)] = self.generators[j].free[i].clone();
                }
            }
            let s = smith_normal_form(&w);
            let d = s.invariants();
            if d.len() == k {
                // Coset representatives x = U^{-1} y, 0 <= y_i < d_i.
                let mut ys = vec![vec![]];
                for di in &d {
                    let mut next = Vec::new();
                    for y in &ys {
                        let mut t = BigInt::zero();
                        while &t < di {
                            let mut y2: Vec<BigInt> = y.clone();
                            y2.push(t.clone());
                            next.push(y2);
                            t += 1;
                        }
                    }
                    ys = next;
                }
                for y in ys {
                    let x = s.u_inv.mul_vec(&y);
                    let ux = s.u.mul_vec(&x);
                    let mu: Vec<BigRational> =
                        ux.iter().zip(&d).map(|(a, b)| BigRational::new(a.clone(), b.clone())).collect();
                    let lambda: Vec<BigRational> = (0..k)
                        .map(|i| (0..k).map(|j| BigRational::from_integer(s.v[(i, j)].clone()) * &mu[j]).sum())
                        .collect();
                    let frac: Vec<BigRational> = lambda.iter().map(|l| l - l.floor()).collect();
                    let p: Vec<BigInt> = (0..k)
                        .map(|i| {
                            let v: BigRational =
                                (0..k).map(|j| BigRational::from_integer(w[(i, j)].clone()) * &frac[j]).sum();
                            v.to_integer()
                        })
                        .collect();
                    seen.insert(p);
                }
            }
            // Next k-subset of 0..n.
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        let cosets = self.torsion_cosets();
        seen.into_iter().flat_map(|p| cosets.iter().map(move |t| Element::new(p.clone(), t.clone()))).collect()
    }

    /// Like `saturation_shift`, built from `parallelepiped_points` instead of
    /// Γ. The result also satisfies r + (C ∩ M) ⊆ FS and stays cheap when Γ is
    /// large.
    pub fn parallelepiped_shift(&self) -> Result<SaturationShift> {
        let mut a = vec![BigInt::zero(); self.n()];
        let mut expressions = Vec::new();
        for p in self.parallelepiped_points() {
            let c = self.integer_expression(&p)?;
            for (aj, cj) in a.iter_mut().zip(&c) {
                if cj.abs() > *aj {
                    *aj = cj.abs();
                }
            }
            expressions.push(Expression { point: p, coefficients: c });
        }
        Ok(SaturationShift { r: self.combine(&a), coefficients: a, expressions })
    }

    /// x = a + b with a ∈ FS and h(b) < Σ h(w_i), subtracting the
    /// lowest-index generator that keeps the remainder in C.
    pub fn decompose(&self, x: &Element) -> Result<Decomposition> {
        if !self.in_cone(x) {
            return Err(HtError::NotInCone);
        }
        let bound = self.height_bound();
        let mut b = x.clone();
        let mut a = self.zero();
        let mut steps = Vec::new();
        while self.height(&b) >= bound {
            let j = (0..self.n())
                .find(|&j| self.in_cone(&self.sub(&b, &self.generators[j])))
                .expect("some generator can be removed above the height bound");
            b = self.sub(&b, &self.generators[j]);
            a = self.add(&a, &self.generators[j]);
            steps.push(j);
        }
        Ok(Decomposition { a, b, steps })
    }

    /// First Smith kernel vector of the generators, first nonzero entry
    /// positive.
    pub fn relation(&self) -> Result<Vec<BigInt>> {
        if self.n() <= self.k {
            return Err(HtError::NoRelation);
        }
        let s = smith_normal_form(&self.presentation());
        let v = s.kernel_basis().into_iter().next().ok_or(HtError::NoRelation)?;
        let mut rel: Vec<BigInt> = v[..self.n()].to_vec();
        if rel.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            rel.iter_mut().for_each(|x| *x = -x.clone());
        }
        debug_assert!(self.combine(&rel) == self.zero());
        Ok(rel)
    }

    /// p = (m + 1) p1 where p1 = Σ_{a_i > 0} a_i w_i for the relation a.
    pub fn multiplicity_point(&self, m: &BigInt) -> Result<MultiplicityPoint> {
        if !m.is_positive() {
            return Err(HtError::NonPositiveM);
        }
        let relation = self.relation()?;
        let pos: Vec<BigInt> =
            relation.iter().map(|a| if a.is_positive() { a.clone() } else { BigInt::zero() }).collect();
        let p1 = self.combine(&pos);
        let p = self.scale(&p1, &(m + 1));
        Ok(MultiplicityPoint { relation, p1, p })
    }

    /// Number of c ∈ Z≥0^n with Σ c_i w_i = x, stopping once `cap` is reached.
    pub fn representation_count(&self, x: &Element, cap: u64) -> u64 {
        let mut memo = HashMap::new();
        self.count_from(x, 0, cap, &mut memo)
    }

    pub fn in_fs(&self, x: &Element) -> bool {
        self.representation_count(x, 1) >= 1
    }

    fn count_from(&self, x: &Element, j: usize, cap: u64, memo: &mut HashMap<(Element, usize), u64>) -> u64 {
        if j == self.n() {
            return u64::from(x.free.iter().all(Zero::is_zero) && x.torsion.iter().all(Zero::is_zero));
        }
        if self.height(x).is_negative() {
            return 0;
        }
        if let Some(&v) = memo.get(&(x.clone(), j)) {
            return v;
        }
        let w = &self.generators[j];
        let mut total = 0u64;
        let mut rest = x.clone();
        while !self.height(&rest).is_negative() && total < cap {
            total = total.saturating_add(self.count_from(&rest, j + 1, cap - total, memo));
            rest = self.sub(&rest, w);
        }
        let total = total.min(cap);
        memo.insert((x.clone(), j), total);
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(gens: &[i64]) -> ConeSemigroup {
        ConeSemigroup::new(1, vec![], gens.iter().map(|&g| Element::from_i64(&[g], &[])).collect(), vec![BigInt::one()])
            .unwrap()
    }

    fn e(x: i64) -> Element {
        Element::from_i64(&[x], &[])
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(z(&[2, 3]).gamma_set().points, (0..5).map(e).collect::<Vec<_>>());
        assert_eq!(z(&[1]).gamma_set().points, vec![e(0)]);
        let q = ConeSemigroup::new(
            2,
            vec![],
            vec![Element::from_i64(&[1, 0], &[]), Element::from_i64(&[0, 1], &[])],
            big(&[1, 1]),
        )
        .unwrap();
        assert_eq!(
            q.gamma_set().points,
            vec![Element::from_i64(&[0, 0], &[]), Element::from_i64(&[0, 1], &[]), Element::from_i64(&[1, 0], &[])]
        );
    }

    #[test]
    fn validation() {
        assert!(ConeSemigroup::new(1, vec![], vec![e(2), e(4)], big(&[1])).is_err());
        assert!(ConeSemigroup::new(1, vec![], vec![e(-1), e(2)], big(&[1])).is_err());
        assert!(ConeSemigroup::new(1, vec![BigInt::from(2)], vec![Element::from_i64(&[1], &[0])], big(&[1])).is_err());
        assert!(ConeSemigroup::new(
            1,
            vec![BigInt::from(2)],
            vec![Element::from_i64(&[1], &[0]), Element::from_i64(&[1], &[1])],
            big(&[1])
        )
        .is_ok());
    }

    #[test]
    fn decompose_examples() {
        let s = z(&[2, 3]);
        let d = s.decompose(&e(4)).unwrap();
        assert_eq!((d.a, d.b), (e(0), e(4)));
        let d = s.decompose(&e(7)).unwrap();
        assert_eq!((d.a, d.b), (e(4), e(3)));
        let d = s.decompose(&e(10)).unwrap();
        assert_eq!((d.a, d.b), (e(6), e(4)));
        assert_eq!(s.decompose(&e(-1)), Err(HtError::NotInCone));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(z(&[1]).saturation_shift().unwrap().r, e(0));
        let s = z(&[2, 3]).saturation_shift().unwrap();
        assert_eq!(s.coefficients, big(&[2, 1]));
        assert_eq!(s.r, e(7));
        let four = s.expressions.iter().find(|x| x.point == e(4)).unwrap();
        assert_eq!(four.coefficients, big(&[2, 0]));
        let one = s.expressions.iter().find(|x| x.point == e(1)).unwrap();
        assert_eq!(one.coefficients, big(&[-1, 1]));
        let q = ConeSemigroup::new(
            2,
            vec![],
            vec![Element::from_i64(&[1, 0], &[]), Element::from_i64(&[0, 1], &[])],
            big(&[1, 1]),
        )
        .unwrap();
        assert_eq!(q.saturation_shift().unwrap().r, Element::from_i64(&[1, 1], &[]));
    }

    #[test]
    fn multiplicity_examples() {
        let s = z(&[1, 2]);
        let mp = s.multiplicity_point(&BigInt::from(2)).unwrap();
        assert_eq!(mp.relation, big(&[2, -1]));
        assert_eq!(mp.p1, e(2));
        assert_eq!(mp.p, e(6));
        assert_eq!(s.representation_count(&e(6), 100), 4);
        let t = z(&[1, 1]);
        let mp = t.multiplicity_point(&BigInt::from(2)).unwrap();
        assert_eq!(mp.p, e(3));
        assert_eq!(t.representation_count(&e(3), 100), 4);
        assert_eq!(z(&[1]).multiplicity_point(&BigInt::from(2)), Err(HtError::NoRelation));
    }

    #[test]
    fn cone_tests_agree_in_rank_two() {
        let s = ConeSemigroup::new(
            2,
            vec![],
            vec![Element::from_i64(&[2, 1], &[]), Element::from_i64(&[1, 3], &[]), Element::from_i64(&[1, 0], &[])],
            big(&[1, 1]),
        )
        .unwrap();
        for x in -4..=6 {
            for y in -4..=6 {
                let p = big(&[x, y]);
                assert_eq!(s.in_cone(&Element::new(p.clone(), vec![])), s.in_cone_by_elimination(&p));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn shift_containment_in_rank_one(gens in proptest::collection::vec(1i64..=7, 1..4)) {
            let g = gens.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
            prop_assume!(g == 1);
            let s = z(&gens);
            let sh = s.saturation_shift().unwrap();
            prop_assert!(s.in_fs(&sh.r));
            for x in 0..=40 {
                prop_assert!(s.in_fs(&s.add(&sh.r, &e(x))));
            }
        }
    }
}
