//! Pic as Z^n modulo the relation rows, with canonical coordinates.
//!
//! Coordinates are either those of a basis E_S of boundary divisors (when
//! the complementary pair of rays is unimodular, which forces Pic to be
//! free) or the Smith-normal-form coordinates otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use crate::error::{HtError, Result};
use crate::fan::{LinearFunctional2, StackyFan};
use crate::lattice::{smith_normal_form, IntegerMatrix};

/// A class in Pic: free coordinates plus torsion residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineBundleClass {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
    fingerprint: u64,
}

impl LineBundleClass {
    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn norm_squared(&self) -> BigInt {
        self.free.iter().map(|x| x * x).sum()
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        write!(f, "({}", free.join(","))?;
        if !self.torsion.is_empty() {
            let tor: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            write!(f, ";{}", tor.join(","))?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardGroup {
    fan: StackyFan,
    torsion: Vec<BigInt>,
    basis: Option<Vec<usize>>,
    /// n × r: free coordinates of each E_i.
    proj_free: IntegerMatrix,
    /// n × t: torsion coordinates of each E_i before reduction.
    proj_tor: IntegerMatrix,
    /// r × n and t × n: divisors lifting the coordinate generators.
    lift_free: IntegerMatrix,
    lift_tor: IntegerMatrix,
    fingerprint: u64,
}

fn unimodular_pair(fan: &StackyFan, j: usize, k: usize) -> bool {
    fan.vector(j).det(fan.vector(k)).abs().is_one()
}

/// Lexicographically first S whose complement pair is unimodular.
fn default_basis(fan: &StackyFan) -> Option<Vec<usize>> {
    let n = fan.n();
    let mut best: Option<Vec<usize>> = None;
    for j in 0..n {
        for k in j + 1..n {
            if unimodular_pair(fan, j, k) {
                let s: Vec<usize> = (0..n).filter(|&i| i != j && i != k).collect();
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
        }
    }
    best
}

pub fn picard_group(fan: &StackyFan) -> PicardGroup {
    PicardGroup::new(fan)
}

impl PicardGroup {
    pub fn new(fan: &StackyFan) -> Self {
        match default_basis(fan) {
            Some(s) => Self::from_basis(fan, s),
            None => Self::from_snf(fan),
        }
    }

    /// Use the boundary divisors `E_s`, `s ∈ basis` (0-based), as coordinates.
    pub fn with_basis(fan: &StackyFan, basis: &[usize]) -> Result<Self> {
        let n = fan.n();
        let mut s = basis.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != basis.len() || s.iter().any(|&i| i >= n) {
            return Err(HtError::InvalidBasis("indices must be distinct and within the fan".into()));
        }
        if s.len() + 2 != n {
            return Err(HtError::InvalidBasis(format!("a basis needs {} divisors, got {}", n - 2, s.len())));
        }
        let rest: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
        if !unimodular_pair(fan, rest[0], rest[1]) {
            return Err(HtError::InvalidBasis(format!(
                "complementary rays {} and {} do not form a lattice basis",
                rest[0] + 1,
                rest[1] + 1
            )));
        }
        Ok(Self::from_basis(fan, basis.to_vec()))
    }

    fn from_basis(fan: &StackyFan, basis: Vec<usize>) -> Self {
        let n = fan.n();
        let r = n - 2;
        let rest: Vec<usize> = (0..n).filter(|i| !basis.contains(i)).collect();
        let (j, k) = (rest[0], rest[1]);
        let (vj, vk) = (fan.vector(j), fan.vector(k));
        let det = vj.det(vk);
        let mut proj_free = IntegerMatrix::zeros(n, r);
        for i in 0..n {
            // f with f(v_j) = -z_j, f(v_k) = -z_k for z = e_i, via Cramer.
            let zj = if i == j { BigInt::one() } else { BigInt::zero() };
            let zk = if i == k { BigInt::one() } else { BigInt::zero() };
            let w1 = (-&zj * &vk.y + &zk * &vj.y) / &det;
            let w2 = (-&zk * &vj.x + &zj * &vk.x) / &det;
            let f = LinearFunctional2 { w1, w2 };
            for (col, &s) in basis.iter().enumerate() {
                let zs = if i == s { BigInt::one() } else { BigInt::zero() };
                proj_free[(i, col)] = zs + f.eval(fan.vector(s));
            }
        }
        let mut lift_free = IntegerMatrix::zeros(r, n);
        for (row, &s) in basis.iter().enumerate() {
            lift_free[(row, s)] = BigInt::one();
        }
        Self::assemble(
            fan,
            Vec::new(),
            Some(basis),
            proj_free,
            IntegerMatrix::zeros(n, 0),
            lift_free,
            IntegerMatrix::zeros(0, n),
        )
    }

    fn from_snf(fan: &StackyFan) -> Self {
        let n = fan.n();
        let rel = IntegerMatrix::from_rows(&fan.relation_rows()).expect("two rows of length n");
        let s = smith_normal_form(&rel);
        let d = s.invariants();
        assert_eq!(d.len(), 2, "a complete fan spans the plane");
        let tor_idx: Vec<usize> = (0..2).filter(|&i| d[i] > BigInt::one()).collect();
        let torsion: Vec<BigInt> = tor_idx.iter().map(|&i| d[i].clone()).collect();
        let r = n - 2;
        let mut proj_free = IntegerMatrix::zeros(n, r);
        let mut proj_tor = IntegerMatrix::zeros(n, tor_idx.len());
        for i in 0..n {
            for c in 0..r {
                proj_free[(i, c)] = s.v[(i, c + 2)].clone();
            }
            for (c, &t) in tor_idx.iter().enumerate() {
                proj_tor[(i, c)] = s.v[(i, t)].clone();
            }
        }
        let mut lift_free = IntegerMatrix::zeros(r, n);
        let mut lift_tor = IntegerMatrix::zeros(tor_idx.len(), n);
        for j in 0..n {
            for c in 0..r {
                lift_free[(c, j)] = s.v_inv[(c + 2, j)].clone();
            }
            for (c, &t) in tor_idx.iter().enumerate() {
                lift_tor[(c, j)] = s.v_inv[(t, j)].clone();
            }
        }
        Self::assemble(fan, torsion, None, proj_free, proj_tor, lift_free, lift_tor)
    }

    fn assemble(
        fan: &StackyFan,
        torsion: Vec<BigInt>,
        basis: Option<Vec<usize>>,
        proj_free: IntegerMatrix,
        proj_tor: IntegerMatrix,
        lift_free: IntegerMatrix,
        lift_tor: IntegerMatrix,
    ) -> Self {
        let mut h = Sha256::new();
        h.update(fan.fingerprint().to_be_bytes());
        match &basis {
            Some(b) => h.update(format!("basis{b:?}").as_bytes()),
            None => h.update(b"snf"),
        }
        let digest = h.finalize();
        let fingerprint = u64::from_be_bytes(digest[..8].try_into().expect("digest is 32 bytes"));
        PicardGroup { fan: fan.clone(), torsion, basis, proj_free, proj_tor, lift_free, lift_tor, fingerprint }
    }

    pub fn fan(&self) -> &StackyFan {
        &self.fan
    }

    pub fn n(&self) -> usize {
        self.fan.n()
    }

    pub fn free_rank(&self) -> usize {
        self.proj_free.cols()
    }

    pub fn torsion_invariants(&self) -> &[BigInt] {
        &self.torsion
    }

    /// 0-based indices of the boundary divisors used as coordinates, if any.
    pub fn basis(&self) -> Option<&[usize]> {
        self.basis.as_deref()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Free coordinates of each E_i, as an n × r matrix.
    pub fn projection_free(&self) -> &IntegerMatrix {
        &self.proj_free
    }

    /// Divisors lifting the free coordinate generators, as an r × n matrix.
    pub fn lift_free(&self) -> &IntegerMatrix {
        &self.lift_free
    }

    fn reduce(&self, torsion: Vec<BigInt>) -> Vec<BigInt> {
        torsion.into_iter().zip(&self.torsion).map(|(t, d)| t.mod_floor(d)).collect()
    }

    fn make(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> LineBundleClass {
        LineBundleClass { free, torsion: self.reduce(torsion), fingerprint: self.fingerprint }
    }

    pub fn check(&self, c: &LineBundleClass) -> Result<()> {
        if c.fingerprint != self.fingerprint {
            return Err(HtError::ForeignClass);
        }
        Ok(())
    }

    /// A class from coordinates; torsion residues are reduced.
    pub fn class(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<LineBundleClass> {
        if free.len() != self.free_rank() {
            return Err(HtError::LengthMismatch { expected: self.free_rank(), found: free.len() });
        }
        if torsion.len() != self.torsion.len() {
            return Err(HtError::LengthMismatch { expected: self.torsion.len(), found: torsion.len() });
        }
        Ok(self.make(free, torsion))
    }

    pub fn class_from_i64(&self, free: &[i64], torsion: &[i64]) -> Result<LineBundleClass> {
        self.class(free.iter().map(|&x| BigInt::from(x)).collect(), torsion.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(&self) -> LineBundleClass {
        self.make(vec![BigInt::zero(); self.free_rank()], vec![BigInt::zero(); self.torsion.len()])
    }

    pub fn class_of(&self, divisor: &[BigInt]) -> Result<LineBundleClass> {
        if divisor.len() != self.n() {
            return Err(HtError::LengthMismatch { expected: self.n(), found: divisor.len() });
        }
        Ok(self.make(self.proj_free.left_mul_vec(divisor), self.proj_tor.left_mul_vec(divisor)))
    }

    pub fn class_of_i64(&self, divisor: &[i64]) -> Result<LineBundleClass> {
        self.class_of(&divisor.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    /// Class of the boundary divisor E_i (0-based).
    pub fn generator(&self, i: usize) -> LineBundleClass {
        let mut e = vec![BigInt::zero(); self.n()];
        e[i] = BigInt::one();
        self.class_of(&e).expect("length n")
    }

    /// Some divisor in the class; all others differ by `Σ f(v_i) E_i`.
    pub fn divisor_representative(&self, c: &LineBundleClass) -> Result<Vec<BigInt>> {
        self.check(c)?;
        let mut d = self.lift_free.left_mul_vec(&c.free);
        if !self.torsion.is_empty() {
            for (x, y) in d.iter_mut().zip(self.lift_tor.left_mul_vec(&c.torsion)) {
                *x += y;
            }
        }
        Ok(d)
    }

    pub fn add(&self, a: &LineBundleClass, b: &LineBundleClass) -> Result<LineBundleClass> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.make(
            a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        ))
    }

    pub fn scale(&self, a: &LineBundleClass, k: &BigInt) -> Result<LineBundleClass> {
        self.check(a)?;
        Ok(self.make(a.free.iter().map(|x| x * k).collect(), a.torsion.iter().map(|x| x * k).collect()))
    }

    pub fn neg(&self, a: &LineBundleClass) -> Result<LineBundleClass> {
        self.scale(a, &BigInt::from(-1))
    }

    pub fn sub(&self, a: &LineBundleClass, b: &LineBundleClass) -> Result<LineBundleClass> {
        self.add(a, &self.neg(b)?)
    }

    /// Parse "(a,b,c)" or "(a,b;t)" in this group's coordinates.
    pub fn parse_class(&self, text: &str) -> Result<LineBundleClass> {
        let bad = |m: &str| HtError::InvalidArgument(format!("class {text:?}: {m}"));
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected a parenthesized tuple"))?;
        let (free_s, tor_s) = match inner.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (inner, None),
        };
        let nums = |s: &str| -> Result<Vec<BigInt>> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|p| p.trim().parse::<BigInt>().map_err(|_| bad(&format!("{:?} is not an integer", p.trim()))))
                .collect()
        };
        let free = nums(free_s)?;
        let torsion = match tor_s {
            Some(s) => nums(s)?,
            None => vec![BigInt::zero(); self.torsion.len()],
        };
        if free.len() != self.free_rank() || torsion.len() != self.torsion.len() {
            return Err(bad(&format!(
                "expected {} free and {} torsion coordinates",
                self.free_rank(),
                self.torsion.len()
            )));
        }
        self.class(free, torsion)
    }
}
