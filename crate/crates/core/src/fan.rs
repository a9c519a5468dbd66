use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use sha2::{Digest, Sha256};

use crate::error::{HtError, Result};

pub const MAX_RAYS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVector2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticeVector2 { x: x.into(), y: y.into() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn det(&self, other: &LatticeVector2) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &LatticeVector2) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }
}

impl fmt::Display for LatticeVector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Integer functional `w1 * x + w2 * y` on the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFunctional2 {
    pub w1: BigInt,
    pub w2: BigInt,
}

impl LinearFunctional2 {
    pub fn new(w1: impl Into<BigInt>, w2: impl Into<BigInt>) -> Self {
        LinearFunctional2 { w1: w1.into(), w2: w2.into() }
    }

    pub fn eval(&self, v: &LatticeVector2) -> BigInt {
        &self.w1 * &v.x + &self.w2 * &v.y
    }

    pub fn is_zero(&self) -> bool {
        self.w1.is_zero() && self.w2.is_zero()
    }
}

/// 0-based pair `i < j` with `v_j` a negative multiple of `v_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CollinearPair {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StackyFan {
    vectors: Vec<LatticeVector2>,
}

/// Angular order around the origin, starting at `base` and turning
/// counterclockwise.
fn angular_cmp(base: &LatticeVector2, a: &LatticeVector2, b: &LatticeVector2) -> Ordering {
    let half = |v: &LatticeVector2| {
        let d = base.det(v);
        if d.is_positive() || (d.is_zero() && base.dot(v).is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let d = a.det(b);
        if d.is_positive() {
            Ordering::Less
        } else if d.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Check the stacky-fan invariants and sort counterclockwise starting at
/// the first input vector.
pub fn validate_fan(vectors: Vec<LatticeVector2>) -> Result<StackyFan> {
    let n = vectors.len();
    if n < 3 {
        return Err(HtError::TooFewRays { count: n });
    }
    if n > MAX_RAYS {
        return Err(HtError::TooManyRays { count: n });
    }
    if let Some(index) = vectors.iter().position(LatticeVector2::is_zero) {
        return Err(HtError::ZeroVector { index });
    }
    for i in 0..n {
        for j in i + 1..n {
            if vectors[i].det(&vectors[j]).is_zero() && vectors[i].dot(&vectors[j]).is_positive() {
                return Err(HtError::DuplicateRay { first: i, second: j });
            }
        }
    }
    let base = vectors[0].clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| angular_cmp(&base, &vectors[a], &vectors[b]));
    for k in 0..n {
        let (a, b) = (order[k], order[(k + 1) % n]);
        if !vectors[a].det(&vectors[b]).is_positive() {
            return Err(HtError::NotComplete { first: a, second: b });
        }
    }
    Ok(StackyFan { vectors: order.into_iter().map(|i| vectors[i].clone()).collect() })
}

impl StackyFan {
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        validate_fan(pairs.iter().map(|&(x, y)| LatticeVector2::new(x, y)).collect())
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[LatticeVector2] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &LatticeVector2 {
        &self.vectors[i]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    /// Values `f(v_1), ..., f(v_n)`.
    pub fn evaluate(&self, f: &LinearFunctional2) -> Vec<BigInt> {
        self.vectors.iter().map(|v| f.eval(v)).collect()
    }

    /// The two relation rows `(x_i)_i` and `(y_i)_i`.
    pub fn relation_rows(&self) -> [Vec<BigInt>; 2] {
        [self.vectors.iter().map(|v| v.x.clone()).collect(), self.vectors.iter().map(|v| v.y.clone()).collect()]
    }

    pub fn collinear_pairs(&self) -> Vec<CollinearPair> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.vectors[i], &self.vectors[j]);
                if a.det(b).is_zero() && a.dot(b).is_negative() {
                    out.push(CollinearPair { i, j });
                }
            }
        }
        out
    }

    pub fn is_collinear_pair(&self, i: usize, j: usize) -> bool {
        i < self.n()
            && j < self.n()
            && self.vectors[i].det(&self.vectors[j]).is_zero()
            && self.vectors[i].dot(&self.vectors[j]).is_negative()
    }

    pub fn max_abs_coordinate(&self) -> BigInt {
        self.vectors.iter().flat_map(|v| [v.x.abs(), v.y.abs()]).max().unwrap_or_default()
    }

    /// Stable 64-bit digest of the ordered vectors.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Sha256::new();
        for v in &self.vectors {
            h.update(format!("{},{};", v.x, v.y).as_bytes());
        }
        let digest = h.finalize();
        u64::from_be_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
    }
}

impl fmt::Display for StackyFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vectors.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
