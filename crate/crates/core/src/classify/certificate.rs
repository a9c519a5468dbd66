//! Radius bound for the finite case: every H-trivial class has free part of
//! Euclidean norm at most `d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{HtError, Result};
use crate::forbidden::DeltaFamily;
use crate::index_set::IndexSet;
use crate::picard::{LineBundleClass, PicardGroup};
use crate::semigroup::{ConeSemigroup, Element};

const SQRT_BITS: u32 = 40;
const MAX_CELLS: u64 = 4_000_000;

/// Inequality `coefficients · x >= 0` on free coordinates, valid on Z_I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetNormal {
    /// The circuit as a divisor-space functional ℓ with Σ ℓ_i v_i = 0.
    pub circuit: Vec<BigInt>,
    pub coefficients: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCertificate {
    pub set: IndexSet,
    pub normals: Vec<FacetNormal>,
    /// Functional used as the semigroup height.
    pub height: Vec<BigInt>,
    /// q_I = -Σ_{i ∉ I} E_i.
    pub base: LineBundleClass,
    /// Saturation shift of the semigroup generated by ±E_i.
    pub shift: Vec<BigInt>,
    /// r_I = q_I + shift; r_I + (Z_I ∩ Pic) lies in FS_I.
    pub r: LineBundleClass,
    /// Upper bound for max_i h_{I,i}(r_I).
    pub a_upper: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub sets: Vec<SetCertificate>,
    /// Cells of the cube-surface subdivision used for epsilon.
    pub cells: u64,
    /// Lower bound for min over the unit sphere of max_I h_I.
    pub epsilon: BigRational,
    /// Upper bound for max_{I,i} h_{I,i}(r_I).
    pub a: BigRational,
    /// Radius: integer with d·epsilon > a.
    pub d: BigInt,
}

/// Rational bounds lo <= sqrt(s) <= hi.
pub(crate) fn sqrt_bounds(s: &BigInt) -> (BigRational, BigRational) {
    let scale = BigInt::one() << SQRT_BITS;
    let t = s * &scale * &scale;
    let q = t.sqrt();
    let lo = BigRational::new(q.clone(), scale.clone());
    if &q * &q == t {
        (lo.clone(), lo)
    } else {
        (lo, BigRational::new(q + 1, scale))
    }
}

fn normalize(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Minimal nonnegative relations among u_i = ε_i v_i, as ℓ_i = ε_i μ_i.
fn circuits(pic: &PicardGroup, set: IndexSet) -> Vec<Vec<BigInt>> {
    let fan = pic.fan();
    let n = fan.n();
    let eps = |i: usize| if set.contains(i) { BigInt::one() } else { -BigInt::one() };
    let u: Vec<(BigInt, BigInt)> = (0..n)
        .map(|i| {
            let v = fan.vector(i);
            (eps(i) * &v.x, eps(i) * &v.y)
        })
        .collect();
    let det = |i: usize, j: usize| &u[i].0 * &u[j].1 - &u[i].1 * &u[j].0;
    let mut out = Vec::new();
    let mut push = |mu: Vec<(usize, BigInt)>| {
        let mut l = vec![BigInt::zero(); n];
        for (i, m) in mu {
            l[i] = eps(i) * m;
        }
        let l = normalize(l);
        if !out.contains(&l) {
            out.push(l);
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            let dot = &u[i].0 * &u[j].0 + &u[i].1 * &u[j].1;
            if det(i, j).is_zero() && dot.is_negative() {
                let gi = u[i].0.gcd(&u[i].1);
                let gj = u[j].0.gcd(&u[j].1);
                push(vec![(i, gj), (j, gi)]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mu = [det(j, k), det(k, i), det(i, j)];
                let pos = mu.iter().all(|m| m.is_positive());
                let neg = mu.iter().all(|m| m.is_negative());
                if pos || neg {
                    let [a, b, c] = mu.map(|m| m.abs());
                    push(vec![(i, a), (j, b), (k, c)]);
                }
            }
        }
    }
    out
}

/// Upper bound for c·x / |c| given |c|² = s.
fn unit_value_upper(dot: &BigInt, s: &BigInt) -> BigRational {
    let (lo, hi) = sqrt_bounds(s);
    let num = BigRational::from_integer(dot.clone());
    if dot.is_negative() {
        num / hi
    } else {
        num / lo
    }
}

fn set_certificate(pic: &PicardGroup, set: IndexSet) -> Result<SetCertificate> {
    let n = pic.n();
    let r = pic.free_rank();
    let normals: Vec<FacetNormal> = circuits(pic, set)
        .into_iter()
        .map(|circuit| {
            let coefficients = pic.lift_free().mul_vec(&circuit);
            FacetNormal { circuit, coefficients }
        })
        .filter(|f| f.coefficients.iter().any(|c| !c.is_zero()))
        .collect();
    let mut height = vec![BigInt::zero(); r];
    for f in &normals {
        for (h, c) in height.iter_mut().zip(&f.coefficients) {
            *h += c;
        }
    }
    let height = normalize(height);
    let signed: Vec<LineBundleClass> = (0..n)
        .map(|i| {
            let g = pic.generator(i);
            if set.contains(i) {
                g
            } else {
                pic.neg(&g).expect("own class")
            }
        })
        .collect();
    let gens: Vec<Element> = signed.iter().map(|c| Element::new(c.free().to_vec(), c.torsion().to_vec())).collect();
    let semigroup = ConeSemigroup::new(r, pic.torsion_invariants().to_vec(), gens, height.clone())?;
    let shift = semigroup.parallelepiped_shift()?;
    let q: Vec<BigInt> = (0..n).map(|i| if set.contains(i) { BigInt::zero() } else { -BigInt::one() }).collect();
    let base = pic.class_of(&q)?;
    let shift_class = pic.class(shift.r.free.clone(), shift.r.torsion.clone())?;
    let r_class = pic.add(&base, &shift_class)?;
    let a_upper = normals
        .iter()
        .map(|f| {
            let dot: BigInt = f.coefficients.iter().zip(r_class.free()).map(|(c, x)| c * x).sum();
            let s: BigInt = f.coefficients.iter().map(|c| c * c).sum();
            unit_value_upper(&dot, &s)
        })
        .max()
        .expect("a pointed full-dimensional cone has facets");
    Ok(SetCertificate { set, normals, height, base, shift: shift.coefficients, r: r_class, a_upper })
}

/// Subdivision depth of the cube faces: coordinates are multiples of 2^-FACE_BITS.
const FACE_BITS: u32 = 20;

/// Lower bound for min_{unit u} max_I min_i h_{I,i}(u). Each face of the
/// cube [-1,1]^r is split into cells; a cell of half-width h around g is
/// accepted once E(g) >= 2 h sqrt(r-1), since E is 1-Lipschitz and every unit
/// vector is a positive multiple (at most sqrt(r)) of a cube-surface point.
/// Returns the bound and the number of accepted cells.
fn epsilon_bound(r: usize, sets: &[SetCertificate]) -> Result<(BigRational, u64)> {
    let scale = BigInt::one() << SQRT_BITS;
    let to_small = |x: BigInt| x.to_i64().map(i128::from).ok_or(HtError::CertificateBudget);
    // Integer-scaled bounds floor(scale/|c|_hi) and ceil(scale/|c|_lo).
    let mut table: Vec<Vec<(Vec<i128>, i128, i128)>> = Vec::with_capacity(sets.len());
    for s in sets {
        let mut rows = Vec::with_capacity(s.normals.len());
        for f in &s.normals {
            let sq: BigInt = f.coefficients.iter().map(|c| c * c).sum();
            let (lo, hi) = sqrt_bounds(&sq);
            let num = BigRational::from_integer(scale.clone());
            let inv_lo = to_small((&num / hi).floor().to_integer())?;
            let inv_hi = to_small((&num / lo).ceil().to_integer())?;
            let c = f
                .coefficients
                .iter()
                .map(|c| {
                    to_small(c.clone()).and_then(|c| {
                        if c.abs() < 1 << 40 {
                            Ok(c)
                        } else {
                            Err(HtError::CertificateBudget)
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push((c, inv_lo, inv_hi));
        }
        table.push(rows);
    }
    let e_scaled = |g: &[i128]| -> i128 {
        table
            .iter()
            .map(|rows| {
                rows.iter()
                    .map(|(c, lo, hi)| {
                        let dot: i128 = c.iter().zip(g).map(|(a, b)| a * b).sum();
                        if dot < 0 {
                            dot * hi
                        } else {
                            dot * lo
                        }
                    })
                    .min()
                    .expect("nonempty")
            })
            .max()
            .expect("nonempty")
    };
    let side: i128 = 1 << FACE_BITS;
    let sq =
        to_small((sqrt_bounds(&BigInt::from(r - 1)).1 * BigRational::from_integer(scale.clone())).ceil().to_integer())?;
    let mut best: Option<i128> = None;
    let mut cells = 0u64;
    for axis in 0..r {
        for sign in [1i128, -1] {
            let mut g = vec![0i128; r];
            g[axis] = sign * side;
            let mut stack = vec![(g, side)];
            while let Some((g, h)) = stack.pop() {
                let e = e_scaled(&g);
                let slack = h * sq;
                if e >= 2 * slack || (h == 1 && e > slack) {
                    let b = e - slack;
                    best = Some(best.map_or(b, |x| x.min(b)));
                    cells += 1;
                    if cells > MAX_CELLS {
                        return Err(HtError::CertificateBudget);
                    }
                    continue;
                }
                if h == 1 {
                    return Err(HtError::CertificateBudget);
                }
                let half = h / 2;
                let others: Vec<usize> = (0..r).filter(|&j| j != axis).collect();
                for mask in 0..1usize << others.len() {
                    let mut child = g.clone();
                    for (bit, &j) in others.iter().enumerate() {
                        child[j] += if mask >> bit & 1 == 1 { half } else { -half };
                    }
                    stack.push((child, half));
                }
            }
        }
    }
    let best = best.expect("at least two faces");
    let e = BigRational::new(BigInt::from(best), scale * BigInt::from(side));
    Ok((e / sqrt_bounds(&BigInt::from(r)).1, cells))
}

/// Certificate that every H-trivial class satisfies |free| <= d.
/// Fails with `CertificateNotApplicable` when the fan has a collinear pair.
pub fn bound_certificate(pic: &PicardGroup) -> Result<BoundCertificate> {
    let fan = pic.fan();
    if !fan.collinear_pairs().is_empty() {
        return Err(HtError::CertificateNotApplicable);
    }
    let r = pic.free_rank();
    let delta = DeltaFamily::new(fan.n());
    let members: Vec<IndexSet> = delta.iter().collect();
    let sets = members.par_iter().map(|&s| set_certificate(pic, s)).collect::<Result<Vec<_>>>()?;
    let (epsilon, cells) = epsilon_bound(r, &sets)?;
    let a = sets.iter().map(|s| s.a_upper.clone()).max().expect("Δ is nonempty");
    let d = if a.is_positive() { (&a / &epsilon).floor().to_integer() + 1 } else { BigInt::one() };
    Ok(BoundCertificate { sets, cells, epsilon, a, d })
}
