//! Exact search for H-trivial classes in a spherical shell of Pic_R.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::certificate::{bound_certificate, BoundCertificate};
use super::torsion_residues;
use crate::error::{HtError, Result};
use crate::forbidden::{is_h_trivial, DeltaFamily};
use crate::index_set::IndexSet;
use crate::lattice::fm::{self, HalfSpace};
use crate::lattice::small::small;
use crate::picard::{LineBundleClass, PicardGroup};

/// Inequalities `coeffs · x >= bound` on free coordinates.
type Region = Vec<(Vec<i128>, i128)>;

fn too_large() -> HtError {
    HtError::InvalidArgument("shell search needs coordinates that fit in 64 bits".into())
}

/// Regions of Pic_R, one list per torsion residue, inside which every class
/// lies in some FS_I: each is the set of x whose f-polygon for FS_I contains
/// a closed unit square, hence an integer point.
fn cover_regions(pic: &PicardGroup, residues: &[Vec<BigInt>]) -> Result<Vec<Vec<Region>>> {
    let fan = pic.fan();
    let (n, r) = (fan.n(), pic.free_rank());
    let lift = pic.lift_free();
    let delta: Vec<IndexSet> = DeltaFamily::new(n).iter().collect();
    let mut out = Vec::with_capacity(residues.len());
    for t in residues {
        let shift = pic.divisor_representative(&pic.class(vec![BigInt::zero(); r], t.clone())?)?;
        let mut regions = Vec::new();
        for &set in &delta {
            let rows: Vec<HalfSpace> = (0..n)
                .map(|i| {
                    let v = fan.vector(i);
                    let lo = v.x.clone().min(BigInt::zero()) + v.y.clone().min(BigInt::zero());
                    let hi = v.x.clone().max(BigInt::zero()) + v.y.clone().max(BigInt::zero());
                    let mut coeffs: Vec<BigInt> = (0..r).map(|s| lift[(s, i)].clone()).collect();
                    coeffs.push(v.x.clone());
                    coeffs.push(v.y.clone());
                    if set.contains(i) {
                        HalfSpace::new(coeffs, -&shift[i] - lo)
                    } else {
                        HalfSpace::new(coeffs.iter().map(|c| -c).collect(), &shift[i] + 1 + hi)
                    }
                })
                .collect();
            let projected = fm::eliminate(&fm::eliminate(&rows, r + 1), r);
            if fm::is_contradiction(&projected) {
                continue;
            }
            let region = projected
                .into_iter()
                .filter(|h| !h.is_constant())
                .map(|h| {
                    let c = h.coeffs[..r].iter().map(small).collect::<Option<Vec<_>>>()?;
                    Some((c, small(&h.bound)?))
                })
                .collect::<Option<Region>>()
                .ok_or_else(too_large)?;
            regions.push(region);
        }
        out.push(regions);
    }
    Ok(out)
}

/// Lattice box of free coordinates, bounds inclusive.
#[derive(Debug, Clone)]
struct FreeBox {
    lo: Vec<i128>,
    hi: Vec<i128>,
}

impl FreeBox {
    fn min_norm2(&self) -> i128 {
        self.lo.iter().zip(&self.hi).map(|(&l, &h)| if l <= 0 && h >= 0 { 0 } else { (l * l).min(h * h) }).sum()
    }

    fn max_norm2(&self) -> i128 {
        self.lo.iter().zip(&self.hi).map(|(&l, &h)| (l * l).max(h * h)).sum()
    }

    fn min_dot(&self, c: &[i128]) -> i128 {
        c.iter().zip(self.lo.iter().zip(&self.hi)).map(|(&c, (&l, &h))| if c < 0 { c * h } else { c * l }).sum()
    }

    fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn split(self) -> (FreeBox, FreeBox) {
        let axis = (0..self.lo.len()).max_by_key(|&j| self.hi[j] - self.lo[j]).expect("nonempty box");
        let mid = (self.lo[axis] + self.hi[axis]).div_euclid(2);
        let mut left = self.clone();
        left.hi[axis] = mid;
        let mut right = self;
        right.lo[axis] = mid + 1;
        (left, right)
    }
}

/// For every torsion residue, every lattice point of the box lies in one region.
fn covered(regions: &[Vec<Region>], b: &FreeBox) -> bool {
    regions.iter().all(|per_t| per_t.iter().any(|rows| rows.iter().all(|(c, bound)| b.min_dot(c) >= *bound)))
}

struct Walk<'a> {
    pic: &'a PicardGroup,
    regions: Vec<Vec<Region>>,
    residues: Vec<Vec<BigInt>>,
    inner2: i128,
    outer2: i128,
}

impl Walk<'_> {
    fn run(&self, b: FreeBox, out: &mut Vec<LineBundleClass>) -> Result<()> {
        if b.min_norm2() > self.outer2 || b.max_norm2() <= self.inner2 || covered(&self.regions, &b) {
            return Ok(());
        }
        if b.is_point() {
            let free: Vec<BigInt> = b.lo.iter().map(|&x| BigInt::from(x)).collect();
            for t in &self.residues {
                let c = self.pic.class(free.clone(), t.clone())?;
                if is_h_trivial(self.pic, &c)? {
                    out.push(c);
                }
            }
            return Ok(());
        }
        let (x, y) = b.split();
        self.run(x, out)?;
        self.run(y, out)
    }
}

/// All H-trivial classes with inner2 < |free|² <= outer2, found by splitting
/// boxes and discarding those inside a cover region. Sorted by squared norm,
/// free coordinates, then torsion.
pub fn h_trivial_in_shell(pic: &PicardGroup, inner2: &BigInt, outer2: &BigInt) -> Result<Vec<LineBundleClass>> {
    let r = pic.free_rank();
    let m = small(&outer2.sqrt()).ok_or_else(too_large)?;
    // Keep |x|² and the region dot products far from overflow.
    if m > 1 << 30 {
        return Err(too_large());
    }
    let residues = torsion_residues(pic.torsion_invariants());
    let walk = Walk {
        pic,
        regions: cover_regions(pic, &residues)?,
        residues,
        inner2: small(inner2).ok_or_else(too_large)?,
        outer2: small(outer2).ok_or_else(too_large)?,
    };
    // Split the first axis into slabs so the search can run in parallel.
    let slabs: Vec<FreeBox> = (-m..=m)
        .map(|x0| {
            let mut lo = vec![-m; r];
            let mut hi = vec![m; r];
            lo[0] = x0;
            hi[0] = x0;
            FreeBox { lo, hi }
        })
        .collect();
    let parts = slabs
        .into_par_iter()
        .map(|b| {
            let mut out = Vec::new();
            walk.run(b, &mut out).map(|_| out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<LineBundleClass> = parts.into_iter().flatten().collect();
    out.sort_by(|a, b| {
        a.norm_squared()
            .cmp(&b.norm_squared())
            .then_with(|| a.free().cmp(b.free()))
            .then_with(|| a.torsion().cmp(b.torsion()))
    });
    Ok(out)
}

/// The complete list of H-trivial classes of a fan without collinear pairs.
pub fn certified_h_trivial(pic: &PicardGroup) -> Result<(BoundCertificate, Vec<LineBundleClass>)> {
    let cert = bound_certificate(pic)?;
    let outer2 = &cert.d * &cert.d;
    let all = h_trivial_in_shell(pic, &BigInt::from(-1), &outer2)?;
    Ok((cert, all))
}
