//! Classification of H-trivial classes: finiteness verdict, ball
//! enumeration, line families and the radius certificate.

pub mod certificate;
pub mod lines;
pub mod shell;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cohomology::{cohomology_dims, CohomologyDims};
use crate::error::{HtError, Result};
use crate::fan::CollinearPair;
use crate::forbidden::is_h_trivial;
use crate::picard::{LineBundleClass, PicardGroup};

pub use certificate::{bound_certificate, BoundCertificate, FacetNormal, SetCertificate};
pub use lines::{
    line_fully_h_trivial, sign_change_divisor, tube_line_direction, LineStatus, LineWindow, TubeDirection,
};
pub use shell::{certified_h_trivial, h_trivial_in_shell};

/// True iff the fan has a pair of opposite rays.
pub fn has_infinitely_many_h_trivial(pic: &PicardGroup) -> bool {
    !pic.fan().collinear_pairs().is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Certified,
    UserSupplied,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Certified => "certified",
            Provenance::UserSupplied => "user_supplied",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub radius: BigRational,
    pub certify: bool,
    /// Half-width of the window used for lines that are not fully trivial.
    pub line_window: Option<BigInt>,
}

impl ClassifyOptions {
    pub fn with_radius(radius: i64) -> Self {
        ClassifyOptions { radius: BigRational::from_integer(radius.into()), certify: false, line_window: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFamily {
    pub pair: CollinearPair,
    /// Sign-normalized: first nonzero free coordinate positive.
    pub direction: LineBundleClass,
    /// Point of the line whose first direction coordinate lies in [0, |D2_j|).
    pub base: LineBundleClass,
    pub status: LineStatus,
    /// Hits of the ball lying on this line.
    pub members: Vec<LineBundleClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeRadius {
    pub pair: CollinearPair,
    pub direction: LineBundleClass,
    pub radius: BigRational,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub infinite: bool,
    pub collinear_pairs: Vec<CollinearPair>,
    pub ball_radius: BigRational,
    pub ball_provenance: Provenance,
    pub tubes: Vec<TubeRadius>,
    /// Number of classes tested one by one, when the ball was enumerated.
    pub examined: Option<usize>,
    /// All H-trivial classes in the ball, by squared norm then coordinates.
    pub hits: Vec<LineBundleClass>,
    pub lines: Vec<LineFamily>,
    /// Hits on no line family.
    pub sporadic: Vec<LineBundleClass>,
    pub certificate: Option<BoundCertificate>,
}

fn squared_radius(radius: &BigRational) -> Result<(BigInt, BigInt)> {
    if !radius.is_positive() {
        return Err(HtError::NonPositiveRadius);
    }
    Ok((radius.numer() * radius.numer(), radius.denom() * radius.denom()))
}

fn free_points(r: usize, num: &BigInt, den: &BigInt) -> Vec<Vec<BigInt>> {
    // All x in Z^r with den·|x|² <= num.
    fn rec(r: usize, budget: &BigInt, den: &BigInt, prefix: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        let m = (budget / den).sqrt();
        let mut x = -m.clone();
        while x <= m {
            let rest = budget - den * &x * &x;
            prefix.push(x.clone());
            rec(r, &rest, den, prefix, out);
            prefix.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(r, num, den, &mut Vec::with_capacity(r), &mut out);
    out
}

pub(crate) fn torsion_residues(invariants: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for d in invariants {
        let mut next = Vec::new();
        for prefix in &out {
            let mut t = BigInt::zero();
            while &t < d {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push(p);
                t += 1;
            }
        }
        out = next;
    }
    out
}

/// Classes with |free| <= radius, ordered by squared norm, then free
/// coordinates lexicographically, then torsion residues.
pub fn ball_classes(pic: &PicardGroup, radius: &BigRational) -> Result<Vec<LineBundleClass>> {
    let (num, den) = squared_radius(radius)?;
    let mut free = free_points(pic.free_rank(), &num, &den);
    free.sort_by(|a, b| {
        let n = |v: &Vec<BigInt>| v.iter().map(|x| x * x).sum::<BigInt>();
        n(a).cmp(&n(b)).then_with(|| a.cmp(b))
    });
    let residues = torsion_residues(pic.torsion_invariants());
    let mut out = Vec::with_capacity(free.len() * residues.len());
    for f in free {
        for t in &residues {
            out.push(pic.class(f.clone(), t.clone())?);
        }
    }
    Ok(out)
}

fn normalized_direction(pic: &PicardGroup, d: &LineBundleClass) -> Result<LineBundleClass> {
    match d.free().iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => pic.neg(d),
        _ => Ok(d.clone()),
    }
}

/// Base point of x + Z·d (d normalized, free part nonzero).
fn line_base(pic: &PicardGroup, x: &LineBundleClass, d: &LineBundleClass) -> Result<LineBundleClass> {
    let j = d.free().iter().position(|v| !v.is_zero()).ok_or(HtError::ZeroClass)?;
    let t = x.free()[j].div_floor(&d.free()[j]);
    pic.sub(x, &pic.scale(d, &t)?)
}

fn enumerate_ball(
    pic: &PicardGroup,
    radius: &BigRational,
    examined: &mut Option<usize>,
) -> Result<Vec<LineBundleClass>> {
    let ball = ball_classes(pic, radius)?;
    let flags = ball.par_iter().map(|c| is_h_trivial(pic, c)).collect::<Result<Vec<bool>>>()?;
    *examined = Some(ball.len());
    Ok(ball.into_iter().zip(flags).filter(|(_, f)| *f).map(|(c, _)| c).collect())
}

/// Enumerate H-trivial classes in the ball and organize them into line
/// families along tube directions and sporadic points. With `certify` on a
/// fan without collinear pairs the ball is widened to the certificate radius
/// when needed, so the list is complete.
pub fn enumerate_h_trivial(pic: &PicardGroup, options: &ClassifyOptions) -> Result<ClassificationReport> {
    let pairs = pic.fan().collinear_pairs();
    let infinite = !pairs.is_empty();
    let mut certificate = None;
    let mut ball_radius = options.radius.clone();
    let mut ball_provenance = Provenance::UserSupplied;
    let mut examined = None;
    let hits: Vec<LineBundleClass>;
    if options.certify && !infinite {
        let cert = bound_certificate(pic)?;
        let d = BigRational::from_integer(cert.d.clone());
        if ball_radius < d {
            // The ball is too large to enumerate; the shell search is exact.
            ball_radius = d;
            hits = h_trivial_in_shell(pic, &BigInt::from(-1), &(&cert.d * &cert.d))?;
        } else {
            hits = enumerate_ball(pic, &ball_radius, &mut examined)?;
        }
        ball_provenance = Provenance::Certified;
        certificate = Some(cert);
    } else {
        hits = enumerate_ball(pic, &ball_radius, &mut examined)?;
    }

    let mut directions: Vec<(CollinearPair, LineBundleClass)> = Vec::new();
    for &pair in &pairs {
        let d = normalized_direction(pic, &tube_line_direction(pic, pair)?.class)?;
        if d.free().iter().all(Zero::is_zero) {
            continue;
        }
        if !directions.iter().any(|(_, e)| *e == d) {
            directions.push((pair, d));
        }
    }

    let mut lines = Vec::new();
    for (pair, d) in &directions {
        let mut groups: BTreeMap<LineBundleClass, Vec<LineBundleClass>> = BTreeMap::new();
        for h in &hits {
            groups.entry(line_base(pic, h, d)?).or_default().push(h.clone());
        }
        let found = groups
            .into_par_iter()
            .map(|(base, members)| -> Result<Option<LineFamily>> {
                let status = line_fully_h_trivial(pic, &base, d, options.line_window.clone())?;
                if members.len() >= 2 || status.is_fully_trivial() {
                    Ok(Some(LineFamily { pair: *pair, direction: d.clone(), base, status, members }))
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        lines.extend(found.into_iter().flatten());
    }
    lines.sort_by(|a, b| (&a.direction, &a.base).cmp(&(&b.direction, &b.base)));

    let sporadic = hits.iter().filter(|h| !lines.iter().any(|l| l.members.contains(h))).cloned().collect();
    let tubes = directions
        .iter()
        .map(|(pair, d)| TubeRadius {
            pair: *pair,
            direction: d.clone(),
            radius: options.radius.clone(),
            provenance: Provenance::UserSupplied,
        })
        .collect();

    Ok(ClassificationReport {
        infinite,
        collinear_pairs: pairs,
        ball_radius,
        ball_provenance,
        tubes,
        examined,
        hits,
        lines,
        sporadic,
        certificate,
    })
}

/// Classes in the ball whose total cohomology is below m.
pub fn lambda_m_enumerate(
    pic: &PicardGroup,
    m: u64,
    radius: &BigRational,
) -> Result<Vec<(LineBundleClass, CohomologyDims)>> {
    if m == 0 {
        return Err(HtError::NonPositiveM);
    }
    let ball = ball_classes(pic, radius)?;
    let dims = ball.par_iter().map(|c| cohomology_dims(pic, c)).collect::<Result<Vec<_>>>()?;
    Ok(ball.into_iter().zip(dims).filter(|(_, d)| d.total() < m).collect())
}

/// Evidence about H-trivial classes with free norm in (R, 2R].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnnulusEvidence {
    /// An H-trivial class in the annulus.
    Found(LineBundleClass),
    /// The certificate radius is at most R.
    CertifiedEmpty(BigInt),
    /// Exhaustive search of the annulus found nothing.
    SearchedEmpty,
    /// No class was found and the annulus was too large to search.
    Inconclusive,
}

/// Look for H-trivial classes with R < |free| <= 2R.
pub fn annulus_evidence(pic: &PicardGroup, radius: &BigInt) -> Result<AnnulusEvidence> {
    if !radius.is_positive() {
        return Err(HtError::NonPositiveRadius);
    }
    let r2 = radius * radius;
    let outer = BigInt::from(4) * &r2;
    let in_annulus = |c: &LineBundleClass| {
        let n = c.norm_squared();
        n > r2 && n <= outer
    };
    let pairs = pic.fan().collinear_pairs();
    if pairs.is_empty() {
        let cert = bound_certificate(pic)?;
        if &cert.d <= radius {
            return Ok(AnnulusEvidence::CertifiedEmpty(cert.d));
        }
        let found = h_trivial_in_shell(pic, &r2, &outer)?;
        return Ok(found.into_iter().next().map_or(AnnulusEvidence::SearchedEmpty, AnnulusEvidence::Found));
    }
    for pair in pairs {
        let dir = tube_line_direction(pic, pair)?;
        if dir.class.free().iter().all(Zero::is_zero) {
            continue;
        }
        let base = pic.class_of(&sign_change_divisor(pic, pair)?)?;
        for sign in [1i64, -1] {
            let step = pic.scale(&dir.class, &BigInt::from(sign))?;
            let mut c = base.clone();
            // Norms grow at most linearly along the line; stop once past 2R.
            let mut past = 0;
            while past < 2 {
                if in_annulus(&c) && is_h_trivial(pic, &c)? {
                    return Ok(AnnulusEvidence::Found(c));
                }
                if c.norm_squared() > outer {
                    past += 1;
                }
                c = pic.add(&c, &step)?;
            }
        }
    }
    // The line can step over the annulus; fall back to the exact search.
    match h_trivial_in_shell(pic, &r2, &outer) {
        Ok(found) => Ok(found.into_iter().next().map_or(AnnulusEvidence::SearchedEmpty, AnnulusEvidence::Found)),
        Err(HtError::InvalidArgument(_)) => Ok(AnnulusEvidence::Inconclusive),
        Err(e) => Err(e),
    }
}
