//! Versioned JSON report documents. Every number is written as a decimal
//! string (rationals as `p/q`), classes use the displayed Picard coordinates,
//! and unknown fields are rejected when reading.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::classify::{BoundCertificate, ClassificationReport, LineFamily, LineStatus};
use crate::cohomology::CohomologyDims;
use crate::error::{HtError, Result};
use crate::fan::CollinearPair;
use crate::forbidden::ForbiddenWitness;
use crate::picard::{LineBundleClass, PicardGroup};
use crate::semigroup::{ConeSemigroup, Decomposition, Element, GammaSet, MultiplicityPoint, SaturationShift};

pub const REPORT_SCHEMA: &str = "htriv-report/1";
pub const TOOL_VERSION: &str = concat!("htriv ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub picard: Option<PicardSection>,
    pub result: ResultSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Counterclockwise; indices elsewhere in the report are 1-based into this list.
    pub vectors: Vec<[String; 2]>,
    /// First 8 bytes of SHA-256 over the ordered vectors, hex.
    pub fingerprint: String,
    pub collinear_pairs: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardSection {
    pub free_rank: String,
    pub torsion: Vec<String>,
    /// 1-based indices of the divisors used as coordinates, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// Class of each E_i.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum ResultSection {
    Validate(ValidateResult),
    Picard(PicardResult),
    Cohomology(CohomologyResult),
    Trivial(TrivialResult),
    Classify(ClassifyResult),
    Lambda(LambdaResult),
    Plot(PlotResult),
    SemigroupGamma(SemigroupGammaResult),
    SemigroupShift(SemigroupShiftResult),
    SemigroupDecompose(SemigroupDecomposeResult),
    SemigroupMult(SemigroupMultResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateResult {
    pub valid: bool,
    pub rays: String,
    pub infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardResult {
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyResult {
    pub class: String,
    pub representative: Vec<String>,
    pub h0: String,
    pub h1: String,
    pub h2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub set: Vec<String>,
    pub functional: [String; 2],
    pub divisor: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrivialResult {
    pub class: String,
    pub h_trivial: bool,
    /// A forbidden set containing the class, when it is not H-trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    pub cross_checked: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeDoc {
    pub pair: [String; 2],
    pub direction: String,
    pub radius: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowDoc {
    pub half_width: String,
    pub nontrivial: Vec<String>,
    pub nontrivial_above: bool,
    pub nontrivial_below: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    pub pair: [String; 2],
    pub direction: String,
    pub base: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowDoc>,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetCertificateDoc {
    pub set: Vec<String>,
    pub normals: Vec<Vec<String>>,
    pub r: String,
    pub a_upper: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub epsilon: String,
    pub a: String,
    pub d: String,
    pub cells: String,
    pub sets: Vec<SetCertificateDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyResult {
    pub verdict: String,
    pub ball_radius: String,
    pub ball_provenance: String,
    pub tubes: Vec<TubeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub examined: Option<String>,
    pub hits: Vec<String>,
    pub sporadic: Vec<String>,
    pub lines: Vec<LineDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaEntry {
    pub class: String,
    pub h0: String,
    pub h1: String,
    pub h2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaResult {
    pub m: String,
    pub radius: String,
    pub classes: Vec<LambdaEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotResult {
    pub output: String,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    pub free_rank: String,
    pub torsion: Vec<String>,
    pub generators: Vec<String>,
    pub height: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupGammaResult {
    pub semigroup: SemigroupDoc,
    pub points: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpressionDoc {
    pub point: String,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupShiftResult {
    pub semigroup: SemigroupDoc,
    pub r: String,
    pub coefficients: Vec<String>,
    pub expressions: Vec<ExpressionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDecomposeResult {
    pub semigroup: SemigroupDoc,
    pub point: String,
    pub a: String,
    pub b: String,
    pub steps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupMultResult {
    pub semigroup: SemigroupDoc,
    pub m: String,
    pub relation: Vec<String>,
    pub p1: String,
    pub p: String,
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn rational(q: &BigRational) -> String {
    q.to_string()
}

fn pair_doc(p: CollinearPair) -> [String; 2] {
    [s(p.i + 1), s(p.j + 1)]
}

fn one_based(set: crate::index_set::IndexSet) -> Vec<String> {
    strings(&set.one_based())
}

impl ReportDocument {
    pub fn new(fan: Option<FanSection>, picard: Option<PicardSection>, result: ResultSection) -> Self {
        ReportDocument {
            schema: REPORT_SCHEMA.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            fan,
            picard,
            result,
        }
    }

    /// Report with the fan and Picard sections filled in from `pic`.
    pub fn for_fan(name: Option<&str>, pic: &PicardGroup, result: ResultSection) -> Self {
        Self::new(Some(fan_section(name, pic)), Some(picard_section(pic)), result)
    }

    /// Pretty JSON with a trailing newline. Byte-identical for equal documents.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report documents always serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ReportDocument = serde_json::from_str(text).map_err(|e| HtError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
        })?;
        if doc.schema != REPORT_SCHEMA {
            return Err(HtError::Parse {
                line: 1,
                column: 1,
                message: format!("unsupported schema {:?}, expected {REPORT_SCHEMA:?}", doc.schema),
            });
        }
        Ok(doc)
    }
}

pub fn fan_section(name: Option<&str>, pic: &PicardGroup) -> FanSection {
    let fan = pic.fan();
    FanSection {
        name: name.map(str::to_string),
        vectors: fan.vectors().iter().map(|v| [s(&v.x), s(&v.y)]).collect(),
        fingerprint: format!("{:016x}", fan.fingerprint()),
        collinear_pairs: fan.collinear_pairs().into_iter().map(pair_doc).collect(),
    }
}

pub fn picard_section(pic: &PicardGroup) -> PicardSection {
    PicardSection {
        free_rank: s(pic.free_rank()),
        torsion: strings(pic.torsion_invariants()),
        basis: pic.basis().map(|b| b.iter().map(|i| s(i + 1)).collect()),
        generators: (0..pic.n()).map(|i| s(pic.generator(i))).collect(),
    }
}

pub fn cohomology_result(c: &LineBundleClass, representative: &[BigInt], dims: CohomologyDims) -> CohomologyResult {
    CohomologyResult {
        class: s(c),
        representative: strings(representative),
        h0: s(dims.h0),
        h1: s(dims.h1),
        h2: s(dims.h2),
    }
}

pub fn witness_doc(w: &ForbiddenWitness) -> WitnessDoc {
    WitnessDoc { set: one_based(w.set), functional: [s(&w.f.w1), s(&w.f.w2)], divisor: strings(&w.r) }
}

fn line_doc(l: &LineFamily) -> LineDoc {
    let window = match &l.status {
        LineStatus::FullyTrivial => None,
        LineStatus::Mixed(w) | LineStatus::NotTrivial(w) => Some(WindowDoc {
            half_width: s(&w.half_width),
            nontrivial: strings(&w.nontrivial),
            nontrivial_above: w.nontrivial_above,
            nontrivial_below: w.nontrivial_below,
        }),
    };
    LineDoc {
        pair: pair_doc(l.pair),
        direction: s(&l.direction),
        base: s(&l.base),
        status: l.status.label().to_string(),
        window,
        members: strings(&l.members),
    }
}

pub fn certificate_doc(c: &BoundCertificate) -> CertificateDoc {
    CertificateDoc {
        epsilon: rational(&c.epsilon),
        a: rational(&c.a),
        d: s(&c.d),
        cells: s(c.cells),
        sets: c
            .sets
            .iter()
            .map(|set| SetCertificateDoc {
                set: one_based(set.set),
                normals: set.normals.iter().map(|n| strings(&n.coefficients)).collect(),
                r: s(&set.r),
                a_upper: rational(&set.a_upper),
            })
            .collect(),
    }
}

pub fn classify_result(r: &ClassificationReport) -> ClassifyResult {
    ClassifyResult {
        verdict: if r.infinite { "infinite" } else { "finite" }.to_string(),
        ball_radius: rational(&r.ball_radius),
        ball_provenance: r.ball_provenance.label().to_string(),
        tubes: r
            .tubes
            .iter()
            .map(|t| TubeDoc {
                pair: pair_doc(t.pair),
                direction: s(&t.direction),
                radius: rational(&t.radius),
                provenance: t.provenance.label().to_string(),
            })
            .collect(),
        examined: r.examined.map(s),
        hits: strings(&r.hits),
        sporadic: strings(&r.sporadic),
        lines: r.lines.iter().map(line_doc).collect(),
        certificate: r.certificate.as_ref().map(certificate_doc),
    }
}

pub fn lambda_result(m: u64, radius: &BigRational, classes: &[(LineBundleClass, CohomologyDims)]) -> LambdaResult {
    LambdaResult {
        m: s(m),
        radius: rational(radius),
        classes: classes
            .iter()
            .map(|(c, d)| LambdaEntry { class: s(c), h0: s(d.h0), h1: s(d.h1), h2: s(d.h2) })
            .collect(),
    }
}

pub fn semigroup_doc(sg: &ConeSemigroup) -> SemigroupDoc {
    SemigroupDoc {
        free_rank: s(sg.k()),
        torsion: strings(sg.torsion()),
        generators: strings(sg.generators()),
        height: strings(sg.h()),
    }
}

pub fn gamma_result(sg: &ConeSemigroup, g: &GammaSet) -> SemigroupGammaResult {
    let mut points = g.points.clone();
    points.sort();
    SemigroupGammaResult { semigroup: semigroup_doc(sg), points: strings(&points) }
}

pub fn shift_result(sg: &ConeSemigroup, sh: &SaturationShift) -> SemigroupShiftResult {
    SemigroupShiftResult {
        semigroup: semigroup_doc(sg),
        r: s(&sh.r),
        coefficients: strings(&sh.coefficients),
        expressions: sh
            .expressions
            .iter()
            .map(|e| ExpressionDoc { point: s(&e.point), coefficients: strings(&e.coefficients) })
            .collect(),
    }
}

pub fn decompose_result(sg: &ConeSemigroup, x: &Element, d: &Decomposition) -> SemigroupDecomposeResult {
    SemigroupDecomposeResult {
        semigroup: semigroup_doc(sg),
        point: s(x),
        a: s(&d.a),
        b: s(&d.b),
        steps: d.steps.iter().map(|i| s(i + 1)).collect(),
    }
}

pub fn mult_result(sg: &ConeSemigroup, m: &BigInt, p: &MultiplicityPoint) -> SemigroupMultResult {
    SemigroupMultResult {
        semigroup: semigroup_doc(sg),
        m: s(m),
        relation: strings(&p.relation),
        p1: s(&p.p1),
        p: s(&p.p),
    }
}
