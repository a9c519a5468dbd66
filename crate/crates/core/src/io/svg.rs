//! Static SVG 1.1 pictures of a fan and of a slice of Pic. Output depends
//! only on the inputs; elements are emitted in a fixed order.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::classify::ClassificationReport;
use crate::error::{HtError, Result};
use crate::fan::StackyFan;
use crate::picard::{LineBundleClass, PicardGroup};

const SIZE: f64 = 480.0;
const CENTER: f64 = SIZE / 2.0;
const REACH: f64 = 200.0;

fn header(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(out, r##"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r##"  <line x1="0" y1="{CENTER}" x2="{SIZE}" y2="{CENTER}" stroke="#cccccc" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"  <line x1="{CENTER}" y1="0" x2="{CENTER}" y2="{SIZE}" stroke="#cccccc" stroke-width="1"/>"##
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn px(x: f64, y: f64) -> (String, String) {
    (format!("{:.2}", CENTER + x), format!("{:.2}", CENTER - y))
}

fn float(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::MAX)
}

/// Rays from the origin with the chosen lattice points marked and labelled.
pub fn render_fan_svg(fan: &StackyFan, title: &str) -> String {
    let m = float(&fan.max_abs_coordinate()).max(1.0);
    let scale = REACH / m;
    let mut out = String::new();
    header(&mut out, title);
    if m <= 12.0 {
        let k = m as i64;
        for x in -k..=k {
            for y in -k..=k {
                let (cx, cy) = px(x as f64 * scale, y as f64 * scale);
                let _ = writeln!(out, r##"  <circle cx="{cx}" cy="{cy}" r="1.5" fill="#bbbbbb"/>"##);
            }
        }
    }
    for (i, v) in fan.vectors().iter().enumerate() {
        let (x, y) = (float(&v.x) * scale, float(&v.y) * scale);
        let len = (x * x + y * y).sqrt();
        let (ex, ey) = px(x / len * (CENTER - 8.0), y / len * (CENTER - 8.0));
        let (vx, vy) = px(x, y);
        let (lx, ly) = px(x + 10.0 * x / len, y + 10.0 * y / len);
        let (ox, oy) = px(0.0, 0.0);
        let _ =
            writeln!(out, r##"  <line x1="{ox}" y1="{oy}" x2="{ex}" y2="{ey}" stroke="#1f4e8c" stroke-width="2"/>"##);
        let _ = writeln!(out, r##"  <circle cx="{vx}" cy="{vy}" r="4" fill="#c0392b"/>"##);
        let _ = writeln!(
            out,
            r#"  <text x="{lx}" y="{ly}" font-family="sans-serif" font-size="12" text-anchor="middle">v{} = {}</text>"#,
            i + 1,
            v
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Which 2-D slice of the free part to draw. Coordinates not on an axis are
/// fixed to `fixed`; only classes with torsion part `torsion` are shown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardSlice {
    pub x_axis: usize,
    pub y_axis: Option<usize>,
    pub fixed: BigInt,
    pub torsion: Vec<BigInt>,
}

impl PicardSlice {
    pub fn default_for(pic: &PicardGroup) -> Result<Self> {
        check_rank(pic)?;
        Ok(PicardSlice {
            x_axis: 0,
            y_axis: (pic.free_rank() >= 2).then_some(1),
            fixed: BigInt::zero(),
            torsion: vec![BigInt::zero(); pic.torsion_invariants().len()],
        })
    }

    /// Syntax `X[,Y][:VALUE][;T1,T2,...]` with 1-based axes, e.g. `1,3:0`.
    pub fn parse(text: &str, pic: &PicardGroup) -> Result<Self> {
        check_rank(pic)?;
        let bad = |m: &str| HtError::InvalidArgument(format!("picard slice {text:?}: {m}"));
        let (main, tor) = match text.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (text, None),
        };
        let (axes, fixed) = match main.split_once(':') {
            Some((a, v)) => (a, v.trim().parse::<BigInt>().map_err(|_| bad("fixed value is not an integer"))?),
            None => (main, BigInt::zero()),
        };
        let axes: Vec<usize> = axes
            .split(',')
            .map(|a| a.trim().parse::<usize>().ok().filter(|&i| i >= 1 && i <= pic.free_rank()).map(|i| i - 1))
            .collect::<Option<_>>()
            .ok_or_else(|| bad("axes must be coordinates between 1 and the free rank"))?;
        let want = pic.free_rank().min(2);
        if axes.len() != want || (want == 2 && axes[0] == axes[1]) {
            return Err(bad(&format!("expected {want} distinct axes")));
        }
        let torsion = match tor {
            None => vec![BigInt::zero(); pic.torsion_invariants().len()],
            Some(t) => {
                let v: Vec<BigInt> = t
                    .split(',')
                    .map(|x| x.trim().parse::<BigInt>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("torsion residues must be integers"))?;
                if v.len() != pic.torsion_invariants().len() {
                    return Err(bad("wrong number of torsion residues"));
                }
                v.iter().zip(pic.torsion_invariants()).map(|(x, d)| x.mod_floor(d)).collect()
            }
        };
        Ok(PicardSlice { x_axis: axes[0], y_axis: axes.get(1).copied(), fixed, torsion })
    }

    fn coords(&self, c: &LineBundleClass) -> Option<(BigInt, BigInt)> {
        if c.torsion() != self.torsion.as_slice() {
            return None;
        }
        let on_axis = |i: usize| i == self.x_axis || Some(i) == self.y_axis;
        if c.free().iter().enumerate().any(|(i, x)| !on_axis(i) && *x != self.fixed) {
            return None;
        }
        let y = self.y_axis.map_or_else(BigInt::zero, |j| c.free()[j].clone());
        Some((c.free()[self.x_axis].clone(), y))
    }
}

fn check_rank(pic: &PicardGroup) -> Result<()> {
    if pic.free_rank() == 0 || pic.free_rank() > 3 {
        return Err(HtError::InvalidArgument(format!(
            "Picard plots need free rank between 1 and 3, got {}",
            pic.free_rank()
        )));
    }
    Ok(())
}

const FAMILY_COLOURS: [&str; 6] = ["#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"];

/// Ball points of the slice in grey, sporadic H-trivial classes as black
/// discs and members of each line family as coloured squares.
pub fn render_picard_slice_svg(
    pic: &PicardGroup,
    report: &ClassificationReport,
    slice: &PicardSlice,
    title: &str,
) -> Result<String> {
    check_rank(pic)?;
    let r = report.ball_radius.floor().to_integer();
    let rf = float(&r).max(1.0);
    let scale = REACH / rf;
    let mut out = String::new();
    header(&mut out, title);
    let point = |x: &BigInt, y: &BigInt| px(float(x) * scale, float(y) * scale);

    let r2 = &report.ball_radius * &report.ball_radius;
    let others = pic.free_rank().saturating_sub(2) as i64;
    let fixed_norm = &slice.fixed * &slice.fixed * BigInt::from(others);
    let ys: Vec<BigInt> = if slice.y_axis.is_some() { num_iter(&r) } else { vec![BigInt::zero()] };
    for x in num_iter(&r) {
        for y in &ys {
            let n = &x * &x + y * y + &fixed_norm;
            if num_rational::BigRational::from_integer(n) > r2 {
                continue;
            }
            let (cx, cy) = point(&x, y);
            let _ = writeln!(out, r##"  <circle cx="{cx}" cy="{cy}" r="1.5" fill="#cccccc"/>"##);
        }
    }
    for (k, line) in report.lines.iter().enumerate() {
        let colour = FAMILY_COLOURS[k % FAMILY_COLOURS.len()];
        let pts: Vec<(BigInt, BigInt)> = line.members.iter().filter_map(|c| slice.coords(c)).collect();
        if pts.len() >= 2 {
            let path: Vec<String> = pts
                .iter()
                .map(|(x, y)| {
                    let (a, b) = point(x, y);
                    format!("{a},{b}")
                })
                .collect();
            let _ = writeln!(
                out,
                r#"  <polyline points="{}" fill="none" stroke="{colour}" stroke-width="1" stroke-dasharray="4,3"/>"#,
                path.join(" ")
            );
        }
        for (x, y) in &pts {
            let (cx, cy) = px(float(x) * scale - 4.0, float(y) * scale + 4.0);
            let _ = writeln!(out, r#"  <rect x="{cx}" y="{cy}" width="8" height="8" fill="{colour}"/>"#);
        }
    }
    for c in &report.sporadic {
        if let Some((x, y)) = slice.coords(c) {
            let (cx, cy) = point(&x, &y);
            let _ = writeln!(out, r##"  <circle cx="{cx}" cy="{cy}" r="4.5" fill="#000000"/>"##);
        }
    }
    let axis_name = |i: usize| match pic.basis() {
        Some(b) => format!("E{}", b[i] + 1),
        None => format!("x{}", i + 1),
    };
    let mut legend = format!("horizontal {}", axis_name(slice.x_axis));
    if let Some(j) = slice.y_axis {
        let _ = write!(legend, ", vertical {}", axis_name(j));
    }
    if others > 0 {
        let _ = write!(legend, ", other coordinate {}", slice.fixed);
    }
    if slice.torsion.iter().any(|t| t.is_positive()) {
        let t: Vec<String> = slice.torsion.iter().map(ToString::to_string).collect();
        let _ = write!(legend, ", torsion ({})", t.join(","));
    }
    let _ = writeln!(
        out,
        r#"  <text x="8" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
        SIZE - 8.0,
        escape(&legend)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

fn num_iter(r: &BigInt) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut x = -r.clone();
    while &x <= r {
        v.push(x.clone());
        x += 1;
    }
    v
}
