//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Reference values are computed here, independently
//! of the library's own algorithms wherever that is feasible.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use htriv::classify::{
    annulus_evidence, bound_certificate, enumerate_h_trivial, h_trivial_in_shell, lambda_m_enumerate,
    sign_change_divisor, AnnulusEvidence, ClassifyOptions,
};
use htriv::cohomology::{cohomology_in_box, cohomology_of_divisor, contribution_box, CohomologyDims};
use htriv::forbidden::is_h_trivial;
use htriv::{cohomology_dims, ConeSemigroup, Element, LineBundleClass, PicardGroup, StackyFan};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    /// The check differs from the literal criterion, which does not hold.
    amended: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, amended: false, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, amended: false, detail: detail.into() }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return fail(format!($($msg)*));
        }
    };
}

fn fan(pairs: &[(i64, i64)]) -> StackyFan {
    StackyFan::from_pairs(pairs).expect("valid fan")
}

fn class(pic: &PicardGroup, free: &[i64]) -> LineBundleClass {
    pic.class_from_i64(free, &vec![0; pic.torsion_invariants().len()]).unwrap()
}

fn is_zero(d: &CohomologyDims) -> bool {
    d.h0 == 0 && d.h1 == 0 && d.h2 == 0
}

/// The cohomology oracle applied to every class of the ball.
fn oracle_hits(pic: &PicardGroup, radius: i64) -> HashSet<LineBundleClass> {
    htriv::classify::ball_classes(pic, &BigRational::from_integer(radius.into()))
        .unwrap()
        .into_iter()
        .filter(|c| is_zero(&cohomology_dims(pic, c).unwrap()))
        .collect()
}

/// A random valid fan with 3..=max_n rays and coordinates in [-coord, coord].
fn random_fan(rng: &mut ChaCha8Rng, max_n: usize, coord: i64) -> StackyFan {
    loop {
        let n = rng.gen_range(3..=max_n);
        let v: Vec<(i64, i64)> =
            (0..n).map(|_| (rng.gen_range(-coord..=coord), rng.gen_range(-coord..=coord))).collect();
        if let Ok(f) = StackyFan::from_pairs(&v) {
            return f;
        }
    }
}

/// A random fan containing v and -k v for some v.
fn random_collinear_fan(rng: &mut ChaCha8Rng, max_n: usize, coord: i64) -> StackyFan {
    loop {
        let v = (rng.gen_range(-coord..=coord), rng.gen_range(-coord..=coord));
        let k = rng.gen_range(1..=2);
        let w = (-k * v.0, -k * v.1);
        if w.0.abs() > coord || w.1.abs() > coord {
            continue;
        }
        let mut pts = vec![v, w];
        let extra = rng.gen_range(1..=max_n - 2);
        for _ in 0..extra {
            pts.push((rng.gen_range(-coord..=coord), rng.gen_range(-coord..=coord)));
        }
        pts.shuffle(rng);
        if let Ok(f) = StackyFan::from_pairs(&pts) {
            if !f.collinear_pairs().is_empty() {
                return f;
            }
        }
    }
}

fn random_divisor(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

fn criterion_1() -> Outcome {
    let pic = PicardGroup::with_basis(&fan(&[(1, 1), (0, 1), (-1, 0), (0, -1), (1, -1)]), &[0, 3, 4]).unwrap();
    let report = enumerate_h_trivial(&pic, &ClassifyOptions::with_radius(6)).unwrap();
    ensure!(report.infinite, "verdict is finite");
    let expected: HashSet<LineBundleClass> = [
        [1, 0, -1],
        [-1, 0, -1],
        [-1, 0, 0],
        [-1, 0, 1],
        [-1, 1, 0],
        [0, 0, -1],
        [-2, -2, -2],
        [-1, -2, -2],
        [0, -2, -2],
        [0, -3, -3],
        [0, -2, -3],
        [0, -2, -4],
    ]
    .iter()
    .map(|c| class(&pic, c))
    .collect();
    let sporadic: HashSet<LineBundleClass> = report.sporadic.iter().cloned().collect();
    ensure!(
        sporadic == expected && report.sporadic.len() == 12,
        "sporadic set differs: {:?}",
        report.sporadic.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    let fully: Vec<_> = report.lines.iter().filter(|l| l.status.is_fully_trivial()).collect();
    ensure!(fully.len() == 3, "{} fully trivial lines", fully.len());
    let direction = class(&pic, &[1, 0, 1]);
    // τ_k = {(a, -1, a - k)}.
    let mut shifts: Vec<i64> = Vec::new();
    for l in &fully {
        ensure!(l.direction == direction, "line direction {}", l.direction);
        let b = l.base.free();
        ensure!(b[1] == BigInt::from(-1), "base {} is not on a τ line", l.base);
        shifts.push((&b[0] - &b[2]).to_i64().unwrap());
    }
    shifts.sort_unstable();
    ensure!(shifts == [0, 1, 2], "line offsets {shifts:?}");
    // Every hit is sporadic or on a τ line, and the hits agree with the cohomology oracle.
    let on_tau = |c: &LineBundleClass| {
        let f = c.free();
        f[1] == BigInt::from(-1) && (0..=2).any(|k| &f[0] - &f[2] == BigInt::from(k))
    };
    let hits: HashSet<LineBundleClass> = report.hits.iter().cloned().collect();
    ensure!(hits.iter().all(|c| expected.contains(c) || on_tau(c)), "a hit is neither sporadic nor on a τ line");
    ensure!(hits == oracle_hits(&pic, 6), "ball hits disagree with the cohomology oracle");
    ok(format!("12 sporadic classes, 3 fully trivial lines, {} hits in the ball", hits.len()))
}

fn criterion_2() -> Outcome {
    let pic = PicardGroup::new(&fan(&[(1, 0), (0, 1), (-1, -1)]));
    let options = ClassifyOptions { certify: true, ..ClassifyOptions::with_radius(20) };
    let report = enumerate_h_trivial(&pic, &options).unwrap();
    ensure!(!report.infinite, "verdict is infinite");
    let hits: Vec<String> = report.hits.iter().map(ToString::to_string).collect();
    ensure!(hits == ["(-1)", "(-2)"], "hits {hits:?}");
    let Some(cert) = &report.certificate else {
        return fail("no certificate");
    };
    let d = BigRational::from_integer(cert.d.clone());
    ensure!(&d * &cert.epsilon > cert.a, "d·ε ≤ a");
    ensure!(cert.sets.iter().all(|s| s.a_upper <= cert.a), "a is below some per-set bound");
    ensure!(cert.d <= BigInt::from(20), "certified radius {} exceeds the ball", cert.d);
    // O(d) on the plane: h0 = C(d+2,2) for d ≥ 0, h2 = C(-d-1,2) for d ≤ -3.
    let mut closed_form = Vec::new();
    for t in -20i64..=20 {
        let h0 = if t >= 0 { (t + 2) * (t + 1) / 2 } else { 0 };
        let h2 = if t <= -3 { (-t - 1) * (-t - 2) / 2 } else { 0 };
        if h0 == 0 && h2 == 0 {
            closed_form.push(format!("({t})"));
        }
    }
    ensure!(closed_form == ["(-2)", "(-1)"], "closed form gives {closed_form:?}");
    ok(format!("H-trivial set {{O(-1), O(-2)}}, d = {}, d·ε > a", cert.d))
}

fn criterion_3() -> Outcome {
    let pic = PicardGroup::with_basis(&fan(&[(1, 0), (0, 1), (-1, 0), (0, -1)]), &[0, 1]).unwrap();
    let report = enumerate_h_trivial(&pic, &ClassifyOptions::with_radius(5)).unwrap();
    ensure!(report.infinite, "verdict is finite");
    let mut expected = HashSet::new();
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            if a * a + b * b <= 25 && (a == -1 || b == -1) {
                expected.insert(class(&pic, &[a, b]));
            }
        }
    }
    let hits: HashSet<LineBundleClass> = report.hits.iter().cloned().collect();
    ensure!(hits == expected, "hits differ from the cross");
    let fully: HashSet<(String, String)> = report
        .lines
        .iter()
        .filter(|l| l.status.is_fully_trivial())
        .map(|l| (l.direction.to_string(), l.base.to_string()))
        .collect();
    let want: HashSet<(String, String)> =
        [("(1,0)", "(0,-1)"), ("(0,1)", "(-1,0)")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    ensure!(fully == want, "fully trivial lines {fully:?}");
    ensure!(report.sporadic.is_empty(), "unexpected sporadic classes");
    ok(format!("{} hits, exactly the two cross lines", hits.len()))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut trivial = 0;
    for k in 0..200 {
        let f = random_fan(&mut rng, 7, 6);
        let pic = PicardGroup::new(&f);
        let d = random_divisor(&mut rng, f.n(), 4);
        let c = pic.class_of(&d).unwrap();
        let by_feasibility = is_h_trivial(&pic, &c).unwrap();
        let by_cohomology = is_zero(&cohomology_of_divisor(&f, &d));
        ensure!(by_feasibility == by_cohomology, "instance {k}: fan {f}, divisor {d:?} disagree");
        trivial += usize::from(by_feasibility);
    }
    ok(format!("200 instances, 0 disagreements ({trivial} H-trivial)"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fans: Vec<StackyFan> = (0..25).map(|_| random_collinear_fan(&mut rng, 5, 4)).collect();
    while fans.len() < 50 {
        let f = random_fan(&mut rng, 5, 4);
        if f.collinear_pairs().is_empty() {
            fans.push(f);
        }
    }
    let mut literal_counterexamples = Vec::new();
    for f in &fans {
        let pic = PicardGroup::new(f);
        let r = BigInt::from(10) * f.max_abs_coordinate();
        let r2 = &r * &r;
        let outer = BigInt::from(4) * &r2;
        if !f.collinear_pairs().is_empty() {
            let AnnulusEvidence::Found(c) = annulus_evidence(&pic, &r).unwrap() else {
                return fail(format!("fan {f}: no H-trivial class found in (R, 2R]"));
            };
            let n = c.norm_squared();
            ensure!(n > r2 && n <= outer, "fan {f}: class {c} is outside the annulus");
            ensure!(is_zero(&cohomology_dims(&pic, &c).unwrap()), "fan {f}: class {c} has cohomology");
        } else {
            // The bound certificate: nothing H-trivial beyond d, checked on (d, 2d].
            let cert = bound_certificate(&pic).unwrap();
            let d2 = &cert.d * &cert.d;
            let beyond = h_trivial_in_shell(&pic, &d2, &(BigInt::from(4) * &d2)).unwrap();
            ensure!(beyond.is_empty(), "fan {f}: H-trivial class {} beyond the certified radius", beyond[0]);
            let annulus = h_trivial_in_shell(&pic, &r2, &outer).unwrap();
            if let Some(c) = annulus.first() {
                ensure!(is_zero(&cohomology_dims(&pic, c).unwrap()), "fan {f}: shell search returned {c}");
                literal_counterexamples.push(format!("{f} has {c}"));
            }
        }
    }
    let detail = format!(
        "25 fans with opposite rays all have H-trivial classes in (R, 2R]; 25 fans without: none beyond the \
         certified radius d in (d, 2d]. Literal form with R = 10·max|coord| does not hold: {} of 25 fans without \
         opposite rays have H-trivial classes in (R, 2R] (verified by cohomology), e.g. {}",
        literal_counterexamples.len(),
        literal_counterexamples.first().map_or("none", String::as_str)
    );
    Outcome { amended: true, ..ok(detail) }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let f = random_collinear_fan(&mut rng, 7, 6);
        let pic = PicardGroup::new(&f);
        for pair in f.collinear_pairs() {
            let d = sign_change_divisor(&pic, pair).unwrap();
            let h = cohomology_of_divisor(&f, &d);
            ensure!(is_zero(&h), "fan {f}, pair ({}, {}): divisor {d:?} has cohomology {h:?}", pair.i + 1, pair.j + 1);
        }
    }
    ok("20 fans, every collinear pair gives a class with cohomology (0,0,0)")
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..100 {
        let f = random_fan(&mut rng, 6, 4);
        let a = random_divisor(&mut rng, f.n(), 5);
        let b = contribution_box(&f, &a);
        let small = cohomology_in_box(&f, &a, &b);
        let big = cohomology_in_box(&f, &a, &b.doubled());
        ensure!(small == big, "instance {k}: fan {f}, divisor {a:?}: {small:?} vs {big:?}");
    }
    ok("100 instances, doubling the box changes nothing")
}

// Brute-force semigroup oracle, k ≤ 2.

type Pt = (Vec<i64>, Vec<i64>);

struct Brute {
    k: usize,
    torsion: Vec<i64>,
    gens: Vec<Pt>,
    h: Vec<i64>,
}

impl Brute {
    fn from(sg: &ConeSemigroup) -> Self {
        let v = |xs: &[BigInt]| xs.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
        Brute {
            k: sg.k(),
            torsion: v(sg.torsion()),
            gens: sg.generators().iter().map(|g| (v(&g.free), v(&g.torsion))).collect(),
            h: v(sg.h()),
        }
    }

    fn height(&self, p: &Pt) -> i64 {
        p.0.iter().zip(&self.h).map(|(x, y)| x * y).sum()
    }

    fn add(&self, a: &Pt, b: &Pt) -> Pt {
        (
            a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect(),
            a.1.iter().zip(&b.1).zip(&self.torsion).map(|((x, y), d)| (x + y).rem_euclid(*d)).collect(),
        )
    }

    fn sub(&self, a: &Pt, b: &Pt) -> Pt {
        let neg = (b.0.iter().map(|x| -x).collect(), b.1.iter().map(|x| -x).collect());
        self.add(a, &neg)
    }

    /// Free part in the real cone, by Carathéodory over 1- and 2-subsets.
    fn in_cone(&self, x: &[i64]) -> bool {
        if x.iter().all(|v| *v == 0) {
            return true;
        }
        let ray = |w: &[i64]| {
            // x = t w with t > 0
            let cross_zero = self.k == 1 || w[0] * x[1] == w[1] * x[0];
            cross_zero && w.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() > 0
        };
        if self.gens.iter().any(|g| ray(&g.0)) {
            return true;
        }
        if self.k == 1 {
            return false;
        }
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let (a, b) = (&a.0, &b.0);
                let det = a[0] * b[1] - a[1] * b[0];
                if det == 0 {
                    continue;
                }
                // x = s a + t b
                let s = x[0] * b[1] - x[1] * b[0];
                let t = a[0] * x[1] - a[1] * x[0];
                if s * det.signum() >= 0 && t * det.signum() >= 0 {
                    return true;
                }
            }
        }
        false
    }

    fn torsion_cosets(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |t| {
                        let mut q = p.clone();
                        q.push(t);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// C ∩ M up to height `hmax`.
    fn cone_points(&self, hmax: i64) -> HashSet<Pt> {
        let reach = hmax * self.gens.iter().flat_map(|g| g.0.iter().map(|x| x.abs())).max().unwrap_or(1);
        let mut frees: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..self.k {
            frees = frees
                .into_iter()
                .flat_map(|p| {
                    (-reach..=reach).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        let cosets = self.torsion_cosets();
        let mut out = HashSet::new();
        for f in frees {
            let hv: i64 = f.iter().zip(&self.h).map(|(x, y)| x * y).sum();
            if hv <= hmax && self.in_cone(&f) {
                for t in &cosets {
                    out.insert((f.clone(), t.clone()));
                }
            }
        }
        out
    }

    /// FS up to height `hmax`, by closing {0} under adding generators.
    fn fs(&self, hmax: i64) -> HashSet<Pt> {
        let zero = (vec![0; self.k], vec![0; self.torsion.len()]);
        let mut seen = HashSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        while let Some(p) = frontier.pop() {
            for g in &self.gens {
                let q = self.add(&p, g);
                if self.height(&q) <= hmax && seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        seen
    }

    /// Number of c ∈ Z≥0^n with Σ c_i w_i = x, by exhaustive search.
    fn representations(&self, x: &Pt, j: usize) -> u64 {
        if j == self.gens.len() {
            return u64::from(x.0.iter().all(|v| *v == 0) && x.1.iter().all(|v| *v == 0));
        }
        let mut total = 0;
        let mut rest = x.clone();
        while self.height(&rest) >= 0 {
            total += self.representations(&rest, j + 1);
            rest = self.sub(&rest, &self.gens[j]);
        }
        total
    }
}

fn random_semigroup(rng: &mut ChaCha8Rng) -> ConeSemigroup {
    loop {
        let k = rng.gen_range(1..=2usize);
        let torsion: Vec<BigInt> = if rng.gen_bool(0.25) { vec![2.into()] } else { vec![] };
        let h: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=2)).collect();
        let n = rng.gen_range(k..=4usize);
        let mut gens = Vec::new();
        while gens.len() < n {
            let free: Vec<i64> = (0..k).map(|_| rng.gen_range(-5..=5)).collect();
            let hv: i64 = free.iter().zip(&h).map(|(x, y)| x * y).sum();
            if hv <= 0 || hv > 6 {
                continue;
            }
            let tor: Vec<i64> = torsion.iter().map(|_| rng.gen_range(0..2)).collect();
            gens.push(Element::from_i64(&free, &tor));
        }
        let h = h.into_iter().map(BigInt::from).collect();
        if let Ok(sg) = ConeSemigroup::new(k, torsion, gens, h) {
            return sg;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut covered, mut shifted, mut sampled) = (0usize, 0usize, 0usize);
    for s in 0..20 {
        let sg = random_semigroup(&mut rng);
        let bf = Brute::from(&sg);
        let to_pt = |e: &Element| bf_pt(e);
        let bound: i64 = bf.gens.iter().map(|g| bf.height(g)).sum();
        let cone = bf.cone_points(80);
        let fs = bf.fs(80);
        let label =
            format!("semigroup {s} ({:?})", sg.generators().iter().map(ToString::to_string).collect::<Vec<_>>());

        // Γ against the brute-force cone.
        let gamma: HashSet<Pt> = sg.gamma_set().points.iter().map(to_pt).collect();
        let gamma_bf: HashSet<Pt> = cone.iter().filter(|p| bf.height(p) < bound).cloned().collect();
        ensure!(gamma == gamma_bf, "{label}: Γ differs from the brute-force cone points");

        // Covering: C ∩ M = ∪ (γ + FS) up to height 50.
        for x in cone.iter().filter(|p| bf.height(p) <= 50) {
            ensure!(gamma.iter().any(|g| fs.contains(&bf.sub(x, g))), "{label}: {x:?} is not covered");
            covered += 1;
        }
        for g in &gamma {
            for a in fs.iter().filter(|a| bf.height(a) + bf.height(g) <= 50) {
                ensure!(cone.contains(&bf.add(g, a)), "{label}: γ + FS leaves the cone");
            }
        }

        // Saturation containment up to height 80 (FS is complete to height 80).
        let shift = sg.saturation_shift().unwrap();
        let r = to_pt(&shift.r);
        ensure!(fs.contains(&r) || bf.height(&r) > 80, "{label}: r ∉ FS");
        for x in &cone {
            let y = bf.add(&r, x);
            if bf.height(&y) <= 80 {
                ensure!(fs.contains(&y), "{label}: r + {x:?} ∉ FS");
                shifted += 1;
            }
        }

        // Multiplicity: sampled points of r + p + (C ∩ M) up to height 80.
        if sg.n() > sg.k() {
            let m = rng.gen_range(1..=3i64);
            let mp = sg.multiplicity_point(&m.into()).unwrap();
            let base = bf.add(&r, &to_pt(&mp.p));
            let mut pool: Vec<&Pt> = cone.iter().filter(|x| bf.height(&bf.add(&base, x)) <= 80).collect();
            pool.sort();
            for x in pool.choose_multiple(&mut rng, 50) {
                let y = bf.add(&base, x);
                let reps = bf.representations(&y, 0);
                ensure!(reps >= m as u64, "{label}: {y:?} has {reps} < {m} representations");
                sampled += 1;
            }
        }
    }
    ok(format!(
        "20 semigroups: {covered} covered points (h ≤ 50), {shifted} shifted points, {sampled} multiplicity samples (h ≤ 80)"
    ))
}

fn bf_pt(e: &Element) -> Pt {
    let v = |xs: &[BigInt]| xs.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
    (v(&e.free), v(&e.torsion))
}

fn criterion_9() -> Outcome {
    let plane = PicardGroup::new(&fan(&[(1, 0), (0, 1), (-1, -1)]));
    let l2: Vec<String> = lambda_m_enumerate(&plane, 2, &BigRational::from_integer(10.into()))
        .unwrap()
        .iter()
        .map(|(c, _)| c.to_string())
        .collect();
    // Closed form on the plane: total cohomology of O(d) is below 2 iff d ∈ {0, -1, -2, -3}.
    let mut expected = Vec::new();
    for t in [0i64, -1, 1, -2, 2, -3, 3, -4, 4, -5, 5, -6, 6, -7, 7, -8, 8, -9, 9, -10, 10] {
        let h0 = if t >= 0 { (t + 2) * (t + 1) / 2 } else { 0 };
        let h2 = if t <= -3 { (-t - 1) * (-t - 2) / 2 } else { 0 };
        if h0 + h2 < 2 {
            expected.push(format!("({t})"));
        }
    }
    ensure!(l2 == expected, "Λ₂ = {l2:?}, expected {expected:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut fans = vec![
        fan(&[(1, 0), (0, 1), (-1, -1)]),
        fan(&[(1, 0), (0, 1), (-1, 0), (0, -1)]),
        fan(&[(1, 1), (0, 1), (-1, 0), (0, -1), (1, -1)]),
    ];
    fans.extend((0..7).map(|_| random_fan(&mut rng, 5, 3)));
    for f in &fans {
        let pic = PicardGroup::new(f);
        let radius = BigRational::from_integer(3.into());
        let l1: HashSet<LineBundleClass> =
            lambda_m_enumerate(&pic, 1, &radius).unwrap().into_iter().map(|(c, _)| c).collect();
        let hits: HashSet<LineBundleClass> = enumerate_h_trivial(
            &pic,
            &ClassifyOptions { radius: radius.clone(), certify: false, line_window: Some(BigInt::zero()) },
        )
        .unwrap()
        .hits
        .into_iter()
        .collect();
        ensure!(l1 == hits, "fan {f}: Λ₁ differs from the H-trivial set");
    }
    ok(format!("Λ₂(P², 10) = {{0,-1,-2,-3}}; Λ₁ = H-trivial set on {} fans", fans.len()))
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("five-ray golden classification", Some(Duration::from_secs(10)), criterion_1),
        ("projective plane certified", Some(Duration::from_secs(30)), criterion_2),
        ("product of lines", Some(Duration::from_secs(10)), criterion_3),
        ("dual-oracle equivalence", Some(Duration::from_secs(120)), criterion_4),
        ("finiteness verdict vs annulus evidence", None, criterion_5),
        ("sign-change construction", None, criterion_6),
        ("box sufficiency", None, criterion_7),
        ("semigroup suite", Some(Duration::from_secs(60)), criterion_8),
        ("cohomology-level sets", None, criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > *limit {
                outcome.pass = false;
                outcome.detail = format!("{}; over the {}s limit", outcome.detail, limit.as_secs());
            }
        }
        let status = match (outcome.pass, outcome.amended) {
            (true, false) => "PASS",
            (true, true) => "PASS (amended check)",
            (false, _) => "FAIL",
        };
        failures += usize::from(!outcome.pass);
        println!("[{}] {status} {name} ({:.2}s): {}", i + 1, elapsed.as_secs_f64(), outcome.detail);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
