use std::path::{Path, PathBuf};

use htriv::io::{run_cli, ReportDocument, ResultSection, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["htriv"];
    argv.extend_from_slice(args);
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> ReportDocument {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    ReportDocument::from_json(&out).unwrap()
}

#[test]
fn plane_certified() {
    let doc = report(&["classify", &data("p2.fan"), "--radius", "20", "--certify"]);
    let ResultSection::Classify(r) = doc.result else { panic!("wrong result kind") };
    assert_eq!(r.verdict, "finite");
    assert_eq!(r.sporadic, ["(-1)", "(-2)"]);
    assert_eq!(r.ball_provenance, "certified");
    assert!(r.certificate.is_some());
}

#[test]
fn five_ray_example() {
    let doc = report(&["classify", &data("ex4.fan"), "--radius", "6"]);
    assert_eq!(doc.picard.as_ref().unwrap().basis.as_deref(), Some(&["1".to_string(), "4".into(), "5".into()][..]));
    let ResultSection::Classify(r) = doc.result else { panic!("wrong result kind") };
    assert_eq!(r.verdict, "infinite");
    assert_eq!(r.sporadic.len(), 12);
    let lines: Vec<(&str, &str)> = r
        .lines
        .iter()
        .filter(|l| l.status == "fully_trivial")
        .map(|l| (l.direction.as_str(), l.base.as_str()))
        .collect();
    assert_eq!(lines, [("(1,0,1)", "(0,-1,-2)"), ("(1,0,1)", "(0,-1,-1)"), ("(1,0,1)", "(0,-1,0)")]);
}

#[test]
fn product_of_lines_cross_check() {
    let doc = report(&["trivial", &data("p1p1.fan"), "--class", "(-1,7)", "--cross-check"]);
    let ResultSection::Trivial(t) = doc.result else { panic!("wrong result kind") };
    assert!(t.h_trivial && t.cross_checked);
    assert_eq!(t.cohomology, Some(["0".to_string(), "0".into(), "0".into()]));

    let doc = report(&["trivial", &data("p1p1.fan"), "--class", "(0,0)"]);
    let ResultSection::Trivial(t) = doc.result else { panic!("wrong result kind") };
    assert!(!t.h_trivial);
    assert!(t.witness.is_some());
}

#[test]
fn reports_are_byte_identical() {
    let args = ["classify", &data("ex4.fan"), "--radius", "4"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    assert_eq!(ReportDocument::from_json(&a).unwrap().to_json(), a);
}

#[test]
fn basis_flag_overrides_the_file() {
    let doc = report(&["--basis", "1,2,3", "cohomology", &data("ex4.fan"), "--class", "(0,0,0)"]);
    assert_eq!(doc.picard.unwrap().basis.unwrap(), ["1", "2", "3"]);
    let ResultSection::Cohomology(c) = doc.result else { panic!("wrong result kind") };
    assert_eq!((c.h0.as_str(), c.h1.as_str(), c.h2.as_str()), ("1", "0", "0"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["classify", &data("p2.fan"), "--radius", "0"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.starts_with("error[E_NONPOSITIVE_RADIUS]"));

    let (code, _, err) = run(&["classify", &data("p2.fan")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--radius"));

    let (code, _, err) = run(&["cohomology", &data("p2.fan"), "--class", "(1,2)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error[E_USAGE]"));

    let (code, _, err) = run(&["validate", "/nonexistent/fan.json"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.starts_with("error[E_IO]"));

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("classify"));
}

#[test]
fn invalid_fan_file_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.fan");
    std::fs::write(&path, "{\"vectors\": [[1,0],\n [2,0], [0,1]]}").unwrap();
    let (code, _, err) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.starts_with("error[E_FAN_DUPLICATE_RAY]: line 2, column 2"), "{err}");
}

#[test]
fn lambda_and_validate() {
    let doc = report(&["lambda", &data("p2.fan"), "-m", "2", "--radius", "10"]);
    let ResultSection::Lambda(l) = doc.result else { panic!("wrong result kind") };
    let classes: Vec<&str> = l.classes.iter().map(|c| c.class.as_str()).collect();
    assert_eq!(classes, ["(0)", "(-1)", "(-2)", "(-3)"]);

    let doc = report(&["validate", &data("p1p1.fan")]);
    let ResultSection::Validate(v) = doc.result else { panic!("wrong result kind") };
    assert!(v.valid && v.infinite);
    assert_eq!(doc.fan.unwrap().collinear_pairs, [["1", "3"], ["2", "4"]]);
}

fn plot(args: &[&str], out: &Path) -> String {
    let mut a = vec!["plot"];
    a.extend_from_slice(args);
    let o = out.to_str().unwrap();
    a.extend_from_slice(&["--out", o]);
    report(&a);
    std::fs::read_to_string(out).unwrap()
}

#[test]
fn plots_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fan.svg");
    let s = dir.path().join("slice.svg");
    let fan = plot(&[&data("ex4.fan")], &f);
    assert!(fan.starts_with("<?xml") && fan.contains("<svg"));
    assert_eq!(plot(&[&data("ex4.fan")], &f), fan);
    let slice = plot(&[&data("ex4.fan"), "--picard-slice", "1,3:0", "--radius", "3"], &s);
    assert_eq!(plot(&[&data("ex4.fan"), "--picard-slice", "1,3:0", "--radius", "3"], &s), slice);
    assert!(slice.contains("horizontal E1, vertical E5"));
}

#[test]
fn semigroup_commands() {
    let sg = data("numerical.sg");
    let doc = report(&["semigroup", "gamma", &sg]);
    let ResultSection::SemigroupGamma(g) = doc.result else { panic!("wrong result kind") };
    assert_eq!(g.points, ["(0)", "(1)", "(2)", "(3)", "(4)"]);

    let doc = report(&["semigroup", "decompose", &sg, "--point", "(7)"]);
    let ResultSection::SemigroupDecompose(d) = doc.result else { panic!("wrong result kind") };
    assert_eq!((d.a.as_str(), d.b.as_str()), ("(4)", "(3)"));

    let doc = report(&["semigroup", "mult", &sg, "-m", "3"]);
    let ResultSection::SemigroupMult(m) = doc.result else { panic!("wrong result kind") };
    assert_eq!(m.p, "(24)");

    report(&["semigroup", "shift", &sg]);
    let (code, _, _) = run(&["semigroup", "decompose", &sg, "--point", "(-1)"]);
    assert_eq!(code, EXIT_DOMAIN);
}
