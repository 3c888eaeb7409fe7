use std::io::Write;
use std::process::{Command, Output};

use admkit::output::Report;
use admkit::schema::{KacDetOut, NsGridRowOut, PartitionRow, RecoveryOut, Sl2Out, VacuumOut, VirGridRowOut, WReduceOut};
use admkit_core::exactmath::{frac, MultiPoly, Rational};
use serde::de::DeserializeOwned;

fn admkit(args: &str) -> Output {
    admkit_with(args, None)
}

fn admkit_with(args: &str, config: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_admkit"));
    cmd.args(args.split_whitespace()).env_remove("ADMKIT_CONFIG");
    if let Some(path) = config {
        cmd.env("ADMKIT_CONFIG", path);
    }
    cmd.output().expect("binary runs")
}

fn report(args: &str) -> Report {
    let out = admkit(args);
    assert_eq!(out.status.code(), Some(0), "{args}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn results<T: DeserializeOwned>(args: &str) -> T {
    serde_json::from_value(report(args).results).expect("payload matches its schema")
}

fn rat(r: &admkit::schema::Rat) -> Rational {
    Rational::try_from(r).unwrap()
}

#[test]
fn vacuum_example() {
    let v: VacuumOut = results("affine vacuum --type A1 --p 1 --q 5");
    assert!(v.k_admissible);
    assert!(!v.kw_admissible);
    let g2: VacuumOut = results("affine vacuum --type G2 --p 7 --q 3");
    assert_eq!(g2.gcd_q_l, Some(3));
    assert!(g2.kw_admissible);
}

#[test]
fn virasoro_grid() {
    let rows: Vec<VirGridRowOut> = results("vir classify --p 4 --q 3 --format json");
    assert_eq!(rows.len(), 20);
    let corner = frac(143, 48);
    for r in &rows {
        assert_eq!(r.c_admissible, rat(&r.h) != corner, "({}, {})", r.r, r.s);
    }
    let mm: Vec<Rational> = rows.iter().filter(|r| r.minimal_model).map(|r| rat(&r.h)).collect();
    assert_eq!(mm.len(), 6);
}

#[test]
fn ns_grid_leaves_corner_open() {
    let rows: Vec<NsGridRowOut> = results("ns classify --p 4 --q 2");
    let open: Vec<_> = rows.iter().filter(|r| r.c_admissible.is_none()).collect();
    assert_eq!(open.len(), 2);
    assert!(open.iter().all(|r| r.status == "unknown-per-paper"));
}

#[test]
fn partitions_default_to_csv() {
    let out = admkit("partitions --algebra vir --up-to 6");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "depth,dim\n0,1\n1,1\n2,2\n3,3\n4,5\n5,7\n6,11\n");
    let rows: Vec<PartitionRow> = results("partitions --algebra ns --up-to 3/2 --format json");
    assert_eq!(rows.iter().map(|r| r.dim).collect::<Vec<_>>(), [1, 1, 1, 2]);
}

#[test]
fn kac_determinant_round_trips() {
    let out: KacDetOut = results("kac-det --algebra vir --level 3 --json");
    assert!(out.closed_form_ratio.is_some());
    assert_eq!(out.size, 3);
    let det = MultiPoly::try_from(&out.determinant).unwrap();
    // h = 0 is a root at every depth
    assert_eq!(det.eval_slice(&[frac(0, 1), frac(1, 2)]).unwrap(), frac(0, 1));
    let ns: KacDetOut = results("kac-det --algebra ns --level 3/2");
    assert_eq!(ns.size, 2);
}

#[test]
fn affine_sl2_weights() {
    let out: Sl2Out = results("affine sl2 --p 3 --q 2 --validate");
    assert_eq!(out.rows.len(), 8);
    assert_eq!(out.rows.iter().filter(|r| r.kw_admissible).count(), 4);
    let v = out.validation.expect("requested");
    assert!(v.mismatches.is_empty() && v.checked > 0);
}

#[test]
fn reduction() {
    let w: WReduceOut = results("wred reduce --type A1 --p 4 --q 3 --r 2 --s 2");
    assert_eq!(rat(&w.l0), frac(1, 16));
    assert_eq!(rat(&w.central_charge), frac(1, 2));
    let rep = admkit("wred recovery --p 4 --q 3 --check");
    assert_eq!(rep.status.code(), Some(0));
    let rec: RecoveryOut = serde_json::from_value(serde_json::from_slice::<Report>(&rep.stdout).unwrap().results).unwrap();
    assert!(rec.passed);
}

#[test]
fn exit_codes() {
    assert_eq!(admkit("no-such-command").status.code(), Some(2));
    assert_eq!(admkit("vir classify --p 4 --q 3 --bogus").status.code(), Some(2));
    assert_eq!(admkit("classify --type A2 --labels x").status.code(), Some(2));
    assert_eq!(admkit("vir classify --p 4 --q 2").status.code(), Some(2));
    assert_eq!(admkit("affine vacuum --type C2 --p 0 --q 1").status.code(), Some(1));
    assert_eq!(admkit("vir selfext --h 1 --k -2").status.code(), Some(1));
    assert_eq!(admkit("kac-det --algebra vir --level 40").status.code(), Some(1));
    assert_eq!(admkit("--help").status.code(), Some(0));
    assert_eq!(admkit("--version").status.code(), Some(0));
    let usage = admkit("vir classify --p 4 --q 3 --bogus");
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
}

#[test]
fn degenerate_deformation_is_a_domain_error() {
    // at h = 0 the Virasoro determinant vanishes for every c, so moving c alone degenerates
    let out = admkit("jantzen --algebra vir --h 0 --c 0 --mu c:1 --up-to 2");
    assert_eq!(out.status.code(), Some(1));
    let ok = admkit("jantzen --algebra vir --h 1/16 --k -2/3 --up-to 4");
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in ["vir classify --p 5 --q 2", "affine sl2 --p 4 --q 3 --format csv", "verify --suite 5,7 --format json"] {
        let a = admkit(args);
        let b = admkit(args);
        assert_eq!(a.status.code(), Some(0), "{args}");
        assert_eq!(a.stdout, b.stdout, "{args}");
    }
}

#[test]
fn config_file_from_environment() {
    let dir = std::env::temp_dir().join(format!("admkit-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::File::create(&good).unwrap().write_all(br#"{"height": 7, "format": "csv"}"#).unwrap();
    let out = admkit_with("vir classify --p 4 --q 3", Some(&good));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("r,s,h,"));
    let json = admkit_with("vir classify --p 4 --q 3 --format json", Some(&good));
    let rep: Report = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(rep.config.height, 7);

    let bad = dir.join("bad.json");
    std::fs::File::create(&bad).unwrap().write_all(br#"{"height": 0}"#).unwrap();
    assert_eq!(admkit_with("vir classify --p 4 --q 3", Some(&bad)).status.code(), Some(2));
    assert_eq!(admkit_with("vir classify --p 4 --q 3", Some(&dir.join("missing.json"))).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_table_lists_claims() {
    let out = admkit("verify --suite 7");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("reduction-recovery") && text.contains("claim"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("check  7"));
}
