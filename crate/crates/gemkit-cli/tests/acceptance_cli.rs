//! CLI-level acceptance: census determinism and timing, exit codes, and
//! the format twins.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gemkit"))
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Criterion 8: two census runs with different `--jobs` produce
/// byte-identical reports.
#[test]
fn criterion_8_census_determinism() {
    let catalog = fixtures().join("catalog.json");
    let r1 = tmp("census_j1.ndjson");
    let r4 = tmp("census_j4.ndjson");
    for (jobs, path) in [("1", &r1), ("4", &r4)] {
        let out = bin()
            .args(["census"])
            .arg(&catalog)
            .args(["--jobs", jobs, "--report"])
            .arg(path)
            .output()
            .expect("census run");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&r1).unwrap();
    let b = std::fs::read(&r4).unwrap();
    assert_eq!(a, b, "NDJSON reports differ between --jobs 1 and --jobs 4");
    let a_csv = std::fs::read(r1.with_extension("csv")).unwrap();
    let b_csv = std::fs::read(r4.with_extension("csv")).unwrap();
    assert_eq!(a_csv, b_csv, "CSV summaries differ between --jobs 1 and --jobs 4");
    println!("criterion 8 PASS: census reports byte-identical across --jobs");
}

/// Criterion 6 (timing half): the bundled catalog sweeps in well under
/// 30 seconds with 4 jobs, with no errors and the stuck control as the
/// only non-gem-induced rows.
#[test]
fn criterion_6_census_timing() {
    let catalog = fixtures().join("catalog.json");
    let report = tmp("census_timing.ndjson");
    let start = std::time::Instant::now();
    let out = bin()
        .args(["census"])
        .arg(&catalog)
        .args(["--jobs", "4", "--report"])
        .arg(&report)
        .output()
        .expect("census run");
    let elapsed = start.elapsed();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(elapsed.as_secs() < 30, "census took {:?}", elapsed);
    let csv = std::fs::read_to_string(report.with_extension("csv")).unwrap();
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[0] == "stuck" {
            assert_eq!(fields[3], "not_collapsible");
        } else {
            assert_eq!(fields[3], "gem_induced", "row: {}", line);
            assert_eq!(fields[8], "true");
        }
    }
    println!("criterion 6 PASS (cli): catalog census in {:?} with 4 jobs", elapsed);
}

#[test]
fn validate_exit_codes() {
    // valid file → 0
    let ok = bin()
        .arg("validate")
        .arg(fixtures().join("cp2.gem"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    // degree violation → 2 plus a message
    let bad = tmp("bad.gem");
    std::fs::write(&bad, "gem 5 2\n0 0 1\n1 0 1\n2 0 1\n4 0 1\n").unwrap();
    let out = bin().arg("validate").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no 3-colored edge"));
    // usage error → 1
    let usage = bin().arg("no-such-command").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
}

#[test]
fn json_twin_matches_text() {
    // The JSON mirror of a gem file validates identically.
    let text = std::fs::read_to_string(fixtures().join("cp2.gem")).unwrap();
    let g = gemkit::parse_gem(&text).unwrap();
    let twin = tmp("cp2_twin.json");
    std::fs::write(&twin, g.to_json()).unwrap();
    let out_a = bin().arg("validate").arg(fixtures().join("cp2.gem")).output().unwrap();
    let out_b = bin().arg("validate").arg(&twin).output().unwrap();
    assert_eq!(out_a.status.code(), Some(0));
    assert_eq!(out_b.status.code(), Some(0));
    assert_eq!(out_a.stdout, out_b.stdout);
}

#[test]
fn consum_with_sphere_echoes_input() {
    // Γ # (order-2 gem) represents the same manifold; the summed graph
    // has the same order and residue profile as the input.
    let out_path = tmp("cp2_plus_s4.gem");
    let sphere = tmp("s4.gem");
    std::fs::write(&sphere, gemkit::gem::order_two_graph(5).to_gem_text()).unwrap();
    let out = bin()
        .arg("consum")
        .arg(fixtures().join("cp2.gem"))
        .arg("0")
        .arg(&sphere)
        .arg("1")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sum = gemkit::parse_gem(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let orig = gemkit::parse_gem(&std::fs::read_to_string(fixtures().join("cp2.gem")).unwrap()).unwrap();
    assert_eq!(sum.order(), orig.order());
    for c in sum.colors() {
        assert_eq!(sum.residue_count_hat(c), orig.residue_count_hat(c));
    }
}

#[test]
fn fromlink_reports_parse_errors_cleanly() {
    let badpd = tmp("bad.pd");
    std::fs::write(&badpd, "PD[X(1,2,3)] framings: 0").unwrap();
    let out = bin()
        .arg("fromlink")
        .arg(&badpd)
        .arg(tmp("never.gem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    // framing count mismatch
    let mismatch = tmp("mismatch.pd");
    std::fs::write(&mismatch, "PD[X(1,4,2,3), X(3,2,4,1)] framings: 0").unwrap();
    let out = bin()
        .arg("fromlink")
        .arg(&mismatch)
        .arg(tmp("never2.gem"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trisect_stuck_fixture_not_collapsible() {
    let out = bin()
        .arg("trisect")
        .arg(fixtures().join("stuck.gem"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("NotCollapsible"));
}

#[test]
fn census_isolates_malformed_entries() {
    let dir = tmp("badcat");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("good.gem"), gemkit::gem::order_two_graph(5).to_gem_text()).unwrap();
    std::fs::write(dir.join("bad.gem"), "gem 5 2\n0 0 1\n").unwrap();
    std::fs::write(
        dir.join("cat.json"),
        r#"{"entries":[
            {"path":"bad.gem","label":"bad","m":0,"m_prime":0},
            {"path":"good.gem","label":"good","m":0,"m_prime":0,"closed":true}
        ]}"#,
    )
    .unwrap();
    let out = bin()
        .arg("census")
        .arg(dir.join("cat.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("bad,0,,error"));
    assert_eq!(stdout.matches("gem_induced").count(), 16); // 15 cells + summary
}
