use std::process::{Command, Output};

use serde_json::Value;

fn chbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chbound"))
        .args(args)
        .env_remove("CHBOUND_JOBS")
        .env_remove("CHBOUND_OUT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = chbound(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON envelope")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn bound_examples() {
    let v = json(&[
        "bound",
        "-r",
        "4",
        "-d",
        "25",
        "-s",
        "3",
        "--pi",
        "0",
        "--relaxed",
    ]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "bound");
    assert_eq!(v["result"]["gstar"], "84");
    assert_eq!(v["result"]["m"], "8");
    assert_eq!(v["result"]["epsilon"], "0");
    assert_eq!(v["warnings"][0]["kind"], "below_degree_threshold");

    let v = json(&[
        "bound",
        "-r",
        "6",
        "-d",
        "100",
        "-s",
        "8",
        "--pi",
        "1",
        "-p",
        "-3",
        "--relaxed",
    ]);
    assert_eq!(v["result"]["gstar"], "579");
    assert_eq!(v["inputs"]["p"], "-3");

    let out = chbound(&["bound", "-r", "4", "-d", "25", "-s", "5", "--pi", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("s > 2r-4"));
}

#[test]
fn bound_sharpness_and_csv() {
    let v = json(&[
        "bound", "-r", "6", "-d", "577", "-s", "8", "--pi", "1", "-p", "-2",
    ]);
    assert_eq!(v["result"]["sharpness"]["status"], "sharp_proven");
    assert_eq!(v["result"]["sharpness"]["case"], "linear_deficiency");
    assert!(v["warnings"].as_array().unwrap().is_empty());

    let out = chbound(&[
        "bound", "-r", "4", "-d", "25", "-s", "3", "--pi", "0", "--csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("r,d,s,pi,p,m,epsilon,pi0,gstar"));
    assert_eq!(lines.next().unwrap(), "4,25,3,0,0,8,0,0,84,0,false,false");
}

#[test]
fn huge_degrees_stay_exact() {
    let d = "100000000000000000000000000001";
    let v = json(&["bound", "-r", "12", "-d", d, "-s", "20", "--pi", "9"]);
    // m = 5 * 10^27, eps = 0, pi = pi0 = 9.
    let m: num_bigint::BigInt = "5000000000000000000000000000".parse().unwrap();
    let expected = &m * (&m - 1u32) / 2u32 * 20u32 + &m * 9u32 + 0u32;
    assert_eq!(v["result"]["gstar"], expected.to_string());
}

#[test]
fn hilbert_examples() {
    let v = json(&[
        "hilbert",
        "-r",
        "4",
        "-d",
        "25",
        "-s",
        "3",
        "--pi",
        "0",
        "--relaxed",
        "--diff",
    ]);
    assert_eq!(v["result"]["genus_sum"], "84");
    let table = v["result"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 9);
    assert_eq!(table[8]["h"], "25");
    let delta_sum: i64 = table[1..]
        .iter()
        .map(|row| row["delta"].as_str().unwrap().parse::<i64>().unwrap())
        .sum();
    assert_eq!(delta_sum, 24);

    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("maximal.json");
    std::fs::write(&profile, "[2, 1]").unwrap();
    let args = [
        "hilbert",
        "-r",
        "6",
        "-d",
        "100",
        "-s",
        "8",
        "--pi",
        "1",
        "--relaxed",
    ];
    let model = json(&args);
    let mut with_profile = args.to_vec();
    with_profile.extend(["--profile", profile.to_str().unwrap()]);
    let from = json(&with_profile);
    assert_eq!(model["result"]["table"], from["result"]["table"]);
    assert_eq!(from["result"]["origin"], "from_profile");
    assert_eq!(from["result"]["genus_sum"], "579");

    std::fs::write(&profile, "2,2").unwrap();
    let out = chbound(&with_profile);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("i = 2"));
}

#[test]
fn surface_examples() {
    let v = json(&[
        "surface", "-s", "8", "-r", "6", "--pi", "0", "--h1", "3,2,1",
    ]);
    assert_eq!(v["result"]["p_a"], "-6");
    assert_eq!(v["result"]["rao_dimension"], "6");
    assert_eq!(v["result"]["genus_range"]["lo"], "-6");
    assert_eq!(v["result"]["genus_range"]["hi"], "0");
    assert_eq!(v["result"]["regularity_bound"]["numerator"], "37");

    let v = json(&["surface", "-s", "8", "-r", "6", "--pi", "3", "--h1", ""]);
    assert_eq!(v["result"]["p_a"], "0");

    let out = chbound(&["surface", "-s", "8", "-r", "6", "--pi", "0", "--h1", "3,3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("i = 2"), "{}", stderr(&out));

    let v = json(&[
        "surface", "-s", "8", "-r", "6", "--pi", "0", "--h1", "3,2,1", "--mu", "0,9",
    ]);
    assert_eq!(v["result"]["p_a"], "3");
    assert_eq!(v["warnings"][0]["kind"], "inadmissible_surface_genus");
}

#[test]
fn extremal_examples() {
    let v = json(&[
        "extremal", "-r", "6", "-d", "804", "-s", "8", "--pi", "1", "-k", "164",
    ]);
    assert_eq!(v["result"]["assembly"]["matched"], true);
    assert_eq!(v["result"]["assembly"]["assembled"], "40003");
    assert_eq!(v["result"]["construction"]["a"], "-21");

    let v = json(&[
        "extremal", "-r", "4", "-d", "25", "-s", "3", "--pi", "0", "-k", "7",
    ]);
    assert_eq!(v["result"]["assembly"]["target"], "84");

    let out = chbound(&[
        "extremal", "-r", "4", "-d", "25", "-s", "3", "--pi", "0", "-k", "8",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_examples() {
    let v = json(&[
        "table", "-r", "6", "-s", "8", "--pi", "1", "-p", "-3", "--d-from", "805", "--d-to", "837",
        "--step", "8",
    ]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (j, row) in rows.iter().enumerate() {
        assert_eq!(row["second_difference"], "8");
        if j > 0 {
            // m s + eps + pi at the previous row
            let m: i64 = rows[j - 1]["m"].as_str().unwrap().parse().unwrap();
            assert_eq!(row["delta"], (m * 8 + 4 + 1).to_string());
        }
    }

    let v = json(&[
        "table", "-r", "6", "-s", "8", "--pi", "1", "--d-from", "900", "--d-to", "900",
    ]);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 1);

    let out = chbound(&[
        "table", "-r", "6", "-s", "8", "--pi", "1", "--d-from", "9", "--d-to", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty range"));
}

#[test]
fn verify_with_grid_file_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    std::fs::write(
        &grid,
        r#"{"r_range": [4, 6], "checks": ["lemma_num_1", "assembly"]}"#,
    )
    .unwrap();
    let out_dir = dir.path().join("reports");
    let out = Command::new(env!("CARGO_BIN_EXE_chbound"))
        .args(["verify", "--grid", grid.to_str().unwrap()])
        .env("CHBOUND_OUT", &out_dir)
        .env("CHBOUND_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: Value =
        serde_json::from_slice(&std::fs::read(out_dir.join("assembly.json")).unwrap()).unwrap();
    assert_eq!(report["check"], "assembly");
    assert!(report["violations"].as_array().unwrap().is_empty());
    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 3);

    std::fs::write(&grid, r#"{"r_range": [4, 6], "checks": ["no_such_check"]}"#).unwrap();
    let out = chbound(&[
        "verify",
        "--grid",
        grid.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no_such_check"));

    let out = chbound(&["verify", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
