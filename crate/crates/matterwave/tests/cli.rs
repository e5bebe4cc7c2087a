//! End-to-end checks of the command-line front end: subcommand dispatch,
//! dry runs, exit codes, unit suffixes, output files and run manifests.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_matterwave")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mw_cli_{tag}_{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(bin())
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("spawn matterwave binary")
}

/// One minimal valid invocation per subcommand.
fn all_commands() -> Vec<Vec<&'static str>> {
    vec![
        vec!["twomode", "spectrum", "--N", "6", "--J", "1", "--U", "0.4"],
        vec![
            "twomode",
            "ground-scan",
            "--N",
            "10",
            "--gamma-min",
            "0.01",
            "--gamma-max",
            "1",
            "--points",
            "3",
        ],
        vec!["twomode", "ground", "--N", "10", "--J", "1", "--U", "0.1"],
        vec![
            "twomode",
            "evolve",
            "--N",
            "8",
            "--J",
            "1",
            "--t-max",
            "3",
            "--samples",
            "9",
        ],
        vec![
            "twomode",
            "husimi",
            "--N",
            "6",
            "--state",
            "coherent",
            "--theta",
            "1.0",
            "--n-theta",
            "7",
            "--n-phi",
            "9",
        ],
        vec![
            "meanfield",
            "integrate",
            "--N",
            "100",
            "--J",
            "0.5",
            "--U",
            "0.08",
            "--z0",
            "0.6",
            "--phi0",
            "0",
            "--t-max",
            "20",
            "--samples",
            "64",
        ],
        vec![
            "meanfield",
            "portrait",
            "--N",
            "100",
            "--J",
            "0.5",
            "--U",
            "0.015",
            "--t-max",
            "30",
            "--samples",
            "128",
            "--n-z",
            "3",
        ],
        vec![
            "meanfield",
            "frequencies",
            "--N",
            "100",
            "--J",
            "0.5",
            "--U",
            "0.03",
        ],
        vec![
            "tof",
            "pattern",
            "--species",
            "Na",
            "--omega",
            "12566",
            "--d",
            "4um",
            "--t",
            "5ms",
            "--points",
            "101",
        ],
        vec![
            "tof",
            "fringe-k",
            "--species",
            "Na",
            "--omega",
            "12566",
            "--d",
            "4um",
            "--t",
            "5ms",
        ],
        vec![
            "luttinger",
            "params",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "60um",
        ],
        vec![
            "luttinger",
            "equilibrium",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "60um",
            "--z-points",
            "5",
        ],
        vec![
            "luttinger",
            "quench",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "60um",
            "--t",
            "2ms",
            "--z-points",
            "5",
        ],
        vec![
            "luttinger",
            "lightcone",
            "--as",
            "5.2nm",
            "--omega-perp",
            "5413",
            "--n1d",
            "35/um",
            "--T",
            "30nK",
            "--length",
            "120um",
            "--t-grid",
            "2:6:2ms",
            "--z-points",
            "200",
        ],
        vec![
            "fringes",
            "synthesize",
            "--kind",
            "const",
            "--phi0",
            "0.4",
            "--lambda-f",
            "12um",
            "--envelope-sigma",
            "20um",
            "--pixel-size",
            "1um",
            "--rows",
            "16",
        ],
        vec![
            "fringes",
            "fdf",
            "--kind",
            "thermal",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "40um",
            "--L",
            "10um",
            "--n",
            "120",
        ],
        vec![
            "optics",
            "calc",
            "eikonal",
            "--V",
            "6.6e-12eV",
            "--L",
            "0.1",
            "--species",
            "Na",
            "--v",
            "1000",
        ],
        vec![
            "optics",
            "calc",
            "talbot",
            "--d",
            "100nm",
            "--lambda-db",
            "16pm",
        ],
        vec![
            "optics",
            "table",
            "diffraction",
            "--species",
            "Na",
            "--v",
            "1000",
            "--d",
            "100nm",
            "--orders",
            "3",
        ],
        vec![
            "optics",
            "table",
            "talbot-lau",
            "--d",
            "100nm",
            "--lambda-db",
            "16pm",
            "--points",
            "7",
        ],
    ]
}

#[test]
fn every_subcommand_supports_dry_run() {
    let dir = temp_dir("dry_all");
    for args in all_commands() {
        let mut full = args.clone();
        full.push("--dry-run");
        let out = run_in(&dir, &full);
        assert!(
            out.status.success(),
            "dry-run failed for {:?}: {}",
            args,
            String::from_utf8_lossy(&out.stderr)
        );
    }
    // dry runs write nothing
    assert!(std::fs::read_dir(&dir).unwrap().next().is_none());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn every_subcommand_produces_outputs_and_manifest() {
    for args in all_commands() {
        let dir = temp_dir(&format!("run_{}_{}", args[0], args[1].replace('-', "_")));
        let out = run_in(&dir, &args);
        assert!(
            out.status.success(),
            "{:?} failed: {}",
            args,
            String::from_utf8_lossy(&out.stderr)
        );
        let manifest = matterwave::cli::verify_manifest(&dir).expect("manifest verifies");
        assert!(!manifest.outputs.is_empty(), "{args:?} produced no outputs");
        std::fs::remove_dir_all(&dir).ok();
    }
}

#[test]
fn exit_codes_match_contract() {
    let dir = temp_dir("codes");
    // validation error names the field and exits 2
    let out = run_in(&dir, &["twomode", "spectrum", "--N", "0", "--J", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("N"));
    // unknown key: exit 2
    let out = run_in(
        &dir,
        &[
            "twomode",
            "spectrum",
            "--N",
            "4",
            "--J",
            "1",
            "--frobnicate",
            "3",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    // numerical failure (Talbot-Lau pole): exit 3
    let out = run_in(
        &dir,
        &[
            "optics",
            "calc",
            "talbot-lau",
            "--d",
            "100nm",
            "--lambda-db",
            "16pm",
            "--L1",
            "0.0003125",
            "--n",
            "1",
            "--m-order",
            "2",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    // failures leave no partial outputs behind
    assert!(std::fs::read_dir(&dir).unwrap().next().is_none());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_dir_env_honored_and_flag_wins() {
    let env_dir = temp_dir("envdir");
    let flag_dir = temp_dir("flagdir");
    // env var only
    let out = Command::new(bin())
        .args([
            "meanfield",
            "frequencies",
            "--N",
            "100",
            "--J",
            "0.5",
            "--U",
            "0.03",
        ])
        .env("MATTERWAVE_OUT", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_dir.join("frequencies.json").exists());
    // flag wins over env var
    let out = Command::new(bin())
        .args([
            "meanfield",
            "frequencies",
            "--N",
            "100",
            "--J",
            "0.5",
            "--U",
            "0.03",
            "--out",
        ])
        .arg(&flag_dir)
        .env("MATTERWAVE_OUT", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(flag_dir.join("frequencies.json").exists());
    std::fs::remove_dir_all(&env_dir).ok();
    std::fs::remove_dir_all(&flag_dir).ok();
}

#[test]
fn config_file_with_flag_override_lands_in_manifest() {
    let dir = temp_dir("cfg");
    let cfg = dir.join("scan.cfg");
    std::fs::write(&cfg, "N = 8\nJ = 1\nU = 0.2\nseed = 3\n").unwrap();
    let out = Command::new(bin())
        .args(["twomode", "spectrum", "--config"])
        .arg(&cfg)
        .args(["--seed", "7", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let manifest = matterwave::cli::verify_manifest(&dir).unwrap();
    assert_eq!(manifest.seed, 7);
    assert_eq!(manifest.config.get("N").map(String::as_str), Some("8"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn manifest_self_check_flag_and_tamper_detection() {
    let dir = temp_dir("verify");
    let out = run_in(
        &dir,
        &[
            "twomode",
            "spectrum",
            "--N",
            "4",
            "--J",
            "1",
            "--verify-manifest",
        ],
    );
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("manifest verified"));
    // tampering with an output invalidates the manifest
    let target = dir.join("spectrum.csv");
    let mut bytes = std::fs::read(&target).unwrap();
    bytes.push(b'x');
    std::fs::write(&target, bytes).unwrap();
    assert!(matterwave::cli::verify_manifest(&dir).is_err());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn optics_tables_carry_a_units_row() {
    let dir = temp_dir("units");
    run_in(
        &dir,
        &[
            "optics",
            "table",
            "diffraction",
            "--species",
            "Na",
            "--v",
            "1000",
            "--d",
            "100nm",
        ],
    );
    let text = std::fs::read_to_string(dir.join("diffraction.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "order,delta_p,theta,small_angle_ok");
    assert_eq!(lines.next().unwrap(), ",kg m/s,rad,");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn tof_pattern_embeds_json_parameter_header() {
    let dir = temp_dir("tofhdr");
    run_in(
        &dir,
        &[
            "tof",
            "pattern",
            "--species",
            "Na",
            "--omega",
            "12566",
            "--d",
            "4um",
            "--t",
            "5ms",
            "--points",
            "64",
        ],
    );
    let text = std::fs::read_to_string(dir.join("pattern.csv")).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("# {"));
    let v: serde_json::Value = serde_json::from_str(first.trim_start_matches("# ")).unwrap();
    assert!(v["sigma0"].as_f64().unwrap() > 0.0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn synthesize_binary_image_with_sidecar() {
    let dir = temp_dir("imgbin");
    let out = run_in(
        &dir,
        &[
            "fringes",
            "synthesize",
            "--kind",
            "const",
            "--lambda-f",
            "12um",
            "--envelope-sigma",
            "20um",
            "--pixel-size",
            "1um",
            "--rows",
            "16",
            "--binary",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("image.json")).unwrap()).unwrap();
    let shape = sidecar["shape"].as_array().unwrap();
    let (rows, cols) = (shape[0].as_u64().unwrap(), shape[1].as_u64().unwrap());
    let bytes = std::fs::read(dir.join("image.f32")).unwrap();
    assert_eq!(bytes.len() as u64, rows * cols * 4);
    assert_eq!(sidecar["format"], "f32-le");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fit_reads_profile_csv_and_recovers_parameters() {
    let dir = temp_dir("fitcsv");
    // write a synthetic profile with the fixed 17-significant-digit format
    let (a, x0, sigma, c, lambda, phi) = (4.0, 1.0e-6, 15e-6, 0.37, 12e-6, 0.9);
    let mut text = String::from("x,value\n");
    for i in 0..2000 {
        let x = -50e-6 + 100e-6 * i as f64 / 1999.0;
        let value = a
            * (-(x - x0) * (x - x0) / (2.0 * sigma * sigma)).exp()
            * (1.0 + c * (2.0 * std::f64::consts::PI * (x - x0) / lambda + phi).cos());
        text.push_str(&format!(
            "{},{}\n",
            matterwave::cli::format_float(x),
            matterwave::cli::format_float(value)
        ));
    }
    let input = dir.join("profile.csv");
    std::fs::write(&input, text).unwrap();
    let out = Command::new(bin())
        .args(["fringes", "fit", "--input"])
        .arg(&input)
        .args(["--lambda-hint", "10um", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let fit: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("fit.json")).unwrap()).unwrap();
    assert!((fit["c"].as_f64().unwrap() - c).abs() < 1e-6);
    assert!((fit["phi"].as_f64().unwrap() - phi).abs() < 1e-6);
    assert!((fit["lambda_f"].as_f64().unwrap() - lambda).abs() / lambda < 1e-6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lightcone_pipeline_reports_two_c() {
    let dir = temp_dir("lightcone");
    let out = run_in(
        &dir,
        &[
            "luttinger",
            "lightcone",
            "--as",
            "5.2nm",
            "--omega-perp",
            "5413",
            "--n1d",
            "35/um",
            "--T",
            "30nK",
            "--length",
            "120um",
            "--t-grid",
            "1:9:1ms",
            "--z-points",
            "400",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("lightcone.json")).unwrap())
            .unwrap();
    let ratio = summary["slope_over_two_c"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 0.15, "slope/2c = {ratio}");
    let csv = std::fs::read_to_string(dir.join("lightcone.csv")).unwrap();
    assert_eq!(csv.lines().count(), 10); // header + nine times
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fdf_command_moments_normalized() {
    let dir = temp_dir("fdf");
    let out = run_in(
        &dir,
        &[
            "fringes",
            "fdf",
            "--kind",
            "thermal",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "60um",
            "--L",
            "15um",
            "--n",
            "400",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.join("fdf_moments.csv")).unwrap();
    let first_moment: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(
        (first_moment - 1.0).abs() < 1e-9,
        "mean alpha = {first_moment}"
    );
    assert!(dir.join("fdf_hist.csv").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn profiles_emitted_on_request() {
    let dir = temp_dir("profiles");
    let out = run_in(
        &dir,
        &[
            "luttinger",
            "equilibrium",
            "--as",
            "5.2nm",
            "--omega-perp",
            "12566",
            "--n1d",
            "35/um",
            "--T",
            "27nK",
            "--length",
            "60um",
            "--z-points",
            "5",
            "--profiles",
            "3",
            "--seed",
            "9",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for idx in 0..3 {
        let text = std::fs::read_to_string(dir.join(format!("profile_{idx:03}.csv"))).unwrap();
        let mut lines = text.lines();
        let preamble = lines.next().unwrap();
        assert!(preamble.starts_with("# {\"realization\""));
        assert_eq!(lines.next().unwrap(), "z,phi");
        assert!(lines.count() > 10);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn species_mass_overridable_via_config() {
    let dir = temp_dir("massover");
    // an absurd sodium mass shifts the de Broglie wavelength accordingly
    let out = run_in(
        &dir,
        &[
            "optics",
            "calc",
            "coherence",
            "--species",
            "Na",
            "--v",
            "1000",
            "--sigma-v",
            "10",
            "--mass.na",
            "7.635e-26",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("calc_coherence.json")).unwrap())
            .unwrap();
    let lambda = v["lambda_db"].as_f64().unwrap();
    // doubled mass halves the wavelength: h/(m v) with m = 2 m_Na
    assert!((lambda - 8.68e-12).abs() < 5e-14, "lambda_db = {lambda}");
    std::fs::remove_dir_all(&dir).ok();
}
