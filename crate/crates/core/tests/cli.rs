use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ofdm-im"));
    c.env_remove("IMCODEC_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("failed to spawn binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn assert_single_line_error(o: &Output, code: &str) {
    assert!(!o.status.success(), "expected failure, got success: {}", stdout(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "multi-line error: {err:?}");
    assert!(err.starts_with(&format!("error: {code}: ")), "{err:?}");
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn params_reports_table_rows() {
    let o = run(&["params", "--N", "8", "--g", "1", "--k", "4", "--M", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "m=10"), "{out}");
    assert!(out.lines().any(|l| l == "se_gain=1.25"), "{out}");
    assert!(out.lines().any(|l| l == "C(n,k)=70"), "{out}");
    assert!(out.lines().any(|l| l == "waveforms=2^6"), "{out}");

    let out = stdout(&run(&["params", "--N", "62", "--g", "1", "--k", "31", "--M", "2"]));
    assert!(out.lines().any(|l| l == "m=89"), "{out}");
}

#[test]
fn params_rejects_indivisible_subblocks() {
    let o = run(&["params", "--N", "8", "--g", "3", "--k", "2", "--M", "2"]);
    assert_single_line_error(&o, "E_CONFIG");
    assert!(stderr(&o).contains("does not divide"));
}

#[test]
fn unknown_flags_are_errors() {
    assert_single_line_error(&run(&["params", "--N", "8", "--frobnicate"]), "E_USAGE");
    assert_single_line_error(&run(&[]), "E_USAGE");
}

#[test]
fn map_example_and_bit_count_check() {
    let dir = TempDir::new().unwrap();
    let bits = dir.path().join("in.bin");
    fs::write(&bits, [0u8]).unwrap();
    let out = dir.path().join("sym.txt");
    let o = run(&[
        "map",
        "--N",
        "4",
        "--k",
        "2",
        "--bits-file",
        p(&bits),
        "--nbits",
        "4",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let reals: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(reals, vec![1.0, 1.0, 0.0, 0.0]);
    assert!(text.starts_with("# N=4 g=1 k=2 M=2\n"));

    let o = run(&["map", "--N", "4", "--k", "2", "--bits-file", p(&bits), "--nbits", "5"]);
    assert_single_line_error(&o, "E_BITLEN");
    assert!(stderr(&o).contains("expected 4"), "{}", stderr(&o));
}

#[test]
fn selectors_produce_byte_identical_files() {
    let dir = TempDir::new().unwrap();
    let bits = dir.path().join("in.bin");
    // N=64 optimal: m = 60 + 32 = 92 bits in 12 bytes
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bytes = [0u8; 12];
    rng.fill(&mut bytes);
    fs::write(&bits, bytes).unwrap();
    let mut files = Vec::new();
    for sel in ["original", "linear"] {
        let out = dir.path().join(format!("{sel}.txt"));
        let o = run(&[
            "map",
            "--N",
            "64",
            "--bits-file",
            p(&bits),
            "--nbits",
            "92",
            "--selector",
            sel,
            "--out",
            p(&out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        files.push(fs::read(&out).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn demap_example_prints_bits() {
    let dir = TempDir::new().unwrap();
    let sym = dir.path().join("sym.txt");
    fs::write(&sym, "# N=4 g=1 k=2 M=2\n0,1,0\n1,1,0\n2,0,0\n3,0,0\n").unwrap();
    let o = run(&["demap", "--N", "4", "--k", "2", "--symbol-file", p(&sym)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "0000");
}

#[test]
fn demap_names_the_offending_subblock() {
    let dir = TempDir::new().unwrap();
    let sym = dir.path().join("sym.txt");
    fs::write(&sym, "# N=4 g=1 k=2 M=2\n0,1,0\n1,1,0\n2,-1,0\n3,0,0\n").unwrap();
    let o = run(&["demap", "--N", "4", "--k", "2", "--symbol-file", p(&sym)]);
    assert_single_line_error(&o, "E_MALFORMED");
    assert!(stderr(&o).contains("subblock 1"), "{}", stderr(&o));

    fs::write(&sym, "# N=4 g=1 k=2 M=2\n0,1,0\n").unwrap();
    assert_single_line_error(&run(&["demap", "--N", "4", "--symbol-file", p(&sym)]), "E_PARSE");

    fs::write(&sym, "# N=4 g=1 k=2 M=4\n0,1,0\n1,1,0\n2,0,0\n3,0,0\n").unwrap();
    assert_single_line_error(&run(&["demap", "--N", "4", "--symbol-file", p(&sym)]), "E_CONFIG");
}

#[test]
fn map_demap_roundtrip_over_many_seeds() {
    let dir = TempDir::new().unwrap();
    let configs: [(&str, &str, &str, usize); 4] = [
        ("16", "1", "2", 21),
        ("16", "2", "2", 20),
        ("32", "4", "4", 56),
        ("62", "1", "2", 89),
    ];
    for seed in 0..1000u64 {
        let (n, g, m, nbits) = configs[(seed % 4) as usize];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bytes = vec![0u8; nbits.div_ceil(8)];
        rng.fill(bytes.as_mut_slice());
        if nbits % 8 != 0 {
            *bytes.last_mut().unwrap() &= 0xFF << (8 - nbits % 8);
        }
        let input = dir.path().join("in.bin");
        let sym = dir.path().join("sym.txt");
        let back = dir.path().join("out.bin");
        fs::write(&input, &bytes).unwrap();
        let nb = nbits.to_string();
        let common = ["--N", n, "--g", g, "--M", m];
        let o = bin()
            .arg("map")
            .args(common)
            .args(["--bits-file", p(&input), "--nbits", &nb, "--out", p(&sym)])
            .output()
            .unwrap();
        assert!(o.status.success(), "seed {seed}: {}", stderr(&o));
        let sel = if seed % 2 == 0 { "original" } else { "linear" };
        let o = bin()
            .arg("demap")
            .args(common)
            .args(["--symbol-file", p(&sym), "--selector", sel, "--out", p(&back)])
            .output()
            .unwrap();
        assert!(o.status.success(), "seed {seed}: {}", stderr(&o));
        assert_eq!(fs::read(&back).unwrap(), bytes, "seed {seed}");
    }
}

#[test]
fn verify_passes_small_and_refuses_large() {
    let o = run(&["verify", "--max-n", "12"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let expected: u64 = (1..=12u32).map(|n| (1u64 << n) - 1).sum();
    assert!(out.contains(&format!("{expected} cases checked")), "{out}");
    assert!(out.lines().any(|l| l == "PASS"));

    let o = run(&["verify", "--max-n", "40"]);
    assert_single_line_error(&o, "E_GUARD");
    assert!(stderr(&o).contains("oracle scale exceeded"));
}

#[test]
fn bench_csv_layout() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("t.csv");
    let json = dir.path().join("t.json");
    let o = run(&[
        "bench",
        "--n-list",
        "8,16",
        "--warmup",
        "10",
        "--max-samples",
        "500",
        "--csv-out",
        p(&csv),
        "--json-out",
        p(&json),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("N,m_bits,se_gain,mapper,runtime_us,delta_us,throughput_mbps,samples")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 * 2 * 2);
    let n16: Vec<_> = rows.iter().filter(|r| r[0] == "16").collect();
    assert!(n16.iter().all(|r| r[1] == "21" && r[2] == "1.31"));
    let labels: Vec<&str> = rows.iter().map(|r| r[3]).collect();
    for l in ["original-map", "linear-map", "original-demap", "linear-demap"] {
        assert!(labels.contains(&l), "{labels:?}");
    }
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    assert!(stderr(&o).contains("summary"));
}

#[test]
fn bench_rows_for_the_full_default_sweep() {
    let o = run(&["bench", "--warmup", "5", "--max-samples", "50", "--time-budget", "0.05"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 1 + 31 * 2 * 2);
}

#[test]
fn bench_counter_slopes() {
    let o = run(&[
        "bench",
        "--counters",
        "--n-list",
        "64,128,256,512",
        "--directions",
        "map",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let err = stderr(&o);
    let slope = |label: &str| -> f64 {
        let line = err
            .lines()
            .find(|l| l.contains(label))
            .unwrap_or_else(|| panic!("{err}"));
        line.rsplit(' ').next().unwrap().parse().unwrap()
    };
    assert!((1.7..=2.3).contains(&slope("original-map")));
    assert!((0.8..=1.2).contains(&slope("linear-map")));
}

#[test]
fn bench_rejects_odd_n_and_env_seed_is_used() {
    assert_single_line_error(&run(&["bench", "--n-list", "2,3"]), "E_CONFIG");
    let o = bin()
        .env("IMCODEC_SEED", "42")
        .args(["bench", "--counters", "--n-list", "8,16,32,64", "--inputs", "2"])
        .output()
        .unwrap();
    assert!(stderr(&o).contains("seed 42"), "{}", stderr(&o));
    let o = bin()
        .env("IMCODEC_SEED", "x")
        .args(["bench", "--counters"])
        .output()
        .unwrap();
    assert_single_line_error(&o, "E_CONFIG");
}
