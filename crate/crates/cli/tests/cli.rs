use std::path::Path;
use std::process::{Command, Output};

use lesionseg::image::{read_pgm, write_pgm};
use lesionseg::phantom::{generate_phantom, PhantomConfig};
use lesionseg::{GrayImage8, Image};

fn lesionseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lesionseg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn save(dir: &Path, name: &str, img: &GrayImage8) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, write_pgm(img)).unwrap();
    path
}

fn sorted_listing(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn segment_writes_all_outputs_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let (img, _) = generate_phantom(&PhantomConfig::default()).unwrap();
    let input = save(dir.path(), "in.pgm", &img);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let r = lesionseg(&["segment", path_str(&input), "--out", path_str(out)]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    let names = sorted_listing(&a);
    assert_eq!(names.len(), 14, "{names:?}");
    assert!(names.contains(&"features.json".to_string()));
    assert!(names.contains(&"12_overlay.ppm".to_string()));
    for n in &names {
        assert_eq!(
            std::fs::read(a.join(n)).unwrap(),
            std::fs::read(b.join(n)).unwrap(),
            "{n} differs between runs"
        );
    }
    let summary: serde_json::Value =
        serde_json::from_slice(&std::fs::read(a.join("summary.json")).unwrap()).unwrap();
    assert!(summary["tumor_label"].is_u64());
    assert_eq!(summary["config"]["levels"], 2);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let (img, _) = generate_phantom(&PhantomConfig::default()).unwrap();
    let input = save(dir.path(), "in.pgm", &img);
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"pipeline": {"se_radius": 3}, "wavelet": "db4", "levels": 3}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let r = lesionseg(&[
        "segment",
        path_str(&input),
        "--config",
        path_str(&cfg),
        "--se-radius",
        "4",
        "--out",
        path_str(&out),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let summary: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["pipeline"]["se_radius"], 4);
    assert_eq!(summary["config"]["wavelet"], "db4");
    assert_eq!(summary["config"]["levels"], 3);
}

#[test]
fn segment_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let missing = lesionseg(&["segment", "/nonexistent.pgm", "--out", path_str(&out)]);
    assert_eq!(missing.status.code(), Some(2));

    let garbage = dir.path().join("bad.pgm");
    std::fs::write(&garbage, b"P7 nope").unwrap();
    let r = lesionseg(&["segment", path_str(&garbage), "--out", path_str(&out)]);
    assert_eq!(r.status.code(), Some(2));

    let ramp = save(
        dir.path(),
        "ramp.pgm",
        &Image::from_fn(16, 16, |x, _| (x * 10) as u8),
    );
    let r = lesionseg(&[
        "segment",
        path_str(&ramp),
        "--se-radius",
        "1",
        "--min-marker-area",
        "1000",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.status.code(), Some(3));

    let r = lesionseg(&[
        "segment",
        path_str(&ramp),
        "--se-radius",
        "0",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert_eq!(lesionseg(&["bogus"]).status.code(), Some(2));
}

#[test]
fn otsu_prints_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let split = save(
        dir.path(),
        "split.pgm",
        &Image::from_fn(32, 32, |x, _| if x < 16 { 60 } else { 180 }),
    );
    let r = lesionseg(&["otsu", path_str(&split)]);
    assert!(r.status.success());
    let text = String::from_utf8(r.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    let t: u32 = text
        .split_whitespace()
        .next()
        .and_then(|f| f.strip_prefix("threshold="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((60..180).contains(&t), "{text}");
    assert!(text.trim_end().ends_with("degenerate=false"));

    let flat = save(dir.path(), "flat.pgm", &Image::filled(8, 8, 77u8));
    let r = lesionseg(&["otsu", path_str(&flat)]);
    assert!(r.status.success());
    assert!(String::from_utf8(r.stdout)
        .unwrap()
        .trim_end()
        .ends_with("degenerate=true"));
}

#[test]
fn phantom_files_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (p, q) = (dir.path().join("p"), dir.path().join("q"));
    for prefix in [&p, &q] {
        let r = lesionseg(&["phantom", "--seed", "11", "--out", path_str(prefix)]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    let img = std::fs::read(dir.path().join("p.pgm")).unwrap();
    assert_eq!(img, std::fs::read(dir.path().join("q.pgm")).unwrap());
    let img = read_pgm(&img).unwrap();
    assert_eq!(img.dims(), (256, 256));
    let gt = read_pgm(&std::fs::read(dir.path().join("p_gt.pgm")).unwrap()).unwrap();
    assert_eq!(gt.dims(), (256, 256));
    assert!(gt.data().iter().all(|&l| l <= 2));

    let clean = dir.path().join("clean");
    let r = lesionseg(&[
        "phantom",
        "--sigma",
        "0",
        "--contrast",
        "25",
        "--out",
        path_str(&clean),
    ]);
    assert!(r.status.success());
    let img = read_pgm(&std::fs::read(dir.path().join("clean.pgm")).unwrap()).unwrap();
    let gt = read_pgm(&std::fs::read(dir.path().join("clean_gt.pgm")).unwrap()).unwrap();
    for (&v, &l) in img.data().iter().zip(gt.data()) {
        let expect = [30, 120, 145][l as usize];
        assert_eq!(v, expect);
    }
}

#[test]
fn eval_reports_dice() {
    let dir = tempfile::tempdir().unwrap();
    let batch: Vec<PhantomConfig> = (0..20)
        .map(|s| PhantomConfig::with_contrast(80.0, 0.0, s))
        .collect();
    let batch_path = dir.path().join("batch.json");
    std::fs::write(&batch_path, serde_json::to_vec(&batch).unwrap()).unwrap();
    let report = dir.path().join("report.json");
    let r = lesionseg(&["eval", path_str(&batch_path), "--out", path_str(&report)]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(v["phantoms"].as_array().unwrap().len(), 20);
    assert!(v["mean_dice"].as_f64().unwrap() >= 0.95);
    let stdout = String::from_utf8(r.stdout).unwrap();
    assert!(stdout.starts_with("mean_dice="));

    let wrapped = dir.path().join("wrapped.json");
    std::fs::write(&wrapped, r#"{"phantoms": [{"seed": 4}]}"#).unwrap();
    let r = lesionseg(&["eval", path_str(&wrapped), "--out", path_str(&report)]);
    assert!(r.status.success());

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let r = lesionseg(&["eval", path_str(&empty), "--out", path_str(&report)]);
    assert_eq!(r.status.code(), Some(2));
    std::fs::write(&empty, "{").unwrap();
    let r = lesionseg(&["eval", path_str(&empty), "--out", path_str(&report)]);
    assert_eq!(r.status.code(), Some(2));
}
