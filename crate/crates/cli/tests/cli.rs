use std::path::Path;
use std::process::{Command, Output};

fn folcohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folcohom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn cp2_signature_document() {
    let out = folcohom(&["signature", "--model", "zoo:cp2_cdga", "--format", "doc"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "sigma = 1"), "{}", stdout(&out));
}

#[test]
fn carriere_twisted_betti_vanishes() {
    let out = folcohom(&["twisted-betti", "--model", "zoo:carriere_sol3", "--format", "doc"]);
    assert!(out.status.success());
    let dims: Vec<String> = stdout(&out).lines().filter(|l| l.starts_with("dim = ")).map(String::from).collect();
    assert_eq!(dims, vec!["dim = 0"; 3]);
}

#[test]
fn carriere_duality_rows_match() {
    let out = folcohom(&["duality", "--model", "zoo:carriere_sol3", "--theta", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|w| w.len() == 3 && w.iter().all(|x| x.parse::<usize>().is_ok()))
        .collect();
    assert_eq!(rows, vec![vec!["0", "1", "1"], vec!["1", "1", "1"], vec!["2", "0", "0"]], "{text}");
}

#[test]
fn theta_accepts_negative_expressions() {
    let out = folcohom(&["twisted-betti", "--model", "zoo:carriere_sol3", "--theta", "-1/2 * e{3}"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = folcohom(&["twisted-betti", "--model", "zoo:carriere_sol3", "--theta", "kappa_b", "--format", "doc"]);
    let dims: Vec<String> = stdout(&out).lines().filter(|l| l.starts_with("dim = ")).map(String::from).collect();
    assert_eq!(dims, vec!["dim = 0", "dim = 1", "dim = 1"]);
}

#[test]
fn sweep_prints_one_row_per_sample() {
    let out = folcohom(&["sweep-metric", "--model", "zoo:carriere_sol3", "--samples", "0,1/3,1/2,2/3,1", "--format", "doc"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).matches("[[samples]]").count(), 5);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let out = folcohom(&["betti", "--model", "zoo:klein_bottle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error[parse]: "));
    assert!(stderr(&out).contains("carriere_sol3"));

    let out = folcohom(&["betti"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(folcohom(&["sweep-metric", "--model", "zoo:carriere_sol3", "--samples", "0,x"]).status.code(), Some(2));
    assert_eq!(folcohom(&["sweep-metric", "--model", "zoo:cp2_cdga"]).status.code(), Some(2));

    let indefinite = write(
        dir.path(),
        "bad.toml",
        "kind = \"lie\"\nname = \"bad\"\ndim = 2\nleaf = []\nstructure_constants = []\n\
         metric = [[\"1\", \"0\"], [\"0\", \"-1\"]]\norientation = [1, 2]\n",
    );
    let out = folcohom(&["betti", "--model", &indefinite]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error[validation]: "));
    assert_eq!(stderr(&out).lines().count(), 1);

    let out = folcohom(&["twisted-betti", "--model", "zoo:carriere_sol3", "--theta", "e{2}"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));

    // torus3 -> carriere is a valid map but no equivalence
    let not_equivalent = write(
        dir.path(),
        "map.toml",
        "source = \"zoo:torus3_flow\"\ntarget = \"zoo:carriere_sol3\"\n\
         matrix_deg1 = [[\"0\", \"0\", \"0\"], [\"0\", \"0\", \"0\"], [\"0\", \"0\", \"1\"]]\n\
         backward_matrix_deg1 = [[\"0\", \"0\", \"0\"], [\"0\", \"0\", \"0\"], [\"0\", \"0\", \"1\"]]\n",
    );
    let out = folcohom(&["map-check", "--map", &not_equivalent]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error[assertion]: "));
}

#[test]
fn map_check_reports() {
    let dir = tempfile::tempdir().unwrap();
    let forward_only = write(
        dir.path(),
        "forward.toml",
        "source = \"zoo:torus3_flow\"\ntarget = \"zoo:carriere_sol3\"\n\
         generators = [[\"e{1}\", \"0\"], [\"e{2}\", \"0\"], [\"e{3}\", \"e{3}\"]]\n",
    );
    let out = folcohom(&["map-check", "--map", &forward_only, "--format", "doc"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("alvarez_pullback = false"), "{}", stdout(&out));

    let flip = write(
        dir.path(),
        "flip.toml",
        "name = \"flip\"\nsource = \"zoo:cp2_cdga\"\ntarget = \"zoo:cp2_cdga\"\n\
         generators = [[\"x\", \"-x\"]]\nbackward_generators = [[\"x\", \"-x\"]]\n",
    );
    let out = folcohom(&["map-check", "--map", &flip, "--format", "doc"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("sigmas = [1, 1]"), "{text}");
}

#[test]
fn exported_zoo_reimports() {
    let dir = tempfile::tempdir().unwrap();
    let out = folcohom(&["zoo", "--export", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    for name in ["carriere_sol3", "cp2_cdga", "hopf_x_hopf"] {
        let file = dir.path().join(format!("{name}.toml")).display().to_string();
        let from_file = folcohom(&["betti", "--model", &file, "--format", "doc"]);
        let builtin = folcohom(&["betti", "--model", &format!("zoo:{name}"), "--format", "doc"]);
        assert!(from_file.status.success());
        assert_eq!(stdout(&from_file), stdout(&builtin), "{name}");
    }
}

#[test]
fn zoo_table_lists_every_model() {
    let out = folcohom(&["zoo"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in folcohom::zoo::NAMES {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let out = folcohom(&["--help"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("twisted-betti"));
}
