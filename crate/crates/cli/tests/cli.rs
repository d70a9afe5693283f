use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lazard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lazard")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sample(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("samples").join(name).to_str().unwrap().to_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let path: PathBuf = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn check_reports_class_and_substructures() {
    let o = lazard(&["check", &sample("heisenberg.lie")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Lie ring, class 2, Lazard (p=5)\norder 125"));

    let o = lazard(&["check", &sample("radical.postlie")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("post-Lie ring (pre-Lie), L-class 2, Lazard (p=5)"));
    assert!(out.contains("Ann (5): (0) (5) (10) (15) (20)"));
}

#[test]
fn malformed_files_exit_2() {
    let bad = scratch("descending.lie", "format 1\nlie 5 1 1\nbracket 2 1 0 1\n");
    let o = lazard(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let version = scratch("version.lie", "format 2\nlie 5 1\n");
    assert_eq!(lazard(&["check", &version]).status.code(), Some(2));
    assert_eq!(lazard(&["check", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn invalid_structures_exit_1() {
    let not_post_lie = scratch("associator.postlie", "format 1\npostlie 5 1 1\ntriangle 1 2 1 0\n");
    assert_eq!(lazard(&["check", &not_post_lie]).status.code(), Some(1));
}

#[test]
fn convert_round_trips() {
    let text = std::fs::read_to_string(sample("radical.postlie")).unwrap();
    let o = lazard(&["convert", &sample("radical.postlie"), "--to", "brace"]);
    assert_eq!(o.status.code(), Some(0));
    let brace = stdout(&o);
    assert!(brace.starts_with("format 1\nskewbrace 25\ncarrier 5 2\ndot\n"));
    let path = scratch("radical.skb", &brace);
    let back = stdout(&lazard(&["convert", &path, "--to", "postlie"]));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&back), strip(&text));

    let o = lazard(&["roundtrip", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identical"));
}

#[test]
fn non_lazard_input_is_refused() {
    let o = lazard(&["convert", &sample("cube.postlie"), "--to", "brace"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not Lazard"));
    assert_eq!(lazard(&["enumerate", "--shape", "3:3"]).status.code(), Some(3));
}

#[test]
fn size_cap_is_enforced() {
    let o = lazard(&["--max-order", "100", "convert", &sample("heisenberg.lie"), "--to", "brace"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bch_words_print_tables() {
    let o = lazard(&["bch-words", "--class", "4", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("section BCH\n"));
    assert!(out.contains("2\t[x,y]\t1/2\n"));
    assert!(out.contains("2\t[g,h]\t-1/2\n"));
    assert!(out.contains("# self-inversion verified at class 4"));
}

#[test]
fn enumerate_counts_and_pairs() {
    let out = stdout(&lazard(&["enumerate", "--shape", "5:1"]));
    assert!(out.contains("skew braces (λ-backtracking): 1\n"));

    let o = lazard(&["enumerate", "--shape", "3:1,1", "--pre-lie", "--iso-dedup"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in [
        "skew braces (λ-backtracking): 9",
        "skew braces (holomorph subgroups): 9",
        "pre-Lie rings (structure constants): 9",
        "pre-Lie rings (affine search): 9",
        "paired through constructions S and L: 9 of 9",
    ] {
        assert!(out.contains(line), "{line}\n{out}");
    }
}

#[test]
fn root_diff_agrees_with_construction() {
    let brace = stdout(&lazard(&["convert", &sample("square.postlie"), "--to", "brace"]));
    let path = scratch("square.skb", &brace);
    let o = lazard(&["root-diff", &path]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("triangle 1 1 0 1"));
    assert!(out.contains("# agreement with construction L: exact"));
}
