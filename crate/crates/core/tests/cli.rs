use std::path::Path;
use std::process::{Command, Output};

fn cleantext(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cleantext")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| std::fs::write(dir.path().join(name), body).unwrap();
    write("words.tsv", "the\t50\norder\t20\nnumber\t20\nis\t30\nlate\t5\nplease\t9\ncheck\t9\nJones\t4\tP\n");
    write("abbr.tsv", "pls\tplease\npls\tplus\n");
    write("corpus.txt", &"The order number is late. Please check the order number.\n".repeat(5));
    dir
}

#[test]
fn index_then_clean() {
    let dir = setup();
    let out = cleantext(&["index", "--role", "general", "-o", "g.idx", "corpus.txt"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("1 documents"));
    let idx = std::fs::read_to_string(dir.path().join("g.idx")).unwrap();
    assert!(idx.lines().any(|l| l == "role\tgeneral"));

    std::fs::write(dir.path().join("in.txt"), "check the prder numbr\n").unwrap();
    let out = cleantext(
        &[
            "clean",
            "--words",
            "words.tsv",
            "--general-index",
            "g.idx",
            "--report",
            "r.json",
            "--save-spelling",
            "s.tsv",
            "in.txt",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), "check the order number\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("no domain index"));
    let report = std::fs::read_to_string(dir.path().join("r.json")).unwrap();
    assert!(report.contains("\"prder\""));
    let spelling = std::fs::read_to_string(dir.path().join("s.tsv")).unwrap();
    assert!(spelling.contains("prder\torder"), "{spelling}");
}

#[test]
fn clean_reads_stdin_and_html() {
    let dir = setup();
    let mut child = Command::new(env!("CARGO_BIN_EXE_cleantext"))
        .args(["clean", "--mode", "baseline", "--words", "words.tsv"])
        .current_dir(dir.path())
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"the ordr is late").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "the order is late");

    std::fs::write(dir.path().join("page.html"), "<p>the order is <b>late</b></p>").unwrap();
    let out = cleantext(&["clean", "--words", "words.tsv", "page.html"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "the order is late");
}

#[test]
fn config_file_sets_defaults() {
    let dir = setup();
    std::fs::write(dir.path().join("clean.toml"), "mode = \"baseline\"\nwords = \"words.tsv\"\n").unwrap();
    std::fs::write(dir.path().join("in.txt"), "the ordr").unwrap();
    let out = cleantext(&["clean", "--config", "clean.toml", "in.txt"], dir.path());
    assert_eq!(stdout(&out), "the order");
}

#[test]
fn dict_commands() {
    let dir = setup();
    let out = cleantext(&["dict", "lookup", "--words", "words.tsv", "jones", "Jones", "zebra"], dir.path());
    let text = stdout(&out);
    assert!(text.contains("jones\tJones\tfreq=4\tproper\trejected-as-written"), "{text}");
    assert!(text.contains("Jones\tJones\tfreq=4\tproper\n"));
    assert!(text.contains("zebra\tunknown"));

    let out = cleantext(&["dict", "expand", "--abbreviations", "abbr.tsv", "pls"], dir.path());
    assert_eq!(stdout(&out), "pls\tplease\tplus\n");

    for _ in 0..2 {
        let out = cleantext(&["dict", "add", "--spelling", "sp.tsv", "teh", "the"], dir.path());
        assert!(out.status.success());
    }
    let sp = std::fs::read_to_string(dir.path().join("sp.tsv")).unwrap();
    assert_eq!(sp.matches("teh").count(), 1);
}

#[test]
fn eval_is_reproducible() {
    let dir = setup();
    let a = cleantext(&["eval", "--seed", "3", "--sessions", "15", "--json", "--output", "a.json"], dir.path());
    let b = cleantext(&["eval", "--seed", "3", "--sessions", "15", "--json"], dir.path());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read_to_string(dir.path().join("a.json")).unwrap().trim(), stdout(&a).trim());
    let table = stdout(&cleantext(&["eval", "--seed", "3", "--sessions", "15"], dir.path()));
    assert!(table.contains("enhanced"));
}

#[test]
fn failures_exit_nonzero() {
    let dir = setup();
    let out = cleantext(&["clean", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let out = cleantext(&["clean", "in.txt"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("word dictionary is required"));

    let out = cleantext(&["clean", "--words", "missing.tsv"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(dir.path().join("bad.toml"), "colour = 1\n").unwrap();
    let out = cleantext(&["clean", "--config", "bad.toml"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let out = cleantext(&["--help"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}
