mod common;

use std::io::Write;
use std::process::{Command, Output};

use common::{fixture_path, FIXTURES};

const RING: &str = "\
[ring]
name = synthetic
vars = x, y, z

[[module]]
name = S
free = 1

[[module]]
name = k
ideal = x, y, z

[[prime]]
name = m
gens = x, y, z
";

fn locikit(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_locikit"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn with_fixture(text: &str, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut f = tempfile::Builder::new().suffix(".fix").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--fixture", &path]);
    locikit(&full, envs)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn check(body: &str) -> String {
    format!("{RING}\n[[check]]\n{body}")
}

#[test]
fn shipped_fixtures_verify() {
    for name in FIXTURES {
        let o = locikit(&["verify", "--fixture", fixture_path(name).to_str().unwrap()], &[]);
        assert_eq!(code(&o), 0, "{name}:\n{}", stdout(&o));
    }
}

#[test]
fn exit_code_matrix() {
    let pass = check("id = bass\nkind = bass\nmodule = S\nprime = m\nnumbers = 0, 0, 0, 1\n");
    let fail = check("id = bass\nkind = bass\nmodule = S\nprime = m\nnumbers = 0, 0, 1, 0\n");
    let expected_fail = check("id = bass\nkind = bass\nexpect = fail\nmodule = S\nprime = m\nnumbers = 0, 1\n");
    let resolution = check("id = res\nkind = resolution\nmodule = k\nlength = 3\nranks = 1, 3, 3, 1\n");
    let cases: Vec<(&str, &str, Vec<(&str, &str)>, i32)> = vec![
        ("pass", &pass, vec![], 0),
        ("fail", &fail, vec![], 1),
        ("expected fail", &expected_fail, vec![], 0),
        ("resolution", &resolution, vec![], 0),
        ("rank budget", &resolution, vec![("LOCIKIT_MAX_RANK", "1")], 2),
    ];
    for (what, text, envs, want) in cases {
        let o = with_fixture(text, &["verify"], &envs);
        assert_eq!(code(&o), want, "{what}:\n{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn hypothesis_failed_is_an_expectation() {
    let fx = "\
[ring]
vars = x, y

[[module]]
name = M
ideal = x

[[prime]]
name = px
gens = x
";
    let gate = format!("{fx}\n[[check]]\nid = gate\nkind = localization\nitem = vanishing\nmodule = M\nprime = px\n");
    let o = with_fixture(&gate, &["verify", "--json"], &[]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][0]["error"], "hypothesis-failed");
    assert_eq!(v["checks"][0]["verdict"], "inconclusive");
    let expected = gate.replace("item = vanishing", "expect = hypothesis-failed\nitem = vanishing");
    assert_eq!(code(&with_fixture(&expected, &["verify"], &[])), 0);
}

#[test]
fn usage_errors_exit_3() {
    let o = with_fixture("[ring]\nvars = x, y\nrelations = x*z\n", &["verify"], &[]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert!(o.stdout.is_empty());
    assert_eq!(code(&locikit(&["verify"], &[])), 3);
    assert_eq!(code(&locikit(&["verify", "--fixture", "/nonexistent.fix"], &[])), 3);
    let o = with_fixture(RING, &["compute", "--module", "S", "--locus", "bogus"], &[]);
    assert_eq!(code(&o), 3);
    let o = with_fixture(RING, &["member", "--module", "S", "--locus", "cm", "--prime", "nope"], &[]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&locikit(&["--help"], &[])), 0);
}

#[test]
fn member_and_compute() {
    let tp = fixture_path("two_planes");
    let tp = tp.to_str().unwrap();
    let o = locikit(&["member", "--fixture", tp, "--module", "A", "--locus", "cm", "--prime", "m"], &[]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "false"));
    let o = locikit(&["member", "--fixture", tp, "--module", "A", "--locus", "sn:2", "--prime", "p1"], &[]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));

    let zero = format!("{RING}\n[[module]]\nname = Z\nideal = 1\n");
    let o = with_fixture(&zero, &["compute", "--module", "Z", "--locus", "supp"], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().next().unwrap().contains("empty"), "{}", stdout(&o));

    let o = with_fixture(&zero, &["compute", "--module", "S", "--locus", "sn:2", "--json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "sn:2");
}

#[test]
fn profile_and_resolve() {
    let k = fixture_path("koszul");
    let k = k.to_str().unwrap();
    let o = locikit(&["profile", "--fixture", k, "--module", "S", "--prime", "m", "--json"], &[]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["depth_local"], 3);
    let o = locikit(&["resolve", "--fixture", k, "--module", "k", "--length", "4"], &[]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("ranks: [1, 3, 3, 1]"), "{}", stdout(&o));
}

#[test]
fn fmt_is_canonical() {
    for name in FIXTURES {
        let once = locikit(&["fmt", "--fixture", fixture_path(name).to_str().unwrap()], &[]);
        assert_eq!(code(&once), 0);
        let twice = with_fixture(&stdout(&once), &["fmt"], &[]);
        assert_eq!(stdout(&once), stdout(&twice), "{name}");
    }
}
