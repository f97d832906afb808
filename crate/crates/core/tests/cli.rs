use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("epframe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epframe")).args(args).env_remove("EPFRAME_BUDGET").output().expect("binary runs")
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn gen(name: &str, args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(status(&o), 0, "{}", stderr(&o));
    write(name, &stdout(&o))
}

const TWO_EDGES: &str = "graph undirected\nvertex a A\nvertex b A\nvertex c A\nvertex d A\nedge a b\nedge c d\n";

#[test]
fn solve_statuses() {
    let g = write("two.g", TWO_EDGES);
    let o = run(&["solve", "--variant", "gallai", "--k", "2", "--input", &g]);
    assert_eq!(status(&o), 0);
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["paths"].as_array().unwrap().len(), 2);

    let lb = gen("lb.g", &["--family", "long-lb", "--k", "2", "--ell", "4"]);
    let o = run(&["solve", "--variant", "long", "--k", "2", "--ell", "4", "--input", &lb]);
    assert_eq!(status(&o), 2);
    assert!(stdout(&o).contains("\"hitting\""));

    assert_eq!(status(&run(&["solve", "--variant", "long", "--k", "2", "--input", &lb])), 1);
    assert_eq!(status(&run(&["solve", "--variant", "bogus", "--k", "2", "--input", &lb])), 1);
    let bad = write("bad.g", "graph sideways\n");
    assert_eq!(status(&run(&["solve", "--variant", "gallai", "--k", "1", "--input", &bad])), 1);
    assert_eq!(status(&run(&["solve", "--k", "1"])), 1, "usage errors are not hitting outcomes");
    assert_eq!(status(&run(&["--help"])), 0);
}

#[test]
fn verify_round_trips_on_random_graphs() {
    for seed in 0..100 {
        let g = gen(&format!("r{seed}.g"), &["--family", "random", "--s", "9", "--seed", &seed.to_string()]);
        let variant = ["gallai", "even", "mader-edge", "long"][seed % 4];
        let k = (1 + seed % 3).to_string();
        let mut args = vec!["solve", "--variant", variant, "--k", &k, "--input", &g];
        if variant == "long" {
            args.extend(["--ell", "3"]);
        }
        let o = run(&args);
        assert!(matches!(status(&o), 0 | 2), "seed {seed}: {}", stderr(&o));
        let cert = write(&format!("r{seed}.cert"), &stdout(&o));
        let v = run(&["verify", "--input", &g, "--cert", &cert]);
        assert_eq!(status(&v), 0, "seed {seed} {variant}: {}", stdout(&v));
        assert_eq!(stdout(&v), "status: pass\n");
    }
}

#[test]
fn verify_rejects_bad_certificates() {
    let g = write("two-v.g", TWO_EDGES);
    let o = run(&["solve", "--variant", "gallai", "--k", "2", "--input", &g]);
    let text = stdout(&o);

    let corrupt = write("corrupt.cert", &text.replacen("\"b\"", "\"c\"", 1));
    let v = run(&["verify", "--input", &g, "--cert", &corrupt]);
    assert_eq!(status(&v), 1);
    assert!(stdout(&v).starts_with("status: fail\nviolation: "), "{}", stdout(&v));

    let other = write("other.g", "graph undirected\nvertex x A\nvertex y A\nedge x y\n");
    let cert = write("good.cert", &text);
    let v = run(&["verify", "--input", &other, "--cert", &cert]);
    assert_eq!(status(&v), 1);
    assert!(stdout(&v).contains("unknown vertex"));

    let junk = write("junk.cert", "{");
    assert_eq!(status(&run(&["verify", "--input", &g, "--cert", &junk])), 1);
}

#[test]
fn gen_statuses() {
    let o = run(&["gen", "--family", "clique-a", "--k", "3"]);
    assert_eq!(status(&o), 0);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("vertex")).count(), 5);
    let o = run(&["gen", "--family", "grid-mod", "--m", "6", "--d", "0", "--s", "3"]);
    assert!(stdout(&o).starts_with("# family=grid-mod m=6 d=0 s=3\n"));
    let o = run(&["gen", "--family", "grid-mod", "--m", "5", "--d", "0", "--s", "3"]);
    assert_eq!(status(&o), 1);
    assert!(stderr(&o).contains("m must be composite, m > 4"));
    assert_eq!(status(&run(&["gen", "--family", "nope"])), 1);
    let out = scratch("zw.g");
    let o = run(&[
        "gen",
        "--family",
        "zero-wall",
        "--r",
        "2",
        "--group",
        "Zm:3",
        "--mu",
        "1",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status(&o), 0);
    assert!(std::fs::read_to_string(out).unwrap().contains("label=2"));
    assert_eq!(status(&run(&["gen", "--family", "zero-wall", "--r", "2", "--mu", "0"])), 1);
}

#[test]
fn oracle_statuses() {
    let c = gen("c3.g", &["--family", "clique-a", "--k", "3"]);
    let o = run(&["oracle", "--question", "max-disjoint", "--spec", "plain", "--input", &c]);
    assert_eq!(status(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("2"));
    let lb = gen("lb-o.g", &["--family", "long-lb", "--k", "2", "--ell", "4"]);
    let o = run(&["oracle", "--question", "min-hitting", "--spec", "long:4", "--input", &lb]);
    assert_eq!(stdout(&o).lines().next(), Some("3"));
    let big = gen("gm.g", &["--family", "grid-mod", "--m", "6", "--s", "3"]);
    let o = run(&["oracle", "--question", "enumerate", "--spec", "plain", "--input", &big]);
    assert_eq!(status(&o), 3, "{}", stderr(&o));
    let o = run(&[
        "oracle",
        "--question",
        "max-disjoint",
        "--spec",
        "zeromod:6:0",
        "--budget",
        "100000000",
        "--input",
        &big,
    ]);
    assert_eq!(status(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("1"));
    assert_eq!(status(&run(&["oracle", "--question", "enumerate", "--spec", "wobbly", "--input", &c])), 1);
}

#[test]
fn batches_keep_input_order() {
    let inputs: Vec<String> = (0..6)
        .map(|i| gen(&format!("b{i}.g"), &["--family", "random", "--s", "8", "--seed", &(100 + i).to_string()]))
        .collect();
    let mut args: Vec<&str> = vec!["solve", "--variant", "gallai", "--k", "2"];
    for i in &inputs {
        args.extend(["--input", i]);
    }
    let serial = run(&[args.as_slice(), &["--jobs", "1"]].concat());
    let parallel = run(&[args.as_slice(), &["--jobs", "4"]].concat());
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(status(&serial), status(&parallel));
}
