use std::io::Write;
use std::process::{Command, Output, Stdio};

use mobinad::{evaluate, Logic, Value};

const TRIPLE: &str = "(0.3^{-0}, 0.5^{0+}, 0.2^{0})";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mobinad"));
    c.env_remove("MOBINAD_LATTICE_STRATEGY");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn repl(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .arg("repl")
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn eval_prints_text_and_exits_zero() {
    let o = run(&["eval", "0.3^{0+} + 0.2^{-}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.5^{-0+}");
}

#[test]
fn json_output_round_trips_to_the_library_value() {
    let exprs = [
        "2^{0+} ^ 3^{-0}",
        "1/3 * 0.6^{-}",
        "(0.3^{0+}, 0.2^{-+}, 0.4^{+}) -> (0.6^{-0}, 0.1^{-0+}, 0.5^{+})",
    ];
    for e in exprs {
        let o = run(&["eval", "--json", e]);
        assert_eq!(o.status.code(), Some(0), "{e}");
        let got: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(got, evaluate(e, &Logic::default()).unwrap(), "{e}");
    }
}

#[test]
fn evaluation_errors_exit_one_with_a_json_body() {
    let o = run(&["eval", "--json", "1 / 0^{-+}"]);
    assert_eq!(o.status.code(), Some(1));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["error"]["kind"], "division-by-zero-neighborhood");
    assert_eq!((j["error"]["line"].as_u64(), j["error"]["column"].as_u64()), (Some(1), Some(3)));

    let o = run(&["eval", "--json", "1 + * 2"]);
    assert_eq!(o.status.code(), Some(1));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["error"]["kind"], "syntax");

    let o = run(&["eval", "(-2)^{+} ^ 0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["table", "--op", "modulo", "--regime", "pos-pos"]).status.code(), Some(2));
    assert_eq!(run(&["eval"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let o = bin().env("MOBINAD_LATTICE_STRATEGY", "bogus").args(["eval", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lattice_strategy_comes_from_flag_or_environment() {
    let src = format!("{TRIPLE} & {TRIPLE}");
    let default = run(&["eval", "--family", "minmax", &src]);
    assert_eq!(stdout(&default).trim(), "(0.3^{-}, 0.5^{+}, 0.2)");
    let from_env = bin()
        .env("MOBINAD_LATTICE_STRATEGY", "order-first")
        .args(["eval", "--family", "minmax", &src])
        .output()
        .unwrap();
    assert_eq!(stdout(&from_env).trim(), "(0.3^{-0}, 0.5^{0+}, 0.2)");
    let flag_wins = bin()
        .env("MOBINAD_LATTICE_STRATEGY", "order-first")
        .args(["eval", "--family", "minmax", "--lattice-strategy", "reduction", &src])
        .output()
        .unwrap();
    assert_eq!(stdout(&flag_wins), stdout(&default));
}

#[test]
fn repl_matches_batch_evaluation() {
    let lines = [
        "0.3^{0+} + 0.2^{-}",
        "2^{0+} ^ 3^{-0}",
        "(0.3^{0+}, 0.2^{-+}, 0.4^{+}) & (0.6^{-0}, 0.1^{-0+}, 0.5^{+})",
        "!(0.3^{0+}, 0.2^{-+}, 0.4^{+})",
        "1 / 0^{-+}",
        "1 +",
    ];
    for json in [false, true] {
        let mut flags = vec!["--family", "lukasiewicz"];
        if json {
            flags.push("--json");
        }
        let out = repl(&flags, &(lines.join("\n") + "\n"));
        assert_eq!(out.status.code(), Some(0));
        let replies: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
        assert_eq!(replies.len(), lines.len());
        for (line, reply) in lines.iter().zip(&replies) {
            let mut args = vec!["eval"];
            args.extend(&flags);
            args.push(line);
            let batch = run(&args);
            let text = if batch.status.success() || json {
                stdout(&batch)
            } else {
                String::from_utf8(batch.stderr).unwrap()
            };
            assert_eq!(reply, text.trim_end(), "{line}");
        }
    }
}

#[test]
fn repl_directives_change_the_session() {
    let input = format!(
        ":set family minmax\n{TRIPLE} & {TRIPLE}\n:set strategy order-first\n{TRIPLE} & {TRIPLE}\n:show\n:set family nope\n:quit\n1 + 1\n"
    );
    let out = repl(&[], &input);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "(0.3^{-}, 0.5^{+}, 0.2)");
    assert_eq!(lines[1], "(0.3^{-0}, 0.5^{0+}, 0.2)");
    assert_eq!(lines[2], "family minmax variant B negation swap strategy order-first json off");
    assert!(lines[3].starts_with("error:"));
    assert_eq!(lines.len(), 4, "nothing after :quit is evaluated");
}

#[test]
fn table_json_and_text_agree() {
    let j = run(&["table", "--op", "sub", "--regime", "neg-pos", "--format", "json"]);
    assert_eq!(j.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 7);
    assert_eq!(cells[1][1], "-0+");
    let t = run(&["table", "--op", "sub", "--regime", "neg-pos"]);
    let text = stdout(&t);
    assert_eq!(text.lines().count(), 10);
    // row `-`, column `-` is the third cell after the row label and bar
    let row: Vec<&str> = text.lines().find(|l| l.trim_start().starts_with("- |")).unwrap().split_whitespace().collect();
    assert_eq!(row[3], "-0+");
}

#[test]
fn fixtures_and_validation() {
    let o = run(&["fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4/4 pass"));

    let o = run(&["validate", "(0.3, 0.2, 0.4)", "--level", "standard", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["valid"], true);

    let o = run(&["validate", "(1^{+}, 0.2, 0.4)", "--level", "standard", "--json"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["valid"], false);

    let o = run(&["validate", "(1^{+}, 0.2, 0.4)", "--level", "offset", "--psi", "-0.5", "--omega", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));
}

#[test]
fn oracle_check_reports_no_mismatches() {
    let o = run(&["oracle-check", "--op", "add", "--op", "mul"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("0 mismatches\n"));
}
