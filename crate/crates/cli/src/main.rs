use std::io::{self, BufRead, IsTerminal, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mobinad::arith::Op;
use mobinad::expr::{self, ExprError, Value};
use mobinad::fixtures;
use mobinad::logic::{self, ConnectiveConfig, Family, Level, Logic, Negation, Variant};
use mobinad::order::LatticeStrategy;
use mobinad::table::{self, Regime};
use mobinad::Scalar;

#[derive(Parser)]
#[command(name = "mobinad", version, about = "Exact arithmetic and neutrosophic logic over mobinads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one expression.
    Eval {
        expr: String,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Read expressions and `:set` directives from standard input.
    Repl {
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Print the result-mark table of one operation.
    Table {
        #[arg(long, value_parser = parse_op)]
        op: Op,
        #[arg(long, value_parser = parse_regime)]
        regime: Regime,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the fast kernel with the interval oracle on every table cell.
    OracleCheck {
        #[arg(long, value_parser = parse_op)]
        op: Vec<Op>,
    },
    /// Range and sum checks of a triple.
    Validate {
        triple: String,
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar, default_value = "0")]
        psi: Scalar,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_scalar, default_value = "1")]
        omega: Scalar,
        #[arg(long)]
        json: bool,
    },
    /// Run the reference connective examples.
    Fixtures {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct SessionArgs {
    #[arg(long)]
    json: bool,
    #[arg(long, value_parser = parse_family, default_value = "prodsum")]
    family: Family,
    #[arg(long, value_parser = parse_variant, default_value = "B")]
    variant: Variant,
    #[arg(long, value_parser = parse_negation, default_value = "swap")]
    negation: Negation,
    /// Defaults to $MOBINAD_LATTICE_STRATEGY, else `reduction`.
    #[arg(long, value_parser = parse_strategy)]
    lattice_strategy: Option<LatticeStrategy>,
}

fn parse_op(s: &str) -> Result<Op, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_negation(s: &str) -> Result<Negation, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_strategy(s: &str) -> Result<LatticeStrategy, String> {
    s.parse().map_err(|e| format!("{e}"))
}

const USAGE: u8 = 2;
const EVAL_ERROR: u8 = 1;

struct Session {
    logic: Logic,
    json: bool,
}

impl Session {
    fn from_args(a: &SessionArgs) -> Result<Session, String> {
        let strategy = match a.lattice_strategy {
            Some(s) => s,
            None => LatticeStrategy::from_env().map_err(|e| e.to_string())?,
        };
        Ok(Session {
            logic: Logic::new(ConnectiveConfig::new(a.family, a.variant, a.negation), strategy),
            json: a.json,
        })
    }

    fn eval(&self, src: &str) -> Result<Value, ExprError> {
        expr::evaluate(src, &self.logic)
    }

    fn render(&self, v: &Value) -> String {
        if self.json {
            serde_json::to_string(v).expect("values serialize")
        } else {
            v.to_string()
        }
    }

    fn render_error(&self, e: &ExprError) -> String {
        if self.json {
            e.to_json().to_string()
        } else {
            format!("error: {e}")
        }
    }

    fn show(&self) -> String {
        let c = self.logic.config;
        format!(
            "family {} variant {} negation {} strategy {} json {}",
            c.family,
            c.variant,
            c.negation,
            self.logic.strategy,
            if self.json { "on" } else { "off" }
        )
    }

    /// Applies `:set <key> <value>`.
    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let c = &mut self.logic.config;
        match key {
            "family" => c.family = value.parse().map_err(|e| format!("{e}"))?,
            "variant" => c.variant = value.parse().map_err(|e| format!("{e}"))?,
            "negation" => c.negation = value.parse().map_err(|e| format!("{e}"))?,
            "strategy" | "lattice-strategy" => self.logic.strategy = value.parse().map_err(|e| format!("{e}"))?,
            "json" => {
                self.json = match value {
                    "on" | "true" => true,
                    "off" | "false" => false,
                    _ => return Err(format!("expected on or off, got `{value}`")),
                }
            }
            _ => return Err(format!("unknown setting `{key}`")),
        }
        Ok(())
    }
}

const REPL_HELP: &str = "\
expressions:   (0.3^{0+}, 0.2^{-+}, 0.4^{+}) & (0.6^{-0}, 0.1^{-0+}, 0.5^{+})
               2^{0+} ^ 3^{-0}
directives:    :set family minmax|prodsum|lukasiewicz
               :set variant A|B|plithogenic
               :set negation swap|complement
               :set strategy reduction|order-first
               :set json on|off
               :show  :help  :quit";

fn repl(mut session: Session) -> ExitCode {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut out = io::stdout().lock();
    let mut line = String::new();
    let mut input = stdin.lock();
    loop {
        if interactive {
            let _ = write!(out, "> ");
            let _ = out.flush();
        }
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EVAL_ERROR);
            }
        }
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let reply = if let Some(directive) = text.strip_prefix(':') {
            let words: Vec<&str> = directive.split_whitespace().collect();
            match words.as_slice() {
                ["quit"] | ["q"] | ["exit"] => break,
                ["show"] => session.show(),
                ["help"] => REPL_HELP.to_string(),
                ["set", key, value] => match session.set(key, value) {
                    Ok(()) => continue,
                    Err(e) => format!("error: {e}"),
                },
                _ => format!("error: unknown directive `:{directive}` (try :help)"),
            }
        } else {
            match session.eval(text) {
                Ok(v) => session.render(&v),
                Err(e) => session.render_error(&e),
            }
        };
        if writeln!(out, "{reply}").is_err() {
            break;
        }
    }
    ExitCode::SUCCESS
}

fn oracle_check(ops: &[Op]) -> ExitCode {
    let ops = if ops.is_empty() { Op::ALL.to_vec() } else { ops.to_vec() };
    let mut mismatches = 0;
    let mut cells = 0;
    for op in ops {
        for regime in Regime::ALL {
            let found = table::cross_check(op, regime);
            let t = table::cached_table(op, regime);
            let derivable = 49 - t.error_cells();
            cells += derivable;
            println!("{op} {regime}: {derivable} derivable cells, {} mismatches", found.len());
            for m in &found {
                println!("  {m}");
            }
            mismatches += found.len();
        }
    }
    println!("{cells} cells checked, {mismatches} mismatches");
    if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EVAL_ERROR)
    }
}

fn validate(triple: &str, level: Level, psi: &Scalar, omega: &Scalar, json: bool) -> ExitCode {
    let session = Session {
        logic: Logic::default(),
        json,
    };
    let p = match session.eval(triple) {
        Ok(Value::Triple(p)) => p,
        Ok(Value::Mobinad(_)) => {
            let e = ExprError {
                kind: expr::ErrorKind::Type,
                message: "validate expects a triple".into(),
                line: 1,
                column: 1,
            };
            return fail(&session, &e);
        }
        Err(e) => return fail(&session, &e),
    };
    match logic::validate_triple(&p, level, psi, omega) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string(&report).expect("reports serialize"));
            } else {
                let names = ["t", "i", "f"];
                println!("{} at level {}", if report.valid { "valid" } else { "invalid" }, level);
                for (n, ok) in names.iter().zip(report.in_range) {
                    println!("  {n} in range: {}", if ok { "yes" } else { "no" });
                }
                println!(
                    "  lower sum {} >= {}: {}",
                    report.lower_sum,
                    report.lower_bound,
                    if report.lower_sum_ok { "yes" } else { "no" }
                );
                println!(
                    "  upper sum {} <= {}: {}",
                    report.upper_sum,
                    report.upper_bound,
                    if report.upper_sum_ok { "yes" } else { "no" }
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}

fn fail(session: &Session, e: &ExprError) -> ExitCode {
    if session.json {
        println!("{}", session.render_error(e));
    } else {
        eprintln!("{}", session.render_error(e));
    }
    ExitCode::from(EVAL_ERROR)
}

fn run_fixtures(json: bool) -> ExitCode {
    let results = fixtures::run_fixtures();
    let passed = results.iter().filter(|r| r.passed).count();
    if json {
        let j = serde_json::json!({ "passed": passed, "total": results.len(), "results": results });
        println!("{j}");
    } else {
        for r in &results {
            let status = if r.passed { "pass" } else { "FAIL" };
            println!("{status} {}: {} = {}", r.name, r.expression, r.actual);
            if !r.passed {
                println!("     expected {}", r.expected);
            }
        }
        println!("{passed}/{} pass", results.len());
    }
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EVAL_ERROR)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr, session } => {
            let session = match Session::from_args(&session) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            match session.eval(&expr) {
                Ok(v) => {
                    println!("{}", session.render(&v));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&session, &e),
            }
        }
        Command::Repl { session } => match Session::from_args(&session) {
            Ok(s) => repl(s),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(USAGE)
            }
        },
        Command::Table { op, regime, format } => {
            let t = table::cached_table(op, regime);
            match format {
                Format::Json => println!("{}", t.to_json()),
                Format::Text => print!("{}", t.to_text()),
            }
            ExitCode::SUCCESS
        }
        Command::OracleCheck { op } => oracle_check(&op),
        Command::Validate {
            triple,
            level,
            psi,
            omega,
            json,
        } => validate(&triple, level, &psi, &omega, json),
        Command::Fixtures { json } => run_fixtures(json),
    }
}
